"""Conditional-term evaluation, satisfaction, term valuation and the reduct."""

from __future__ import annotations

from .denote import denote, eval_basic_term
from .model import UNDEF, Interpretation, MaybeValue, Valuation
from .syntax import (
    DF,
    VC,
    And,
    Atom,
    AtomF,
    Bot,
    Cond,
    Formula,
    Impl,
    Or,
    Program,
    Term,
    _map_term,
    map_terms,
)


def eval_cond(term: Cond, interp: Interpretation) -> Term:
    """Resolve one conditional term to a basic term (or the undefined value).

    vc: then-branch if the condition holds here-and-there, else-branch if
    it fails even at the total world, undefined in between.  df: one of
    the two branches, always.
    """
    holds_ht = satisfies(interp, term.cond)
    if term.mode == DF:
        return term.then if holds_ht else term.else_
    if holds_ht:
        return term.then
    if not satisfies(Interpretation.total_of(interp.t), term.cond):
        return term.else_
    return UNDEF


def eval_term(t: Term, interp: Interpretation) -> Term:
    """Replace every conditional subterm by its evaluation at ``interp``."""
    def fn(s):
        if isinstance(s, Cond):
            return eval_cond(s, interp)
        return s

    return _map_term(t, fn)


def eval_atom(atom: Atom, interp: Interpretation) -> Atom:
    """Basic atom obtained by resolving all conditional terms at ``interp``."""
    def fn(s):
        if isinstance(s, Cond):
            return eval_cond(s, interp)
        return s

    return map_terms(atom, fn)


def satisfies(interp: Interpretation, phi: Formula) -> bool:
    """The here-and-there satisfaction relation.

    Atoms are checked in both worlds, each with conditionals resolved at
    the respective sub-interpretation; implications are checked at both
    (h,t) and (t,t).
    """
    h, t = interp.h, interp.t
    if isinstance(phi, Bot):
        return False
    if isinstance(phi, AtomF):
        for w in (h, t):
            sub = Interpretation(w, t)
            if not denote_at(phi.atom, sub, w):
                return False
        return True
    if isinstance(phi, And):
        return satisfies(interp, phi.lhs) and satisfies(interp, phi.rhs)
    if isinstance(phi, Or):
        return satisfies(interp, phi.lhs) or satisfies(interp, phi.rhs)
    if isinstance(phi, Impl):
        for w in (h, t):
            sub = Interpretation(w, t)
            if satisfies(sub, phi.lhs) and not satisfies(sub, phi.rhs):
                return False
        return True
    raise TypeError("not a formula: %r" % (phi,))


def denote_at(atom: Atom, interp: Interpretation, v: Valuation) -> bool:
    return denote(eval_atom(atom, interp), v)


def satisfies_classical(t: Valuation, phi: Formula) -> bool:
    """Single-world satisfaction; agrees with ``satisfies`` on total pairs."""
    total = Interpretation.total_of(t)
    if isinstance(phi, Bot):
        return False
    if isinstance(phi, AtomF):
        return denote_at(phi.atom, total, t)
    if isinstance(phi, And):
        return satisfies_classical(t, phi.lhs) and satisfies_classical(t, phi.rhs)
    if isinstance(phi, Or):
        return satisfies_classical(t, phi.lhs) or satisfies_classical(t, phi.rhs)
    if isinstance(phi, Impl):
        return not satisfies_classical(t, phi.lhs) or satisfies_classical(t, phi.rhs)
    raise TypeError("not a formula: %r" % (phi,))


def term_value(v: Valuation, interp: Interpretation, s: Term) -> MaybeValue:
    """Value of a term: conditionals resolved at ``interp``, then evaluated at ``v``."""
    return eval_basic_term(v, eval_term(s, interp))


def reduct(phi: Formula, t: Valuation) -> Formula:
    """Replace classically falsified subformulas (and conditions) by bottom."""
    if not satisfies_classical(t, phi):
        return Bot()
    if isinstance(phi, AtomF):
        def fn(s):
            if isinstance(s, Cond):
                return Cond(s.then, s.else_, reduct(s.cond, t), s.mode)
            return s

        return AtomF(map_terms(phi.atom, fn))
    if isinstance(phi, And):
        return And(reduct(phi.lhs, t), reduct(phi.rhs, t))
    if isinstance(phi, Or):
        return Or(reduct(phi.lhs, t), reduct(phi.rhs, t))
    if isinstance(phi, Impl):
        return Impl(reduct(phi.lhs, t), reduct(phi.rhs, t))
    return phi


def satisfies_program(interp: Interpretation, prog: Program) -> bool:
    return all(satisfies(interp, f) for f in prog.formulas())
