"""Stable-model enumeration and its independent checks.

``enumerate_stable`` is the direct implementation of equilibrium models;
``ferraris_stable`` is the reduct-based oracle for programs whose
conditionals all follow the definedness principle; supported-model and
splitting-set machinery round out the module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import PreconditionError
from .model import (
    DEFAULT_CAP,
    Interpretation,
    Valuation,
    enumerate_valuations,
)
from .semantics import reduct, satisfies, satisfies_classical, satisfies_program
from .syntax import (
    DF,
    Assign,
    Cond,
    Lit,
    Program,
    Rule,
    atom_vars,
    cond_occurrences,
    lit_formula,
    map_terms,
    rule_vars,
    vars_plus,
)


@dataclass(frozen=True)
class StableModelSet:
    models: Tuple[Valuation, ...]
    provenance: str = "direct"

    def as_dicts(self):
        return [m.as_dict() for m in self.models]


def _sorted_models(models) -> Tuple[Valuation, ...]:
    return tuple(sorted(set(models), key=lambda m: m.bindings))


def subvaluations(t: Valuation, proper=True):
    """All valuations below t; t agrees with them wherever they are bound."""
    bound = t.bound_vars()
    top = len(bound) if proper else len(bound) + 1
    for k in range(top):
        for keep in itertools.combinations(bound, k):
            keepset = set(keep)
            yield Valuation(
                tuple(b for b in t.bindings if b[0] in keepset), t.declared
            )


def enumerate_stable(prog: Program, cap: Optional[int] = DEFAULT_CAP) -> StableModelSet:
    """All equilibrium models by exhaustive enumeration."""
    formulas = prog.formulas()
    models: List[Valuation] = []
    for t in enumerate_valuations(prog.domain, cap):
        total = Interpretation.total_of(t)
        if not all(satisfies(total, f) for f in formulas):
            continue
        stable = True
        for h in subvaluations(t):
            interp = Interpretation(h, t)
            if all(satisfies(interp, f) for f in formulas):
                stable = False
                break
        if stable:
            models.append(t)
    return StableModelSet(_sorted_models(models), "direct")


def _require_all_df(prog: Program):
    for _, occ in cond_occurrences(prog):
        if occ.mode != DF:
            raise PreconditionError(
                "reduct-based solving requires all conditionals in df mode"
            )


def ferraris_stable(prog: Program, cap: Optional[int] = DEFAULT_CAP) -> StableModelSet:
    """Stable models via minimal classical models of the reduct."""
    _require_all_df(prog)
    formulas = prog.formulas()
    models: List[Valuation] = []
    for t in enumerate_valuations(prog.domain, cap):
        red = [reduct(f, t) for f in formulas]
        if not all(satisfies_classical(t, f) for f in red):
            continue
        if any(
            all(satisfies_classical(v, f) for f in red) for v in subvaluations(t)
        ):
            continue
        models.append(t)
    return StableModelSet(_sorted_models(models), "reduct-oracle")


def is_supported(v: Valuation, prog: Program):
    """Check that every bound variable has a witnessing rule.

    Returns (ok, witnesses) where witnesses maps each supported variable
    to the index of one witnessing rule.
    """
    total = Interpretation.total_of(v)
    witnesses = {}
    for x, _ in v.bindings:
        found = None
        for ri, r in enumerate(prog.rules):
            for c in r.head_pos():
                if x not in vars_plus(c):
                    continue
                others_ok = all(
                    not satisfies(total, _head_atom_formula(c2))
                    for c2 in r.head_pos()
                    if x not in vars_plus(c2)
                )
                if not others_ok:
                    continue
                body_ok = all(
                    satisfies(total, lit_formula(l)) for l in r.effective_body()
                )
                neg_head_ok = not any(
                    satisfies(total, lit_formula(Lit(a))) for a in r.head_neg()
                )
                if body_ok and neg_head_ok:
                    found = ri
                    break
            if found is not None:
                break
        if found is None:
            return False, witnesses
        witnesses[x] = found
    return True, witnesses


def _head_atom_formula(c):
    from .syntax import AtomF, Comparison

    if isinstance(c, Assign):
        return AtomF(Comparison(c.var, "=", c.term))
    return AtomF(c)


def is_splitting_set(u, prog: Program) -> bool:
    u = frozenset(u)
    for r in prog.rules:
        if rule_vars(r) <= u:
            continue
        if not any(vars_plus(c) & u for c in r.head_pos()):
            continue
        return False
    return True


def split(prog: Program, u) -> Tuple[Program, Program]:
    """Partition into bottom (rules fully inside u) and top."""
    u = frozenset(u)
    if not is_splitting_set(u, prog):
        raise PreconditionError("%s is not a splitting set" % sorted(u))
    bottom, top = [], []
    for r in prog.rules:
        (bottom if rule_vars(r) <= u else top).append(r)
    return (
        Program(tuple(bottom), prog.domain),
        Program(tuple(top), prog.domain),
    )


def _substitute_vars(rule: Rule, v: Valuation, u: frozenset) -> Rule:
    from .model import UNDEF
    from .syntax import Var

    from .denote import eval_basic_term
    from .syntax import Product

    def fn(t):
        if isinstance(t, Var) and t.name in u:
            val = v(t.name)
            return UNDEF if val is UNDEF else val
        if isinstance(t, Product) and t.var.name in u:
            # products over substituted variables collapse to their value
            return eval_basic_term(v, t)
        return t

    return map_terms(rule, fn)


def solve_by_splitting(
    prog: Program, u, cap: Optional[int] = DEFAULT_CAP
) -> StableModelSet:
    """Solve bottom, substitute its models into top, solve, recombine."""
    u = frozenset(u)
    bottom, top = split(prog, u)
    declared = frozenset(prog.domain.variables)
    bottom_decl = _restrict_domain(prog.domain, u)
    top_decl = _restrict_domain(prog.domain, declared - u)
    models: List[Valuation] = []
    bottom_models = enumerate_stable(Program(bottom.rules, bottom_decl), cap)
    for vb in bottom_models.models:
        vb_full = Valuation(vb.bindings, declared)
        etop = Program(
            tuple(_substitute_vars(r, vb_full, u) for r in top.rules), top_decl
        )
        for vt in enumerate_stable(etop, cap).models:
            merged = dict(vb.bindings)
            merged.update(dict(vt.bindings))
            models.append(Valuation.of(merged, declared))
    return StableModelSet(_sorted_models(models), "split")


def _restrict_domain(decl, variables):
    from .model import DomainDecl

    vs = frozenset(variables)
    return DomainDecl(tuple((v, c) for v, c in decl.candidates if v in vs))
