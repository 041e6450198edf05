"""ASTs for terms, atoms, formulas, rules and programs, plus desugaring.

All nodes are immutable.  Conditional terms carry their evaluation mode
(``vc`` or ``df``) per occurrence; in the concrete syntax round brackets
select vc and square brackets select df.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple, Union

from .errors import NestingError, PreconditionError
from .model import UNDEF, DomainDecl, DomainValue, _Undefined, is_domain_value

VC = "vc"
DF = "df"

SUM_STRICT = "strict"
SUM_CL = "cl"
SUM_GZ = "gz"
SUM_STRICT_TYPED = "strict-typed"
SUM_VARIANTS = (SUM_STRICT, SUM_CL, SUM_GZ, SUM_STRICT_TYPED)


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Var:
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class Product:
    """Product term ``coef * var``; undefined unless the variable is an integer."""

    coef: int
    var: Var


@dataclass(frozen=True)
class LinearSum:
    """Sum of product terms and conditional terms with linear branches."""

    items: Tuple["Term", ...]


@dataclass(frozen=True)
class Cond:
    """Conditional term (then | else : cond) with a per-occurrence mode."""

    then: "Term"
    else_: "Term"
    cond: "Formula"
    mode: str = VC

    def __post_init__(self):
        if not (is_basic_term(self.then) and is_basic_term(self.else_)):
            raise NestingError("conditional branches must be basic terms")
        if not is_basic_formula(self.cond):
            raise NestingError("conditions must be basic formulas")
        if self.mode not in (VC, DF):
            raise PreconditionError("unknown evaluation mode %r" % self.mode)


@dataclass(frozen=True)
class Aggregate:
    """Aggregate term over a finite element list with implicit neutral tail."""

    op: str  # "sum" | "concat"
    elements: Tuple["Term", ...]
    variant: str = SUM_STRICT  # sum evaluation variant; ignored for concat

    def __post_init__(self):
        for e in self.elements:
            if isinstance(e, Aggregate) or (
                isinstance(e, LinearSum)
                and any(isinstance(i, Aggregate) for i in e.items)
            ):
                raise NestingError("aggregate elements must be aggregate-free")

    @property
    def neutral(self) -> DomainValue:
        return 0 if self.op == "sum" else ""


Term = Union[int, str, _Undefined, Var, Product, LinearSum, Cond, Aggregate]


# ---------------------------------------------------------------------------
# Atoms and formulas


@dataclass(frozen=True)
class Comparison:
    lhs: Term
    rel: str  # one of <= < = != >= >
    rhs: Term

    def normalized(self) -> "Comparison":
        """Flip >= and > so that evaluation deals with <=, <, =, != only."""
        if self.rel == ">=":
            return Comparison(self.rhs, "<=", self.lhs)
        if self.rel == ">":
            return Comparison(self.rhs, "<", self.lhs)
        return self


@dataclass(frozen=True)
class Df:
    """Definedness atom df(s), shorthand for s = s."""

    term: Term


@dataclass(frozen=True)
class IsInt:
    """Atom holding when the term evaluates to an integer."""

    term: Term


Atom = Union[Comparison, Df, IsInt]


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class AtomF:
    atom: Atom


@dataclass(frozen=True)
class And:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Or:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Impl:
    lhs: "Formula"
    rhs: "Formula"


Formula = Union[Bot, AtomF, And, Or, Impl]

BOT = Bot()
TOP = Impl(BOT, BOT)


def Not(phi: Formula) -> Formula:
    return Impl(phi, BOT)


def conj(formulas) -> Formula:
    formulas = list(formulas)
    if not formulas:
        return TOP
    out = formulas[-1]
    for phi in reversed(formulas[:-1]):
        out = And(phi, out)
    return out


def disj(formulas) -> Formula:
    formulas = list(formulas)
    if not formulas:
        return BOT
    out = formulas[-1]
    for phi in reversed(formulas[:-1]):
        out = Or(phi, out)
    return out


# ---------------------------------------------------------------------------
# Rules and programs


@dataclass(frozen=True)
class Lit:
    atom: Atom
    neg: bool = False


@dataclass(frozen=True)
class Assign:
    var: Var
    term: Term


@dataclass(frozen=True)
class Rule:
    """Head (disjunction of literals or an assignment) and body conjunction."""

    head: Union[Tuple[Lit, ...], Assign]
    body: Tuple[Lit, ...] = ()

    def head_pos(self) -> Tuple[Union[Atom, Assign], ...]:
        if isinstance(self.head, Assign):
            return (self.head,)
        return tuple(l.atom for l in self.head if not l.neg)

    def head_neg(self) -> Tuple[Atom, ...]:
        if isinstance(self.head, Assign):
            return ()
        return tuple(l.atom for l in self.head if l.neg)

    def effective_body(self) -> Tuple[Lit, ...]:
        """Body literals, with the implicit df(s) guard of an assignment head."""
        if isinstance(self.head, Assign):
            return self.body + (Lit(Df(self.head.term)),)
        return self.body

    def formula(self) -> Formula:
        """The rule as an implication body -> head."""
        body = conj(lit_formula(l) for l in self.effective_body())
        if isinstance(self.head, Assign):
            head: Formula = AtomF(Comparison(self.head.var, "=", self.head.term))
        else:
            head = disj(lit_formula(l) for l in self.head)
        return Impl(body, head)


def lit_formula(lit: Lit) -> Formula:
    phi: Formula = AtomF(lit.atom)
    return Not(phi) if lit.neg else phi


@dataclass(frozen=True)
class Program:
    rules: Tuple[Rule, ...]
    domain: DomainDecl

    def formulas(self) -> Tuple[Formula, ...]:
        return tuple(r.formula() for r in self.rules)


# ---------------------------------------------------------------------------
# Variable collection


def term_vars(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Product):
        return frozenset((t.var.name,))
    if isinstance(t, LinearSum):
        return frozenset().union(*(term_vars(i) for i in t.items)) if t.items else frozenset()
    if isinstance(t, Cond):
        return term_vars(t.then) | term_vars(t.else_) | formula_vars(t.cond)
    if isinstance(t, Aggregate):
        out = frozenset()
        for e in t.elements:
            out |= term_vars(e)
        return out
    return frozenset()


def atom_vars(a: Atom) -> frozenset:
    if isinstance(a, Comparison):
        return term_vars(a.lhs) | term_vars(a.rhs)
    return term_vars(a.term)


def formula_vars(phi: Formula) -> frozenset:
    if isinstance(phi, Bot):
        return frozenset()
    if isinstance(phi, AtomF):
        return atom_vars(phi.atom)
    return formula_vars(phi.lhs) | formula_vars(phi.rhs)


def rule_vars(r: Rule) -> frozenset:
    out = frozenset()
    for lit in r.effective_body():
        out |= atom_vars(lit.atom)
    if isinstance(r.head, Assign):
        out |= frozenset((r.head.var.name,)) | term_vars(r.head.term)
    else:
        for lit in r.head:
            out |= atom_vars(lit.atom)
    return out


def vars_plus(c: Union[Atom, Assign]) -> frozenset:
    """Variables assigned by a head atom: only the target of an assignment."""
    if isinstance(c, Assign):
        return frozenset((c.var.name,))
    return atom_vars(c)


# ---------------------------------------------------------------------------
# Desugaring


def is_basic_term(t: Term) -> bool:
    """Conditional- and aggregate-free."""
    if isinstance(t, (Cond, Aggregate)):
        return False
    if isinstance(t, LinearSum):
        return all(is_basic_term(i) for i in t.items)
    return True


def is_basic_formula(phi: Formula) -> bool:
    if isinstance(phi, Bot):
        return True
    if isinstance(phi, AtomF):
        a = phi.atom
        if isinstance(a, Comparison):
            return is_basic_term(a.lhs) and is_basic_term(a.rhs)
        return is_basic_term(a.term)
    return is_basic_formula(phi.lhs) and is_basic_formula(phi.rhs)


def desugar_multiset(op, elements, variant=SUM_STRICT, mode=VC) -> Aggregate:
    """Turn multi-set elements into guarded conditional elements.

    A bare element tau becomes (tau | 0 : df(tau)); an element s:phi becomes
    (s | 0 : df(s) & phi).  Order is preserved, and the transformation is
    idempotent: elements that are already guarded conditionals pass through.
    """
    neutral = 0 if op == "sum" else ""
    out = []
    for e in elements:
        if isinstance(e, tuple):  # (term, formula) pair
            s, phi = e
            if not is_basic_term(s):
                raise NestingError("multi-set element must be a basic term")
            if not is_basic_formula(phi):
                raise NestingError("multi-set condition must be a basic formula")
            out.append(Cond(s, neutral, And(AtomF(Df(s)), phi), mode))
        elif isinstance(e, Cond):
            if e.else_ != neutral:
                raise NestingError("conditional element inside a multi-set element")
            out.append(e)
        else:
            if not is_basic_term(e):
                raise NestingError("multi-set element must be a basic term")
            out.append(Cond(e, neutral, AtomF(Df(e)), mode))
    return Aggregate(op, tuple(out), variant)


def desugar_count(conditions, variant=SUM_STRICT, mode=VC) -> Aggregate:
    """count{phi1, ...} as a sum of conditional ones."""
    elements = tuple(Cond(1, 0, phi, mode) for phi in conditions)
    return Aggregate("sum", elements, variant)


# ---------------------------------------------------------------------------
# Generic rewriting and occurrence numbering


def map_terms(obj, fn):
    """Rebuild ``obj`` with ``fn`` applied to every term it contains.

    ``fn`` receives each term node top-down; returning a different object
    stops descent into that node.
    """
    if isinstance(obj, Program):
        return Program(tuple(map_terms(r, fn) for r in obj.rules), obj.domain)
    if isinstance(obj, Rule):
        head = obj.head
        if isinstance(head, Assign):
            head = Assign(head.var, _map_term(head.term, fn))
        else:
            head = tuple(Lit(map_terms(l.atom, fn), l.neg) for l in head)
        return Rule(head, tuple(Lit(map_terms(l.atom, fn), l.neg) for l in obj.body))
    if isinstance(obj, Comparison):
        return Comparison(_map_term(obj.lhs, fn), obj.rel, _map_term(obj.rhs, fn))
    if isinstance(obj, Df):
        return Df(_map_term(obj.term, fn))
    if isinstance(obj, IsInt):
        return IsInt(_map_term(obj.term, fn))
    if isinstance(obj, Bot):
        return obj
    if isinstance(obj, AtomF):
        return AtomF(map_terms(obj.atom, fn))
    if isinstance(obj, And):
        return And(map_terms(obj.lhs, fn), map_terms(obj.rhs, fn))
    if isinstance(obj, Or):
        return Or(map_terms(obj.lhs, fn), map_terms(obj.rhs, fn))
    if isinstance(obj, Impl):
        return Impl(map_terms(obj.lhs, fn), map_terms(obj.rhs, fn))
    raise TypeError("cannot rewrite %r" % (obj,))


def _map_term(t: Term, fn) -> Term:
    new = fn(t)
    if new is not t:
        return new
    if isinstance(t, LinearSum):
        return LinearSum(tuple(_map_term(i, fn) for i in t.items))
    if isinstance(t, Cond):
        return Cond(_map_term(t.then, fn), _map_term(t.else_, fn),
                    map_terms(t.cond, fn), t.mode)
    if isinstance(t, Aggregate):
        return Aggregate(t.op, tuple(_map_term(e, fn) for e in t.elements), t.variant)
    return t


def cond_occurrences(prog: Program):
    """Conditional-term occurrences in stable pre-order.

    Returns a list of (rule_index, Cond) pairs; the list position is the
    occurrence id used by the CLI and by retagging.
    """
    out = []

    def walk_term(ri, t):
        if isinstance(t, Cond):
            out.append((ri, t))
            # conditions are basic formulas, no nested conditionals
        elif isinstance(t, LinearSum):
            for i in t.items:
                walk_term(ri, i)
        elif isinstance(t, Aggregate):
            for e in t.elements:
                walk_term(ri, e)

    def walk_atom(ri, a):
        if isinstance(a, Comparison):
            walk_term(ri, a.lhs)
            walk_term(ri, a.rhs)
        else:
            walk_term(ri, a.term)

    for ri, r in enumerate(prog.rules):
        if isinstance(r.head, Assign):
            walk_term(ri, r.head.term)
        else:
            for lit in r.head:
                walk_atom(ri, lit.atom)
        for lit in r.body:
            walk_atom(ri, lit.atom)
    return out


def retag_occurrence(prog: Program, occ: int, mode: str) -> Program:
    """Return the program with occurrence ``occ`` retagged to ``mode``."""
    occs = cond_occurrences(prog)
    if not 0 <= occ < len(occs):
        raise PreconditionError("unknown occurrence id %d" % occ)
    counter = [0]
    target = occ

    def fn(t):
        if isinstance(t, Cond):
            i = counter[0]
            counter[0] += 1
            if i == target:
                return Cond(t.then, t.else_, t.cond, mode)
        return t

    return map_terms(prog, fn)
