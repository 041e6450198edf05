"""Evaluation of basic (conditional-free) terms and atom denotations.

``eval_basic_term`` maps a term to a domain value or the undefined
sentinel; ``denote`` decides whether a valuation belongs to the
denotation of a basic atom.  Aggregate operation functions live here too,
including the preprocessed sum variants that mirror solver behavior.
"""

from __future__ import annotations

from typing import Sequence

from .errors import ArithmeticOverflowError, PreconditionError
from .model import (
    INT64_MAX,
    INT64_MIN,
    UNDEF,
    MaybeValue,
    Valuation,
    is_int_value,
)
from .syntax import (
    SUM_CL,
    SUM_GZ,
    SUM_STRICT,
    SUM_STRICT_TYPED,
    Aggregate,
    Atom,
    Comparison,
    Df,
    IsInt,
    LinearSum,
    Product,
    Term,
    Var,
    _Undefined,
)


def _checked(n: int) -> int:
    if not INT64_MIN <= n <= INT64_MAX:
        raise ArithmeticOverflowError("64-bit overflow: %d" % n)
    return n


def apply_sum(variant: str, seq: Sequence[MaybeValue]) -> MaybeValue:
    """Sum over a value sequence (implicit neutral tail of zeros).

    strict: undefined if any element is undefined, else the sum of the
    integer elements with non-integers skipped.  strict-typed: as strict
    but a non-integer element also yields undefined.  cl: every
    non-integer (undefined included) is first mapped to 0.  gz: every
    element outside the integers and the undefined value is mapped to 0,
    undefined itself is kept.
    """
    if variant == SUM_CL:
        seq = [x if is_int_value(x) else 0 for x in seq]
    elif variant == SUM_GZ:
        seq = [x if is_int_value(x) or x is UNDEF else 0 for x in seq]
    elif variant not in (SUM_STRICT, SUM_STRICT_TYPED):
        raise PreconditionError("unknown sum variant %r" % variant)
    total = 0
    for x in seq:
        if x is UNDEF:
            return UNDEF
        if is_int_value(x):
            total = _checked(total + x)
        elif variant == SUM_STRICT_TYPED:
            return UNDEF
    return total


def rem(seq: Sequence[MaybeValue], neutral: MaybeValue = 0):
    """Replace undefined elements by the operation's neutral element."""
    return [neutral if x is UNDEF else x for x in seq]


def apply_concat(seq: Sequence[MaybeValue]) -> MaybeValue:
    """Space-joined concatenation; undefined on any undefined or non-string."""
    parts = []
    for x in seq:
        if not isinstance(x, str):
            return UNDEF
        parts.append(x)
    return " ".join(p for p in parts if p != "")


def eval_basic_term(v: Valuation, t: Term) -> MaybeValue:
    """Value of a conditional-free term under a valuation."""
    if isinstance(t, _Undefined):
        return UNDEF
    if isinstance(t, Var):
        return v(t.name)
    if isinstance(t, Product):
        x = v(t.var.name)
        if not is_int_value(x):
            return UNDEF
        return _checked(t.coef * x)
    if isinstance(t, LinearSum):
        total = 0
        for item in t.items:
            val = eval_basic_term(v, item)
            if not is_int_value(val):
                return UNDEF
            total = _checked(total + val)
        return total
    if isinstance(t, Aggregate):
        values = [eval_basic_term(v, e) for e in t.elements]
        if t.op == "concat":
            return apply_concat(values)
        return apply_sum(t.variant, values)
    return t  # int or str constant


def denote(atom: Atom, v: Valuation) -> bool:
    """Whether ``v`` belongs to the denotation of a basic atom."""
    if isinstance(atom, Df):
        return eval_basic_term(v, atom.term) is not UNDEF
    if isinstance(atom, IsInt):
        return is_int_value(eval_basic_term(v, atom.term))
    atom = atom.normalized()
    lhs = eval_basic_term(v, atom.lhs)
    rhs = eval_basic_term(v, atom.rhs)
    if atom.rel == "=":
        return lhs is not UNDEF and rhs is not UNDEF and lhs == rhs
    if atom.rel == "!=":
        return lhs is not UNDEF and rhs is not UNDEF and lhs != rhs
    # order comparisons are defined on the integer fragment only
    if not (is_int_value(lhs) and is_int_value(rhs)):
        return False
    if atom.rel == "<=":
        return lhs <= rhs
    if atom.rel == "<":
        return lhs < rhs
    raise PreconditionError("unknown relation %r" % atom.rel)
