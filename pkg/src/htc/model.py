"""Domain values, valuations, interpretations and their finite enumeration.

Domain values are plain Python ``int`` (64-bit, checked downstream) or
``str``.  Undefinedness is *not* a domain value: a variable is undefined
exactly when it is absent from a valuation's bindings, which makes the
order on valuations literal set inclusion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

from .errors import DeclarationError, EnumerationCapError

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

DEFAULT_CAP = 2**22


class _Undefined:
    """Unit sentinel for the undefined value; distinct from every domain value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "u"

    def __reduce__(self):
        return (_Undefined, ())


#: The unique undefined sentinel.
UNDEF = _Undefined()

DomainValue = Union[int, str]
MaybeValue = Union[int, str, _Undefined]


def is_domain_value(x) -> bool:
    # bool is an int subclass; keep it out of the domain
    return (isinstance(x, int) and not isinstance(x, bool)) or isinstance(x, str)


def is_int_value(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


@dataclass(frozen=True)
class DomainDecl:
    """Finite candidate sets per variable, enabling enumeration."""

    candidates: Tuple[Tuple[str, Tuple[DomainValue, ...]], ...]

    @staticmethod
    def of(mapping: Mapping[str, Tuple[DomainValue, ...]]) -> "DomainDecl":
        items = []
        for var in sorted(mapping):
            vals = tuple(mapping[var])
            if not vals:
                raise DeclarationError("empty candidate set for %s" % var)
            if len(set(vals)) != len(vals):
                raise DeclarationError("duplicate candidates for %s" % var)
            for v in vals:
                if not is_domain_value(v):
                    raise DeclarationError("bad domain value %r for %s" % (v, var))
            items.append((var, vals))
        return DomainDecl(tuple(items))

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(v for v, _ in self.candidates)

    def values_of(self, var: str) -> Tuple[DomainValue, ...]:
        for v, vals in self.candidates:
            if v == var:
                return vals
        raise DeclarationError("undeclared variable %s" % var)

    def all_values(self) -> Tuple[DomainValue, ...]:
        seen = []
        for _, vals in self.candidates:
            for v in vals:
                if v not in seen:
                    seen.append(v)
        return tuple(seen)


@dataclass(frozen=True)
class Valuation:
    """Partial map from variables to domain values.

    Absence from ``bindings`` encodes the undefined value.  ``declared``
    fixes the variable universe so that comparisons between valuations of
    different universes are rejected rather than silently answered.
    """

    bindings: Tuple[Tuple[str, DomainValue], ...]
    declared: frozenset = field(default_factory=frozenset)

    @staticmethod
    def of(mapping: Mapping[str, DomainValue], declared=None) -> "Valuation":
        decl = frozenset(declared) if declared is not None else frozenset(mapping)
        for var in mapping:
            if var not in decl:
                raise DeclarationError("binding for undeclared variable %s" % var)
        items = tuple(sorted(mapping.items(), key=lambda kv: kv[0]))
        return Valuation(items, decl)

    def as_dict(self) -> Dict[str, DomainValue]:
        return dict(self.bindings)

    def __call__(self, var: str) -> MaybeValue:
        for v, d in self.bindings:
            if v == var:
                return d
        if var not in self.declared:
            raise DeclarationError("undeclared variable %s" % var)
        return UNDEF

    def bound_vars(self) -> Tuple[str, ...]:
        return tuple(v for v, _ in self.bindings)

    def restrict(self, variables) -> "Valuation":
        """Projection on a subset of the declared variables."""
        vs = set(variables)
        unknown = vs - set(self.declared)
        if unknown:
            raise DeclarationError("undeclared variables %s" % sorted(unknown))
        return Valuation(
            tuple((v, d) for v, d in self.bindings if v in vs), frozenset(vs)
        )

    def unbind(self, variables) -> "Valuation":
        vs = set(variables)
        return Valuation(
            tuple((v, d) for v, d in self.bindings if v not in vs), self.declared
        )


def valuation_subset(v: Valuation, w: Valuation) -> bool:
    """Set-of-pairs inclusion between valuations over the same universe."""
    if v.declared != w.declared:
        raise DeclarationError("valuations over different variable universes")
    return set(v.bindings) <= set(w.bindings)


@dataclass(frozen=True)
class Interpretation:
    """Ordered pair of valuations with the here world included in the there world."""

    h: Valuation
    t: Valuation

    def __post_init__(self):
        if not valuation_subset(self.h, self.t):
            raise DeclarationError("here world is not contained in there world")

    @property
    def total(self) -> bool:
        return self.h == self.t

    @staticmethod
    def total_of(t: Valuation) -> "Interpretation":
        return Interpretation(t, t)


def enumeration_size(decl: DomainDecl) -> int:
    n = 1
    for _, vals in decl.candidates:
        n *= len(vals) + 1
    return n


def enumerate_valuations(
    decl: DomainDecl, cap: Optional[int] = DEFAULT_CAP
) -> Iterator[Valuation]:
    """Yield every valuation over the declared domain, deterministically.

    Variables are taken in sorted order; per variable the undefined choice
    comes first, followed by the candidates in declared order.
    """
    if cap is not None:
        n = enumeration_size(decl)
        if n > cap:
            raise EnumerationCapError(
                "%d candidate valuations exceed cap %d" % (n, cap)
            )
    declared = frozenset(decl.variables)
    choice_lists = [(var, (UNDEF,) + vals) for var, vals in decl.candidates]
    for combo in itertools.product(*(choices for _, choices in choice_lists)):
        bindings = tuple(
            (var, val)
            for (var, _), val in zip(choice_lists, combo)
            if val is not UNDEF
        )
        yield Valuation(bindings, declared)
