"""Source-to-source passes: sum aggregates to conditional linear terms,
stratification analysis, per-occurrence mode swaps, aggregate-function
rewrites and assignment grounding."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

from .denote import eval_basic_term
from .errors import PreconditionError, UnsupportedOperationError
from .model import UNDEF, DomainDecl, Valuation, enumerate_valuations
from .syntax import (
    SUM_CL,
    SUM_GZ,
    SUM_VARIANTS,
    VC,
    Aggregate,
    And,
    Assign,
    AtomF,
    Comparison,
    Cond,
    Df,
    IsInt,
    LinearSum,
    Lit,
    Program,
    Rule,
    atom_vars,
    cond_occurrences,
    formula_vars,
    map_terms,
    retag_occurrence,
    rule_vars,
    term_vars,
    vars_plus,
)

ALL_POSITIVE = "all-positive"


# ---------------------------------------------------------------------------
# Aggregates to conditional linear terms


def pi_translate(prog: Program, default_mode: str = VC) -> Program:
    """Replace every sum aggregate term by a guarded conditional linear sum.

    A guarded element (s | e : phi) becomes (s | e : is_int(s) & phi); a
    bare element tau becomes (tau | 0 : is_int(tau)) with ``default_mode``.
    Modes of existing conditionals are preserved.  Concatenation
    aggregates have no linear counterpart and are rejected.
    """

    def fn(t):
        if isinstance(t, Aggregate):
            if t.op != "sum":
                raise UnsupportedOperationError(
                    "cannot translate %s aggregates to linear terms" % t.op
                )
            items = []
            for e in t.elements:
                if isinstance(e, Cond):
                    guard = And(AtomF(IsInt(e.then)), e.cond)
                    items.append(Cond(e.then, e.else_, guard, e.mode))
                else:
                    items.append(Cond(e, 0, AtomF(IsInt(e)), default_mode))
            return LinearSum(tuple(items))
        return t

    return map_terms(prog, fn)


# ---------------------------------------------------------------------------
# Stratification


@dataclass(frozen=True)
class LevelMapping:
    levels: Tuple[Tuple[str, int], ...]

    def as_dict(self) -> Dict[str, int]:
        return dict(self.levels)


@dataclass(frozen=True)
class NotStratified:
    cycle: Tuple[str, ...]


def _positive_cond_occurrences(prog: Program):
    """Occurrence ids of conditionals not in the scope of negation."""
    occs = cond_occurrences(prog)
    pos_ids = []
    idx = 0

    def count_conds(term):
        n = 0
        stack = [term]
        while stack:
            t = stack.pop()
            if isinstance(t, Cond):
                n += 1
            elif isinstance(t, LinearSum):
                stack.extend(t.items)
            elif isinstance(t, Aggregate):
                stack.extend(t.elements)
        return n

    def atom_conds(a):
        if isinstance(a, Comparison):
            return count_conds(a.lhs) + count_conds(a.rhs)
        return count_conds(a.term)

    for r in prog.rules:
        if isinstance(r.head, Assign):
            n = count_conds(r.head.term)
            pos_ids.extend(range(idx, idx + n))
            idx += n
        else:
            for lit in r.head:
                n = atom_conds(lit.atom)
                if not lit.neg:
                    pos_ids.extend(range(idx, idx + n))
                idx += n
        for lit in r.body:
            n = atom_conds(lit.atom)
            if not lit.neg:
                pos_ids.extend(range(idx, idx + n))
            idx += n
    assert idx == len(occs)
    return pos_ids


def _rule_of_occurrence(prog: Program, occ: int) -> Tuple[int, Cond]:
    occs = cond_occurrences(prog)
    if not 0 <= occ < len(occs):
        raise PreconditionError("unknown occurrence id %d" % occ)
    return occs[occ]


def _head_plus_vars(r: Rule) -> frozenset:
    out = frozenset()
    for c in r.head_pos():
        out |= vars_plus(c)
    return out


def _neg_head_body_vars(r: Rule) -> frozenset:
    out = frozenset()
    for a in r.head_neg():
        out |= atom_vars(a)
    for lit in r.effective_body():
        out |= atom_vars(lit.atom)
    return out


def _constraints_for(prog: Program, occ_ids) -> Tuple[list, frozenset]:
    """Level constraints (kind, x, y) with kind GEQ | EQ | GT per Definition
    of stratification; GT ties head variables above condition variables of
    each designated occurrence."""
    cons = []
    variables = set()
    for r in prog.rules:
        hp = _head_plus_vars(r)
        rest = _neg_head_body_vars(r)
        variables |= hp | rest | rule_vars(r)
        for x in hp:
            for y in rest:
                cons.append(("GEQ", x, y))
        hp_list = sorted(hp)
        for x, y in itertools.combinations(hp_list, 2):
            cons.append(("EQ", x, y))
    for occ in occ_ids:
        ri, cond = _rule_of_occurrence(prog, occ)
        r = prog.rules[ri]
        hp = _head_plus_vars(r)
        for x in hp:
            for y in formula_vars(cond.cond):
                cons.append(("GT", x, y))
    return cons, frozenset(variables)


def stratification_check(
    prog: Program, occ: Union[int, str] = ALL_POSITIVE
) -> Union[LevelMapping, NotStratified]:
    """Decide whether a level mapping witnesses stratification.

    ``occ`` is a single occurrence id or ALL_POSITIVE for every
    conditional occurrence outside the scope of negation.  The decision
    collapses strongly connected components of the (in)equality closure;
    a strict constraint inside a component refutes stratification.
    """
    if occ == ALL_POSITIVE:
        occ_ids = _positive_cond_occurrences(prog)
    else:
        occ_ids = [occ]
    cons, variables = _constraints_for(prog, occ_ids)
    variables = sorted(variables | frozenset(prog.domain.variables))
    # edges x -> y mean level(x) >= level(y); EQ adds both directions
    succ = {v: set() for v in variables}
    for kind, x, y in cons:
        succ[x].add(y)
        if kind == "EQ":
            succ[y].add(x)
    comp = _scc(variables, succ)
    for kind, x, y in cons:
        if kind == "GT" and comp[x] == comp[y]:
            cycle = tuple(sorted(v for v in variables if comp[v] == comp[x]))
            return NotStratified(cycle)
    # assign levels along the condensation: level(x) >= level(y) (+1 on GT)
    levels = {v: 0 for v in variables}
    for _ in range(len(cons) + len(variables) + 2):
        changed = False
        for kind, x, y in cons:
            need = levels[y] + (1 if kind == "GT" else 0)
            if kind == "EQ":
                m = max(levels[x], levels[y])
                if levels[x] != m or levels[y] != m:
                    levels[x] = levels[y] = m
                    changed = True
            elif levels[x] < need:
                levels[x] = need
                changed = True
        if not changed:
            break
    else:
        raise PreconditionError("level assignment did not converge")
    return LevelMapping(tuple(sorted(levels.items())))


def _scc(nodes, succ):
    """Iterative Tarjan; returns a node -> component-id map."""
    index = {}
    low = {}
    comp = {}
    stack = []
    on_stack = set()
    counter = [0]
    comp_id = [0]
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(sorted(succ[root])))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(succ[w]))))
                    advanced = True
                    break
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack.remove(w)
                    comp[w] = comp_id[0]
                    if w == v:
                        break
                comp_id[0] += 1
    return comp


def check_level_mapping(prog: Program, occ_ids, levels: Dict[str, int]) -> bool:
    """Directly verify the three stratification conditions for ``levels``."""
    cons, _ = _constraints_for(prog, occ_ids)
    for kind, x, y in cons:
        lx, ly = levels.get(x, 0), levels.get(y, 0)
        if kind == "GEQ" and not lx >= ly:
            return False
        if kind == "EQ" and lx != ly:
            return False
        if kind == "GT" and not lx > ly:
            return False
    return True


# ---------------------------------------------------------------------------
# Mode swapping and aggregate-function rewrites


def swap_semantics(prog: Program, occ: int, mode: str) -> Program:
    """Retag one conditional occurrence; legality is checked separately."""
    return retag_occurrence(prog, occ, mode)


_LEGAL_REWRITES = {(SUM_CL, SUM_GZ)}


def rewrite_agg_function(prog: Program, frm: str, to: str) -> Program:
    """Swap the sum variant of every aggregate; only pairs satisfying the
    rem-composition identity (and trivial identities) are accepted."""
    if frm not in SUM_VARIANTS or to not in SUM_VARIANTS:
        raise PreconditionError("unknown sum variant")
    if frm != to and (frm, to) not in _LEGAL_REWRITES:
        raise PreconditionError(
            "rewriting %s aggregates as %s is not model-preserving" % (frm, to)
        )

    def fn(t):
        if isinstance(t, Aggregate) and t.op == "sum" and t.variant == frm:
            return Aggregate(t.op, t.elements, to)
        return t

    return map_terms(prog, fn)


# ---------------------------------------------------------------------------
# Assignment grounding


def ground_assignment(rule: Rule, decl: DomainDecl) -> Tuple[Rule, ...]:
    """Expand an assignment rule x := s into equality rules per value.

    One rule ``x = d <- body & s = d`` is produced for every candidate of
    x and every value s reaches over the declared domain.  This exists to
    exercise the grounding theorem; the solver never needs it.
    """
    if not isinstance(rule.head, Assign):
        raise PreconditionError("not an assignment rule")
    x, s = rule.head.var, rule.head.term
    values = list(decl.values_of(x.name))
    if not term_vars(s) and not isinstance(s, (Cond, Aggregate, LinearSum)):
        empty = Valuation((), frozenset(decl.variables))
        val = eval_basic_term(empty, s)
        if val is not UNDEF and val not in values:
            values.append(val)
    else:
        for v in enumerate_valuations(decl):
            val = _try_eval(v, s)
            if val is not None and val is not UNDEF and val not in values:
                values.append(val)
    out = []
    for d in values:
        head = (Lit(Comparison(x, "=", d)),)
        body = rule.body + (Lit(Comparison(s, "=", d)),)
        out.append(Rule(head, body))
    return tuple(out)


def _try_eval(v, s):
    # conditional subterms are resolved at the total world for reachability
    from .model import Interpretation
    from .semantics import term_value

    try:
        return term_value(v, Interpretation.total_of(v), s)
    except Exception:
        return None
