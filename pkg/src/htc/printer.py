"""Pretty-printer for programs, rules, formulas and terms.

Inverse of the parser: ``parse(print(ast)) == ast``.  Multi-set sugar is
restored where the desugared shape is recognizable and the element modes
match the printer's default mode.
"""

from __future__ import annotations

from .model import DomainDecl, _Undefined
from .syntax import (
    DF,
    SUM_CL,
    SUM_GZ,
    SUM_STRICT,
    SUM_STRICT_TYPED,
    VC,
    Aggregate,
    And,
    Assign,
    AtomF,
    Bot,
    Comparison,
    Cond,
    Df,
    Formula,
    Impl,
    IsInt,
    LinearSum,
    Lit,
    Or,
    Product,
    Program,
    Rule,
    Term,
    Var,
)

_SUM_NAMES = {
    SUM_STRICT: "sum",
    SUM_CL: "sum_cl",
    SUM_GZ: "sum_gz",
    SUM_STRICT_TYPED: "sum_st",
}


def print_value(v) -> str:
    if isinstance(v, str):
        return '"%s"' % v.replace("\\", "\\\\").replace('"', '\\"')
    return str(v)


def print_term(t: Term, default_mode: str = VC) -> str:
    if isinstance(t, _Undefined):
        return "u"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Product):
        return "%d*%s" % (t.coef, t.var.name)
    if isinstance(t, LinearSum):
        return _print_linear(t, default_mode)
    if isinstance(t, Cond):
        return _print_cond(t, default_mode)
    if isinstance(t, Aggregate):
        return _print_aggregate(t, default_mode)
    return print_value(t)


def _print_cond(t: Cond, default_mode: str) -> str:
    op, cl = ("[", "]") if t.mode == DF else ("(", ")")
    return "%s%s | %s: %s%s" % (
        op,
        print_term(t.then, default_mode),
        print_term(t.else_, default_mode),
        print_formula(t.cond, default_mode),
        cl,
    )


def _print_linear(t: LinearSum, default_mode: str) -> str:
    parts = [print_term(t.items[0], default_mode)]
    for item in t.items[1:]:
        if isinstance(item, int) and not isinstance(item, bool) and item < 0:
            parts.append(" - %d" % -item)
        elif isinstance(item, Product) and item.coef < 0:
            parts.append(" - %s" % print_term(Product(-item.coef, item.var)))
        else:
            parts.append(" + %s" % print_term(item, default_mode))
    return "".join(parts)


def _resugar_element(e: Term, neutral, default_mode: str):
    """Recover the multi-set spelling of a guarded conditional element."""
    if not (isinstance(e, Cond) and e.else_ == neutral and e.mode == default_mode):
        return None
    cond = e.cond
    if cond == AtomF(Df(e.then)):
        return print_term(e.then, default_mode)
    if isinstance(cond, And) and cond.lhs == AtomF(Df(e.then)):
        return "%s: %s" % (
            print_term(e.then, default_mode),
            print_formula(cond.rhs, default_mode),
        )
    return None


def _print_aggregate(t: Aggregate, default_mode: str) -> str:
    name = "concat" if t.op == "concat" else _SUM_NAMES[t.variant]
    if t.op == "sum":
        sugared = [_resugar_element(e, 0, default_mode) for e in t.elements]
        if t.elements and all(s is not None for s in sugared):
            return "%s{%s}" % (name, ", ".join(sugared))
    return "%s<%s>" % (name, ", ".join(print_term(e, default_mode) for e in t.elements))


def print_atom(a, default_mode: str = VC) -> str:
    if isinstance(a, Df):
        return "df(%s)" % print_term(a.term, default_mode)
    if isinstance(a, IsInt):
        return "is_int(%s)" % print_term(a.term, default_mode)
    return "%s %s %s" % (
        print_term(a.lhs, default_mode),
        a.rel,
        print_term(a.rhs, default_mode),
    )


def print_formula(phi: Formula, default_mode: str = VC, prec: int = 0) -> str:
    # precedence: -> (1) < | (2) < & (3) < unary
    if isinstance(phi, Bot):
        return "#false"
    if isinstance(phi, AtomF):
        return print_atom(phi.atom, default_mode)
    if isinstance(phi, Impl):
        if phi.rhs == Bot():
            if phi.lhs == Bot():
                return "#true"
            inner = print_formula(phi.lhs, default_mode, 4)
            return "not %s" % inner
        s = "%s -> %s" % (
            print_formula(phi.lhs, default_mode, 2),
            print_formula(phi.rhs, default_mode, 1),
        )
        return "(%s)" % s if prec > 1 else s
    if isinstance(phi, Or):
        s = "%s | %s" % (
            print_formula(phi.lhs, default_mode, 2),
            print_formula(phi.rhs, default_mode, 3),
        )
        return "(%s)" % s if prec > 2 else s
    if isinstance(phi, And):
        s = "%s & %s" % (
            print_formula(phi.lhs, default_mode, 3),
            print_formula(phi.rhs, default_mode, 4),
        )
        return "(%s)" % s if prec > 3 else s
    raise TypeError("not a formula: %r" % (phi,))


def print_lit(lit: Lit, default_mode: str = VC) -> str:
    s = print_atom(lit.atom, default_mode)
    return "not %s" % s if lit.neg else s


def print_rule(r: Rule, default_mode: str = VC) -> str:
    if isinstance(r.head, Assign):
        head = "%s := %s" % (r.head.var.name, print_term(r.head.term, default_mode))
    else:
        head = "; ".join(print_lit(l, default_mode) for l in r.head)
    body = ", ".join(print_lit(l, default_mode) for l in r.body)
    if not body:
        return "%s." % head
    if not head:
        return ":- %s." % body
    return "%s :- %s." % (head, body)


def print_domain(decl: DomainDecl) -> str:
    lines = []
    for var, vals in decl.candidates:
        lines.append(
            "#domain %s = {%s}." % (var, ", ".join(print_value(v) for v in vals))
        )
    return "\n".join(lines)


def print_program(prog: Program, default_mode: str = VC) -> str:
    parts = []
    dom = print_domain(prog.domain)
    if dom:
        parts.append(dom)
    for r in prog.rules:
        parts.append(print_rule(r, default_mode))
    return "\n".join(parts) + ("\n" if parts else "")
