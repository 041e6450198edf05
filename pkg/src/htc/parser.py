"""Recursive-descent parser for the ``.htc`` language.

Rules are ``HEAD :- BODY.`` with ``;`` separating head disjuncts and ``,``
separating body literals.  Conditional terms are written
``( s | s' : phi )`` for vc and ``[ s | s' : phi ]`` for df.  Aggregates:
``sum{...}`` (multi-set, desugared while parsing), ``sum<...>``,
``concat<...>``, ``count{...}``; ``sum_cl``/``sum_gz``/``sum_st`` force an
evaluation variant.  Directives: ``#domain x = {1, 2, "a"}.`` and
``#sum_variant strict.``; comments run from ``%`` to end of line.
"""

from __future__ import annotations

import re
from typing import List, Optional, Tuple

from .errors import DeclarationError, ParseError
from .model import UNDEF, DomainDecl
from .syntax import (
    DF,
    SUM_CL,
    SUM_GZ,
    SUM_STRICT,
    SUM_STRICT_TYPED,
    SUM_VARIANTS,
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
    desugar_count,
    desugar_multiset,
    rule_vars,
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|%[^\n]*)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<directive>\#[a-z_]+)
  | (?P<op>:-|:=|<=|>=|!=|->|[-+*<>=|&:;,.(){}\[\]])
    """,
    re.VERBOSE,
)

_KEYWORDS = {
    "not", "df", "is_int", "u",
    "sum", "sum_cl", "sum_gz", "sum_st", "concat", "count",
}

_SUM_KEYWORDS = {
    "sum_cl": SUM_CL,
    "sum_gz": SUM_GZ,
    "sum_st": SUM_STRICT_TYPED,
}

_RELS = ("<=", ">=", "!=", "<", ">", "=")


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    pos = 0
    line, col = 1, 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError("unexpected character %r" % text[pos], line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind != "ws":
            tokens.append(_Token(kind, tok, line, col))
        nl = tok.count("\n")
        if nl:
            line += nl
            col = len(tok) - tok.rfind("\n")
        else:
            col += len(tok)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str, default_mode: str, default_variant: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.default_mode = default_mode
        self.variant = default_variant
        self.domains = {}
        self.rules: List[Rule] = []

    # -- token helpers ------------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        return self.peek().text == text and self.peek().kind != "string"

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> _Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "string":
            raise ParseError(
                "expected %r, found %r" % (text, tok.text or "end of input"),
                tok.line, tok.col,
            )
        return self.next()

    def fail(self, message: str):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.col)

    # -- program ------------------------------------------------------------

    def parse_program(self) -> Program:
        while self.peek().kind != "eof":
            if self.peek().kind == "directive":
                self.parse_directive()
            else:
                self.rules.append(self.parse_rule())
        prog = Program(tuple(self.rules), DomainDecl.of(self.domains))
        declared = frozenset(prog.domain.variables)
        for r in prog.rules:
            missing = rule_vars(r) - declared
            if missing:
                raise DeclarationError(
                    "undeclared variables: %s" % ", ".join(sorted(missing))
                )
        return prog

    def parse_directive(self):
        tok = self.next()
        if tok.text == "#domain":
            name = self.parse_var_name()
            self.expect("=")
            self.expect("{")
            values = [self.parse_value()]
            while self.accept(","):
                values.append(self.parse_value())
            self.expect("}")
            self.expect(".")
            if name in self.domains:
                raise ParseError("duplicate domain for %s" % name, tok.line, tok.col)
            self.domains[name] = tuple(values)
        elif tok.text == "#sum_variant":
            v = self.next().text
            if v not in SUM_VARIANTS:
                raise ParseError("unknown sum variant %r" % v, tok.line, tok.col)
            self.variant = v
            self.expect(".")
        else:
            raise ParseError("unknown directive %s" % tok.text, tok.line, tok.col)

    def parse_value(self):
        neg = self.accept("-")
        tok = self.next()
        if tok.kind == "int":
            return -int(tok.text) if neg else int(tok.text)
        if tok.kind == "string" and not neg:
            return _unquote(tok.text)
        raise ParseError("expected a domain value", tok.line, tok.col)

    def parse_var_name(self) -> str:
        tok = self.next()
        if tok.kind != "name" or tok.text in _KEYWORDS:
            raise ParseError("expected a variable name", tok.line, tok.col)
        return tok.text

    # -- rules --------------------------------------------------------------

    def parse_rule(self) -> Rule:
        if self.accept(":-"):
            head: object = ()
        else:
            head = self.parse_head()
            if not self.accept(":-"):
                self.expect(".")
                return Rule(head, ())
        body = [self.parse_literal()]
        while self.accept(","):
            body.append(self.parse_literal())
        self.expect(".")
        return Rule(head, tuple(body))

    def parse_head(self):
        if (
            self.peek().kind == "name"
            and self.peek().text not in _KEYWORDS
            and self.tokens[self.pos + 1].text == ":="
        ):
            var = Var(self.parse_var_name())
            self.expect(":=")
            return Assign(var, self.parse_term())
        lits = [self.parse_literal()]
        while self.accept(";"):
            lits.append(self.parse_literal())
        return tuple(lits)

    def parse_literal(self) -> Lit:
        if self.accept("not"):
            return Lit(self.parse_atom(), neg=True)
        return Lit(self.parse_atom())

    # -- atoms and formulas -------------------------------------------------

    def parse_atom(self):
        if self.at("df"):
            self.next()
            self.expect("(")
            t = self.parse_term()
            self.expect(")")
            return Df(t)
        if self.at("is_int"):
            self.next()
            self.expect("(")
            t = self.parse_term()
            self.expect(")")
            return IsInt(t)
        lhs = self.parse_term()
        for rel in _RELS:
            if self.accept(rel):
                return Comparison(lhs, rel, self.parse_term())
        if isinstance(lhs, Var):
            # bare variable as a Boolean atom: shorthand for df(x)
            return Df(lhs)
        self.fail("expected a comparison operator")

    def parse_formula(self) -> Formula:
        lhs = self.parse_disjunction()
        if self.accept("->"):
            return Impl(lhs, self.parse_formula())
        return lhs

    def parse_disjunction(self) -> Formula:
        out = self.parse_conjunction()
        while self.accept("|"):
            out = Or(out, self.parse_conjunction())
        return out

    def parse_conjunction(self) -> Formula:
        out = self.parse_unary_formula()
        while self.accept("&"):
            out = And(out, self.parse_unary_formula())
        return out

    def parse_unary_formula(self) -> Formula:
        if self.accept("not"):
            return Impl(self.parse_unary_formula(), Bot())
        if self.peek().kind == "directive" and self.at("#false"):
            self.next()
            return Bot()
        if self.peek().kind == "directive" and self.at("#true"):
            self.next()
            return Impl(Bot(), Bot())
        if self.at("("):
            # either a grouped formula or an atom starting with a vc
            # conditional term; try the atom reading first
            saved = self.pos
            try:
                return AtomF(self.parse_atom())
            except ParseError:
                self.pos = saved
            self.expect("(")
            phi = self.parse_formula()
            self.expect(")")
            return phi
        return AtomF(self.parse_atom())

    # -- terms --------------------------------------------------------------

    def parse_term(self) -> Term:
        items = [self.parse_signed_item()]
        while True:
            if self.accept("+"):
                items.append(self.parse_signed_item())
            elif self.accept("-"):
                items.append(_negate(self.parse_signed_item(), self))
            else:
                break
        if len(items) == 1:
            return items[0]
        return LinearSum(tuple(items))

    def parse_signed_item(self) -> Term:
        if self.accept("-"):
            return _negate(self.parse_signed_item(), self)
        return self.parse_item()

    def parse_item(self) -> Term:
        tok = self.peek()
        if tok.kind == "int":
            self.next()
            val = int(tok.text)
            if self.accept("*"):
                return Product(val, Var(self.parse_var_name()))
            return val
        if tok.kind == "string":
            self.next()
            return _unquote(tok.text)
        if self.at("u"):
            self.next()
            return UNDEF
        if self.at("(") or self.at("["):
            return self.parse_conditional()
        if self.at("sum") or self.at("sum_cl") or self.at("sum_gz") or self.at("sum_st"):
            return self.parse_sum()
        if self.at("concat"):
            return self.parse_concat()
        if self.at("count"):
            return self.parse_count()
        if tok.kind == "name" and tok.text not in _KEYWORDS:
            self.next()
            return Var(tok.text)
        self.fail("expected a term")

    def parse_conditional(self) -> Cond:
        if self.accept("("):
            close, mode = ")", VC
        else:
            self.expect("[")
            close, mode = "]", DF
        then = self.parse_term()
        self.expect("|")
        else_ = self.parse_term()
        self.expect(":")
        cond = self.parse_formula()
        self.expect(close)
        c = Cond(then, else_, cond, mode)
        return c

    def parse_sum(self) -> Aggregate:
        kw = self.next().text
        variant = _SUM_KEYWORDS.get(kw, self.variant)
        if self.accept("{"):
            elements = self.parse_multiset_elements("}")
            return desugar_multiset("sum", elements, variant, self.default_mode)
        self.expect("<")
        elements = self.parse_term_list(">")
        return Aggregate("sum", tuple(elements), variant)

    def parse_concat(self) -> Aggregate:
        self.next()
        self.expect("<")
        elements = self.parse_term_list(">")
        return Aggregate("concat", tuple(elements))

    def parse_count(self) -> Aggregate:
        self.next()
        self.expect("{")
        conditions = []
        if not self.at("}"):
            conditions.append(self.parse_formula())
            while self.accept(","):
                conditions.append(self.parse_formula())
        self.expect("}")
        return desugar_count(conditions, self.variant, self.default_mode)

    def parse_term_list(self, close: str):
        elements = []
        if not self.at(close):
            elements.append(self.parse_term())
            while self.accept(","):
                elements.append(self.parse_term())
        self.expect(close)
        return elements

    def parse_multiset_elements(self, close: str):
        elements = []
        if not self.at(close):
            elements.append(self.parse_multiset_element())
            while self.accept(","):
                elements.append(self.parse_multiset_element())
        self.expect(close)
        return elements

    def parse_multiset_element(self):
        term = self.parse_term()
        if self.accept(":"):
            return (term, self.parse_formula())
        return term


def _negate(t: Term, p: _Parser) -> Term:
    if isinstance(t, int) and not isinstance(t, bool):
        return -t
    if isinstance(t, Var):
        return Product(-1, t)
    if isinstance(t, Product):
        return Product(-t.coef, t.var)
    if isinstance(t, Cond):
        return Cond(_negate(t.then, p), _negate(t.else_, p), t.cond, t.mode)
    if isinstance(t, LinearSum):
        return LinearSum(tuple(_negate(i, p) for i in t.items))
    p.fail("cannot negate this term")


def _unquote(text: str) -> str:
    body = text[1:-1]
    return body.replace('\\"', '"').replace("\\\\", "\\")


def parse_program(
    text: str, default_mode: str = VC, default_variant: str = SUM_STRICT
) -> Program:
    """Parse a ``.htc`` program text into its AST."""
    return _Parser(text, default_mode, default_variant).parse_program()


def parse_term(text: str, default_mode: str = VC) -> Term:
    p = _Parser(text, default_mode, SUM_STRICT)
    t = p.parse_term()
    if p.peek().kind != "eof":
        p.fail("trailing input after term")
    return t


def parse_formula(text: str, default_mode: str = VC) -> Formula:
    p = _Parser(text, default_mode, SUM_STRICT)
    f = p.parse_formula()
    if p.peek().kind != "eof":
        p.fail("trailing input after formula")
    return f
