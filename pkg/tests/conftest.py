"""Shared fixtures: corpus loading and a seeded random-program generator."""

import glob
import os
import random

import pytest

from htc import (
    DF,
    VC,
    Aggregate,
    And,
    AtomF,
    BOT,
    Comparison,
    Cond,
    Df,
    DomainDecl,
    Impl,
    Lit,
    LinearSum,
    Product,
    Program,
    Rule,
    Var,
    parse_program,
)

CORPUS_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "corpus")


def corpus_paths():
    paths = sorted(glob.glob(os.path.join(CORPUS_DIR, "*.htc")))
    assert paths, "corpus directory is empty"
    return paths


def corpus_programs(default_mode=VC, default_variant="strict"):
    out = []
    for path in corpus_paths():
        with open(path) as f:
            out.append((os.path.basename(path),
                        parse_program(f.read(), default_mode, default_variant)))
    return out


@pytest.fixture(scope="session")
def corpus():
    return corpus_programs()


# ---------------------------------------------------------------------------
# Random small programs.  Integer-only domains keep every generator usable for
# the translation-equivalence checks, where string values and partial
# valuations interact badly under the vicious-circle reading.

def _rand_basic_term(rng, variables):
    roll = rng.random()
    if roll < 0.45:
        return Var(rng.choice(variables))
    if roll < 0.75:
        return rng.randint(0, 2)
    return Product(rng.choice((-1, 1, 2)), Var(rng.choice(variables)))


def _rand_basic_formula(rng, variables, depth=0):
    roll = rng.random()
    if roll < 0.55 or depth >= 2:
        kind = rng.random()
        if kind < 0.4:
            return AtomF(Df(Var(rng.choice(variables))))
        rel = rng.choice(("=", "!=", "<=", "<"))
        return AtomF(Comparison(_rand_basic_term(rng, variables), rel,
                                _rand_basic_term(rng, variables)))
    if roll < 0.8:
        return And(_rand_basic_formula(rng, variables, depth + 1),
                   _rand_basic_formula(rng, variables, depth + 1))
    return Impl(_rand_basic_formula(rng, variables, depth + 1), BOT)


def _rand_cond(rng, variables, mode):
    return Cond(_rand_basic_term(rng, variables), rng.randint(0, 1),
                _rand_basic_formula(rng, variables), mode)


def _rand_element(rng, variables, mode):
    """A multi-set style aggregate element: (s | 0: df(s) & phi)."""
    s = _rand_basic_term(rng, variables)
    guard = And(AtomF(Df(s)), _rand_basic_formula(rng, variables))
    return Cond(s, 0, guard, mode)


def _rand_body_atom(rng, variables, mode, with_aggregates):
    roll = rng.random()
    if with_aggregates and roll < 0.4:
        n = rng.randint(1, 2)
        # aggregate elements mirror multi-set desugaring: conditionals whose
        # guard includes definedness of the contributed term, or ground
        # constants.  A bare variable or an unguarded conditional could leave
        # the whole aggregate undefined with no linear counterpart.
        elems = tuple(
            _rand_element(rng, variables, mode) if rng.random() < 0.7
            else rng.randint(0, 2)
            for _ in range(n)
        )
        agg = Aggregate("sum", elems, rng.choice(("strict", "gz")))
        return Comparison(agg, rng.choice(("<=", ">=", "=")), rng.randint(0, 2))
    if roll < 0.7:
        lhs = _rand_cond(rng, variables, mode)
        return Comparison(lhs, rng.choice(("<=", ">=")), rng.randint(0, 1))
    return Comparison(_rand_basic_term(rng, variables),
                      rng.choice(("=", "<=")), _rand_basic_term(rng, variables))


def random_program(seed, mode=VC, with_aggregates=False):
    """A small random program: <= 3 variables over {0,1}, <= 4 rules."""
    rng = random.Random(seed)
    variables = ["x", "y", "z"][: rng.randint(1, 3)]
    decl = DomainDecl.of({v: (0, 1) for v in variables})
    rules = []
    for _ in range(rng.randint(1, 4)):
        head_var = rng.choice(variables)
        head = (Lit(Comparison(Var(head_var), "=", rng.randint(0, 1))),)
        body = tuple(
            Lit(_rand_body_atom(rng, variables, mode, with_aggregates),
                neg=rng.random() < 0.25)
            for _ in range(rng.randint(0, 2))
        )
        rules.append(Rule(head, body))
    return Program(tuple(rules), decl)
