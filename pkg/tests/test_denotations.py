"""Laws for basic constraint atoms under an exhaustive valuation sweep.

The atom family below is built from hole contexts so that the substitution
laws (replace a subterm by its value, or by the undefined marker) can be
checked mechanically.  Aggregates use the strict and gz variants; the cl
variant maps undefined contributions to 0 and is deliberately excluded
here because it trades away monotonicity for clingo compatibility.
"""

import itertools

import pytest
from hypothesis import given, strategies as st

from htc import (
    Aggregate,
    ArithmeticOverflowError,
    Comparison,
    Df,
    DomainDecl,
    IsInt,
    LinearSum,
    Product,
    UNDEF,
    Valuation,
    Var,
    apply_concat,
    apply_sum,
    denote,
    enumerate_valuations,
    rem,
    valuation_subset,
)

X, Y, Z = Var("x"), Var("y"), Var("z")
DOMAIN = (0, 1, "a")
DECL = DomainDecl.of({"x": DOMAIN, "y": DOMAIN, "z": DOMAIN})
VALS = list(enumerate_valuations(DECL))

# (context, hole) pairs: context(hole) is a basic atom of the family.
FAMILY = [
    (lambda s: Df(s), X),
    (lambda s: IsInt(s), X),
    (lambda s: Comparison(s, "=", Y), X),
    (lambda s: Comparison(s, "<=", 1), X),
    (lambda s: Comparison(s, "!=", 0), Y),
    (lambda s: Comparison(LinearSum((s, Y)), "<=", 1), X),
    (lambda s: Comparison(Aggregate("sum", (s, 1), "strict"), ">=", 1), X),
    (lambda s: Comparison(Aggregate("sum", (s, Y), "gz"), "<=", 2), X),
    (lambda s: Comparison(Aggregate("concat", (s,)), "=", Y), X),
]

ATOMS = [ctx(s) for ctx, s in FAMILY] + [
    Comparison(Product(2, X), "<=", Y),
    Comparison(X, "<", Y),
]

TERMS = [X, Y, 1, "a", LinearSum((X, Y)), Product(-1, Z)]


def _vars(atom):
    from htc.syntax import atom_vars

    return atom_vars(atom)


@pytest.mark.parametrize("atom", ATOMS, ids=repr)
def test_condition_5_only_own_variables_matter(atom):
    relevant = _vars(atom)
    seen = {}
    for v in VALS:
        key = tuple(v(x) for x in sorted(relevant))
        got = denote(atom, v)
        assert seen.setdefault(key, got) == got


@pytest.mark.parametrize("atom", ATOMS, ids=repr)
def test_condition_6_monotone_in_bindings(atom):
    for v, w in itertools.product(VALS, VALS):
        if valuation_subset(v, w) and denote(atom, v):
            assert denote(atom, w)


@pytest.mark.parametrize("ctx,s", FAMILY, ids=lambda p: "")
def test_condition_7_undefined_hole_is_weakest(ctx, s):
    for v in VALS:
        if denote(ctx(UNDEF), v):
            assert denote(ctx(s), v)


def test_condition_8_constant_equality_is_valid():
    for d in DOMAIN:
        assert all(denote(Comparison(d, "=", d), v) for v in VALS)


def test_condition_9_variable_equality_reads_binding():
    for d in DOMAIN:
        for v in VALS:
            assert denote(Comparison(X, "=", d), v) == (v("x") == d)


def test_condition_10_equality_values_are_exclusive():
    for s in TERMS:
        for d, d2 in itertools.permutations(DOMAIN, 2):
            for v in VALS:
                assert not (denote(Comparison(s, "=", d), v)
                            and denote(Comparison(s, "=", d2), v))


def test_condition_11_equal_terms_share_a_value():
    universe = list(DOMAIN) + [-1, 2, "a a"]
    for s, s2 in itertools.product(TERMS, TERMS):
        for v in VALS:
            if denote(Comparison(s, "=", s2), v):
                assert any(denote(Comparison(s, "=", d), v)
                           and denote(Comparison(s2, "=", d), v)
                           for d in universe)


@pytest.mark.parametrize("ctx,s", FAMILY, ids=lambda p: "")
def test_condition_12_substitute_defined_value(ctx, s):
    for v in VALS:
        for d in DOMAIN:
            if denote(Comparison(s, "=", d), v):
                assert denote(ctx(s), v) == denote(ctx(d), v)


@pytest.mark.parametrize("ctx,s", FAMILY, ids=lambda p: "")
def test_condition_13_valueless_hole_collapses_to_undefined(ctx, s):
    for v in VALS:
        if not denote(Comparison(s, "=", s), v) and denote(ctx(s), v):
            assert denote(ctx(UNDEF), v)


# --- term equality -----------------------------------------------------------

def test_equality_transitive_and_symmetric():
    for s, s2, s3 in itertools.product(TERMS, repeat=3):
        for v in VALS:
            if denote(Comparison(s, "=", s2), v):
                assert denote(Comparison(s2, "=", s), v)
                if denote(Comparison(s2, "=", s3), v):
                    assert denote(Comparison(s, "=", s3), v)


def test_equality_with_undefined_is_empty():
    for s in TERMS:
        for v in VALS:
            assert not denote(Comparison(UNDEF, "=", s), v)
            assert not denote(Comparison(s, "=", UNDEF), v)
    assert not any(denote(Comparison(UNDEF, "=", UNDEF), v) for v in VALS)


def test_equality_not_reflexive_for_unbound():
    v0 = Valuation.of({}, DECL.variables)
    assert not denote(Comparison(X, "=", X), v0)


# --- df observations ---------------------------------------------------------

def test_df_is_union_of_value_equalities():
    extras = [-1, 2, "a a"]
    for s in TERMS:
        for v in VALS:
            union = any(denote(Comparison(s, "=", d), v)
                        for d in list(DOMAIN) + extras)
            assert denote(Df(s), v) == union


def test_df_of_constants_and_variables():
    for v in VALS:
        assert denote(Df(1), v) and denote(Df("a"), v)
        assert denote(Df(X), v) == (v("x") is not UNDEF)
        assert not denote(Df(UNDEF), v)


# --- aggregate evaluation functions -----------------------------------------

def _oracle_strict(seq):
    total = 0
    for g in seq:
        if g is UNDEF:
            return UNDEF
        if isinstance(g, int) and not isinstance(g, bool):
            total += g
    return total


SCALARS = st.one_of(
    st.integers(-5, 5),
    st.sampled_from(["e", "hello world", UNDEF]),
)


@given(st.lists(SCALARS, max_size=6))
def test_strict_sum_matches_oracle(seq):
    assert apply_sum("strict", tuple(seq)) == _oracle_strict(seq)


@given(st.lists(SCALARS, max_size=6))
def test_strict_typed_undefined_on_any_nonint(seq):
    bad = any(g is UNDEF or not isinstance(g, int) or isinstance(g, bool)
              for g in seq)
    got = apply_sum("strict-typed", tuple(seq))
    assert (got is UNDEF) == bad
    if not bad:
        assert got == sum(seq)


@given(st.lists(SCALARS, max_size=6))
def test_cl_zeroes_everything_nonint(seq):
    expect = sum(g for g in seq if isinstance(g, int) and not isinstance(g, bool))
    assert apply_sum("cl", tuple(seq)) == expect


@given(st.lists(SCALARS, max_size=6))
def test_gz_keeps_undefined(seq):
    got = apply_sum("gz", tuple(seq))
    if any(g is UNDEF for g in seq):
        assert got is UNDEF
    else:
        assert got == sum(g for g in seq
                          if isinstance(g, int) and not isinstance(g, bool))


def test_cl_equals_gz_after_removal():
    pool = (1, "e", UNDEF)
    for n in range(4):
        for seq in itertools.product(pool, repeat=n):
            assert apply_sum("cl", seq) == apply_sum("gz", rem(seq))


def test_sum_neutral_element():
    assert apply_sum("strict", ()) == 0
    assert apply_concat(()) == ""


def test_concat_joins_strings_and_rejects_others():
    assert apply_concat(("hi", "there")) == "hi there"
    assert apply_concat((1, "x")) is UNDEF
    assert apply_concat(("x", UNDEF)) is UNDEF


def test_sum_overflow_is_an_error_not_undefined():
    big = 2**63 - 1
    with pytest.raises(ArithmeticOverflowError):
        apply_sum("strict", (big, 1))
