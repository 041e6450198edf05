"""Source-to-source passes: aggregate linearization, stratification,
occurrence retagging, assignment grounding and sum-variant rewriting."""

import itertools

import pytest

from htc import (
    DF,
    VC,
    ALL_POSITIVE,
    Assign,
    AtomF,
    Comparison,
    Cond,
    Df,
    DomainDecl,
    Interpretation,
    LevelMapping,
    Lit,
    LinearSum,
    NotStratified,
    Program,
    Rule,
    UnsupportedOperationError,
    Var,
    check_level_mapping,
    cond_occurrences,
    enumerate_stable,
    enumerate_valuations,
    ground_assignment,
    parse_program,
    pi_translate,
    retag_occurrence,
    rewrite_agg_function,
    satisfies,
    stratification_check,
    valuation_subset,
)
from htc.transform import _positive_cond_occurrences
from conftest import corpus_programs, random_program


def _models(prog):
    return [m.as_dict() for m in enumerate_stable(prog).models]


# --- aggregate linearization -------------------------------------------------

@pytest.mark.parametrize("mode", (VC, DF))
def test_pi_preserves_models_on_corpus(mode):
    for name, prog in corpus_programs(default_mode=mode):
        uniform = _retag_all(prog, mode)
        try:
            translated = pi_translate(uniform, mode)
        except UnsupportedOperationError:
            continue  # concat aggregates have no linear form
        assert _models(uniform) == _models(translated), name


def _retag_all(prog, mode):
    for occ in range(len(cond_occurrences(prog))):
        prog = retag_occurrence(prog, occ, mode)
    return prog


@pytest.mark.parametrize("mode", (VC, DF))
@pytest.mark.parametrize("seed", range(40))
def test_pi_preserves_models_on_random_programs(seed, mode):
    prog = random_program(seed, mode=mode, with_aggregates=True)
    assert _models(prog) == _models(pi_translate(prog, mode))


def test_pi_guards_elements_with_integer_checks():
    prog = parse_program("#domain x = {1}.\nx = 1 :- sum<x, 2> >= 0.\n")
    out = pi_translate(prog)
    occs = [c for _, c in cond_occurrences(out)]
    assert len(occs) == 2
    for c in occs:
        assert "IsInt" in repr(c.cond)


def test_pi_rejects_concat():
    prog = parse_program(
        '#domain s = {"a"}. #domain m = {"a"}.\nm := concat<s>.\n'
    )
    with pytest.raises(UnsupportedOperationError):
        pi_translate(prog)


# --- stratification ----------------------------------------------------------

def _brute_force_stratified(prog, occ_ids):
    names = sorted(prog.domain.variables)
    for values in itertools.product(range(len(names) + 1), repeat=len(names)):
        if check_level_mapping(prog, occ_ids, dict(zip(names, values))):
            return True
    return False


def test_checker_agrees_with_brute_force_on_corpus():
    for name, prog in corpus_programs():
        occ_ids = _positive_cond_occurrences(prog)
        got = stratification_check(prog)
        assert isinstance(got, LevelMapping) == _brute_force_stratified(
            prog, occ_ids
        ), name


@pytest.mark.parametrize("seed", range(40))
def test_checker_agrees_with_brute_force_on_random_programs(seed):
    prog = random_program(seed, with_aggregates=seed % 2 == 0)
    occ_ids = _positive_cond_occurrences(prog)
    got = stratification_check(prog)
    assert isinstance(got, LevelMapping) == _brute_force_stratified(prog, occ_ids)


def test_certified_mapping_actually_satisfies_the_constraints():
    for name, prog in corpus_programs():
        got = stratification_check(prog)
        if isinstance(got, LevelMapping):
            occ_ids = _positive_cond_occurrences(prog)
            assert check_level_mapping(prog, occ_ids, got.as_dict()), name


def test_self_supported_conditional_is_not_stratified():
    prog = parse_program("#domain x = {1}.\nx = 1 :- (1 | 0: x = 1) >= 0.\n")
    got = stratification_check(prog)
    assert isinstance(got, NotStratified)
    assert "x" in got.cycle


def test_retagging_stratified_corpus_programs_is_safe():
    for name, prog in corpus_programs():
        if not isinstance(stratification_check(prog), LevelMapping):
            continue
        base = _models(prog)
        for occ in range(len(cond_occurrences(prog))):
            for mode in (VC, DF):
                assert _models(retag_occurrence(prog, occ, mode)) == base, (
                    name,
                    occ,
                    mode,
                )


def test_retagging_unstratified_program_changes_models():
    prog = parse_program("#domain x = {1}.\nx = 1 :- (1 | 0: x = 1) >= 0.\n")
    assert _models(prog) == []
    assert _models(retag_occurrence(prog, 0, DF)) == [{"x": 1}]


# --- assignment grounding ----------------------------------------------------

def _interpretations(decl):
    vals = list(enumerate_valuations(decl))
    for h, t in itertools.product(vals, vals):
        if valuation_subset(h, t):
            yield Interpretation(h, t)


@pytest.mark.parametrize("term_src", ["y + 1", "2*y", "(1 | 2: y = 1)", "y"])
def test_assignment_grounding_has_same_models(term_src):
    from htc.parser import parse_term

    decl = DomainDecl.of({"x": (1, 2, 3, 4), "y": (1, 2)})
    rule = Rule(Assign(Var("x"), parse_term(term_src)),
                (Lit(Df(Var("y"))),))
    ground = ground_assignment(rule, decl)
    orig = rule.formula()
    for i in _interpretations(decl):
        lhs = satisfies(i, orig)
        rhs = all(satisfies(i, g.formula()) for g in ground)
        assert lhs == rhs, (term_src, i)


def test_grounding_produces_plain_rules():
    decl = DomainDecl.of({"x": (1, 2), "y": (1,)})
    rule = Rule(Assign(Var("x"), LinearSum((Var("y"), 1))), ())
    for g in ground_assignment(rule, decl):
        assert not isinstance(g.head, Assign)


# --- sum-variant rewriting ---------------------------------------------------

def test_cl_to_gz_rewrite_preserves_models_on_stratified_corpus():
    for name, prog in corpus_programs(default_variant="cl"):
        if not isinstance(stratification_check(prog), LevelMapping):
            continue
        out = rewrite_agg_function(prog, "cl", "gz")
        assert _models(prog) == _models(out), name


def test_rewrite_rejects_unjustified_direction():
    from htc import PreconditionError

    prog = parse_program("#domain x = {1}.\nx = 1 :- sum{x} >= 0.\n")
    with pytest.raises(PreconditionError):
        rewrite_agg_function(prog, "gz", "cl")
