"""Randomised property tests."""

import json

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from stratlat import (
    StratifiedLattice,
    check_axiom,
    check_axioms,
    collapse3,
    dualize,
    is_model,
    lex_inf,
    lex_sup,
    parse_program,
    replay_witness,
    rw_minimum_model,
    wfs_oracle,
)
from stratlat.lp import F, T, ZERO, Literal, Program, Rule, TruthValue, tp_step
from stratlat.stratified import stratify

import oracles
from corpus_data import models, small_lattices

LATTICES = [L for L in small_lattices(5) if L.n >= 2]
MODELS = models(6, 2)
SETTINGS = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def stratified_lattices(draw):
    """Arbitrary (mostly non-model) stratifications of small lattices."""
    L = draw(st.sampled_from(LATTICES))
    depth = draw(st.integers(1, 2))
    pair = st.tuples(st.sampled_from(L.labels), st.sampled_from(L.labels))
    levels = [(draw(st.lists(pair, max_size=4)), draw(st.booleans())) for _ in range(depth)]
    return stratify(L, levels)


@SETTINGS
@given(stratified_lattices())
def test_witnesses_replay(S):
    for r in check_axioms(S, "all"):
        assert (r.witness is None) == r.holds
        if not r.holds:
            assert replay_witness(S, r)


@SETTINGS
@given(stratified_lattices())
def test_binary_join_axioms_match_subset_versions(S):
    assert check_axiom(S, "A4").holds == oracles.a4_by_subsets(S)
    if S.n <= 4:
        assert check_axiom(S, "A4*").holds == oracles.a4star_by_families(S, 3)


@SETTINGS
@given(stratified_lattices())
def test_dual_and_json_round_trips(S):
    assert dualize(dualize(S)) == S
    again = StratifiedLattice.from_json(json.loads(json.dumps(S.to_json())))
    assert again.to_json() == S.to_json()
    # a model is symmetric exactly when its dual is a model
    if is_model(S):
        sym = all(r.holds for r in check_axioms(S, ("A3d", "A4d", "A5d")))
        assert sym == is_model(dualize(S))


@SETTINGS
@given(st.sampled_from(MODELS), st.data())
def test_lex_bounds_of_random_subsets(S, data):
    X = data.draw(st.lists(st.sampled_from(list(S.elements)), unique=True, max_size=S.n))
    lm = oracles.lex_matrix(S)
    sup, inf = oracles.bounds(S, lm, X)
    assert lex_sup(S, X) == sup
    assert lex_inf(S, X) == inf


values = st.one_of(
    st.just(ZERO),
    st.builds(F, st.integers(0, 6)),
    st.builds(T, st.integers(0, 6)),
)


@given(values, values)
def test_negation_reverses_order(v, w):
    if v <= w:
        assert w.negate() <= v.negate()
    assert TruthValue.parse(str(v)) == v


ATOMS = ["a", "b", "c", "d"]


@st.composite
def programs(draw):
    lit = st.builds(Literal, st.sampled_from(ATOMS), st.booleans())
    rule = st.builds(Rule, st.sampled_from(ATOMS), st.lists(lit, max_size=3).map(tuple))
    return Program.of(draw(st.lists(rule, max_size=7)))


@settings(max_examples=300, deadline=None)
@given(programs())
def test_random_programs_agree_with_wfs(P):
    m = rw_minimum_model(P)
    assert tp_step(P, m.values) == m.values
    assert collapse3(m.values) == wfs_oracle(P)


@settings(max_examples=100, deadline=None)
@given(programs())
def test_program_text_round_trip(P):
    again = parse_program(str(P))
    assert again.rules == P.rules
