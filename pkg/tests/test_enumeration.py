import pytest

from stratlat import (
    EndoFunction,
    EnumerationBudget,
    discrete,
    enumerate_lattices,
    enumerate_models,
    enumerate_stratifications,
    enumerate_weakly_monotone,
    find_isomorphism,
    is_model,
    is_weakly_monotone,
)
from stratlat.errors import BudgetExceeded
from stratlat.fixtures import diamond_lattice, five_element_strong_model, pentagon_lattice
from stratlat.inverse_limit import find_lattice_isomorphism
from stratlat.lattice import chain

import oracles

# lattices up to isomorphism on 1..7 elements
LATTICE_COUNTS = [1, 1, 1, 2, 5, 15, 53]


@pytest.mark.parametrize("n", range(1, 8))
def test_lattice_counts(n):
    assert sum(1 for _ in enumerate_lattices(n)) == LATTICE_COUNTS[n - 1]


@pytest.mark.parametrize("n", range(1, 6))
def test_lattice_counts_match_brute_force(n):
    assert sum(1 for _ in enumerate_lattices(n)) == oracles.count_lattices(n)


@pytest.mark.parametrize("n", range(2, 7))
def test_lattices_pairwise_non_isomorphic(n):
    lats = list(enumerate_lattices(n))
    for i, A in enumerate(lats):
        for B in lats[i + 1:]:
            assert find_lattice_isomorphism(A, B) is None


def test_lattice_budget():
    with pytest.raises(BudgetExceeded):
        list(enumerate_lattices(8))
    with pytest.raises(BudgetExceeded):
        EnumerationBudget(max_elements=9)
    with pytest.raises(BudgetExceeded):
        EnumerationBudget(max_depth=4)


def _families(models_):
    return {S.preorders for S in models_}


def test_stratifications_of_diamond_match_unpruned_search():
    L = diamond_lattice()
    assert _families(enumerate_stratifications(L, 1)) == oracles.model_preorder_families(L, 1, is_model)


def test_stratifications_of_three_chain_match_unpruned_search():
    L = chain(["a", "b", "c"])
    assert _families(enumerate_stratifications(L, 2)) == oracles.model_preorder_families(L, 2, is_model)


def test_discrete_and_known_model_are_emitted():
    L = pentagon_lattice()
    found = list(enumerate_stratifications(L, 2))
    assert discrete(L, 2).preorders in _families(found)
    target = five_element_strong_model()
    assert any(find_isomorphism(S, target) is not None for S in found)
    assert all(is_model(S) for S in found)


def test_stratification_budget():
    L7 = next(iter(enumerate_lattices(7)))
    with pytest.raises(BudgetExceeded):
        list(enumerate_stratifications(L7, 1))
    assert len(list(enumerate_stratifications(L7, 1, sample=3))) <= 3
    with pytest.raises(BudgetExceeded):
        list(enumerate_stratifications(pentagon_lattice(), 4))


# models per element count, for depth 1, 2 and 3
MODEL_COUNTS = {
    1: (1, 1, 1),
    2: (1, 2, 3),
    3: (1, 4, 9),
    4: (2, 14, 44),
    5: (5, 55, 234),
    6: (15, 255, 1436),
}


@pytest.mark.parametrize("n", range(1, 7))
def test_model_counts(n):
    got = tuple(sum(1 for L in enumerate_lattices(n) for _ in enumerate_stratifications(L, d)) for d in (1, 2, 3))
    assert got == MODEL_COUNTS[n]


def test_enumerate_models_is_deterministic():
    b = EnumerationBudget(max_elements=7, max_depth=1, seed=3, sample_count=4)
    first = [S.to_json() for S in enumerate_models(b)]
    second = [S.to_json() for S in enumerate_models(b)]
    assert first == second
    # depth 1 admits only the discrete stratification, so sampling keeps it for each 7-element lattice
    assert len(first) == sum(MODEL_COUNTS[n][0] for n in range(1, 7)) + LATTICE_COUNTS[6]
    assert len(first) == sum(LATTICE_COUNTS)


def test_weakly_monotone_on_three_chain_matches_scan():
    S = discrete(chain(["a", "b", "c"]), 1)
    tables = [f.table for f in enumerate_weakly_monotone(S)]
    assert tables == sorted(oracles.all_weakly_monotone(S))


def test_weakly_monotone_small_corpus_matches_scan():
    for S in enumerate_models(EnumerationBudget(max_elements=4, max_depth=2)):
        got = [f.table for f in enumerate_weakly_monotone(S)]
        assert got == sorted(oracles.all_weakly_monotone(S))


def test_weakly_monotone_sampling_large_model():
    L = next(iter(enumerate_lattices(7)))
    S = discrete(L, 1)
    fs = list(enumerate_weakly_monotone(S, samples=20, seed=5))
    tables = [f.table for f in fs]
    assert tables[0] == tuple(S.elements)
    for c in S.elements:
        assert (c,) * S.n in tables
    assert all(is_weakly_monotone(f).holds for f in fs)
    assert tables == [f.table for f in enumerate_weakly_monotone(S, samples=20, seed=5)]
    assert len(list(enumerate_weakly_monotone(S, cap=4, samples=20))) == 4


def test_identity_and_constants_emitted():
    S = five_element_strong_model()
    tables = {f.table for f in enumerate_weakly_monotone(S)}
    assert EndoFunction.identity(S).table in tables
    assert all((c,) * S.n in tables for c in S.elements)
