from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcontig.complex import boundary, cycle, generated_subcomplex, simplex
from mcontig.cover import INFINITY, brute_force_cover, exact_set_cover, minimum_good_cover
from mcontig.errors import MalformedInputError

import oracles
from strategies import complexes


@st.composite
def forbidden_sets(draw, K):
    """A monotone predicate: a piece is good when it holds no forbidden vertex set."""
    pool = [s for k in (1, 2, 3) for s in combinations(K.vertices, k)]
    chosen = draw(st.lists(st.sampled_from(pool), max_size=4, unique=True))
    return [frozenset(s) for s in chosen]


def _good_without(forbidden):
    def good(piece):
        vs = set(piece.vertices)
        return not any(s <= vs for s in forbidden)

    return good


def _at_most(n):
    return lambda piece: len(piece.vertices) <= n


@given(complexes(max_vertices=4, max_facets=4), st.data())
@settings(max_examples=80)
def test_cover_matches_exhaustive_forbidden_sets(K, data):
    good = _good_without(data.draw(forbidden_sets(K)))
    sol = minimum_good_cover(K, good)
    assert sol.value == oracles.min_cover(K, good)
    if sol.finite:
        assert len(sol.pieces) == sol.value + 1
        covered = set()
        for ref in sol.pieces:
            piece = generated_subcomplex(ref)
            assert good(piece)
            covered |= oracles.simplices(piece)
        assert covered == oracles.simplices(K)


@given(complexes(max_vertices=4, max_facets=4), st.integers(1, 4))
@settings(max_examples=60)
def test_cover_matches_exhaustive_size_bound(K, n):
    good = _at_most(n)
    assert minimum_good_cover(K, good).value == oracles.min_cover(K, good)


@given(complexes(max_vertices=4, max_facets=3), st.data())
@settings(max_examples=30)
def test_packaged_brute_force_agrees(K, data):
    good = _good_without(data.draw(forbidden_sets(K)))
    assert brute_force_cover(K, good) == oracles.min_cover(K, good)


def test_bad_facet_gives_infinity_with_certificate():
    K = boundary(2)
    sol = minimum_good_cover(K, lambda piece: 2 not in piece.vertices)
    assert sol.value == INFINITY
    assert 2 in sol.certificate


def test_whole_complex_good():
    sol = minimum_good_cover(simplex(3), lambda piece: True)
    assert sol.value == 0 and sol.predicate_calls == 1


def test_call_limit_gives_unknown():
    sol = minimum_good_cover(cycle(5), _at_most(2), max_calls=3)
    assert sol.value is None
    assert minimum_good_cover(cycle(5), _at_most(2)).value == 4


def test_undecided_predicate_gives_unknown_with_bound():
    def good(piece):
        if len(piece.vertices) <= 2:
            return True
        return None if len(piece.vertices) == 3 else False

    sol = minimum_good_cover(cycle(4), good)
    assert sol.value is None
    # single edges always work, two-edge paths are undecided
    assert sol.upper_bound == 3


def test_probe_is_only_used_for_the_whole_complex():
    calls = []

    def probe(piece):
        calls.append(len(piece.facets))
        return None

    sol = minimum_good_cover(cycle(4), _at_most(3), probe=probe)
    assert calls == [4]
    assert sol.value == 1


@given(st.integers(1, 7), st.data())
@settings(max_examples=60)
def test_exact_set_cover_is_minimum(n, data):
    universe = (1 << n) - 1
    sets = data.draw(st.lists(st.integers(1, universe), min_size=1, max_size=8))
    sets.append(universe)  # keep it coverable
    best = exact_set_cover(universe, sets)
    acc = 0
    for s in best:
        acc |= s
    assert acc == universe
    brute = min(k for k in range(1, len(sets) + 1)
                for combo in combinations(sets, k) if _union(combo) == universe)
    assert len(best) == brute


def _union(sets):
    acc = 0
    for s in sets:
        acc |= s
    return acc


def test_exact_set_cover_rejects_uncoverable():
    with pytest.raises(MalformedInputError):
        exact_set_cover(0b111, [0b001, 0b010])
