import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcontig.complex import boundary, build_complex, categorical_product, cycle, point, simplex
from mcontig.contiguity import (
    ClassOracle,
    SearchBudget,
    Status,
    connected,
    contiguity_class,
    contiguous_neighbors,
    enumerate_hom,
    iter_hom,
    same_contiguity_class,
)
from mcontig.errors import BudgetExceeded, MalformedInputError
from mcontig.maps import SimplicialMap, constant, identity

import oracles
from strategies import complexes


def _map(K, L, images):
    return SimplicialMap(K, L, images)


@given(complexes(max_vertices=4, max_facets=4), complexes(max_vertices=4, max_facets=4))
@settings(max_examples=60)
def test_hom_enumeration_matches_oracle(K, L):
    got = [f.images for f in enumerate_hom(K, L)]
    assert got == oracles.all_maps(K, L)
    assert sorted(f.images for f in iter_hom(K, L)) == got


def test_hom_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_hom(cycle(4), simplex(2), SearchBudget(max_maps=10))


@given(complexes(max_vertices=4, max_facets=3), complexes(max_vertices=4, max_facets=3), st.data())
@settings(max_examples=60)
def test_steps_match_all_pairs_bfs(K, L, data):
    table = oracles.all_pairs_steps(K, L)
    homs = list(table)
    a = data.draw(st.sampled_from(homs))
    b = data.draw(st.sampled_from(homs))
    v = same_contiguity_class(_map(K, L, a), _map(K, L, b))
    want = table[a].get(b)
    if want is None:
        assert v.status is Status.DISCONNECTED and v.steps is None
    else:
        assert v.status is Status.CONNECTED and v.steps == want
    # the undecomposed search sees the same graph
    assert same_contiguity_class(_map(K, L, a), _map(K, L, b), decompose=False).steps == v.steps


@given(complexes(max_vertices=4, max_facets=3), complexes(max_vertices=4, max_facets=3), st.data())
@settings(max_examples=60)
def test_connected_variants_agree_with_oracle(K, L, data):
    homs = oracles.all_maps(K, L)
    a = data.draw(st.sampled_from(homs))
    b = data.draw(st.sampled_from(homs))
    want = oracles.same_class(K, L, a, b)
    f, g = _map(K, L, a), _map(K, L, b)
    for decompose in (True, False):
        for reduce in (True, False):
            assert connected(f, g, decompose=decompose, reduce=reduce) is want
    assert ClassOracle(g).same(f) is want
    assert (f in contiguity_class(g)) is want


def test_product_codomain_and_disconnected_domain():
    K = build_complex([[0, 1], [2]])
    L = categorical_product(boundary(2), simplex(1))
    table = oracles.all_pairs_steps(K, L)
    homs = list(table)
    for a in homs[::7]:
        for b in homs[::5]:
            v = same_contiguity_class(_map(K, L, a), _map(K, L, b))
            assert v.steps == table[a].get(b)


def test_neighbors_are_one_step():
    K, L = cycle(4), boundary(2)
    f = SimplicialMap(K, L, (0, 1, 2, 1))
    nbrs = list(contiguous_neighbors(f))
    want = [b for b in oracles.all_maps(K, L) if b != f.images and oracles.contiguous(K, L, f.images, b)]
    assert sorted(g.images for g in nbrs) == sorted(want)


def test_class_size_and_members():
    K, L = simplex(1), boundary(2)
    cls = contiguity_class(SimplicialMap(K, L, (0, 1)), decompose=False)
    graph = oracles.contiguity_graph(K, L)
    want = oracles.bfs_distances(graph, (0, 1))
    assert cls.size == len(want)
    assert sorted(g.images for g in cls.members()) == sorted(want)


def test_two_component_codomain_is_disconnected():
    P = point()
    S0 = build_complex([[0], [1]])
    v = same_contiguity_class(constant(P, S0, 0), constant(P, S0, 1))
    assert v.status is Status.DISCONNECTED
    assert v.connected is False


def test_step_budget_reports_exhaustion():
    K = build_complex([[0, 1], [2]])
    L = cycle(4)
    f = SimplicialMap(K, L, (0, 1, 0))
    g = SimplicialMap(K, L, (2, 3, 2))
    want = oracles.all_pairs_steps(K, L)[f.images][g.images]
    assert want > 1
    assert same_contiguity_class(f, g).steps == want
    v = same_contiguity_class(f, g, SearchBudget(max_steps=1))
    assert v.status is Status.BUDGET_EXHAUSTED and v.connected is None


def test_map_budget_reports_exhaustion():
    K, L = cycle(4), cycle(4)
    f = identity(K)
    g = SimplicialMap(K, L, (1, 2, 3, 0))
    v = same_contiguity_class(f, g, SearchBudget(max_maps=1))
    assert v.status in (Status.BUDGET_EXHAUSTED, Status.DISCONNECTED)
    assert v.status is Status.BUDGET_EXHAUSTED or oracles.same_class(K, L, f.images, g.images) is False


def test_rotation_of_square_is_not_contiguous_to_identity():
    # the identity of C4 has no contiguous neighbour, so its class is a singleton
    K = cycle(4)
    rot = SimplicialMap(K, K, (1, 2, 3, 0))
    assert same_contiguity_class(identity(K), rot).status is Status.DISCONNECTED
    assert not oracles.same_class(K, K, identity(K).images, rot.images)


def test_parallel_check():
    with pytest.raises(MalformedInputError):
        same_contiguity_class(identity(simplex(1)), identity(simplex(2)))


def test_budget_validation():
    with pytest.raises(MalformedInputError):
        SearchBudget(max_maps=0)
    with pytest.raises(MalformedInputError):
        SearchBudget(max_steps=0)
