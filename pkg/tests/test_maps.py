import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcontig.complex import boundary, categorical_product, cycle, pair_vertex, simplex
from mcontig.errors import MalformedInputError
from mcontig.maps import (
    SimplicialMap,
    canonical,
    compose,
    constant,
    factor,
    identity,
    is_contiguous,
    pairing,
    product_map,
    restrict,
    sd_map,
    validate,
)

import oracles
from strategies import complexes


@given(complexes(max_vertices=4, max_facets=3), complexes(max_vertices=3, max_facets=3), st.data())
@settings(max_examples=60)
def test_validate_matches_oracle(K, L, data):
    images = tuple(data.draw(st.sampled_from(L.vertices)) for _ in K.vertices)
    f = SimplicialMap(K, L, images)
    assert validate(f) == oracles.is_simplicial(K, L, images)


@given(complexes(max_vertices=4, max_facets=3), complexes(max_vertices=3, max_facets=3), st.data())
@settings(max_examples=60)
def test_is_contiguous_matches_oracle(K, L, data):
    homs = oracles.all_maps(K, L)
    a = data.draw(st.sampled_from(homs))
    b = data.draw(st.sampled_from(homs))
    f, g = SimplicialMap(K, L, a), SimplicialMap(K, L, b)
    assert is_contiguous(f, g) == oracles.contiguous(K, L, a, b)
    assert is_contiguous(f, g) == is_contiguous(g, f)
    assert is_contiguous(f, f)


def test_totality_enforced():
    with pytest.raises(MalformedInputError):
        SimplicialMap(simplex(1), simplex(1), (0,))
    with pytest.raises(MalformedInputError):
        SimplicialMap(simplex(1), simplex(1), (0, 7))


def test_compose_and_identity():
    K, L = cycle(4), boundary(2)
    f = SimplicialMap(K, L, (0, 1, 2, 1))
    assert validate(f)
    assert compose(identity(L), f) == f
    assert compose(f, identity(K)) == f
    c = constant(L, L, 2)
    assert compose(c, f).images == (2, 2, 2, 2)
    with pytest.raises(MalformedInputError):
        compose(f, f)


def test_restrict():
    K = boundary(2)
    f = identity(K)
    sub = K.induced([0, 1])
    r = restrict(f, sub)
    assert r.domain == sub
    assert r.images == (0, 1)
    with pytest.raises(MalformedInputError):
        restrict(f, cycle(4))


def test_sd_map_is_simplicial_and_functorial():
    K, L = cycle(4), boundary(2)
    f = SimplicialMap(K, L, (0, 1, 2, 1))
    g = SimplicialMap(L, L, (1, 2, 0))
    assert validate(sd_map(f))
    assert sd_map(compose(g, f)) == compose(sd_map(g), sd_map(f))
    assert sd_map(identity(K)) == identity(sd_map(identity(K)).domain)


def test_product_and_pairing():
    K = simplex(1)
    f = identity(K)
    c = constant(K, K, 0)
    h = product_map(f, c)
    assert validate(h)
    P = h.codomain
    assert h.images == tuple(pair_vertex(P, v, 0) for v, _ in h.domain.origin)
    p = pairing(f, c)
    assert factor(p, 1) == f and factor(p, 2) == c


def test_canonical_maps():
    K = boundary(2)
    P = categorical_product(K, K)
    d = canonical("diagonal", K, square=P)
    pr1 = canonical("pr1", K, square=P)
    pr2 = canonical("pr2", K, square=P)
    assert validate(d) and validate(pr1) and validate(pr2)
    assert compose(pr1, d) == identity(K)
    assert compose(pr2, d) == identity(K)
    i1 = canonical("i1", K, base=0, square=P)
    assert compose(pr1, i1) == identity(K)
    assert set(compose(pr2, i1).images) == {0}
    with pytest.raises(MalformedInputError):
        canonical("i1", K)
    with pytest.raises(MalformedInputError):
        canonical("twist", K)
