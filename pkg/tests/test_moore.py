import pytest
from hypothesis import given
from hypothesis import strategies as st

from mcontig.complex import build_complex, cycle, simplex
from mcontig.errors import MalformedInputError
from mcontig.moore import MoorePath, normalize, paths_form_simplex, product, reverse, tighten

import oracles

TARGETS = [cycle(4), simplex(2)]


@st.composite
def walks(draw, K, start=None, max_len=6):
    """Raw paths: random walks (staying put allowed) with a random start index."""
    v = start if start is not None else draw(st.sampled_from(K.vertices))
    values = [v]
    for _ in range(draw(st.integers(0, max_len))):
        nbrs = [w for w in K.vertices if w == v or K.has_simplex((v, w))]
        v = draw(st.sampled_from(nbrs))
        values.append(v)
    return MoorePath(K, draw(st.integers(-4, 4)), tuple(values))


@st.composite
def triples(draw):
    K = draw(st.sampled_from(TARGETS))
    p = draw(walks(K))
    q = draw(walks(K, start=p.values[-1]))
    r = draw(walks(K, start=q.values[-1]))
    return p, q, r


def _same(p, q):
    return p.target == q.target and p.support == q.support and p.values == q.values


@given(triples())
def test_associativity(t):
    p, q, r = t
    assert _same(product(product(p, q), r), product(p, product(q, r)))


@given(st.sampled_from(TARGETS).flatmap(walks))
def test_units(p):
    K = p.target
    a, b = p.endpoints()
    assert _same(product(MoorePath.constant(K, a), p), p)
    assert _same(product(p, MoorePath.constant(K, b)), p)


@given(st.sampled_from(TARGETS).flatmap(walks))
def test_reverse_involution(p):
    assert _same(reverse(reverse(p)), p)
    assert reverse(p).endpoints() == tuple(reversed(p.endpoints()))
    for i in range(p.lo - 2, p.hi + 3):
        assert reverse(p)(-i) == p(i)


@given(st.sampled_from(TARGETS).flatmap(walks))
def test_normalize_and_reverse_commute_up_to_reindexing(p):
    assert normalize(reverse(p)).values == reverse(normalize(p)).values
    assert normalize(p).lo == 0


@given(triples())
def test_support_formula(t):
    p, q, _ = t
    pq = product(p, q)
    assert pq.support == (p.lo + q.lo, p.hi + q.hi)


@given(triples())
def test_values_of_product(t):
    p, q, _ = t
    pq = product(p, q)
    mid = p.hi + q.lo
    for i in range(pq.lo - 2, pq.hi + 3):
        want = p(i - q.lo) if i <= mid else q(i - p.hi)
        assert pq(i) == want


@given(st.sampled_from(TARGETS).flatmap(walks))
def test_operations_keep_edges(p):
    for path in (p, reverse(p), normalize(p), tighten(p), product(p, reverse(p))):
        for a, b in zip(path.values, path.values[1:]):
            assert a == b or path.target.has_simplex((a, b))


@given(st.sampled_from(TARGETS).flatmap(walks))
def test_tighten(p):
    t = tighten(p)
    assert t.is_tight
    for i in range(min(p.lo, t.lo) - 2, max(p.hi, t.hi) + 3):
        assert t(i) == p(i)


def test_make_and_constant():
    K = cycle(4)
    p = MoorePath.make(K, [0, 0, 1, 2, 2], start=3)
    assert p.support == (4, 6)
    c = MoorePath.constant(K, 2)
    assert c.support == (0, 0) and c.is_tight and c.is_constant


def test_invalid_paths():
    K = cycle(4)
    with pytest.raises(MalformedInputError):
        MoorePath(K, 0, (0, 2))
    with pytest.raises(MalformedInputError):
        MoorePath(K, 0, ())
    with pytest.raises(MalformedInputError):
        MoorePath(K, 0, (9,))
    with pytest.raises(MalformedInputError):
        product(MoorePath(K, 0, (0, 1)), MoorePath(K, 0, (3, 0)))
    with pytest.raises(MalformedInputError):
        product(MoorePath(K, 0, (0,)), MoorePath(simplex(2), 0, (0,)))


def _brute_simplex(paths, lo, hi):
    K = paths[0].target
    for i in range(lo - 5, hi + 5):
        if not oracles.is_simplex(K, {p(i) for p in paths} | {p(i + 1) for p in paths}):
            return False
    return True


@given(st.sampled_from(TARGETS), st.data())
def test_simplex_condition_matches_wide_scan(K, data):
    paths = [data.draw(walks(K, max_len=3)) for _ in range(data.draw(st.integers(1, 3)))]
    lo = min(p.lo for p in paths)
    hi = max(p.hi for p in paths)
    assert paths_form_simplex(paths, (lo, hi)) == _brute_simplex(paths, lo, hi)


def test_simplex_condition_errors():
    K = simplex(2)
    p = MoorePath(K, 0, (0, 1))
    with pytest.raises(MalformedInputError):
        paths_form_simplex([], (0, 1))
    with pytest.raises(MalformedInputError):
        paths_form_simplex([p], (1, 0))
    with pytest.raises(MalformedInputError):
        paths_form_simplex([p], (1, 1))
    other = build_complex([[0, 1]])
    with pytest.raises(MalformedInputError):
        paths_form_simplex([p, MoorePath(other, 0, (0,))], (0, 1))
