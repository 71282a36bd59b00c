"""Contiguity classes of simplicial maps by search over the finite set Hom(K, L).

Two search graphs share one vertex set (the simplicial maps K -> L):

* the contiguity graph, with an edge f -- g whenever f ~c g. Breadth-first
  search here gives the minimal number of steps in a contiguity chain and
  backs :func:`same_contiguity_class`.
* the one-move graph, with an edge whenever f and g differ at a single vertex
  and are contiguous. It has the same connected components: if f ~c g, moving
  the vertices of f to their g-images one at a time stays inside f(s) u g(s)
  on every simplex s, so each intermediate map is simplicial and contiguous to
  the next. Its degree is at most |V_K| * |V_L|, so :func:`connected` and
  :func:`contiguity_class` use it when only the class matters.

Both searches split a query along exact product structure first: a map into a
categorical product L1 x L2 is a pair of maps and contiguity is checked
factorwise, and a map on a disconnected domain is one map per component. In
both cases f ~ g iff every part is, and the minimal chain length is the
maximum over the parts (shorter chains are padded with repeats).

Class membership alone (not step counts) may also shrink the domain to its
strong core. If v is dominated by w in K, the retraction r: K -> K - v with
r(v) = w satisfies i o r ~c id, so f ~ f o i o r for every f. Hence
f ~ g iff f|(K - v) ~ g|(K - v): one direction restricts a chain, the other
precomposes a chain for the restrictions with r.
"""

from __future__ import annotations

import heapq
import os
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterator

from .complex import Complex, strong_core
from .errors import BudgetExceeded, MalformedInputError
from .maps import SimplicialMap, _check_parallel

DEFAULT_MAX_MAPS = int(os.environ.get("MCONTIG_MAX_MAPS", 10**6))


@dataclass(frozen=True)
class SearchBudget:
    """Resource limits.

    ``max_maps`` bounds each single search (maps visited or enumerated),
    ``max_steps`` the depth of a breadth-first search. The cover limits bound
    invariant computations: facets of the complex being covered, and
    predicate evaluations.
    """

    max_maps: int = DEFAULT_MAX_MAPS
    max_steps: int | None = None
    max_cover_facets: int | None = None
    max_predicate_calls: int | None = None

    def __post_init__(self):
        if self.max_maps < 1:
            raise MalformedInputError("max_maps must be >= 1")
        if self.max_steps is not None and self.max_steps < 1:
            raise MalformedInputError("max_steps must be >= 1")


class Status(str, Enum):
    CONNECTED = "connected"
    DISCONNECTED = "disconnected"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class ContiguityVerdict:
    status: Status
    steps: int | None
    explored: int

    @property
    def connected(self) -> bool | None:
        if self.status is Status.BUDGET_EXHAUSTED:
            return None
        return self.status is Status.CONNECTED


State = tuple[int, ...]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _HomSpace:
    """Search primitives on Hom(K, L); states are tuples of codomain positions."""

    NEIGHBOR_MEMO = 50_000

    def __init__(self, K: Complex, L: Complex):
        self.K = K
        self.L = L
        n = len(K.vertices)
        self.n = n
        self.facet_vertices = tuple(tuple(i for i in range(n) if fm >> i & 1) for fm in K.facet_masks)
        self.vertex_facets = K.vertex_facets
        self.star = L.star_mask
        self.is_simplex = L.is_simplex_mask
        self.full = (1 << len(L.vertices)) - 1
        self._neighbor_memo: dict[State, list[State]] = {}

    def facet_images(self, a: State) -> list[int]:
        out = []
        for fv in self.facet_vertices:
            m = 0
            for i in fv:
                m |= 1 << a[i]
            out.append(m)
        return out

    def is_simplicial(self, a: State) -> bool:
        return all(self.is_simplex(m) for m in self.facet_images(a))

    def neighbors(self, a: State) -> list[State]:
        """All b != a with a ~c b, in lexicographic order."""
        memo = self._neighbor_memo
        hit = memo.get(a)
        if hit is not None:
            return hit
        cur = self.facet_images(a)
        vf = self.vertex_facets
        star = self.star
        n = self.n
        out: list[State] = []
        b = [0] * n

        def rec(v):
            if v == n:
                t = tuple(b)
                if t != a:
                    out.append(t)
                return
            cand = self.full
            for s in vf[v]:
                cand &= star(cur[s])
            for w in _bits(cand):
                saved = [cur[s] for s in vf[v]]
                bit = 1 << w
                for s in vf[v]:
                    cur[s] |= bit
                b[v] = w
                rec(v + 1)
                for s, old in zip(vf[v], saved):
                    cur[s] = old

        rec(0)
        if len(memo) < self.NEIGHBOR_MEMO:
            memo[a] = out
        return out

    def moves(self, a: State) -> Iterator[State]:
        """Maps contiguous to a that differ from it at exactly one vertex."""
        img = self.facet_images(a)
        star = self.star
        for v, fs in enumerate(self.vertex_facets):
            cand = self.full
            for s in fs:
                cand &= star(img[s])
            cand &= ~(1 << a[v])
            for w in _bits(cand):
                yield a[:v] + (w,) + a[v + 1:]

    def vertex_order(self) -> list[int]:
        """Most-constrained-first order for building maps vertex by vertex."""
        n = self.n
        if n == 0:
            return []
        nbr = [0] * n
        for fv in self.facet_vertices:
            for i in fv:
                for j in fv:
                    if i != j:
                        nbr[i] |= 1 << j
        degree = [bin(x).count("1") for x in nbr]
        order: list[int] = []
        placed = 0
        remaining = set(range(n))
        while remaining:
            v = max(remaining, key=lambda i: (bin(nbr[i] & placed).count("1"), degree[i], -i))
            order.append(v)
            placed |= 1 << v
            remaining.remove(v)
        return order

    def homs(self, allowed: list[int] | None = None) -> Iterator[State]:
        """Every simplicial map, by backtracking with facet-image pruning.

        ``allowed[i]`` optionally restricts the images of vertex i to a mask.
        """
        order = self.vertex_order()
        vf = self.vertex_facets
        star = self.star
        cur = [0] * len(self.facet_vertices)
        a = [0] * self.n

        def rec(k):
            if k == len(order):
                yield tuple(a)
                return
            v = order[k]
            cand = self.full if allowed is None else allowed[v]
            for s in vf[v]:
                cand &= star(cur[s])
            for w in _bits(cand):
                saved = [cur[s] for s in vf[v]]
                for s in vf[v]:
                    cur[s] |= 1 << w
                a[v] = w
                yield from rec(k + 1)
                for s, old in zip(vf[v], saved):
                    cur[s] = old

        yield from rec(0)


@lru_cache(maxsize=512)
def _space(K: Complex, L: Complex) -> _HomSpace:
    return _HomSpace(K, L)


# -- exact decomposition along products and components ---------------------

Transform = Callable[[State], State]


def _identity(a: State) -> State:
    return a


def _factor_key(L: Complex):
    # Complex equality ignores product structure, so cache keys carry it.
    if L.factors is None:
        return None
    A, B = L.factors
    return (A, _factor_key(A), B, _factor_key(B))


def _parts(K: Complex, L: Complex) -> tuple[tuple[Transform, _HomSpace], ...]:
    """Independent sub-problems of Hom(K, L), each with its projection of states."""
    return _parts_cached(K, L, _factor_key(L))


@lru_cache(maxsize=512)
def _parts_cached(K: Complex, L: Complex, fkey) -> tuple[tuple[Transform, _HomSpace], ...]:
    if L.factors is not None:
        L1, L2 = L.factors
        n2 = len(L2.vertices)
        out = []
        for Lk, proj in ((L1, lambda p: p // n2), (L2, lambda p: p % n2)):
            for t, sp in _parts(K, Lk):
                out.append((_chain(lambda a, proj=proj: tuple(proj(p) for p in a), t), sp))
        return tuple(out)
    comps = K.connected_components()
    if len(comps) > 1:
        out = []
        for comp in comps:
            sel = tuple(K.index[v] for v in comp)
            sub = K.induced(comp)
            out.append((lambda a, sel=sel: tuple(a[i] for i in sel), _space(sub, L)))
        return tuple(out)
    return ((_identity, _space(K, L)),)


def _chain(first: Transform, then: Transform) -> Transform:
    if then is _identity:
        return first
    return lambda a: then(first(a))


def _split(f: SimplicialMap, decompose: bool, reduce: bool = False) -> list[tuple[Transform, _HomSpace]]:
    K, L = f.domain, f.codomain
    pick: Transform = _identity
    if reduce:
        core = strong_core(K)
        if len(core.vertices) < len(K.vertices):
            sel = tuple(K.index[v] for v in core.vertices)
            pick = lambda a: tuple(a[i] for i in sel)  # noqa: E731
            K = core
    parts = _parts(K, L) if decompose else ((_identity, _space(K, L)),)
    if pick is _identity:
        return list(parts)
    return [(_chain(pick, t), sp) for t, sp in parts]


def _resolve(budget: SearchBudget | None) -> SearchBudget:
    return budget if budget is not None else SearchBudget()


# -- contiguity graph: exact step counts -----------------------------------


def _bfs(space: _HomSpace, a: State, b: State, budget: SearchBudget) -> ContiguityVerdict:
    if a == b:
        return ContiguityVerdict(Status.CONNECTED, 0, 1)
    dist = {a: 0}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        d = dist[x]
        if budget.max_steps is not None and d >= budget.max_steps:
            return ContiguityVerdict(Status.BUDGET_EXHAUSTED, None, len(dist))
        for y in space.neighbors(x):
            if y in dist:
                continue
            if y == b:
                return ContiguityVerdict(Status.CONNECTED, d + 1, len(dist) + 1)
            if len(dist) >= budget.max_maps:
                return ContiguityVerdict(Status.BUDGET_EXHAUSTED, None, len(dist))
            dist[y] = d + 1
            queue.append(y)
    return ContiguityVerdict(Status.DISCONNECTED, None, len(dist))


def contiguous_neighbors(f: SimplicialMap) -> Iterator[SimplicialMap]:
    """The maps g != f with f ~c g, in lexicographic order of assignment."""
    space = _space(f.domain, f.codomain)
    verts = f.codomain.vertices
    for b in space.neighbors(f.positions):
        yield SimplicialMap(f.domain, f.codomain, tuple(verts[p] for p in b), name="g")


def same_contiguity_class(f: SimplicialMap, g: SimplicialMap, budget: SearchBudget | None = None,
                          *, decompose: bool = True) -> ContiguityVerdict:
    """Breadth-first search from f for g in the contiguity graph.

    ``steps`` is the least l with f = f0 ~c f1 ~c ... ~c fl = g.
    """
    _check_parallel(f, g)
    budget = _resolve(budget)
    a, b = f.positions, g.positions
    steps = 0
    explored = 0
    exhausted = False
    for t, space in _split(f, decompose):
        v = _bfs(space, t(a), t(b), budget)
        explored += v.explored
        if v.status is Status.DISCONNECTED:
            return ContiguityVerdict(Status.DISCONNECTED, None, explored)
        if v.status is Status.BUDGET_EXHAUSTED:
            exhausted = True
        else:
            steps = max(steps, v.steps)
    if exhausted:
        return ContiguityVerdict(Status.BUDGET_EXHAUSTED, None, explored)
    return ContiguityVerdict(Status.CONNECTED, steps, explored)


# -- one-move graph: class membership ----------------------------------------


def _reach(space: _HomSpace, a: State, b: State, max_maps: int) -> tuple[bool | None, set[State]]:
    """Best-first search from a toward b, ranked by the number of differing vertices.

    Returns the verdict and the explored set. The set lies in the component
    of a, and is all of it when the verdict is False.
    """
    if a == b:
        return True, {a}

    def gap(x):
        return sum(1 for p, q in zip(x, b) if p != q)

    seen = {a}
    heap = [(gap(a), 0, a)]
    tick = 0
    while heap:
        _, _, x = heapq.heappop(heap)
        for y in space.moves(x):
            if y in seen:
                continue
            if y == b:
                return True, seen
            if len(seen) >= max_maps:
                return None, seen
            seen.add(y)
            tick += 1
            heapq.heappush(heap, (gap(y), tick, y))
    return False, seen


class ClassOracle:
    """Repeated "is h in the class of target?" queries against one fixed map.

    On the first query of each part the class of the target is flooded, up to
    ``FLOOD_LIMIT`` maps; when that finishes every query is a set lookup.
    Otherwise each query searches from h toward the target. Everything a
    search visits is in the component of h, so after a success all of it is
    known to be in the class, and after a failure (the whole component swept)
    none of it.
    """

    FLOOD_LIMIT = 50_000

    def __init__(self, target: SimplicialMap, budget: SearchBudget | None = None, *, decompose: bool = True,
                 reduce: bool = True):
        self.target = target
        self.budget = _resolve(budget)
        self._parts = _split(target, decompose, reduce)
        self._goals = [t(target.positions) for t, _ in self._parts]
        self._good: list[set[State]] = [{g} for g in self._goals]
        self._bad: list[set[State]] = [set() for _ in self._parts]
        self._complete = [False] * len(self._parts)
        self._tried = [False] * len(self._parts)
        self.searches = 0

    def _try_flood(self, i: int) -> None:
        self._tried[i] = True
        limit = min(self.FLOOD_LIMIT, self.budget.max_maps)
        try:
            self._good[i] = _flood(self._parts[i][1], self._goals[i], limit)
            self._complete[i] = True
        except BudgetExceeded:
            pass

    def same_positions(self, positions: State) -> bool | None:
        unknown = False
        for i, (t, space) in enumerate(self._parts):
            x = t(positions)
            if x in self._good[i]:
                continue
            if not self._tried[i]:
                self._try_flood(i)
                if x in self._good[i]:
                    continue
            if self._complete[i] or x in self._bad[i]:
                return False
            self.searches += 1
            r, seen = _reach(space, x, self._goals[i], self.budget.max_maps)
            if r is True:
                self._good[i] |= seen
            elif r is False:
                self._bad[i] |= seen
                return False
            else:
                unknown = True
        return None if unknown else True

    def same(self, h: SimplicialMap) -> bool | None:
        _check_parallel(self.target, h)
        return self.same_positions(h.positions)


def _flood(space: _HomSpace, a: State, max_maps: int) -> set[State]:
    seen = {a}
    stack = [a]
    while stack:
        x = stack.pop()
        for y in space.moves(x):
            if y not in seen:
                if len(seen) >= max_maps:
                    raise BudgetExceeded(f"class of {a} exceeds {max_maps} maps", len(seen))
                seen.add(y)
                stack.append(y)
    return seen


def connected(f: SimplicialMap, g: SimplicialMap, budget: SearchBudget | None = None,
              *, decompose: bool = True, reduce: bool = True) -> bool | None:
    """Decide f ~ g without computing the step count; None if the budget runs out."""
    _check_parallel(f, g)
    budget = _resolve(budget)
    a, b = f.positions, g.positions
    unknown = False
    for t, space in _split(f, decompose, reduce):
        r, _ = _reach(space, t(a), t(b), budget.max_maps)
        if r is False:
            return False
        if r is None:
            unknown = True
    return None if unknown else True


class ContiguityClass:
    """The full contiguity class of a map, stored part by part.

    ``g in cls`` for a map parallel to the representative.
    """

    def __init__(self, f: SimplicialMap, budget: SearchBudget | None = None, *, decompose: bool = True):
        budget = _resolve(budget)
        self.representative = f
        self._parts = []
        for t, space in _split(f, decompose):
            self._parts.append((t, _flood(space, t(f.positions), budget.max_maps)))

    @property
    def size(self) -> int:
        n = 1
        for _, members in self._parts:
            n *= len(members)
        return n

    def contains_positions(self, positions: State) -> bool:
        return all(t(positions) in members for t, members in self._parts)

    def __contains__(self, g: SimplicialMap) -> bool:
        _check_parallel(self.representative, g)
        return self.contains_positions(g.positions)

    def members(self) -> Iterator[SimplicialMap]:
        """Members as maps (only without decomposition, or a single part)."""
        if len(self._parts) != 1 or self._parts[0][0] is not _identity:
            raise MalformedInputError("members() needs an undecomposed class")
        f = self.representative
        verts = f.codomain.vertices
        for a in sorted(self._parts[0][1]):
            yield SimplicialMap(f.domain, f.codomain, tuple(verts[p] for p in a), name="g")


def contiguity_class(f: SimplicialMap, budget: SearchBudget | None = None, *,
                     decompose: bool = True) -> ContiguityClass:
    return ContiguityClass(f, budget, decompose=decompose)


# -- Hom enumeration ----------------------------------------------------------


def iter_hom(K: Complex, L: Complex) -> Iterator[SimplicialMap]:
    """Simplicial maps K -> L in search order (not canonical); lazy."""
    space = _space(K, L)
    verts = L.vertices
    for a in space.homs():
        yield SimplicialMap(K, L, tuple(verts[p] for p in a), name="h")


def iter_hom_positions(K: Complex, L: Complex) -> Iterator[State]:
    return _space(K, L).homs()


def enumerate_hom(K: Complex, L: Complex, budget: SearchBudget | None = None) -> list[SimplicialMap]:
    """All simplicial maps K -> L in lexicographic order of assignment."""
    budget = _resolve(budget)
    found: list[State] = []
    for a in _space(K, L).homs():
        if len(found) >= budget.max_maps:
            raise BudgetExceeded(f"|Hom({K.name}, {L.name})| exceeds {budget.max_maps}", len(found))
        found.append(a)
    verts = L.vertices
    return [SimplicialMap(K, L, tuple(verts[p] for p in a), name="h") for a in sorted(found)]
