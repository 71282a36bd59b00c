"""Finite abstract simplicial complexes stored by their facets.

A complex keeps its vertex ids sorted and its facets (maximal simplices,
isolated vertices included as 0-dimensional facets) as sorted tuples. Set
operations run on integer bitmasks indexed by vertex position, which is what
the search code in :mod:`mcontig.contiguity` works with.

Derived complexes (barycentric subdivisions, categorical products) get fresh
ids ``0..n-1`` in lexicographic order of the underlying simplex or pair; the
underlying object of each vertex is kept in ``origin``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import MalformedInputError

Simplex = tuple[int, ...]


def _as_simplex(vertices) -> Simplex:
    vs = list(vertices)
    if not vs:
        raise MalformedInputError("simplices are nonempty")
    for v in vs:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise MalformedInputError(f"vertex ids are non-negative integers, got {v!r}")
    s = tuple(sorted(set(vs)))
    if len(s) != len(vs):
        raise MalformedInputError(f"duplicate vertex in simplex {tuple(vs)}")
    return s


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _maximal_masks(masks: Iterable[int]) -> list[int]:
    """Drop every mask that is a subset of another one."""
    kept: list[int] = []
    for m in sorted(set(masks), key=_popcount, reverse=True):
        if not any(m & ~k == 0 for k in kept):
            kept.append(m)
    return kept


@dataclass(frozen=True)
class Complex:
    """A finite simplicial complex.

    Equality and hashing look only at ``vertices`` and ``facets``; names,
    labels and provenance are display metadata.
    """

    vertices: tuple[int, ...]
    facets: tuple[Simplex, ...]
    name: str = field(default="K", compare=False)
    labels: Mapping[int, str] = field(default_factory=dict, compare=False, repr=False)
    factors: tuple["Complex", "Complex"] | None = field(default=None, compare=False, repr=False)
    origin: tuple | None = field(default=None, compare=False, repr=False)

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.vertices, self.facets))

    # -- basic queries -------------------------------------------------

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def isolated(self) -> tuple[int, ...]:
        return tuple(f[0] for f in self.facets if len(f) == 1)

    def label(self, v: int) -> str:
        return self.labels.get(v, str(v))

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {self.label(v): v for v in self.vertices}

    def vertex(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise MalformedInputError(f"no vertex labelled {label!r} in {self.name}") from None

    @cached_property
    def index(self) -> dict[int, int]:
        """Vertex id -> bit position."""
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def origin_index(self) -> dict:
        if self.origin is None:
            return {}
        return {o: v for v, o in zip(self.vertices, self.origin)}

    def mask(self, simplex: Iterable[int]) -> int:
        m = 0
        for v in simplex:
            try:
                m |= 1 << self.index[v]
            except KeyError:
                raise MalformedInputError(f"vertex {v} not in {self.name}") from None
        return m

    def unmask(self, mask: int) -> Simplex:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(self.vertices[i])
            mask >>= 1
            i += 1
        return tuple(out)

    @cached_property
    def facet_masks(self) -> tuple[int, ...]:
        return tuple(self.mask(f) for f in self.facets)

    @cached_property
    def vertex_facets(self) -> tuple[tuple[int, ...], ...]:
        """For each vertex position, the indices of the facets containing it."""
        out: list[list[int]] = [[] for _ in self.vertices]
        for j, fm in enumerate(self.facet_masks):
            for i in range(len(self.vertices)):
                if fm >> i & 1:
                    out[i].append(j)
        return tuple(tuple(x) for x in out)

    @cached_property
    def _simplex_memo(self) -> dict[int, bool]:
        return {}

    @cached_property
    def _star_memo(self) -> dict[int, int]:
        return {}

    def is_simplex_mask(self, mask: int) -> bool:
        memo = self._simplex_memo
        r = memo.get(mask)
        if r is None:
            r = any(mask & ~f == 0 for f in self.facet_masks)
            memo[mask] = r
        return r

    def star_mask(self, mask: int) -> int:
        """Union of the facets containing ``mask``: the vertices w with mask+w a simplex."""
        memo = self._star_memo
        r = memo.get(mask)
        if r is None:
            r = 0
            for f in self.facet_masks:
                if mask & ~f == 0:
                    r |= f
            memo[mask] = r
        return r

    def has_simplex(self, simplex: Iterable[int]) -> bool:
        s = _as_simplex(simplex)
        if any(v not in self.index for v in s):
            return False
        return self.is_simplex_mask(self.mask(s))

    __contains__ = has_simplex

    def simplices(self, dim: int | None = None) -> list[Simplex]:
        """All simplices (or those of one dimension), sorted lexicographically."""
        seen: set[Simplex] = set()
        for f in self.facets:
            sizes = range(1, len(f) + 1) if dim is None else [dim + 1]
            for k in sizes:
                if k <= len(f):
                    seen.update(combinations(f, k))
        return sorted(seen)

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.dim + 1)
        for s in self.simplices():
            counts[len(s) - 1] += 1
        return tuple(counts)

    def connected_components(self) -> list[tuple[int, ...]]:
        """Vertex sets of the connected components, in order of least vertex."""
        parent = list(range(len(self.vertices)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for fm in self.facet_masks:
            bits = [i for i in range(len(self.vertices)) if fm >> i & 1]
            for b in bits[1:]:
                ra, rb = find(bits[0]), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for i, v in enumerate(self.vertices):
            groups.setdefault(find(i), []).append(v)
        return [tuple(g) for _, g in sorted(groups.items())]

    def is_connected(self) -> bool:
        return len(self.connected_components()) == 1

    def is_subcomplex_of(self, other: "Complex") -> bool:
        if any(v not in other.index for v in self.vertices):
            return False
        return all(other.is_simplex_mask(other.mask(f)) for f in self.facets)

    def induced(self, vertices: Iterable[int]) -> "Complex":
        """Full subcomplex on a vertex subset."""
        keep = self.mask(vertices)
        masks = [fm & keep for fm in self.facet_masks if fm & keep]
        return _from_masks(self, _maximal_masks(masks), name=self.name)

    def dominated_vertex(self) -> int | None:
        """Least vertex v lying with some other vertex w in every facet that contains v."""
        for i, fs in enumerate(self.vertex_facets):
            common = -1
            for s in fs:
                common &= self.facet_masks[s]
            if common & ~(1 << i):
                return self.vertices[i]
        return None

    def __repr__(self) -> str:
        return f"Complex({self.name!r}, n_vertices={len(self.vertices)}, facets={len(self.facets)}, dim={self.dim})"


def _from_masks(parent: Complex, masks: Sequence[int], name: str) -> Complex:
    facets = tuple(sorted(parent.unmask(m) for m in masks))
    vertices = tuple(sorted({v for f in facets for v in f}))
    labels = {v: parent.labels[v] for v in vertices if v in parent.labels}
    return Complex(vertices, facets, name=name, labels=labels)


def build_complex(
    facets: Iterable[Iterable[int]] = (),
    isolated: Iterable[int] = (),
    name: str = "K",
    labels: Mapping[int, str] | None = None,
) -> Complex:
    """Make a complex from generating simplices; faces of others are absorbed."""
    simplices = [_as_simplex(f) for f in facets]
    simplices += [_as_simplex([v]) for v in isolated]
    if not simplices:
        raise MalformedInputError("the empty complex is not allowed")
    vertices = tuple(sorted({v for s in simplices for v in s}))
    index = {v: i for i, v in enumerate(vertices)}
    masks = [sum(1 << index[v] for v in s) for s in simplices]
    kept = _maximal_masks(masks)
    facet_tuples = tuple(sorted(tuple(vertices[i] for i in range(len(vertices)) if m >> i & 1) for m in kept))
    return Complex(vertices, facet_tuples, name=name, labels=dict(labels or {}))


def has_simplex(K: Complex, simplex: Iterable[int]) -> bool:
    return K.has_simplex(simplex)


def skeleton(K: Complex, m: int | float) -> Complex:
    """Subcomplex of all simplices of dimension at most ``m``."""
    if m < 0:
        raise MalformedInputError("skeleton dimension must be >= 0")
    if m >= K.dim:
        return K
    m = int(m)
    gens: list[Simplex] = []
    for f in K.facets:
        if len(f) <= m + 1:
            gens.append(f)
        else:
            gens.extend(combinations(f, m + 1))
    return build_complex(gens, name=f"{K.name}^({m})", labels=K.labels)


def strong_core(K: Complex) -> Complex:
    """Remove dominated vertices one at a time until none is left.

    Deleting a dominated vertex v (with partner w) is a strong collapse: the
    retraction sending v to w is contiguous to the identity.
    """
    masks = list(K.facet_masks)
    alive = (1 << len(K.vertices)) - 1
    changed = True
    while changed:
        changed = False
        for i in range(len(K.vertices)):
            bit = 1 << i
            if not alive & bit:
                continue
            common = -1
            for fm in masks:
                if fm & bit:
                    common &= fm
            if common & ~bit:
                alive &= ~bit
                masks = _maximal_masks(fm & ~bit for fm in masks if fm & ~bit)
                changed = True
                break
    if alive == (1 << len(K.vertices)) - 1:
        return K
    return _from_masks(K, masks, name=K.name)


def _simplex_label(K: Complex, s: Simplex) -> str:
    return "[" + ",".join(K.label(v) for v in s) + "]"


def barycentric_subdivision(K: Complex) -> Complex:
    """sd(K): one vertex per simplex of K, facets are the maximal chains."""
    cells = K.simplices()
    ids = {s: i for i, s in enumerate(cells)}
    facets = []
    for F in K.facets:
        for order in permutations(F):
            chain = [ids[tuple(sorted(order[: k + 1]))] for k in range(len(F))]
            facets.append(tuple(sorted(chain)))
    return Complex(
        tuple(range(len(cells))),
        tuple(sorted(set(facets))),
        name=f"sd({K.name})",
        labels={i: _simplex_label(K, s) for i, s in enumerate(cells)},
        origin=tuple(cells),
    )


def categorical_product(K: Complex, L: Complex) -> Complex:
    """K x L: vertex pairs; a set of pairs is a simplex iff both projections are.

    The pair (K.vertices[i], L.vertices[j]) gets id ``i * |V_L| + j``, and the
    facets are exactly the products of a facet of K with a facet of L.
    """
    nl = len(L.vertices)
    facets = []
    for F in K.facets:
        for G in L.facets:
            facets.append(tuple(sorted(K.index[v] * nl + L.index[w] for v in F for w in G)))
    pairs = tuple((v, w) for v in K.vertices for w in L.vertices)
    return Complex(
        tuple(range(len(pairs))),
        tuple(sorted(facets)),
        name=f"{K.name}x{L.name}",
        labels={i: f"({K.label(v)},{L.label(w)})" for i, (v, w) in enumerate(pairs)},
        factors=(K, L),
        origin=pairs,
    )


def pair_vertex(P: Complex, v: int, w: int) -> int:
    """Id of the vertex (v, w) in a categorical product ``P``."""
    if P.factors is None:
        raise MalformedInputError(f"{P.name} is not a categorical product")
    K, L = P.factors
    return K.index[v] * len(L.vertices) + L.index[w]


@dataclass(frozen=True)
class SubcomplexRef:
    """A subcomplex of ``parent`` generated by some of its facets and vertices."""

    parent: Complex
    facets: tuple[Simplex, ...] = ()
    extra_vertices: tuple[int, ...] = ()


def generated_subcomplex(ref: SubcomplexRef) -> Complex:
    parent = ref.parent
    masks = []
    for f in ref.facets:
        s = _as_simplex(f)
        if s not in parent.facets:
            raise MalformedInputError(f"{s} is not a facet of {parent.name}")
        masks.append(parent.mask(s))
    for v in ref.extra_vertices:
        if v not in parent.index:
            raise MalformedInputError(f"vertex {v} not in {parent.name}")
        masks.append(parent.mask([v]))
    if not masks:
        raise MalformedInputError("empty selection generates the empty complex")
    return _from_masks(parent, _maximal_masks(masks), name=f"{parent.name}|sub")


# -- generators ---------------------------------------------------------


def point(name: str = "pt") -> Complex:
    return build_complex([[0]], name=name)


def simplex(n: int) -> Complex:
    if n < 0:
        raise MalformedInputError("simplex dimension must be >= 0")
    return build_complex([range(n + 1)], name=f"D{n}")


def boundary(n: int) -> Complex:
    """Boundary of the n-simplex (n >= 1)."""
    if n < 1:
        raise MalformedInputError("boundary needs n >= 1")
    return build_complex(combinations(range(n + 1), n), name=f"bD{n}")


def cycle(n: int) -> Complex:
    if n < 3:
        raise MalformedInputError("cycle needs n >= 3")
    return build_complex([(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def cone(K: Complex) -> Complex:
    apex = max(K.vertices) + 1
    labels = dict(K.labels)
    labels[apex] = "apex" if "apex" not in K._label_index else f"apex{apex}"
    return build_complex([f + (apex,) for f in K.facets], name=f"cone({K.name})", labels=labels)


def random_complex(n: int, seed: int, density: float = 0.5) -> Complex:
    """Random complex of dimension <= 2 on ``n`` vertices, fixed by ``seed``."""
    if n < 1:
        raise MalformedInputError("random complex needs n >= 1")
    rng = random.Random(seed)
    gens = [s for k in (2, 3) for s in combinations(range(n), k) if rng.random() < density]
    return build_complex(gens, isolated=range(n), name=f"R{n}s{seed}")


def generate(name: str, n: int = 0, *, base: Complex | None = None, seed: int | None = None,
             density: float = 0.5) -> Complex:
    """Dispatch on a generator name: simplex, boundary, cycle, cone, random, point."""
    if name == "simplex":
        return simplex(n)
    if name == "boundary":
        return boundary(n)
    if name == "cycle":
        return cycle(n)
    if name == "point":
        return point()
    if name == "cone":
        if base is None:
            raise MalformedInputError("cone needs a base complex")
        return cone(base)
    if name == "random":
        if seed is None:
            raise MalformedInputError("random needs a seed")
        return random_complex(n, seed, density)
    raise MalformedInputError(f"unknown generator {name!r}")


def iter_subcomplexes(K: Complex) -> Iterator[Complex]:
    """Every nonempty subcomplex of K (exhaustive; small complexes only)."""
    cells = sorted(K.simplices(), key=lambda s: (len(s), s))
    masks = [K.mask(s) for s in cells]
    pos = {m: i for i, m in enumerate(masks)}
    faces = [[pos[m & ~(1 << b)] for b in range(len(K.vertices)) if m >> b & 1 and m & ~(1 << b)] for m in masks]
    chosen = [False] * len(cells)

    def rec(i):
        if i == len(cells):
            picked = [masks[j] for j in range(len(cells)) if chosen[j]]
            if picked:
                yield _from_masks(K, _maximal_masks(picked), name=f"{K.name}|sub")
            return
        chosen[i] = False
        yield from rec(i + 1)
        if all(chosen[j] for j in faces[i]):
            chosen[i] = True
            yield from rec(i + 1)
            chosen[i] = False

    yield from rec(0)
