"""Simplicial maps between complexes and the maps built from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .complex import (
    Complex,
    SubcomplexRef,
    barycentric_subdivision,
    categorical_product,
    generated_subcomplex,
    pair_vertex,
)
from .errors import MalformedInputError


@dataclass(frozen=True)
class SimplicialMap:
    """A vertex map ``domain -> codomain``.

    ``images[i]`` is the image of ``domain.vertices[i]``. Construction checks
    totality only; use :func:`validate` for simpliciality.
    """

    domain: Complex
    codomain: Complex
    images: tuple[int, ...]
    name: str = field(default="f", compare=False)

    def __post_init__(self):
        if len(self.images) != len(self.domain.vertices):
            raise MalformedInputError("a map must assign every domain vertex exactly once")
        for w in self.images:
            if w not in self.codomain.index:
                raise MalformedInputError(f"image vertex {w} not in {self.codomain.name}")

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.domain, self.codomain, self.images))

    @classmethod
    def from_dict(cls, domain: Complex, codomain: Complex, mapping: Mapping[int, int], name: str = "f"):
        missing = [v for v in domain.vertices if v not in mapping]
        if missing:
            raise MalformedInputError(f"map does not assign vertices {missing}")
        extra = [v for v in mapping if v not in domain.index]
        if extra:
            raise MalformedInputError(f"vertices {extra} are not in {domain.name}")
        return cls(domain, codomain, tuple(mapping[v] for v in domain.vertices), name=name)

    def __call__(self, v: int) -> int:
        return self.images[self.domain.index[v]]

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.domain.vertices, self.images))

    @cached_property
    def positions(self) -> tuple[int, ...]:
        """Images as codomain bit positions; the search code works on these."""
        idx = self.codomain.index
        return tuple(idx[w] for w in self.images)

    def image(self, simplex) -> tuple[int, ...]:
        return tuple(sorted({self(v) for v in simplex}))

    def __repr__(self) -> str:
        pairs = ", ".join(f"{self.domain.label(v)}->{self.codomain.label(w)}" for v, w in self.as_dict().items())
        return f"SimplicialMap({self.domain.name}->{self.codomain.name}: {pairs})"


def _facet_image_masks(f: SimplicialMap) -> list[int]:
    pos = f.positions
    out = []
    for fm in f.domain.facet_masks:
        m = 0
        i = 0
        while fm:
            if fm & 1:
                m |= 1 << pos[i]
            fm >>= 1
            i += 1
        out.append(m)
    return out


def validate(f: SimplicialMap) -> bool:
    """True iff every facet of the domain is sent onto a simplex."""
    L = f.codomain
    return all(L.is_simplex_mask(m) for m in _facet_image_masks(f))


def _check_parallel(f: SimplicialMap, g: SimplicialMap) -> None:
    if f.domain != g.domain or f.codomain != g.codomain:
        raise MalformedInputError(
            f"maps are not parallel: {f.domain.name}->{f.codomain.name} vs {g.domain.name}->{g.codomain.name}"
        )


def is_contiguous(f: SimplicialMap, g: SimplicialMap) -> bool:
    """f ~c g: for each facet, the union of both images is a simplex."""
    _check_parallel(f, g)
    L = f.codomain
    return all(L.is_simplex_mask(a | b) for a, b in zip(_facet_image_masks(f), _facet_image_masks(g)))


def compose(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    """g o f."""
    if f.codomain != g.domain:
        raise MalformedInputError(f"cannot compose: {f.codomain.name} is not {g.domain.name}")
    return SimplicialMap(f.domain, g.codomain, tuple(g(w) for w in f.images), name=f"{g.name}o{f.name}")


def restrict(f: SimplicialMap, sub: Complex | SubcomplexRef) -> SimplicialMap:
    """Restriction to a subcomplex of the domain (ids are shared with the parent)."""
    if isinstance(sub, SubcomplexRef):
        if sub.parent != f.domain:
            raise MalformedInputError("subcomplex reference is not on the map's domain")
        sub = generated_subcomplex(sub)
    if not sub.is_subcomplex_of(f.domain):
        raise MalformedInputError(f"{sub.name} is not a subcomplex of {f.domain.name}")
    return SimplicialMap(sub, f.codomain, tuple(f(v) for v in sub.vertices), name=f"{f.name}|")


def sd_map(f: SimplicialMap) -> SimplicialMap:
    """Induced map sd(K) -> sd(L): the vertex <s> goes to <f(s)>."""
    sK = barycentric_subdivision(f.domain)
    sL = barycentric_subdivision(f.codomain)
    target = sL.origin_index
    images = []
    for cell in sK.origin:
        img = f.image(cell)
        if img not in target:
            raise MalformedInputError(f"{f.name} is not simplicial: {cell} -> {img}")
        images.append(target[img])
    return SimplicialMap(sK, sL, tuple(images), name=f"sd({f.name})")


def product_map(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """f x g on categorical products, (v, w) -> (f v, g w)."""
    dom = categorical_product(f.domain, g.domain)
    cod = categorical_product(f.codomain, g.codomain)
    images = tuple(pair_vertex(cod, f(v), g(w)) for v, w in dom.origin)
    return SimplicialMap(dom, cod, images, name=f"{f.name}x{g.name}")


def pairing(f: SimplicialMap, g: SimplicialMap, product: Complex | None = None) -> SimplicialMap:
    """(f, g): K -> L1 x L2 for maps with a common domain."""
    if f.domain != g.domain:
        raise MalformedInputError("pairing needs a common domain")
    P = product if product is not None else categorical_product(f.codomain, g.codomain)
    images = tuple(pair_vertex(P, a, b) for a, b in zip(f.images, g.images))
    return SimplicialMap(f.domain, P, images, name=f"({f.name},{g.name})")


def factor(h: SimplicialMap, k: int) -> SimplicialMap:
    """pr_k o h for a map into a categorical product (k = 1 or 2)."""
    P = h.codomain
    if P.factors is None:
        raise MalformedInputError(f"{P.name} is not a categorical product")
    origin = P.origin
    base = P.factors[k - 1]
    return SimplicialMap(h.domain, base, tuple(origin[P.index[w]][k - 1] for w in h.images), name=f"pr{k}o{h.name}")


def identity(K: Complex) -> SimplicialMap:
    return SimplicialMap(K, K, K.vertices, name="id")


def constant(K: Complex, L: Complex, v0: int) -> SimplicialMap:
    if v0 not in L.index:
        raise MalformedInputError(f"base vertex {v0} not in {L.name}")
    return SimplicialMap(K, L, (v0,) * len(K.vertices), name=f"c{L.label(v0)}")


def canonical(name: str, K: Complex, base: int | None = None, codomain: Complex | None = None,
              square: Complex | None = None) -> SimplicialMap:
    """Named maps: identity, constant, diagonal, pr1, pr2, i1, i2.

    Products are built as ``K x K`` unless ``square`` is given.
    """
    if name in ("identity", "id"):
        return identity(K)
    if name in ("constant", "c"):
        if base is None:
            raise MalformedInputError("constant map needs a base vertex")
        return constant(K, codomain if codomain is not None else K, base)
    P = square if square is not None else categorical_product(K, K)
    if name in ("diagonal", "delta"):
        return SimplicialMap(K, P, tuple(pair_vertex(P, v, v) for v in K.vertices), name="diag")
    if name in ("pr1", "pr2"):
        k = 1 if name == "pr1" else 2
        return SimplicialMap(P, K, tuple(o[k - 1] for o in P.origin), name=name)
    if name in ("i1", "i2"):
        if base is None:
            raise MalformedInputError(f"{name} needs a base vertex")
        if base not in K.index:
            raise MalformedInputError(f"base vertex {base} not in {K.name}")
        if name == "i1":
            images = tuple(pair_vertex(P, v, base) for v in K.vertices)
        else:
            images = tuple(pair_vertex(P, base, v) for v in K.vertices)
        return SimplicialMap(K, P, images, name=name)
    raise MalformedInputError(f"unknown canonical map {name!r}")
