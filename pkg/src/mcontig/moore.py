"""Moore paths: eventually constant simplicial maps from the integer line.

A path is stored by its support [lo, hi] and the values on it; outside the
support it is constant. Paths from :meth:`MoorePath.make` are tight (the
value changes right after ``lo`` and right before ``hi``) and a constant path
sits on [0, 0]. The raw constructor keeps whatever support it is given, and
the operations use the stored support as is; :func:`tighten` canonicalizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .complex import Complex
from .errors import MalformedInputError


@dataclass(frozen=True)
class MoorePath:
    target: Complex
    start: int
    values: tuple[int, ...]

    def __post_init__(self):
        if not self.values:
            raise MalformedInputError("a Moore path needs at least one value")
        K = self.target
        for v in self.values:
            if v not in K.index:
                raise MalformedInputError(f"vertex {v} not in {K.name}")
        for a, b in zip(self.values, self.values[1:]):
            if a != b and not K.has_simplex((a, b)):
                raise MalformedInputError(f"{K.label(a)} and {K.label(b)} do not span an edge of {K.name}")

    @classmethod
    def make(cls, target: Complex, values: Sequence[int], start: int = 0) -> "MoorePath":
        """Path through ``values`` starting at index ``start``, tightened."""
        return tighten(cls(target, start, tuple(values)))

    @classmethod
    def constant(cls, target: Complex, v: int) -> "MoorePath":
        return cls(target, 0, (v,))

    @property
    def lo(self) -> int:
        return self.start

    @property
    def hi(self) -> int:
        return self.start + len(self.values) - 1

    @property
    def support(self) -> tuple[int, int]:
        return self.lo, self.hi

    @property
    def length(self) -> int:
        return self.hi - self.lo

    @property
    def is_constant(self) -> bool:
        return all(v == self.values[0] for v in self.values)

    @property
    def is_tight(self) -> bool:
        if self.is_constant:
            return self.support == (0, 0)
        return self.values[0] != self.values[1] and self.values[-1] != self.values[-2]

    def __call__(self, i: int) -> int:
        if i <= self.lo:
            return self.values[0]
        if i >= self.hi:
            return self.values[-1]
        return self.values[i - self.lo]

    def endpoints(self) -> tuple[int, int]:
        return self.values[0], self.values[-1]

    def __repr__(self) -> str:
        seq = " ".join(self.target.label(v) for v in self.values)
        return f"MoorePath({self.target.name} [{self.lo},{self.hi}]: {seq})"


def tighten(p: MoorePath) -> MoorePath:
    """Drop repeated values at both ends; a constant path moves to [0, 0]."""
    vals = p.values
    if p.is_constant:
        return MoorePath(p.target, 0, vals[:1])
    i = 0
    while vals[i + 1] == vals[0]:
        i += 1
    j = len(vals) - 1
    while vals[j - 1] == vals[-1]:
        j -= 1
    return MoorePath(p.target, p.start + i, vals[i:j + 1])


def endpoints(p: MoorePath) -> tuple[int, int]:
    return p.endpoints()


def reverse(p: MoorePath) -> MoorePath:
    """i -> p(-i), on [-hi, -lo]."""
    return MoorePath(p.target, -p.hi, tuple(reversed(p.values)))


def normalize(p: MoorePath) -> MoorePath:
    """Translate the support to start at 0."""
    return MoorePath(p.target, 0, p.values)


def product(p: MoorePath, q: MoorePath) -> MoorePath:
    """Concatenation p * q, defined when p ends where q starts.

    (p * q)(i) is p(i - q.lo) up to i = p.hi + q.lo and q(i - p.hi) from there
    on; the support is [p.lo + q.lo, p.hi + q.hi].
    """
    if p.target != q.target:
        raise MalformedInputError("paths live in different complexes")
    if p.values[-1] != q.values[0]:
        raise MalformedInputError("the first path does not end where the second starts")
    lo = p.lo + q.lo
    hi = p.hi + q.hi
    mid = p.hi + q.lo
    vals = [p(i - q.lo) for i in range(lo, mid + 1)]
    vals += [q(i - p.hi) for i in range(mid + 1, hi + 1)]
    return MoorePath(p.target, lo, tuple(vals))


def paths_form_simplex(paths: Iterable[MoorePath], window: tuple[int, int]) -> bool:
    """Do the paths span a simplex of the path complex?

    At every index i the values of all paths at i and i + 1 must together
    form a simplex. Outside a window holding every support the paths are
    constant, so checking i from ``window[0] - 1`` to ``window[1]`` settles
    all integers.
    """
    paths = list(paths)
    if not paths:
        raise MalformedInputError("need at least one path")
    K = paths[0].target
    a, b = window
    if a > b:
        raise MalformedInputError(f"empty window {window}")
    for p in paths:
        if p.target != K:
            raise MalformedInputError("paths live in different complexes")
        if p.lo < a or p.hi > b:
            raise MalformedInputError(f"window {window} does not contain the support {p.support}")
    for i in range(a - 1, b + 1):
        cell = {p(i) for p in paths} | {p(i + 1) for p in paths}
        if not K.has_simplex(cell):
            return False
    return True
