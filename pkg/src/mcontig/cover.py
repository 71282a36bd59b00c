"""Minimum covers of a complex by subcomplexes satisfying a monotone predicate.

A predicate takes a subcomplex and answers True (good), False (bad) or None
(unknown, e.g. a search ran out of budget). It must be monotone: subcomplexes
of good subcomplexes are good.

Only pieces generated by sets of facets are considered. That loses nothing:
given any cover by good subcomplexes, replace each piece by the subcomplex
generated by the facets of K it contains. Every facet of K lies in some piece,
so the new pieces still cover, and each is a subcomplex of the old one, so
still good.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .complex import Complex, SubcomplexRef, _from_masks, _popcount
from .errors import MalformedInputError

INFINITY = math.inf

Predicate = Callable[[Complex], "bool | None"]


@dataclass(frozen=True)
class CoverSolution:
    """Result of :func:`minimum_good_cover`.

    ``value`` is the number of pieces minus one, ``INFINITY`` when some facet
    is bad on its own, or ``None`` when a needed predicate call was unknown.
    """

    value: int | float | None
    pieces: tuple[SubcomplexRef, ...] = ()
    certificate: tuple[int, ...] | None = None
    predicate_calls: int = 0
    upper_bound: int | None = None
    note: str = ""

    @property
    def finite(self) -> bool:
        return self.value is not None and self.value != INFINITY


@dataclass
class _Memo:
    """Predicate answers keyed by facet bitmask, with monotone inference."""

    K: Complex
    predicate: Predicate
    max_calls: int | None = None
    answers: dict[int, bool | None] = field(default_factory=dict)
    good: list[int] = field(default_factory=list)
    bad: list[int] = field(default_factory=list)
    seeded: list[int] = field(default_factory=list)
    calls: int = 0

    def complex_of(self, mask: int) -> Complex:
        fm = self.K.facet_masks
        masks = [fm[j] for j in range(len(fm)) if mask >> j & 1]
        return _from_masks(self.K, masks, name=f"{self.K.name}|piece")

    def record(self, mask: int, r: bool) -> None:
        self.answers[mask] = r
        (self.good if r else self.bad).append(mask)
        if r:
            self.seeded.append(mask)

    def __call__(self, mask: int, infer: bool = True) -> bool | None:
        if mask in self.answers:
            return self.answers[mask]
        if infer and any(b & ~mask == 0 for b in self.bad):
            r = False
        elif any(mask & ~g == 0 for g in (self.good if infer else self.seeded)):
            r = True
        else:
            if self.max_calls is not None and self.calls >= self.max_calls:
                raise _OutOfCalls
            self.calls += 1
            r = self.predicate(self.complex_of(mask))
            if r is True:
                self.good.append(mask)
            elif r is False:
                self.bad.append(mask)
        self.answers[mask] = r
        return r


class _OutOfCalls(Exception):
    pass


def _maximal_good_sets(memo: _Memo, n: int) -> tuple[list[int], bool]:
    """All maximal good facet sets; second value is True if some call was unknown.

    Sets are grown level by level. A (k+1)-set is only evaluated when all of
    its k-subsets are good, which monotonicity requires of any good set; so
    the predicate runs on good sets and on minimal bad ones only, and large
    bad sets (the expensive ones to refute) are never asked about.
    """
    level = [1 << j for j in range(n) if memo(1 << j)]
    unknown = any(memo(1 << j) is None for j in range(n))
    maximal: list[int] = []
    while level:
        known = set(level)
        grown: set[int] = set()
        nxt: list[int] = []
        for i, a in enumerate(level):
            top = a.bit_length() - 1
            for j in range(top + 1, n):
                cand = a | (1 << j)
                if cand in grown:
                    continue
                # every subset missing one element must be good
                if any(cand & ~(1 << e) not in known for e in _elements(cand) if e != j):
                    continue
                grown.add(cand)
                # all proper subsets are good, so only recorded supersets can decide
                r = memo(cand, infer=False)
                if r is None:
                    unknown = True
                elif r:
                    nxt.append(cand)
        bigger = set(nxt)
        for a in level:
            if not any(a | (1 << j) in bigger for j in range(n) if not a >> j & 1):
                maximal.append(a)
        level = sorted(nxt)
    return sorted(maximal), unknown


def _elements(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _greedy_cover(universe: int, sets: list[int]) -> list[int]:
    chosen = []
    left = universe
    while left:
        best = max(sets, key=lambda s: (_popcount(s & left), -sets.index(s)))
        if not best & left:
            raise MalformedInputError("sets do not cover the universe")
        chosen.append(best)
        left &= ~best
    return chosen


def exact_set_cover(universe: int, sets: list[int]) -> list[int]:
    """Smallest family of ``sets`` whose union is ``universe`` (branch and bound).

    The greedy cover is the starting bound; each node branches on the
    uncovered element with the fewest covering sets.
    """
    if universe == 0:
        return []
    sets = sorted(set(s & universe for s in sets if s & universe), key=lambda s: (-_popcount(s), s))
    best = _greedy_cover(universe, sets)
    elements = [e for e in range(universe.bit_length()) if universe >> e & 1]
    containing = {e: [s for s in sets if s >> e & 1] for e in elements}
    biggest = max(_popcount(s) for s in sets)

    def search(left: int, chosen: list[int]):
        nonlocal best
        if not left:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        lower = -(-_popcount(left) // biggest)
        if len(chosen) + lower >= len(best):
            return
        e = min((e for e in elements if left >> e & 1), key=lambda e: (len(containing[e]), e))
        for s in containing[e]:
            chosen.append(s)
            search(left & ~s, chosen)
            chosen.pop()

    search(universe, [])
    return best


def _ref(K: Complex, mask: int) -> SubcomplexRef:
    return SubcomplexRef(K, tuple(K.facets[j] for j in range(len(K.facets)) if mask >> j & 1))


def minimum_good_cover(K: Complex, predicate: Predicate, max_calls: int | None = None,
                       probe: Predicate | None = None) -> CoverSolution:
    """Fewest good subcomplexes covering K.

    Steps: the whole complex is tried first; then every single facet (a bad one
    makes the answer infinite); then maximal good facet sets are grown with
    memoised, monotone-inferred predicate calls; finally an exact set cover
    over those sets.

    ``probe`` is an optional cheaper version of the predicate (say, the same
    test on a small budget) used for the first try on the whole complex; its
    True and False answers must be exact, and None defers the whole complex
    to the main enumeration.
    """
    n = len(K.facets)
    full = (1 << n) - 1
    memo = _Memo(K, predicate, max_calls)
    try:
        if probe is not None:
            whole = probe(memo.complex_of(full))
            memo.calls += 1
            if whole is not None:
                memo.record(full, whole)
        else:
            whole = memo(full)
        if whole is True:
            return CoverSolution(0, (_ref(K, full),), predicate_calls=memo.calls)
        unknown_single = False
        for j in range(n):
            r = memo(1 << j)
            if r is False:
                return CoverSolution(INFINITY, certificate=K.facets[j], predicate_calls=memo.calls)
            if r is None:
                unknown_single = True
        if unknown_single:
            return CoverSolution(None, predicate_calls=memo.calls, note="a single facet was undecided")
        maximal, unknown = _maximal_good_sets(memo, n)
    except _OutOfCalls:
        return CoverSolution(None, predicate_calls=memo.calls, note=f"stopped after {memo.calls} predicate calls")
    cover = exact_set_cover(full, maximal)
    cover.sort(key=lambda m: tuple(j for j in range(n) if m >> j & 1))
    pieces = tuple(_ref(K, m) for m in cover)
    if unknown:
        return CoverSolution(None, predicate_calls=memo.calls, upper_bound=len(cover) - 1,
                             note="some predicate calls were undecided")
    return CoverSolution(len(cover) - 1, pieces, predicate_calls=memo.calls)


def brute_force_cover(K: Complex, predicate: Predicate) -> int | float:
    """Minimum over covers by arbitrary subcomplexes, by exhaustion. Tiny inputs only."""
    from itertools import combinations

    from .complex import iter_subcomplexes

    cells = K.simplices()
    universe = (1 << len(cells)) - 1
    pos = {s: i for i, s in enumerate(cells)}
    good_sets = []
    for sub in iter_subcomplexes(K):
        r = predicate(sub)
        if r is None:
            raise MalformedInputError("oracle predicate must be decided")
        if r:
            good_sets.append(sum(1 << pos[s] for s in sub.simplices()))
    good_sets = [g for g in set(good_sets) if not any(g != h and g & ~h == 0 for h in good_sets)]
    for k in range(1, len(cells) + 1):
        for combo in combinations(good_sets, k):
            acc = 0
            for g in combo:
                acc |= g
            if acc == universe:
                return k - 1
    return INFINITY
