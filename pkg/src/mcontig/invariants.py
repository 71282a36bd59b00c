"""Numerical invariants as minimum covers with a per-piece contiguity test.

Every invariant here asks for the fewest subcomplexes covering a complex such
that on each piece, after precomposing with any simplicial map from an
m-dimensional complex, some pair of maps lands in one contiguity class. That
quantifier is decided on the m-skeleton of the piece alone:

* the inclusion of the m-skeleton is itself a map from an m-dimensional
  complex, so the condition on it is necessary;
* any simplicial map from an m-dimensional complex sends each simplex to one of
  dimension <= m, so it factors through the m-skeleton, and a contiguity chain
  on the skeleton composed with that factor is a chain for the original map.

The same argument covers complexes of dimension below m. ``m`` may be any
integer >= 0 or ``math.inf`` (no truncation).

Two exact shortcuts keep the searches small. A piece may be replaced by its
strong core (see :func:`_on_skeleton`), and a chain on the core restricts to
its skeleton, so the core is tested first and the skeleton only when that
fails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .complex import Complex, categorical_product, skeleton, strong_core
from .contiguity import (
    ClassOracle,
    SearchBudget,
    _space,
    connected,
)
from .cover import INFINITY, CoverSolution, minimum_good_cover
from .errors import MalformedInputError
from .maps import (
    SimplicialMap,
    _check_parallel,
    canonical,
    constant,
    identity,
    restrict,
)

INF = math.inf


def _norm_m(m) -> int | float:
    if m is None or m == INF:
        return INF
    if isinstance(m, bool) or not isinstance(m, int) or m < 0:
        raise MalformedInputError(f"m must be a non-negative integer or inf, got {m!r}")
    return m


@dataclass(frozen=True)
class InvariantResult:
    """Value of one invariant with the cover that realises it.

    ``value`` is an int, ``INFINITY``, or ``None`` for unknown. ``alternate``
    carries the second route where two independent routes are computed.
    """

    name: str
    value: int | float | None
    witness: CoverSolution
    m: int | float = INF
    maps: tuple[SimplicialMap, ...] = ()
    alternate: "InvariantResult | None" = None
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def known(self) -> bool:
        return self.value is not None

    def summary(self) -> dict:
        w = self.witness
        out = {
            "name": self.name,
            "m": "inf" if self.m == INF else self.m,
            "value": format_value(self.value),
            "pieces": len(w.pieces),
            "predicate_calls": w.predicate_calls,
        }
        if w.certificate is not None:
            out["certificate"] = list(w.certificate)
        if w.upper_bound is not None:
            out["upper_bound"] = w.upper_bound
        if w.note:
            out["note"] = w.note
        if self.alternate is not None:
            out["alternate"] = self.alternate.summary()
        return out


def format_value(v) -> int | str:
    if v is None:
        return "unknown"
    if v == INFINITY:
        return "inf"
    return int(v)


PROBE_MAPS = 20_000


def _cover(K: Complex, make, budget: SearchBudget) -> CoverSolution:
    """Minimum cover for the predicate ``make(budget)``.

    The first try on the whole complex runs on a small map budget; if that
    is inconclusive the whole complex is left to the main enumeration, which
    only reaches it when all smaller sets are good.
    """
    if budget.max_cover_facets is not None and len(K.facets) > budget.max_cover_facets:
        return CoverSolution(None, note=f"{len(K.facets)} facets exceeds the cover limit {budget.max_cover_facets}")
    probe = None
    if budget.max_maps > PROBE_MAPS:
        probe = make(replace(budget, max_maps=PROBE_MAPS))
    return minimum_good_cover(K, make(budget), budget.max_predicate_calls, probe=probe)


def _on_skeleton(piece: Complex, m, test) -> bool | None:
    """``test`` on skel_m of the strong core of the piece.

    The core is enough: with r the retraction onto the core and i its
    inclusion, i o r ~ id, so any test map into the piece is in the class of
    one into the core. A chain on a complex restricts to its skeleton, so the
    core itself is tried first.
    """
    core = strong_core(piece)
    first = test(core)
    if first is True or m >= core.dim:
        return first
    return test(skeleton(core, m))


def _class_test(f: SimplicialMap, g: SimplicialMap, m):
    def make(budget: SearchBudget):
        def good(piece: Complex) -> bool | None:
            return _on_skeleton(piece, m, lambda D: connected(restrict(f, D), restrict(g, D), budget))

        return good

    return make


def _result(name, solution, m, maps=(), **kw) -> InvariantResult:
    return InvariantResult(name, solution.value, solution, m, tuple(maps), **kw)


def sd_m(f: SimplicialMap, g: SimplicialMap, m=INF, budget: SearchBudget | None = None) -> InvariantResult:
    """m-contiguity distance of two parallel maps (contiguity distance for m = inf)."""
    _check_parallel(f, g)
    m = _norm_m(m)
    budget = budget or SearchBudget()
    sol = _cover(f.domain, _class_test(f, g, m), budget)
    return _result("sd", sol, m, (f, g))


def _base(K: Complex, base: int | None) -> int:
    if base is None:
        return K.vertices[0]
    if base not in K.index:
        raise MalformedInputError(f"base vertex {base} not in {K.name}")
    return base


def scat_m(K: Complex, m=INF, base: int | None = None, budget: SearchBudget | None = None,
           route: str = "direct") -> InvariantResult:
    """m-simplicial LS category of K.

    ``route="direct"`` tests each piece by comparing its inclusion with the
    constant map at ``base``; ``route="sd"`` computes sd_m(id, constant).
    """
    m = _norm_m(m)
    budget = budget or SearchBudget()
    v0 = _base(K, base)
    if route == "sd":
        r = sd_m(identity(K), constant(K, K, v0), m, budget)
        return _result("scat", r.witness, m, r.maps, extra={"route": "sd", "base": v0})
    if route != "direct":
        raise MalformedInputError(f"unknown route {route!r}")
    idK = identity(K)

    def make(budget):
        def categorical(piece: Complex) -> bool | None:
            return _on_skeleton(piece, m, lambda D: connected(restrict(idK, D), constant(D, K, v0), budget))

        return categorical

    return _result("scat", _cover(K, make, budget), m, extra={"route": "direct", "base": v0})


def scat_m_of_map(f: SimplicialMap, m=INF, base: int | None = None,
                  budget: SearchBudget | None = None) -> InvariantResult:
    """m-simplicial LS category of a map: pieces where f is in the class of a constant."""
    m = _norm_m(m)
    budget = budget or SearchBudget()
    L = f.codomain
    v0 = _base(L, base)

    def make(budget):
        def good(piece: Complex) -> bool | None:
            return _on_skeleton(piece, m, lambda D: connected(restrict(f, D), constant(D, L, v0), budget))

        return good

    return _result("scat-map", _cover(f.domain, make, budget), m, (f,), extra={"base": v0})


def _search_sections(domain: Complex, targets: list[SimplicialMap], source: Complex, post, budget: SearchBudget,
                     allowed=None) -> bool | None:
    """Is there s: domain -> source with post(s) in the class of some target?

    ``post`` maps source positions of s to the positions of the composite map.
    Targets share the vertex order of ``domain`` (restrictions to the domain's
    skeleta do). Each s is tried against the targets in order. With
    ``targets`` empty, any map meeting the image restrictions ``allowed`` is
    a section (strict mode).
    """
    space = _space(domain, source)
    oracles = [ClassOracle(t, budget) for t in targets]
    unknown = False
    count = 0
    for s in space.homs(allowed):
        count += 1
        if count > budget.max_maps:
            return None
        if not oracles:
            return True
        image = post(s)
        for oracle in oracles:
            r = oracle.same_positions(image)
            if r is True:
                return True
            if r is None:
                unknown = True
    return None if unknown else False


def _tc_farber(K: Complex, P: Complex, m, budget: SearchBudget) -> CoverSolution:
    n = len(K.vertices)
    idP = identity(P)

    def make(budget):
        def farber(piece: Complex) -> bool | None:
            # sigma on the core extends over the piece through the retraction,
            # so searching Hom(core, K) is enough. The skeleton has the core's
            # vertices in the same order, so sigma restricts position for
            # position; each sigma is tried on the whole core first.
            core = strong_core(piece)
            targets = [restrict(idP, core)]
            if m < core.dim:
                targets.append(restrict(idP, skeleton(core, m)))
            return _search_sections(core, targets, K, lambda s: tuple(p * n + p for p in s), budget)

        return farber

    return _cover(P, make, budget)


def tc_m(K: Complex, m=INF, budget: SearchBudget | None = None, routes: tuple[str, ...] = ("sd", "farber")
         ) -> InvariantResult:
    """m-discrete topological complexity.

    Route "sd" computes sd_m(pr1, pr2) on K x K. Route "farber" covers K x K
    by pieces admitting sigma: piece -> K with diag o sigma in the class of the
    inclusion on the m-skeleton, found by searching Hom(piece, K). With both
    routes the result holds the first and ``alternate`` the second.
    """
    m = _norm_m(m)
    budget = budget or SearchBudget()
    P = categorical_product(K, K)
    results = []
    for route in routes:
        if route == "sd":
            pr1 = canonical("pr1", K, square=P)
            pr2 = canonical("pr2", K, square=P)
            r = sd_m(pr1, pr2, m, budget)
            results.append(_result("tc", r.witness, m, r.maps, extra={"route": "sd"}))
        elif route == "farber":
            results.append(_result("tc", _tc_farber(K, P, m, budget), m, extra={"route": "farber"}))
        else:
            raise MalformedInputError(f"unknown route {route!r}")
    first = results[0]
    if len(results) > 1:
        first = InvariantResult(first.name, first.value, first.witness, m, first.maps, results[1], first.extra)
    return first


def secat_m(f: SimplicialMap, m=INF, budget: SearchBudget | None = None, homotopy: bool = False
            ) -> InvariantResult:
    """m-dimensional simplicial Svarc genus of f: K -> L (homotopy variant with ``homotopy=True``).

    A piece L_j of L is good when some s: skel_m(L_j) -> K has f o s equal to
    the inclusion (strict) or in its contiguity class (homotopy). Any map
    from an m-dimensional complex into L_j factors through the skeleton, so a
    single s serves all of them. Only the homotopy variant may pass to the
    strong core of the piece; the strict one is not invariant under it.
    """
    m = _norm_m(m)
    budget = budget or SearchBudget()
    K, L = f.domain, f.codomain
    idL = identity(L)
    fpos = f.positions

    def make(budget):
        def good(piece: Complex) -> bool | None:
            if homotopy:
                def test(D: Complex) -> bool | None:
                    return _search_sections(D, [restrict(idL, D)], K, lambda s: tuple(fpos[p] for p in s), budget)

                return _on_skeleton(piece, m, test)
            skel = skeleton(piece, m)
            allowed = []
            for v in skel.vertices:
                want = L.index[v]
                allowed.append(sum(1 << p for p in range(len(K.vertices)) if fpos[p] == want))
            if not all(allowed):
                return False
            return _search_sections(skel, [], K, None, budget, allowed=allowed)

        return good

    name = "hsecat" if homotopy else "secat"
    return _result(name, _cover(L, make, budget), m, (f,))


def hsecat_m(f: SimplicialMap, m=INF, budget: SearchBudget | None = None) -> InvariantResult:
    return secat_m(f, m, budget, homotopy=True)
