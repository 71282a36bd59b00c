"""Mechanical checks of the inequalities and equalities between the invariants.

Each check runs over a corpus for every m in a list and records pass, fail or
skip. A skip means some value it needs came back unknown (budget). A failure
carries the maps involved in text form, so it can be replayed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .complex import Complex, categorical_product
from .contiguity import SearchBudget
from .corpus import Corpus, random_map
from .invariants import (
    INF,
    InvariantResult,
    format_value,
    hsecat_m,
    scat_m,
    scat_m_of_map,
    sd_m,
    secat_m,
    tc_m,
)
from .io import format_complex, format_map
from .maps import SimplicialMap, canonical, compose, constant, identity, product_map, sd_map

DEFAULT_MS = (0, 1, 2, INF)

Tamper = Callable[[str, tuple, InvariantResult], InvariantResult]


@dataclass
class Check:
    theorem: str
    subject: str
    m: int | float
    status: str
    detail: str = ""
    reproducer: str = ""

    def record(self) -> dict:
        out = {"theorem": self.theorem, "subject": self.subject, "m": format_value(self.m), "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        if self.reproducer:
            out["reproducer"] = self.reproducer
        return out


class Evaluator:
    """Memoised invariant values for one run.

    ``tamper`` sees every freshly computed result and may replace it; it is
    the fault-injection hook used to test that violations are caught.
    """

    def __init__(self, budget: SearchBudget | None = None, tamper: Tamper | None = None):
        self.budget = budget or SearchBudget()
        self.tamper = tamper
        self._memo: dict[tuple, InvariantResult] = {}

    def _get(self, key: tuple, compute) -> InvariantResult:
        r = self._memo.get(key)
        if r is None:
            r = compute()
            if self.tamper is not None:
                r = self.tamper(key[0], key[1:], r)
            self._memo[key] = r
        return r

    def sd(self, f, g, m):
        return self._get(("sd", f, g, m), lambda: sd_m(f, g, m, self.budget)).value

    def scat(self, K, m, route="direct"):
        return self._get(("scat", K, m, route), lambda: scat_m(K, m, budget=self.budget, route=route)).value

    def scat_map(self, f, m):
        return self._get(("scat-map", f, m), lambda: scat_m_of_map(f, m, budget=self.budget)).value

    def tc(self, K, m, route="sd"):
        return self._get(("tc", K, m, route), lambda: tc_m(K, m, self.budget, routes=(route,))).value

    def secat(self, f, m):
        return self._get(("secat", f, m), lambda: secat_m(f, m, self.budget)).value

    def hsecat(self, f, m):
        return self._get(("hsecat", f, m), lambda: hsecat_m(f, m, self.budget)).value


def _known(*values) -> bool:
    return all(v is not None for v in values)


def _le(a, b) -> bool:
    return a <= b


def _fmt(*pairs) -> str:
    return ", ".join(f"{k}={format_value(v)}" for k, v in pairs)


def _maps_text(*maps: SimplicialMap) -> str:
    seen: list[Complex] = []
    for f in maps:
        for K in (f.domain, f.codomain):
            if K not in seen:
                seen.append(K)
    return "\n".join([format_complex(K) for K in seen] + [format_map(f) for f in maps])


def _compare(theorem, subject, m, ok: bool | None, detail, maps=()) -> Check:
    if ok is None:
        return Check(theorem, subject, m, "skip", detail)
    if ok:
        return Check(theorem, subject, m, "pass", detail)
    return Check(theorem, subject, m, "fail", detail, _maps_text(*maps) if maps else "")


def _rel(a, b, op) -> bool | None:
    if not _known(a, b):
        return None
    return op(a, b)


@dataclass
class Theorem:
    id: str
    statement: str
    run: Callable[["Context"], Iterator[Check]]


@dataclass
class Context:
    corpus: Corpus
    ev: Evaluator
    ms: tuple
    max_product_facets: int = 9
    _aux: dict = field(default_factory=dict)

    def precomposer(self, pair) -> SimplicialMap:
        """A seeded map alpha: J -> domain, J drawn from the corpus."""
        key = ("alpha", pair.name)
        if key not in self._aux:
            rng = self.corpus.rng(f"alpha:{pair.name}")
            K = pair.f.domain
            pool = self.corpus.complexes or [K]
            J = pool[rng.randrange(len(pool))]
            self._aux[key] = random_map(J, K, rng, self.ev.budget)
        return self._aux[key]

    def postcomposer(self, pair) -> SimplicialMap:
        """A seeded map beta: codomain -> M, M drawn from the corpus."""
        key = ("beta", pair.name)
        if key not in self._aux:
            rng = self.corpus.rng(f"beta:{pair.name}")
            L = pair.f.codomain
            pool = self.corpus.complexes or [L]
            M = pool[rng.randrange(len(pool))]
            self._aux[key] = random_map(L, M, rng, self.ev.budget)
        return self._aux[key]

    def product_instances(self) -> list[tuple]:
        """Pairs of pairs whose product domain has at most ``max_product_facets`` facets."""
        key = ("products",)
        if key not in self._aux:
            cands = []
            pairs = self.corpus.pairs
            for i, p in enumerate(pairs):
                for q in pairs[i:]:
                    if len(p.f.domain.facets) * len(q.f.domain.facets) <= self.max_product_facets:
                        if len(p.f.codomain.vertices) * len(q.f.codomain.vertices) <= 25:
                            cands.append((p, q))
            rng = self.corpus.rng("products")
            rng.shuffle(cands)
            self._aux[key] = sorted(cands[:6], key=lambda pq: (pq[0].name, pq[1].name))
        return self._aux[key]


def _pairs_m(ctx: Context):
    for pair in ctx.corpus.pairs:
        for m in ctx.ms:
            yield pair, m


def _precompose(ctx: Context):
    ev = ctx.ev
    for pair, m in _pairs_m(ctx):
        a = ctx.precomposer(pair)
        fa, ga = compose(pair.f, a), compose(pair.g, a)
        lhs, rhs = ev.sd(fa, ga, m), ev.sd(pair.f, pair.g, m)
        yield _compare("precompose", f"{pair.name} o {a.domain.name}", m, _rel(lhs, rhs, _le),
                       _fmt(("sd(f.a,g.a)", lhs), ("sd(f,g)", rhs)), (pair.f, pair.g, a))


def _postcompose(ctx: Context):
    ev = ctx.ev
    for pair, m in _pairs_m(ctx):
        b = ctx.postcomposer(pair)
        bf, bg = compose(b, pair.f), compose(b, pair.g)
        lhs, rhs = ev.sd(bf, bg, m), ev.sd(pair.f, pair.g, m)
        yield _compare("postcompose", f"{b.codomain.name} o {pair.name}", m, _rel(lhs, rhs, _le),
                       _fmt(("sd(b.f,b.g)", lhs), ("sd(f,g)", rhs)), (pair.f, pair.g, b))


def _below_sd(ctx: Context):
    ev = ctx.ev
    for pair, m in _pairs_m(ctx):
        lhs, rhs = ev.sd(pair.f, pair.g, m), ev.sd(pair.f, pair.g, INF)
        yield _compare("sd-m-le-sd", pair.name, m, _rel(lhs, rhs, _le),
                       _fmt(("sd_m", lhs), ("sd", rhs)), (pair.f, pair.g))


def _monotone(ctx: Context):
    ev = ctx.ev
    ms = sorted(ctx.ms)
    for pair in ctx.corpus.pairs:
        for n, m in zip(ms, ms[1:]):
            lhs, rhs = ev.sd(pair.f, pair.g, n), ev.sd(pair.f, pair.g, m)
            yield _compare("monotone-in-m", f"{pair.name} n={format_value(n)}", m, _rel(lhs, rhs, _le),
                           _fmt(("sd_n", lhs), ("sd_m", rhs)), (pair.f, pair.g))


def _le_scat(ctx: Context):
    ev = ctx.ev
    for pair, m in _pairs_m(ctx):
        lhs, rhs = ev.sd(pair.f, pair.g, m), ev.scat(pair.f.domain, m)
        yield _compare("sd-le-scat", pair.name, m, _rel(lhs, rhs, _le),
                       _fmt(("sd_m(f,g)", lhs), ("scat_m(K)", rhs)), (pair.f, pair.g))


def _inclusions(ctx: Context):
    ev = ctx.ev
    for K in ctx.corpus.complexes:
        v0 = K.vertices[0]
        P = categorical_product(K, K)
        i1 = canonical("i1", K, base=v0, square=P)
        i2 = canonical("i2", K, base=v0, square=P)
        for m in ctx.ms:
            lhs, rhs = ev.sd(i1, i2, m), ev.scat(K, m)
            yield _compare("inclusions-eq-scat", K.name, m, _rel(lhs, rhs, lambda a, b: a == b),
                           _fmt(("sd_m(i1,i2)", lhs), ("scat_m", rhs)), (i1, i2))


def _scat_as_sd(ctx: Context):
    ev = ctx.ev
    for K in ctx.corpus.complexes:
        idK, c = identity(K), constant(K, K, K.vertices[0])
        for m in ctx.ms:
            direct, via_sd = ev.scat(K, m), ev.sd(idK, c, m)
            yield _compare("scat-eq-sd-id-const", K.name, m, _rel(direct, via_sd, lambda a, b: a == b),
                           _fmt(("scat_m", direct), ("sd_m(id,c)", via_sd)), (idK, c))


def _scat_of_maps(ctx: Context):
    ev = ctx.ev
    for pair, m in _pairs_m(ctx):
        f = pair.f
        c = constant(f.domain, f.codomain, f.codomain.vertices[0])
        lhs, rhs = ev.scat_map(f, m), ev.sd(f, c, m)
        yield _compare("scat-map-eq-sd-const", f"{pair.name}:f", m, _rel(lhs, rhs, lambda a, b: a == b),
                       _fmt(("scat_m(f)", lhs), ("sd_m(f,c)", rhs)), (f, c))


def _subdivision(ctx: Context):
    ev = ctx.ev
    for pair, m in _pairs_m(ctx):
        sf, sg = sd_map(pair.f), sd_map(pair.g)
        lhs, rhs = ev.sd(sf, sg, m), ev.sd(pair.f, pair.g, m)
        yield _compare("subdivision", pair.name, m, _rel(lhs, rhs, _le),
                       _fmt(("sd_m(sd f,sd g)", lhs), ("sd_m(f,g)", rhs)), (pair.f, pair.g))


def _product(ctx: Context):
    ev = ctx.ev
    for p, q in ctx.product_instances():
        ff, gg = product_map(p.f, q.f), product_map(p.g, q.g)
        for m in ctx.ms:
            lhs = ev.sd(ff, gg, m)
            a, b = ev.sd(p.f, p.g, m), ev.sd(q.f, q.g, m)
            ok = None if not _known(lhs, a, b) else lhs + 1 <= (a + 1) * (b + 1)
            yield _compare("product", f"{p.name} x {q.name}", m, ok,
                           _fmt(("sd_m(fxf',gxg')", lhs), ("sd_m(f,g)", a), ("sd_m(f',g')", b)),
                           (p.f, p.g, q.f, q.g))


def _secat_maps(ctx: Context) -> list[tuple[str, SimplicialMap]]:
    out = [(f"{p.name}:f", p.f) for p in ctx.corpus.pairs]
    for K in ctx.corpus.complexes:
        out.append((f"diag {K.name}", canonical("diagonal", K)))
    return out


def _hsecat_le_secat(ctx: Context):
    ev = ctx.ev
    for name, f in _secat_maps(ctx):
        for m in ctx.ms:
            lhs, rhs = ev.hsecat(f, m), ev.secat(f, m)
            yield _compare("hsecat-le-secat", name, m, _rel(lhs, rhs, _le),
                           _fmt(("hsecat_m", lhs), ("secat_m", rhs)), (f,))


def _tc_routes(ctx: Context):
    ev = ctx.ev
    for K in ctx.corpus.complexes:
        for m in ctx.ms:
            a, b = ev.tc(K, m, "sd"), ev.tc(K, m, "farber")
            yield _compare("tc-dual-route", K.name, m, _rel(a, b, lambda x, y: x == y),
                           _fmt(("sd_m(pr1,pr2)", a), ("farber cover", b)))


def _tc_le_tc(ctx: Context):
    ev = ctx.ev
    for K in ctx.corpus.complexes:
        for m in ctx.ms:
            lhs, rhs = ev.tc(K, m), ev.tc(K, INF)
            yield _compare("tc-m-le-tc", K.name, m, _rel(lhs, rhs, _le), _fmt(("tc_m", lhs), ("tc", rhs)))


def _sandwich(ctx: Context):
    ev = ctx.ev
    for K in ctx.corpus.complexes:
        P = categorical_product(K, K)
        for m in ctx.ms:
            lo, mid, hi = ev.scat(K, m), ev.tc(K, m), ev.scat(P, m)
            ok = None if not _known(lo, mid, hi) else lo <= mid <= hi
            yield _compare("tc-sandwich", K.name, m, ok, _fmt(("scat_m(K)", lo), ("tc_m", mid), ("scat_m(KxK)", hi)))


def _tc_hsecat(ctx: Context):
    ev = ctx.ev
    for K in ctx.corpus.complexes:
        diag = canonical("diagonal", K)
        for m in ctx.ms:
            lhs, rhs = ev.tc(K, m), ev.hsecat(diag, m)
            yield _compare("tc-eq-hsecat-diag", K.name, m, _rel(lhs, rhs, lambda a, b: a == b),
                           _fmt(("tc_m", lhs), ("hsecat_m(diag)", rhs)), (diag,))


def _stability(ctx: Context):
    ev = ctx.ev
    for pair in ctx.corpus.pairs:
        d = pair.f.domain.dim
        for m in (d, d + 1):
            lhs, rhs = ev.sd(pair.f, pair.g, m), ev.sd(pair.f, pair.g, INF)
            yield _compare("stability", pair.name, m, _rel(lhs, rhs, lambda a, b: a == b),
                           _fmt(("sd_m", lhs), ("sd", rhs)), (pair.f, pair.g))


def _scat_routes(ctx: Context):
    ev = ctx.ev
    for K in ctx.corpus.complexes:
        for m in ctx.ms:
            a, b = ev.scat(K, m), ev.scat(K, m, route="sd")
            yield _compare("scat-routes", K.name, m, _rel(a, b, lambda x, y: x == y),
                           _fmt(("direct", a), ("via sd", b)))


THEOREMS: list[Theorem] = [
    Theorem("precompose", "sd_m(f.a, g.a) <= sd_m(f, g)", _precompose),
    Theorem("postcompose", "sd_m(b.f, b.g) <= sd_m(f, g)", _postcompose),
    Theorem("sd-m-le-sd", "sd_m(f, g) <= sd(f, g)", _below_sd),
    Theorem("monotone-in-m", "n <= m implies sd_n(f, g) <= sd_m(f, g)", _monotone),
    Theorem("sd-le-scat", "sd_m(f, g) <= scat_m(K)", _le_scat),
    Theorem("inclusions-eq-scat", "sd_m(i1, i2) = scat_m(K)", _inclusions),
    Theorem("scat-eq-sd-id-const", "scat_m(K) = sd_m(id, c)", _scat_as_sd),
    Theorem("scat-routes", "scat_m(K) by pieces = scat_m(K) via sd_m(id, c)", _scat_routes),
    Theorem("scat-map-eq-sd-const", "scat_m(f) = sd_m(f, c)", _scat_of_maps),
    Theorem("subdivision", "sd_m(sd f, sd g) <= sd_m(f, g)", _subdivision),
    Theorem("product", "sd_m(fxf', gxg') + 1 <= (sd_m(f, g) + 1)(sd_m(f', g') + 1)", _product),
    Theorem("hsecat-le-secat", "hsecat_m(f) <= secat_m(f)", _hsecat_le_secat),
    Theorem("tc-dual-route", "tc_m(K) = sd_m(pr1, pr2) = Farber cover number", _tc_routes),
    Theorem("tc-m-le-tc", "tc_m(K) <= tc(K)", _tc_le_tc),
    Theorem("tc-sandwich", "scat_m(K) <= tc_m(K) <= scat_m(KxK)", _sandwich),
    Theorem("tc-eq-hsecat-diag", "tc_m(K) = hsecat_m(diagonal)", _tc_hsecat),
    Theorem("stability", "sd_m(f, g) = sd(f, g) for m >= dim K", _stability),
]

THEOREM_IDS = [t.id for t in THEOREMS]


@dataclass
class VerifyResult:
    checks: list[Check]
    theorems: list[Theorem]

    def counts(self) -> dict[str, dict[str, int]]:
        out = {t.id: {"pass": 0, "fail": 0, "skip": 0} for t in self.theorems}
        for c in self.checks:
            out[c.theorem][c.status] += 1
        return out

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures


def select(suite: Iterable[str] | None) -> list[Theorem]:
    if suite is None:
        return list(THEOREMS)
    wanted = list(suite)
    unknown = [s for s in wanted if s not in THEOREM_IDS]
    if unknown:
        raise ValueError(f"unknown theorem ids: {', '.join(unknown)}")
    return [t for t in THEOREMS if t.id in wanted]


def run_suite(corpus: Corpus, suite: Iterable[str] | None = None, ms: Iterable = DEFAULT_MS,
              budget: SearchBudget | None = None, tamper: Tamper | None = None,
              max_product_facets: int = 9, progress: Callable[[str], None] | None = None) -> VerifyResult:
    """Run the selected checks over the corpus, in the fixed theorem order."""
    theorems = select(suite)
    ms = tuple(sorted(set(INF if m is None or m == math.inf else int(m) for m in ms)))
    ctx = Context(corpus, Evaluator(budget, tamper), ms, max_product_facets)
    checks: list[Check] = []
    for t in theorems:
        if progress:
            progress(t.id)
        checks.extend(t.run(ctx))
    return VerifyResult(checks, theorems)
