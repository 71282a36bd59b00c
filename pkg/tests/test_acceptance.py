"""Acceptance checks; each test prints one pass/fail line for its criterion."""

import json
import random
import subprocess
import sys
import time
from itertools import combinations

import pytest

from mcontig import cli
from mcontig.complex import boundary, build_complex, cone, cycle, point, random_complex, simplex
from mcontig.contiguity import Status, same_contiguity_class
from mcontig.cover import minimum_good_cover
from mcontig.invariants import INF, scat_m, sd_m, tc_m
from mcontig.io import load_documents
from mcontig.maps import SimplicialMap
from mcontig.moore import MoorePath, product, reverse

import oracles

REQUIRED = [
    "precompose", "postcompose", "sd-m-le-sd", "monotone-in-m", "sd-le-scat", "inclusions-eq-scat",
    "scat-eq-sd-id-const", "subdivision", "product", "hsecat-le-secat", "tc-dual-route", "tc-m-le-tc",
    "tc-sandwich", "tc-eq-hsecat-diag", "stability",
]


def test_criterion_1_contiguity_oracle(criterion):
    with criterion(1, "contiguity verdicts and steps equal all-pairs BFS") as c:
        t0 = time.perf_counter()
        family = [point(), simplex(1), simplex(2), boundary(2), cycle(4)]
        pairs = 0
        for K in family:
            for L in family:
                table = oracles.all_pairs_steps(K, L)
                if len(table) > 2000:
                    continue
                homs = list(table)
                for a in homs:
                    f = SimplicialMap(K, L, a)
                    for b in homs:
                        v = same_contiguity_class(f, SimplicialMap(K, L, b))
                        want = table[a].get(b)
                        if want is None:
                            assert v.status is Status.DISCONNECTED, (K, L, a, b)
                        else:
                            assert v.status is Status.CONNECTED and v.steps == want, (K, L, a, b, v, want)
                        pairs += 1
        took = time.perf_counter() - t0
        c.note(f"{pairs} map pairs")
        assert took < 60


def _forbidden_predicates(K, rng, count):
    pool = [frozenset(s) for k in (1, 2, 3) for s in combinations(K.vertices, k)]
    out = []
    for _ in range(count):
        forbidden = rng.sample(pool, rng.randint(0, min(4, len(pool))))
        out.append(lambda piece, fb=forbidden: not any(s <= set(piece.vertices) for s in fb))
    return out


def test_criterion_2_cover_oracle(criterion):
    with criterion(2, "minimum_good_cover equals exhaustive minimum") as c:
        t0 = time.perf_counter()
        rng = random.Random(2)
        complexes = [boundary(2), cycle(4), cycle(5), cycle(6), cone(cycle(3)), simplex(2),
                     build_complex([[0, 1, 2], [2, 3], [3, 4], [4, 0]]), build_complex([[0, 1], [1, 2], [3]])]
        complexes += [K for K in (random_complex(5, s, 0.3) for s in range(12))
                      if len(K.facets) <= 6 and len(oracles.simplices(K)) <= 14]
        assert all(len(K.facets) <= 6 for K in complexes)
        synthetic = 0
        for K in complexes:
            preds = _forbidden_predicates(K, rng, 6)
            preds += [lambda piece, n=n: len(piece.vertices) <= n for n in (1, 2, 3)]
            for good in preds:
                assert minimum_good_cover(K, good).value == oracles.min_cover(K, good), K
                synthetic += 1
        real = 0
        targets = [boundary(2), cycle(4), simplex(1)]
        # the oracle builds a full contiguity graph per subcomplex, so keep domains small
        for K in [K for K in complexes[:8] if len(K.vertices) <= 5]:
            for L in targets:
                homs = oracles.all_maps(K, L)
                for a, b in rng.sample([(a, b) for a in homs for b in homs], min(4, len(homs) ** 2)):
                    for m in (0, 1, INF):
                        want = oracles.min_cover(K, oracles.sd_predicate(K, L, a, b, m))
                        assert sd_m(SimplicialMap(K, L, a), SimplicialMap(K, L, b), m).value == want
                        real += 1
        c.note(f"{len(complexes)} complexes, {synthetic} synthetic and {real} sd instances")
        assert time.perf_counter() - t0 < 300


@pytest.fixture(scope="module")
def verify_runs(tmp_path_factory):
    """Two full verify runs on the builtin corpus: one in process, one in a fresh interpreter."""
    d = tmp_path_factory.mktemp("verify")
    first, second = d / "a.json", d / "b.json"
    t0 = time.perf_counter()
    code = cli.main(["verify", "--builtin", "--seed", "7", "--format", "json", "--out", str(first)])
    took = time.perf_counter() - t0
    proc = subprocess.run([sys.executable, "-m", "mcontig.cli", "verify", "--builtin", "--seed", "7",
                           "--format", "json", "--out", str(second)], capture_output=True, text=True)
    return code, proc.returncode, first.read_text(), second.read_text(), took


def test_criterion_3_theorem_suite(criterion, verify_runs):
    with criterion(3, "theorem suite on the builtin corpus, seed 7") as c:
        code, _, text, _, took = verify_runs
        rep = json.loads(text)
        s = rep["summary"]
        c.note(f"{s['checks']} checks, {s['passed']} passed, {s['failed']} failed, {s['skipped']} skipped, "
               f"{len(s['corpus']['pairs'])} pairs")
        assert code == 0
        assert s["failed"] == 0
        assert len(s["corpus"]["pairs"]) >= 20
        assert s["corpus"]["complexes"] == ["D1", "D2", "bD2", "C4", "cone(C3)"]
        counts = {r["theorem"]: r for r in rep["results"]}
        for tid in REQUIRED:
            assert counts[tid]["pass"] > 0 and counts[tid]["fail"] == 0, tid
        assert took < 1800


def test_criterion_4_stability(criterion, verify_runs):
    with criterion(4, "sd_m = sd for m >= dim of the domain") as c:
        rep = json.loads(verify_runs[2])
        counts = {r["theorem"]: r for r in rep["results"]}["stability"]
        assert counts["fail"] == 0 and counts["skip"] == 0 and counts["pass"] > 0
        # independent sweep a little further up
        from mcontig.corpus import builtin_corpus

        n = 0
        for pair in builtin_corpus(7).pairs:
            full = sd_m(pair.f, pair.g, INF).value
            d = pair.f.domain.dim
            for m in (d, d + 1, d + 2):
                assert sd_m(pair.f, pair.g, m).value == full, (pair.name, m)
                n += 1
        c.note(f"{counts['pass']} suite checks and {n} direct comparisons")


def test_criterion_5_concrete_values(criterion, fixtures):
    with criterion(5, "concrete values") as c:
        for n in range(4):
            K = simplex(n)
            assert scat_m(K).value == 0
            for m in (0, 1, 2, 3, INF):
                r = tc_m(K, m)
                assert r.value == 0 and r.alternate.value == 0
        assert scat_m(boundary(2)).value == 1
        doc = load_documents([fixtures / "c3.txt", fixtures / "c3_maps.txt"])
        incl, target = doc.map("incl"), doc.map("const_c")
        J, C3 = incl.domain, incl.codomain
        # exhaustive oracle over the full contiguity graph of Hom(J, C3)
        want = oracles.all_pairs_steps(J, C3)[incl.images][target.images]
        assert want == 2
        v = same_contiguity_class(incl, target)
        assert v.status is Status.CONNECTED and v.steps == 2
        c.note(f"chain incl -> const_c found with {v.steps} steps")


def _walk(K, rng, start, length):
    vals = [start]
    for _ in range(length):
        v = vals[-1]
        vals.append(rng.choice([w for w in K.vertices if w == v or K.has_simplex((v, w))]))
    return MoorePath(K, rng.randint(-5, 5), tuple(vals))


def test_criterion_6_moore_algebra(criterion):
    with criterion(6, "Moore path algebra on random triples in C4 and D2") as c:
        t0 = time.perf_counter()
        rng = random.Random(6)
        n = 0
        for K in (cycle(4), simplex(2)):
            for _ in range(600):
                p = _walk(K, rng, rng.choice(K.vertices), rng.randint(0, 6))
                q = _walk(K, rng, p.values[-1], rng.randint(0, 6))
                r = _walk(K, rng, q.values[-1], rng.randint(0, 6))
                left, right = product(product(p, q), r), product(p, product(q, r))
                assert (left.start, left.values) == (right.start, right.values)
                for path in (p, q, r):
                    a, b = path.endpoints()
                    u = product(MoorePath.constant(K, a), path)
                    assert (u.start, u.values) == (path.start, path.values)
                    u = product(path, MoorePath.constant(K, b))
                    assert (u.start, u.values) == (path.start, path.values)
                    rr = reverse(reverse(path))
                    assert (rr.start, rr.values) == (path.start, path.values)
                pq = product(p, q)
                assert pq.support == (p.lo + q.lo, p.hi + q.hi)
                n += 1
        took = time.perf_counter() - t0
        c.note(f"{n} triples")
        assert n >= 1000 and took < 10


def test_criterion_7_determinism(criterion, verify_runs):
    with criterion(7, "repeated verify runs give identical JSON bodies") as c:
        code_a, code_b, a, b, _ = verify_runs
        assert code_a == code_b == 0
        body_a, body_b = json.loads(a), json.loads(b)
        body_a.pop("timing")
        body_b.pop("timing")
        assert json.dumps(body_a, sort_keys=True) == json.dumps(body_b, sort_keys=True)
        c.note(f"body sha256 digests match ({len(json.dumps(body_a))} bytes)")
