from dataclasses import replace

import pytest

from mcontig.complex import boundary, simplex
from mcontig.corpus import Corpus, MapPair, builtin_corpus, empty_corpus, load_corpus
from mcontig.io import parse_document
from mcontig.maps import constant, identity
from mcontig.verify import THEOREM_IDS, run_suite, select


def _small_corpus():
    K, L = simplex(1), boundary(2)
    pairs = [
        MapPair("D1:id~c", identity(K), constant(K, K, 0)),
        MapPair("bD2:id~c", identity(L), constant(L, L, 0)),
    ]
    return Corpus("small", [K, L], pairs, seed=1)


def test_builtin_corpus_shape():
    c = builtin_corpus()
    assert [K.name for K in c.complexes] == ["D1", "D2", "bD2", "C4", "cone(C3)"]
    assert len(c.pairs) >= 20
    assert builtin_corpus().digest() == c.digest()
    assert builtin_corpus(seed=8).digest() != c.digest()


def test_small_corpus_passes_everything():
    r = run_suite(_small_corpus())
    assert r.ok
    counts = r.counts()
    assert set(counts) == set(THEOREM_IDS)
    assert sum(c["pass"] for c in counts.values()) > 0


def test_empty_corpus_is_a_no_op():
    r = run_suite(empty_corpus())
    assert r.ok and r.checks == []


def _inflate_sd_at_zero(kind, args, result):
    # fault: sd_0 reported far too large
    if kind == "sd" and args[2] == 0:
        return replace(result, value=result.value + 5)
    return result


def test_fault_injection_names_the_theorem():
    r = run_suite(_small_corpus(), suite=["sd-m-le-sd", "sd-le-scat", "scat-routes"], tamper=_inflate_sd_at_zero)
    failed = {c.theorem for c in r.failures}
    assert failed == {"sd-m-le-sd", "sd-le-scat"}
    check = r.failures[0]
    assert check.m == 0
    # the reproducer is a parseable document holding the maps involved
    doc = parse_document(check.reproducer)
    assert len(doc.maps) == 2


def test_tampered_scat_breaks_route_equality():
    def tamper(kind, args, result):
        if kind == "scat" and args[-1] == "sd":
            return replace(result, value=7)
        return result

    r = run_suite(_small_corpus(), suite=["scat-routes"], tamper=tamper)
    assert {c.theorem for c in r.failures} == {"scat-routes"}


def test_unknown_values_are_skips():
    def tamper(kind, args, result):
        return replace(result, value=None)

    r = run_suite(_small_corpus(), suite=["monotone-in-m"], tamper=tamper)
    assert r.ok
    assert all(c.status == "skip" for c in r.checks)


def test_select():
    assert [t.id for t in select(["stability", "product"])] == ["product", "stability"]
    with pytest.raises(ValueError):
        select(["nope"])


def test_load_corpus_from_files(fixtures):
    c = load_corpus([fixtures / "c3.txt", fixtures / "c3_maps.txt"])
    assert [p.name for p in c.pairs] == ["incl~const_c", "incl~const_a", "const_c~const_a"]
    r = run_suite(c, suite=["sd-m-le-sd", "stability"])
    assert r.ok
