"""Command line front end: ``mcontig contig|invariant|verify|transform``.

Reports go to stdout (or ``--out``) as aligned text or JSON. The JSON body is
deterministic for fixed inputs and seed; wall times live under ``timing``
only. Exit codes: 0 success, 1 theorem violation, 2 bad input, 3 unknown
value or exhausted budget.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from pathlib import Path

from . import __version__
from .complex import Complex, barycentric_subdivision, categorical_product, skeleton
from .contiguity import DEFAULT_MAX_MAPS, SearchBudget, same_contiguity_class
from .corpus import BUILTIN_SEED, builtin_corpus, empty_corpus, load_corpus
from .errors import BudgetExceeded, MalformedInputError, ParseError
from .invariants import (
    INF,
    format_value,
    hsecat_m,
    scat_m,
    scat_m_of_map,
    sd_m,
    secat_m,
    tc_m,
)
from .io import Document, format_complex, format_map, load_documents
from .maps import SimplicialMap, canonical, is_contiguous, sd_map
from .verify import DEFAULT_MS, THEOREM_IDS, THEOREMS, run_suite

SCHEMA = "mcontig-report/1"

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_UNKNOWN = 3

INVARIANTS = ("sd", "scat", "scat-map", "tc", "secat", "hsecat")
TRANSFORMS = ("subdivide", "product", "skeleton")


class Report:
    """Results of one command; ``body()`` is the deterministic part."""

    def __init__(self, command: str, args: dict, digest: str):
        self.command = command
        self.args = args
        self.digest = digest
        self.results: list[dict] = []
        self.summary: dict = {}
        self.status = "ok"
        self.lines: list[str] = []
        self.timing: dict = {}
        self._t0 = time.perf_counter()

    def add(self, record: dict, seconds: float | None = None) -> None:
        self.results.append(record)
        if seconds is not None:
            self.timing.setdefault("results", []).append(round(seconds, 4))

    def worsen(self, status: str) -> None:
        order = ["ok", "unknown", "violation"]
        if order.index(status) > order.index(self.status):
            self.status = status

    @property
    def exit_code(self) -> int:
        return {"ok": EXIT_OK, "violation": EXIT_VIOLATION, "unknown": EXIT_UNKNOWN}[self.status]

    def body(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": {"name": self.command, "args": self.args},
            "inputs_digest": self.digest,
            "results": self.results,
            "summary": self.summary,
            "status": self.status,
            "exit_code": self.exit_code,
        }

    def to_json(self) -> str:
        out = self.body()
        self.timing["total_seconds"] = round(time.perf_counter() - self._t0, 4)
        out["timing"] = self.timing
        return json.dumps(out, indent=2, sort_keys=False) + "\n"

    def to_text(self) -> str:
        head = [f"# {SCHEMA}  {self.command}", f"# inputs sha256 {self.digest}"]
        tail = [f"status: {self.status} (exit {self.exit_code})"]
        return "\n".join(head + self.lines + tail) + "\n"


def _table(rows: list[tuple]) -> list[str]:
    if not rows:
        return []
    n = max(len(r) for r in rows)
    rows = [tuple(r) + ("",) * (n - len(r)) for r in rows]
    widths = [max(len(str(r[i])) for r in rows) for i in range(n)]
    return ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]


# -- argument helpers -------------------------------------------------------


def parse_m(text: str) -> int | float:
    t = text.strip().lower()
    if t in ("inf", "infinity", "oo"):
        return INF
    try:
        m = int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer or 'inf', got {text!r}") from None
    if m < 0:
        raise argparse.ArgumentTypeError("m must be >= 0")
    return m


def parse_ms(text: str) -> tuple:
    return tuple(parse_m(t) for t in text.split(",") if t.strip())


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def _budget(args) -> SearchBudget:
    return SearchBudget(
        max_maps=args.budget_maps,
        max_steps=args.budget_steps,
        max_cover_facets=args.max_cover_facets,
        max_predicate_calls=args.max_predicate_calls,
    )


def _echo(args) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in ("func", "format", "out"):
            continue
        if isinstance(v, float) and math.isinf(v):
            v = "inf"
        elif isinstance(v, (list, tuple)):
            v = [format_value(x) if isinstance(x, float) else x for x in v]
        out[k] = v
    return out


def _digest_files(paths) -> str:
    h = hashlib.sha256()
    for p in paths:
        try:
            data = Path(p).read_bytes()
        except OSError:
            data = b""
        h.update(len(data).to_bytes(8, "big"))
        h.update(data)
    return h.hexdigest()


def _load(paths) -> Document:
    return load_documents(paths)


def _pick_maps(doc: Document, names, count: int) -> list[SimplicialMap]:
    if names:
        maps = [doc.map(n) for n in names]
    else:
        maps = list(doc.maps.values())[:count]
    if len(maps) < count:
        raise MalformedInputError(f"need {count} map(s), found {len(maps)}")
    return maps[:count]


def _pick_complex(doc: Document, name) -> Complex:
    return doc.complex(name)


def _base_vertex(K: Complex, label) -> int | None:
    if label is None:
        return None
    return K.vertex(label)


def _invariant_record(r, seconds, report: Report, extra: dict | None = None) -> dict:
    rec = r.summary()
    if extra:
        rec.update(extra)
    report.add(rec, seconds)
    if not r.known:
        report.worsen("unknown")
    return rec


# -- commands ---------------------------------------------------------------


def cmd_contig(args) -> Report:
    doc = _load(args.inputs)
    f, g = _pick_maps(doc, args.maps, 2)
    report = Report("contig", _echo(args), _digest_files(args.inputs))
    t = time.perf_counter()
    budget = _budget(args)
    one_step = is_contiguous(f, g)
    verdict = same_contiguity_class(f, g, budget)
    rec = {
        "f": f.name,
        "g": g.name,
        "contiguous": one_step,
        "class": verdict.status.value,
        "steps": verdict.steps,
        "explored": verdict.explored,
    }
    report.add(rec, time.perf_counter() - t)
    report.summary = {"same_class": verdict.connected}
    if verdict.connected is None:
        report.worsen("unknown")
    report.lines += _table([
        ("maps", f"{f.name}, {g.name} : {f.domain.name} -> {f.codomain.name}"),
        ("contiguous", "yes" if one_step else "no"),
        ("class", verdict.status.value),
        ("steps", "-" if verdict.steps is None else verdict.steps),
        ("explored", verdict.explored),
    ])
    return report


def _value_line(rec: dict) -> tuple:
    name = rec["name"] + (f" ({rec['route']})" if "route" in rec else "")
    return (name, f"m={rec['m']}", rec["value"], f"pieces={rec['pieces']}", f"calls={rec['predicate_calls']}")


def cmd_invariant(args) -> Report:
    doc = _load(args.inputs)
    report = Report("invariant", _echo(args), _digest_files(args.inputs))
    budget = _budget(args)
    m = args.m
    name = args.name
    rows: list[tuple] = []

    def run(fn, extra=None):
        t = time.perf_counter()
        r = fn()
        rec = _invariant_record(r, time.perf_counter() - t, report, extra)
        rows.append(_value_line(rec))
        return r

    if name == "sd":
        f, g = _pick_maps(doc, args.maps, 2)
        r = run(lambda: sd_m(f, g, m, budget), {"f": f.name, "g": g.name})
        if m != INF:
            # sd_m never exceeds sd; checked and reported
            full = run(lambda: sd_m(f, g, INF, budget), {"f": f.name, "g": g.name})
            _relation(report, rows, "sd_m <= sd", r.value, full.value, lambda a, b: a <= b)
    elif name == "scat":
        K = _pick_complex(doc, args.complex)
        run(lambda: scat_m(K, m, _base_vertex(K, args.base_vertex), budget), {"complex": K.name})
    elif name == "scat-map":
        (f,) = _pick_maps(doc, args.maps, 1)
        base = _base_vertex(f.codomain, args.base_vertex)
        run(lambda: scat_m_of_map(f, m, base, budget), {"map": f.name})
    elif name == "tc":
        K = _pick_complex(doc, args.complex)
        r = run(lambda: tc_m(K, m, budget), {"complex": K.name, "route": "sd"})
        alt = r.alternate
        rec = alt.summary()
        rec.update({"complex": K.name, "route": "farber"})
        report.add(rec)
        rows.append(_value_line(rec))
        if not alt.known:
            report.worsen("unknown")
        _relation(report, rows, "routes agree", r.value, alt.value, lambda a, b: a == b)
        _strict_diagonal(K, m, budget, run)
    elif name == "secat":
        (f,) = _pick_maps(doc, args.maps, 1)
        run(lambda: secat_m(f, m, budget), {"map": f.name})
    elif name == "hsecat":
        if args.maps or (doc.maps and args.complex is None):
            (f,) = _pick_maps(doc, args.maps, 1)
            K = _diagonal_of(f)
        else:
            K = _pick_complex(doc, args.complex)
            f = canonical("diagonal", K)
        r = run(lambda: hsecat_m(f, m, budget), {"map": f.name})
        if K is not None:
            # the diagonal has a second route: tc_m of its domain
            t = run(lambda: tc_m(K, m, budget, routes=("sd",)), {"complex": K.name, "route": "sd"})
            _relation(report, rows, "hsecat(diag) = tc", r.value, t.value, lambda a, b: a == b)
            _strict_diagonal(K, m, budget, run)
    else:
        raise MalformedInputError(f"unknown invariant {name!r}")
    report.summary = {"values": [rec["value"] for rec in report.results if "value" in rec]}
    report.lines += _table(rows)
    return report


def _strict_diagonal(K: Complex, m, budget, run) -> None:
    # reported for comparison only: strict sections of the diagonal must land
    # in the diagonal, so no equality with tc is asserted
    d = canonical("diagonal", K)
    run(lambda: secat_m(d, m, budget), {"map": d.name, "informational": True})


def _diagonal_of(f: SimplicialMap) -> Complex | None:
    """Domain K if f is the diagonal K -> K x K, else None."""
    K = f.domain
    P = f.codomain
    if P.factors is None or P.factors != (K, K):
        return None
    return K if f.images == canonical("diagonal", K, square=P).images else None


def _relation(report: Report, rows, label, a, b, op) -> None:
    if a is None or b is None:
        holds = None
    else:
        holds = bool(op(a, b))
    report.add({"check": label, "lhs": format_value(a), "rhs": format_value(b),
                "holds": holds})
    rows.append(("check", label, {True: "holds", False: "VIOLATED", None: "unknown"}[holds]))
    if holds is False:
        report.worsen("violation")
    elif holds is None:
        report.worsen("unknown")


def cmd_verify(args) -> Report:
    if args.corpus:
        corpus = load_corpus(args.corpus, seed=args.seed)
    elif args.empty:
        corpus = empty_corpus(args.seed)
    else:
        corpus = builtin_corpus(args.seed)
    report = Report("verify", _echo(args), corpus.digest())
    suite = None
    if args.suite:
        suite = [s.strip() for part in args.suite for s in part.split(",") if s.strip()]
    progress = None
    if args.progress:
        progress = lambda tid: print(f"[verify] {tid}", file=sys.stderr, flush=True)
    ms = args.ms if args.m is None else (args.m,)
    t = time.perf_counter()
    result = run_suite(corpus, suite, ms, _budget(args), max_product_facets=args.max_product_facets,
                       progress=progress)
    report.timing["suite_seconds"] = round(time.perf_counter() - t, 4)
    counts = result.counts()
    statements = {th.id: th.statement for th in THEOREMS}
    for tid, c in counts.items():
        report.add({"theorem": tid, "statement": statements[tid], **c})
    report.summary = {
        "corpus": {
            "name": corpus.name,
            "seed": corpus.seed,
            "complexes": [K.name for K in corpus.complexes],
            "pairs": [p.name for p in corpus.pairs],
        },
        "checks": len(result.checks),
        "passed": sum(c["pass"] for c in counts.values()),
        "failed": sum(c["fail"] for c in counts.values()),
        "skipped": sum(c["skip"] for c in counts.values()),
        "failures": [c.record() for c in result.failures],
    }
    if args.all_checks:
        report.summary["all_checks"] = [c.record() for c in result.checks]
    if result.failures:
        report.worsen("violation")
    rows = [("theorem", "pass", "fail", "skip")]
    rows += [(tid, c["pass"], c["fail"], c["skip"]) for tid, c in counts.items()]
    report.lines.append(f"corpus {corpus.name} seed {corpus.seed}: {len(corpus.complexes)} complexes, "
                        f"{len(corpus.pairs)} pairs")
    report.lines += _table(rows)
    for c in result.failures:
        report.lines.append(f"VIOLATION {c.theorem} on {c.subject} m={format_value(c.m)}: {c.detail}")
        if c.reproducer:
            report.lines += ["  " + line for line in c.reproducer.splitlines()]
    return report


def cmd_transform(args) -> Report:
    doc = _load(args.inputs)
    report = Report("transform", _echo(args), _digest_files(args.inputs))
    complexes: list[Complex] = []
    maps: list[SimplicialMap] = []
    notes: list[str] = []
    if args.op == "subdivide":
        if args.maps:
            (f,) = _pick_maps(doc, args.maps, 1)
            for _ in range(args.iterations):
                f = sd_map(f)
            complexes = [f.domain] if f.domain == f.codomain else [f.domain, f.codomain]
            maps = [f]
        else:
            K = _pick_complex(doc, args.complex)
            for _ in range(args.iterations):
                K = barycentric_subdivision(K)
            complexes = [K]
    elif args.op == "product":
        names = args.complexes or list(doc.complexes)[:2]
        if not names:
            raise MalformedInputError("product needs at least one complex")
        K = doc.complex(names[0])
        L = doc.complex(names[1]) if len(names) > 1 else K
        P = categorical_product(K, L)
        complexes = [P]
        notes = _relabel_notes(P)
    elif args.op == "skeleton":
        if args.m == INF:
            raise MalformedInputError("skeleton needs a finite --m")
        K = _pick_complex(doc, args.complex)
        S = skeleton(K, args.m)
        complexes = [S]
    else:
        raise MalformedInputError(f"unknown transform {args.op!r}")
    text = "".join(f"# {n}\n" for n in notes)
    text += "\n".join([format_complex(K) for K in complexes] + [format_map(f) for f in maps])
    for K in complexes:
        report.add({"complex": K.name, "vertices": len(K.vertices), "facets": len(K.facets), "dim": K.dim,
                    "f_vector": list(K.f_vector())})
    for f in maps:
        report.add({"map": f.name, "domain": f.domain.name, "codomain": f.codomain.name})
    report.summary = {"document": text}
    report.lines += _table([(r.get("complex", r.get("map")), *(f"{k}={v}" for k, v in r.items() if k not in
                                                                 ("complex", "map")))
                            for r in report.results])
    report.document = text
    return report


def _relabel_notes(P: Complex) -> list[str]:
    """When a factor is a single point, name the factor vertex each product vertex stands for."""
    K, L = P.factors
    if len(L.vertices) == 1:
        return [f"relabel {P.label(i)} -> {K.label(v)}" for i, (v, _) in enumerate(P.origin)]
    if len(K.vertices) == 1:
        return [f"relabel {P.label(i)} -> {L.label(w)}" for i, (_, w) in enumerate(P.origin)]
    return []


# -- parser -------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, m_default=INF) -> None:
    p.add_argument("--m", type=parse_m, default=m_default, help="dimension bound, integer >= 0 or 'inf'")
    p.add_argument("--budget-maps", type=_positive, default=DEFAULT_MAX_MAPS,
                   help="maps per search (default from MCONTIG_MAX_MAPS, else 1000000)")
    p.add_argument("--budget", dest="budget_maps", type=_positive, help="alias of --budget-maps")
    p.add_argument("--budget-steps", type=_positive, default=None, help="depth bound for step counting")
    p.add_argument("--max-cover-facets", type=_positive, default=None,
                   help="give up (unknown) on covers of complexes with more facets")
    p.add_argument("--max-predicate-calls", type=_positive, default=None)
    p.add_argument("--base-vertex", default=None, help="label of the base vertex for constant maps")
    p.add_argument("--seed", type=int, default=BUILTIN_SEED)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None, help="write the report (or transformed document) here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mcontig", description="Contiguity and discrete homotopy invariants.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("contig", help="decide contiguity of two maps")
    p.add_argument("inputs", nargs="+", help="files with complexes and maps")
    p.add_argument("--maps", nargs=2, metavar=("F", "G"), help="map names (default: the first two)")
    _common(p)
    p.set_defaults(func=cmd_contig)

    p = sub.add_parser("invariant", help="compute sd, scat, scat-map, tc, secat or hsecat")
    p.add_argument("name", choices=INVARIANTS)
    p.add_argument("inputs", nargs="+")
    p.add_argument("--maps", nargs="+", metavar="NAME", help="map names (default: the first ones)")
    p.add_argument("--complex", default=None, help="complex name (default: the first one)")
    _common(p)
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("verify", help="check the theorem suite on a corpus")
    p.add_argument("--suite", action="append", help=f"theorem ids, comma separated: {', '.join(THEOREM_IDS)}")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--builtin", action="store_true", help="the seeded builtin corpus (default)")
    src.add_argument("--corpus", nargs="+", help="corpus files or directories")
    src.add_argument("--empty", action="store_true", help="the empty corpus")
    p.add_argument("--ms", type=parse_ms, default=DEFAULT_MS, help="values of m, e.g. 0,1,2,inf")
    p.add_argument("--max-product-facets", type=_positive, default=9)
    p.add_argument("--all-checks", action="store_true", help="list every check in the report")
    p.add_argument("--progress", action="store_true", help="theorem ids on stderr as they start")
    _common(p, m_default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("transform", help="subdivide, product or skeleton; writes the file format")
    p.add_argument("op", choices=TRANSFORMS)
    p.add_argument("inputs", nargs="+")
    p.add_argument("--complex", default=None)
    p.add_argument("--complexes", nargs="+", help="factor names for product")
    p.add_argument("--maps", nargs=1, metavar="NAME", help="subdivide this map instead of a complex")
    p.add_argument("--iterations", type=_positive, default=1)
    _common(p, m_default=INF)
    p.set_defaults(func=cmd_transform)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (MalformedInputError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return EXIT_UNKNOWN
    rendered = report.to_json() if args.format == "json" else report.to_text()
    if args.command == "transform":
        if args.out:
            Path(args.out).write_text(report.document, encoding="utf-8")
            sys.stdout.write(rendered)
        elif args.format == "json":
            sys.stdout.write(rendered)
        else:
            sys.stdout.write(report.document)
    else:
        _emit(rendered, args.out)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
