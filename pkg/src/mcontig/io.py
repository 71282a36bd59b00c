"""Line-based text formats for complexes, maps and Moore paths.

One document may hold any number of blocks::

    complex C3
    vertex a b c
    facet a b
    facet b c
    facet a c

    map f : C3 -> C3
    send a a
    send b b
    send c a

    path C3 @2 a b c

Labels are whitespace-free tokens and ids are given in order of first
appearance within the complex block. ``#`` starts a comment. In a path line
the start index is optional; it is written ``@n``, or as a bare integer that
is not a vertex label of the complex.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .complex import Complex, build_complex
from .errors import MalformedInputError, ParseError
from .maps import SimplicialMap, validate
from .moore import MoorePath

_MAP_HEADER = re.compile(r"^map\s+(\S+?)\s*:\s*(\S+)\s*->\s*(\S+)$")
_INT = re.compile(r"^-?\d+$")


@dataclass
class Document:
    complexes: dict[str, Complex] = field(default_factory=dict)
    maps: dict[str, SimplicialMap] = field(default_factory=dict)
    paths: list[MoorePath] = field(default_factory=list)

    def complex(self, name: str | None = None) -> Complex:
        return _pick(self.complexes, name, "complex")

    def map(self, name: str | None = None) -> SimplicialMap:
        return _pick(self.maps, name, "map")


def _pick(table: dict, name, kind):
    if name is None:
        if not table:
            raise MalformedInputError(f"no {kind} in the document")
        return next(iter(table.values()))
    if name not in table:
        raise MalformedInputError(f"no {kind} named {name!r}")
    return table[name]


def _strip(line: str) -> str:
    cut = line.find("#")
    if cut >= 0:
        line = line[:cut]
    return line.strip()


class _Parser:
    def __init__(self, source: str | None, known: Mapping[str, Complex] | None, strict: bool):
        self.source = source
        self.doc = Document(complexes=dict(known or {}))
        self.own: set[str] = set()
        self.strict = strict
        self.block = None

    def fail(self, msg, lineno):
        raise ParseError(msg, lineno, self.source)

    def run(self, text: str) -> Document:
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = _strip(raw)
            if not line:
                continue
            head = line.split()[0]
            try:
                if head == "complex":
                    self.close()
                    self.open_complex(line.split(), lineno)
                elif head == "map":
                    self.close()
                    self.open_map(line, lineno)
                elif head == "path":
                    self.close()
                    self.path(line.split(), lineno)
                elif head in ("vertex", "facet"):
                    self.complex_line(head, line.split()[1:], lineno)
                elif head == "send":
                    self.send_line(line.split()[1:], lineno)
                else:
                    self.fail(f"unknown keyword {head!r}", lineno)
            except ParseError:
                raise
            except MalformedInputError as e:
                self.fail(str(e), lineno)
        self.close()
        for name in list(self.doc.complexes):
            if name not in self.own:
                del self.doc.complexes[name]
        return self.doc

    # complexes
    def open_complex(self, toks, lineno):
        if len(toks) != 2:
            self.fail("expected: complex <name>", lineno)
        self.block = {"kind": "complex", "name": toks[1], "ids": {}, "facets": [], "isolated": [], "line": lineno}

    def complex_line(self, head, labels, lineno):
        b = self.block
        if b is None or b["kind"] != "complex":
            self.fail(f"{head} outside a complex block", lineno)
        if not labels:
            self.fail(f"{head} needs at least one label", lineno)
        ids = b["ids"]
        for lab in labels:
            ids.setdefault(lab, len(ids))
        if head == "vertex":
            b["isolated"].extend(ids[lab] for lab in labels)
        else:
            if len(set(labels)) != len(labels):
                self.fail("repeated vertex in a facet", lineno)
            b["facets"].append([ids[lab] for lab in labels])

    # maps
    def open_map(self, line, lineno):
        m = _MAP_HEADER.match(line)
        if not m:
            self.fail("expected: map <name> : <domain> -> <codomain>", lineno)
        name, dom, cod = m.groups()
        K = self.lookup(dom, lineno)
        L = self.lookup(cod, lineno)
        self.block = {"kind": "map", "name": name, "K": K, "L": L, "sends": {}, "line": lineno}

    def send_line(self, toks, lineno):
        b = self.block
        if b is None or b["kind"] != "map":
            self.fail("send outside a map block", lineno)
        if len(toks) != 2:
            self.fail("expected: send <domain-label> <codomain-label>", lineno)
        v = b["K"].vertex(toks[0])
        w = b["L"].vertex(toks[1])
        if v in b["sends"]:
            self.fail(f"vertex {toks[0]} is sent twice", lineno)
        b["sends"][v] = w

    def lookup(self, name, lineno) -> Complex:
        if name not in self.doc.complexes:
            self.fail(f"unknown complex {name!r}", lineno)
        return self.doc.complexes[name]

    # paths
    def path(self, toks, lineno):
        if len(toks) < 3:
            self.fail("expected: path <complex> [<start>] <label> ...", lineno)
        K = self.lookup(toks[1], lineno)
        rest = toks[2:]
        start = 0
        first = rest[0]
        if first.startswith("@") and _INT.match(first[1:]):
            start = int(first[1:])
            rest = rest[1:]
        elif _INT.match(first) and first not in K._label_index and len(rest) > 1:
            start = int(first)
            rest = rest[1:]
        if not rest:
            self.fail("a path needs at least one vertex", lineno)
        self.doc.paths.append(MoorePath(K, start, tuple(K.vertex(t) for t in rest)))

    def close(self):
        b, self.block = self.block, None
        if b is None:
            return
        lineno = b["line"]
        if b["kind"] == "complex":
            if not b["facets"] and not b["isolated"]:
                self.fail(f"complex {b['name']} is empty", lineno)
            if b["name"] in self.own:
                self.fail(f"complex {b['name']} defined twice", lineno)
            labels = {i: lab for lab, i in b["ids"].items()}
            K = build_complex(b["facets"], b["isolated"], name=b["name"], labels=labels)
            self.doc.complexes[b["name"]] = K
            self.own.add(b["name"])
        else:
            K, L = b["K"], b["L"]
            missing = [K.label(v) for v in K.vertices if v not in b["sends"]]
            if missing:
                self.fail(f"map {b['name']} does not send {' '.join(missing)}", lineno)
            f = SimplicialMap.from_dict(K, L, b["sends"], name=b["name"])
            if self.strict and not validate(f):
                self.fail(f"map {b['name']} is not simplicial", lineno)
            if b["name"] in self.doc.maps:
                self.fail(f"map {b['name']} defined twice", lineno)
            self.doc.maps[b["name"]] = f


def parse_document(text: str, source: str | None = None, complexes: Mapping[str, Complex] | None = None,
                   strict: bool = True) -> Document:
    """Parse every block in ``text``.

    ``complexes`` are extra named complexes that maps and paths may refer to;
    they are not copied into the result. With ``strict`` a map that is not
    simplicial is a parse error.
    """
    return _Parser(source, complexes, strict).run(text)


def load_document(path: str | Path, complexes: Mapping[str, Complex] | None = None,
                  strict: bool = True) -> Document:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {p}: {e.strerror}", None, str(p)) from None
    return parse_document(text, str(p), complexes, strict)


def load_documents(paths: Iterable[str | Path], strict: bool = True) -> Document:
    """Parse files in order into one namespace; later files see earlier complexes."""
    merged = Document()
    for p in paths:
        doc = load_document(p, merged.complexes, strict)
        for name, K in doc.complexes.items():
            if name in merged.complexes:
                raise ParseError(f"complex {name} defined twice", None, str(p))
            merged.complexes[name] = K
        for name, f in doc.maps.items():
            if name in merged.maps:
                raise ParseError(f"map {name} defined twice", None, str(p))
            merged.maps[name] = f
        merged.paths.extend(doc.paths)
    return merged


def parse_complex(text: str) -> Complex:
    return parse_document(text).complex()


def _token(name: str) -> str:
    return re.sub(r"\s+", "_", name) or "_"


def format_complex(K: Complex) -> str:
    """Text block for K. All vertices are listed first, so ids 0..n-1 survive a round trip."""
    lines = [f"complex {_token(K.name)}", "vertex " + " ".join(_token(K.label(v)) for v in K.vertices)]
    for f in K.facets:
        if len(f) > 1:
            lines.append("facet " + " ".join(_token(K.label(v)) for v in f))
    return "\n".join(lines) + "\n"


def format_map(f: SimplicialMap) -> str:
    K, L = f.domain, f.codomain
    lines = [f"map {_token(f.name)} : {_token(K.name)} -> {_token(L.name)}"]
    for v, w in zip(K.vertices, f.images):
        lines.append(f"send {_token(K.label(v))} {_token(L.label(w))}")
    return "\n".join(lines) + "\n"


def format_path(p: MoorePath) -> str:
    K = p.target
    labels = [_token(K.label(v)) for v in p.values]
    start = f"@{p.start}" if str(p.start) in K._label_index or len(labels) == 1 else str(p.start)
    return f"path {_token(K.name)} {start} {' '.join(labels)}\n"


def format_document(complexes: Iterable[Complex] = (), maps: Iterable[SimplicialMap] = (),
                    paths: Iterable[MoorePath] = ()) -> str:
    blocks = [format_complex(K) for K in complexes]
    blocks += [format_map(f) for f in maps]
    blocks += [format_path(p) for p in paths]
    return "\n".join(blocks)
