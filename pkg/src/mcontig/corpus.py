"""Small test corpora: complexes plus parallel map pairs, fixed by a seed."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .complex import Complex, boundary, cone, cycle, simplex
from .contiguity import SearchBudget, enumerate_hom
from .errors import MalformedInputError
from .io import format_complex, format_map, load_documents
from .maps import SimplicialMap, constant, identity

BUILTIN_SEED = 7


@dataclass
class MapPair:
    name: str
    f: SimplicialMap
    g: SimplicialMap


@dataclass
class Corpus:
    name: str
    complexes: list[Complex] = field(default_factory=list)
    pairs: list[MapPair] = field(default_factory=list)
    seed: int = BUILTIN_SEED

    def text(self) -> str:
        """Canonical text of the corpus; the report digest is taken over this."""
        blocks = [f"# corpus {self.name} seed {self.seed}\n"]
        blocks += [format_complex(K) for K in self.complexes]
        for p in self.pairs:
            blocks.append(f"# pair {p.name}\n" + format_map(p.f) + format_map(p.g))
        return "\n".join(blocks)

    def digest(self) -> str:
        return hashlib.sha256(self.text().encode("utf-8")).hexdigest()

    def rng(self, salt: str) -> random.Random:
        # one stream per purpose, so adding a check does not shift the others
        return random.Random(f"{self.seed}:{salt}")


def builtin_complexes() -> list[Complex]:
    return [simplex(1), simplex(2), boundary(2), cycle(4), cone(cycle(3))]


def random_map(K: Complex, L: Complex, rng: random.Random, budget: SearchBudget | None = None) -> SimplicialMap:
    homs = enumerate_hom(K, L, budget)
    return homs[rng.randrange(len(homs))]


def builtin_corpus(seed: int = BUILTIN_SEED) -> Corpus:
    """Five complexes and 25 parallel pairs.

    For each complex K: (id, constant at the least vertex), (id, random self
    map), and three random pairs into the next three complexes in the list.
    """
    complexes = builtin_complexes()
    corpus = Corpus("builtin", complexes, [], seed)
    rng = corpus.rng("pairs")
    n = len(complexes)
    for i, K in enumerate(complexes):
        v0 = K.vertices[0]
        idK = identity(K)
        corpus.pairs.append(MapPair(f"{K.name}:id~c", idK, constant(K, K, v0)))
        corpus.pairs.append(MapPair(f"{K.name}:id~r", idK, _named(random_map(K, K, rng), "r")))
        for j in range(1, 4):
            L = complexes[(i + j) % n]
            f = _named(random_map(K, L, rng), "f")
            g = _named(random_map(K, L, rng), "g")
            corpus.pairs.append(MapPair(f"{K.name}->{L.name}:{j}", f, g))
    return corpus


def _named(f: SimplicialMap, name: str) -> SimplicialMap:
    return SimplicialMap(f.domain, f.codomain, f.images, name=name)


def load_corpus(paths: Iterable[str | Path], seed: int = BUILTIN_SEED) -> Corpus:
    """Corpus from files or directories of text documents.

    Every complex is an item; every two parallel maps (in file order) form a pair.
    """
    files: list[Path] = []
    for p in paths:
        p = Path(p)
        if p.is_dir():
            files.extend(sorted(q for q in p.iterdir() if q.is_file() and not q.name.startswith(".")))
        elif p.exists():
            files.append(p)
        else:
            raise MalformedInputError(f"no such corpus path: {p}")
    doc = load_documents(files)
    corpus = Corpus("files", list(doc.complexes.values()), [], seed)
    maps = list(doc.maps.values())
    for i, f in enumerate(maps):
        for g in maps[i + 1:]:
            if f.domain == g.domain and f.codomain == g.codomain:
                corpus.pairs.append(MapPair(f"{f.name}~{g.name}", f, g))
    return corpus


def empty_corpus(seed: int = BUILTIN_SEED) -> Corpus:
    return Corpus("empty", [], [], seed)
