from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterator

from .complex import SimplicialComplex
from .errors import ComplexError, ComplexFormatError


@dataclass
class FacetReader:
    """Plain-text facet list: one facet per line, 1-based vertices separated by spaces.

    An optional ``m <int>`` header fixes the vertex count; ``#`` starts a
    comment and blank lines are skipped.
    """

    path: Path | None = None
    source: str = "<stdin>"

    def lines(self) -> Iterator[tuple[int, str]]:
        if self.path is None:
            yield from self._numbered(sys.stdin)
            return
        with self.path.open(encoding="utf-8") as f:
            yield from self._numbered(f)

    @staticmethod
    def _numbered(stream: IO[str]) -> Iterator[tuple[int, str]]:
        for lineno, raw in enumerate(stream, start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                yield lineno, line

    def read(self) -> SimplicialComplex:
        name = str(self.path) if self.path else self.source
        return parse_facets(self.lines(), name)


def parse_facets(lines, name: str = "<string>") -> SimplicialComplex:
    m: int | None = None
    facets: list[tuple[int, ...]] = []
    for lineno, line in lines:
        tokens = line.split()
        if tokens[0] == "m":
            if m is not None or facets:
                raise ComplexFormatError(f"{name}:{lineno}: header 'm <int>' must come first and only once")
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise ComplexFormatError(f"{name}:{lineno}: malformed header {line!r}")
            m = int(tokens[1])
            continue
        if not all(t.isdigit() and int(t) >= 1 for t in tokens):
            raise ComplexFormatError(f"{name}:{lineno}: vertices must be positive integers, got {line!r}")
        facets.append(tuple(int(t) for t in tokens))
    if not facets:
        if m in (None, 0):
            return SimplicialComplex(m=0, facets=(0,))
        raise ComplexFormatError(f"{name}: no facets but header says m={m}")
    try:
        K = SimplicialComplex.from_vertex_lists(facets, m=m)
    except (ComplexError, ValueError) as exc:
        raise ComplexFormatError(f"{name}: {exc}") from exc
    if K.ghost_vertices:
        ghosts = " ".join(map(str, K.ghost_vertices))
        raise ComplexFormatError(f"{name}: vertices {ghosts} of [m] lie in no facet")
    return K


def parse_text(text: str, name: str = "<string>") -> SimplicialComplex:
    return parse_facets(FacetReader._numbered(text.splitlines()), name)


def read_complex(path: Path | str | None) -> SimplicialComplex:
    """Read a facet file; ``None`` or ``-`` reads stdin."""
    if path is None or str(path) == "-":
        return FacetReader().read()
    return FacetReader(Path(path)).read()


def format_complex(K: SimplicialComplex, header: bool = False) -> str:
    lines = [f"m {K.m}"] if header else []
    lines.extend(" ".join(map(str, f)) for f in K.facet_lists())
    return "\n".join(lines) + "\n"
