"""Batch exploration of HH total ranks over families of complexes."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Iterator

from . import vertexset as vs
from .complex import SimplicialComplex, connected_sum, remove_facet
from .errors import HHCalcError
from .facet_reader import format_complex
from .generators import gen_bicapped_antiprism
from .runner import HHRunner

logger = logging.getLogger(__name__)


def is_exotic(rank: int) -> bool:
    """Total rank that is not a power of two."""
    return rank <= 0 or rank & (rank - 1) != 0


def parse_range(text: str) -> list[int]:
    """``"4..8"``, ``"4,6,9"`` or ``"5"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise ValueError(f"empty range {text!r}")
    return out


@dataclass(frozen=True)
class SearchResult:
    family: str
    params: dict[str, Any]
    m: int
    rank: int | None
    error: str | None = None

    @property
    def exotic(self) -> bool:
        return self.rank is not None and is_exotic(self.rank)

    @property
    def label(self) -> str:
        return self.family + "-" + "-".join(f"{k}{v}" for k, v in self.params.items())

    def to_json(self) -> str:
        out: dict[str, Any] = {"family": self.family, "params": self.params, "m": self.m, "rank": self.rank}
        if self.rank is not None:
            out["exotic"] = self.exotic
        if self.error:
            out["error"] = self.error
        return json.dumps(out, sort_keys=True)

    def to_text(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        if self.error:
            return f"{self.family} {params} m={self.m} error: {self.error}"
        flag = " exotic" if self.exotic else ""
        return f"{self.family} {params} m={self.m} rank={self.rank}{flag}"


Instance = tuple[dict[str, Any], Callable[[], SimplicialComplex]]


def antiprism_family(ns: list[int], hs: list[int]) -> Iterator[Instance]:
    for n in ns:
        for h in hs:
            yield {"n": n, "h": h}, (lambda n=n, h=h: gen_bicapped_antiprism(n, h))


def facet_deletion_family(K: SimplicialComplex) -> Iterator[Instance]:
    for sigma in K.facets:
        yield {"facet": vs.format_vertices(sigma).replace(" ", ",")}, (lambda s=sigma: remove_facet(K, s))


def connected_sum_family(K1: SimplicialComplex, K2: SimplicialComplex) -> Iterator[Instance]:
    for s1 in K1.facets:
        for s2 in K2.facets:
            if s1.bit_count() != s2.bit_count():
                continue
            params = {
                "sigma1": vs.format_vertices(s1).replace(" ", ","),
                "sigma2": vs.format_vertices(s2).replace(" ", ","),
            }
            yield params, (lambda a=s1, b=s2: connected_sum(K1, K2, a, b))


@dataclass
class Search:
    runner: HHRunner
    emit_dir: Path | None = None

    def run(self, family: str, instances: Iterator[Instance]) -> Iterator[SearchResult]:
        for params, build in instances:
            m = 0
            try:
                K = build()
                m = K.m
                rank = self.runner.compute(K).hh.total_rank
            except HHCalcError as exc:
                logger.error("%s %s: %s", family, params, exc)
                yield SearchResult(family, params, m, None, error=str(exc).splitlines()[0])
                continue
            result = SearchResult(family, params, m, rank)
            if result.exotic and self.emit_dir is not None:
                self.emit(result, K)
            yield result

    def emit(self, result: SearchResult, K: SimplicialComplex) -> Path:
        self.emit_dir.mkdir(parents=True, exist_ok=True)
        path = self.emit_dir / f"{result.label}.facets"
        path.write_text(f"# {result.family} rank {result.rank}\n" + format_complex(K, header=True), encoding="utf-8")
        logger.info("wrote exotic complex %s", path)
        return path
