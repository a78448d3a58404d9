"""On-disk cache of Betti profiles and per-stratum differential ranks.

One file per (complex hash, field): ``<hash>.<field>.cache`` holding JSON.
Anything unreadable is logged and treated as a miss.
"""
from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .homology import BettiProfile
from .linalg import FieldSpec

logger = logging.getLogger(__name__)

CACHE_VERSION = 1


@dataclass
class CacheEntry:
    profile: BettiProfile
    ch_dims: dict[int, dict[int, int]] | None = None
    ranks: dict[int, dict[int, int]] | None = None

    @property
    def complete(self) -> bool:
        return self.ch_dims is not None and self.ranks is not None


def _encode_strata(strata: dict[int, dict[int, int]]) -> dict[str, dict[str, int]]:
    return {str(j): {str(l): v for l, v in sorted(row.items())} for j, row in sorted(strata.items())}


def _decode_strata(data: Any) -> dict[int, dict[int, int]]:
    if not isinstance(data, dict) or not all(isinstance(row, dict) for row in data.values()):
        raise ValueError("strata must map j to {l: value}")
    return {int(j): {int(l): int(v) for l, v in row.items()} for j, row in data.items()}


@dataclass
class ResultCache:
    root: Path

    def path_for(self, complex_hash: str, field: FieldSpec) -> Path:
        return self.root / f"{complex_hash}.{field.label.replace(':', '-')}.cache"

    def get(self, complex_hash: str, field: FieldSpec) -> CacheEntry | None:
        path = self.path_for(complex_hash, field)
        if not path.exists():
            return None
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            if not isinstance(data, dict):
                raise ValueError("top level is not an object")
            if data.get("version") != CACHE_VERSION or data.get("hash") != complex_hash or data.get("field") != field.label:
                raise ValueError("header does not match")
            profile = {(int(J), int(d)): int(v) for J, d, v in data["profile"]}
            ch_dims = _decode_strata(data["ch_dims"]) if data.get("ch_dims") is not None else None
            ranks = _decode_strata(data["ranks"]) if data.get("ranks") is not None else None
        except (OSError, ValueError, KeyError, TypeError) as exc:
            logger.warning("ignoring corrupt cache entry %s (%s); recomputing", path, exc)
            return None
        logger.debug("cache hit %s", path)
        return CacheEntry(profile=profile, ch_dims=ch_dims, ranks=ranks)

    def put(self, complex_hash: str, field: FieldSpec, entry: CacheEntry) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self.path_for(complex_hash, field)
        payload = {
            "version": CACHE_VERSION,
            "hash": complex_hash,
            "field": field.label,
            "profile": [[J, d, v] for (J, d), v in sorted(entry.profile.items())],
            "ch_dims": _encode_strata(entry.ch_dims) if entry.ch_dims is not None else None,
            "ranks": _encode_strata(entry.ranks) if entry.ranks is not None else None,
        }
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload), encoding="utf-8")
        os.replace(tmp, path)
        logger.debug("cache write %s", path)
        return path


def cache_get(root: Path, complex_hash: str, field: FieldSpec) -> CacheEntry | None:
    return ResultCache(Path(root)).get(complex_hash, field)


def cache_put(root: Path, complex_hash: str, field: FieldSpec, entry: CacheEntry) -> Path:
    return ResultCache(Path(root)).put(complex_hash, field, entry)
