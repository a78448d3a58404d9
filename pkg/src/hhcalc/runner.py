from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from pathlib import Path

from .bigraded import DoubleHomology, compute_double_homology, hh_from_ranks, hochster_from_profile
from .cache import CacheEntry, ResultCache
from .complex import SimplicialComplex
from .config import EngineConfig
from .document import ResultDocument
from .facet_reader import read_complex
from .homology import check_cap
from .linalg import FieldSpec

logger = logging.getLogger(__name__)


@dataclass
class HHRunner:
    """Computes double homology for one complex, going through the cache when configured."""

    cfg: EngineConfig
    field: FieldSpec

    @classmethod
    def from_config(cls, cfg: EngineConfig) -> "HHRunner":
        return cls(cfg=cfg, field=FieldSpec.parse(cfg.coeff))

    @property
    def cache(self) -> ResultCache | None:
        return ResultCache(self.cfg.cache_dir) if self.cfg.cache_dir else None

    def compute(self, K: SimplicialComplex) -> DoubleHomology:
        check_cap(K, self.cfg.max_m)
        cache = self.cache
        entry = cache.get(K.hash, self.field) if cache else None

        if entry is not None and entry.complete and not self.cfg.check_cochain:
            start = time.perf_counter()
            hh = hh_from_ranks(K, self.field, entry.ch_dims, entry.ranks)
            elapsed = time.perf_counter() - start
            return DoubleHomology(
                K=K,
                field=self.field,
                hochster=hochster_from_profile(entry.profile, K, self.field),
                hh=hh,
                profile=entry.profile,
                ch_dims=entry.ch_dims,
                ranks=entry.ranks,
                timings={"homology": 0.0, "differentials": elapsed},
            )

        result = compute_double_homology(
            K,
            self.field,
            jobs=self.cfg.jobs,
            max_m=self.cfg.max_m,
            chunksize=self.cfg.chunksize,
            profile=entry.profile if entry is not None else None,
            check_cochain=self.cfg.check_cochain,
        )
        if cache is not None:
            cache.put(K.hash, self.field, CacheEntry(result.profile, result.ch_dims, result.ranks))
        return result

    def document(self, K: SimplicialComplex, with_timings: bool = False) -> ResultDocument:
        return ResultDocument.from_result(self.compute(K), with_timings=with_timings)

    def run_file(self, path: Path | None, with_timings: bool = False) -> ResultDocument:
        K = read_complex(path)
        logger.info("read complex m=%d dim=%d facets=%d", K.m, K.dim, len(K.facets))
        return self.document(K, with_timings=with_timings)
