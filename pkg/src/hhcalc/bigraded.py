"""Bigraded tables: Hochster's decomposition, the CH cochain complex and HH.

Bidegrees are stored as ``(k, 2l)`` with ``k = j - l <= 0``, i.e. the
cohomological ``(-k, 2l)`` of the moment-angle complex written with a
non-positive first entry. ``j`` is the Hochster stratum
(``H̃_{j-1}(K_J)``, ``|J| = l``).
"""
from __future__ import annotations

import logging
import time
from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Iterator, Mapping, Sequence

from . import vertexset as vs
from .complex import SimplicialComplex
from .errors import CochainError, ComplexError
from .homology import (
    DEFAULT_MAX_M,
    BettiProfile,
    HomologyBasis,
    SubsetPool,
    check_cap,
    face_index,
    profile_from_pool,
)
from .linalg import (
    FieldSpec,
    Matrix,
    Vector,
    add_into,
    rank_of_vectors,
    shift,
    zero_vector,
)
from .vertexset import VertexSet

logger = logging.getLogger(__name__)

Bidegree = tuple[int, int]


class TableKind(str, Enum):
    HOCHSTER = "hochster"
    CH = "ch"
    HH = "hh"


@dataclass(frozen=True)
class BigradedTable:
    """Sparse ``{(k, 2l): dim}`` with nonzero entries only."""

    entries: Mapping[Bidegree, int]
    m: int
    field: str
    complex_hash: str
    kind: TableKind = TableKind.HH

    def __post_init__(self) -> None:
        clean = {}
        for (k, two_l), d in self.entries.items():
            if d < 0:
                raise ValueError(f"negative dimension {d} at ({k}, {two_l})")
            if two_l % 2 or k > 0:
                raise ValueError(f"({k}, {two_l}) is not a valid bidegree")
            if d:
                clean[(k, two_l)] = d
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_jl(cls, jl: Mapping[tuple[int, int], int], **meta) -> "BigradedTable":
        return cls(entries={(j - l, 2 * l): d for (j, l), d in jl.items()}, **meta)

    def dim(self, k: int, two_l: int) -> int:
        return self.entries.get((k, two_l), 0)

    def dim_jl(self, j: int, l: int) -> int:
        return self.entries.get((j - l, 2 * l), 0)

    @property
    def total_rank(self) -> int:
        return sum(self.entries.values())

    def as_jl(self) -> dict[tuple[int, int], int]:
        return {(k + two_l // 2, two_l // 2): d for (k, two_l), d in self.entries.items()}

    def rows(self) -> list[tuple[int, int, int]]:
        """``(k, l, dim)`` sorted by ``l`` then ``k``."""
        return sorted(((k, two_l // 2, d) for (k, two_l), d in self.entries.items()), key=lambda r: (r[1], r[0]))


def epsilon(J: VertexSet, x: int) -> int:
    """``(-1)^{#{y in J : y < x}}``; ``x`` is 1-based and must lie outside ``J``."""
    bit = x - 1
    if J >> bit & 1:
        raise ComplexError(f"vertex {x} lies in J")
    return -1 if vs.count_below(J, bit) % 2 else 1


def _sign(J: VertexSet, bit: int) -> int:
    return -1 if vs.count_below(J, bit) % 2 else 1


def _support(profile: BettiProfile) -> dict[int, dict[int, list[VertexSet]]]:
    """``support[j][l]`` = subsets ``J`` with ``|J| = l`` and ``H̃_{j-1}(K_J) != 0``."""
    out: dict[int, dict[int, list[VertexSet]]] = defaultdict(lambda: defaultdict(list))
    for (J, degree), _ in sorted(profile.items(), key=lambda kv: kv[0][0]):
        out[degree + 1][J.bit_count()].append(J)
    return out


def hochster_from_profile(profile: BettiProfile, K: SimplicialComplex, field: FieldSpec) -> BigradedTable:
    entries: dict[Bidegree, int] = defaultdict(int)
    for (J, degree), d in profile.items():
        l = J.bit_count()
        entries[(degree + 1 - l, 2 * l)] += d
    return BigradedTable(entries, m=K.m, field=field.label, complex_hash=K.hash, kind=TableKind.HOCHSTER)


def hochster_table(
    K: SimplicialComplex,
    field: FieldSpec,
    *,
    jobs: int = 1,
    max_m: int = DEFAULT_MAX_M,
    chunksize: int = 64,
) -> BigradedTable:
    """``dim H^{-k,2l}(Z_K)`` via Hochster's formula."""
    check_cap(K, max_m)
    with SubsetPool(face_index(K), field, jobs=jobs, chunksize=chunksize) as pool:
        profile = profile_from_pool(pool, K.m)
    return hochster_from_profile(profile, K, field)


# -- differentials -----------------------------------------------------------


def _differential_columns(
    field: FieldSpec, m: int, src: Sequence[HomologyBasis], dst: Sequence[HomologyBasis]
) -> tuple[list[Vector], int]:
    """Columns of ``d: CH^l -> CH^{l+1}`` restricted to the given blocks."""
    offsets: dict[VertexSet, tuple[int, HomologyBasis]] = {}
    nrows = 0
    for b in dst:
        offsets[b.subset] = (nrows, b)
        nrows += b.dim
    columns: list[Vector] = []
    for b in src:
        J = b.subset
        cols = [zero_vector(field) for _ in range(b.dim)]
        for x in range(m):
            if J >> x & 1:
                continue
            hit = offsets.get(J | 1 << x)
            if hit is None:
                continue
            off, target = hit
            sign = 1 if field.is_gf2 else _sign(J, x)
            for a, rep in enumerate(b.representatives):
                cols[a] = add_into(field, cols[a], shift(field, target.decompose_vector(rep), off), sign)
        columns.extend(cols)
    return columns, nrows


def _compose(field: FieldSpec, outer: Sequence[Vector], vec: Vector) -> Vector:
    acc = zero_vector(field)
    if field.is_gf2:
        for i in vs.bits(vec):
            acc ^= outer[i]
    else:
        for i, c in vec.items():
            acc = add_into(field, acc, outer[i], c)
    return acc


@dataclass
class _Level:
    l: int
    blocks: list[HomologyBasis]
    columns: list[Vector]
    nrows: int

    @property
    def dim(self) -> int:
        return sum(b.dim for b in self.blocks)


def _stratum_levels(
    pool: SubsetPool, m: int, j: int, support: Mapping[int, Sequence[VertexSet]], *, lmin: int = 0, lmax: int | None = None
) -> Iterator[_Level]:
    """Walk ``l`` upward holding only the bases of levels ``l`` and ``l+1``."""
    lmax = m if lmax is None else lmax
    degree = j - 1
    current = pool.bases(list(support.get(lmin, ())), degree)
    for l in range(lmin, lmax + 1):
        nxt = pool.bases(list(support.get(l + 1, ())), degree) if l < lmax else []
        columns, nrows = _differential_columns(pool.field, m, current, nxt)
        yield _Level(l, current, columns, nrows)
        current = nxt


@dataclass
class ChStratum:
    """``CH_j^*`` with explicit block bases and differentials.

    ``differentials[l]`` maps level ``l`` to level ``l+1`` (rows are
    ``l+1`` coordinates). Blocks for subsets with zero homology are omitted.
    """

    j: int
    field: FieldSpec
    blocks: dict[int, list[HomologyBasis]]
    differentials: dict[int, Matrix]

    def dims(self) -> dict[int, int]:
        return {l: sum(b.dim for b in bl) for l, bl in self.blocks.items()}

    def check_cochain(self) -> None:
        for l in sorted(self.differentials):
            nxt = self.differentials.get(l + 1)
            if nxt is None:
                continue
            if not (nxt @ self.differentials[l]).is_zero():
                raise CochainError(f"d∘d != 0 on CH_{self.j} at level {l}")


def build_ch_stratum(
    K: SimplicialComplex,
    j: int,
    field: FieldSpec,
    *,
    profile: BettiProfile | None = None,
    jobs: int = 1,
    max_m: int = DEFAULT_MAX_M,
) -> ChStratum:
    check_cap(K, max_m)
    index = face_index(K)
    with SubsetPool(index, field, jobs=jobs) as pool:
        if profile is None:
            profile = profile_from_pool(pool, K.m)
        support = _support(profile).get(j, {})
        blocks: dict[int, list[HomologyBasis]] = {}
        differentials: dict[int, Matrix] = {}
        for level in _stratum_levels(pool, K.m, j, support):
            blocks[level.l] = level.blocks
            if level.l < K.m:
                differentials[level.l] = Matrix.from_columns(field, level.nrows, level.columns)
    stratum = ChStratum(j=j, field=field, blocks=blocks, differentials=differentials)
    stratum.check_cochain()
    return stratum


# -- double homology ---------------------------------------------------------


@dataclass
class DoubleHomology:
    """Everything a run produces; ``ch_dims`` / ``ranks`` are keyed ``[j][l]``."""

    K: SimplicialComplex
    field: FieldSpec
    hochster: BigradedTable
    hh: BigradedTable
    profile: BettiProfile
    ch_dims: dict[int, dict[int, int]]
    ranks: dict[int, dict[int, int]]
    timings: dict[str, float] = dc_field(default_factory=dict)


def hh_from_ranks(
    K: SimplicialComplex,
    field: FieldSpec,
    ch_dims: Mapping[int, Mapping[int, int]],
    ranks: Mapping[int, Mapping[int, int]],
) -> BigradedTable:
    """``HH_j^l = dim CH_j^l - rank d^l - rank d^{l-1}``."""
    jl: dict[tuple[int, int], int] = {}
    for j, dims in ch_dims.items():
        r = ranks.get(j, {})
        for l, c in dims.items():
            h = c - r.get(l, 0) - r.get(l - 1, 0)
            if h < 0:
                raise CochainError(f"negative HH dimension at j={j}, l={l}")
            if h:
                jl[(j, l)] = h
    return BigradedTable.from_jl(jl, m=K.m, field=field.label, complex_hash=K.hash, kind=TableKind.HH)


def compute_double_homology(
    K: SimplicialComplex,
    field: FieldSpec,
    *,
    jobs: int = 1,
    max_m: int = DEFAULT_MAX_M,
    chunksize: int = 64,
    profile: BettiProfile | None = None,
    check_cochain: bool = False,
) -> DoubleHomology:
    """Hochster table, CH dimensions, differential ranks and HH in one pass."""
    check_cap(K, max_m)
    index = face_index(K)
    timings: dict[str, float] = {}
    with SubsetPool(index, field, jobs=jobs, chunksize=chunksize) as pool:
        start = time.perf_counter()
        if profile is None:
            profile = profile_from_pool(pool, K.m)
        timings["homology"] = time.perf_counter() - start

        start = time.perf_counter()
        ch_dims: dict[int, dict[int, int]] = {}
        ranks: dict[int, dict[int, int]] = {}
        for j, support in sorted(_support(profile).items()):
            lmin, lmax = min(support), max(support)
            dims: dict[int, int] = {}
            rks: dict[int, int] = {}
            previous: list[Vector] | None = None
            for level in _stratum_levels(pool, K.m, j, support, lmin=lmin, lmax=lmax):
                dims[level.l] = level.dim
                rks[level.l] = rank_of_vectors(field, level.columns) if level.nrows else 0
                if check_cochain and previous is not None:
                    for col in previous:
                        if _compose(field, level.columns, col):
                            raise CochainError(f"d∘d != 0 on CH_{j} at level {level.l - 1}")
                previous = level.columns
            ch_dims[j] = {l: d for l, d in dims.items() if d}
            ranks[j] = {l: r for l, r in rks.items() if r}
            logger.debug("stratum j=%d: CH dims %s, ranks %s", j, ch_dims[j], ranks[j])
        timings["differentials"] = time.perf_counter() - start

    hh = hh_from_ranks(K, field, ch_dims, ranks)
    logger.info("HH of %s over %s: total rank %d", K.hash[:12], field, hh.total_rank)
    return DoubleHomology(
        K=K,
        field=field,
        hochster=hochster_from_profile(profile, K, field),
        hh=hh,
        profile=profile,
        ch_dims=ch_dims,
        ranks=ranks,
        timings=timings,
    )


def hh_table(K: SimplicialComplex, field: FieldSpec, **options) -> BigradedTable:
    return compute_double_homology(K, field, **options).hh


def hh_total_rank(K: SimplicialComplex, field: FieldSpec, **options) -> int:
    return hh_table(K, field, **options).total_rank


def join_convolution(T1: BigradedTable, T2: BigradedTable) -> dict[Bidegree, int]:
    """Künneth product ``Σ T1(a) · T2(b)`` at ``a + b``."""
    out: dict[Bidegree, int] = defaultdict(int)
    for (k1, l1), d1 in T1.entries.items():
        for (k2, l2), d2 in T2.entries.items():
            out[(k1 + k2, l1 + l2)] += d1 * d2
    return dict(out)
