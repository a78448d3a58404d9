"""Reduced homology of full subcomplexes with explicit cycle representatives.

All chains are written in *global* coordinates: a degree-``d`` chain of
``K_J`` is a vector indexed by the degree-``d`` faces of ``K`` in
lexicographic order. A cycle of ``K_J`` is therefore verbatim a cycle of
``K_{J ∪ {x}}``, which is all the inclusion-induced map needs.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Sequence

from . import vertexset as vs
from .complex import SimplicialComplex
from .errors import CapExceededError, CochainError, ComplexError
from .linalg import (
    FieldSpec,
    Matrix,
    Reducer,
    Scalar,
    Vector,
    make_reducer,
    rank_of_vectors,
    scale,
    to_dense,
    unit_vector,
    zero_vector,
)
from .vertexset import VertexSet

logger = logging.getLogger(__name__)

DEFAULT_MAX_M = 26


@dataclass(frozen=True)
class ChainBasis:
    degree: int
    simplices: tuple[VertexSet, ...]


@dataclass
class HomologyBasis:
    """Basis of ``H̃_degree(K_subset; field)``.

    ``representatives`` are cycles in global face coordinates;
    ``decomposer`` is the echelon basis of (boundaries | representatives)
    whose tracks live in homology coordinates.
    """

    subset: VertexSet
    degree: int
    field: FieldSpec
    chains: ChainBasis
    representatives: list[Vector] = dc_field(default_factory=list)
    decomposer: Reducer | None = None

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def decompose_vector(self, cycle: Vector) -> Vector:
        """Coordinates of ``cycle`` modulo boundaries, as a packed / sparse vector."""
        if self.decomposer is None:
            if cycle:
                raise CochainError(f"nonzero chain in degree {self.degree} of an empty chain group")
            return zero_vector(self.field)
        rem, track = self.decomposer.reduce(cycle, zero_vector(self.field))
        if rem:
            raise CochainError(
                f"chain is not a cycle of K_J modulo boundaries "
                f"(J={{{vs.format_vertices(self.subset)}}}, degree {self.degree})"
            )
        if self.field.is_gf2:
            return track
        return scale(self.field, track, self.field.neg(self.field.one))

    def decompose(self, cycle: Vector) -> list[Scalar]:
        return to_dense(self.field, self.decompose_vector(cycle), self.dim)


class FaceIndex:
    """All faces of ``K`` grouped by degree, with signed boundaries.

    ``faces[d + 1]`` holds the degree-``d`` faces (``d = -1`` is the empty
    face) in lexicographic order of their vertex tuples.
    """

    def __init__(self, K: SimplicialComplex) -> None:
        self.m = K.m
        self.dim = K.dim
        groups: list[list[VertexSet]] = [[] for _ in range(self.dim + 2)]
        for f in K.faces:
            groups[f.bit_count()].append(f)
        self.faces: tuple[tuple[VertexSet, ...], ...] = tuple(
            tuple(sorted(g, key=vs.lex_key)) for g in groups
        )
        self.position: tuple[dict[VertexSet, int], ...] = tuple(
            {f: i for i, f in enumerate(g)} for g in self.faces
        )
        # signed[d][i]: ((index of facet in degree d-1, ±1), ...) for the i-th degree-d face
        self._signed: list[list[tuple[tuple[int, int], ...]]] = []
        for d in range(self.dim + 1):
            below = self.position[d]
            self._signed.append([
                tuple((below[f & ~(1 << b)], -1 if i % 2 else 1) for i, b in enumerate(vs.bits(f)))
                for f in self.faces[d + 1]
            ])
        self._boundaries: dict[FieldSpec, list[list[Vector]]] = {}

    def boundaries(self, field: FieldSpec) -> list[list[Vector]]:
        """``boundaries(field)[d][i]`` = ∂ of the i-th degree-``d`` face."""
        cached = self._boundaries.get(field)
        if cached is not None:
            return cached
        out: list[list[Vector]] = []
        for signed in self._signed:
            if field.is_gf2:
                out.append([vs.from_bits(i for i, _ in terms) for terms in signed])
            else:
                out.append([{i: field.coerce(s) for i, s in terms} for terms in signed])
        self._boundaries[field] = out
        return out

    def members(self, J: VertexSet, degree: int) -> list[int]:
        """Indices of degree-``degree`` faces lying in ``K_J``."""
        if degree < -1 or degree > self.dim:
            return []
        outside = ~J
        return [i for i, f in enumerate(self.faces[degree + 1]) if not f & outside]

    def chain_basis(self, J: VertexSet, degree: int) -> ChainBasis:
        group = self.faces[degree + 1] if -1 <= degree <= self.dim else ()
        return ChainBasis(degree, tuple(group[i] for i in self.members(J, degree)))

    def betti_numbers(self, J: VertexSet, field: FieldSpec) -> tuple[int, ...]:
        """``dim H̃_d(K_J)`` for ``d = -1 .. dim K``."""
        bnd = self.boundaries(field)
        sizes, ranks = [1], [0]
        for d in range(self.dim + 1):
            members = self.members(J, d)
            if not members:
                break
            sizes.append(len(members))
            ranks.append(rank_of_vectors(field, [bnd[d][i] for i in members]))
        ranks.append(0)
        betti = [sizes[i] - ranks[i] - ranks[i + 1] for i in range(len(sizes))]
        return tuple(betti + [0] * (self.dim + 2 - len(betti)))

    def cycles(self, J: VertexSet, degree: int, field: FieldSpec) -> list[Vector]:
        """A basis of ``ker ∂_degree`` on ``K_J``."""
        members = self.members(J, degree)
        if degree == -1:
            return [unit_vector(field, i) for i in members]
        bnd = self.boundaries(field)[degree]
        red = make_reducer(field)
        out = []
        for i in members:
            inserted, _, track = red.insert(bnd[i], unit_vector(field, i))
            if not inserted:
                out.append(track)
        return out

    def homology_basis(self, J: VertexSet, degree: int, field: FieldSpec) -> HomologyBasis:
        chains = self.chain_basis(J, degree)
        basis = HomologyBasis(subset=J, degree=degree, field=field, chains=chains)
        if not chains.simplices:
            return basis
        red = make_reducer(field)
        if degree + 1 <= self.dim:
            bnd = self.boundaries(field)[degree + 1]
            for i in self.members(J, degree + 1):
                red.insert(bnd[i], zero_vector(field))
        for z in self.cycles(J, degree, field):
            inserted, _, _ = red.insert(z, unit_vector(field, len(basis.representatives)))
            if inserted:
                basis.representatives.append(z)
        basis.decomposer = red
        return basis


@lru_cache(maxsize=32)
def face_index(K: SimplicialComplex) -> FaceIndex:
    return FaceIndex(K)


def check_cap(K: SimplicialComplex, max_m: int) -> None:
    if K.m > max_m:
        raise CapExceededError(K.m, max_m)


def reduced_homology(K: SimplicialComplex, J: VertexSet, degree: int, field: FieldSpec) -> HomologyBasis:
    if J >> K.m:
        raise ComplexError(f"J uses a vertex above m={K.m}")
    return face_index(K).homology_basis(J, degree, field)


def induced_map(
    K: SimplicialComplex,
    J: VertexSet,
    x: int,
    degree: int,
    field: FieldSpec,
    src: HomologyBasis,
    dst: HomologyBasis,
) -> Matrix:
    """Matrix of ``Φ_{J,x;degree}: H̃(K_J) → H̃(K_{J∪{x}})``; ``x`` is 1-based."""
    bit = 1 << (x - 1)
    if J & bit:
        raise ComplexError(f"vertex {x} already lies in J")
    if src.subset != J or dst.subset != J | bit or src.degree != degree or dst.degree != degree:
        raise ComplexError("homology bases do not match (J, x, degree)")
    columns = [dst.decompose_vector(r) for r in src.representatives]
    return Matrix.from_columns(field, dst.dim, columns)


# -- bulk driver -------------------------------------------------------------

_WORKER_STATE: tuple[FaceIndex, FieldSpec] | None = None


def _init_worker(index: FaceIndex, field: FieldSpec) -> None:
    global _WORKER_STATE
    _WORKER_STATE = (index, field)


def _betti_task(J: VertexSet) -> tuple[int, ...]:
    index, field = _WORKER_STATE
    return index.betti_numbers(J, field)


def _basis_task(arg: tuple[VertexSet, int]) -> HomologyBasis:
    index, field = _WORKER_STATE
    return index.homology_basis(arg[0], arg[1], field)


class SubsetPool:
    """Runs per-subset homology tasks, optionally on worker processes.

    Results always come back in submission order, so assembly is identical
    for every ``jobs`` value.
    """

    def __init__(self, index: FaceIndex, field: FieldSpec, jobs: int = 1, chunksize: int = 64) -> None:
        self.index = index
        self.field = field
        self.jobs = max(1, jobs)
        self.chunksize = max(1, chunksize)
        self._executor: ProcessPoolExecutor | None = None

    def __enter__(self) -> "SubsetPool":
        if self.jobs > 1:
            self._executor = ProcessPoolExecutor(
                max_workers=self.jobs, initializer=_init_worker, initargs=(self.index, self.field)
            )
        return self

    def __exit__(self, *exc) -> None:
        if self._executor is not None:
            self._executor.shutdown()
            self._executor = None

    def betti(self, subsets: Sequence[VertexSet]) -> list[tuple[int, ...]]:
        if self._executor is None:
            return [self.index.betti_numbers(J, self.field) for J in subsets]
        return list(self._executor.map(_betti_task, subsets, chunksize=self.chunksize))

    def bases(self, subsets: Sequence[VertexSet], degree: int) -> list[HomologyBasis]:
        if self._executor is None or len(subsets) < 2 * self.jobs:
            return [self.index.homology_basis(J, degree, self.field) for J in subsets]
        chunk = max(1, min(self.chunksize, len(subsets) // self.jobs))
        return list(self._executor.map(_basis_task, [(J, degree) for J in subsets], chunksize=chunk))


BettiProfile = dict[tuple[VertexSet, int], int]


def profile_from_pool(pool: SubsetPool, m: int) -> BettiProfile:
    profile: BettiProfile = {}
    subsets = range(1 << m)
    for J, betti in zip(subsets, pool.betti(subsets)):
        for d, b in enumerate(betti, start=-1):
            if b:
                profile[(J, d)] = b
    return profile


def betti_profile(
    K: SimplicialComplex,
    field: FieldSpec,
    *,
    jobs: int = 1,
    max_m: int = DEFAULT_MAX_M,
    chunksize: int = 64,
) -> BettiProfile:
    """Nonzero reduced Betti numbers of every full subcomplex, keyed by ``(J, degree)``."""
    check_cap(K, max_m)
    index = face_index(K)
    with SubsetPool(index, field, jobs=jobs, chunksize=chunksize) as pool:
        profile = profile_from_pool(pool, K.m)
    logger.debug("betti profile of %s over %s: %d nonzero entries", K.hash[:12], field, len(profile))
    return profile


def reduced_betti(K: SimplicialComplex, field: FieldSpec, J: VertexSet | None = None) -> tuple[int, ...]:
    """``dim H̃_d(K_J)`` for ``d = -1 .. dim K``; the whole complex by default."""
    return face_index(K).betti_numbers(vs.full(K.m) if J is None else J, field)


def euler_characteristic(K: SimplicialComplex, J: Iterable[int] | VertexSet | None = None) -> int:
    """``Σ (-1)^k f_k(K_J)`` over nonempty faces."""
    index = face_index(K)
    if J is None:
        mask = vs.full(K.m)
    else:
        mask = J if isinstance(J, int) else vs.from_vertices(J)
    return sum((-1) ** d * len(index.members(mask, d)) for d in range(index.dim + 1))
