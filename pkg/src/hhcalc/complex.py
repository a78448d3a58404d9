"""Canonical simplicial complexes on ``[m]`` and their constructions."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

from . import vertexset as vs
from .errors import ComplexError
from .vertexset import VertexSet


def _canonical_facets(faces: Iterable[VertexSet]) -> tuple[VertexSet, ...]:
    # Largest first so every face is only compared against possible supersets.
    candidates = sorted(set(faces), key=lambda f: (-f.bit_count(), f))
    kept: list[VertexSet] = []
    for f in candidates:
        if not any(f & ~g == 0 for g in kept):
            kept.append(f)
    return tuple(sorted(kept)) if kept else (0,)


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex given by its inclusion-maximal faces.

    ``facets`` is canonical: deduplicated, maximal, sorted by bitmask value.
    The complex ``{∅}`` is ``m=0, facets=(0,)``. Ghost vertices (bits below
    ``m`` that lie in no facet) are representable because full subcomplexes
    and links keep the ambient vertex set; files and generators never
    produce them.
    """

    m: int
    facets: tuple[VertexSet, ...]

    @classmethod
    def from_facets(cls, facets: Iterable[VertexSet], m: int | None = None) -> "SimplicialComplex":
        canon = _canonical_facets(facets)
        support = 0
        for f in canon:
            support |= f
        if m is None:
            m = support.bit_length()
        if m > vs.MAX_VERTICES:
            raise ComplexError(f"m={m} exceeds the {vs.MAX_VERTICES}-vertex capacity of a VertexSet")
        if support >> m:
            raise ComplexError(f"facet uses a vertex above m={m}")
        return cls(m=m, facets=canon)

    @classmethod
    def from_vertex_lists(cls, facets: Iterable[Iterable[int]], m: int | None = None) -> "SimplicialComplex":
        """Build from 1-based vertex lists, e.g. ``[[1, 2], [2, 3]]``."""
        return cls.from_facets((vs.from_vertices(f) for f in facets), m=m)

    # -- basic data ------------------------------------------------------

    @cached_property
    def vertex_mask(self) -> VertexSet:
        mask = 0
        for f in self.facets:
            mask |= f
        return mask

    @property
    def ghost_vertices(self) -> tuple[int, ...]:
        return vs.to_vertices(vs.full(self.m) & ~self.vertex_mask)

    @property
    def dim(self) -> int:
        return max(f.bit_count() for f in self.facets) - 1

    @cached_property
    def faces(self) -> frozenset[VertexSet]:
        """Every face, the empty face included."""
        out: set[VertexSet] = set()
        for f in self.facets:
            out.update(vs.submasks(f))
        return frozenset(out)

    def __contains__(self, sigma: VertexSet) -> bool:
        return any(sigma & ~f == 0 for f in self.facets)

    def facet_lists(self) -> list[tuple[int, ...]]:
        return [vs.to_vertices(f) for f in self.facets]

    @cached_property
    def hash(self) -> str:
        return complex_hash(self)

    def __repr__(self) -> str:
        shown = ", ".join("{" + vs.format_vertices(f).replace(" ", ",") + "}" for f in self.facets[:6])
        more = ", ..." if len(self.facets) > 6 else ""
        return f"SimplicialComplex(m={self.m}, facets=[{shown}{more}])"


def complex_hash(K: SimplicialComplex) -> str:
    """SHA-256 of ``(m, sorted facet list)``; no isomorphism collapsing."""
    payload = f"{K.m}:" + ",".join(format(f, "x") for f in K.facets)
    return hashlib.sha256(payload.encode("ascii")).hexdigest()


# -- constructions -------------------------------------------------------


def restrict(K: SimplicialComplex, J: VertexSet) -> SimplicialComplex:
    """Full subcomplex ``K_J``; keeps the ambient ``m`` (use :func:`compact` to relabel)."""
    if J >> K.m:
        raise ComplexError(f"J uses a vertex above m={K.m}")
    return SimplicialComplex.from_facets((f & J for f in K.facets), m=K.m)


def compact(K: SimplicialComplex) -> tuple[SimplicialComplex, dict[int, int]]:
    """Relabel ``K`` onto ``1..|V(K)|`` in ascending order.

    Returns the relabelled complex and the map new label -> old label.
    """
    used = list(vs.bits(K.vertex_mask))
    new_of = {old: new for new, old in enumerate(used)}
    facets = [vs.from_bits(new_of[b] for b in vs.bits(f)) for f in K.facets]
    return (
        SimplicialComplex.from_facets(facets, m=len(used)),
        {new + 1: old + 1 for new, old in enumerate(used)},
    )


def link(K: SimplicialComplex, sigma: VertexSet) -> SimplicialComplex:
    if sigma not in K:
        raise ComplexError(f"{{{vs.format_vertices(sigma)}}} is not a face of the complex")
    return SimplicialComplex.from_facets((f & ~sigma for f in K.facets if sigma & ~f == 0), m=K.m)


def skeleton(K: SimplicialComplex, d: int) -> SimplicialComplex:
    if d < 0:
        raise ComplexError("skeleton dimension must be >= 0")
    out: list[VertexSet] = []
    for f in K.facets:
        if f.bit_count() <= d + 1:
            out.append(f)
        else:
            out.extend(vs.from_bits(c) for c in combinations(vs.bits(f), d + 1))
    return SimplicialComplex.from_facets(out, m=K.m)


def degree(K: SimplicialComplex, x: int) -> int:
    """Number of vertices of ``lk({x})``; ``x`` is 1-based."""
    bit = 1 << (x - 1)
    if not K.vertex_mask & bit:
        raise ComplexError(f"vertex {x} is not in the complex")
    nbrs = 0
    for f in K.facets:
        if f & bit:
            nbrs |= f
    return (nbrs & ~bit).bit_count()


def min_degree(K: SimplicialComplex) -> int:
    return min(degree(K, v) for v in vs.to_vertices(K.vertex_mask))


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """``K1 * K2`` on ``[m1 + m2]`` with ``K2`` shifted by ``m1``."""
    return SimplicialComplex.from_facets(
        (f1 | (f2 << K1.m) for f1 in K1.facets for f2 in K2.facets),
        m=K1.m + K2.m,
    )


def _glue(
    K1: SimplicialComplex,
    K2: SimplicialComplex,
    sigma1: VertexSet,
    sigma2: VertexSet,
    pairing: Mapping[int, int] | None,
) -> tuple[list[VertexSet], int]:
    if sigma1 not in K1.facets or sigma2 not in K2.facets:
        raise ComplexError("connected sum needs a facet of each complex")
    if sigma1.bit_count() != sigma2.bit_count():
        raise ComplexError(
            f"facets {{{vs.format_vertices(sigma1)}}} and {{{vs.format_vertices(sigma2)}}} "
            "have different cardinalities"
        )
    if pairing is None:
        image = dict(zip(vs.bits(sigma2), vs.bits(sigma1)))
    else:
        image = {b2 - 1: b1 - 1 for b2, b1 in pairing.items()}
        if vs.from_bits(image) != sigma2 or vs.from_bits(image.values()) != sigma1:
            raise ComplexError("pairing must be a bijection from the K2 facet onto the K1 facet")
    nxt = K1.m
    for b in range(K2.m):
        if b not in image:
            image[b] = nxt
            nxt += 1
    moved = [vs.from_bits(image[b] for b in vs.bits(f)) for f in K2.facets]
    return list(K1.facets) + moved, nxt


def wedge_sum(
    K1: SimplicialComplex,
    K2: SimplicialComplex,
    sigma1: VertexSet,
    sigma2: VertexSet,
    pairing: Mapping[int, int] | None = None,
) -> SimplicialComplex:
    """``K1 ⊔_σ K2``: identify a facet of each complex and keep it."""
    facets, m = _glue(K1, K2, sigma1, sigma2, pairing)
    return SimplicialComplex.from_facets(facets, m=m)


def connected_sum(
    K1: SimplicialComplex,
    K2: SimplicialComplex,
    sigma1: VertexSet,
    sigma2: VertexSet,
    pairing: Mapping[int, int] | None = None,
) -> SimplicialComplex:
    """``K1 #_σ K2``.

    ``sigma2`` is identified with ``sigma1`` order-preservingly unless
    ``pairing`` (1-based K2 vertex -> K1 vertex) says otherwise; the other
    vertices of ``K2`` follow in ascending order after ``m1``. The shared
    face is deleted.
    """
    facets, m = _glue(K1, K2, sigma1, sigma2, pairing)
    glued = SimplicialComplex.from_facets(facets, m=m)
    return remove_facet(glued, sigma1)


def add_face(K: SimplicialComplex, S: VertexSet) -> SimplicialComplex:
    if S >> K.m:
        raise ComplexError(f"face uses a vertex above m={K.m}")
    if S in K:
        raise ComplexError(f"{{{vs.format_vertices(S)}}} is already a face")
    missing = [b for b in vs.bits(S) if (S & ~(1 << b)) not in K]
    if missing:
        raise ComplexError(
            f"cannot add {{{vs.format_vertices(S)}}}: its boundary is not in the complex "
            f"(missing the face opposite vertex {missing[0] + 1})"
        )
    return SimplicialComplex.from_facets(K.facets + (S,), m=K.m)


def remove_facet(K: SimplicialComplex, sigma: VertexSet) -> SimplicialComplex:
    """``K \\ {σ}``; codimension-one faces of σ not covered elsewhere become facets."""
    if sigma not in K.facets or sigma == 0:
        raise ComplexError(f"{{{vs.format_vertices(sigma)}}} is not a facet")
    rest = [f for f in K.facets if f != sigma]
    rest.extend(sigma & ~(1 << b) for b in vs.bits(sigma))
    return SimplicialComplex.from_facets(rest, m=K.m)
