"""Vertex sets as machine-word bitmasks.

Vertex ``v`` (1-based, as in all I/O) lives in bit ``v - 1``. Faces, subset
indices ``J`` and simplices all share this representation.
"""
from __future__ import annotations

from typing import Iterable, Iterator, TypeAlias

VertexSet: TypeAlias = int

MAX_VERTICES = 63


def vset(*vertices: int) -> VertexSet:
    """Bitmask of 1-based vertex labels: ``vset(1, 3) == 0b101``."""
    return from_vertices(vertices)


def from_vertices(vertices: Iterable[int]) -> VertexSet:
    mask = 0
    for v in vertices:
        if v < 1 or v > MAX_VERTICES:
            raise ValueError(f"vertex label {v} outside 1..{MAX_VERTICES}")
        mask |= 1 << (v - 1)
    return mask


def from_bits(bits: Iterable[int]) -> VertexSet:
    mask = 0
    for b in bits:
        mask |= 1 << b
    return mask


def bits(mask: VertexSet) -> Iterator[int]:
    """0-based bit indices of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_vertices(mask: VertexSet) -> tuple[int, ...]:
    return tuple(b + 1 for b in bits(mask))


def size(mask: VertexSet) -> int:
    return mask.bit_count()


def full(m: int) -> VertexSet:
    return (1 << m) - 1


def count_below(mask: VertexSet, bit: int) -> int:
    """Number of elements of ``mask`` strictly below ``bit``."""
    return (mask & ((1 << bit) - 1)).bit_count()


def submasks(mask: VertexSet) -> Iterator[VertexSet]:
    """All submasks of ``mask``, ``mask`` itself first and ``0`` last."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def lex_key(mask: VertexSet) -> tuple[int, ...]:
    return tuple(bits(mask))


def format_vertices(mask: VertexSet) -> str:
    return " ".join(str(v) for v in to_vertices(mask))
