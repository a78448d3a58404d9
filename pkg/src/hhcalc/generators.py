"""Families of sphere triangulations and other test complexes."""
from __future__ import annotations

from itertools import combinations
from typing import Iterable

from . import vertexset as vs
from .complex import SimplicialComplex, join
from .errors import ComplexError

# Planar diagram of the icosahedron: apex 1, upper pentagon 2..6, lower
# pentagon 7..11, apex 12.
ICOSAHEDRON_FACETS: tuple[tuple[int, int, int], ...] = (
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 7), (3, 4, 8), (4, 5, 9), (5, 6, 10), (2, 6, 11),
    (3, 7, 8), (4, 8, 9), (5, 9, 10), (6, 10, 11), (2, 7, 11),
    (7, 8, 12), (8, 9, 12), (9, 10, 12), (10, 11, 12), (7, 11, 12),
)


def gen_cycle(m: int) -> SimplicialComplex:
    """The ``m``-gon ``C_m``."""
    if m < 3:
        raise ComplexError("a cycle needs m >= 3")
    return SimplicialComplex.from_vertex_lists(((i, i % m + 1) for i in range(1, m + 1)), m=m)


def gen_simplex(m: int) -> SimplicialComplex:
    """The full simplex ``Δ^{m-1}`` on ``[m]``."""
    if m < 1:
        raise ComplexError("a simplex needs m >= 1")
    return SimplicialComplex.from_facets([vs.full(m)], m=m)


def gen_simplex_boundary(n: int) -> SimplicialComplex:
    """``∂Δ^n``: all ``n``-subsets of ``[n+1]``."""
    if n < 1:
        raise ComplexError("simplex boundary needs n >= 1")
    return SimplicialComplex.from_facets(
        (vs.from_bits(c) for c in combinations(range(n + 1), n)), m=n + 1
    )


def gen_sphere0() -> SimplicialComplex:
    return gen_simplex_boundary(1)


def gen_octahedron() -> SimplicialComplex:
    """``(S⁰)^{*3}``; antipodal pairs are {1,2}, {3,4}, {5,6}."""
    s0 = gen_sphere0()
    return join(s0, join(s0, s0))


def gen_icosahedron() -> SimplicialComplex:
    return SimplicialComplex.from_vertex_lists(ICOSAHEDRON_FACETS, m=12)


def gen_bicapped_antiprism(n: int, h: int) -> SimplicialComplex:
    """Tower of ``h`` stacked ``n``-antiprisms capped by two apexes.

    Vertex 1 is the apex ``u`` over ring ``c^0``; ring ``c^r`` holds
    ``2 + r*n .. 1 + (r+1)*n``; the last vertex is the apex ``v`` under
    ring ``c^h``. ``(5, 1)`` reproduces :func:`gen_icosahedron` exactly.
    """
    if n < 3:
        raise ComplexError("antiprism needs n >= 3")
    if h < 1:
        raise ComplexError("antiprism tower needs h >= 1")

    def c(r: int, i: int) -> int:
        return 2 + r * n + i % n

    u, v = 1, n * (h + 1) + 2
    facets: list[tuple[int, ...]] = []
    for i in range(n):
        facets.append((u, c(0, i), c(0, i + 1)))
        facets.append((v, c(h, i), c(h, i + 1)))
        for r in range(h):
            facets.append((c(r, i), c(r, i + 1), c(r + 1, i)))
            facets.append((c(r + 1, i), c(r + 1, i + 1), c(r, i + 1)))
    return SimplicialComplex.from_vertex_lists(facets, m=v)


def gen_augmented_icosahedron(facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Accept a user-supplied facet list for the augmented icosahedron.

    The construction itself is not reproduced here; the list is only
    checked to be a 2-sphere of minimal degree 5.
    """
    from .complex import min_degree
    from .predicates import is_sphere_proxy

    K = SimplicialComplex.from_vertex_lists(facets)
    ok, dim = is_sphere_proxy(K)
    if not ok or dim != 2:
        raise ComplexError("augmented icosahedron facets must form a 2-sphere triangulation")
    if min_degree(K) != 5:
        raise ComplexError(f"augmented icosahedron must have minimal degree 5, got {min_degree(K)}")
    return K
