"""Combinatorial predicates: f-vectors, sphere proxy, neighborliness, primitivity."""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb

import networkx as nx

from . import vertexset as vs
from .complex import SimplicialComplex, add_face
from .errors import ComplexError
from .homology import face_index, reduced_betti
from .linalg import FieldSpec
from .vertexset import VertexSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FVector:
    """``f[i]`` = number of ``i``-simplices, ``i = 0 .. dim``."""

    f: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.f[i] if 0 <= i < len(self.f) else 0

    def __len__(self) -> int:
        return len(self.f)

    def as_list(self) -> list[int]:
        return list(self.f)


def f_vector(K: SimplicialComplex) -> FVector:
    index = face_index(K)
    return FVector(tuple(len(g) for g in index.faces[1:]))


def is_pure(K: SimplicialComplex) -> bool:
    sizes = {f.bit_count() for f in K.facets}
    return len(sizes) == 1


def _ridge_counts(K: SimplicialComplex) -> Counter[VertexSet]:
    counts: Counter[VertexSet] = Counter()
    for f in K.facets:
        for b in vs.bits(f):
            counts[f & ~(1 << b)] += 1
    return counts


def is_pseudomanifold(K: SimplicialComplex) -> bool:
    """Pure, and every codimension-one face lies in exactly two facets."""
    if not is_pure(K) or K.dim < 0:
        return False
    return all(c == 2 for c in _ridge_counts(K).values())


def _facet_graph(facets: list[VertexSet], shared: VertexSet) -> nx.Graph:
    """Facets adjacent when they meet in a vertex outside ``shared``."""
    G = nx.Graph()
    G.add_nodes_from(facets)
    for a, b in combinations(facets, 2):
        if a & b & ~shared:
            G.add_edge(a, b)
    return G


def is_connected(K: SimplicialComplex) -> bool:
    facets = [f for f in K.facets if f]
    if not facets:
        return True
    return nx.is_connected(_facet_graph(facets, 0))


def is_sphere_proxy(K: SimplicialComplex) -> tuple[bool, int]:
    """Pseudomanifold + connectivity + homology of ``S^n`` over ℚ and GF(2).

    Exact for ``n <= 2``; in higher dimensions this accepts homology spheres.
    """
    n = K.dim
    if n < 0 or K.ghost_vertices or not is_pseudomanifold(K):
        return False, n
    if n >= 1 and not is_connected(K):
        return False, n
    expected = tuple(1 if d == n else 0 for d in range(-1, n + 1))
    for field in (FieldSpec.rationals(), FieldSpec.gf2()):
        if reduced_betti(K, field) != expected:
            return False, n
    return True, n


def is_p_neighborly(K: SimplicialComplex, p: int) -> bool:
    """Every ``(p+1)``-subset of ``[m]`` spans a face."""
    if p < 0:
        raise ComplexError("neighborliness order must be >= 0")
    return f_vector(K)[p] == comb(K.m, p + 1)


def max_neighborliness(K: SimplicialComplex) -> int:
    """Largest ``p`` with ``K`` ``p``-neighborly (capped at ``m - 1``); ``-1`` if none."""
    p = -1
    while p + 1 < K.m and is_p_neighborly(K, p + 1):
        p += 1
    return p


def is_neighborly(K: SimplicialComplex) -> bool:
    return is_p_neighborly(K, 1)


def is_simplex_boundary(K: SimplicialComplex) -> bool:
    return K.m == K.dim + 2 and len(K.facets) == K.m and all(f.bit_count() == K.m - 1 for f in K.facets)


def wedge_parts(K: SimplicialComplex, sigma: VertexSet) -> list[list[VertexSet]]:
    """Pieces of the facets other than ``sigma`` whose closures pairwise meet in exactly ``⟨σ⟩``.

    A connected piece whose closure misses ``sigma`` cannot stand alone; it is
    folded into the first piece that does contain ``sigma``. A facet ``sigma``
    belongs to every piece.
    """
    if sigma not in K:
        raise ComplexError(f"{{{vs.format_vertices(sigma)}}} is not a face of the complex")
    facets = [f for f in K.facets if f != sigma]
    if not facets:
        return []
    G = _facet_graph(facets, sigma)
    components = [sorted(c) for c in sorted(nx.connected_components(G), key=min)]
    if sigma in K.facets:
        return components
    covering = [c for c in components if any(sigma & ~f == 0 for f in c)]
    if len(covering) < 2:
        return [sorted(facets)]
    rest = [f for c in components if c not in covering for f in c]
    covering[0] = sorted(covering[0] + rest)
    return covering


def is_wedge_decomposable_along(K: SimplicialComplex, sigma: VertexSet) -> bool:
    """``K = K¹ ∪ K²`` with ``K¹ ∩ K² = ⟨σ⟩`` and σ proper in both."""
    return len(wedge_parts(K, sigma)) >= 2


def missing_facets(K: SimplicialComplex) -> list[VertexSet]:
    """``S`` with ``|S| = dim K + 1``, ``S ∉ K`` and ``∂S ⊆ K``, ascending by bitmask."""
    n = K.dim
    if n < 0:
        return []
    index = face_index(K)
    faces = K.faces
    out: set[VertexSet] = set()
    for tau in index.faces[n]:
        for b in range(K.m):
            if tau >> b & 1:
                continue
            S = tau | 1 << b
            if S in out or S in faces:
                continue
            if all(S & ~(1 << c) in faces for c in vs.bits(S)):
                out.add(S)
    return sorted(out)


def connected_sum_splits(K: SimplicialComplex) -> list[VertexSet]:
    """Missing facets along which ``K`` splits as a connected sum."""
    return [S for S in missing_facets(K) if is_wedge_decomposable_along(add_face(K, S), S)]


def is_primitive_sphere(K: SimplicialComplex) -> bool:
    ok, _ = is_sphere_proxy(K)
    if not ok:
        raise ComplexError("primitivity is only defined for sphere triangulations")
    for S in missing_facets(K):
        if is_wedge_decomposable_along(add_face(K, S), S):
            logger.debug("complex splits along missing facet {%s}", vs.format_vertices(S))
            return False
    return True


def _is_induced_cycle(K: SimplicialComplex, J: VertexSet) -> bool:
    edges = [f & J for f in K.facets]
    if any(e.bit_count() > 2 for e in edges):
        return False
    edge_set = {e for e in edges if e.bit_count() == 2}
    if len(edge_set) != J.bit_count():
        return False
    degree = Counter(b for e in edge_set for b in vs.bits(e))
    if any(degree[b] != 2 for b in vs.bits(J)):
        return False
    G = nx.Graph()
    G.add_edges_from(tuple(vs.bits(e)) for e in edge_set)
    return nx.is_connected(G)


def induced_cycles(K: SimplicialComplex, min_length: int = 4) -> list[VertexSet]:
    """Subsets ``J`` with ``K_J`` a cycle of length ``|J| >= min_length``.

    A full subcomplex whose faces meet ``J`` in at most an edge is the
    1-skeleton restricted to ``J``; it is a cycle when every vertex has
    degree two and the graph is connected.
    """
    out = []
    for J in range(1 << K.m):
        if J.bit_count() >= max(3, min_length) and _is_induced_cycle(K, J):
            out.append(J)
    return out
