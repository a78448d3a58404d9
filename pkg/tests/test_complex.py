import pytest

from hhcalc import vertexset as vs
from hhcalc.complex import (
    SimplicialComplex,
    add_face,
    compact,
    complex_hash,
    connected_sum,
    degree,
    join,
    link,
    min_degree,
    remove_facet,
    restrict,
    skeleton,
    wedge_sum,
)
from hhcalc.errors import ComplexError
from hhcalc.generators import gen_cycle, gen_icosahedron, gen_octahedron, gen_simplex_boundary, gen_sphere0
from hhcalc.predicates import f_vector, is_sphere_proxy
from hhcalc.vertexset import vset


def lists(K: SimplicialComplex) -> set[tuple[int, ...]]:
    return set(K.facet_lists())


def test_facets_are_canonical():
    K = SimplicialComplex.from_vertex_lists([[1, 2, 3], [2, 3], [3, 1, 2], [4]])
    assert K.m == 4
    assert lists(K) == {(1, 2, 3), (4,)}
    assert K.dim == 2
    assert vset(2, 3) in K
    assert vset(1, 4) not in K


def test_empty_complex_and_ghosts():
    E = SimplicialComplex.from_facets([])
    assert E.m == 0 and E.facets == (0,)
    assert E.dim == -1
    K = SimplicialComplex.from_vertex_lists([[1, 2]], m=3)
    assert K.ghost_vertices == (3,)
    with pytest.raises(ComplexError):
        SimplicialComplex.from_vertex_lists([[1, 5]], m=3)


def test_restrict_keeps_ambient_vertex_set():
    C4 = gen_cycle(4)
    R = restrict(C4, vset(1, 3))
    assert R.m == 4
    assert lists(R) == {(1,), (3,)}
    assert restrict(C4, vs.full(4)) == C4


def test_restrict_composes():
    K = gen_octahedron()
    I, J = vset(1, 3, 5), vset(1, 2, 3, 5, 6)
    assert restrict(restrict(K, J), I) == restrict(K, I & J)


def test_link_of_octahedron_vertex_is_a_square():
    L = link(gen_octahedron(), vset(1))
    assert lists(L) == {(3, 5), (3, 6), (4, 5), (4, 6)}
    C, labels = compact(L)
    assert C.m == 4
    assert labels == {1: 3, 2: 4, 3: 5, 4: 6}
    assert is_sphere_proxy(C) == (True, 1)
    with pytest.raises(ComplexError):
        link(gen_octahedron(), vset(1, 2))


def test_skeleton():
    S = skeleton(gen_simplex_boundary(3), 1)
    assert len(S.facets) == 6
    assert S.dim == 1
    assert skeleton(gen_cycle(5), 3) == gen_cycle(5)


def test_degrees():
    assert min_degree(gen_octahedron()) == 4
    assert min_degree(gen_icosahedron()) == 5
    assert degree(gen_cycle(6), 1) == 2
    with pytest.raises(ComplexError):
        degree(SimplicialComplex.from_vertex_lists([[1, 2]], m=3), 3)


def test_join_of_two_zero_spheres_is_a_square():
    S = join(gen_sphere0(), gen_sphere0())
    assert S.m == 4
    assert lists(S) == {(1, 3), (1, 4), (2, 3), (2, 4)}
    assert join(gen_cycle(5), gen_sphere0()).dim == 2


def test_connected_sum_of_octahedra():
    K = gen_octahedron()
    sigma = K.facets[0]
    S = connected_sum(K, K, sigma, sigma)
    assert S.m == 9
    assert len(S.facets) == 14
    assert is_sphere_proxy(S) == (True, 2)
    assert sigma not in S
    assert f_vector(S).as_list() == [9, 21, 14]


def test_connected_sum_pairing_and_errors():
    T = gen_simplex_boundary(2)
    C = gen_cycle(5)
    S = connected_sum(C, T, vset(1, 2), vset(1, 2), pairing={1: 2, 2: 1})
    assert S.m == 6
    assert is_sphere_proxy(S) == (True, 1)
    with pytest.raises(ComplexError):
        connected_sum(gen_octahedron(), C, gen_octahedron().facets[0], vset(1, 2))
    with pytest.raises(ComplexError):
        connected_sum(C, T, vset(1, 3), vset(1, 2))
    with pytest.raises(ComplexError):
        connected_sum(C, T, vset(1, 2), vset(1, 2), pairing={1: 1, 3: 2})


def test_wedge_sum_keeps_the_shared_facet():
    T = gen_simplex_boundary(2)
    W = wedge_sum(T, T, vset(1, 2), vset(1, 2))
    assert W.m == 4
    assert lists(W) == {(1, 2), (1, 3), (2, 3), (1, 4), (2, 4)}


def test_remove_facet_and_add_face_are_inverse():
    K = gen_simplex_boundary(3)
    sigma = vset(1, 2, 3)
    R = remove_facet(K, sigma)
    assert lists(R) == {(1, 2, 4), (1, 3, 4), (2, 3, 4)}
    assert vset(1, 2) in R
    assert add_face(R, sigma) == K


def test_add_face_preconditions():
    C = gen_cycle(4)
    with pytest.raises(ComplexError):
        add_face(C, vset(1, 2))
    with pytest.raises(ComplexError):
        add_face(C, vset(1, 2, 3))
    with pytest.raises(ComplexError):
        remove_facet(C, vset(1, 3))
    assert lists(add_face(C, vset(1, 3))) == lists(C) | {(1, 3)}


def test_hash_is_label_sensitive():
    a = SimplicialComplex.from_vertex_lists([[1, 2], [2, 3], [3, 4], [1, 4]])
    b = SimplicialComplex.from_vertex_lists([[1, 3], [3, 2], [2, 4], [4, 1]])
    assert complex_hash(a) != complex_hash(b)
    assert a.hash == complex_hash(gen_cycle(4))
    assert len(a.hash) == 64
