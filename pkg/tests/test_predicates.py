import pytest

from hhcalc.complex import SimplicialComplex, connected_sum, join, remove_facet, wedge_sum
from hhcalc.errors import ComplexError
from hhcalc.generators import (
    gen_bicapped_antiprism,
    gen_cycle,
    gen_icosahedron,
    gen_octahedron,
    gen_simplex,
    gen_simplex_boundary,
    gen_sphere0,
)
from hhcalc.predicates import (
    connected_sum_splits,
    f_vector,
    induced_cycles,
    is_neighborly,
    is_primitive_sphere,
    is_pseudomanifold,
    is_simplex_boundary,
    is_sphere_proxy,
    is_wedge_decomposable_along,
    max_neighborliness,
    missing_facets,
    wedge_parts,
)
from hhcalc.vertexset import vset

RP2 = [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6),
]


def octahedron_sum() -> SimplicialComplex:
    K = gen_octahedron()
    return connected_sum(K, K, K.facets[0], K.facets[0])


def test_sphere_proxy():
    assert is_sphere_proxy(gen_cycle(7)) == (True, 1)
    assert is_sphere_proxy(gen_sphere0()) == (True, 0)
    assert is_sphere_proxy(gen_icosahedron()) == (True, 2)
    assert is_sphere_proxy(gen_simplex_boundary(4)) == (True, 3)
    assert is_sphere_proxy(remove_facet(gen_octahedron(), gen_octahedron().facets[0]))[0] is False
    assert is_sphere_proxy(gen_simplex(3))[0] is False


def test_projective_plane_is_a_pseudomanifold_but_not_a_sphere():
    K = SimplicialComplex.from_vertex_lists(RP2)
    assert is_pseudomanifold(K)
    assert is_sphere_proxy(K) == (False, 2)


def test_disjoint_circles_are_not_a_sphere():
    two = SimplicialComplex.from_vertex_lists([(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
    assert is_pseudomanifold(two)
    assert is_sphere_proxy(two)[0] is False


@pytest.mark.parametrize("factory", [gen_octahedron, gen_icosahedron, lambda: gen_simplex_boundary(4),
                                     lambda: gen_bicapped_antiprism(6, 1)])
def test_dehn_sommerville_top_relation(factory):
    K = factory()
    f = f_vector(K)
    n = K.dim
    assert (n + 1) * f[n] == 2 * f[n - 1]


def test_neighborliness():
    assert max_neighborliness(join(gen_simplex_boundary(2), gen_simplex_boundary(2))) == 1
    assert max_neighborliness(gen_octahedron()) == 0
    assert max_neighborliness(gen_simplex(4)) == 3
    assert is_neighborly(gen_simplex_boundary(3))
    assert not is_neighborly(gen_cycle(5))
    assert max_neighborliness(SimplicialComplex.from_vertex_lists([[1, 2]], m=3)) == -1


def test_simplex_boundary_recognition():
    assert is_simplex_boundary(gen_simplex_boundary(5))
    assert is_simplex_boundary(gen_sphere0())
    assert not is_simplex_boundary(gen_cycle(4))
    assert not is_simplex_boundary(gen_simplex(3))


def test_wedge_decomposition_of_two_triangles():
    T = gen_simplex_boundary(2)
    W = wedge_sum(T, T, vset(1, 2), vset(1, 2))
    assert is_wedge_decomposable_along(W, vset(1, 2))
    assert len(wedge_parts(W, vset(1, 2))) == 2
    assert not is_wedge_decomposable_along(W, vset(1))
    assert not is_wedge_decomposable_along(gen_octahedron(), gen_octahedron().facets[0])


def test_pieces_must_both_contain_the_shared_face():
    K = SimplicialComplex.from_vertex_lists([(1, 2, 3), (2, 4)])
    assert not is_wedge_decomposable_along(K, vset(1, 2))
    assert wedge_parts(K, vset(1, 2)) == [[vset(1, 2, 3), vset(2, 4)]]
    assert is_wedge_decomposable_along(K, vset(2))

    # a third piece touching only a sub-face rides along with one of the others
    L = SimplicialComplex.from_vertex_lists([(1, 2, 3), (1, 2, 4), (2, 5)])
    assert is_wedge_decomposable_along(L, vset(1, 2))
    assert wedge_parts(L, vset(1, 2)) == [[vset(1, 2, 3), vset(2, 5)], [vset(1, 2, 4)]]


def test_disjoint_union_splits_along_the_empty_face():
    K = SimplicialComplex.from_vertex_lists([(1, 2), (3, 4)])
    assert is_wedge_decomposable_along(K, 0)


def test_missing_facets():
    assert len(missing_facets(gen_cycle(5))) == 5
    assert missing_facets(gen_octahedron()) == []
    S = octahedron_sum()
    assert S.facets[0] not in missing_facets(S)
    assert len(connected_sum_splits(S)) == 1


@pytest.mark.parametrize("factory,expected", [
    (lambda: gen_simplex_boundary(3), True),
    (lambda: gen_simplex_boundary(2), True),
    (gen_octahedron, True),
    (gen_icosahedron, True),
    (lambda: gen_cycle(5), False),
    (octahedron_sum, False),
    (lambda: join(gen_cycle(5), gen_sphere0()), True),
])
def test_primitive_spheres(factory, expected: bool):
    assert is_primitive_sphere(factory()) is expected


def test_primitivity_needs_a_sphere():
    with pytest.raises(ComplexError):
        is_primitive_sphere(gen_simplex(3))


def test_induced_cycles_of_the_octahedron_are_its_equators():
    K = gen_octahedron()
    expected = {vset(3, 4, 5, 6), vset(1, 2, 5, 6), vset(1, 2, 3, 4)}
    assert set(induced_cycles(K)) == expected
    assert set(induced_cycles(K, min_length=3)) == expected
    assert set(induced_cycles(gen_cycle(6))) == {vset(1, 2, 3, 4, 5, 6)}
    assert induced_cycles(gen_simplex_boundary(3), min_length=3) == []
