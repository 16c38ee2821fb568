from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import refined_spheres
from eulersphere.coloring import is_eulerian_graph
from eulersphere.complex import clique_complex
from eulersphere.duality import (
    PurityError,
    complementary_dual,
    double_dual,
    dual_completion_2d,
    is_bipartite,
    nerve,
    simplex_degree,
)
from eulersphere.errors import StructureError
from eulersphere.generators import cross_polytope, cycle, six_hundred_cell, stellated_cube, wheel
from eulersphere.graph_core import are_isomorphic, build_graph, is_cycle_graph
from eulersphere.recognition import Recognizer


# ---- complementary duals ----
def test_dual_of_vertex_is_unit_sphere(octa):
    res = complementary_dual(octa, [0])
    assert res.dual.vertices == (1, 2, 4, 5)
    assert tuple(res.source) == (0,)


def test_dual_of_empty_set_is_host(octa):
    assert complementary_dual(octa, []).dual == octa


def test_sixteen_cell_edge_dual_is_square(sixteen_cell):
    dual = complementary_dual(sixteen_cell, [0, 1]).dual
    assert dual.vertices == (2, 3, 6, 7)
    assert is_cycle_graph(dual)
    assert double_dual(sixteen_cell, [0, 1]).dual.vertices == (0, 1, 4, 5)
    assert double_dual(sixteen_cell, dual.vertices).dual.vertices == (2, 3, 6, 7)


def test_antipodes_have_empty_dual_and_full_double_dual(icosa):
    assert complementary_dual(icosa, [0, 11]).dual.order == 0
    assert double_dual(icosa, [0, 11]).dual == icosa


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_subgraph_is_contained_in_its_double_dual(data):
    G, _ = data.draw(refined_spheres())
    H = data.draw(st.lists(st.sampled_from(G.vertices), unique=True, max_size=4))
    assert set(H) <= set(double_dual(G, H).dual.vertices)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_double_dual_of_a_dual_is_itself(data):
    G, _ = data.draw(refined_spheres())
    K = data.draw(st.lists(st.sampled_from(G.vertices), unique=True, max_size=3))
    D = complementary_dual(G, K).dual.vertices
    assert double_dual(G, D).dual.vertices == D


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_dual_is_antitone(data):
    G, _ = data.draw(refined_spheres())
    K = data.draw(st.lists(st.sampled_from(G.vertices), unique=True, max_size=4))
    H = data.draw(st.lists(st.sampled_from(K), unique=True)) if K else []
    assert set(complementary_dual(G, K).dual.vertices) <= set(complementary_dual(G, H).dual.vertices)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_clique_duals_in_cross_polytopes_are_spheres(d):
    G = cross_polytope(d)
    r = Recognizer()
    for k, layer in enumerate(clique_complex(G).simplices):
        for x in layer:
            c = r.classify(complementary_dual(G, x).dual)
            assert c.is_sphere(d - k - 1), (x, c.label)


# ---- simplex degrees ----
def test_simplex_degrees(octa, icosa, sixteen_cell):
    assert simplex_degree(octa, [0], 2) == 4
    assert simplex_degree(icosa, [3], 2) == 5
    assert simplex_degree(sixteen_cell, [0, 1], 3) == 4
    assert simplex_degree(icosa, [0, 1]) == 2


def test_simplex_degree_requires_a_clique(octa):
    with pytest.raises(StructureError) as exc:
        simplex_degree(octa, [0, 3])
    assert exc.value.code == "not_a_clique"


def test_simplex_degree_requires_circular_dual():
    with pytest.raises(StructureError) as exc:
        simplex_degree(wheel(5), [0], 2)
    assert exc.value.code == "dual_not_cyclic"


@pytest.mark.slow
def test_six_hundred_cell_edge_degrees_are_five():
    G = six_hundred_cell()
    assert {simplex_degree(G, e, 3) for e in G.edges()} == {5}


# ---- nerve ----
def test_nerve_of_octahedron_is_the_cube(octa):
    N = nerve(octa)
    assert N.dimension == 2
    assert len(N.simplices) == 8
    assert N.graph.size == 12
    assert all(N.graph.degree(i) == 3 for i in N.graph)
    res = is_bipartite(N.graph)
    assert res.bipartite
    assert sorted(len(s) for s in res.sides) == [4, 4]


def test_nerve_of_icosahedron_has_odd_cycle(icosa):
    N = nerve(icosa)
    res = is_bipartite(N.graph)
    assert not res.bipartite
    cyc = res.odd_cycle
    assert len(cyc) % 2 == 1
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        assert N.graph.has_edge(a, b)


def test_nerve_of_circle():
    N = nerve(cycle(5))
    assert N.dimension == 1
    assert is_cycle_graph(N.graph)
    assert N.node_of((0, 4)) == N.simplices.index((0, 4))


def test_impure_complex_is_rejected():
    G = build_graph(range(4), [(0, 1), (1, 2), (0, 2), (2, 3)])
    with pytest.raises(PurityError) as exc:
        nerve(G)
    assert exc.value.code == "impure_complex"


def test_nerve_neighbours_share_a_face(sixteen_cell):
    N = nerve(sixteen_cell)
    for a, b in N.graph.edges():
        assert len(set(N.simplices[a]) & set(N.simplices[b])) == 3
    assert all(N.graph.degree(i) == 4 for i in N.graph)


# ---- completed dual ----
def test_dual_completion_of_octahedron(octa, recognizer):
    H = dual_completion_2d(octa, recognizer=recognizer)
    assert (H.order, H.size) == (14, 36)
    assert recognizer.classify(H).is_sphere(2)
    assert all(H.degree(v) == 4 for v in range(6))
    assert all(H.degree(v) == 6 for v in range(6, 14))


def test_dual_completion_of_octahedron_is_the_stellated_cube(octa, recognizer):
    assert are_isomorphic(dual_completion_2d(octa, recognizer=recognizer), stellated_cube()) is not None


def test_dual_completion_of_icosahedron(icosa, recognizer):
    H = dual_completion_2d(icosa, recognizer=recognizer)
    assert (H.order, H.size) == (32, 90)
    assert not is_eulerian_graph(H)


def test_dual_completion_needs_two_sphere(sixteen_cell):
    with pytest.raises(StructureError) as exc:
        dual_completion_2d(sixteen_cell)
    assert exc.value.code == "not_a_2_sphere"


def test_triangle_ids_follow_vertices(octa):
    H = dual_completion_2d(octa)
    triangles = clique_complex(octa).layer(2)
    for i, tri in enumerate(triangles):
        assert set(tri) <= set(H.neighbors(6 + i))


def test_every_pair_in_clique_has_dual(sixteen_cell):
    for a, b in combinations(range(4), 2):
        assert complementary_dual(sixteen_cell, [a, b]).dual.order == 4
