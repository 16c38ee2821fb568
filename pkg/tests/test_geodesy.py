from __future__ import annotations

from fractions import Fraction

import pytest

from eulersphere.coloring import eulerian_obstructions
from eulersphere.complex import clique_complex
from eulersphere.generators import (
    bipyramid,
    cross_polytope,
    cycle,
    icosahedron,
    loop_subdivide,
    octahedron,
    path,
    random_refine,
    six_hundred_cell,
    wheel,
)
from eulersphere.geodesy import (
    DirectedEdge,
    NotInvolutionError,
    ProjectiveFailure,
    ProjectiveStructure,
    curvature,
    curvature_from_volumes,
    curvature_report,
    exponential_reach,
    fixed_point_free_involutions,
    gauss_bonnet_total,
    geodesic_step,
    is_generic,
    is_projective,
    is_weakly_projective,
    orbit,
    primary_caustic,
    projective_structure,
    quotient_by_involution,
    second_order_curvature,
    trajectory,
    wavefronts,
)
from eulersphere.graph_core import GraphError, are_isomorphic, build_graph, is_automorphism, unit_sphere
from eulersphere.surgery import is_irreducible


@pytest.fixture
def octa_flow(octa) -> ProjectiveStructure:
    return projective_structure(octa)


def _antipode(v: int) -> int:
    return (v + 3) % 6


# ---- projective structures ----
def test_octahedron_uses_antipodal_rule(octa_flow):
    assert set(octa_flow.rule.values()) == {"antipodal"}
    for x, table in octa_flow.involutions.items():
        assert all(table[y] == _antipode(y) for y in table)


def test_sixteen_cell_falls_back_to_least_involution(sixteen_cell):
    P = projective_structure(sixteen_cell)
    assert isinstance(P, ProjectiveStructure)
    assert set(P.rule.values()) == {"least_involution"}
    for x, T in P.involutions.items():
        S = unit_sphere(sixteen_cell, x)
        assert is_automorphism(S, T)
        assert all(T[v] != v and T[T[v]] == v for v in T)


def test_icosahedron_is_not_projective(icosa):
    P = projective_structure(icosa)
    assert isinstance(P, ProjectiveFailure)
    assert P.vertex == 0
    assert not is_projective(icosa)
    assert fixed_point_free_involutions(cycle(5)) == []


def test_weak_projectivity(octa):
    assert is_weakly_projective(octa)
    assert not is_weakly_projective(bipyramid(5))


def _triangular_torus(n: int):
    idx = lambda i, j: (i % n) * n + j % n  # noqa: E731
    edges = {tuple(sorted((idx(i, j), idx(i + a, j + b)))) for i in range(n) for j in range(n) for a, b in ((1, 0), (0, 1), (1, -1))}
    return build_graph(range(n * n), sorted(edges))


def test_icosahedron_is_generic(icosa, recognizer):
    assert is_generic(icosa, recognizer=recognizer)
    assert is_generic(cycle(5), recognizer=recognizer)


def test_weakly_projective_spheres_are_not_generic(octa, sixteen_cell, recognizer):
    assert not is_generic(octa, recognizer=recognizer)
    assert not is_generic(sixteen_cell, recognizer=recognizer)


def test_hexagonal_torus_is_generic(recognizer):
    T = _triangular_torus(6)
    assert {T.degree(v) for v in T} == {6}
    assert not recognizer.classify(T).is_sphere()
    assert is_generic(T, recognizer=recognizer)


def test_generic_sphere_can_still_be_reducible(icosa, recognizer):
    # genericity does not force irreducibility: 30 edges of the icosahedron collapse safely
    assert is_generic(icosa, recognizer=recognizer)
    assert is_irreducible(icosa, 2, recognizer=recognizer) is False


@pytest.mark.slow
def test_six_hundred_cell_is_generic(recognizer):
    assert is_generic(six_hundred_cell(), 3, recognizer=recognizer)


# ---- geodesic flow ----
def test_octahedron_great_circle(octa_flow):
    t = trajectory(octa_flow, (0, 1), 10)
    assert t.period == 4
    assert t.vertices[:5] == (0, 1, 3, 4, 0)
    assert len(t.edges) == 11


def test_orbit_closes(octa_flow):
    o = orbit(octa_flow, (0, 2))
    assert o.period == 4
    assert o.vertices == (0, 2, 3, 5, 0)


def test_short_trajectory_has_no_period(octa_flow):
    assert trajectory(octa_flow, (0, 1), 3).period is None


def test_step_needs_an_edge(octa_flow):
    with pytest.raises(GraphError) as exc:
        geodesic_step(octa_flow, (0, 3))
    assert exc.value.code == "edge_absent"
    with pytest.raises(GraphError):
        trajectory(octa_flow, (0, 3), 2)


def test_wavefronts_refocus_at_the_antipode(octa_flow):
    assert wavefronts(octa_flow, 0, 3) == [(1, 2, 4, 5), (3,), (1, 2, 4, 5)]


def test_octahedron_caustic_is_the_antipode(octa_flow):
    assert tuple(primary_caustic(octa_flow, 0)) == (3,)
    assert tuple(exponential_reach(octa_flow, 0)) == tuple(range(6))


@pytest.mark.parametrize("n, caustic", [(5, ()), (6, (3,)), (8, (4,))])
def test_circle_caustics(n, caustic):
    P = projective_structure(cycle(n))
    assert tuple(primary_caustic(P, 0)) == caustic


def test_exponential_reach_on_refined_octahedron(loop_octa):
    P = projective_structure(loop_octa)
    reach = exponential_reach(P, 0)
    # two great circles through 0: all six original vertices and eight midpoints
    assert len(reach) == 14
    assert set(range(6)) <= set(reach)


# ---- billiards ----
def test_antipodal_quotient_is_triangle(octa):
    q = quotient_by_involution(octa, {v: _antipode(v) for v in octa})
    assert q.graph.vertices == (0, 1, 2)
    assert q.graph.size == 3
    assert len(q.boundary) == 0
    assert q.orbit_of[4] == 1


def test_pole_swap_gives_a_wheel(octa):
    T = {v: v for v in octa}
    T[0], T[3] = 3, 0
    q = quotient_by_involution(octa, T)
    assert are_isomorphic(q.graph, wheel(4)) is not None
    assert tuple(q.boundary) == (1, 2, 4, 5)


def test_quotient_rejects_bad_maps():
    with pytest.raises(NotInvolutionError):
        quotient_by_involution(cycle(5), {v: (v + 1) % 5 for v in range(5)})
    with pytest.raises(NotInvolutionError):
        quotient_by_involution(path(3), {0: 1, 1: 0, 2: 2})


# ---- curvature ----
def test_vertex_curvature(octa, icosa):
    assert curvature(octa, 0) == Fraction(1, 3)
    assert curvature(icosa, 0) == Fraction(1, 6)


def test_curvature_from_volume_vectors():
    assert curvature_from_volumes((120, 720, 1200, 600)) == 1
    assert curvature_from_volumes((10, 40, 80, 80, 32)) == 0
    assert curvature_from_volumes(()) == 1


@pytest.mark.parametrize("G", [octahedron(), icosahedron(), cross_polytope(3), cross_polytope(4), cycle(7)])
def test_gauss_bonnet(G):
    gb = gauss_bonnet_total(G)
    assert gb.matches
    assert gb.total == gb.euler_characteristic


def test_second_order_curvature(icosa, cube):
    k = second_order_curvature(icosa, 0)
    assert k.value == 5
    assert k.second_sphere_is_circle
    assert second_order_curvature(cube, 0).value == 6
    assert sum(second_order_curvature(cube, v).value for v in cube) == 48


def test_second_order_total_on_refined_icosahedron():
    rep = curvature_report(loop_subdivide(icosahedron()))
    assert rep.second_order_total == 60
    assert rep.non_circle_vertices == ()
    assert rep.total == 2


def test_octahedron_second_spheres_are_points(octa):
    rep = curvature_report(octa)
    assert rep.non_circle_vertices == tuple(range(6))
    assert set(rep.second_order.values()) == {7}


def test_first_order_report_skips_second_order(octa):
    rep = curvature_report(octa, order=1)
    assert rep.second_order == {}
    assert rep.second_order_total == 0


# ---- flow invariants ----
def _directed_edges(G):
    return [DirectedEdge(u, v) for u, v in G.edges()] + [DirectedEdge(v, u) for u, v in G.edges()]


@pytest.mark.parametrize("G", [octahedron(), cross_polytope(3), loop_subdivide(octahedron()), cycle(8)])
def test_flow_is_a_reversible_bijection(G):
    P = projective_structure(G)
    edges = _directed_edges(G)
    image = [geodesic_step(P, e) for e in edges]
    assert sorted(image) == sorted(edges)
    for e, f in zip(edges, image):
        assert geodesic_step(P, f.reversed()) == e.reversed()


@pytest.mark.parametrize("G", [octahedron(), cross_polytope(3), loop_subdivide(octahedron())])
def test_every_orbit_is_purely_periodic(G):
    P = projective_structure(G)
    for e in _directed_edges(G):
        o = orbit(P, e)
        assert o.edges[0] == e
        assert geodesic_step(P, o.edges[-1]) == e
        assert len(set(o.edges)) == o.period


def test_octahedron_orbits_all_have_period_four(octa_flow):
    assert {orbit(octa_flow, e).period for e in _directed_edges(octa_flow.host)} == {4}


@pytest.mark.parametrize("G", [octahedron(), cross_polytope(3), cross_polytope(4), loop_subdivide(octahedron()), cycle(6)])
def test_projective_spheres_are_eulerian(G):
    assert is_projective(G)
    d = clique_complex(G).dimension
    assert all(unit_sphere(G, x).order % 2 == 0 for x in G.vertices)
    assert eulerian_obstructions(G, d) == []


@pytest.mark.parametrize("seed", range(25))
def test_gauss_bonnet_on_refinements(seed):
    d = 2 + seed % 3
    G = random_refine(cross_polytope(d), 1 + seed % 4, seed).graph
    gb = gauss_bonnet_total(G)
    assert gb.matches
    assert gb.total == 1 + (-1) ** d


@pytest.mark.slow
def test_second_order_total_on_twice_refined_icosahedron():
    rep = curvature_report(loop_subdivide(loop_subdivide(icosahedron())))
    assert rep.second_order_total == 60
    assert rep.total == 2


def test_stellated_cube_second_order_values(cube):
    rep = curvature_report(cube)
    values = sorted(rep.second_order.values())
    assert values == [0] * 6 + [6] * 8
    assert rep.second_order_total == 48
