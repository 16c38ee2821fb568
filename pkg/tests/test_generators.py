from __future__ import annotations

import pytest

from eulersphere.complex import clique_complex
from eulersphere.errors import StructureError
from eulersphere.generators import (
    GeneratorError,
    GeneratorSpec,
    bipyramid,
    complete,
    cross_polytope,
    cycle,
    generate,
    icosahedron,
    loop_subdivide,
    octahedron,
    path,
    random_refine,
    six_hundred_cell,
    stellated_cube,
    wheel,
)
from eulersphere.graph_core import are_isomorphic, unit_sphere


@pytest.mark.parametrize(
    "G, order, size",
    [
        (cycle(5), 5, 5),
        (path(1), 1, 0),
        (path(4), 4, 3),
        (complete(4), 4, 6),
        (wheel(5), 6, 10),
        (bipyramid(5), 7, 15),
        (octahedron(), 6, 12),
        (icosahedron(), 12, 30),
        (stellated_cube(), 14, 36),
        (cross_polytope(0), 2, 0),
        (cross_polytope(3), 8, 24),
    ],
)
def test_orders_and_sizes(G, order, size):
    assert (G.order, G.size) == (order, size)


def test_cross_polytope_labels():
    G = cross_polytope(3)
    for i in range(4):
        assert not G.has_edge(i, i + 4)
        assert G.degree(i) == 6


def test_icosahedron_labels(icosa):
    assert icosa.neighbors(0) == frozenset(range(1, 6))
    assert icosa.neighbors(11) == frozenset(range(6, 11))
    assert all(icosa.degree(v) == 5 for v in icosa)


def test_stellated_cube_degrees(cube):
    assert [cube.degree(v) for v in range(8)] == [6] * 8
    assert [cube.degree(v) for v in range(8, 14)] == [4] * 6


def test_names_travel_with_the_graph():
    assert octahedron().name == "octahedron"
    assert cross_polytope(4).name == "cross_polytope(4)"
    assert bipyramid(6).name == "bipyramid(6)"


@pytest.mark.slow
def test_six_hundred_cell_is_icosahedral():
    G = six_hundred_cell()
    assert (G.order, G.size) == (120, 720)
    assert all(G.degree(v) == 12 for v in G)
    ico = icosahedron()
    for v in (0, 17, 119):
        assert are_isomorphic(unit_sphere(G, v), ico) is not None


# ---- dispatch ----
def test_generate_dispatch():
    assert generate(GeneratorSpec("wheel", n=4)) == wheel(4)
    assert generate(GeneratorSpec("cross_polytope", d=2)) == cross_polytope(2)
    assert generate(GeneratorSpec("icosahedron")) == icosahedron()


@pytest.mark.parametrize(
    "spec, code",
    [
        (GeneratorSpec("cycle"), "missing_param"),
        (GeneratorSpec("cross_polytope"), "missing_param"),
        (GeneratorSpec("dodecahedron"), "unknown_generator"),
        (GeneratorSpec("cycle", n=2), "invalid_param"),
        (GeneratorSpec("bipyramid", n=3), "invalid_param"),
        (GeneratorSpec("cross_polytope", d=-1), "invalid_param"),
    ],
)
def test_generate_errors(spec, code):
    with pytest.raises(GeneratorError) as exc:
        generate(spec)
    assert exc.value.code == code


# ---- refinements ----
def test_loop_subdivision_of_octahedron(loop_octa):
    assert (loop_octa.order, loop_octa.size) == (18, 48)
    assert clique_complex(loop_octa).volumes == (18, 48, 32)
    assert loop_octa.name == "loop_subdivide(octahedron)"
    # edge (0,1) is the first edge, so its midpoint is 6
    assert loop_octa.neighbors(6) >= {0, 1}


def test_loop_subdivision_needs_two_sphere():
    with pytest.raises(StructureError) as exc:
        loop_subdivide(cycle(5))
    assert exc.value.code == "not_a_2_sphere"


def test_random_refine_is_seeded():
    a = random_refine(cross_polytope(3), 4, 99)
    b = random_refine(cross_polytope(3), 4, 99)
    assert a.graph == b.graph
    assert a.records == b.records
    assert a.graph.order == 8 + 4
    assert len(a.records) == 4
    assert a.graph.name == "cross_polytope(3)"


def test_double_refine_records_pairs():
    res = random_refine(octahedron(), 3, 5, mode="double")
    assert res.graph.order == 6 + 6
    assert len(res.records) == 6


def test_zero_steps_is_identity(octa):
    res = random_refine(octa, 0, 1)
    assert res.graph == octa
    assert res.records == ()


def test_random_refine_errors(octa):
    with pytest.raises(GeneratorError) as exc:
        random_refine(octa, 1, 0, mode="triple")
    assert exc.value.code == "invalid_mode"
    with pytest.raises(GeneratorError):
        random_refine(octa, -1, 0)


def test_refining_an_edgeless_sphere_is_refused():
    zero_sphere = cross_polytope(0)
    assert zero_sphere.size == 0
    assert random_refine(zero_sphere, 0, 3).graph == zero_sphere
    with pytest.raises(GeneratorError) as exc:
        random_refine(zero_sphere, 1, 3)
    assert exc.value.code == "no_edges"
