from __future__ import annotations

import pytest
from hypothesis import strategies as st

from eulersphere.generators import (
    cross_polytope,
    icosahedron,
    loop_subdivide,
    octahedron,
    random_refine,
    stellated_cube,
)
from eulersphere.graph_core import Graph, build_graph
from eulersphere.recognition import Recognizer


@pytest.fixture
def octa() -> Graph:
    return octahedron()


@pytest.fixture
def icosa() -> Graph:
    return icosahedron()


@pytest.fixture
def sixteen_cell() -> Graph:
    return cross_polytope(3)


@pytest.fixture
def cube() -> Graph:
    return stellated_cube()


@pytest.fixture
def recognizer() -> Recognizer:
    """Private memo tables so tests do not share cache state."""
    return Recognizer()


@pytest.fixture(scope="session")
def loop_octa() -> Graph:
    return loop_subdivide(octahedron())


# ---- strategies ----
SPHERE_BASES = {2: lambda: cross_polytope(2), 3: lambda: cross_polytope(3), 4: lambda: cross_polytope(4)}


@st.composite
def refined_spheres(draw, dims=(2, 3, 4), max_steps: int = 4):
    """(graph, dimension): a cross polytope after a few seeded edge subdivisions."""
    d = draw(st.sampled_from(dims))
    steps = draw(st.integers(min_value=0, max_value=max_steps))
    seed = draw(st.integers(min_value=0, max_value=2**32))
    return random_refine(SPHERE_BASES[d](), steps, seed).graph, d


@st.composite
def small_graphs(draw, max_vertices: int = 8):
    n = draw(st.integers(min_value=0, max_value=max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(range(n), edges)
