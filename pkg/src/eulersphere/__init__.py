"""Graph-theoretic d-spheres: recognition, duality, Eulerian coloring, surgery,
geodesic flow and curvature on finite simple graphs."""

from __future__ import annotations

__version__ = "0.1.0"

from .coloring import chain_color, chromatic_number, eulerian_obstructions, is_eulerian_graph
from .complex import betti_numbers, clique_complex, euler_characteristic, volumes
from .duality import complementary_dual, double_dual, nerve, simplex_degree
from .errors import BudgetExceededError, SphereError, StructureError
from .generators import GeneratorSpec, generate
from .geodesy import curvature, primary_caustic, projective_structure, trajectory
from .graph_core import Graph, VertexSubset, are_isomorphic, build_graph, induced, unit_sphere
from .graph_io import load_graph, save_graph
from .recognition import Recognizer, classify, is_contractible
from .surgery import edge_collapse, edge_subdivide

__all__ = [
    "__version__",
    "BudgetExceededError",
    "GeneratorSpec",
    "Graph",
    "Recognizer",
    "SphereError",
    "StructureError",
    "VertexSubset",
    "are_isomorphic",
    "betti_numbers",
    "build_graph",
    "chain_color",
    "chromatic_number",
    "classify",
    "clique_complex",
    "complementary_dual",
    "curvature",
    "double_dual",
    "edge_collapse",
    "edge_subdivide",
    "euler_characteristic",
    "eulerian_obstructions",
    "generate",
    "induced",
    "is_contractible",
    "is_eulerian_graph",
    "load_graph",
    "nerve",
    "primary_caustic",
    "projective_structure",
    "save_graph",
    "simplex_degree",
    "trajectory",
    "unit_sphere",
    "volumes",
]
