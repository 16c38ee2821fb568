"""Projective structures, the geodesic flow on directed edges, caustics, billiard
quotients and curvature.

The flow: an incoming ray (y, x) leaves along (x, T_x(y)) where T_x is the chosen
fixed-point-free involution of S(x). On a circle C_2n the choice is the antipodal
rotation; otherwise the lexicographically least such involution.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple

from .complex import clique_complex, euler_characteristic, local_volumes
from .errors import BudgetExceededError, SphereError
from .graph_core import (
    Graph,
    GraphError,
    VertexSubset,
    automorphisms,
    bfs_distances,
    induced,
    is_automorphism,
    is_cycle_graph,
    unit_sphere,
)
from .recognition import Kind, Recognizer, default_recognizer

logger = logging.getLogger(__name__)


class NotInvolutionError(SphereError):
    """Map is not an involutive automorphism of the graph."""

    code = "not_an_involution"


class DirectedEdge(NamedTuple):
    tail: int
    head: int

    def reversed(self) -> DirectedEdge:
        return DirectedEdge(self.head, self.tail)


@dataclass(frozen=True)
class ProjectiveStructure:
    host: Graph
    involutions: dict[int, dict[int, int]]
    # per vertex: "antipodal" or "least_involution"
    rule: dict[int, str]

    def T(self, x: int, y: int) -> int:
        return self.involutions[x][y]


@dataclass(frozen=True)
class ProjectiveFailure:
    vertex: int
    reason: str = "no_fixed_point_free_involution"


@dataclass(frozen=True)
class Trajectory:
    edges: tuple[DirectedEdge, ...]
    period: int | None

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.edges[0].tail,) + tuple(e.head for e in self.edges)


@dataclass(frozen=True)
class QuotientResult:
    graph: Graph
    orbit_of: dict[int, int]
    boundary: VertexSubset


@dataclass(frozen=True)
class GaussBonnet:
    total: Fraction
    euler_characteristic: int
    matches: bool


@dataclass(frozen=True)
class SecondOrderCurvature:
    value: int
    second_sphere_is_circle: bool


@dataclass(frozen=True)
class CurvatureReport:
    curvature: dict[int, Fraction]
    total: Fraction
    euler_characteristic: int
    second_order: dict[int, int]
    second_order_total: int
    non_circle_vertices: tuple[int, ...]


# =========================================================
# Involutions and projective structures
# =========================================================
def fixed_point_free_involutions(G: Graph, cap: int | None = None) -> list[dict[int, int]]:
    return [p for p in automorphisms(G, cap) if all(p[v] != v and p[p[v]] == v for v in p)]


def involutions(G: Graph, cap: int | None = None) -> list[dict[int, int]]:
    """Automorphisms of order exactly two."""
    return [p for p in automorphisms(G, cap) if any(p[v] != v for v in p) and all(p[p[v]] == v for v in p)]


def _antipodal_on_cycle(S: Graph) -> dict[int, int]:
    walk = [S.vertices[0]]
    prev = None
    while len(walk) < S.order:
        cur = walk[-1]
        nxt = next(w for w in S.adjacency(cur) if w != prev)
        prev = cur
        walk.append(nxt)
    half = S.order // 2
    return {v: walk[(i + half) % S.order] for i, v in enumerate(walk)}


def projective_structure(G: Graph, cap: int | None = None) -> ProjectiveStructure | ProjectiveFailure:
    table: dict[int, dict[int, int]] = {}
    rule: dict[int, str] = {}
    for x in G.vertices:
        S = unit_sphere(G, x)
        if is_cycle_graph(S) and S.order % 2 == 0:
            table[x] = _antipodal_on_cycle(S)
            rule[x] = "antipodal"
            continue
        candidates = fixed_point_free_involutions(S, cap)
        if not candidates:
            return ProjectiveFailure(vertex=x)
        table[x] = candidates[0]
        rule[x] = "least_involution"
    return ProjectiveStructure(host=G, involutions=table, rule=rule)


def is_projective(G: Graph, cap: int | None = None) -> bool:
    return isinstance(projective_structure(G, cap), ProjectiveStructure)


def is_weakly_projective(G: Graph, d: int | None = None, budget: int | None = None, recognizer: Recognizer | None = None) -> bool:
    """Every S(x) has an involutive automorphism whose fixed vertices induce a (d-2)-sphere in S(x).

    This is a local reading; a suspension of an odd circle fails it at the poles.
    """
    rec = recognizer or default_recognizer
    dim = clique_complex(G).dimension if d is None else d
    for x in G.vertices:
        S = unit_sphere(G, x)
        ok = False
        for p in involutions(S):
            fixed = induced(S, [v for v in S.vertices if p[v] == v])
            c = rec.classify(fixed, budget)
            if c.kind is Kind.SPHERE and c.dimension == dim - 2:
                ok = True
                break
        if not ok:
            logger.info("weakly_projective_fails vertex=%s", x)
            return False
    return True


def is_generic(
    G: Graph, d: int | None = None, budget: int | None = None, recognizer: Recognizer | None = None
) -> bool:
    """A sphere of dimension >= 2 is generic when it is not weakly projective and every
    unit sphere is generic. Circles are generic. Any other graph is generic when all of
    its unit spheres are.

    Passing d asserts G is a d-sphere and skips recognizing it.
    """
    rec = recognizer or default_recognizer
    if d is None:
        c = rec.classify(G, budget)
        if c.kind is Kind.UNDECIDED:
            raise BudgetExceededError(f"genericity of {G.name or 'graph'}: recognition budget exhausted")
        d = c.dimension if c.kind is Kind.SPHERE else None
    if d is not None:
        if d <= 1:
            return d == 1
        if is_weakly_projective(G, d, budget, rec):
            return False
    link = None if d is None else d - 1
    for x in G.vertices:
        if not is_generic(unit_sphere(G, x), link, budget, rec):
            logger.info("generic_fails vertex=%s", x)
            return False
    return True


# =========================================================
# Geodesic flow
# =========================================================
def geodesic_step(P: ProjectiveStructure, e: DirectedEdge | tuple[int, int]) -> DirectedEdge:
    y, x = e
    if not P.host.has_edge(y, x):
        raise GraphError(f"({y},{x}) is not an edge of the host", code="edge_absent", edge=(y, x))
    return DirectedEdge(x, P.involutions[x][y])


def trajectory(P: ProjectiveStructure, e0: DirectedEdge | tuple[int, int], n: int) -> Trajectory:
    """e0 and n further steps; period set if the orbit returns to e0 within n steps."""
    start = DirectedEdge(*e0)
    if not P.host.has_edge(*start):
        raise GraphError(f"{tuple(start)} is not an edge of the host", code="edge_absent", edge=tuple(start))
    edges = [start]
    period = None
    for i in range(1, n + 1):
        edges.append(geodesic_step(P, edges[-1]))
        if period is None and edges[-1] == start:
            period = i
    return Trajectory(edges=tuple(edges), period=period)


def orbit(P: ProjectiveStructure, e0: DirectedEdge | tuple[int, int]) -> Trajectory:
    """Full closed orbit (the flow is a bijection, so every orbit is purely periodic)."""
    start = DirectedEdge(*e0)
    edges = [start]
    limit = 2 * P.host.size
    for i in range(1, limit + 1):
        nxt = geodesic_step(P, edges[-1])
        if nxt == start:
            return Trajectory(edges=tuple(edges), period=i)
        edges.append(nxt)
    raise SphereError("geodesic orbit did not close", code="orbit_not_closed")


def exponential_reach(P: ProjectiveStructure, x: int) -> VertexSubset:
    reached: set[int] = {x}
    for y in P.host.adjacency(x):
        reached.update(orbit(P, (x, y)).vertices)
    return VertexSubset.of(reached)


def wavefronts(P: ProjectiveStructure, x: int, t_max: int) -> list[tuple[int, ...]]:
    """Heads of all geodesics from x after t = 1..t_max steps."""
    current = [DirectedEdge(x, y) for y in P.host.adjacency(x)]
    fronts = []
    for _ in range(t_max):
        fronts.append(tuple(sorted({e.head for e in current})))
        current = [geodesic_step(P, e) for e in current]
    return fronts


def primary_caustic(P: ProjectiveStructure, x: int) -> VertexSubset:
    """Vertices first reached at the same time by two or more geodesics from x.

    Geodesics stop once they hit a caustic vertex, so later arrivals cannot
    count through it.
    """
    active = {i: DirectedEdge(x, y) for i, y in enumerate(P.host.adjacency(x))}
    reached = {x}
    caustic: set[int] = set()
    for _ in range(2 * P.host.size + 1):
        if not active:
            break
        arrivals: dict[int, list[int]] = {}
        for i, e in active.items():
            arrivals.setdefault(e.head, []).append(i)
        stopped: set[int] = set()
        for v in sorted(arrivals):
            ids = arrivals[v]
            if v in caustic:
                stopped.update(ids)
            elif v not in reached and len(ids) >= 2:
                caustic.add(v)
                stopped.update(ids)
        reached.update(arrivals)
        active = {i: geodesic_step(P, e) for i, e in active.items() if i not in stopped}
    return VertexSubset.of(caustic)


# =========================================================
# Billiards
# =========================================================
def quotient_by_involution(G: Graph, T: Mapping[int, int]) -> QuotientResult:
    """Orbits {v, T v} named by their smaller member; fixed vertices form the boundary."""
    perm = dict(T)
    if sorted(perm) != list(G.vertices) or not is_automorphism(G, perm):
        raise NotInvolutionError("map is not an automorphism of the graph")
    if any(perm[perm[v]] != v for v in perm):
        raise NotInvolutionError("map is not an involution")
    orbit_of = {v: min(v, perm[v]) for v in G.vertices}
    adj: dict[int, set[int]] = {o: set() for o in orbit_of.values()}
    for u, v in G.edges():
        a, b = orbit_of[u], orbit_of[v]
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    fixed = VertexSubset.of(v for v in G.vertices if perm[v] == v)
    return QuotientResult(graph=Graph.from_adjacency(adj), orbit_of=orbit_of, boundary=fixed)


# =========================================================
# Curvature
# =========================================================
def curvature_from_volumes(v: tuple[int, ...] | list[int]) -> Fraction:
    """sum_{k>=-1} (-1)^(k+1) V_k / (k+2) with V_{-1} = 1 and v = (V_0, V_1, ...)."""
    total = Fraction(1)
    for k, n in enumerate(v):
        total += Fraction((-1) ** (k + 1) * n, k + 2)
    return total


def curvature(G: Graph, x: int) -> Fraction:
    return curvature_from_volumes(local_volumes(G, x))


def gauss_bonnet_total(G: Graph) -> GaussBonnet:
    total = sum((curvature(G, x) for x in G.vertices), Fraction(0))
    chi = euler_characteristic(G)
    return GaussBonnet(total=total, euler_characteristic=chi, matches=total == chi)


def second_order_curvature(G: Graph, x: int) -> SecondOrderCurvature:
    """K2(x) = 2|S_1(x)| - |S_2(x)|, flagged with whether S_2(x) is a circle."""
    dist = bfs_distances(G, x)
    s1 = [v for v, d in dist.items() if d == 1]
    s2 = [v for v, d in dist.items() if d == 2]
    return SecondOrderCurvature(value=2 * len(s1) - len(s2), second_sphere_is_circle=is_cycle_graph(induced(G, s2)))


def curvature_report(G: Graph, order: int = 2) -> CurvatureReport:
    per_vertex = {x: curvature(G, x) for x in G.vertices}
    gb = gauss_bonnet_total(G)
    second: dict[int, int] = {}
    flagged: list[int] = []
    if order >= 2:
        for x in G.vertices:
            k2 = second_order_curvature(G, x)
            second[x] = k2.value
            if not k2.second_sphere_is_circle:
                flagged.append(x)
    return CurvatureReport(
        curvature=per_vertex,
        total=gb.total,
        euler_characteristic=gb.euler_characteristic,
        second_order=second,
        second_order_total=sum(second.values()),
        non_circle_vertices=tuple(flagged),
    )
