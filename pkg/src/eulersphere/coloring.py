"""Eulerian spheres: the even-degree criterion, constructive (d+1)-coloring by
propagation over the nerve, exact chromatic numbers and classical Eulerian graphs."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

import networkx as nx

from .complex import clique_complex
from .config import settings
from .errors import BudgetExceededError, SphereError, StructureError
from .graph_core import Graph, connected_components, induced, is_connected, is_cycle_graph
from .graph_io import to_networkx
from .duality import NerveGraph, is_bipartite, nerve, simplex_degree
from .recognition import Kind, Recognizer, default_recognizer

logger = logging.getLogger(__name__)


class DimensionMismatchError(SphereError):
    """Asserted dimension disagrees with the clique dimension of the graph."""

    code = "dimension_mismatch"


class ColoringFailure(SphereError):
    """Chain coloring did not produce a (d+1)-coloring."""

    code = "coloring_failure"

    def __init__(self, message: str, result: ColoringResult):
        super().__init__(message, outcome=result.outcome.value)
        self.result = result


class Outcome(str, Enum):
    COLORED = "colored"
    OBSTRUCTION = "obstruction"
    CONFLICT = "conflict"


Obstruction = tuple[tuple[int, ...], int]


@dataclass(frozen=True)
class ConflictSite:
    """Crossing nerve edge (from_simplex -> to_simplex) forces `forced` on a vertex already colored `existing`."""

    vertex: int
    existing: int
    forced: int
    from_simplex: tuple[int, ...]
    to_simplex: tuple[int, ...]


@dataclass(frozen=True)
class ColoringResult:
    outcome: Outcome
    assignment: dict[int, int] = field(default_factory=dict)
    colors: int = 0
    obstructions: tuple[Obstruction, ...] = ()
    conflict: ConflictSite | None = None

    @property
    def ok(self) -> bool:
        return self.outcome is Outcome.COLORED


@dataclass(frozen=True)
class ChromaticResult:
    lower: int
    upper: int
    coloring: dict[int, int]
    provenance: tuple[str, ...]

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int | None:
        return self.upper if self.exact else None


@dataclass(frozen=True)
class SignPartition:
    """Maximal simplices split by the sign of their coloring relative to a coherent orientation."""

    positive: tuple[tuple[int, ...], ...]
    negative: tuple[tuple[int, ...], ...]


# ---- helpers ----
def is_proper_coloring(G: Graph, assignment: dict[int, int]) -> bool:
    return all(v in assignment for v in G) and all(assignment[u] != assignment[v] for u, v in G.edges())


def _check_dimension(G: Graph, d: int) -> None:
    if d < 0:
        raise DimensionMismatchError(f"dimension {d} is negative", d=d)
    top = clique_complex(G).dimension
    if top != d:
        raise DimensionMismatchError(f"asserted dimension {d} but the largest clique has dimension {top}", d=d, clique_dimension=top)


# =========================================================
# Obstructions
# =========================================================
def eulerian_obstructions(G: Graph, d: int) -> list[Obstruction]:
    """(d-2)-simplices of odd degree. d = 1 uses the empty simplex, whose degree is |V|."""
    _check_dimension(G, d)
    if d == 0:
        return []
    if d == 1:
        return [((), G.order)] if G.order % 2 else []
    out: list[Obstruction] = []
    for x in clique_complex(G).layer(d - 2):
        deg = simplex_degree(G, x, d)
        if deg % 2:
            out.append((x, deg))
    return out


# =========================================================
# Chain coloring
# =========================================================
def chain_color(G: Graph, d: int, precheck: bool = True) -> ColoringResult:
    """Seed the least maximal simplex with colors 0..d, then cross shared (d-1)-faces
    breadth-first; each crossing forces the color of the one new vertex."""
    if d <= 1:
        return _color_low_dimension(G, d)
    _check_dimension(G, d)
    if precheck:
        obstructions = eulerian_obstructions(G, d)
        if obstructions:
            return ColoringResult(Outcome.OBSTRUCTION, obstructions=tuple(obstructions))
    N = nerve(G)
    if len(connected_components(N.graph)) != 1:
        raise StructureError("nerve is disconnected", code="nerve_disconnected")
    return _propagate(G, N, d)


def _propagate(G: Graph, N: NerveGraph, d: int) -> ColoringResult:
    assignment: dict[int, int] = {v: c for c, v in enumerate(N.simplices[0])}
    palette = set(range(d + 1))
    visited = {0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        sa = N.simplices[a]
        for b in N.graph.adjacency(a):
            sb = N.simplices[b]
            shared = set(sa) & set(sb)
            (new,) = set(sb) - shared
            (forced,) = palette - {assignment[v] for v in shared}
            existing = assignment.get(new)
            if existing is None:
                assignment[new] = forced
            elif existing != forced:
                site = ConflictSite(new, existing, forced, sa, sb)
                return ColoringResult(Outcome.CONFLICT, assignment=dict(sorted(assignment.items())), conflict=site)
            if b not in visited:
                visited.add(b)
                queue.append(b)
    assignment = dict(sorted(assignment.items()))
    if not is_proper_coloring(G, assignment):
        raise StructureError("chain coloring left a monochromatic edge", code="improper_coloring")
    return ColoringResult(Outcome.COLORED, assignment=assignment, colors=len(set(assignment.values())))


def _color_low_dimension(G: Graph, d: int) -> ColoringResult:
    _check_dimension(G, d)
    if d == 0:
        assignment = {v: 0 for v in G.vertices}
        return ColoringResult(Outcome.COLORED, assignment=assignment, colors=1 if assignment else 0)
    if not is_cycle_graph(G):
        raise StructureError("a 1-sphere must be a cycle C_n with n >= 4", code="not_a_cycle")
    if G.order % 2:
        return ColoringResult(Outcome.OBSTRUCTION, obstructions=(((), G.order),))
    assignment: dict[int, int] = {}
    prev, cur = None, G.vertices[0]
    for i in range(G.order):
        assignment[cur] = i % 2
        nxt = next(w for w in G.adjacency(cur) if w != prev) if prev is not None else G.adjacency(cur)[0]
        prev, cur = cur, nxt
    return ColoringResult(Outcome.COLORED, assignment=dict(sorted(assignment.items())), colors=2)


def nerve_sign_partition(G: Graph, d: int) -> SignPartition:
    result = chain_color(G, d, precheck=False)
    if not result.ok:
        raise ColoringFailure(f"chain coloring ended in {result.outcome.value}", result)
    N = nerve(G)
    orientation = _coherent_orientation(N)
    positive, negative = [], []
    for i, s in enumerate(N.simplices):
        sign = orientation[i] * _parity([result.assignment[v] for v in s])
        (positive if sign > 0 else negative).append(s)
    for a, b in N.graph.edges():
        if (N.simplices[a] in positive) == (N.simplices[b] in positive):
            raise StructureError("adjacent simplices carry the same sign", code="sign_not_alternating")
    return SignPartition(positive=tuple(positive), negative=tuple(negative))


def _parity(seq: list[int]) -> int:
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inversions % 2 else 1


def _coherent_orientation(N: NerveGraph) -> dict[int, int]:
    """Signs making neighbours induce opposite orientations on their shared face."""
    eps = {0: 1}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        sa = N.simplices[a]
        for b in N.graph.adjacency(a):
            sb = N.simplices[b]
            i = next(k for k, v in enumerate(sa) if v not in sb)
            j = next(k for k, v in enumerate(sb) if v not in sa)
            want = -eps[a] * (-1) ** (i + j)
            if b not in eps:
                eps[b] = want
                queue.append(b)
            elif eps[b] != want:
                raise StructureError("complex is not orientable", code="not_orientable")
    return eps


# =========================================================
# Exact chromatic number
# =========================================================
class _OutOfNodes(Exception):
    pass


def theorem_lower_bound(G: Graph, d: int) -> int:
    """For a d-sphere: d+1 colors exactly when no (d-2)-simplex has odd degree, else at least d+2."""
    return d + 2 if eulerian_obstructions(G, d) else d + 1


def chromatic_number(
    G: Graph,
    cap: int | None = None,
    *,
    sphere_dimension: int | None = None,
    node_budget: int | None = None,
) -> ChromaticResult:
    """Greedy DSATUR upper bound, clique (and optionally theorem) lower bound,
    then exhaustive DSATUR backtracking between them."""
    limit = settings.chromatic_vertex_cap if cap is None else cap
    if G.order > limit:
        raise BudgetExceededError(
            f"exact coloring refused: {G.order} vertices exceed the cap of {limit}",
            code="chromatic_cap",
            order=G.order,
            cap=limit,
        )
    if G.order == 0:
        return ChromaticResult(0, 0, {}, ("empty",))
    nodes_left = settings.chromatic_node_budget if node_budget is None else node_budget

    greedy = nx.greedy_color(to_networkx(G), strategy="saturation_largest_first")
    best = {v: greedy[v] for v in G.vertices}
    upper = len(set(best.values()))
    lower = clique_complex(G).dimension + 1
    provenance = ["clique_lower_bound", "dsatur_upper_bound"]
    if sphere_dimension is not None and settings.chromatic_theorem_bound:
        bound = theorem_lower_bound(G, sphere_dimension)
        if bound > lower:
            lower = bound
        provenance.append("eulerian_theorem_lower_bound")

    counter = [nodes_left]
    k = lower
    while k < upper:
        try:
            found = _k_coloring(G, k, counter)
        except _OutOfNodes:
            logger.info("chromatic_bracket order=%s lower=%s upper=%s", G.order, lower, upper)
            provenance.append("node_budget_exhausted")
            break
        if found is None:
            lower = k + 1
            provenance.append(f"exhaustive_refutation_k={k}")
            k += 1
        else:
            best, upper = found, len(set(found.values()))
            provenance.append(f"backtracking_k={k}")
    if not is_proper_coloring(G, best):
        raise StructureError("solver produced an improper coloring", code="improper_coloring")
    return ChromaticResult(lower=min(lower, upper), upper=upper, coloring=dict(sorted(best.items())), provenance=tuple(provenance))


def _k_coloring(G: Graph, k: int, counter: list[int]) -> dict[int, int] | None:
    """DSATUR backtracking; a fresh color is only ever the next unused one."""
    colors: dict[int, int] = {}
    order = G.order

    def pick() -> int:
        best_key = None
        best_v = -1
        for v in G.vertices:
            if v in colors:
                continue
            sat = len({colors[u] for u in G.adjacency(v) if u in colors})
            free_deg = sum(1 for u in G.adjacency(v) if u not in colors)
            key = (-sat, -free_deg, v)
            if best_key is None or key < best_key:
                best_key, best_v = key, v
        return best_v

    def extend(used: int) -> bool:
        if len(colors) == order:
            return True
        counter[0] -= 1
        if counter[0] < 0:
            raise _OutOfNodes
        v = pick()
        blocked = {colors[u] for u in G.adjacency(v) if u in colors}
        for c in range(min(used + 1, k)):
            if c in blocked:
                continue
            colors[v] = c
            if extend(max(used, c + 1)):
                return True
            del colors[v]
        return False

    return dict(colors) if extend(0) else None


# =========================================================
# Classical Eulerian graphs and disks
# =========================================================
def is_eulerian_graph(G: Graph) -> bool:
    """Every degree even and the non-isolated vertices connected."""
    if any(G.degree(v) % 2 for v in G):
        return False
    core = [v for v in G if G.degree(v) > 0]
    if not core:
        return True
    return is_connected(induced(G, core))


def is_eulerian_disk(G: Graph, budget: int | None = None, recognizer: Recognizer | None = None) -> bool:
    """A d-ball that can be colored with d+1 colors."""
    rec = recognizer or default_recognizer
    c = rec.classify(G, budget)
    if c.kind is Kind.UNDECIDED:
        raise BudgetExceededError("Eulerian disk check ran out of budget")
    if not c.is_ball():
        return False
    chrom = chromatic_number(G)
    if not chrom.exact:
        raise BudgetExceededError("Eulerian disk check: chromatic search ran out of nodes")
    return chrom.upper <= c.dimension + 1


def nerve_is_bipartite(G: Graph) -> bool:
    return is_bipartite(nerve(G).graph).bipartite
