"""Complementary duals, simplex degrees, the nerve of maximal simplices, bipartiteness
and the completed dual of a 2-sphere."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .complex import maximal_cliques
from .errors import BudgetExceededError, StructureError
from .graph_core import Graph, VertexSubset, common_neighbors, induced, is_clique, is_cycle_graph, subset_of
from .recognition import Kind, Recognizer, default_recognizer


class PurityError(StructureError):
    """Maximal cliques of mixed dimension."""

    code = "impure_complex"


@dataclass(frozen=True)
class DualResult:
    dual: Graph
    source: VertexSubset
    host: Graph


@dataclass(frozen=True)
class NerveGraph:
    """Node i stands for the maximal simplex simplices[i]; edges join simplices sharing a (d-1)-face."""

    graph: Graph
    simplices: tuple[tuple[int, ...], ...]
    dimension: int

    def node_of(self, simplex: Iterable[int]) -> int:
        return self.simplices.index(tuple(sorted(simplex)))


@dataclass(frozen=True)
class BipartiteResult:
    bipartite: bool
    sides: tuple[tuple[int, ...], tuple[int, ...]] | None
    odd_cycle: tuple[int, ...] | None


# =========================================================
# Complementary duals
# =========================================================
def complementary_dual(G: Graph, H: VertexSubset | Iterable[int]) -> DualResult:
    """Induced graph on the vertices adjacent to every vertex of H (all of G when H is empty)."""
    source = subset_of(G, H)
    if not source.members:
        return DualResult(dual=G, source=source, host=G)
    return DualResult(dual=induced(G, common_neighbors(G, source.members)), source=source, host=G)


def double_dual(G: Graph, H: VertexSubset | Iterable[int]) -> DualResult:
    source = subset_of(G, H)
    first = complementary_dual(G, source)
    second = complementary_dual(G, first.dual.vertices)
    return DualResult(dual=second.dual, source=source, host=G)


def simplex_degree(G: Graph, x: VertexSubset | Iterable[int], d: int | None = None) -> int:
    """Order of the dual of the clique x. With d given and x a (d-2)-simplex,
    the dual must be a circle C_n (n >= 4)."""
    sub = subset_of(G, x)
    if not is_clique(G, sub.members):
        raise StructureError(f"{list(sub.members)} is not a clique", code="not_a_clique", simplex=sub.members)
    dual = complementary_dual(G, sub).dual
    if d is not None and d >= 2 and len(sub) == d - 1 and not is_cycle_graph(dual):
        raise StructureError(
            f"dual of the {d - 2}-simplex {list(sub.members)} is not a circle",
            code="dual_not_cyclic",
            simplex=sub.members,
        )
    return dual.order


# =========================================================
# Nerve and bipartiteness
# =========================================================
def nerve(G: Graph) -> NerveGraph:
    tops = maximal_cliques(G)
    if not tops:
        return NerveGraph(graph=Graph({}), simplices=(), dimension=-1)
    sizes = sorted({len(t) for t in tops})
    if len(sizes) > 1:
        raise PurityError(
            f"maximal cliques have mixed dimensions {[s - 1 for s in sizes]}",
            dimensions=[s - 1 for s in sizes],
        )
    d = sizes[0] - 1
    by_face: dict[tuple[int, ...], list[int]] = {}
    for i, t in enumerate(tops):
        for face in combinations(t, d):
            by_face.setdefault(face, []).append(i)
    adj: dict[int, set[int]] = {i: set() for i in range(len(tops))}
    if d >= 1:
        for nodes in by_face.values():
            for a, b in combinations(nodes, 2):
                adj[a].add(b)
                adj[b].add(a)
    return NerveGraph(graph=Graph.from_adjacency(adj), simplices=tuple(tops), dimension=d)


def is_bipartite(G: Graph) -> BipartiteResult:
    """Two-coloring by BFS from the least vertex of each component, or an odd closed walk."""
    side: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    for root in G.vertices:
        if root in side:
            continue
        side[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in G.adjacency(u):
                if w not in side:
                    side[w] = 1 - side[u]
                    parent[w] = u
                    queue.append(w)
                elif side[w] == side[u]:
                    return BipartiteResult(False, None, _odd_cycle(parent, u, w))
    left = tuple(v for v in G.vertices if side[v] == 0)
    right = tuple(v for v in G.vertices if side[v] == 1)
    return BipartiteResult(True, (left, right), None)


def _odd_cycle(parent: dict[int, int | None], u: int, w: int) -> tuple[int, ...]:
    def path(v: int) -> list[int]:
        out = [v]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return out

    pu, pw = path(u), path(w)
    on_w = set(pw)
    meet = next(v for v in pu if v in on_w)
    left = pu[: pu.index(meet) + 1]
    right = pw[: pw.index(meet)]
    return tuple(left + right[::-1])


# =========================================================
# Completed dual (d = 2)
# =========================================================
def dual_completion_2d(G: Graph, budget: int | None = None, recognizer: Recognizer | None = None) -> Graph:
    """Original vertices plus one node per triangle; nerve edges plus vertex-triangle incidences.

    Triangle i (ascending order) gets id max(V) + 1 + i.
    """
    rec = recognizer or default_recognizer
    _require_2_sphere(G, budget, rec)
    N = nerve(G)
    base = max(G.vertices) + 1
    adj: dict[int, set[int]] = {v: set() for v in G.vertices}
    for i in range(len(N.simplices)):
        adj[base + i] = set()
    for a, b in N.graph.edges():
        adj[base + a].add(base + b)
        adj[base + b].add(base + a)
    for i, tri in enumerate(N.simplices):
        for v in tri:
            adj[v].add(base + i)
            adj[base + i].add(v)
    name = f"dual_completion({G.name})" if G.name else None
    out = Graph.from_adjacency(adj, name=name)
    check = rec.classify(out, budget)
    if check.kind is Kind.UNDECIDED:
        raise BudgetExceededError("dual completion: verification ran out of budget")
    if not check.is_sphere(2):
        raise StructureError(f"dual completion classified as {check.label}", code="completion_not_sphere")
    return out


def _require_2_sphere(G: Graph, budget: int | None, rec: Recognizer) -> None:
    c = rec.classify(G, budget)
    if c.kind is Kind.UNDECIDED:
        raise BudgetExceededError("2-sphere check ran out of budget")
    if not c.is_sphere(2):
        raise StructureError(f"input is {c.label}, not a 2-sphere", code="not_a_2_sphere")
