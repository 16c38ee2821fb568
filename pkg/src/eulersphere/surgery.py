"""Edge subdivision and collapse, suspension, connected sums and the degree-4 collapse.

Ids: a subdivision vertex gets max(V) + 1; a collapse keeps the smaller endpoint.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .complex import clique_complex
from .errors import BudgetExceededError, SphereError, StructureError
from .graph_core import (
    Graph,
    are_isomorphic,
    ball_of_radius,
    common_neighbors,
    unit_sphere,
)
from .recognition import Kind, Recognizer, default_recognizer

logger = logging.getLogger(__name__)


class SurgeryError(SphereError):
    """Surgery precondition failed."""

    code = "surgery_error"


ParityFlip = tuple[tuple[int, ...], int, int]


@dataclass(frozen=True)
class SurgeryRecord:
    """What a surgery did. `replay(input, record)` rebuilds the output.

    parity_flipped lists ((d-2)-clique, degree before, degree after) for every
    clique whose degree changed parity.
    """

    operation: str
    edge: tuple[int, int] | None = None
    vertex: int | None = None
    new_vertex: int | None = None
    dual: tuple[int, ...] = ()
    parity_flipped: tuple[ParityFlip, ...] = ()
    note: str | None = None


@dataclass(frozen=True)
class CollapseCandidates:
    safe: tuple[tuple[int, int], ...]
    undecided: tuple[tuple[int, int], ...]

    @property
    def irreducible(self) -> bool | None:
        if self.safe:
            return False
        return None if self.undecided else True


def _edge(G: Graph, e: tuple[int, int]) -> tuple[int, int]:
    a, b = sorted(e)
    if not G.has_edge(a, b):
        raise SurgeryError(f"({a},{b}) is not an edge", code="edge_absent", edge=(a, b))
    return a, b


def _degree(G: Graph, clique: tuple[int, ...]) -> int:
    return len(common_neighbors(G, clique)) if clique else G.order


# =========================================================
# Subdivision / collapse
# =========================================================
def edge_subdivide(G: Graph, e: tuple[int, int], d: int | None = None) -> tuple[Graph, SurgeryRecord]:
    """Replace (a,b) by a new vertex x joined to a, b and every vertex of the dual of the edge."""
    a, b = _edge(G, e)
    x = max(G.vertices) + 1
    dual = tuple(sorted(common_neighbors(G, (a, b))))
    adj = {v: set(G.neighbors(v)) for v in G.vertices}
    adj[a].discard(b)
    adj[b].discard(a)
    adj[x] = {a, b, *dual}
    for v in adj[x]:
        adj[v].add(x)
    H = Graph.from_adjacency(adj, name=G.name)
    flips = _parity_flips(G, H, (a, b), dual, d)
    return H, SurgeryRecord("edge_subdivide", edge=(a, b), new_vertex=x, dual=dual, parity_flipped=flips)


def _parity_flips(
    G: Graph, H: Graph, edge: tuple[int, int], dual: tuple[int, ...], d: int | None
) -> tuple[ParityFlip, ...]:
    """(d-2)-cliques present before and after whose degree changed parity.

    Only cliques meeting {a, b} or the dual can change degree.
    """
    if d is None:
        d = clique_complex(G).dimension
    k = d - 2
    if k < -1:
        return ()
    if k == -1:
        return (((), G.order, H.order),) if (H.order - G.order) % 2 else ()
    a, b = edge
    region = {a, b, *dual}
    out = []
    for c in clique_complex(G).layer(k):
        if a in c and b in c:
            continue
        if region.isdisjoint(c):
            continue
        before, after = _degree(G, c), _degree(H, c)
        if (after - before) % 2:
            out.append((c, before, after))
    return tuple(out)


def edge_collapse(G: Graph, e: tuple[int, int]) -> tuple[Graph, SurgeryRecord]:
    """Identify a and b (a < b keeps its id); edges (y,b) become (y,a)."""
    a, b = _edge(G, e)
    adj = {v: set(G.neighbors(v)) for v in G.vertices if v != b}
    for y in G.neighbors(b):
        if y == a:
            continue
        adj[y].discard(b)
        adj[y].add(a)
        adj[a].add(y)
    adj[a].discard(b)
    H = Graph.from_adjacency(adj, name=G.name)
    return H, SurgeryRecord("edge_collapse", edge=(a, b), vertex=b)


def double_subdivide(G: Graph, e: tuple[int, int], d: int | None = None) -> tuple[Graph, tuple[SurgeryRecord, SurgeryRecord]]:
    """Subdivide (a,b) with x, then (a,x). The second step flips the same cliques back."""
    a, b = _edge(G, e)
    H1, first = edge_subdivide(G, (a, b), d)
    H2, second = edge_subdivide(H1, (a, first.new_vertex), d)
    second = SurgeryRecord(
        second.operation,
        edge=second.edge,
        new_vertex=second.new_vertex,
        dual=second.dual,
        parity_flipped=second.parity_flipped,
        note=f"second half of double subdivision of ({a},{b})",
    )
    return H2, (first, second)


def safe_collapse_candidates(
    G: Graph, d: int, budget: int | None = None, recognizer: Recognizer | None = None
) -> CollapseCandidates:
    """Edges whose collapse still classifies as geometric(d), each re-verified from scratch."""
    rec = recognizer or default_recognizer
    safe, undecided = [], []
    for e in G.edges():
        H, _ = edge_collapse(G, e)
        c = rec.classify(H, budget)
        if c.kind is Kind.UNDECIDED:
            undecided.append(e)
        elif c.is_geometric and c.dimension == d:
            safe.append(e)
    return CollapseCandidates(tuple(safe), tuple(undecided))


def is_irreducible(G: Graph, d: int, budget: int | None = None, recognizer: Recognizer | None = None) -> bool | None:
    """None when some collapse could not be decided within budget and none was safe."""
    return safe_collapse_candidates(G, d, budget, recognizer).irreducible


# =========================================================
# Suspension / connected sum
# =========================================================
def suspend(G: Graph) -> Graph:
    top = max(G.vertices) + 1 if G.order else 0
    n, s = top, top + 1
    adj = {v: set(G.neighbors(v)) | {n, s} for v in G.vertices}
    adj[n] = set(G.vertices)
    adj[s] = set(G.vertices)
    name = f"suspend({G.name})" if G.name else None
    return Graph.from_adjacency(adj, name=name)


def connected_sum(G1: Graph, x: int, G2: Graph, y: int) -> tuple[Graph, SurgeryRecord]:
    """Delete x and y, glue S(y) onto S(x) through the first isomorphism found.

    Vertices of G2 outside S(y) are relabelled max(V1) + 1, + 2, ... ascending.
    """
    S1, S2 = unit_sphere(G1, x), unit_sphere(G2, y)
    cert = are_isomorphic(S2, S1)
    if cert is None:
        raise SurgeryError(
            f"unit spheres S({x}) and S({y}) are not isomorphic",
            code="spheres_not_isomorphic",
            x=x,
            y=y,
        )
    relabel = dict(cert.mapping)
    nxt = max(G1.vertices) + 1
    for v in G2.vertices:
        if v != y and v not in relabel:
            relabel[v] = nxt
            nxt += 1
    adj = {v: set(G1.neighbors(v)) - {x} for v in G1.vertices if v != x}
    for v in relabel.values():
        adj.setdefault(v, set())
    for u, v in G2.edges():
        if y in (u, v):
            continue
        adj[relabel[u]].add(relabel[v])
        adj[relabel[v]].add(relabel[u])
    H = Graph.from_adjacency(adj)
    glue = ",".join(f"{s}->{t}" for s, t in sorted(cert.mapping.items()))
    note = f"removed {x} from the first graph and {y} from the second; glued {glue}"
    return H, SurgeryRecord("connected_sum", vertex=x, dual=S1.vertices, note=note)


# =========================================================
# Degree-4 collapse
# =========================================================
def degree4_collapse(
    G: Graph, x: int, budget: int | None = None, recognizer: Recognizer | None = None
) -> tuple[Graph, SurgeryRecord]:
    """Remove a degree-4 vertex and join a non-adjacent pair of its unit sphere.

    Needs G a 2-sphere and the radius-2 disc around x a 2-ball. The lesser diagonal of S(x)
    is tried first, then the other one; the output is re-verified.
    """
    rec = recognizer or default_recognizer
    if G.degree(x) != 4:
        raise SurgeryError(f"vertex {x} has degree {G.degree(x)}, not 4", code="degree_not_four", vertex=x)
    _require(rec.classify(G, budget), lambda c: c.is_sphere(2), "input is not a 2-sphere", "not_a_2_sphere")
    disc = ball_of_radius(G, x, 2)
    _require(rec.classify(disc, budget), lambda c: c.is_ball(2), f"radius-2 disc at {x} is not a 2-ball", "disc_not_ball")
    S = unit_sphere(G, x)
    diagonals = [(u, v) for u in S.vertices for v in S.vertices if u < v and not S.has_edge(u, v)]
    for pair in diagonals[:-1]:
        H = _join_diagonal(G, x, pair)
        c = rec.classify(H, budget)
        if c.kind is Kind.UNDECIDED:
            raise BudgetExceededError("degree-4 collapse: recognition budget exhausted")
        if c.is_sphere(2):
            return H, SurgeryRecord("degree4_collapse", edge=pair, vertex=x, dual=S.vertices)
        logger.debug("degree4_diagonal_rejected vertex=%s edge=%s label=%s", x, pair, c.label)
    pair = diagonals[-1]
    H = _join_diagonal(G, x, pair)
    _require(rec.classify(H, budget), lambda c: c.is_sphere(2), "degree-4 collapse did not give a 2-sphere", "collapse_not_sphere")
    return H, SurgeryRecord("degree4_collapse", edge=pair, vertex=x, dual=S.vertices)


def _join_diagonal(G: Graph, x: int, pair: tuple[int, int]) -> Graph:
    adj = {v: set(G.neighbors(v)) - {x} for v in G.vertices if v != x}
    u, v = pair
    adj[u].add(v)
    adj[v].add(u)
    return Graph.from_adjacency(adj, name=G.name)


def _require(c, test, message: str, code: str) -> None:
    if c.kind is Kind.UNDECIDED:
        raise BudgetExceededError(f"{message}: recognition budget exhausted")
    if not test(c):
        error = StructureError if code == "collapse_not_sphere" else SurgeryError
        raise error(f"{message} ({c.label})", code=code)


# =========================================================
# Replay
# =========================================================
def replay(G: Graph, record: SurgeryRecord) -> Graph:
    """Re-apply a single-graph record to its input."""
    if record.operation == "edge_subdivide":
        return edge_subdivide(G, record.edge)[0]
    if record.operation == "edge_collapse":
        return edge_collapse(G, record.edge)[0]
    if record.operation == "degree4_collapse":
        return _join_diagonal(G, record.vertex, record.edge)
    raise SurgeryError(f"cannot replay {record.operation!r} on a single graph", code="not_replayable")
