"""Immutable finite simple graphs and the primitives every other module leans on.

Vertex ids are non-negative integers and are preserved by every derived
graph (unit spheres, induced subgraphs, duals), so results can always be
traced back to the host. Iteration order is ascending id everywhere.

Isomorphism uses joint color refinement of the two graphs followed by
individualization backtracking on the first smallest non-singleton cell.
The same search run on (G, G) enumerates Aut(G) leaf by leaf.
"""

from __future__ import annotations

import logging
from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .config import settings
from .errors import BudgetExceededError, SphereError

logger = logging.getLogger(__name__)


class GraphError(SphereError):
    """Malformed graph construction or a vertex that is not in the graph."""

    code = "graph_error"


# =========================================================
# Graph value type
# =========================================================
class Graph:
    """Finite simple undirected graph. Never mutated after construction.

    Use `build_graph` for validated construction; `Graph.from_adjacency` is
    the trusted fast path for derived graphs.
    """

    __slots__ = ("_vertices", "_nbrs", "_adj", "_name", "_edges", "_hash")

    def __init__(self, nbrs: Mapping[int, frozenset[int]], name: str | None = None):
        self._vertices: tuple[int, ...] = tuple(sorted(nbrs))
        self._nbrs: dict[int, frozenset[int]] = {v: nbrs[v] for v in self._vertices}
        self._adj: dict[int, tuple[int, ...]] = {v: tuple(sorted(self._nbrs[v])) for v in self._vertices}
        self._name = name
        self._edges: tuple[tuple[int, int], ...] | None = None
        self._hash: int | None = None

    @classmethod
    def from_adjacency(cls, adjacency: Mapping[int, Iterable[int]], name: str | None = None) -> Graph:
        return cls({v: frozenset(ns) for v, ns in adjacency.items()}, name=name)

    # ---- accessors ----
    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def name(self) -> str | None:
        return self._name

    @property
    def order(self) -> int:
        return len(self._vertices)

    @property
    def size(self) -> int:
        return len(self.edges())

    def adjacency(self, v: int) -> tuple[int, ...]:
        self._require(v)
        return self._adj[v]

    def neighbors(self, v: int) -> frozenset[int]:
        self._require(v)
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        self._require(v)
        return len(self._nbrs[v])

    def has_vertex(self, v: int) -> bool:
        return v in self._nbrs

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._nbrs and v in self._nbrs[u]

    def edges(self) -> tuple[tuple[int, int], ...]:
        if self._edges is None:
            self._edges = tuple((u, v) for u in self._vertices for v in self._adj[u] if u < v)
        return self._edges

    def adjacency_map(self) -> dict[int, frozenset[int]]:
        return dict(self._nbrs)

    def with_name(self, name: str | None) -> Graph:
        return Graph(self._nbrs, name=name)

    def _require(self, v: int) -> None:
        if v not in self._nbrs:
            raise GraphError(f"vertex {v} is not in the graph", code="vertex_absent", vertex=v)

    # ---- dunder ----
    def __len__(self) -> int:
        return len(self._vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self._vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._nbrs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self.edges() == other.edges()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, self.edges()))
        return self._hash

    def __repr__(self) -> str:
        label = f" {self._name!r}" if self._name else ""
        return f"<Graph{label} |V|={self.order} |E|={self.size}>"


@dataclass(frozen=True)
class VertexSubset:
    """Sorted set of vertex ids of some host graph."""

    members: tuple[int, ...]

    @classmethod
    def of(cls, ids: Iterable[int]) -> VertexSubset:
        return cls(tuple(sorted(set(ids))))

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, v: object) -> bool:
        return v in self.members


@dataclass(frozen=True)
class IsoCertificate:
    """Bijection source vertex -> target vertex preserving edges and non-edges."""

    mapping: dict[int, int]

    def __call__(self, v: int) -> int:
        return self.mapping[v]

    def inverse(self) -> IsoCertificate:
        return IsoCertificate({t: s for s, t in self.mapping.items()})

    def then(self, other: IsoCertificate) -> IsoCertificate:
        """self followed by other (G -> H -> K)."""
        return IsoCertificate({s: other.mapping[t] for s, t in self.mapping.items()})

    def verify(self, source: Graph, target: Graph) -> bool:
        m = self.mapping
        if sorted(m) != list(source.vertices) or sorted(m.values()) != list(target.vertices):
            return False
        if source.size != target.size:
            return False
        return all(target.has_edge(m[u], m[v]) for u, v in source.edges())


def subset_of(G: Graph, s: VertexSubset | Iterable[int]) -> VertexSubset:
    sub = s if isinstance(s, VertexSubset) else VertexSubset.of(s)
    for v in sub.members:
        if v not in G:
            raise GraphError(f"vertex {v} is not in the host graph", code="vertex_absent", vertex=v)
    return sub


# =========================================================
# Construction
# =========================================================
def build_graph(vertex_ids: Iterable[int], edges: Iterable[Iterable[int]], name: str | None = None) -> Graph:
    ids = list(vertex_ids)
    nbrs: dict[int, set[int]] = {}
    for v in ids:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise GraphError(f"vertex id {v!r} is not a non-negative integer", code="bad_vertex_id", vertex=v)
        if v in nbrs:
            raise GraphError(f"duplicate vertex id {v}", code="duplicate_vertex", vertex=v)
        nbrs[v] = set()
    for e in edges:
        pair = tuple(e)
        if len(pair) != 2:
            raise GraphError(f"edge {pair!r} does not have two endpoints", code="bad_edge", edge=pair)
        u, v = pair
        if u == v:
            raise GraphError(f"loop edge at {u}", code="loop_edge", edge=pair)
        for w in (u, v):
            if w not in nbrs:
                raise GraphError(f"edge endpoint {w} is not declared", code="undeclared_endpoint", edge=pair)
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph.from_adjacency(nbrs, name=name)


def empty_graph() -> Graph:
    return Graph({})


# =========================================================
# Neighborhoods and distances
# =========================================================
def induced(G: Graph, s: VertexSubset | Iterable[int]) -> Graph:
    keep = set(subset_of(G, s).members)
    return Graph({v: G.neighbors(v) & keep for v in keep})


def unit_sphere(G: Graph, v: int) -> Graph:
    return induced(G, G.neighbors(v))


def bfs_distances(G: Graph, v: int) -> dict[int, int]:
    G._require(v)
    dist = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in G.adjacency(u):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def sphere_of_radius(G: Graph, v: int, r: int) -> Graph:
    if r < 0:
        raise GraphError("radius must be non-negative", code="bad_radius", radius=r)
    dist = bfs_distances(G, v)
    return induced(G, [u for u, d in dist.items() if d == r])


def ball_of_radius(G: Graph, v: int, r: int) -> Graph:
    dist = bfs_distances(G, v)
    return induced(G, [u for u, d in dist.items() if d <= r])


def distance(G: Graph, u: int, v: int) -> int | None:
    """Shortest-path length, or None when u and v lie in different components."""
    G._require(v)
    return bfs_distances(G, u).get(v)


def connected_components(G: Graph) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    out: list[tuple[int, ...]] = []
    for v in G.vertices:
        if v in seen:
            continue
        comp = bfs_distances(G, v)
        seen.update(comp)
        out.append(tuple(sorted(comp)))
    return out


def is_connected(G: Graph) -> bool:
    return G.order == 0 or len(bfs_distances(G, G.vertices[0])) == G.order


def is_clique(G: Graph, s: Iterable[int]) -> bool:
    members = list(s)
    return all(G.has_edge(u, v) for i, u in enumerate(members) for v in members[i + 1 :])


def is_cycle_graph(G: Graph) -> bool:
    """C_n with n >= 4: connected and 2-regular. The triangle is a simplex, not a circle."""
    return G.order >= 4 and all(G.degree(v) == 2 for v in G) and is_connected(G)


def common_neighbors(G: Graph, s: Iterable[int]) -> frozenset[int]:
    it = iter(s)
    try:
        first = next(it)
    except StopIteration:
        return frozenset(G.vertices)
    acc = G.neighbors(first)
    for v in it:
        acc = acc & G.neighbors(v)
        if not acc:
            break
    return acc


# =========================================================
# Color refinement
# =========================================================
Coloring = dict[int, int]


def _refine(G: Graph, H: Graph, cg: Coloring, ch: Coloring) -> tuple[Coloring, Coloring] | None:
    """Joint refinement to the coarsest equitable partition.

    Color ids come from the sorted union of signatures, so they are
    comparable between the two graphs. Returns None as soon as the color
    histograms differ (no isomorphism extends the current individualization).
    """
    classes = len(set(cg.values()))
    while True:
        sig_g = {v: (cg[v], tuple(sorted(cg[u] for u in G._adj[v]))) for v in G._vertices}
        sig_h = {v: (ch[v], tuple(sorted(ch[u] for u in H._adj[v]))) for v in H._vertices}
        if Counter(sig_g.values()) != Counter(sig_h.values()):
            return None
        palette = {s: i for i, s in enumerate(sorted(set(sig_g.values())))}
        cg = {v: palette[s] for v, s in sig_g.items()}
        ch = {v: palette[s] for v, s in sig_h.items()}
        if len(palette) == classes:
            return cg, ch
        classes = len(palette)


def _target_cell(cg: Coloring) -> int | None:
    sizes = Counter(cg.values())
    open_cells = [(n, c) for c, n in sizes.items() if n > 1]
    if not open_cells:
        return None
    return min(open_cells)[1]


def _individualize(cg: Coloring, ch: Coloring, g: int, h: int) -> tuple[Coloring, Coloring]:
    fresh = max(cg.values()) + 1
    cg = dict(cg)
    ch = dict(ch)
    cg[g] = fresh
    ch[h] = fresh
    return cg, ch


def _leaf_mapping(G: Graph, H: Graph, cg: Coloring, ch: Coloring) -> dict[int, int] | None:
    by_color = {c: h for h, c in ch.items()}
    mapping = {g: by_color[c] for g, c in cg.items()}
    if all(H.has_edge(mapping[u], mapping[v]) for u, v in G.edges()):
        return mapping
    return None


def _search(
    G: Graph,
    H: Graph,
    cg: Coloring,
    ch: Coloring,
    collect: list[dict[int, int]] | None,
) -> dict[int, int] | None:
    refined = _refine(G, H, cg, ch)
    if refined is None:
        return None
    cg, ch = refined
    cell = _target_cell(cg)
    if cell is None:
        leaf = _leaf_mapping(G, H, cg, ch)
        if leaf is not None and collect is not None:
            collect.append(leaf)
            return None
        return leaf
    g0 = min(v for v, c in cg.items() if c == cell)
    for h in sorted(v for v, c in ch.items() if c == cell):
        found = _search(G, H, *_individualize(cg, ch, g0, h), collect)
        if found is not None:
            return found
    return None


def _quick_reject(G: Graph, H: Graph) -> bool:
    if G.order != H.order or G.size != H.size:
        return True
    return sorted(G.degree(v) for v in G) != sorted(H.degree(v) for v in H)


def _degree_coloring(G: Graph) -> Coloring:
    return {v: len(G._adj[v]) for v in G._vertices}


# =========================================================
# Isomorphism / automorphisms
# =========================================================
def are_isomorphic(G: Graph, H: Graph) -> IsoCertificate | None:
    """Certificate G -> H when the graphs are isomorphic, else None. Deterministic."""
    if _quick_reject(G, H):
        return None
    if G.order == 0:
        return IsoCertificate({})
    if G == H:
        return IsoCertificate({v: v for v in G})
    found = _search(G, H, _degree_coloring(G), _degree_coloring(H), None)
    return IsoCertificate(found) if found is not None else None


def automorphisms(G: Graph, cap: int | None = None) -> list[dict[int, int]]:
    """All automorphisms, sorted by image tuple in vertex order (identity first)."""
    limit = settings.automorphism_cap if cap is None else cap
    if G.order > limit:
        logger.info("automorphism_refused order=%s cap=%s", G.order, limit)
        raise BudgetExceededError(
            f"automorphism search refused: {G.order} vertices exceed the cap of {limit}",
            code="automorphism_cap",
            order=G.order,
            cap=limit,
        )
    if G.order == 0:
        return [{}]
    found: list[dict[int, int]] = []
    start = _degree_coloring(G)
    _search(G, G, start, dict(start), found)
    found.sort(key=lambda p: tuple(p[v] for v in G.vertices))
    return found


def find_automorphism(G: Graph, u: int, v: int) -> dict[int, int] | None:
    """One automorphism sending u to v, without enumerating the whole group."""
    G._require(u)
    G._require(v)
    start = _degree_coloring(G)
    if start[u] != start[v]:
        return None
    cg, ch = _individualize(start, dict(start), u, v)
    return _search(G, G, cg, ch, None)


def invariant_key(G: Graph) -> tuple:
    """Isomorphism invariant (WL refinement histogram). Equal graphs give equal keys."""
    colors = {v: hash(len(G._adj[v])) for v in G._vertices}
    classes = len(set(colors.values()))
    for _ in range(G.order):
        colors = {v: hash((colors[v], tuple(sorted(colors[u] for u in G._adj[v])))) for v in G._vertices}
        n = len(set(colors.values()))
        if n == classes:
            break
        classes = n
    return (G.order, G.size, tuple(sorted(Counter(colors.values()).items())))


def is_automorphism(G: Graph, perm: Mapping[int, int]) -> bool:
    return IsoCertificate(dict(perm)).verify(G, G)


def compose(p: Mapping[int, int], q: Mapping[int, int]) -> dict[int, int]:
    """p then q."""
    return {v: q[p[v]] for v in p}


def invert(p: Mapping[int, int]) -> dict[int, int]:
    return {t: s for s, t in p.items()}
