"""Deterministic constructors for the named graphs plus refinement families.

Labels
  cycle(n)            0..n-1 around the cycle
  path(n)             0..n-1 along the path
  complete(n)         0..n-1
  wheel(n)            rim 0..n-1, hub n
  cross_polytope(d)   0..2d+1, i opposite i+d+1 (the only non-edge at i)
  octahedron          cross_polytope(2)
  icosahedron         0 top, 1-5 upper ring, 6-10 lower ring, 11 bottom;
                      upper i meets lower 5+i and 5+(i mod 5)+1
  stellated_cube      cube corners 0-7 (bits = xyz), face centres 8-13
                      (8 + 2*axis + side)
  six_hundred_cell    the 120 unit icosians, axis points first, then the
                      16 half-integer points, then the 96 golden points
  bipyramid(n)        suspend(cycle(n)): rim 0..n-1, poles n, n+1
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product

from .errors import SphereError, StructureError, BudgetExceededError
from .graph_core import Graph, build_graph
from .complex import clique_complex
from .recognition import Kind, Recognizer, default_recognizer
from .rng import Lcg64
from .surgery import SurgeryRecord, double_subdivide, edge_subdivide, suspend

NAMES = (
    "cycle",
    "path",
    "complete",
    "wheel",
    "octahedron",
    "icosahedron",
    "cross_polytope",
    "six_hundred_cell",
    "stellated_cube",
    "bipyramid",
)


class GeneratorError(SphereError):
    """Unknown generator or invalid parameters."""

    code = "invalid_generator"


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    n: int | None = None
    d: int | None = None


@dataclass(frozen=True)
class RefineResult:
    graph: Graph
    records: tuple[SurgeryRecord, ...]


# =========================================================
# Families
# =========================================================
def cycle(n: int) -> Graph:
    _at_least("cycle", "n", n, 3)
    return build_graph(range(n), [(i, (i + 1) % n) for i in range(n)], name=f"cycle({n})")


def path(n: int) -> Graph:
    _at_least("path", "n", n, 1)
    return build_graph(range(n), [(i, i + 1) for i in range(n - 1)], name=f"path({n})")


def complete(n: int) -> Graph:
    _at_least("complete", "n", n, 0)
    return build_graph(range(n), combinations(range(n), 2), name=f"complete({n})")


def wheel(n: int) -> Graph:
    _at_least("wheel", "n", n, 3)
    edges = [(i, (i + 1) % n) for i in range(n)] + [(i, n) for i in range(n)]
    return build_graph(range(n + 1), edges, name=f"wheel({n})")


def cross_polytope(d: int) -> Graph:
    _at_least("cross_polytope", "d", d, 0)
    m = 2 * (d + 1)
    edges = [(i, j) for i, j in combinations(range(m), 2) if j - i != d + 1]
    return build_graph(range(m), edges, name=f"cross_polytope({d})")


def octahedron() -> Graph:
    return cross_polytope(2).with_name("octahedron")


def icosahedron() -> Graph:
    edges = [(0, i) for i in range(1, 6)] + [(11, i) for i in range(6, 11)]
    for i in range(1, 6):
        edges.append((i, i % 5 + 1))
        edges.append((5 + i, 5 + i % 5 + 1))
        edges.append((i, 5 + i))
        edges.append((i, 5 + i % 5 + 1))
    return build_graph(range(12), edges, name="icosahedron")


def stellated_cube() -> Graph:
    edges = [(c, c ^ (1 << axis)) for c in range(8) for axis in range(3) if not c & (1 << axis)]
    for axis in range(3):
        for side in range(2):
            centre = 8 + 2 * axis + side
            edges.extend((c, centre) for c in range(8) if (c >> axis) & 1 == side)
    return build_graph(range(14), edges, name="stellated_cube")


def bipyramid(n: int) -> Graph:
    _at_least("bipyramid", "n", n, 4)
    return suspend(cycle(n)).with_name(f"bipyramid({n})")


# ---- 600-cell over Q(sqrt 5) ----
@dataclass(frozen=True)
class _Surd:
    """a + b*sqrt(5) with rational a, b."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __add__(self, other: _Surd) -> _Surd:
        return _Surd(self.a + other.a, self.b + other.b)

    def __mul__(self, other: _Surd) -> _Surd:
        return _Surd(self.a * other.a + 5 * self.b * other.b, self.a * other.b + self.b * other.a)

    def __neg__(self) -> _Surd:
        return _Surd(-self.a, -self.b)


_ZERO = _Surd(Fraction(0))
_ONE = _Surd(Fraction(1))
_TWO = _Surd(Fraction(2))
_PHI = _Surd(Fraction(1, 2), Fraction(1, 2))
_INV_PHI = _Surd(Fraction(-1, 2), Fraction(1, 2))


def _even_permutations(n: int) -> list[tuple[int, ...]]:
    out = []
    for p in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        if inversions % 2 == 0:
            out.append(p)
    return out


def _icosians() -> list[tuple[_Surd, ...]]:
    """Unit icosians scaled by 2 (so every coordinate is an algebraic integer)."""
    points: list[tuple[_Surd, ...]] = []
    for axis in range(4):
        for sign in (_TWO, -_TWO):
            points.append(tuple(sign if i == axis else _ZERO for i in range(4)))
    for signs in product((_ONE, -_ONE), repeat=4):
        points.append(signs)
    for perm in _even_permutations(4):
        for s1, s2, s3 in product((1, -1), repeat=3):
            base = (_PHI if s1 > 0 else -_PHI, _ONE if s2 > 0 else -_ONE, _INV_PHI if s3 > 0 else -_INV_PHI, _ZERO)
            points.append(tuple(base[perm[i]] for i in range(4)))
    return points


def six_hundred_cell() -> Graph:
    """Neighbours are icosians at inner product phi/2, i.e. 2*phi = 1 + sqrt 5 after scaling."""
    pts = _icosians()
    target = _Surd(Fraction(1), Fraction(1))
    edges = []
    for i, j in combinations(range(len(pts)), 2):
        dot = _ZERO
        for p, q in zip(pts[i], pts[j]):
            dot = dot + p * q
        if dot == target:
            edges.append((i, j))
    return build_graph(range(len(pts)), edges, name="six_hundred_cell")


# =========================================================
# Dispatch
# =========================================================
def generate(spec: GeneratorSpec) -> Graph:
    name = spec.name
    if name in ("cycle", "path", "complete", "wheel", "bipyramid"):
        if spec.n is None:
            raise GeneratorError(f"{name} needs --n", code="missing_param", generator=name)
        return {"cycle": cycle, "path": path, "complete": complete, "wheel": wheel, "bipyramid": bipyramid}[name](spec.n)
    if name == "cross_polytope":
        if spec.d is None:
            raise GeneratorError("cross_polytope needs --d", code="missing_param", generator=name)
        return cross_polytope(spec.d)
    fixed = {
        "octahedron": octahedron,
        "icosahedron": icosahedron,
        "stellated_cube": stellated_cube,
        "six_hundred_cell": six_hundred_cell,
    }
    if name in fixed:
        return fixed[name]()
    raise GeneratorError(f"unknown generator {name!r} (known: {', '.join(NAMES)})", code="unknown_generator")


def _at_least(name: str, param: str, value: int, low: int) -> None:
    if not isinstance(value, int) or value < low:
        raise GeneratorError(f"{name} needs {param} >= {low}, got {value!r}", code="invalid_param", generator=name)


# =========================================================
# Refinements
# =========================================================
def loop_subdivide(G: Graph, budget: int | None = None, recognizer: Recognizer | None = None) -> Graph:
    """Split every triangle of a 2-sphere into four.

    Edge i (ascending) gets the midpoint id max(V) + 1 + i.
    """
    rec = recognizer or default_recognizer
    c = rec.classify(G, budget)
    if c.kind is Kind.UNDECIDED:
        raise BudgetExceededError("loop_subdivide: 2-sphere check ran out of budget")
    if not c.is_sphere(2):
        raise StructureError(f"loop_subdivide needs a 2-sphere, got {c.label}", code="not_a_2_sphere")
    base = max(G.vertices) + 1
    mid = {e: base + i for i, e in enumerate(G.edges())}
    adj: dict[int, set[int]] = {v: set() for v in G.vertices}
    for (u, v), m in mid.items():
        adj[m] = {u, v}
        adj[u].add(m)
        adj[v].add(m)
    for a, b, c3 in clique_complex(G).layer(2):
        ring = (mid[(a, b)], mid[(b, c3)], mid[(a, c3)])
        for p, q in combinations(ring, 2):
            adj[p].add(q)
            adj[q].add(p)
    name = f"loop_subdivide({G.name})" if G.name else None
    return Graph.from_adjacency(adj, name=name)


def random_refine(G: Graph, steps: int, seed: int, mode: str = "single") -> RefineResult:
    """`steps` subdivisions at edges drawn by Lcg64(seed) from the ascending edge list.

    mode="double" subdivides (a,b) then (a,x) each step, which keeps Eulerian spheres Eulerian.
    """
    if mode not in ("single", "double"):
        raise GeneratorError(f"unknown refinement mode {mode!r}", code="invalid_mode")
    if steps < 0:
        raise GeneratorError("steps must be non-negative", code="invalid_param")
    rng = Lcg64(seed)
    d = clique_complex(G).dimension
    H = G
    records: list[SurgeryRecord] = []
    for _ in range(steps):
        edges = H.edges()
        if not edges:
            raise GeneratorError(f"{G.name or 'graph'} has no edge to subdivide", code="no_edges")
        e = edges[rng.below(len(edges))]
        if mode == "single":
            H, rec = edge_subdivide(H, e, d)
            records.append(rec)
        else:
            H, pair = double_subdivide(H, e, d)
            records.extend(pair)
    return RefineResult(graph=H.with_name(G.name), records=tuple(records))
