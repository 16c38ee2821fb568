"""Recursive recognition of contractible graphs, balls, spheres and geometric graphs.

    contractible  one point; or some x with S(x) and G - x both contractible
    sphere(d)     every S(x) a (d-1)-sphere and some G - x contractible;
                  the empty graph is sphere(-1)
    ball(d)       every S(x) a (d-1)-sphere or (d-1)-ball, G contractible,
                  the ball-linked vertices induce a (d-1)-sphere
    geometric(d)  every S(x) a (d-1)-sphere or (d-1)-ball

The search is exact and memoized on isomorphism classes. A node budget bounds
the work; when it runs out the verdict is `budget_exceeded`, never a guess.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .complex import euler_characteristic
from .config import settings
from .errors import BudgetExceededError, StructureError
from .graph_core import (
    Graph,
    IsoCertificate,
    VertexSubset,
    are_isomorphic,
    automorphisms,
    induced,
    invariant_key,
    is_connected,
    unit_sphere,
)

logger = logging.getLogger(__name__)

Witness = Union[int, tuple[int, ...], str, None]


class Answer(str, Enum):
    YES = "yes"
    NO = "no"
    BUDGET_EXCEEDED = "budget_exceeded"


class Kind(str, Enum):
    SPHERE = "sphere"
    BALL = "ball"
    GEOMETRIC = "geometric"
    NONE = "none"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class ClassVerdict:
    """Three-valued answer.

    witness by verdict:
      contractible yes  removal sequence (each removed vertex has a contractible
                        unit sphere in the current graph; one vertex remains)
      classify yes      sphere: the vertex whose deletion is contractible;
                        ball: the removal sequence of the whole graph
      no                the failing vertex, or a clause name such as
                        "disconnected" / "euler_characteristic=0"
    """

    answer: Answer
    witness: Witness = None
    budget_spent: int = 0

    @property
    def yes(self) -> bool:
        return self.answer is Answer.YES

    @property
    def decided(self) -> bool:
        return self.answer is not Answer.BUDGET_EXCEEDED


@dataclass(frozen=True)
class Classification:
    kind: Kind
    dimension: int | None
    boundary: VertexSubset
    verdict: ClassVerdict

    @property
    def has_boundary(self) -> bool:
        return len(self.boundary) > 0

    @property
    def is_geometric(self) -> bool:
        return self.kind in (Kind.SPHERE, Kind.BALL, Kind.GEOMETRIC)

    def is_sphere(self, d: int | None = None) -> bool:
        return self.kind is Kind.SPHERE and (d is None or self.dimension == d)

    def is_ball(self, d: int | None = None) -> bool:
        return self.kind is Kind.BALL and (d is None or self.dimension == d)

    @property
    def label(self) -> str:
        if self.kind in (Kind.NONE, Kind.UNDECIDED):
            return self.kind.value
        suffix = "+boundary" if self.kind is Kind.GEOMETRIC and self.has_boundary else ""
        return f"{self.kind.value}({self.dimension}){suffix}"


# =========================================================
# internals
# =========================================================
class _Exhausted(Exception):
    pass


class _Budget:
    __slots__ = ("limit", "spent")

    def __init__(self, limit: int):
        self.limit = limit
        self.spent = 0

    def charge(self) -> None:
        self.spent += 1
        if self.spent > self.limit:
            raise _Exhausted


@dataclass(frozen=True)
class _Contractible:
    yes: bool
    witness: Witness


@dataclass(frozen=True)
class _Shape:
    kind: Kind
    dimension: int | None
    boundary: tuple[int, ...]
    witness: Witness


def _translate(w: Witness, cert: IsoCertificate | None) -> Witness:
    if cert is None or w is None or isinstance(w, str):
        return w
    if isinstance(w, int):
        return cert.mapping[w]
    return tuple(cert.mapping[v] for v in w)


class _IsoMemo:
    """Insert-only table keyed on isomorphism class; lookups return the certificate rep -> query."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._exact: dict[Graph, object] = {}
        self._buckets: dict[tuple, list[tuple[Graph, object]]] = {}

    def lookup(self, G: Graph) -> tuple[object | None, IsoCertificate | None, tuple | None]:
        with self._lock:
            hit = self._exact.get(G)
        if hit is not None:
            return hit, None, None
        key = invariant_key(G)
        with self._lock:
            candidates = list(self._buckets.get(key, ()))
        for rep, value in candidates:
            cert = are_isomorphic(rep, G)
            if cert is not None:
                return value, cert, key
        return None, None, key

    def store(self, G: Graph, key: tuple | None, value: object) -> None:
        with self._lock:
            if G in self._exact:
                return
            self._exact[G] = value
            self._buckets.setdefault(key if key is not None else invariant_key(G), []).append((G, value))

    def __len__(self) -> int:
        with self._lock:
            return len(self._exact)

    def clear(self) -> None:
        with self._lock:
            self._exact.clear()
            self._buckets.clear()


def _without(G: Graph, x: int) -> Graph:
    return induced(G, [v for v in G.vertices if v != x])


# =========================================================
# Recognizer
# =========================================================
class Recognizer:
    """Holds the memo tables. Safe to share between threads."""

    def __init__(self, budget: int | None = None):
        self.default_budget = settings.recognition_budget if budget is None else budget
        self._contractible_memo = _IsoMemo()
        self._shape_memo = _IsoMemo()

    def clear_cache(self) -> None:
        self._contractible_memo.clear()
        self._shape_memo.clear()

    @property
    def cache_size(self) -> int:
        return len(self._contractible_memo) + len(self._shape_memo)

    def _budget(self, budget: int | None) -> _Budget:
        return _Budget(self.default_budget if budget is None else budget)

    # ---- contractibility ----
    def _contractible(self, G: Graph, budget: _Budget) -> _Contractible:
        if G.order == 0:
            return _Contractible(False, "empty")
        if G.order == 1:
            return _Contractible(True, ())
        cached, cert, key = self._contractible_memo.lookup(G)
        if cached is not None:
            return _Contractible(cached.yes, _translate(cached.witness, cert))
        budget.charge()
        result = self._contractible_search(G, budget)
        self._contractible_memo.store(G, key, result)
        return result

    def _contractible_search(self, G: Graph, budget: _Budget) -> _Contractible:
        if not is_connected(G):
            return _Contractible(False, "disconnected")
        chi = euler_characteristic(G)
        if chi != 1:
            return _Contractible(False, f"euler_characteristic={chi}")
        n = G.order
        for v in G.vertices:
            if G.degree(v) == n - 1:
                # cone over G - v
                return _Contractible(True, tuple(u for u in G.vertices if u != v))
        for x in sorted(G.vertices, key=lambda v: (G.degree(v), v)):
            if not self._contractible(unit_sphere(G, x), budget).yes:
                continue
            rest = self._contractible(_without(G, x), budget)
            if rest.yes:
                return _Contractible(True, (x,) + rest.witness)
        return _Contractible(False, "no_removable_vertex")

    # ---- classification ----
    def _classify(self, G: Graph, budget: _Budget) -> _Shape:
        if G.order == 0:
            return _Shape(Kind.SPHERE, -1, (), None)
        cached, cert, key = self._shape_memo.lookup(G)
        if cached is not None:
            boundary = tuple(sorted(_translate(cached.boundary, cert))) if cert is not None else cached.boundary
            return _Shape(cached.kind, cached.dimension, boundary, _translate(cached.witness, cert))
        budget.charge()
        shape = self._classify_fresh(G, budget)
        self._shape_memo.store(G, key, shape)
        return shape

    def _classify_fresh(self, G: Graph, budget: _Budget) -> _Shape:
        link_dim: int | None = None
        boundary: list[int] = []
        for x in G.vertices:
            s = self._classify(unit_sphere(G, x), budget)
            if s.kind not in (Kind.SPHERE, Kind.BALL):
                return _Shape(Kind.NONE, None, (), x)
            if link_dim is None:
                link_dim = s.dimension
            elif s.dimension != link_dim:
                return _Shape(Kind.NONE, None, (), x)
            if s.kind is Kind.BALL:
                boundary.append(x)
        d = link_dim + 1

        if not boundary:
            for x in G.vertices:
                if self._contractible(_without(G, x), budget).yes:
                    return _Shape(Kind.SPHERE, d, (), x)

        # boundary == V would make the boundary graph G itself, of dimension d, never a (d-1)-sphere
        if len(boundary) < G.order:
            rim = self._classify(induced(G, boundary), budget)
            if rim.kind is Kind.SPHERE and rim.dimension == d - 1:
                whole = self._contractible(G, budget)
                if whole.yes:
                    return _Shape(Kind.BALL, d, tuple(boundary), whole.witness)
        return _Shape(Kind.GEOMETRIC, d, tuple(boundary), None)

    # ---- public API ----
    def is_contractible(self, G: Graph, budget: int | None = None) -> ClassVerdict:
        b = self._budget(budget)
        try:
            r = self._contractible(G, b)
        except _Exhausted:
            logger.warning("recognition_budget_exhausted op=is_contractible order=%s budget=%s", G.order, b.limit)
            return ClassVerdict(Answer.BUDGET_EXCEEDED, None, b.spent)
        return ClassVerdict(Answer.YES if r.yes else Answer.NO, r.witness, b.spent)

    def classify(self, G: Graph, budget: int | None = None) -> Classification:
        b = self._budget(budget)
        try:
            s = self._classify(G, b)
        except _Exhausted:
            logger.warning("recognition_budget_exhausted op=classify order=%s budget=%s", G.order, b.limit)
            return Classification(
                Kind.UNDECIDED, None, VertexSubset(()), ClassVerdict(Answer.BUDGET_EXCEEDED, None, b.spent)
            )
        answer = Answer.NO if s.kind is Kind.NONE else Answer.YES
        return Classification(s.kind, s.dimension, VertexSubset(s.boundary), ClassVerdict(answer, s.witness, b.spent))

    def boundary(self, G: Graph, budget: int | None = None) -> VertexSubset:
        c = self.classify(G, budget)
        if c.kind is Kind.UNDECIDED:
            raise BudgetExceededError("boundary: recognition budget exhausted", code="budget_exceeded")
        if not c.is_geometric:
            raise StructureError("boundary: graph is not geometric", code="not_geometric", vertex=c.verdict.witness)
        return c.boundary

    def is_platonic_sphere(self, G: Graph, budget: int | None = None, *, assume_sphere: bool = False) -> ClassVerdict:
        """Platonic check. `assume_sphere` skips only the top-level deletion test
        (for hosts already known to be spheres); unit spheres are always verified."""
        b = self._budget(budget)
        try:
            ok, witness = self._platonic(G, b, assume_sphere)
        except _Exhausted:
            logger.warning("recognition_budget_exhausted op=is_platonic_sphere order=%s budget=%s", G.order, b.limit)
            return ClassVerdict(Answer.BUDGET_EXCEEDED, None, b.spent)
        return ClassVerdict(Answer.YES if ok else Answer.NO, witness, b.spent)

    def _platonic(self, G: Graph, budget: _Budget, assume_sphere: bool) -> tuple[bool, Witness]:
        if G.order == 0:
            return True, None
        spheres = [unit_sphere(G, x) for x in G.vertices]
        if assume_sphere:
            link = self._classify(spheres[0], budget)
            if link.kind is not Kind.SPHERE:
                return False, G.vertices[0]
            d = link.dimension + 1
        else:
            s = self._classify(G, budget)
            if s.kind is not Kind.SPHERE:
                return False, "not_a_sphere"
            d = s.dimension
        if d <= 1:
            return True, None
        first = spheres[0]
        for x, S in zip(G.vertices[1:], spheres[1:]):
            if are_isomorphic(first, S) is None:
                return False, x
        ok, _ = self._platonic(first, budget, False)
        return (True, None) if ok else (False, G.vertices[0])

    def is_uniform_sphere(self, G: Graph, budget: int | None = None) -> ClassVerdict:
        """Sphere whose automorphisms move every unit sphere onto one meeting any other:
        for all x, y some T in Aut(G) has T(S(x)) ∩ S(y) non-empty."""
        c = self.classify(G, budget)
        if c.kind is Kind.UNDECIDED:
            return c.verdict
        if not c.is_sphere():
            return ClassVerdict(Answer.NO, "not_a_sphere", c.verdict.budget_spent)
        auts = automorphisms(G)
        for x in G.vertices:
            orbit = {p[x] for p in auts}
            for y in G.vertices:
                if not any(G.neighbors(z) & G.neighbors(y) for z in orbit):
                    return ClassVerdict(Answer.NO, (x, y), c.verdict.budget_spent)
        return ClassVerdict(Answer.YES, None, c.verdict.budget_spent)

    def verify_removal_sequence(self, G: Graph, sequence: tuple[int, ...], budget: int | None = None) -> bool:
        """Replay a contractibility witness."""
        current = G
        for v in sequence:
            if v not in current:
                return False
            if not self.is_contractible(unit_sphere(current, v), budget).yes:
                return False
            current = _without(current, v)
        return current.order == 1


# =========================================================
# module-level API on a shared recognizer
# =========================================================
default_recognizer = Recognizer()


def is_contractible(G: Graph, budget: int | None = None) -> ClassVerdict:
    return default_recognizer.is_contractible(G, budget)


def classify(G: Graph, budget: int | None = None) -> Classification:
    return default_recognizer.classify(G, budget)


def boundary(G: Graph, budget: int | None = None) -> VertexSubset:
    return default_recognizer.boundary(G, budget)


def is_platonic_sphere(G: Graph, budget: int | None = None, *, assume_sphere: bool = False) -> ClassVerdict:
    return default_recognizer.is_platonic_sphere(G, budget, assume_sphere=assume_sphere)


def is_uniform_sphere(G: Graph, budget: int | None = None) -> ClassVerdict:
    return default_recognizer.is_uniform_sphere(G, budget)


def clear_cache() -> None:
    default_recognizer.clear_cache()


@lru_cache(maxsize=8192)
def _dimension(G: Graph) -> Fraction:
    if G.order == 0:
        return Fraction(-1)
    return 1 + sum((_dimension(unit_sphere(G, x)) for x in G.vertices), Fraction(0)) / G.order


def inductive_dimension(G: Graph) -> Fraction:
    """1 + mean dimension of the unit spheres; -1 for the empty graph."""
    return _dimension(G)
