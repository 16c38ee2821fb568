"""Clique complex of a graph: simplices, volumes, incidence matrices, Betti numbers.

Orientation convention: a simplex is the ascending tuple of its vertices and
the face obtained by omitting position i carries the sign (-1)**i.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

import networkx as nx
import numpy as np

from .config import settings
from .errors import StructureError
from .graph_core import Graph, unit_sphere
from .graph_io import to_networkx

logger = logging.getLogger(__name__)

Simplex = tuple[int, ...]
VolumeVector = tuple[int, ...]


@dataclass(frozen=True)
class CliqueComplex:
    host: Graph
    simplices: tuple[tuple[Simplex, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def layer(self, k: int) -> tuple[Simplex, ...]:
        if 0 <= k < len(self.simplices):
            return self.simplices[k]
        return ()

    @property
    def volumes(self) -> VolumeVector:
        return tuple(len(layer) for layer in self.simplices)

    @cached_property
    def index(self) -> tuple[dict[Simplex, int], ...]:
        return tuple({s: i for i, s in enumerate(layer)} for layer in self.simplices)


def maximal_cliques(G: Graph) -> list[Simplex]:
    """Maximal cliques (pivoting Bron–Kerbosch), each ascending, list sorted."""
    if G.order == 0:
        return []
    return sorted(tuple(sorted(c)) for c in nx.find_cliques(to_networkx(G)))


def clique_complex(G: Graph) -> CliqueComplex:
    layers: dict[int, set[Simplex]] = {}
    for top in maximal_cliques(G):
        for k in range(len(top)):
            bucket = layers.setdefault(k, set())
            bucket.update(combinations(top, k + 1))
    ordered = tuple(tuple(sorted(layers[k])) for k in range(len(layers)))
    return CliqueComplex(host=G, simplices=ordered)


def volumes(G: Graph) -> VolumeVector:
    return clique_complex(G).volumes


def euler_characteristic_of(v: VolumeVector) -> int:
    return sum((-1) ** k * n for k, n in enumerate(v))


def euler_characteristic(G: Graph) -> int:
    return euler_characteristic_of(volumes(G))


def local_volume(G: Graph, x: int, k: int) -> int:
    """V_k(x) = v_k(S(x)); V_{-1}(x) = 1."""
    S = unit_sphere(G, x)
    if k == -1:
        return 1
    v = volumes(S)
    return v[k] if 0 <= k < len(v) else 0


def local_volumes(G: Graph, x: int) -> VolumeVector:
    return volumes(unit_sphere(G, x))


# =========================================================
# Incidence matrices
# =========================================================
def _boundary_columns(C: CliqueComplex, k: int) -> list[dict[int, int]]:
    """Sparse columns of d_k: one {row: sign} dict per k-simplex."""
    faces = C.index[k - 1]
    cols = []
    for s in C.layer(k):
        col = {}
        for i in range(len(s)):
            col[faces[s[:i] + s[i + 1 :]]] = -1 if i % 2 else 1
        cols.append(col)
    return cols


def incidence_matrices(C: CliqueComplex) -> dict[int, np.ndarray]:
    """d_k for k = 1..dim, shape (v_{k-1}, v_k). Verifies d_k d_{k+1} = 0."""
    mats: dict[int, np.ndarray] = {}
    for k in range(1, C.dimension + 1):
        m = np.zeros((len(C.layer(k - 1)), len(C.layer(k))), dtype=np.int64)
        for j, col in enumerate(_boundary_columns(C, k)):
            for i, sign in col.items():
                m[i, j] = sign
        mats[k] = m
    for k in range(1, C.dimension):
        if np.any(mats[k] @ mats[k + 1]):
            raise StructureError(f"boundary of boundary is non-zero at k={k}", code="boundary_not_nilpotent", k=k)
    return mats


# =========================================================
# Ranks and Betti numbers
# =========================================================
def _column_rank(columns: list[dict[int, int]], modulus: int | None = None) -> int:
    """Rank by column reduction on the lowest row index.

    Exact over Q when modulus is None, otherwise over GF(modulus).
    """
    pivots: dict[int, dict[int, Fraction | int]] = {}
    rank = 0
    for raw in columns:
        col: dict[int, Fraction | int] = (
            {r: Fraction(v) for r, v in raw.items()} if modulus is None else {r: v % modulus for r, v in raw.items()}
        )
        col = {r: v for r, v in col.items() if v}
        while col:
            low = max(col)
            other = pivots.get(low)
            if other is None:
                pivots[low] = col
                rank += 1
                break
            if modulus is None:
                factor = col[low] / other[low]
            else:
                factor = col[low] * pow(int(other[low]), -1, modulus) % modulus
            for r, v in other.items():
                nv = col.get(r, 0) - factor * v
                if modulus is not None:
                    nv %= modulus
                if nv:
                    col[r] = nv
                else:
                    col.pop(r, None)
    return rank


def boundary_ranks(C: CliqueComplex) -> dict[int, int]:
    """rank d_k over Q for k = 1..dim, cross-checked modulo a large prime."""
    ranks: dict[int, int] = {}
    for k in range(1, C.dimension + 1):
        cols = _boundary_columns(C, k)
        exact = _column_rank(cols)
        modular = _column_rank(cols, modulus=settings.rank_check_prime)
        if exact != modular:
            logger.warning("rank_mismatch k=%s rational=%s modular=%s", k, exact, modular)
        ranks[k] = exact
    return ranks


def betti_numbers(G: Graph) -> list[int]:
    C = clique_complex(G)
    ranks = boundary_ranks(C)
    v = C.volumes
    return [v[k] - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in range(len(v))]
