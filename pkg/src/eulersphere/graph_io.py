from __future__ import annotations

import hashlib
from fractions import Fraction
from pathlib import Path
from typing import Any

import networkx as nx
import orjson

from .errors import SphereError
from .graph_core import Graph, GraphError, build_graph


class GraphFormatError(SphereError):
    """Input file is not a valid graph JSON object or edge list."""

    code = "graph_format_error"


# ---- JSON helpers ----
def dumps_json(obj: Any) -> bytes:
    """Stable pretty JSON: sorted keys, 2-space indent, trailing newline."""
    return orjson.dumps(obj, option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS) + b"\n"


def canonical_json(obj: Any) -> bytes:
    return orjson.dumps(obj, option=orjson.OPT_SORT_KEYS)


def write_json(path: Path, obj: Any) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(dumps_json(obj))


def fraction_str(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---- graph JSON ----
def graph_to_dict(G: Graph) -> dict:
    out: dict = {"vertices": list(G.vertices), "edges": [list(e) for e in G.edges()]}
    if G.name is not None:
        out["name"] = G.name
    return out


def graph_from_dict(obj: Any) -> Graph:
    if not isinstance(obj, dict):
        raise GraphFormatError("graph JSON must be an object", code="not_an_object")
    vertices = obj.get("vertices")
    edges = obj.get("edges", [])
    name = obj.get("name")
    if not isinstance(vertices, list) or not isinstance(edges, list):
        raise GraphFormatError("graph JSON needs a 'vertices' list and an 'edges' list", code="missing_fields")
    if name is not None and not isinstance(name, str):
        raise GraphFormatError("'name' must be a string", code="bad_name")
    for e in edges:
        if not isinstance(e, list) or len(e) != 2 or not all(isinstance(x, int) and not isinstance(x, bool) for x in e):
            raise GraphFormatError(f"edge {e!r} is not a pair of integers", code="bad_edge")
    try:
        return build_graph(vertices, edges, name=name)
    except GraphError as exc:
        raise GraphFormatError(exc.message, code=exc.code, **exc.detail) from exc


def graph_hash(G: Graph) -> str:
    digest = hashlib.sha256(canonical_json(graph_to_dict(G.with_name(None)))).hexdigest()
    return f"sha256:{digest}"


# ---- edge list ----
def parse_edge_list(text: str, name: str | None = None) -> Graph:
    """One "u v" pair per line, "v" alone declares a vertex, '#' starts a comment."""
    vertices: dict[int, None] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            ids = [int(p) for p in parts]
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: not an integer", code="bad_line", line=lineno) from exc
        if len(ids) not in (1, 2):
            raise GraphFormatError(f"line {lineno}: expected 'u v' or 'v'", code="bad_line", line=lineno)
        for v in ids:
            vertices.setdefault(v, None)
        if len(ids) == 2:
            edges.append((ids[0], ids[1]))
    try:
        return build_graph(sorted(vertices), edges, name=name)
    except GraphError as exc:
        raise GraphFormatError(exc.message, code=exc.code, **exc.detail) from exc


def format_edge_list(G: Graph) -> str:
    lines = []
    if G.name:
        lines.append(f"# {G.name}")
    lines.extend(str(v) for v in G.vertices if G.degree(v) == 0)
    lines.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


# ---- files ----
def load_graph(path: str | Path) -> Graph:
    p = Path(path)
    suffix = p.suffix.lower()
    if suffix not in (".json", ".txt"):
        raise GraphFormatError(f"unknown graph file extension {p.suffix!r} (use .json or .txt)", code="unknown_extension")
    try:
        data = p.read_bytes()
    except OSError as exc:
        raise GraphFormatError(f"cannot read {p}: {exc.strerror}", code="unreadable_file") from exc
    if suffix == ".txt":
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GraphFormatError(
                f"{p.name}: not valid UTF-8 (byte {exc.start})", code="invalid_encoding", byte=exc.start
            ) from exc
        return parse_edge_list(text, name=p.stem)
    try:
        obj = orjson.loads(data)
    except orjson.JSONDecodeError as exc:
        raise GraphFormatError(f"{p.name}: invalid JSON ({exc})", code="invalid_json") from exc
    return graph_from_dict(obj)


def save_graph(path: str | Path, G: Graph) -> None:
    p = Path(path)
    if p.suffix.lower() == ".txt":
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(format_edge_list(G), encoding="utf-8")
    else:
        write_json(p, graph_to_dict(G))


# ---- networkx bridge ----
def to_networkx(G: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(G.vertices)
    g.add_edges_from(G.edges())
    return g
