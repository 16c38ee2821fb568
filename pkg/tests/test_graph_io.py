from __future__ import annotations

from fractions import Fraction

import orjson
import pytest

from eulersphere.generators import icosahedron, octahedron
from eulersphere.graph_core import build_graph
from eulersphere.graph_io import (
    GraphFormatError,
    dumps_json,
    format_edge_list,
    fraction_str,
    graph_from_dict,
    graph_hash,
    graph_to_dict,
    load_graph,
    parse_edge_list,
    save_graph,
    to_networkx,
)


def test_graph_json_shape(octa):
    d = graph_to_dict(octa)
    assert d["name"] == "octahedron"
    assert d["vertices"] == [0, 1, 2, 3, 4, 5]
    assert [0, 1] in d["edges"] and [0, 3] not in d["edges"]
    assert graph_from_dict(d) == octa


def test_json_file_round_trip(tmp_path, icosa):
    p = tmp_path / "nested" / "icosa.json"
    save_graph(p, icosa)
    back = load_graph(p)
    assert back == icosa
    assert back.name == "icosahedron"


def test_edge_list_round_trip_keeps_isolated_vertices(tmp_path):
    G = build_graph([0, 1, 2, 7], [(0, 1), (1, 2)], name="with_isolated")
    p = tmp_path / "g.txt"
    save_graph(p, G)
    back = load_graph(p)
    assert back == G
    assert 7 in back


def test_edge_list_comments_and_blank_lines():
    G = parse_edge_list("# square\n0 1\n\n1 2  # rung\n2 3\n3 0\n")
    assert G.size == 4 and G.order == 4


def test_format_edge_list_is_stable(octa):
    text = format_edge_list(octa)
    assert text.startswith("# octahedron\n0 1\n")
    assert text.endswith("\n")


@pytest.mark.parametrize(
    "payload, code",
    [
        ([1, 2], "not_an_object"),
        ({"edges": []}, "missing_fields"),
        ({"vertices": [0, 1], "edges": [[0, "x"]]}, "bad_edge"),
        ({"vertices": [0, 1], "edges": [[True, False]]}, "bad_edge"),
        ({"vertices": [0, 1], "edges": [[0, True]]}, "bad_edge"),
        ({"vertices": [0, 0], "edges": []}, "duplicate_vertex"),
        ({"vertices": [0], "edges": [], "name": 5}, "bad_name"),
    ],
)
def test_graph_from_dict_errors(payload, code):
    with pytest.raises(GraphFormatError) as exc:
        graph_from_dict(payload)
    assert exc.value.code == code


def test_bad_edge_list_line():
    with pytest.raises(GraphFormatError) as exc:
        parse_edge_list("0 1 2\n")
    assert exc.value.code == "bad_line"


def test_load_graph_errors(tmp_path):
    bad = tmp_path / "g.csv"
    bad.write_text("0,1")
    with pytest.raises(GraphFormatError) as exc:
        load_graph(bad)
    assert exc.value.code == "unknown_extension"

    with pytest.raises(GraphFormatError) as exc:
        load_graph(tmp_path / "missing.json")
    assert exc.value.code == "unreadable_file"

    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(GraphFormatError) as exc:
        load_graph(broken)
    assert exc.value.code == "invalid_json"


def test_hash_ignores_name_and_is_prefixed():
    a = octahedron()
    b = a.with_name("renamed")
    assert graph_hash(a) == graph_hash(b)
    assert graph_hash(a).startswith("sha256:") and len(graph_hash(a)) == 7 + 64
    assert graph_hash(a) != graph_hash(icosahedron())


def test_dumps_json_sorted_and_newline_terminated():
    out = dumps_json({"b": 1, "a": [1, 2]})
    assert out.endswith(b"\n")
    assert out.index(b'"a"') < out.index(b'"b"')
    assert orjson.loads(out) == {"a": [1, 2], "b": 1}


@pytest.mark.parametrize("q, text", [(Fraction(1, 3), "1/3"), (Fraction(4, 2), "2"), (0, "0"), (Fraction(-1, 6), "-1/6")])
def test_fraction_str(q, text):
    assert fraction_str(q) == text


def test_to_networkx(octa):
    g = to_networkx(octa)
    assert g.number_of_nodes() == 6 and g.number_of_edges() == 12


def test_edge_list_must_be_utf8(tmp_path):
    p = tmp_path / "g.txt"
    p.write_bytes(b"0 1\n\xff\xfe 2\n")
    with pytest.raises(GraphFormatError) as exc:
        load_graph(p)
    assert exc.value.code == "invalid_encoding"
    assert exc.value.detail == {"byte": 4}


def test_json_must_be_utf8(tmp_path):
    p = tmp_path / "g.json"
    p.write_bytes(b'{"vertices": [0], "edges": [], "name": "\xff"}')
    with pytest.raises(GraphFormatError) as exc:
        load_graph(p)
    assert exc.value.code == "invalid_json"
