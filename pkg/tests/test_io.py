import json

import pytest

from netdecomp.decomposition import AlgoParams, decompose
from netdecomp.graph import generate
from netdecomp.io import (
    FormatError,
    decomposition_from_dict,
    decomposition_to_dict,
    dumps,
    format_edge_list,
    load_decomposition,
    parse_edge_list,
    read_edge_list,
    save_decomposition,
    write_edge_list,
)


def test_edge_list_round_trip(tmp_path):
    g = generate("gnp", 60, {"p": 0.1}, seed=2)
    path = tmp_path / "g.txt"
    write_edge_list(g, path)
    assert read_edge_list(path) == g
    assert path.read_text().splitlines()[0] == f"60 {g.edge_count}"


def test_edge_list_comments_and_isolated():
    g, labels = parse_edge_list("# hello\n4 2\n0 1\n# mid\n2 1\n")
    assert g.n == 4 and g.edges() == [(0, 1), (1, 2)]
    assert labels == ["0", "1", "2", "3"]


def test_edge_list_label_remap():
    g, labels = parse_edge_list("3 2\nalice bob\nbob carol\n")
    assert labels == ["alice", "bob", "carol"]
    assert g.edges() == [(0, 1), (1, 2)]


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("2 1\n0 0\n", 2),
        ("3 2\n0 1\n1 0\n", 3),
        ("x y\n", 1),
        ("2 1\n0 1 2\n", 2),
        ("2 2\na b\nc d\n", 3),
    ],
)
def test_edge_list_errors_carry_line_numbers(text, lineno):
    with pytest.raises(FormatError) as exc:
        parse_edge_list(text)
    assert exc.value.lineno == lineno
    assert f"line {lineno}" in str(exc.value)


def test_edge_list_count_mismatch():
    with pytest.raises(FormatError, match="announces 2 edges"):
        parse_edge_list("3 2\n0 1\n")
    with pytest.raises(FormatError, match="header"):
        parse_edge_list("# nothing\n")


def test_decomposition_json_round_trip(tmp_path):
    g = generate("grid", 0, {"rows": 6, "cols": 7})
    params = AlgoParams("basic", seed=5).resolved(g.n)
    d, stats = decompose(g, params)
    path = tmp_path / "d.json"
    save_decomposition(path, d, params, stats)
    assert load_decomposition(path) == (d, params, stats)
    first = path.read_bytes()
    save_decomposition(path, *load_decomposition(path))
    assert path.read_bytes() == first


def test_unassigned_vertices_serialise_as_null():
    g = generate("path", 3)
    from netdecomp.decomposition import assemble

    d = assemble(g, [0, 0, -1], [0, 0, -1])
    data = decomposition_to_dict(d, AlgoParams("basic"))
    assert data["vertices"][2] == {"block": None, "center": None, "cluster_id": None}
    assert decomposition_from_dict(json.loads(dumps(data)))[0] == d


def test_bad_json_reports_line(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "schema": "netdecomp.decomposition/1",\n  "n": 2,\n  oops\n}\n')
    with pytest.raises(FormatError) as exc:
        load_decomposition(path)
    assert exc.value.lineno == 4


def test_schema_errors():
    with pytest.raises(FormatError, match="schema"):
        decomposition_from_dict({"schema": "other"})
    with pytest.raises(FormatError, match="exactly n"):
        decomposition_from_dict({"schema": "netdecomp.decomposition/1", "n": 2, "vertices": []})
