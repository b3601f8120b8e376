"""Tests for graph JSON parsing and deterministic output."""
import json
import math

import pandas as pd
import pytest

from utils.errors import InputError
from utils.graph_core import Potential, path_graph
from utils.graph_io import dump_json, graph_to_dict, load_graph_json, parse_graph, round_floats, write_trace_csv


def test_parse_graph_defaults_potential_to_zero():
    g, q = parse_graph({"n": 3, "edges": [[0, 1], [1, 2]]})
    assert g == path_graph(3)
    assert q.tolist() == [0.0, 0.0, 0.0]


def test_load_graph_json_from_file(write_graph):
    path = write_graph({"n": 2, "edges": [[0, 1]], "potential": [0.5, -0.5]})
    g, q = load_graph_json(path)
    assert g.sorted_edges() == [(0, 1)]
    assert q.tolist() == [0.5, -0.5]


def test_load_graph_json_from_text():
    g, _ = load_graph_json('{"n": 1, "edges": []}')
    assert g.n == 1


@pytest.mark.parametrize(
    "data",
    [
        [],
        {"n": 2},
        {"n": "2", "edges": []},
        {"n": 2, "edges": [[0, 1, 2]]},
        {"n": 2, "edges": [[0, 1.5]]},
        {"n": 2, "edges": [[0, 1], [0, 1]]},
        {"n": 2, "edges": [[0, 2]]},
        {"n": 2, "edges": [], "potential": [1.0]},
        {"n": 2, "edges": [], "potential": [1.0, "x"]},
        {"n": 0, "edges": []},
    ],
)
def test_parse_graph_rejects(data):
    with pytest.raises(InputError):
        parse_graph(data)


def test_load_graph_json_errors(tmp_path):
    with pytest.raises(InputError):
        load_graph_json(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(InputError):
        load_graph_json(str(broken))


def test_graph_to_dict_round_trip():
    g, q = path_graph(3), Potential([0.0, 1.25, 0.0])
    data = graph_to_dict(g, q)
    assert data == {"edges": [[0, 1], [1, 2]], "n": 3, "potential": [0.0, 1.25, 0.0]}
    assert "potential" not in graph_to_dict(g)


def test_round_floats():
    assert round_floats(math.pi) == 3.14159265359
    assert round_floats({"a": [float("nan"), float("inf"), 1, True, None]}) == {"a": [None, None, 1, True, None]}


def test_dump_json_is_sorted_and_stable():
    text = dump_json({"b": 1.0 / 3.0, "a": {"z": 2, "y": math.e}})
    assert text == dump_json({"a": {"y": math.e, "z": 2}, "b": 1.0 / 3.0})
    data = json.loads(text)
    assert list(data) == ["a", "b"]
    assert data["b"] == 0.333333333333


def test_write_trace_csv(tmp_path):
    path = tmp_path / "trace.csv"
    write_trace_csv(pd.DataFrame({"t": [0.0, 0.5], "fidelity": [0.0, 1 / 3]}), str(path))
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "t,fidelity"
    assert lines[2] == "0.5,0.333333333333"
