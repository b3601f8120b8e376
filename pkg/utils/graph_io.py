"""Graph JSON loading, deterministic JSON output and CSV traces."""
import json
import logging
import math
import os

import numpy as np
import pandas as pd

from config import FLOAT_DIGITS
from utils.errors import InputError
from utils.graph_core import Graph, Potential

logger = logging.getLogger(__name__)


def parse_graph(data: dict) -> tuple[Graph, Potential]:
    """
    Build a (Graph, Potential) pair from {"n": int, "edges": [[i, j], ...], "potential": [...]}.

    Args:
        data: Decoded graph JSON; "potential" is optional and defaults to zeros

    Returns:
        Tuple of (graph, potential)
    """
    if not isinstance(data, dict):
        raise InputError(f"Graph JSON must be an object, got {type(data).__name__}")
    if "n" not in data or "edges" not in data:
        raise InputError("Graph JSON needs the keys 'n' and 'edges'")
    n = data["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise InputError(f"'n' must be an integer, got {n!r}")

    if not isinstance(data["edges"], list):
        raise InputError("'edges' must be a list of pairs")
    edges = []
    for edge in data["edges"]:
        if not isinstance(edge, (list, tuple)) or len(edge) != 2:
            raise InputError(f"Edge {edge!r} is not a pair")
        if any(isinstance(x, bool) or not isinstance(x, int) for x in edge):
            raise InputError(f"Edge {edge!r} has non-integer endpoints")
        edges.append(tuple(edge))
    graph = Graph(n, tuple(edges))

    values = data.get("potential")
    if values is None:
        return graph, Potential.zeros(n)
    if not isinstance(values, list) or len(values) != n:
        raise InputError(f"'potential' must be a list of {n} numbers")
    try:
        return graph, Potential.from_values(float(x) for x in values)
    except (TypeError, ValueError) as e:
        raise InputError(f"Invalid potential: {e}") from e


def load_graph_json(source: str) -> tuple[Graph, Potential]:
    """Read a graph from a file path, or from JSON text when `source` starts with '{'."""
    if source.lstrip().startswith("{"):
        text = source
    else:
        if not os.path.isfile(source):
            raise InputError(f"Graph file not found: {source}")
        with open(source, encoding="utf-8") as f:
            text = f.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"Malformed graph JSON: {e}") from e
    return parse_graph(data)


def graph_to_dict(g: Graph, q: Potential | None = None) -> dict:
    data = {"edges": [list(e) for e in g.sorted_edges()], "n": g.n}
    if q is not None:
        data["potential"] = q.tolist()
    return data


def round_floats(value, digits: int = FLOAT_DIGITS):
    """Recursively round floats to `digits` significant digits; NaN and inf become None."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return None
        return float(f"{value:.{digits}g}")
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, dict):
        return {str(k): round_floats(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [round_floats(v, digits) for v in value]
    return value


def dump_json(data: dict) -> str:
    """Byte-stable JSON: sorted keys, 12 significant digits."""
    return json.dumps(round_floats(data), sort_keys=True, indent=2)


def write_text(text: str, path: str) -> str:
    with open(path, "w", encoding="utf-8") as f:
        f.write(text if text.endswith("\n") else text + "\n")
    logger.info("Wrote %s", path)
    return path


def write_trace_csv(frame: pd.DataFrame, path: str) -> str:
    frame.to_csv(path, index=False, float_format=f"%.{FLOAT_DIGITS}g")
    logger.info("Wrote %d rows to %s", len(frame), path)
    return path
