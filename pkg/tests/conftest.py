"""Shared graphs and helpers for the test suite."""
import json
import math

import numpy as np
import pytest

from utils.graph_core import Potential, build_hamiltonian, cycle_graph, path_graph, star_graph
from utils.spectral import decompose

SQRT_8_3 = math.sqrt(8 / 3)


def decomposition(g, q=None):
    return decompose(build_hamiltonian(g, q))


def symmetric_random_potential(rng, n, box=3.0):
    half = rng.uniform(-box, box, (n + 1) // 2)
    return np.concatenate([half, half[: n // 2][::-1]])


@pytest.fixture
def p2():
    return path_graph(2)


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def c4():
    return cycle_graph(4)


@pytest.fixture
def star3():
    return star_graph(3)


@pytest.fixture
def p3_transfer():
    """P3 with q = sqrt(8/3) at the center; transfer at 4 pi / sqrt(q**2 + 8)."""
    return path_graph(3), Potential([0.0, SQRT_8_3, 0.0])


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240611))


@pytest.fixture
def write_graph(tmp_path):
    """Write graph JSON to a temporary file and return its path."""
    def _write(data, name="graph.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)
    return _write
