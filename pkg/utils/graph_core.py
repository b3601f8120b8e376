"""Graphs, vertex potentials and the Hamiltonian H = A + diag(Q).

The sign convention is fixed as A + diag(Q) everywhere; an A - Q Hamiltonian is
recovered by negating the potential.
"""
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from utils.errors import InputError


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n-1."""
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise InputError(f"Vertex count must be a positive integer, got {self.n!r}")
        normalized = []
        for edge in self.edges:
            try:
                endpoints = tuple(edge)
            except TypeError:
                raise InputError(f"Edge {edge!r} is not a vertex pair")
            if len(endpoints) != 2 or any(isinstance(x, bool) or not isinstance(x, (int, np.integer))
                                          for x in endpoints):
                raise InputError(f"Edge {edge!r} is not a pair of integer vertices")
            i, j = (int(x) for x in endpoints)
            if i == j:
                raise InputError(f"Self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise InputError(f"Edge {edge!r} has an endpoint outside [0, {self.n})")
            normalized.append((min(i, j), max(i, j)))
        if len(set(normalized)) != len(normalized):
            raise InputError("Duplicate edges in edge list")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", frozenset(normalized))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbors(self, i: int) -> frozenset:
        self.check_vertex(i)
        return frozenset(b if a == i else a for a, b in self.edges if i in (a, b))

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def check_vertex(self, i: int) -> int:
        if isinstance(i, bool) or not isinstance(i, (int, np.integer)) or not 0 <= i < self.n:
            raise InputError(f"Vertex {i!r} is outside [0, {self.n})")
        return int(i)

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for i, j in self.edges:
            a[i, j] = a[j, i] = 1.0
        return a


@dataclass(frozen=True, eq=False)
class Potential:
    """On-site energy per vertex (the diagonal Q)."""
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float).reshape(-1)
        if not np.all(np.isfinite(values)):
            raise InputError("Potential entries must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, n: int) -> "Potential":
        return cls(np.zeros(n))

    @classmethod
    def from_values(cls, values: Iterable[float]) -> "Potential":
        return cls(np.fromiter((float(x) for x in values), dtype=float))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Potential) and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash(self.values.tobytes())

    def tolist(self) -> list[float]:
        return [float(x) for x in self.values]


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    matrix: np.ndarray
    graph: Graph
    potential: Potential

    @property
    def n(self) -> int:
        return self.graph.n


def build_hamiltonian(g: Graph, q: Potential | Sequence[float] | None = None) -> Hamiltonian:
    """H = A(g) + diag(q); exactly symmetric by construction."""
    if q is None:
        q = Potential.zeros(g.n)
    elif not isinstance(q, Potential):
        q = Potential(q)
    if len(q) != g.n:
        raise InputError(f"Potential has {len(q)} entries but the graph has {g.n} vertices")
    matrix = g.adjacency()
    matrix[np.diag_indices(g.n)] = q.values
    matrix.flags.writeable = False
    return Hamiltonian(matrix=matrix, graph=g, potential=q)


def find_twins(g: Graph) -> list[tuple[int, int]]:
    """All non-adjacent pairs (u, v) with N(u) = N(v), lexicographically sorted."""
    neighborhoods = [g.neighbors(i) for i in range(g.n)]
    return [
        (u, v)
        for u, v in combinations(range(g.n), 2)
        if not g.has_edge(u, v) and neighborhoods[u] == neighborhoods[v]
    ]


def is_twin_pair(g: Graph, u: int, v: int) -> bool:
    u, v = g.check_vertex(u), g.check_vertex(v)
    return u != v and not g.has_edge(u, v) and g.neighbors(u) == g.neighbors(v)


def cartesian_product(g1: Graph, g2: Graph) -> Graph:
    """G1 □ G2 with vertex (a, b) encoded as a * g2.n + b."""
    n2 = g2.n
    edges = [(a * n2 + i, a * n2 + j) for a in range(g1.n) for i, j in g2.edges]
    edges += [(i * n2 + b, j * n2 + b) for b in range(n2) for i, j in g1.edges]
    return Graph(g1.n * n2, frozenset(edges))


def combine_potentials(q1: Potential, q2: Potential) -> Potential:
    """Q((a, b)) = Q1(a) + Q2(b) in the same row-major encoding."""
    return Potential(np.add.outer(q1.values, q2.values).ravel())


def shift_potential(q: Potential, c: float) -> Potential:
    return Potential(q.values + float(c))


def path_graph(n: int) -> Graph:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise InputError(f"Path length must be at least 1, got {n!r}")
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError(f"Cycle needs at least 3 vertices, got {n}")
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with center 0."""
    if leaves < 1:
        raise InputError(f"Star needs at least one leaf, got {leaves}")
    return Graph(leaves + 1, frozenset((0, i) for i in range(1, leaves + 1)))


def remove_edge(g: Graph, i: int, j: int) -> Graph:
    if not g.has_edge(i, j):
        raise InputError(f"Edge ({i}, {j}) is not in the graph")
    return Graph(g.n, g.edges - {(min(i, j), max(i, j))})


def attach_twins(g: Graph, neighbors: Iterable[int]) -> Graph:
    """Append vertices n and n+1, both joined to exactly `neighbors`."""
    targets = sorted({g.check_vertex(x) for x in neighbors})
    u, v = g.n, g.n + 1
    new_edges = [(x, u) for x in targets] + [(x, v) for x in targets]
    return Graph(g.n + 2, g.edges | frozenset(new_edges))
