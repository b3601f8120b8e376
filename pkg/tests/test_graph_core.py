"""Tests for graphs, potentials, Hamiltonians, twins and Cartesian products."""
import networkx as nx
import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from utils.errors import InputError
from utils.graph_core import (
    Graph,
    Potential,
    attach_twins,
    build_hamiltonian,
    cartesian_product,
    combine_potentials,
    complete_graph,
    cycle_graph,
    find_twins,
    is_twin_pair,
    path_graph,
    remove_edge,
    shift_potential,
    star_graph,
)


def test_graph_normalizes_edges():
    g = Graph(3, frozenset([(1, 0), (2, 1)]))
    assert g.sorted_edges() == [(0, 1), (1, 2)]
    assert g.edge_count == 2
    assert g.neighbors(1) == frozenset({0, 2})


@pytest.mark.parametrize(
    "n, edges",
    [
        (2, [(0, 0)]),
        (2, [(0, 2)]),
        (3, [(0, 1), (1, 0)]),
        (0, []),
        (3, [(0, 1.7)]),
        (3, [(0, 1, 2)]),
        (3, [(True, 1)]),
        (3, [5]),
    ],
)
def test_graph_rejects_invalid_input(n, edges):
    with pytest.raises(InputError):
        Graph(n, tuple(edges))


def test_potential_rejects_non_finite():
    with pytest.raises(InputError):
        Potential([0.0, float("nan")])
    with pytest.raises(InputError):
        Potential([float("inf")])


def test_potential_is_read_only():
    q = Potential([1.0, 2.0])
    with pytest.raises(ValueError):
        q.values[0] = 5.0


def test_build_hamiltonian_p3():
    h = build_hamiltonian(path_graph(3), [0.0, 2.5, 0.0])
    expected = np.array([[0.0, 1.0, 0.0], [1.0, 2.5, 1.0], [0.0, 1.0, 0.0]])
    np.testing.assert_array_equal(h.matrix, expected)
    assert h.n == 3


def test_build_hamiltonian_defaults_to_zero_potential():
    h = build_hamiltonian(cycle_graph(4))
    np.testing.assert_array_equal(np.diag(h.matrix), np.zeros(4))


def test_build_hamiltonian_length_mismatch():
    with pytest.raises(InputError):
        build_hamiltonian(path_graph(3), [0.0, 1.0])


@seed(7)
@settings(deadline=None, max_examples=40)
@given(
    n=st.integers(min_value=2, max_value=8),
    values=arrays(np.float64, 8, elements=st.floats(min_value=-50, max_value=50)),
)
def test_hamiltonian_is_exactly_symmetric(n, values):
    g = complete_graph(n)
    h = build_hamiltonian(remove_edge(g, 0, 1), values[:n])
    assert np.array_equal(h.matrix, h.matrix.T)


@pytest.mark.parametrize(
    "g, expected",
    [
        (path_graph(3), [(0, 2)]),
        (path_graph(4), []),
        (star_graph(3), [(1, 2), (1, 3), (2, 3)]),
        (complete_graph(4), []),
        (remove_edge(complete_graph(5), 0, 1), [(0, 1)]),
        (cycle_graph(4), [(0, 2), (1, 3)]),
    ],
)
def test_find_twins(g, expected):
    assert find_twins(g) == expected


def test_find_twins_matches_neighborhood_oracle():
    g = attach_twins(path_graph(4), [1, 2])
    oracle = nx.Graph()
    oracle.add_nodes_from(range(g.n))
    oracle.add_edges_from(g.edges)
    pairs = [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if not oracle.has_edge(u, v) and set(oracle[u]) == set(oracle[v])
    ]
    assert find_twins(g) == pairs == [(4, 5)]


def test_is_twin_pair_rejects_adjacent_and_equal():
    g = complete_graph(3)
    assert not is_twin_pair(g, 0, 1)
    assert not is_twin_pair(path_graph(3), 0, 0)
    assert is_twin_pair(path_graph(3), 2, 0)


@seed(11)
@settings(deadline=None, max_examples=30)
@given(
    leaves=st.integers(min_value=2, max_value=6),
    values=arrays(np.float64, 7, elements=st.floats(min_value=-10, max_value=10)),
)
def test_twin_antisymmetric_eigenvector(leaves, values):
    g = star_graph(leaves)
    q = values[: g.n].copy()
    u, v = find_twins(g)[0]
    q[v] = q[u]
    h = build_hamiltonian(g, q).matrix
    x = np.zeros(g.n)
    x[u], x[v] = 1.0, -1.0
    assert np.max(np.abs(h @ x - q[u] * x)) <= 1e-12


def test_cartesian_product_counts_and_kronecker_form():
    g1, g2 = path_graph(3), cycle_graph(4)
    g = cartesian_product(g1, g2)
    assert g.n == 12
    assert g.edge_count == 3 * g2.edge_count + 4 * g1.edge_count
    expected = np.kron(g1.adjacency(), np.eye(4)) + np.kron(np.eye(3), g2.adjacency())
    np.testing.assert_array_equal(g.adjacency(), expected)


def test_cartesian_product_matches_networkx():
    g1, g2 = path_graph(3), star_graph(2)
    product = nx.cartesian_product(nx.path_graph(3), nx.star_graph(2))
    expected = {tuple(sorted((a * 3 + b, c * 3 + d))) for (a, b), (c, d) in product.edges}
    assert set(cartesian_product(g1, g2).edges) == expected


def test_combine_potentials_row_major():
    q = combine_potentials(Potential([1.0, 2.0]), Potential([10.0, 20.0, 30.0]))
    assert q.tolist() == [11.0, 21.0, 31.0, 12.0, 22.0, 32.0]


@pytest.mark.parametrize(
    "values, c, expected",
    [
        ([0.0, 5.0, 0.0], -5.0, [-5.0, 0.0, -5.0]),
        ([1.0, 2.0, 3.0], 0.0, [1.0, 2.0, 3.0]),
        ([0.0, 0.0], 7.0, [7.0, 7.0]),
    ],
)
def test_shift_potential(values, c, expected):
    assert shift_potential(Potential(values), c).tolist() == expected


def test_path_graph():
    assert path_graph(1).edge_count == 0
    assert path_graph(3).sorted_edges() == [(0, 1), (1, 2)]
    with pytest.raises(InputError):
        path_graph(0)


def test_graph_families():
    assert complete_graph(5).edge_count == 10
    assert cycle_graph(5).edge_count == 5
    assert star_graph(4).neighbors(0) == frozenset({1, 2, 3, 4})
    with pytest.raises(InputError):
        cycle_graph(2)
    with pytest.raises(InputError):
        star_graph(0)
    with pytest.raises(InputError):
        remove_edge(path_graph(3), 0, 2)


def test_attach_twins():
    g = attach_twins(path_graph(4), [1, 2])
    assert g.n == 6
    assert g.neighbors(4) == g.neighbors(5) == frozenset({1, 2})
    with pytest.raises(InputError):
        attach_twins(path_graph(2), [3])
