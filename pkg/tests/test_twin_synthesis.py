"""Tests for potential synthesis between twin vertices."""
import math

import numpy as np
import pytest

from tests.conftest import SQRT_8_3, decomposition
from utils.certifier import certify
from utils.errors import InputError, NoConvergenceError, NotGoodPotentialError, SynthesisFailure
from utils.evolution import fidelity
from utils.graph_core import (
    Potential,
    attach_twins,
    complete_graph,
    path_graph,
    remove_edge,
    star_graph,
)
from utils.paths import p3_instance
from utils.twin_synthesis import (
    RatioTarget,
    antisymmetric_mode_index,
    initial_potential,
    newton_solve,
    ratio_jacobian,
    ratio_map,
    select_targets,
    synthesize,
)


def _assert_odd_multiples_of_pi(g, u, v, result):
    """t * lambda / pi is an odd integer for every eigenvalue except the antisymmetric one."""
    d = decomposition(g, result.potential)
    scaled = np.delete(d.eigenvalues, antisymmetric_mode_index(d, u, v)) * result.transfer_time / math.pi
    odd = 2 * np.round((scaled - 1) / 2) + 1
    np.testing.assert_allclose(scaled, odd, atol=1e-6)


def test_ratio_target_properties():
    target = RatioTarget((-1, 3), 5)
    assert target.p == [-1, 1]
    assert target.q == 2
    np.testing.assert_allclose(target.values, [-0.2, 0.6])


@pytest.mark.parametrize("numerators, denominator", [((1,), 4), ((2,), 5), ((1,), -3)])
def test_ratio_target_validation(numerators, denominator):
    with pytest.raises(InputError):
        RatioTarget(numerators, denominator)


def test_select_targets_nearest_odd_fraction():
    assert select_targets([0.32]) == RatioTarget((15,), 47)


def test_select_targets_prefers_smaller_denominator_on_ties():
    assert select_targets([1 / 3]) == RatioTarget((1,), 3)


@pytest.mark.parametrize(
    "ratios, kwargs",
    [
        ([0.32], {"radius": 1e-6}),
        ([0.33, 0.34], {"radius": 1.0}),
        ([0.995], {}),
    ],
)
def test_select_targets_none(ratios, kwargs):
    assert select_targets(ratios, **kwargs) is None


def test_select_targets_validation():
    with pytest.raises(InputError):
        select_targets([0.3], d_max=50)
    with pytest.raises(InputError):
        select_targets([0.3], radius=0.0)


def test_ratio_map_p3_instance(p3_transfer):
    d = decomposition(*p3_transfer)
    assert antisymmetric_mode_index(d, 0, 2) == 1
    np.testing.assert_allclose(ratio_map(d, 0, 2), [-1 / 3], atol=1e-12)


def test_ratio_map_requires_good_potential():
    d = decomposition(path_graph(3), [0.0, 1.0, 0.5])
    with pytest.raises(NotGoodPotentialError):
        ratio_map(d, 0, 2)


@pytest.mark.parametrize(
    "g, u, v",
    [
        (path_graph(3), 0, 2),
        (star_graph(3), 1, 2),
        (remove_edge(complete_graph(5), 0, 1), 0, 1),
        (attach_twins(path_graph(4), [1, 2]), 4, 5),
    ],
)
def test_ratio_jacobian_matches_finite_differences(g, u, v, rng):
    free = [x for x in range(g.n) if x not in (u, v)]
    for _ in range(10):
        q = np.zeros(g.n)
        q[free] = rng.uniform(1, 6, len(free))
        d = decomposition(g, q)
        if d.simplicity_gap < 1e-2:
            continue
        jacobian = ratio_jacobian(d, u, v, free)
        assert jacobian.shape == (len(free), len(free))
        step = 1e-6
        for column, j in enumerate(free):
            up, down = q.copy(), q.copy()
            up[j] += step
            down[j] -= step
            numeric = (ratio_map(decomposition(g, up), u, v) - ratio_map(decomposition(g, down), u, v)) / (2 * step)
            np.testing.assert_allclose(jacobian[:, column], numeric, atol=1e-5)


def test_initial_potential():
    g = star_graph(3)
    q = initial_potential(g, 1, 2, scale=10.0, seed=4)
    assert q[1] == q[2] == 0.0
    assert len(set(q.values[[0, 3]])) == 2
    assert q == initial_potential(g, 1, 2, scale=10.0, seed=4)
    assert decomposition(g, q).simplicity_gap >= 1e-6


def test_initial_potential_validation():
    with pytest.raises(InputError):
        initial_potential(path_graph(4), 0, 3)
    with pytest.raises(InputError):
        initial_potential(path_graph(3), 0, 2, scale=-1.0)


def test_newton_solve_recovers_p3_instance():
    history = []
    solution = newton_solve(path_graph(3), 0, 2, RatioTarget((-1,), 3), Potential([0.0, 10.0, 0.0]),
                            history=history)
    assert solution[1] == pytest.approx(SQRT_8_3, abs=1e-8)
    assert solution[0] == solution[2] == 0.0
    assert history
    assert history[-1]["residual"] <= 1e-11
    for row in history:
        assert abs(row["antisymmetric_eigenvalue"]) <= 1e-10
        assert row["symmetric_defect"] <= 1e-10
    assert [row["iteration"] for row in history] == list(range(1, len(history) + 1))


def test_newton_solve_iteration_limit():
    with pytest.raises(NoConvergenceError):
        newton_solve(path_graph(3), 0, 2, RatioTarget((-1,), 3), Potential([0.0, 10.0, 0.0]), max_iter=1)


def test_newton_solve_validation():
    g = path_graph(3)
    with pytest.raises(InputError):
        newton_solve(g, 0, 2, RatioTarget((-1,), 3), Potential([1.0, 10.0, 0.0]))
    with pytest.raises(InputError):
        newton_solve(g, 0, 2, RatioTarget((-1, 1), 3), Potential([0.0, 10.0, 0.0]))
    with pytest.raises(InputError):
        newton_solve(g, 0, 2, RatioTarget((-1,), 3), Potential([0.0, 10.0, 0.0]), tol=0.0)


def test_synthesize_p3_matches_closed_form():
    g, u, v = path_graph(3), 0, 2
    result = synthesize(g, u, v, seed=0)
    assert result.achieved_fidelity >= 1 - 1e-6
    (numerator,), denominator = result.targets.numerators, result.targets.denominator
    assert numerator < 0
    inst = p3_instance((denominator - numerator) // 2, (denominator + numerator) // 2)
    assert result.potential[1] == pytest.approx(inst.q, abs=1e-6)
    assert result.transfer_time == pytest.approx(inst.t, rel=1e-8)
    assert result.potential_time_product == pytest.approx(inst.q * inst.t, rel=1e-6)
    _assert_odd_multiples_of_pi(g, u, v, result)
    certificate = certify(decomposition(g, result.potential), u, v)
    assert certificate.transfer_time == pytest.approx(result.transfer_time, abs=1e-6)


def test_synthesize_failure_reports_attempts():
    with pytest.raises(SynthesisFailure) as excinfo:
        synthesize(star_graph(3), 1, 2, seeds=2, radius=1e-12)
    assert len(excinfo.value.attempts) == 2
    assert all(attempt["stage"] == "select_targets" for attempt in excinfo.value.attempts)


def test_synthesize_requires_twins():
    with pytest.raises(InputError):
        synthesize(path_graph(4), 0, 3)


def test_synthesis_result_json():
    data = synthesize(path_graph(3), 0, 2).to_dict()
    assert list(data) == sorted(data)
    assert data["potential"][0] == data["potential"][2] == 0.0
    assert len(data["eigenvalues"]) == 3


@pytest.mark.slow
@pytest.mark.parametrize(
    "g, u, v",
    [
        (path_graph(3), 0, 2),
        (star_graph(3), 1, 2),
        (star_graph(5), 1, 2),
        (remove_edge(complete_graph(5), 0, 1), 0, 1),
        (attach_twins(path_graph(4), [1, 2]), 4, 5),
    ],
    ids=["p3", "star3", "star5", "k5-minus-edge", "p4-twins"],
)
def test_synthesis_acceptance(g, u, v):
    result = synthesize(g, u, v)
    d = decomposition(g, result.potential)
    assert result.potential[u] == result.potential[v] == 0.0
    assert fidelity(d, u, v, result.transfer_time) >= 1 - 1e-6
    remaining = np.delete(d.eigenvalues, antisymmetric_mode_index(d, u, v))
    assert result.transfer_time == pytest.approx(math.pi * result.targets.denominator / remaining[-1], rel=1e-9)
    _assert_odd_multiples_of_pi(g, u, v, result)
    certificate = certify(d, u, v)
    assert certificate.certified
    assert certificate.transfer_time == pytest.approx(result.transfer_time, abs=1e-6)
