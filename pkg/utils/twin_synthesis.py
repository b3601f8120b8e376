"""
Potential synthesis for perfect state transfer between non-adjacent twin vertices.

With Q(u) = Q(v) = 0 the vector 1_u - 1_v is an eigenvector with eigenvalue 0 and
every other eigenvector is symmetric on (u, v). Transfer then only needs
t * lambda_i to be an odd multiple of pi for the remaining eigenvalues, i.e.
the ratios lambda_i / lambda_max must be odd/odd fractions with one common
denominator. Newton iteration on the free vertices drives the ratios there.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from config import (
    DEGENERACY_TOL,
    NEWTON_MAX_ITER,
    NEWTON_TOL,
    SYNTH_D_MAX,
    SYNTH_FIDELITY,
    SYNTH_SCALE,
    SYNTH_SEEDS,
    TARGET_RADIUS,
)
from utils.errors import (
    DegenerateScaleError,
    InitializationError,
    InputError,
    JacobianSingularError,
    NewtonError,
    NoConvergenceError,
    NotGoodPotentialError,
    SimplicityLostError,
    SpectralError,
    SynthesisFailure,
)
from utils.evolution import fidelity
from utils.graph_core import Graph, Potential, build_hamiltonian, is_twin_pair
from utils.spectral import SpectralDecomposition, decompose, eigenvalue_derivatives

logger = logging.getLogger(__name__)

INIT_RETRIES = 16
INIT_MIN_GAP = 1e-6
ITERATE_MIN_GAP = 1e-10
MODE_OVERLAP = 1 - 1e-8
MAX_CONDITION = 1e12
MIN_STEP = 1e-4


@dataclass(frozen=True)
class RatioTarget:
    """Odd numerators over one odd denominator: (2p_i + 1) / (2q + 1)."""
    numerators: tuple
    denominator: int

    def __post_init__(self):
        if self.denominator < 1 or self.denominator % 2 == 0:
            raise InputError(f"Denominator must be odd and positive, got {self.denominator}")
        if any(num % 2 == 0 for num in self.numerators):
            raise InputError(f"Numerators must all be odd, got {self.numerators}")

    @property
    def values(self) -> np.ndarray:
        return np.array(self.numerators, dtype=float) / self.denominator

    @property
    def p(self) -> list[int]:
        return [(num - 1) // 2 for num in self.numerators]

    @property
    def q(self) -> int:
        return (self.denominator - 1) // 2


@dataclass(frozen=True, eq=False)
class SynthesisResult:
    potential: Potential
    targets: RatioTarget
    transfer_time: float
    achieved_fidelity: float
    newton_iterations: int
    residual: float
    source: int
    target: int
    seed: int
    scale: float
    d_max: int
    eigenvalues: tuple = ()
    potential_time_product: float = 0.0

    def to_dict(self) -> dict:
        return {
            "achieved_fidelity": self.achieved_fidelity,
            "d_max": self.d_max,
            "denominator": self.targets.denominator,
            "eigenvalues": list(self.eigenvalues),
            "newton_iterations": self.newton_iterations,
            "numerators": list(self.targets.numerators),
            "p": self.targets.p,
            "potential": self.potential.tolist(),
            "potential_time_product": self.potential_time_product,
            "q": self.targets.q,
            "residual": self.residual,
            "scale": self.scale,
            "seed": self.seed,
            "source": self.source,
            "target": self.target,
            "transfer_time": self.transfer_time,
        }


def _free_vertices(g: Graph, u: int, v: int) -> list[int]:
    return [x for x in range(g.n) if x not in (u, v)]


def _require_twins(g: Graph, u: int, v: int) -> None:
    if not is_twin_pair(g, u, v):
        raise InputError(f"Vertices {u} and {v} are not non-adjacent twins")


def _with_free_values(n: int, free: list[int], values: np.ndarray) -> Potential:
    q = np.zeros(n)
    q[free] = values
    return Potential(q)


def initial_potential(g: Graph, u: int, v: int, scale: float = SYNTH_SCALE, seed: int = 0) -> Potential:
    """
    Large, distinct starting values on the free vertices and zeros on the twins.

    Free vertex number i gets scale * (1 + i/n) plus a PCG64 jitter in
    [0, scale / (10 n)]; the seed is advanced until the spectrum is simple.
    """
    _require_twins(g, u, v)
    if not scale > 0:
        raise InputError(f"scale must be positive, got {scale}")
    free = _free_vertices(g, u, v)
    n = len(free)
    if n == 0:
        raise InputError("Twin pair has no common neighbour to carry a potential")

    base = scale * (1 + np.arange(n) / n)
    for attempt in range(INIT_RETRIES):
        rng = np.random.Generator(np.random.PCG64(seed + attempt))
        potential = _with_free_values(g.n, free, base + rng.uniform(0, scale / (10 * n), n))
        gap = decompose(build_hamiltonian(g, potential)).simplicity_gap
        if gap >= INIT_MIN_GAP:
            return potential
        logger.info("Initial potential (seed %d) has gap %.3e, retrying", seed + attempt, gap)
    raise InitializationError(f"No simple spectrum after {INIT_RETRIES} seeds starting at {seed}")


def antisymmetric_mode_index(d: SpectralDecomposition, u: int, v: int) -> int:
    """Index of the eigenvector parallel to (1_u - 1_v) / sqrt 2."""
    overlaps = np.abs(d.eigenvectors[u, :] - d.eigenvectors[v, :]) / math.sqrt(2)
    index = int(np.argmax(overlaps))
    if overlaps[index] < MODE_OVERLAP:
        raise NotGoodPotentialError(
            f"No eigenvector matches 1_{u} - 1_{v} (best overlap {overlaps[index]:.12g})"
        )
    return index


def _remaining_indices(d: SpectralDecomposition, u: int, v: int) -> list[int]:
    removed = antisymmetric_mode_index(d, u, v)
    return [i for i in range(d.n) if i != removed]


def ratio_map(d: SpectralDecomposition, u: int, v: int) -> np.ndarray:
    """(lambda_1, ..., lambda_n) / lambda_{n+1} over the spectrum without the antisymmetric mode."""
    remaining = _remaining_indices(d, u, v)
    values = d.eigenvalues[remaining]
    top = values[-1]
    if abs(top) <= 1e-10:
        raise DegenerateScaleError(f"Largest remaining eigenvalue {top:.3e} is too close to 0")
    return values[:-1] / top


def ratio_jacobian(d: SpectralDecomposition, u: int, v: int, free: list[int]) -> np.ndarray:
    """
    d(lambda_i / lambda_{n+1}) / dQ_j over free vertices j.

    Entry (i, j) = (dl_i * l_top - l_i * dl_top) / l_top**2 with dl = phi(j)**2.
    """
    remaining = _remaining_indices(d, u, v)
    derivatives = eigenvalue_derivatives(d)[np.ix_(remaining, free)]
    values = d.eigenvalues[remaining]
    top, d_top = values[-1], derivatives[-1]
    return (derivatives[:-1] * top - np.outer(values[:-1], d_top)) / top ** 2


def select_targets(ratios, d_max: int = SYNTH_D_MAX, radius: float = TARGET_RADIUS) -> RatioTarget | None:
    """
    Closest odd/odd vector with a common odd denominator 3 <= d <= d_max.

    Each ratio is rounded to the nearest odd numerator; the vector must stay
    strictly increasing and below 1 so the target spectrum remains simple.
    Ties go to the smaller denominator; None when the best score exceeds radius.
    """
    if d_max < 3 or d_max % 2 == 0:
        raise InputError(f"d_max must be an odd integer >= 3, got {d_max}")
    if not radius > 0:
        raise InputError(f"radius must be positive, got {radius}")
    ratios = np.asarray(ratios, dtype=float).reshape(-1)

    best, best_score = None, math.inf
    for den in range(3, d_max + 1, 2):
        numerators = 2 * np.round((ratios * den - 1) / 2).astype(int) + 1
        if np.any(np.diff(numerators) <= 0) or np.any(numerators >= den):
            continue
        score = float(np.max(np.abs(ratios - numerators / den))) if len(ratios) else 0.0
        if score < best_score:
            best, best_score = RatioTarget(tuple(int(x) for x in numerators), den), score
    if best is None or best_score > radius:
        return None
    return best


def _good_state(g: Graph, u: int, v: int, potential: Potential, target: np.ndarray):
    d = decompose(build_hamiltonian(g, potential))
    residual = float(np.max(np.abs(ratio_map(d, u, v) - target)))
    return d, residual


def newton_solve(g: Graph, u: int, v: int, target: RatioTarget, q0: Potential,
                 tol: float = NEWTON_TOL, max_iter: int = NEWTON_MAX_ITER,
                 history: list | None = None) -> Potential:
    """
    Drive ratio_map to `target` by Newton steps on the free vertices (u, v stay at 0).

    The full step is halved until the residual decreases, down to a step length of
    1e-4. Accepted iterates keep a simplicity gap >= 1e-10.

    Raises:
        JacobianSingularError: condition number of the Jacobian above 1e12
        NoConvergenceError: max_iter exceeded or no decreasing step found
        SimplicityLostError: every trial step collided eigenvalues
    """
    _require_twins(g, u, v)
    if not tol > 0:
        raise InputError(f"tol must be positive, got {tol}")
    if q0[u] != 0 or q0[v] != 0:
        raise InputError(f"Starting potential must vanish on {u} and {v}")
    free = _free_vertices(g, u, v)
    goal = target.values
    if len(goal) != len(free):
        raise InputError(f"Target has {len(goal)} ratios, the graph has {len(free)} free vertices")

    x = q0.values[free].copy()
    d, residual = _good_state(g, u, v, q0, goal)
    if d.simplicity_gap <= DEGENERACY_TOL:
        raise SimplicityLostError(f"Starting potential has gap {d.simplicity_gap:.3e}")

    for iteration in range(max_iter + 1):
        if residual <= tol:
            logger.info("Newton converged in %d iterations (residual %.3e)", iteration, residual)
            return _with_free_values(g.n, free, x)
        if iteration == max_iter:
            break

        jacobian = ratio_jacobian(d, u, v, free)
        condition = np.linalg.cond(jacobian)
        if not np.isfinite(condition) or condition > MAX_CONDITION:
            raise JacobianSingularError(f"Jacobian condition number {condition:.3e} at iteration {iteration}")
        step = np.linalg.solve(jacobian, ratio_map(d, u, v) - goal)

        alpha, accepted, collided = 1.0, False, False
        while alpha >= MIN_STEP:
            trial_x = x - alpha * step
            trial = _with_free_values(g.n, free, trial_x)
            try:
                trial_d, trial_residual = _good_state(g, u, v, trial, goal)
            except SpectralError:
                trial_d, trial_residual = None, math.inf
            if trial_d is not None and trial_d.simplicity_gap < ITERATE_MIN_GAP:
                collided, trial_residual = True, math.inf
            if trial_residual < residual:
                x, d, residual, accepted = trial_x, trial_d, trial_residual, True
                break
            alpha /= 2
        if not accepted:
            if collided:
                raise SimplicityLostError(f"Eigenvalues collide along the Newton direction at iteration {iteration}")
            raise NoConvergenceError(f"No decreasing step at iteration {iteration} (residual {residual:.3e})")

        logger.debug("Newton iteration %d: step %.3g, residual %.3e", iteration, alpha, residual)
        if history is not None:
            modes = d.eigenvectors
            anti = antisymmetric_mode_index(d, u, v)
            history.append({
                "iteration": iteration + 1,
                "residual": residual,
                "step": alpha,
                "simplicity_gap": d.simplicity_gap,
                "antisymmetric_eigenvalue": float(d.eigenvalues[anti]),
                "symmetric_defect": float(np.max(np.abs(np.delete(modes[u, :] - modes[v, :], anti)))),
            })

    raise NoConvergenceError(f"No convergence in {max_iter} iterations (residual {residual:.3e})")


def _odd_cap(value: int) -> int:
    return value if value % 2 else value - 1


def synthesize(g: Graph, u: int, v: int, d_max: int = SYNTH_D_MAX, seeds: int = SYNTH_SEEDS,
               tol: float = NEWTON_TOL, seed: int = 0, scale: float = SYNTH_SCALE,
               radius: float = TARGET_RADIUS, max_iter: int = NEWTON_MAX_ITER) -> SynthesisResult:
    """
    Find a potential with perfect state transfer between twins u and v.

    Each attempt runs initial_potential -> ratio_map -> select_targets ->
    newton_solve and checks the fidelity at t = pi (2q + 1) / lambda_{n+1}.
    After a failure the denominator cap doubles (up to 10 * d_max) and the
    scale grows. The lowest successful attempt wins.
    """
    _require_twins(g, u, v)
    if seeds < 1:
        raise InputError(f"seeds must be positive, got {seeds}")
    attempts = []

    for index in range(seeds):
        attempt_seed = seed + index * INIT_RETRIES
        attempt_d_max = max(3, min(_odd_cap(d_max * 2 ** min(index, 8)) if index else d_max, _odd_cap(10 * d_max)))
        attempt_scale = scale * (1 + index / 4)
        diagnostics = {"seed": attempt_seed, "scale": attempt_scale, "d_max": attempt_d_max}
        try:
            q0 = initial_potential(g, u, v, attempt_scale, attempt_seed)
            d0 = decompose(build_hamiltonian(g, q0))
            target = select_targets(ratio_map(d0, u, v), attempt_d_max, radius)
            if target is None:
                diagnostics.update(stage="select_targets", message=f"no odd/odd target within {radius}")
                attempts.append(diagnostics)
                logger.info("Attempt %d: no target within radius", index)
                continue
            iterations = []
            solution = newton_solve(g, u, v, target, q0, tol, max_iter, history=iterations)
        except (InitializationError, NewtonError, SpectralError) as e:
            diagnostics.update(stage=type(e).__name__, message=str(e))
            attempts.append(diagnostics)
            logger.info("Attempt %d failed: %s", index, e)
            continue

        d = decompose(build_hamiltonian(g, solution))
        remaining = _remaining_indices(d, u, v)
        top = float(d.eigenvalues[remaining[-1]])
        transfer_time = abs(math.pi * target.denominator / top)
        achieved = fidelity(d, u, v, transfer_time)
        residual = float(np.max(np.abs(ratio_map(d, u, v) - target.values)))
        if achieved < SYNTH_FIDELITY:
            diagnostics.update(stage="verify", message=f"fidelity {achieved:.12g} at t={transfer_time:.12g}")
            attempts.append(diagnostics)
            logger.warning("Attempt %d converged but fidelity is only %.12g", index, achieved)
            continue

        qt = float(np.max(np.abs(solution.values))) * transfer_time
        logger.info("Synthesized %d->%d: t=%.12g, fidelity=%.12g, max|Q|*t=%.6g",
                    u, v, transfer_time, achieved, qt)
        return SynthesisResult(
            potential=solution, targets=target, transfer_time=transfer_time,
            achieved_fidelity=achieved, newton_iterations=len(iterations), residual=residual,
            source=int(u), target=int(v), seed=attempt_seed, scale=attempt_scale,
            d_max=attempt_d_max, eigenvalues=tuple(float(x) for x in d.eigenvalues),
            potential_time_product=qt,
        )

    raise SynthesisFailure(f"All {seeds} synthesis attempts failed for {u}->{v}", attempts)
