"""Propagator U(t) = exp(itH), transfer fidelity and fidelity maximization."""
import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy.optimize import minimize_scalar

from utils.errors import InputError
from utils.spectral import SpectralDecomposition

logger = logging.getLogger(__name__)

REFINE_XATOL = 1e-10


@dataclass(frozen=True)
class FidelityRecord:
    """Transfer probability |U(t)_{u,v}|**2 at one time."""
    time: float
    fidelity: float
    source: int
    target: int

    def to_dict(self) -> dict:
        return {
            "fidelity": self.fidelity,
            "source": self.source,
            "target": self.target,
            "time": self.time,
        }


def _check_vertices(d: SpectralDecomposition, *vertices: int) -> None:
    for x in vertices:
        if isinstance(x, bool) or not isinstance(x, (int, np.integer)) or not 0 <= x < d.n:
            raise InputError(f"Vertex {x!r} is outside [0, {d.n})")


def propagator(d: SpectralDecomposition, t: float) -> np.ndarray:
    """U(t) = sum_i exp(i t lambda_i) x_i x_i^T."""
    if not math.isfinite(t):
        raise InputError(f"Time must be finite, got {t}")
    phases = np.exp(1j * t * d.eigenvalues)
    return (d.eigenvectors * phases) @ d.eigenvectors.T


def fidelity_trace(d: SpectralDecomposition, u: int, v: int, times) -> np.ndarray:
    """|U(t)_{u,v}|**2 for every t in `times`, from the spectral sum only."""
    _check_vertices(d, u, v)
    times = np.asarray(times, dtype=float).reshape(-1)
    weights = d.eigenvectors[u, :] * d.eigenvectors[v, :]
    amplitudes = np.exp(1j * np.outer(times, d.eigenvalues)) @ weights
    return np.abs(amplitudes) ** 2


def fidelity(d: SpectralDecomposition, u: int, v: int, t: float) -> float:
    if not math.isfinite(t):
        raise InputError(f"Time must be finite, got {t}")
    return float(fidelity_trace(d, u, v, [t])[0])


def evolve_state(d: SpectralDecomposition, phi0, t: float) -> np.ndarray:
    """Solution phi_t = U(t) phi_0 of the discrete Schroedinger equation."""
    phi0 = np.asarray(phi0, dtype=complex).reshape(-1)
    if len(phi0) != d.n:
        raise InputError(f"Initial state has {len(phi0)} entries, expected {d.n}")
    norm = np.linalg.norm(phi0)
    if norm == 0:
        raise InputError("Initial state has zero norm")
    coefficients = d.eigenvectors.T @ (phi0 / norm)
    return d.eigenvectors @ (np.exp(1j * t * d.eigenvalues) * coefficients)


def default_samples(d: SpectralDecomposition, t_max: float) -> int:
    """Grid size whose spacing is at most pi / (10 * eigenvalue spread)."""
    spread = float(d.eigenvalues[-1] - d.eigenvalues[0]) if d.n > 1 else 0.0
    if spread <= 0:
        return 2
    return max(2, int(math.ceil(t_max * 10 * spread / math.pi)) + 1)


def max_fidelity(d: SpectralDecomposition, u: int, v: int, t_max: float,
                 samples: int | None = None) -> FidelityRecord:
    """
    Maximize |U(t)_{u,v}|**2 over [0, t_max].

    A uniform grid locates the best lobe, then a bounded scalar search
    (golden section with parabolic steps) refines it to a 1e-10 window.
    """
    if not t_max > 0:
        raise InputError(f"t_max must be positive, got {t_max}")
    if samples is None:
        samples = default_samples(d, t_max)
    if samples < 2:
        raise InputError(f"samples must be at least 2, got {samples}")
    _check_vertices(d, u, v)

    grid = np.linspace(0.0, t_max, samples)
    values = fidelity_trace(d, u, v, grid)
    best = int(np.argmax(values))
    best_time, best_value = float(grid[best]), float(values[best])

    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, samples - 1)]
    if hi > lo:
        refined = minimize_scalar(
            lambda t: -fidelity(d, u, v, t),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": REFINE_XATOL},
        )
        if refined.success and -refined.fun > best_value:
            best_time, best_value = float(refined.x), float(-refined.fun)

    logger.debug("max fidelity %d->%d on [0, %g]: %.12g at t=%.12g", u, v, t_max, best_value, best_time)
    return FidelityRecord(time=best_time, fidelity=best_value, source=int(u), target=int(v))


def trace_frame(d: SpectralDecomposition, u: int, v: int, t_max: float,
                samples: int | None = None) -> pd.DataFrame:
    """Fidelity on the uniform grid as a DataFrame with columns t, fidelity."""
    if samples is None:
        samples = default_samples(d, t_max)
    grid = np.linspace(0.0, t_max, samples)
    return pd.DataFrame({"t": grid, "fidelity": fidelity_trace(d, u, v, grid)})
