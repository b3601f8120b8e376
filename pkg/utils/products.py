"""
Perfect state transfer on Cartesian products.

U(t) for G1 □ G2 factors as U1(t) ⊗ U2(t), so transfer u -> v on G1 and x -> y on G2
at the same time t gives transfer (u, x) -> (v, y). Products of twin instances usually
have no twin pair left, which makes them useful non-twin test cases.
"""
import logging
from dataclasses import dataclass

import numpy as np

from config import CERTIFY_FIDELITY
from utils.certifier import certify
from utils.errors import FactorFailureError, InputError, TimeMismatchError
from utils.evolution import fidelity, propagator
from utils.graph_core import (
    Graph,
    Potential,
    build_hamiltonian,
    cartesian_product,
    combine_potentials,
    find_twins,
)
from utils.spectral import SpectralDecomposition, decompose

logger = logging.getLogger(__name__)

TIME_TOL = 1e-9
COMPOSED_FIDELITY = 1 - 1e-7


@dataclass(frozen=True, eq=False)
class ProductInstance:
    graph: Graph
    potential: Potential
    source: int
    target: int
    time: float
    fidelity: float
    has_twins: bool

    def to_dict(self) -> dict:
        return {
            "edges": [list(e) for e in self.graph.sorted_edges()],
            "fidelity": self.fidelity,
            "has_twins": self.has_twins,
            "n": self.graph.n,
            "potential": self.potential.tolist(),
            "source": self.source,
            "target": self.target,
            "time": self.time,
        }


def _check_factor(label: str, g: Graph, q: Potential, a: int, b: int, t: float) -> float:
    d = decompose(build_hamiltonian(g, q))
    value = fidelity(d, a, b, t)
    if value >= CERTIFY_FIDELITY:
        return value
    certificate = certify(d, a, b)
    if certificate.certified and abs(certificate.transfer_time - t) > TIME_TOL:
        raise TimeMismatchError(
            f"{label} transfers {a}->{b} at T={certificate.transfer_time:.12g}, not at t={t:.12g}"
        )
    raise FactorFailureError(f"{label} fidelity {a}->{b} at t={t:.12g} is {value:.12g}")


def product_pst(g1: Graph, q1: Potential, u: int, v: int,
                g2: Graph, q2: Potential, x: int, y: int, t: float) -> ProductInstance:
    """
    Compose two transfer instances that share the time t.

    Raises:
        TimeMismatchError: a factor has transfer, but at a different time
        FactorFailureError: a factor has no transfer at t
    """
    if len(q1) != g1.n or len(q2) != g2.n:
        raise InputError("Each potential must match its factor graph")
    for g, a, b in ((g1, u, v), (g2, x, y)):
        g.check_vertex(a)
        g.check_vertex(b)
    if not np.isfinite(t):
        raise InputError(f"Time must be finite, got {t}")

    _check_factor("first factor", g1, q1, u, v, t)
    _check_factor("second factor", g2, q2, x, y, t)

    graph = cartesian_product(g1, g2)
    potential = combine_potentials(q1, q2)
    source, target = u * g2.n + x, v * g2.n + y
    composed = fidelity(decompose(build_hamiltonian(graph, potential)), source, target, t)
    if composed < COMPOSED_FIDELITY:
        raise FactorFailureError(f"Composed fidelity {composed:.12g} at t={t:.12g} is below {COMPOSED_FIDELITY}")

    has_twins = bool(find_twins(graph))
    logger.info("Product transfer %d->%d at t=%.12g, fidelity %.12g (twins: %s)",
                source, target, t, composed, has_twins)
    return ProductInstance(graph=graph, potential=potential, source=source, target=target,
                           time=float(t), fidelity=composed, has_twins=has_twins)


def _check_sizes(d1: SpectralDecomposition, d2: SpectralDecomposition, d12: SpectralDecomposition) -> None:
    if d12.n != d1.n * d2.n:
        raise InputError(f"Product decomposition has size {d12.n}, expected {d1.n} * {d2.n}")


def kron_check(d1: SpectralDecomposition, d2: SpectralDecomposition,
               d12: SpectralDecomposition, t: float) -> float:
    """max |U12(t) - U1(t) ⊗ U2(t)| over all entries."""
    _check_sizes(d1, d2, d12)
    expected = np.kron(propagator(d1, t), propagator(d2, t))
    return float(np.max(np.abs(propagator(d12, t) - expected)))


def product_spectrum_residual(d1: SpectralDecomposition, d2: SpectralDecomposition,
                              d12: SpectralDecomposition) -> float:
    """Largest gap between the product spectrum and the sorted sums lambda + mu."""
    _check_sizes(d1, d2, d12)
    sums = np.sort(np.add.outer(d1.eigenvalues, d2.eigenvalues).ravel())
    return float(np.max(np.abs(d12.eigenvalues - sums)))
