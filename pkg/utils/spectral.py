"""Symmetric eigendecomposition, eigenvalue derivatives and path characteristic polynomials."""
import logging
from dataclasses import dataclass

import numpy as np

from config import DEGENERACY_TOL, SPECTRAL_TOL
from utils.errors import DegeneracyError, InputError, SpectralError

logger = logging.getLogger(__name__)

JACOBI_REL_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
SYMMETRY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenvalues ascending; column i of `eigenvectors` is the unit eigenvector of eigenvalue i."""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    simplicity_gap: float

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def clusters(self, threshold: float = DEGENERACY_TOL) -> list[list[int]]:
        return eigenvalue_clusters(self.eigenvalues, threshold)

    def gap_at(self, i: int) -> float:
        """Distance from eigenvalue i to its nearest neighbour (inf for n = 1)."""
        w = self.eigenvalues
        gaps = []
        if i > 0:
            gaps.append(w[i] - w[i - 1])
        if i < len(w) - 1:
            gaps.append(w[i + 1] - w[i])
        return float(min(gaps)) if gaps else float("inf")


@dataclass(frozen=True)
class PathHalfSpectra:
    symmetric_eigenvalues: np.ndarray
    antisymmetric_eigenvalues: np.ndarray

    def union(self) -> np.ndarray:
        return np.sort(np.concatenate([self.symmetric_eigenvalues, self.antisymmetric_eigenvalues]))


def _as_symmetric_matrix(h) -> np.ndarray:
    matrix = np.array(getattr(h, "matrix", h), dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InputError(f"Expected a square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise InputError("Hamiltonian has non-finite entries")
    if not np.array_equal(matrix, matrix.T):
        asymmetry = np.max(np.abs(matrix - matrix.T))
        if asymmetry > SYMMETRY_TOL * max(1.0, np.max(np.abs(matrix))):
            raise InputError(f"Hamiltonian is not symmetric (max asymmetry {asymmetry:.3e})")
        matrix = (matrix + matrix.T) / 2
    return matrix


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude entry of each column positive; ties go to the lowest index."""
    vectors = vectors.copy()
    for k in range(vectors.shape[1]):
        column = vectors[:, k]
        magnitudes = np.abs(column)
        top = magnitudes.max()
        lead = int(np.flatnonzero(magnitudes >= top - 1e-12 * max(1.0, top))[0])
        if column[lead] < 0:
            vectors[:, k] = -column
    return vectors


def eigenvalue_clusters(eigenvalues: np.ndarray, threshold: float = DEGENERACY_TOL) -> list[list[int]]:
    """Group sorted eigenvalue indices whose consecutive gaps are <= threshold."""
    if len(eigenvalues) == 0:
        return []
    clusters = [[0]]
    for i in range(1, len(eigenvalues)):
        if eigenvalues[i] - eigenvalues[i - 1] <= threshold:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return clusters


def jacobi_eigh(matrix: np.ndarray, rel_tol: float = JACOBI_REL_TOL,
                max_sweeps: int = JACOBI_MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray]:
    """
    Cyclic Jacobi rotations on a dense symmetric matrix.

    Converges when the off-diagonal Frobenius norm drops to rel_tol * ||A||_F.
    Returns eigenvalues ascending and the matching eigenvector columns.
    """
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    norm = np.linalg.norm(a)
    if norm == 0.0:
        return np.zeros(n), v
    # pivots at or below this are left alone; together they stay under the convergence bound
    negligible = max(0.1 * rel_tol * norm / n, np.finfo(float).tiny)

    for sweep in range(max_sweeps):
        off_diagonal = a - np.diag(np.diag(a))
        if np.linalg.norm(off_diagonal) <= rel_tol * norm or np.max(np.abs(off_diagonal)) <= negligible:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= negligible:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta == 0.0:
                    t = 1.0
                elif abs(theta) > 1e8:
                    t = 0.5 / theta
                else:
                    t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
    else:
        raise SpectralError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")

    logger.debug("Jacobi converged after %d sweeps (n=%d)", sweep, n)
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def decompose(h, tol: float = SPECTRAL_TOL, method: str = "lapack") -> SpectralDecomposition:
    """
    Eigendecomposition of a real symmetric Hamiltonian.

    Args:
        h: Hamiltonian or square array
        tol: residual bound for orthonormality and reconstruction (scaled by max |H| when > 1)
        method: "lapack" (numpy eigh) or "jacobi" (cyclic Jacobi rotations)

    Returns:
        SpectralDecomposition with deterministic eigenvector signs
    """
    if tol <= 0:
        raise InputError(f"tol must be positive, got {tol}")
    matrix = _as_symmetric_matrix(h)

    if method == "lapack":
        w, v = np.linalg.eigh(matrix)
    elif method == "jacobi":
        w, v = jacobi_eigh(matrix)
    else:
        raise InputError(f"Unknown eigensolver method {method!r}")

    v = _fix_signs(v)
    n = len(w)
    scale = max(1.0, float(np.max(np.abs(matrix)))) if n else 1.0
    orthonormality = np.max(np.abs(v.T @ v - np.eye(n))) if n else 0.0
    reconstruction = np.max(np.abs((v * w) @ v.T - matrix)) if n else 0.0
    if orthonormality > tol * scale or reconstruction > tol * scale:
        raise SpectralError(
            f"Eigendecomposition residuals too large: orthonormality {orthonormality:.3e}, "
            f"reconstruction {reconstruction:.3e}"
        )

    gap = float(np.min(np.diff(w))) if n > 1 else float("inf")
    w.flags.writeable = False
    v.flags.writeable = False
    return SpectralDecomposition(eigenvalues=w, eigenvectors=v, simplicity_gap=gap)


def eigenvalue_derivative(d: SpectralDecomposition, i: int, j: int) -> float:
    """d(lambda_i)/d(Q_j) = phi_i(j)**2 for a simple eigenvalue of A + diag(Q)."""
    if not 0 <= i < d.n or not 0 <= j < d.n:
        raise InputError(f"Index out of range: eigen-index {i}, vertex {j}, n={d.n}")
    if d.gap_at(i) <= DEGENERACY_TOL:
        raise DegeneracyError(f"Eigenvalue {i} ({d.eigenvalues[i]:.12g}) is degenerate")
    return float(d.eigenvectors[j, i] ** 2)


def eigenvalue_derivatives(d: SpectralDecomposition) -> np.ndarray:
    """Matrix with entry (i, j) = d(lambda_i)/d(Q_j); only meaningful on simple eigenvalues."""
    return (d.eigenvectors ** 2).T


def eigenvalue_derivative_charpoly(h, eigenvalue: float, j: int) -> float:
    """
    Same derivative from the characteristic polynomial F(x) = det(xI - H).

    F_j / F' reduces to M_j / sum_k M_k, where M_k is the principal minor of
    (eigenvalue * I - H) with vertex k deleted.
    """
    matrix = _as_symmetric_matrix(h)
    n = matrix.shape[0]
    shifted = eigenvalue * np.eye(n) - matrix
    minors = np.array([
        np.linalg.det(np.delete(np.delete(shifted, k, axis=0), k, axis=1)) if n > 1 else 1.0
        for k in range(n)
    ])
    total = minors.sum()
    if abs(total) <= 1e-12 * max(1.0, np.max(np.abs(minors))):
        raise DegeneracyError(f"F'({eigenvalue:.12g}) vanishes: eigenvalue is not simple")
    return float(minors[j] / total)


def char_poly_path(x: float, q) -> float:
    """p_n(x; q) = det(xI - (A_path + diag(q))) by the three-term recurrence."""
    previous, current = 0.0, 1.0
    for qk in np.asarray(q, dtype=float).reshape(-1):
        previous, current = current, (x - qk) * current - previous
    return float(current)


def _path_block(diagonal: np.ndarray) -> np.ndarray:
    m = len(diagonal)
    block = np.diag(np.asarray(diagonal, dtype=float))
    if m > 1:
        idx = np.arange(m - 1)
        block[idx, idx + 1] = block[idx + 1, idx] = 1.0
    return block


def _check_path_symmetry(q: np.ndarray) -> None:
    asymmetry = np.max(np.abs(q - q[::-1])) if len(q) else 0.0
    if asymmetry > SYMMETRY_TOL:
        raise InputError(f"Path potential is not mirror symmetric (deviation {asymmetry:.3e})")


def half_space_matrices(q) -> tuple[np.ndarray, np.ndarray]:
    """
    (symmetric-sector matrix, antisymmetric-sector matrix) of a mirror-symmetric path potential.

    Even P_2n: A_n + diag(Q_1..Q_n) with the last diagonal entry +1 / -1.
    Odd P_2n+1: the (n+1)-block whose last row carries a 2, symmetrized by
    diag(1, ..., 1, sqrt 2) so the corner pair becomes sqrt 2 / sqrt 2; and A_n + diag(Q_1..Q_n).
    """
    q = np.asarray(q, dtype=float).reshape(-1)
    _check_path_symmetry(q)
    size = len(q)
    half = size // 2
    if size % 2 == 0:
        plus = _path_block(q[:half])
        minus = plus.copy()
        plus[half - 1, half - 1] += 1.0
        minus[half - 1, half - 1] -= 1.0
        return plus, minus
    symmetric = _path_block(q[:half + 1])
    if half > 0:
        symmetric[half - 1, half] = symmetric[half, half - 1] = np.sqrt(2.0)
    antisymmetric = _path_block(q[:half])
    return symmetric, antisymmetric


def path_half_spectra(q, parity: str | None = None) -> PathHalfSpectra:
    """Split the spectrum of a symmetric path Hamiltonian into f(1) = f(end) and f(1) = -f(end) families."""
    q = np.asarray(q, dtype=float).reshape(-1)
    if len(q) == 0:
        raise InputError("Path potential must not be empty")
    actual = "even" if len(q) % 2 == 0 else "odd"
    if parity is not None and parity != actual:
        raise InputError(f"Potential of length {len(q)} does not describe an {parity} path")
    symmetric, antisymmetric = half_space_matrices(q)
    sym = np.linalg.eigvalsh(symmetric) if symmetric.size else np.array([])
    anti = np.linalg.eigvalsh(antisymmetric) if antisymmetric.size else np.array([])
    return PathHalfSpectra(symmetric_eigenvalues=sym, antisymmetric_eigenvalues=anti)


def path_factorization_residual(q, x: float) -> float:
    """
    Relative residual of the factorizations of the symmetric path polynomial at x.

    Even: L_2n = (p_n + p_{n-1})(p_n - p_{n-1}); odd: L_2n+1 = p_n (p_{n+1} - p_{n-1}).
    """
    q = np.asarray(q, dtype=float).reshape(-1)
    _check_path_symmetry(q)
    half = len(q) // 2
    full = char_poly_path(x, q)
    p_n = char_poly_path(x, q[:half])
    p_prev = char_poly_path(x, q[:half - 1]) if half >= 1 else 0.0
    if len(q) % 2 == 0:
        factored = (p_n + p_prev) * (p_n - p_prev)
    else:
        p_next = char_poly_path(x, q[:half + 1])
        factored = p_n * (p_next - p_prev)
    return abs(full - factored) / max(1.0, abs(full))
