"""
Exact-condition certification of perfect state transfer from a spectral decomposition.

Pipeline: classify eigenvalue clusters by E1_u = +/- E1_v, reconstruct the gap
ratios as fractions, check the parity pattern, derive the minimal time and
cross-check it dynamically.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce

import numpy as np

from config import CERTIFY_FIDELITY, DEGENERACY_TOL, MAX_DENOMINATOR, RATIONAL_TOL
from utils.errors import InputError
from utils.evolution import fidelity
from utils.spectral import SpectralDecomposition

logger = logging.getLogger(__name__)

# accepted fractions need residual * den**2 below this; convergents of an
# irrational land near 1 / (next partial quotient + 2)
RATIO_SHARPNESS = 1e-4


class CertificateStatus(str, Enum):
    CERTIFIED = "certified"
    REFUSED = "refused"


class RefusalReason(str, Enum):
    SYMMETRY_FAILURE = "symmetry-failure"
    IRRATIONAL_RATIO = "irrational-ratio"
    PARITY_FAILURE = "parity-failure"
    DEGENERATE_AMBIGUITY = "degenerate-ambiguity"
    NONE = "none"


def parity_class(num: int, den: int) -> str:
    return f"{'odd' if num % 2 else 'even'}/{'odd' if den % 2 else 'even'}"


@dataclass(frozen=True)
class RatioEntry:
    value: float
    num: int
    den: int
    residual: float

    @property
    def parity_class(self) -> str:
        return parity_class(self.num, self.den)

    def to_dict(self) -> dict:
        return {"den": self.den, "num": self.num, "residual": self.residual, "value": self.value}


@dataclass(frozen=True)
class RatioReport:
    """Ratios (lambda_i - lambda_ref) / base_gap over the supported eigenvalue clusters."""
    base_gap: float
    ratios: tuple = ()

    @property
    def parity_classes(self) -> list[str]:
        return [r.parity_class for r in self.ratios]


@dataclass(frozen=True)
class CospectralClassification:
    plus: tuple = ()
    minus: tuple = ()
    plus_clusters: tuple = ()
    minus_clusters: tuple = ()
    failure: RefusalReason | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.failure is None


@dataclass(frozen=True)
class PSTCertificate:
    status: CertificateStatus
    refusal_reason: RefusalReason
    source: int
    target: int
    plus_eigenvalues: tuple = ()
    minus_eigenvalues: tuple = ()
    transfer_time: float | None = None
    ratio_report: RatioReport = field(default_factory=lambda: RatioReport(base_gap=0.0))
    common_denominator: int | None = None
    multiplier: int | None = None
    checked_fidelity: float | None = None
    detail: str = ""

    @property
    def certified(self) -> bool:
        return self.status is CertificateStatus.CERTIFIED

    def to_dict(self) -> dict:
        return {
            "checked_fidelity": self.checked_fidelity,
            "common_denominator": self.common_denominator,
            "detail": self.detail,
            "minus": list(self.minus_eigenvalues),
            "multiplier": self.multiplier,
            "plus": list(self.plus_eigenvalues),
            "ratios": [r.to_dict() for r in self.ratio_report.ratios],
            "refusal_reason": self.refusal_reason.value,
            "source": self.source,
            "status": self.status.value,
            "target": self.target,
            "transfer_time": self.transfer_time,
        }


def cospectral_classify(d: SpectralDecomposition, u: int, v: int,
                        tol: float = RATIONAL_TOL) -> CospectralClassification:
    """
    Split the eigenvalue clusters supported on u into plus (E1_u = E1_v) and minus (E1_u = -E1_v).

    Works on spectral projections so degenerate clusters are handled basis-free.
    Clusters with no support at u (and v) are left out.
    """
    if tol <= 0:
        raise InputError(f"tol must be positive, got {tol}")
    plus, minus, plus_clusters, minus_clusters = [], [], [], []
    for cluster in d.clusters(DEGENERACY_TOL):
        basis = d.eigenvectors[:, cluster]
        e_u = basis @ basis[u, :]
        e_v = basis @ basis[v, :]
        norm_u, norm_v = np.linalg.norm(e_u), np.linalg.norm(e_v)
        values = [float(d.eigenvalues[i]) for i in cluster]
        if norm_u <= tol:
            if norm_v > tol:
                return CospectralClassification(
                    failure=RefusalReason.SYMMETRY_FAILURE,
                    detail=f"support mismatch at eigenvalue {values[0]:.12g}: |E1_u|={norm_u:.3e}, |E1_v|={norm_v:.3e}",
                )
            continue
        if np.linalg.norm(e_u - e_v) <= tol * norm_u:
            plus.extend(values)
            plus_clusters.append(float(np.mean(values)))
        elif np.linalg.norm(e_u + e_v) <= tol * norm_u:
            minus.extend(values)
            minus_clusters.append(float(np.mean(values)))
        else:
            reason = RefusalReason.DEGENERATE_AMBIGUITY if len(cluster) > 1 else RefusalReason.SYMMETRY_FAILURE
            return CospectralClassification(
                failure=reason,
                detail=f"eigenvalue {values[0]:.12g} (multiplicity {len(cluster)}) is neither symmetric nor antisymmetric on ({u}, {v})",
            )
    return CospectralClassification(
        plus=tuple(plus), minus=tuple(minus),
        plus_clusters=tuple(plus_clusters), minus_clusters=tuple(minus_clusters),
    )


def rational_reconstruct(x: float, max_den: int = MAX_DENOMINATOR,
                         tol: float = RATIONAL_TOL) -> tuple[int, int] | None:
    """First continued-fraction convergent p/q of x with |x - p/q| <= tol and q <= max_den."""
    if not math.isfinite(x):
        raise InputError(f"Cannot reconstruct non-finite value {x}")
    if max_den < 1 or tol <= 0:
        raise InputError(f"Need max_den >= 1 and tol > 0, got {max_den}, {tol}")

    h_prev, h = 0, 1  # numerators
    k_prev, k = 1, 0  # denominators
    remainder = x
    while True:
        a = math.floor(remainder)
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        if k > max_den:
            return None
        if abs(x - h / k) <= tol:
            g = math.gcd(h, k)
            return h // g, k // g
        fractional = remainder - a
        if fractional == 0:
            return None
        remainder = 1.0 / fractional


def _refuse(u, v, reason, detail, **fields) -> PSTCertificate:
    logger.info("Refused %d->%d: %s (%s)", u, v, reason.value, detail)
    return PSTCertificate(status=CertificateStatus.REFUSED, refusal_reason=reason,
                          source=int(u), target=int(v), detail=detail, **fields)


def certify(d: SpectralDecomposition, u: int, v: int, max_den: int = MAX_DENOMINATOR,
            tol: float = RATIONAL_TOL) -> PSTCertificate:
    """
    Decide perfect state transfer u -> v from the spectrum and return the minimal time.

    A certified result has always passed fidelity(T) >= 1 - 1e-8.
    """
    for x in (u, v):
        if isinstance(x, bool) or not isinstance(x, (int, np.integer)) or not 0 <= x < d.n:
            raise InputError(f"Vertex {x!r} is outside [0, {d.n})")
    if u == v:
        raise InputError("Source and target must differ")

    classification = cospectral_classify(d, u, v, tol)
    if not classification.ok:
        return _refuse(u, v, classification.failure, classification.detail)
    plus, minus = classification.plus, classification.minus
    labelled = [(value, +1) for value in classification.plus_clusters]
    labelled += [(value, -1) for value in classification.minus_clusters]
    labelled.sort()
    if not classification.plus_clusters or not classification.minus_clusters:
        return _refuse(u, v, RefusalReason.SYMMETRY_FAILURE, "plus or minus class is empty",
                       plus_eigenvalues=plus, minus_eigenvalues=minus)

    reference = labelled[0][0]
    base_gap = labelled[-1][0] - reference
    entries = []
    for value, _ in labelled:
        ratio = (value - reference) / base_gap
        fraction = rational_reconstruct(ratio, max_den, tol)
        if fraction is None:
            report = RatioReport(base_gap=base_gap, ratios=tuple(entries))
            return _refuse(u, v, RefusalReason.IRRATIONAL_RATIO,
                           f"ratio {ratio:.12g} has no fraction with denominator <= {max_den} within {tol:g}",
                           plus_eigenvalues=plus, minus_eigenvalues=minus, ratio_report=report)
        num, den = fraction
        if abs(ratio - num / den) * den * den > RATIO_SHARPNESS:
            report = RatioReport(base_gap=base_gap, ratios=tuple(entries))
            return _refuse(u, v, RefusalReason.IRRATIONAL_RATIO,
                           f"ratio {ratio:.12g} is only approximated by {num}/{den} (residual {abs(ratio - num / den):.3e})",
                           plus_eigenvalues=plus, minus_eigenvalues=minus, ratio_report=report)
        entries.append(RatioEntry(value=ratio, num=num, den=den, residual=abs(ratio - num / den)))
    report = RatioReport(base_gap=base_gap, ratios=tuple(entries))

    common = reduce(math.lcm, (r.den for r in entries), 1)
    if common > max_den:
        return _refuse(u, v, RefusalReason.IRRATIONAL_RATIO,
                       f"common denominator {common} exceeds {max_den}",
                       plus_eigenvalues=plus, minus_eigenvalues=minus, ratio_report=report)
    scaled = [(r.num * (common // r.den), sign) for r, (_, sign) in zip(entries, labelled)]

    # odd multipliers keep every parity and even ones make all scaled values even,
    # so m in {1, 2} already covers the search range m <= 2D
    multiplier = None
    for m in range(1, min(2 * common, 2) + 1):
        plus_parities = {(m * n) % 2 for n, sign in scaled if sign > 0}
        minus_parities = {(m * n) % 2 for n, sign in scaled if sign < 0}
        if len(plus_parities) == 1 and len(minus_parities) == 1 and plus_parities != minus_parities:
            multiplier = m
            break
    if multiplier is None:
        return _refuse(u, v, RefusalReason.PARITY_FAILURE,
                       "scaled plus and minus eigenvalues do not split into opposite parities",
                       plus_eigenvalues=plus, minus_eigenvalues=minus, ratio_report=report,
                       common_denominator=common)

    transfer_time = math.pi * multiplier * common / base_gap
    checked = fidelity(d, u, v, transfer_time)
    fields = dict(plus_eigenvalues=plus, minus_eigenvalues=minus, ratio_report=report,
                  common_denominator=common, multiplier=multiplier, checked_fidelity=checked)
    if checked < CERTIFY_FIDELITY:
        logger.warning("Rational certificate for %d->%d failed the dynamic check: fidelity %.12g at T=%.12g",
                       u, v, checked, transfer_time)
        return _refuse(u, v, RefusalReason.IRRATIONAL_RATIO,
                       f"fidelity {checked:.12g} at candidate time {transfer_time:.12g} is below the certification threshold",
                       **fields)

    logger.info("Certified %d->%d at T=%.12g (D=%d, m=%d)", u, v, transfer_time, common, multiplier)
    return PSTCertificate(status=CertificateStatus.CERTIFIED, refusal_reason=RefusalReason.NONE,
                          source=int(u), target=int(v), transfer_time=transfer_time, **fields)
