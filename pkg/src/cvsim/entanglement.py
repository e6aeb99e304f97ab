"""Separability and entanglement of two-mode Gaussian states, plus the
closed forms for TMSV degradation in absorbing fibers."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .symplectic import symplectic_eigenvalues, validate_covariance

_SIGMA_1 = np.array([[0.0, 1.0], [-1.0, 0.0]])
_PT = np.diag([1.0, 1.0, 1.0, -1.0])

_LN2 = math.log(2.0)


def _norm_base(base) -> str:
    if base in ("e", "natural", math.e):
        return "e"
    if base in ("2", "two", 2, 2.0):
        return "2"
    raise ValueError(f"log base must be natural or two, got {base!r}")


def _log(x: float, base: str) -> float:
    val = math.log(x)
    return val / _LN2 if base == "2" else val


def _as_two_mode(gamma) -> np.ndarray:
    gamma = np.asarray(gamma, dtype=float)
    if gamma.shape != (4, 4):
        raise ValueError("expected a 4x4 two-mode covariance matrix")
    return gamma


def partial_transpose(gamma) -> np.ndarray:
    """Flip the sign of the second mode's momentum row and column."""
    gamma = _as_two_mode(gamma)
    return _PT @ gamma @ _PT.T


@dataclass(frozen=True)
class SeparabilityVerdict:
    """Outcome of the two equivalent separability tests.

    ``lhs >= rhs`` is the determinant-form criterion; ``pt_min_eig`` is the
    smallest eigenvalue of gamma^PT + i Sigma.  Both must agree outside a
    small boundary band, otherwise an internal-consistency error is raised.
    """

    separable: bool
    lhs: float
    rhs: float
    pt_min_eig: float


def is_separable(gamma, tol: float = 1e-9, band: float = 1e-8) -> SeparabilityVerdict:
    gamma = _as_two_mode(gamma)
    if not validate_covariance(gamma, tol).physical:
        raise ValueError("covariance matrix is unphysical")

    c1 = gamma[:2, :2]
    c2 = gamma[2:, 2:]
    c3 = gamma[:2, 2:]
    det1, det2, det3 = (np.linalg.det(b) for b in (c1, c2, c3))
    trace_term = np.trace(c1 @ _SIGMA_1 @ c3 @ _SIGMA_1 @ c2 @ _SIGMA_1 @ c3.T @ _SIGMA_1)
    lhs = float(det1 * det2 + (1.0 - abs(det3)) ** 2 - trace_term)
    rhs = float(det1 + det2)

    pt_min = validate_covariance(partial_transpose(gamma), tol).min_eigenvalue

    scale = max(1.0, abs(lhs), abs(rhs))
    crit_margin = (lhs - rhs) / scale
    crit_sep = crit_margin >= -band
    pt_sep = pt_min >= -tol

    if crit_sep != pt_sep:
        if abs(crit_margin) <= band or abs(pt_min) <= band:
            # borderline state: the boundary counts as separable
            return SeparabilityVerdict(True, lhs, rhs, pt_min)
        raise RuntimeError(
            "separability criterion and partial-transpose test disagree "
            f"(margin {crit_margin:.3e}, PT min eigenvalue {pt_min:.3e})"
        )
    return SeparabilityVerdict(bool(crit_sep), lhs, rhs, pt_min)


@dataclass(frozen=True)
class NegativityReport:
    f_value: float
    e_n: float
    log_base: str


def log_negativity(gamma, base="e", tol: float = 1e-9) -> NegativityReport:
    """Logarithmic negativity of a two-mode covariance matrix.

    The closed form

        f(gamma) = sqrt(A - sqrt(A^2 - det gamma)),
        A = (det C1 + det C2)/2 - det C3,

    is evaluated in the cancellation-free arrangement
    f^2 = det gamma / (A + sqrt(A^2 - det gamma)) and cross-checked against
    the smallest symplectic eigenvalue of the partial transpose; the two
    backends must agree to 1e-9 (relatively, once E_N grows large).
    """
    base = _norm_base(base)
    gamma = _as_two_mode(gamma)
    if not validate_covariance(gamma, tol).physical:
        raise ValueError("covariance matrix is unphysical")

    det1 = np.linalg.det(gamma[:2, :2])
    det2 = np.linalg.det(gamma[2:, 2:])
    det3 = np.linalg.det(gamma[:2, 2:])
    det_g = np.linalg.det(gamma)
    a_half = 0.5 * (det1 + det2) - det3
    disc = a_half**2 - det_g
    if disc < 0.0:
        if disc < -tol * max(1.0, a_half**2):
            raise ValueError("negative discriminant: inconsistent covariance data")
        disc = 0.0
    denom = a_half + math.sqrt(disc)
    f_sq = max(det_g, 0.0) / denom if denom > 0.0 else 0.0
    f_closed = math.sqrt(max(f_sq, 0.0))

    nu_min = float(symplectic_eigenvalues(partial_transpose(gamma))[0])
    f_backend = nu_min

    e_closed = -math.log(f_closed) if 0.0 < f_closed < 1.0 else (math.inf if f_closed == 0.0 else 0.0)
    e_backend = -math.log(f_backend) if 0.0 < f_backend < 1.0 else (math.inf if f_backend == 0.0 else 0.0)
    both_deep = f_closed < 1e-8 and f_backend < 1e-8
    if not both_deep:
        limit = 1e-9 * max(1.0, min(e_closed, e_backend))
        if abs(e_closed - e_backend) > limit:
            raise RuntimeError(
                "closed-form and symplectic-spectrum log-negativities disagree: "
                f"{e_closed!r} vs {e_backend!r} (f = {f_closed!r}, nu = {f_backend!r})"
            )

    e_n = 0.0 if e_closed <= 0.0 else (e_closed / _LN2 if base == "2" else e_closed)
    return NegativityReport(f_value=f_closed, e_n=float(e_n), log_base=base)


def tmsv_entropy(zeta: float) -> float:
    """Entanglement entropy of the two-mode squeezed vacuum.

    E = -ln(1 - q^2) - q^2/(1 - q^2) * ln(q^2) with q = tanh(zeta);
    bounded above by 2*zeta and zero at zeta = 0.
    """
    q = math.tanh(zeta)
    q2 = q * q
    if q2 == 0.0:
        return 0.0
    return -math.log1p(-q2) - q2 / (1.0 - q2) * math.log(q2)


def fiber_separability_threshold(zeta: float, t_mag: float, r_mag: float = 0.0) -> float:
    """Thermal occupation at which the degraded TMSV turns separable.

    n_crit = |T|^2 (1 - e^(-2 zeta)) / (2 (1 - |R|^2 - |T|^2)).  Without
    absorption (|T|^2 + |R|^2 = 1) the threshold is infinite: entanglement
    survives any zero-temperature fiber, so math.inf is returned.
    """
    if not 0.0 <= t_mag <= 1.0 or not 0.0 <= r_mag <= 1.0:
        raise ValueError("|T| and |R| must lie in [0, 1]")
    absorption = 1.0 - t_mag**2 - r_mag**2
    if absorption < -1e-12:
        raise ValueError("energy conservation requires |T|^2 + |R|^2 <= 1")
    if zeta == 0.0:
        return 0.0
    if absorption <= 0.0:
        return math.inf
    return t_mag**2 * (-math.expm1(-2.0 * zeta)) / (2.0 * absorption)


def separability_length(zeta: float, n_th: float, l_abs: float) -> float:
    """Fiber length (Lambert-Beer, R = 0) at which the TMSV turns separable.

    l_S = (l_abs/2) ln[1 + (1 - e^(-2 zeta)) / (2 n_th)]; diverges for
    n_th -> 0, in which case math.inf is returned.
    """
    if n_th < 0:
        raise ValueError("mean thermal photon number must be non-negative")
    if l_abs <= 0:
        raise ValueError("absorption length must be positive")
    if zeta == 0.0:
        return 0.0
    if n_th == 0.0:
        return math.inf
    return 0.5 * l_abs * math.log1p(-math.expm1(-2.0 * zeta) / (2.0 * n_th))


def transmitted_log_negativity(zeta: float, t_mag: float, base="e") -> float:
    """Log-negativity of a TMSV after two zero-temperature fibers.

    E_N = -log[1 - |T|^2 (1 - e^(-2 zeta))], independent of the reflection
    coefficient.  Perfect transmission recovers E_N = 2 zeta in natural log.
    """
    base = _norm_base(base)
    if not 0.0 <= t_mag <= 1.0:
        raise ValueError("|T| must lie in [0, 1]")
    loss_arg = t_mag**2 * (-math.expm1(-2.0 * zeta))
    if loss_arg >= 1.0:
        return math.inf
    val = -math.log1p(-loss_arg)
    return val / _LN2 if base == "2" else val


def max_transmittable(length: float, l_abs: float, base="e") -> float:
    """Saturation bound: E_N,max = -log[1 - e^(-2 l / l_abs)]."""
    base = _norm_base(base)
    if length < 0 or l_abs <= 0:
        raise ValueError("length must be >= 0 and absorption length > 0")
    t_sq = math.exp(-2.0 * length / l_abs)
    if t_sq >= 1.0:
        return math.inf
    val = -math.log1p(-t_sq)
    return val / _LN2 if base == "2" else val
