"""Trace-preserving Gaussian channels and the absorbing-fiber model."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag

from .symplectic import DEFAULT_TOL, rotation_matrix, symplectic_form
from .states import GaussianState, tmsv_state

_PARAM_TOL = 1e-12


@dataclass(frozen=True)
class GaussianChannel:
    """A map gamma -> A gamma A^T + G, kappa -> A kappa.

    G must be symmetric; complete positivity holds iff the Hermitian
    matrix G + i Sigma - i A Sigma A^T is positive semidefinite.
    """

    a: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=float)
        g = np.array(self.g, dtype=float)
        if a.shape != g.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("A and G must be square matrices of equal shape")
        if a.shape[0] % 2 != 0:
            raise ValueError("channel dimension must be even")
        if np.max(np.abs(g - g.T)) > DEFAULT_TOL * max(1.0, np.max(np.abs(g))):
            raise ValueError("noise matrix G must be symmetric")
        a.setflags(write=False)
        g.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "g", g)

    @property
    def n_modes(self) -> int:
        return self.a.shape[0] // 2


@dataclass(frozen=True)
class FiberParams:
    """Single-frequency fiber: |T|, transmission phase, |R|, thermal occupation."""

    t_mag: float
    phase: float = 0.0
    r_mag: float = 0.0
    n_th: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.t_mag <= 1.0:
            raise ValueError("transmission magnitude must lie in [0, 1]")
        if not 0.0 <= self.r_mag <= 1.0:
            raise ValueError("reflection magnitude must lie in [0, 1]")
        if self.t_mag**2 + self.r_mag**2 > 1.0 + _PARAM_TOL:
            raise ValueError("energy conservation requires |T|^2 + |R|^2 <= 1")
        if self.n_th < 0.0:
            raise ValueError("mean thermal photon number must be non-negative")

    @property
    def absorption(self) -> float:
        """1 - |T|^2 - |R|^2, the power lost to the medium."""
        return max(0.0, 1.0 - self.t_mag**2 - self.r_mag**2)


IDEAL_FIBER = FiberParams(t_mag=1.0)


def validate_channel(ch: GaussianChannel, tol: float = DEFAULT_TOL) -> bool:
    """Complete-positivity certificate, state independent.

    The requirement that every physical input stays physical is equivalent
    to G + i Sigma - i A Sigma A^T >= 0, which is what gets tested here.
    """
    sigma = symplectic_form(ch.n_modes)
    herm = ch.g + 1j * sigma - 1j * ch.a @ sigma @ ch.a.T
    herm = 0.5 * (herm + herm.conj().T)
    return bool(np.linalg.eigvalsh(herm)[0] >= -tol)


def apply_channel(state: GaussianState, ch: GaussianChannel, tol: float = DEFAULT_TOL) -> GaussianState:
    if ch.n_modes != state.n_modes:
        raise ValueError("channel dimension does not match the state")
    if not validate_channel(ch, tol):
        raise ValueError("channel fails the complete-positivity certificate")
    return GaussianState(ch.a @ state.kappa, ch.a @ state.gamma @ ch.a.T + ch.g)


def fiber_channel(p: FiberParams) -> GaussianChannel:
    """Single-mode channel of one absorbing fiber.

    A = |T| R(phase); G = [|R|^2 + (2 n_th + 1)(1 - |T|^2 - |R|^2)] * identity.
    """
    a = p.t_mag * rotation_matrix(p.phase)
    g_scalar = p.r_mag**2 + (2.0 * p.n_th + 1.0) * p.absorption
    return GaussianChannel(a, g_scalar * np.eye(2))


def fiber_from_length(length: float, l_abs: float, n_th: float = 0.0) -> FiberParams:
    """Fiber with Lambert-Beer extinction |T| = exp(-length/l_abs) and R = 0."""
    if length < 0 or l_abs <= 0:
        raise ValueError("length must be >= 0 and absorption length > 0")
    return FiberParams(t_mag=float(np.exp(-length / l_abs)), n_th=n_th)


def tensor_channels(*channels: GaussianChannel) -> GaussianChannel:
    """Independent channels acting on consecutive mode groups."""
    if not channels:
        raise ValueError("need at least one channel")
    return GaussianChannel(
        block_diag(*[ch.a for ch in channels]),
        block_diag(*[ch.g for ch in channels]),
    )


def compose_channels(ch2: GaussianChannel, ch1: GaussianChannel) -> GaussianChannel:
    """The channel 'first ch1, then ch2': (A2 A1, A2 G1 A2^T + G2)."""
    if ch1.n_modes != ch2.n_modes:
        raise ValueError("channel dimensions do not match")
    return GaussianChannel(ch2.a @ ch1.a, ch2.a @ ch1.g @ ch2.a.T + ch2.g)


def degraded_tmsv(zeta: float, f1: FiberParams, f2: FiberParams) -> np.ndarray:
    """Covariance matrix of a TMSV sent through one fiber per arm.

    Built by composing the two single-mode fiber channels, so the Re/Im
    structure of the cross block arises from the phase rotations rather
    than a special-cased formula.
    """
    ch = tensor_channels(fiber_channel(f1), fiber_channel(f2))
    return apply_channel(tmsv_state(zeta), ch).gamma
