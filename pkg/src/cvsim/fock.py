"""Truncated Fock-space oracle.

Everything here is brute force on purpose: the module exists to verify the
covariance-matrix machinery against an independent representation, so it
shares no formulas with the Gaussian modules beyond the quadrature
conventions (x = (a + a^dag)/sqrt(2), gamma = twice the symmetrised
covariance, vacuum gamma = 1).

Loss with thermal occupation is out of scope; all oracle checks run at
n_th = 0.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

DEFAULT_CUTOFF = 25
DEFAULT_GRID = (-8.0, 8.0, 801)

_BOUNDARY_BUDGET = 1e-6


@dataclass(frozen=True)
class FockState:
    """Density matrix over a truncated product Fock basis.

    ``tensor`` has shape (d, ..., d) with the ket indices first and the bra
    indices last (d = cutoff + 1); ``trunc_weight`` is the probability lost
    to the truncation when the state was built.
    """

    modes: int
    cutoff: int
    tensor: np.ndarray
    trunc_weight: float = 0.0

    def __post_init__(self):
        d = self.cutoff + 1
        expected = (d,) * (2 * self.modes)
        tensor = np.asarray(self.tensor, dtype=complex)
        if tensor.shape != expected:
            raise ValueError(f"tensor shape {tensor.shape} != {expected}")
        object.__setattr__(self, "tensor", tensor)

    @property
    def dim(self) -> int:
        return (self.cutoff + 1) ** self.modes

    @property
    def matrix(self) -> np.ndarray:
        return self.tensor.reshape(self.dim, self.dim)

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def purity(self) -> float:
        m = self.matrix
        return float(np.trace(m @ m).real)


def _from_matrix(matrix: np.ndarray, modes: int, cutoff: int, weight: float = 0.0) -> FockState:
    d = cutoff + 1
    return FockState(modes, cutoff, matrix.reshape((d,) * (2 * modes)), weight)


def vacuum_fock(modes: int = 1, cutoff: int = DEFAULT_CUTOFF) -> FockState:
    d = cutoff + 1
    vec = np.zeros(d**modes, dtype=complex)
    vec[0] = 1.0
    return _from_matrix(np.outer(vec, vec.conj()), modes, cutoff)


def number_state_fock(ns, cutoff: int = DEFAULT_CUTOFF) -> FockState:
    """Product number state |n1, n2, ...><...|."""
    ns = np.atleast_1d(np.asarray(ns, dtype=int))
    if np.any(ns > cutoff) or np.any(ns < 0):
        raise ValueError("occupation exceeds the cutoff")
    d = cutoff + 1
    idx = 0
    for n in ns:
        idx = idx * d + int(n)
    vec = np.zeros(d ** len(ns), dtype=complex)
    vec[idx] = 1.0
    return _from_matrix(np.outer(vec, vec.conj()), len(ns), cutoff)


def build_tmsv_fock(zeta: float, cutoff: int = DEFAULT_CUTOFF, max_truncation: float = 1e-6) -> FockState:
    """Two-mode squeezed vacuum sqrt(1-q^2) sum_n q^n |nn>, q = tanh(zeta).

    The expansion is truncated at the cutoff and renormalised; the dropped
    weight q^(2(cutoff+1)) is reported on the state and must not exceed
    ``max_truncation``.
    """
    q = np.tanh(zeta)
    d = cutoff + 1
    weight = float(q ** (2 * d))
    if weight > max_truncation:
        raise ValueError(
            f"truncation weight {weight:.3e} exceeds the budget {max_truncation:.1e}; raise the cutoff"
        )
    amps = np.sqrt(1.0 - q * q) * q ** np.arange(d)
    psi = np.zeros((d, d), dtype=complex)
    np.fill_diagonal(psi, amps)
    psi = psi.reshape(-1)
    psi /= np.linalg.norm(psi)
    return _from_matrix(np.outer(psi, psi.conj()), 2, cutoff, weight)


def _destroy(d: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, d, dtype=float)), k=1)


@lru_cache(maxsize=32)
def _loss_kraus(cutoff: int, transmittance: float) -> tuple[np.ndarray, ...]:
    """Kraus operators of the loss channel, built from the beamsplitter.

    The mode is coupled to a vacuum ancilla by U = exp[theta (a^dag g -
    a g^dag)] with cos^2(theta) = transmittance, and the ancilla is traced
    out, which is exactly E_k = <k|U|0>.  The generator conserves total
    photon number, so the truncated exponential is exact on every block the
    input can reach.
    """
    d = cutoff + 1
    theta = np.arccos(np.sqrt(transmittance))
    a = _destroy(d)
    gen = theta * (np.kron(a.T, a) - np.kron(a, a.T))
    u = expm(gen).reshape(d, d, d, d)
    return tuple(np.ascontiguousarray(u[:, k, :, 0]) for k in range(d))


def _one_mode_conjugation(tensor: np.ndarray, op: np.ndarray, mode: int, modes: int) -> np.ndarray:
    """op rho op^dag on one mode of the ket/bra tensor."""
    t = np.tensordot(op, tensor, axes=([1], [mode]))
    t = np.moveaxis(t, 0, mode)
    t = np.tensordot(op.conj(), t, axes=([1], [modes + mode]))
    return np.moveaxis(t, 0, modes + mode)


def apply_loss_fock(state: FockState, mode: int, transmittance: float) -> FockState:
    """Transmit one mode through a beamsplitter of the given power
    transmittance with a vacuum ancilla behind it, tracing out the ancilla."""
    if not 0.0 <= transmittance <= 1.0:
        raise ValueError("transmittance must lie in [0, 1]")
    if not 0 <= mode < state.modes:
        raise ValueError("mode index out of range")
    if transmittance == 1.0:
        return state
    out = np.zeros_like(state.tensor)
    for kraus in _loss_kraus(state.cutoff, float(transmittance)):
        out += _one_mode_conjugation(state.tensor, kraus, mode, state.modes)
    return FockState(state.modes, state.cutoff, out, state.trunc_weight)


def partial_trace(state: FockState, keep) -> FockState:
    keep = sorted(set(keep))
    drop = [m for m in range(state.modes) if m not in keep]
    tensor = state.tensor
    for m in sorted(drop, reverse=True):
        tensor = np.trace(tensor, axis1=m, axis2=tensor.ndim // 2 + m)
    return FockState(len(keep), state.cutoff, tensor, state.trunc_weight)


def _quadrature_ops(cutoff: int) -> tuple[np.ndarray, np.ndarray]:
    a = _destroy(cutoff + 1)
    x = (a + a.T) / np.sqrt(2.0)
    p = (a - a.T) / (1j * np.sqrt(2.0))
    return x, p.astype(complex)


def covariance_from_fock(state: FockState) -> tuple[np.ndarray, np.ndarray]:
    """Extract (kappa, gamma) by taking first and second moments.

    Densifies the state, so it is limited to one or two modes; that covers
    every oracle comparison in the suite.
    """
    if state.modes > 2:
        raise ValueError("moment extraction supports at most two modes")
    d = state.cutoff + 1
    x1, p1 = _quadrature_ops(state.cutoff)
    eye = np.eye(d)
    quads = []
    for m in range(state.modes):
        for op in (x1, p1):
            factors = [eye] * state.modes
            factors[m] = op
            full = factors[0]
            for f in factors[1:]:
                full = np.kron(full, f)
            quads.append(full)
    rho = state.matrix
    kappa = np.array([np.trace(rho @ q).real for q in quads])
    dim = 2 * state.modes
    gamma = np.empty((dim, dim))
    for i in range(dim):
        for j in range(i, dim):
            sym = quads[i] @ quads[j] + quads[j] @ quads[i]
            gamma[i, j] = gamma[j, i] = np.trace(rho @ sym).real - 2.0 * kappa[i] * kappa[j]
    return kappa, gamma


def boundary_population(state: FockState) -> float:
    """Largest diagonal probability with any mode at the cutoff level."""
    diag = np.real(np.diagonal(state.matrix))
    d = state.cutoff + 1
    probs = diag.reshape((d,) * state.modes)
    worst = 0.0
    for m in range(state.modes):
        worst = max(worst, float(np.take(probs, -1, axis=m).sum()))
    return worst


def log_negativity_fock(state: FockState, base="e") -> float:
    """Trace-norm logarithmic negativity of a two-mode density matrix.

    The partial transpose swaps the second mode's ket and bra indices; the
    result is log of the sum of absolute eigenvalues.
    """
    if state.modes != 2:
        raise ValueError("log negativity needs a bipartite state")
    if boundary_population(state) > _BOUNDARY_BUDGET:
        warnings.warn("cutoff boundary population exceeds budget; result may be truncation dominated")
    d = state.cutoff + 1
    pt = state.tensor.transpose(0, 3, 2, 1).reshape(d * d, d * d)
    trace_norm = float(np.sum(np.abs(np.linalg.eigvalsh(pt))))
    val = np.log(trace_norm)
    if base in ("2", "two", 2):
        val = val / np.log(2.0)
    elif base not in ("e", "natural"):
        raise ValueError(f"log base must be natural or two, got {base!r}")
    return float(val)


def overlap_fock(state_a: FockState, state_b: FockState, purity_tol: float = 1e-6) -> float:
    """<psi_a| rho_b |psi_a> as Tr[rho_a rho_b]; state_a must be pure."""
    if state_a.modes != state_b.modes or state_a.cutoff != state_b.cutoff:
        raise ValueError("states must live on the same truncated space")
    if abs(state_a.purity() - 1.0) > purity_tol:
        raise ValueError("first argument must be a pure state")
    return float(np.trace(state_a.matrix @ state_b.matrix).real)


@dataclass(frozen=True)
class QuadratureWavefunctionTable:
    """Harmonic-oscillator eigenfunctions psi_n sampled on a grid.

    Built by the stable two-term recurrence
    psi_n = sqrt(2/n) X psi_(n-1) - sqrt((n-1)/n) psi_(n-2),
    which avoids the factorial overflow of the closed form.
    """

    grid: np.ndarray
    values: np.ndarray  # shape (n_max + 1, len(grid))

    @classmethod
    def build(cls, grid, n_max: int) -> "QuadratureWavefunctionTable":
        grid = np.asarray(grid, dtype=float)
        values = np.empty((n_max + 1, grid.size))
        values[0] = np.pi**-0.25 * np.exp(-0.5 * grid**2)
        if n_max >= 1:
            values[1] = np.sqrt(2.0) * grid * values[0]
        for n in range(2, n_max + 1):
            values[n] = np.sqrt(2.0 / n) * grid * values[n - 1] - np.sqrt((n - 1.0) / n) * values[n - 2]
        return cls(grid=grid, values=values)


def default_grid() -> np.ndarray:
    lo, hi, num = DEFAULT_GRID
    return np.linspace(lo, hi, num)


@dataclass(frozen=True)
class HomodyneFockResult:
    grid: np.ndarray
    pdf: np.ndarray
    conditionals: np.ndarray | None  # (n_points, rest_dim, rest_dim) or None


def homodyne_povm_fock(state: FockState, mode: int, phi: float = 0.0, grid=None) -> HomodyneFockResult:
    """Project one mode onto quadrature eigenstates |X, phi>.

    phi = 0 is an x measurement and phi = pi/2 a p measurement.  Returns
    the outcome density p(X) = <X,phi| rho_mode |X,phi> on the grid and,
    for multimode input, the renormalised conditional states of the
    remaining modes at each grid point.
    """
    if not 0 <= mode < state.modes:
        raise ValueError("mode index out of range")
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    table = QuadratureWavefunctionTable.build(grid, state.cutoff)
    phases = np.exp(1j * phi * np.arange(state.cutoff + 1))
    amps = phases[None, :] * table.values.T  # (n_points, d); <n|X,phi> conjugated below

    if state.modes == 1:
        pdf = np.einsum("gm,mn,gn->g", amps.conj(), state.tensor, amps).real
        cond = None
    else:
        letters = "abcdef"
        kets = [("m" if i == mode else letters[i]) for i in range(state.modes)]
        bras = [("n" if i == mode else letters[state.modes + i]) for i in range(state.modes)]
        rest = [c for c in kets + bras if c not in ("m", "n")]
        spec = f"gm,{''.join(kets + bras)},gn->g{''.join(rest)}"
        sigma = np.einsum(spec, amps.conj(), state.tensor, amps, optimize=True)
        rest_dim = (state.cutoff + 1) ** (state.modes - 1)
        sigma = sigma.reshape(grid.size, rest_dim, rest_dim)
        pdf = np.einsum("gii->g", sigma).real
        cond = np.zeros_like(sigma)
        ok = pdf > 1e-300
        cond[ok] = sigma[ok] / pdf[ok, None, None]
    return HomodyneFockResult(grid=grid, pdf=pdf, conditionals=cond)


@lru_cache(maxsize=64)
def _squeeze_unitary(d: int, zeta: float) -> np.ndarray:
    """Fock-space squeezer whose phase-space action is diag(e^zeta, e^-zeta)."""
    a = _destroy(d)
    gen = (-zeta / 2.0) * (a @ a - a.T @ a.T)
    return expm(gen)


@lru_cache(maxsize=64)
def _rotation_unitary(d: int, theta: float) -> np.ndarray:
    """Fock-space phase shifter acting as the counter-clockwise R(theta)."""
    n = np.arange(d, dtype=float)
    return np.diag(np.exp(1j * theta * n))


def gaussian_fock(gamma, cutoff: int = DEFAULT_CUTOFF, max_truncation: float = 1e-6) -> FockState:
    """Single-mode Gaussian state (zero mean) as a Fock density matrix.

    Decomposes gamma = R(theta) diag(nu k^2, nu/k^2) R(theta)^T and builds
    the rotated, squeezed thermal state with the matching unitaries.
    """
    gamma = np.asarray(gamma, dtype=float)
    if gamma.shape != (2, 2):
        raise ValueError("expected a single-mode covariance matrix")
    nu = float(np.sqrt(np.linalg.det(gamma)))
    if nu < 1.0 - 1e-9:
        raise ValueError("covariance matrix is unphysical")
    evals, evecs = np.linalg.eigh(0.5 * (gamma + gamma.T))
    zeta = 0.5 * np.log(evals[1] / nu)
    theta = float(np.arctan2(evecs[1, 1], evecs[0, 1]))

    d = cutoff + 1
    n_bar = (nu - 1.0) / 2.0
    if n_bar <= 0.0:
        probs = np.zeros(d)
        probs[0] = 1.0
        weight = 0.0
    else:
        mu = n_bar / (n_bar + 1.0)
        probs = (1.0 - mu) * mu ** np.arange(d)
        weight = float(mu**d)
        if weight > max_truncation:
            raise ValueError(f"thermal tail {weight:.3e} exceeds the budget; raise the cutoff")
        probs = probs / probs.sum()
    rho = np.diag(probs).astype(complex)
    u = _rotation_unitary(d, theta) @ _squeeze_unitary(d, float(zeta))
    rho = u @ rho @ u.conj().T
    return _from_matrix(rho, 1, cutoff, weight)
