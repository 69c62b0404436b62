"""Multimode Gaussian states as first and second quadrature moments.

A state on M modes is stored as a mean vector of length 2M and a 2M x 2M
covariance matrix over the quadratures (x_1, p_1, ..., x_M, p_M), in units
where each vacuum quadrature has unit variance.  The shot-noise level is
therefore 1.  Every observable of interest here is a real linear combination
of quadratures, so expectation values reduce to dense contractions against
the stored moments.  This module is the slow, obviously-correct reference
route; the scattering-specific fast path lives in the kernel modules and is
tested against this one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

_SYM_TOL = 1e-10


@dataclass
class GaussianState:
    """First and second moments of an M-mode Gaussian state.

    Attributes
    ----------
    mode_count : int
        Number of modes M.
    mean : ndarray
        Quadrature means, shape (2M,), ordered (x_1, p_1, ..., x_M, p_M).
    cov : ndarray
        Symmetric covariance matrix, shape (2M, 2M), same ordering.
    """

    mode_count: int
    mean: NDArray[np.float64]
    cov: NDArray[np.float64]

    def __post_init__(self):
        if self.mode_count < 1:
            raise ValueError("mode_count must be at least 1")
        d = 2 * self.mode_count
        self.mean = np.asarray(self.mean, dtype=np.float64)
        self.cov = np.asarray(self.cov, dtype=np.float64)
        if self.mean.shape != (d,):
            raise ValueError(f"mean must have shape ({d},)")
        if self.cov.shape != (d, d):
            raise ValueError(f"cov must have shape ({d}, {d})")
        if not np.all(np.abs(self.cov - self.cov.T) <= _SYM_TOL):
            raise ValueError("cov must be symmetric")
        if np.any(np.diag(self.cov) < 0.0):
            raise ValueError("cov must have nonnegative diagonal")


@dataclass
class LinearForm:
    """Real coefficients c of the observable sum_i c_i q_i.

    The coefficient vector has length 2M and uses the same
    (x_1, p_1, ..., x_M, p_M) ordering as GaussianState.
    """

    coeffs: NDArray[np.float64]

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=np.float64)
        if self.coeffs.ndim != 1:
            raise ValueError("coeffs must be one-dimensional")


def vacuum_state(mode_count: int) -> GaussianState:
    """Return the M-mode vacuum: zero mean, identity covariance."""
    if mode_count < 1:
        raise ValueError("mode_count must be at least 1")
    d = 2 * mode_count
    return GaussianState(mode_count, np.zeros(d), np.eye(d))


def _check_mode(state: GaussianState, mode: int):
    if not 0 <= mode < state.mode_count:
        raise IndexError(f"mode {mode} out of range for {state.mode_count} modes")


def _require_vacuum_block(state: GaussianState, mode: int):
    # Preparation helpers only overwrite modes that are still in vacuum;
    # anything else would silently discard prior correlations.
    i = 2 * mode
    sl = slice(i, i + 2)
    block_ok = np.allclose(state.cov[sl, sl], np.eye(2), atol=1e-12)
    row = state.cov[sl].copy()
    row[:, sl] = 0.0
    col = state.cov[:, sl].copy()
    col[sl, :] = 0.0
    mean_ok = np.all(state.mean[sl] == 0.0)
    if not (block_ok and mean_ok and np.all(row == 0.0) and np.all(col == 0.0)):
        raise ValueError(f"mode {mode} is not in the vacuum state")


def set_single_mode_squeezed(
    state: GaussianState,
    mode: int,
    r: float,
    x0: float = 0.0,
    p0: float = 0.0,
) -> GaussianState:
    """Return a new state with `mode` prepared in a displaced squeezed state.

    The x quadrature of the mode gets variance e^{-2r} and the p quadrature
    e^{2r}; r = 0 reproduces a coherent state (vacuum noise).  The mode must
    currently be in vacuum.
    """
    _check_mode(state, mode)
    _require_vacuum_block(state, mode)
    mean = state.mean.copy()
    cov = state.cov.copy()
    i = 2 * mode
    mean[i] = x0
    mean[i + 1] = p0
    cov[i, i] = math.exp(-2.0 * r)
    cov[i + 1, i + 1] = math.exp(2.0 * r)
    return GaussianState(state.mode_count, mean, cov)


def set_two_mode_squeezed(
    state: GaussianState,
    mode_a: int,
    mode_b: int,
    g: float,
    phi_g: float,
    x0: float = 0.0,
    p0: float = 0.0,
) -> GaussianState:
    """Return a new state with modes a and b in a two-mode squeezed state.

    Each mode individually carries thermal noise 2 sinh^2(g) + 1 on both
    quadratures; the squeezing lives in the cross covariances

        cov(x_a, x_b) =  sinh(2g) cos(phi_g)
        cov(p_a, p_b) = -sinh(2g) cos(phi_g)
        cov(x_a, p_b) = cov(p_a, x_b) = sinh(2g) sin(phi_g)

    so phi_g = pi squeezes the sums (x_a + x_b) and (p_a + p_b).  Both modes
    get mean (x0, p0) and must currently be in vacuum.
    """
    if mode_a == mode_b:
        raise ValueError("mode_a and mode_b must differ")
    if g < 0.0:
        raise ValueError("g must be nonnegative")
    _check_mode(state, mode_a)
    _check_mode(state, mode_b)
    _require_vacuum_block(state, mode_a)
    _require_vacuum_block(state, mode_b)
    mean = state.mean.copy()
    cov = state.cov.copy()
    diag = 2.0 * math.sinh(g) ** 2 + 1.0
    cxx = math.sinh(2.0 * g) * math.cos(phi_g)
    cxp = math.sinh(2.0 * g) * math.sin(phi_g)
    for mode in (mode_a, mode_b):
        i = 2 * mode
        mean[i] = x0
        mean[i + 1] = p0
        cov[i, i] = diag
        cov[i + 1, i + 1] = diag
    ia, ib = 2 * mode_a, 2 * mode_b
    cov[ia, ib] = cov[ib, ia] = cxx
    cov[ia + 1, ib + 1] = cov[ib + 1, ia + 1] = -cxx
    cov[ia, ib + 1] = cov[ib + 1, ia] = cxp
    cov[ia + 1, ib] = cov[ib, ia + 1] = cxp
    return GaussianState(state.mode_count, mean, cov)


def _check_form(state: GaussianState, form: LinearForm):
    if form.coeffs.shape != state.mean.shape:
        raise ValueError(
            f"form has {form.coeffs.shape[0]} coefficients, "
            f"state expects {state.mean.shape[0]}"
        )


def mean_of_form(state: GaussianState, form: LinearForm) -> float:
    """Expectation value of the observable described by `form`."""
    _check_form(state, form)
    return float(form.coeffs @ state.mean)


def variance_of_form(state: GaussianState, form: LinearForm) -> float:
    """Variance c^T Sigma c of the observable described by `form`."""
    _check_form(state, form)
    return float(form.coeffs @ state.cov @ form.coeffs)


def covariance_of_forms(state: GaussianState, form_a: LinearForm, form_b: LinearForm) -> float:
    """Covariance a^T Sigma b between two linear observables."""
    _check_form(state, form_a)
    _check_form(state, form_b)
    return float(form_a.coeffs @ state.cov @ form_b.coeffs)
