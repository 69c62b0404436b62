"""Random scattering rows of a lossless disordered multiport medium.

A single output channel of an N-input medium is described by one row of the
scattering matrix: N complex transmission coefficients t_j plus N complex
coefficients collecting everything else (reflection / other outputs), here
called refl.  Rows are drawn from the isotropic ensemble: every coefficient
is an independent circular complex Gaussian with

    E|t_j|^2    = 1 / (N s)
    E|refl_j|^2 = (1 - 1/s) / N

where s >= 1 parametrises how much of the input light reaches the observed
output side on average (s = 1: fully transmitting, s = 2: half), and each
row is rescaled by one common positive factor so that flux conservation
sum |t|^2 + sum |refl|^2 = 1 holds exactly per realization.

Wavefront shaping is modelled as perfect phase conjugation of the
transmission coefficients: t_j -> |t_j|, refl untouched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .gaussian import LinearForm

NORM_TOL = 1e-12


@dataclass(frozen=True)
class MediumConfig:
    """Parameters of the scattering ensemble.

    Attributes
    ----------
    N : int
        Number of input channels (also the number of refl coefficients).
    s : float
        Inverse mean total transmission of a row, s >= 1.
    """

    N: int
    s: float

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be at least 1")
        if self.s < 1.0:
            raise ValueError("s must be >= 1")

    @property
    def mean_transmission(self) -> float:
        """Ensemble mean of |t_j|^2 for a single coefficient."""
        return 1.0 / (self.N * self.s)

    @property
    def mean_reflection(self) -> float:
        """Ensemble mean of |refl_j|^2 for a single coefficient."""
        return (1.0 - 1.0 / self.s) / self.N


def coefficient_scales(config: MediumConfig) -> tuple[float, float]:
    """Standard deviation of the real/imag parts of t and refl before rescaling."""
    sigma_t = math.sqrt(0.5 / (config.N * config.s))
    sigma_r = math.sqrt(0.5 * (1.0 - 1.0 / config.s) / config.N)
    return sigma_t, sigma_r


@dataclass
class ScatterRow:
    """One realization of a scattering-matrix row.

    Invariant: sum |t|^2 + sum |refl|^2 == 1 within 1e-12.
    """

    t: NDArray[np.complex128]
    refl: NDArray[np.complex128]

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=np.complex128)
        self.refl = np.asarray(self.refl, dtype=np.complex128)
        if self.t.ndim != 1 or self.t.shape != self.refl.shape:
            raise ValueError("t and refl must be 1-d arrays of equal length")
        norm = np.sum(np.abs(self.t) ** 2) + np.sum(np.abs(self.refl) ** 2)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"row norm {norm!r} deviates from 1 by more than {NORM_TOL}")

    @property
    def n_channels(self) -> int:
        return self.t.shape[0]

    @property
    def total_transmission(self) -> float:
        """sum |t_j|^2 of this realization."""
        return float(np.sum(np.abs(self.t) ** 2))


def sample_row(config: MediumConfig, rng: np.random.Generator) -> ScatterRow:
    """Draw one row from the ensemble.

    Consumes exactly 4N standard normals from `rng` in a fixed order
    (interleaved re/im, t block first), so a given generator state maps to
    exactly one row.  The fast Monte Carlo kernels consume the same layout.
    """
    n = config.N
    sigma_t, sigma_r = coefficient_scales(config)
    z = rng.standard_normal(4 * n)
    t = (z[0 : 2 * n : 2] + 1j * z[1 : 2 * n : 2]) * sigma_t
    refl = (z[2 * n :: 2] + 1j * z[2 * n + 1 :: 2]) * sigma_r
    norm = math.sqrt(float(np.sum(z[0 : 2 * n] ** 2) * sigma_t**2 + np.sum(z[2 * n :] ** 2) * sigma_r**2))
    return ScatterRow(t / norm, refl / norm)


def apply_wfs(row: ScatterRow) -> ScatterRow:
    """Return the row after ideal wavefront shaping.

    Phase conjugation makes every transmitted contribution arrive in phase,
    which is equivalent to replacing t_j by |t_j|.  refl is the light that
    never reaches the target channel; shaping does not act on it.
    """
    return ScatterRow(np.abs(row.t).astype(np.complex128), row.refl.copy())


def quadrature_forms(row: ScatterRow, total_modes: int) -> tuple[LinearForm, LinearForm]:
    """Linear forms for the output x and p quadratures of this row.

    The output mode is a_out = sum_j c_j a_j with c = (t, refl) over
    total_modes = 2N input modes.  For a passive network the output
    quadratures mix x and p of the inputs:

        x_out = sum_j [ Re(c_j) x_j - Im(c_j) p_j ]
        p_out = sum_j [ Re(c_j) p_j + Im(c_j) x_j ]
    """
    n = row.n_channels
    if total_modes != 2 * n:
        raise ValueError(f"row with {n} channels needs total_modes == {2 * n}")
    c = np.concatenate([row.t, row.refl])
    fx = np.empty(2 * total_modes)
    fp = np.empty(2 * total_modes)
    fx[0::2] = c.real
    fx[1::2] = -c.imag
    fp[0::2] = c.imag
    fp[1::2] = c.real
    return LinearForm(fx), LinearForm(fp)
