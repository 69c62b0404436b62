"""Two-channel interference reference model.

A balanced beamsplitter fed by two equally squeezed modes is the smallest
system showing the effect the scattering simulation measures: the output
noise depends on the relative input phase, and picking the right phase
(the two-channel analogue of wavefront shaping) turns the output from
antisqueezed to squeezed.

Both inputs are squeezed along p (x variance e^{2r}); the input phase
shifters rotate them before the coupler

    U = B . diag(e^{i phi1}, e^{i phi2}),   B = (1/sqrt(2)) [[1, i], [i, 1]]

and the reported quantity is the (x, p) variance of output mode 0.  With
phi2 = 0, phi1 = 0 gives var_x = cosh(2r) while phi1 = pi/2 recovers the
full single-mode squeezing var_x = e^{-2r}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gaussian import set_single_mode_squeezed, vacuum_state


@dataclass(frozen=True)
class BsSetup:
    """Squeezing strength and input phases of the two-mode interferometer."""

    r: float
    phi1: float
    phi2: float = 0.0


def quadrature_rep(u: np.ndarray) -> np.ndarray:
    """Real 2M x 2M quadrature representation of a complex M x M unitary.

    Each entry u_jk becomes the rotation-scaling block
    [[Re u, -Im u], [Im u, Re u]] acting on (x_k, p_k).
    """
    u = np.asarray(u, dtype=np.complex128)
    m = u.shape[0]
    s = np.zeros((2 * m, 2 * m))
    s[0::2, 0::2] = u.real
    s[0::2, 1::2] = -u.imag
    s[1::2, 0::2] = u.imag
    s[1::2, 1::2] = u.real
    return s


def _network(setup: BsSetup) -> np.ndarray:
    bs = np.array([[1.0, 1.0j], [1.0j, 1.0]]) / math.sqrt(2.0)
    phases = np.diag([np.exp(1.0j * setup.phi1), np.exp(1.0j * setup.phi2)])
    return bs @ phases


def bs_output_variance(setup: BsSetup) -> tuple[float, float]:
    """(var_x, var_p) of output mode 0, in shot-noise units."""
    state = vacuum_state(2)
    # squeeze p on both inputs so that the phi1 = pi/2 output is x-squeezed
    state = set_single_mode_squeezed(state, 0, -setup.r)
    state = set_single_mode_squeezed(state, 1, -setup.r)
    s = quadrature_rep(_network(setup))
    cov_out = s @ state.cov @ s.T
    return float(cov_out[0, 0]), float(cov_out[1, 1])


def bs_sweep_phi1(r: float, phi1_values: Sequence[float]) -> list[tuple[float, float, float]]:
    """Sweep the relative input phase; returns (phi1, var_x, var_p) rows."""
    out = []
    for phi1 in phi1_values:
        var_x, var_p = bs_output_variance(BsSetup(r=r, phi1=float(phi1)))
        out.append((float(phi1), var_x, var_p))
    return out
