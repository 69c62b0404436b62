"""Ensemble-averaged output quadrature variances in closed form.

All results are for an N-channel isotropic scattering row with K of the
inputs illuminated (K <= N), mean per-channel transmission 1/(N s), and the
remaining inputs in vacuum.  Variances are in shot-noise units (vacuum = 1).

Two input families are covered:

* "single": each of the K illuminated inputs carries an independent
  single-mode squeezed state with parameter r (x variance e^{-2r}).
* "two": the K inputs are illuminated pairwise by K/2 two-mode squeezed
  states with parameter g, relative phase phi_g = pi.

For each family the medium is either left as drawn ("no wfs") or the
transmission phases are conjugated ("wfs").  The pi/4 appearing in the
two-mode wfs result is the cross-moment ratio E[sqrt(T_A T_B)] / E[T] of
independent Rayleigh-amplitude channels; it is what limits how well shaping
can exploit cross correlations between distinct speckle channels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class TheoryPoint:
    """Closed-form ensemble mean variances for one configuration."""

    var_x: float
    var_p: float
    family: str
    wfs: bool


def _check_channels(K: int, N: int, s: float, pairwise: bool = False):
    if N < 1:
        raise ValueError("N must be at least 1")
    if not 1 <= K <= N:
        raise ValueError("K must satisfy 1 <= K <= N")
    if s < 1.0:
        raise ValueError("s must be >= 1")
    if pairwise and K % 2:
        raise ValueError("two-mode input needs an even K")


def single_wfs(K: int, N: int, s: float, r: float) -> TheoryPoint:
    """Shaped medium, K single-mode squeezed inputs.

    var_x = 1 - (K/(N s)) (1 - e^{-2r}),  var_p = 1 + (K/(N s)) (e^{2r} - 1).
    Squeezing survives in x because phase conjugation adds the K transmitted
    fields coherently; p pays the corresponding antisqueezing penalty.
    """
    _check_channels(K, N, s)
    f = K / (N * s)
    return TheoryPoint(
        var_x=1.0 - f * (1.0 - math.exp(-2.0 * r)),
        var_p=1.0 + f * (math.exp(2.0 * r) - 1.0),
        family="single",
        wfs=True,
    )


def single_no_wfs(K: int, N: int, s: float, r: float) -> TheoryPoint:
    """Unshaped medium, K single-mode squeezed inputs.

    Random phases average x and p noise together:
    var_x = var_p = 1 + (K/(N s)) (cosh 2r - 1) >= 1.
    """
    _check_channels(K, N, s)
    v = 1.0 + (K / (N * s)) * (math.cosh(2.0 * r) - 1.0)
    return TheoryPoint(var_x=v, var_p=v, family="single", wfs=False)


def two_wfs(K: int, N: int, s: float, g: float) -> TheoryPoint:
    """Shaped medium, K/2 two-mode squeezed input pairs.

    var_x = 1 + (2K/(N s)) sinh(g) [sinh(g) - (pi/4) cosh(g)]
    var_p = 1 + (2K/(N s)) sinh(g) [sinh(g) + (pi/4) cosh(g)]

    The cross term only contributes the Rayleigh factor pi/4 because shaping
    matches phases but cannot match the independent amplitudes of the two
    channels of a pair.  var_x dips below 1 only while tanh(g) < pi/4.
    """
    _check_channels(K, N, s, pairwise=True)
    f = 2.0 * K / (N * s)
    sh, ch = math.sinh(g), math.cosh(g)
    cross = math.pi / 4.0 * ch
    return TheoryPoint(
        var_x=1.0 + f * sh * (sh - cross),
        var_p=1.0 + f * sh * (sh + cross),
        family="two",
        wfs=True,
    )


def two_no_wfs(K: int, N: int, s: float, g: float) -> TheoryPoint:
    """Unshaped medium, K/2 two-mode squeezed input pairs.

    Cross correlations average out entirely:
    var_x = var_p = 1 + (2K/(N s)) sinh^2(g).
    """
    _check_channels(K, N, s, pairwise=True)
    v = 1.0 + (2.0 * K / (N * s)) * math.sinh(g) ** 2
    return TheoryPoint(var_x=v, var_p=v, family="two", wfs=False)


def threshold_g() -> float:
    """Largest g for which shaped two-mode input still squeezes x.

    Root of sinh(g) = (pi/4) cosh(g), i.e. artanh(pi/4) ~= 1.0593.
    Independent of K, N, s.
    """
    return math.atanh(math.pi / 4.0)


def rayleigh_cross_moment_ratio() -> float:
    """E[sqrt(T_A T_B)] / E[T] for independent Rayleigh-amplitude channels.

    Equals (E[sqrt(T)])^2 / E[T] = pi/4 for exponentially distributed T.
    """
    return math.pi / 4.0


def difference_no_wfs_minus_wfs(family: str, K: int, N: int, s: float, param: float) -> float:
    """Gain of shaping in the squeezed quadrature: var_x(no wfs) - var_x(wfs).

    Positive for any param > 0; zero at param = 0.  `param` is r for the
    "single" family and g for the "two" family.
    """
    if family == "single":
        return single_no_wfs(K, N, s, param).var_x - single_wfs(K, N, s, param).var_x
    if family == "two":
        return two_no_wfs(K, N, s, param).var_x - two_wfs(K, N, s, param).var_x
    raise ValueError(f"unknown family {family!r}")
