"""Vectorized NumPy implementation of the per-trial statistics kernel.

This module defines the kernel contract; speckle_squeeze._core is a compiled
drop-in replacement built from _core.pyx.  Given a batch of standard normals
it reconstructs the scattering rows, optionally applies wavefront shaping,
and contracts them against the (sparse, block-structured) input covariance.

Arguments
---------
z : (B, 4N) float64
    Standard normals, one trial per row, interleaved re/im with the N
    transmission coefficients first (the layout of medium.sample_row).
n_channels : int
    N.
sigma_t, sigma_r : float
    Pre-rescaling standard deviations of the coefficient components.
wfs : bool
    Replace t_j by |t_j| before contracting.
diag_blocks : (2N, 3) float64
    Per input mode [var_x, var_p, cov_xp].
means : (2N, 2) float64
    Per input mode [mean_x, mean_p].
pairs : (P, 2) int64
    Mode index pairs (A, B) with nonzero cross covariance.
cross_blocks : (P, 4) float64
    Per pair [cov(xA,xB), cov(xA,pB), cov(pA,xB), cov(pA,pB)].

Returns
-------
(var_x, var_p, mean_x, mean_p) : four (B,) float64 arrays
    Output quadrature variance and mean per trial.
"""

from __future__ import annotations

import numpy as np


def trial_stats(z, n_channels, sigma_t, sigma_r, wfs, diag_blocks, means, pairs, cross_blocks):
    z = np.asarray(z, dtype=np.float64)
    n = int(n_channels)
    scale = np.empty(2 * n)
    scale[:n] = sigma_t
    scale[n:] = sigma_r
    re = z[:, 0::2] * scale
    im = z[:, 1::2] * scale
    norm = np.sqrt(np.sum(re * re + im * im, axis=1, keepdims=True))
    re = re / norm
    im = im / norm
    if wfs:
        # phase conjugation on the transmitted block: t_j -> |t_j|
        mag = np.hypot(re[:, :n], im[:, :n])
        re[:, :n] = mag
        im[:, :n] = 0.0

    sxx = diag_blocks[:, 0]
    spp = diag_blocks[:, 1]
    sxp = diag_blocks[:, 2]
    re2 = re * re
    im2 = im * im
    reim = re * im
    var_x = re2 @ sxx + im2 @ spp - 2.0 * (reim @ sxp)
    var_p = im2 @ sxx + re2 @ spp + 2.0 * (reim @ sxp)

    if len(pairs):
        a = pairs[:, 0]
        b = pairs[:, 1]
        re_a, im_a = re[:, a], im[:, a]
        re_b, im_b = re[:, b], im[:, b]
        cxx = cross_blocks[:, 0]
        cxp = cross_blocks[:, 1]
        cpx = cross_blocks[:, 2]
        cpp = cross_blocks[:, 3]
        var_x += 2.0 * (
            (re_a * re_b) @ cxx
            - (re_a * im_b) @ cxp
            - (im_a * re_b) @ cpx
            + (im_a * im_b) @ cpp
        )
        var_p += 2.0 * (
            (im_a * im_b) @ cxx
            + (im_a * re_b) @ cxp
            + (re_a * im_b) @ cpx
            + (re_a * re_b) @ cpp
        )

    mx = means[:, 0]
    mp = means[:, 1]
    mean_x = re @ mx - im @ mp
    mean_p = re @ mp + im @ mx
    return var_x, var_p, mean_x, mean_p
