# cython: language_level=3
"""Compiled per-trial statistics kernel.

Drop-in replacement for speckle_squeeze._core_fallback.trial_stats; see that
module for the argument contract.  All arrays must be C-contiguous float64
(pairs: int64).
"""

from libc.math cimport sqrt
from libc.stdint cimport int64_t

import numpy as np


def trial_stats(double[:, ::1] z, Py_ssize_t n_channels, double sigma_t,
                double sigma_r, bint wfs, double[:, ::1] diag_blocks,
                double[:, ::1] means, int64_t[:, ::1] pairs,
                double[:, ::1] cross_blocks):
    cdef Py_ssize_t trials = z.shape[0]
    cdef Py_ssize_t m = 2 * n_channels
    cdef Py_ssize_t n_pairs = pairs.shape[0]

    out_var_x = np.empty(trials)
    out_var_p = np.empty(trials)
    out_mean_x = np.empty(trials)
    out_mean_p = np.empty(trials)
    cdef double[::1] vx = out_var_x
    cdef double[::1] vp = out_var_p
    cdef double[::1] omx = out_mean_x
    cdef double[::1] omp = out_mean_p
    cdef double[::1] re = np.empty(m)
    cdef double[::1] im = np.empty(m)

    cdef Py_ssize_t b, j, k, ja, jb
    cdef double scale, nrm, inv, r_, i_, ra, ia, rb, ib
    cdef double sx, sp, mx_, mp_, sxx, spp, sxp, cxx, cxp, cpx, cpp

    with nogil:
        for b in range(trials):
            nrm = 0.0
            for j in range(m):
                scale = sigma_t if j < n_channels else sigma_r
                r_ = z[b, 2 * j] * scale
                i_ = z[b, 2 * j + 1] * scale
                re[j] = r_
                im[j] = i_
                nrm += r_ * r_ + i_ * i_
            inv = 1.0 / sqrt(nrm)
            for j in range(m):
                re[j] *= inv
                im[j] *= inv
            if wfs:
                for j in range(n_channels):
                    re[j] = sqrt(re[j] * re[j] + im[j] * im[j])
                    im[j] = 0.0

            sx = 0.0
            sp = 0.0
            mx_ = 0.0
            mp_ = 0.0
            for j in range(m):
                r_ = re[j]
                i_ = im[j]
                sxx = diag_blocks[j, 0]
                spp = diag_blocks[j, 1]
                sxp = diag_blocks[j, 2]
                sx += r_ * r_ * sxx + i_ * i_ * spp - 2.0 * r_ * i_ * sxp
                sp += i_ * i_ * sxx + r_ * r_ * spp + 2.0 * r_ * i_ * sxp
                mx_ += r_ * means[j, 0] - i_ * means[j, 1]
                mp_ += r_ * means[j, 1] + i_ * means[j, 0]
            for k in range(n_pairs):
                ja = pairs[k, 0]
                jb = pairs[k, 1]
                ra = re[ja]
                ia = im[ja]
                rb = re[jb]
                ib = im[jb]
                cxx = cross_blocks[k, 0]
                cxp = cross_blocks[k, 1]
                cpx = cross_blocks[k, 2]
                cpp = cross_blocks[k, 3]
                sx += 2.0 * (ra * rb * cxx - ra * ib * cxp - ia * rb * cpx + ia * ib * cpp)
                sp += 2.0 * (ia * ib * cxx + ia * rb * cxp + ra * ib * cpx + ra * rb * cpp)
            vx[b] = sx
            vp[b] = sp
            omx[b] = mx_
            omp[b] = mp_

    return out_var_x, out_var_p, out_mean_x, out_mean_p
