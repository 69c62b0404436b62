"""Monte Carlo estimation of output quadrature noise over disorder.

One trial = one scattering row drawn from the ensemble.  The input state is
Gaussian, so the output quadrature variance of that trial is computed exactly
by contraction (no photon-level sampling); the Monte Carlo average runs only
over disorder realizations.  Ensemble means carry a standard error of the
per-trial variance distribution.

Reproducibility contract: trial i of an experiment with seed s is generated
from a counter-based stream keyed by (s, i), so results are independent of
chunking and worker count byte for byte.  Chunks have a fixed size and their
statistics are merged in a fixed order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import analytic, kernels
from .analytic import TheoryPoint
from .gaussian import (
    GaussianState,
    set_single_mode_squeezed,
    set_two_mode_squeezed,
    vacuum_state,
)
from .medium import MediumConfig, coefficient_scales
from .stats import RunningStats

FAMILIES = ("coherent", "single", "two")

DEFAULT_SEED = 2024

# Trials per work unit.  Kept independent of the worker count so that the
# chunk boundaries, and therefore the merged statistics, never change.
CHUNK_TRIALS = 2048


@dataclass(frozen=True)
class ExperimentSpec:
    """Full description of one Monte Carlo experiment.

    K of the N input channels are illuminated (channels 0..K-1); the rest
    stay in vacuum.  For the "two" family the K channels are paired as
    (a, a + K/2).  alpha_x / alpha_p displace every illuminated mode.
    """

    family: str = "single"
    r: float = 1.0
    g: float = 0.6
    phi_g: float = math.pi
    alpha_x: float = 0.0
    alpha_p: float = 0.0
    medium: MediumConfig = field(default_factory=lambda: MediumConfig(N=64, s=2.0))
    K: Optional[int] = None
    wfs: bool = False
    trials: int = 20000
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}")
        if self.K is None:
            object.__setattr__(self, "K", self.medium.N)
        if not 1 <= self.K <= self.medium.N:
            raise ValueError("K must satisfy 1 <= K <= N")
        if self.family == "two" and self.K % 2:
            raise ValueError("two-mode input needs an even K")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


class TrialResult(NamedTuple):
    var_x: float
    var_p: float
    mean_x: float
    mean_p: float


@dataclass(frozen=True)
class VarianceEstimate:
    """Disorder-averaged output variances with standard errors."""

    var_x: float
    se_x: float
    var_p: float
    se_p: float
    trials: int


class SweepPoint(NamedTuple):
    value: float
    mc_wfs: VarianceEstimate
    mc_no_wfs: VarianceEstimate
    theory_wfs: TheoryPoint
    theory_no_wfs: TheoryPoint


def trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    """Independent, counter-addressed stream for one trial.

    Philox is keyed by the experiment seed and jumped to a counter block
    derived from the trial index, so any trial can be generated on its own
    without drawing its predecessors.
    """
    if trial_index < 0:
        raise ValueError("trial_index must be nonnegative")
    bits = np.random.Philox(key=seed, counter=[0, 0, 0, trial_index])
    return np.random.Generator(bits)


def build_input_state(spec: ExperimentSpec) -> GaussianState:
    """Dense Gaussian input state on 2N modes (N illuminated-side, N hidden).

    Only channels 0..K-1 differ from vacuum.  This is the reference
    representation; the kernels consume the equivalent block data from
    _state_blocks and are tested against contractions on this state.
    """
    state = vacuum_state(2 * spec.medium.N)
    k = spec.K
    if spec.family == "coherent":
        for mode in range(k):
            state = set_single_mode_squeezed(state, mode, 0.0, spec.alpha_x, spec.alpha_p)
    elif spec.family == "single":
        for mode in range(k):
            state = set_single_mode_squeezed(state, mode, spec.r, spec.alpha_x, spec.alpha_p)
    else:
        half = k // 2
        for a in range(half):
            state = set_two_mode_squeezed(
                state, a, a + half, spec.g, spec.phi_g, spec.alpha_x, spec.alpha_p
            )
    return state


def _state_blocks(spec: ExperimentSpec):
    """Sparse block description of build_input_state for the kernels.

    Returns (diag_blocks, means, pairs, cross_blocks); see _core_fallback
    for the layout.
    """
    m = 2 * spec.medium.N
    diag = np.zeros((m, 3))
    diag[:, 0] = 1.0
    diag[:, 1] = 1.0
    means = np.zeros((m, 2))
    pairs = np.zeros((0, 2), dtype=np.int64)
    cross = np.zeros((0, 4))
    k = spec.K
    means[:k, 0] = spec.alpha_x
    means[:k, 1] = spec.alpha_p
    if spec.family == "single":
        diag[:k, 0] = math.exp(-2.0 * spec.r)
        diag[:k, 1] = math.exp(2.0 * spec.r)
    elif spec.family == "two":
        half = k // 2
        d = 2.0 * math.sinh(spec.g) ** 2 + 1.0
        diag[:k, 0] = d
        diag[:k, 1] = d
        cxx = math.sinh(2.0 * spec.g) * math.cos(spec.phi_g)
        cxp = math.sinh(2.0 * spec.g) * math.sin(spec.phi_g)
        pairs = np.stack(
            [np.arange(half, dtype=np.int64), np.arange(half, k, dtype=np.int64)], axis=1
        )
        pairs = np.ascontiguousarray(pairs)
        cross = np.tile([cxx, cxp, cxp, -cxx], (half, 1))
    return diag, means, pairs, cross


def batch_trials(spec: ExperimentSpec, start: int, stop: int):
    """Per-trial statistics for trials start..stop-1.

    Returns four float64 arrays (var_x, var_p, mean_x, mean_p) of length
    stop - start, computed with the active kernel backend.
    """
    n = spec.medium.N
    width = 4 * n
    z = np.empty((stop - start, width))
    for row, index in enumerate(range(start, stop)):
        z[row] = trial_rng(spec.seed, index).standard_normal(width)
    sigma_t, sigma_r = coefficient_scales(spec.medium)
    diag, means, pairs, cross = _state_blocks(spec)
    return kernels.trial_stats(z, n, sigma_t, sigma_r, spec.wfs, diag, means, pairs, cross)


def run_trial(spec: ExperimentSpec, trial_index: int) -> TrialResult:
    """Exact output statistics for a single disorder realization."""
    var_x, var_p, mean_x, mean_p = batch_trials(spec, trial_index, trial_index + 1)
    return TrialResult(float(var_x[0]), float(var_p[0]), float(mean_x[0]), float(mean_p[0]))


def _chunk_bounds(trials: int):
    return [(start, min(start + CHUNK_TRIALS, trials)) for start in range(0, trials, CHUNK_TRIALS)]


def run_ensemble(spec: ExperimentSpec, workers: int = 1) -> VarianceEstimate:
    """Disorder average of the per-trial variances.

    `workers` only parallelises chunk evaluation; the result is identical
    for any worker count.
    """
    if workers < 1:
        raise ValueError("workers must be at least 1")

    def chunk_stats(bounds):
        var_x, var_p, _, _ = batch_trials(spec, bounds[0], bounds[1])
        return RunningStats.from_array(var_x), RunningStats.from_array(var_p)

    bounds = _chunk_bounds(spec.trials)
    if workers == 1 or len(bounds) == 1:
        results = [chunk_stats(b) for b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(chunk_stats, bounds))

    total_x = RunningStats()
    total_p = RunningStats()
    for stats_x, stats_p in results:  # merge in chunk order, not completion order
        total_x = total_x.merge(stats_x)
        total_p = total_p.merge(stats_p)
    return VarianceEstimate(
        var_x=total_x.mean,
        se_x=total_x.standard_error,
        var_p=total_p.mean,
        se_p=total_p.standard_error,
        trials=spec.trials,
    )


def _theory_for(spec: ExperimentSpec, wfs: bool) -> TheoryPoint:
    k, n, s = spec.K, spec.medium.N, spec.medium.s
    if spec.family == "single":
        return analytic.single_wfs(k, n, s, spec.r) if wfs else analytic.single_no_wfs(k, n, s, spec.r)
    if spec.family == "two":
        return analytic.two_wfs(k, n, s, spec.g) if wfs else analytic.two_no_wfs(k, n, s, spec.g)
    raise ValueError(f"no closed form for family {spec.family!r}")


def _cell_seed(seed: int, axis_index: int, wfs: bool) -> int:
    # Independent substream per sweep cell; decoupled from the per-trial
    # counters so neighbouring cells never share randomness.
    ss = np.random.SeedSequence((seed, axis_index, int(wfs)))
    return int(ss.generate_state(1, np.uint64)[0])


def check_axis(family: str, axis: str):
    """Reject axis/family combinations that have no meaning."""
    if axis == "r":
        if family != "single":
            raise ValueError('axis "r" needs family "single"')
    elif axis == "g":
        if family != "two":
            raise ValueError('axis "g" needs family "two"')
    elif axis == "s":
        if family not in ("single", "two"):
            raise ValueError('axis "s" needs a squeezed family')
    else:
        raise ValueError(f"unknown axis {axis!r}")


def sweep(
    spec: ExperimentSpec,
    axis: str,
    values: Sequence[float],
    workers: int = 1,
) -> list[SweepPoint]:
    """Run wfs-on and wfs-off ensembles along one parameter axis.

    axis "r" varies the single-mode squeezing (family "single"), "g" the
    two-mode squeezing (family "two"), "s" the medium transmission for
    either squeezed family.  Every cell gets its own derived seed.
    """
    check_axis(spec.family, axis)
    points = []
    for i, value in enumerate(values):
        if axis == "r":
            cell = replace(spec, r=float(value))
        elif axis == "g":
            cell = replace(spec, g=float(value))
        else:
            cell = replace(spec, medium=MediumConfig(spec.medium.N, float(value)))
        cell_wfs = replace(cell, wfs=True, seed=_cell_seed(spec.seed, i, True))
        cell_off = replace(cell, wfs=False, seed=_cell_seed(spec.seed, i, False))
        points.append(
            SweepPoint(
                value=float(value),
                mc_wfs=run_ensemble(cell_wfs, workers=workers),
                mc_no_wfs=run_ensemble(cell_off, workers=workers),
                theory_wfs=_theory_for(cell, True),
                theory_no_wfs=_theory_for(cell, False),
            )
        )
    return points
