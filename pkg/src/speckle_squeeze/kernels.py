"""Kernel selection: compiled core if built, NumPy fallback otherwise.

Set SPECKLE_SQUEEZE_PURE=1 before import to force the fallback (useful for
benchmarking and for debugging the compiled path against it).
"""

from __future__ import annotations

import os

from . import _core_fallback

fallback_trial_stats = _core_fallback.trial_stats

compiled_trial_stats = None
if not os.environ.get("SPECKLE_SQUEEZE_PURE"):
    try:
        from . import _core as _compiled  # type: ignore[attr-defined]

        compiled_trial_stats = _compiled.trial_stats
    except ImportError:
        compiled_trial_stats = None

if compiled_trial_stats is not None:
    trial_stats = compiled_trial_stats
    BACKEND = "compiled"
else:
    trial_stats = fallback_trial_stats
    BACKEND = "fallback"


def available_backends() -> dict:
    """Name -> kernel mapping of every backend importable in this build."""
    backends = {"fallback": fallback_trial_stats}
    if compiled_trial_stats is not None:
        backends["compiled"] = compiled_trial_stats
    return backends
