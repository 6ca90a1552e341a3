"""Reproducible per-trial random streams."""

from __future__ import annotations

import numpy as np

DEFAULT_SEED = 20240601


def trial_generators(seed: int, trials: int) -> list[np.random.Generator]:
    """Independent generators, one per trial, spawned from ``seed``.

    Trial ``t`` always receives the same stream for a given seed, so results
    do not depend on how trials are scheduled.
    """
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(trials)]
