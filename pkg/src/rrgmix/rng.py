"""Seeded random streams.

Every random draw in the package comes from a Philox counter-based
generator. Independent streams are derived from ``(seed, *task)`` through
``numpy.random.SeedSequence`` spawn keys, so a computation split into
numbered tasks gives the same numbers no matter how the tasks are scheduled.
"""

import numpy as np


def make_rng(seed, *task):
    """Return a Philox generator for ``seed`` and an optional task path.

    ``make_rng(7)`` and ``make_rng(7, 3)`` are independent streams; the same
    arguments always reproduce the same stream.
    """
    seed = int(seed) & 0xFFFFFFFFFFFFFFFF
    ss = np.random.SeedSequence(seed, spawn_key=tuple(int(t) for t in task))
    return np.random.Generator(np.random.Philox(ss))
