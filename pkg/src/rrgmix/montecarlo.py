"""Trajectory sampling and Monte Carlo checks.

Trials are simulated in blocks of ``BLOCK`` walkers at once.  Block ``i``
draws from ``make_rng(seed, i)``, so results do not depend on how blocks are
scheduled.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, InvalidTrials
from .graph import DirectedEdgeSpace, bfs_distances, build_edge_space
from .geometry import is_k_root
from .rng import make_rng
from .walks import LAZY, NBRW, SRW, Kernel

BLOCK = 4096


@dataclass(frozen=True)
class Trajectory:
    walk: str
    states: np.ndarray
    seed: int


@dataclass(frozen=True)
class Estimate:
    mean: float
    stderr: float
    trials: int


def _blocks(trials):
    for i, lo in enumerate(range(0, trials, BLOCK)):
        yield i, min(BLOCK, trials - lo)


def _step(kernel, states, rng):
    d = kernel.d
    if kernel.kind == NBRW:
        es = kernel.edges
        head = es.head[states]
        back = es.twin[states] - head * d
        r = rng.integers(0, d - 1, size=states.shape)
        return head * d + r + (r >= back)
    adj = kernel.graph.adjacency
    moved = adj[states * d + rng.integers(0, d, size=states.shape)]
    if kernel.kind == LAZY:
        return np.where(rng.random(states.shape) < 0.5, states, moved)
    return moved


def _check_start(kernel, start):
    if not 0 <= start < kernel.num_states:
        raise IndexOutOfRange(f"start {start} outside 0..{kernel.num_states - 1}")


def sample_walk(kernel, start, steps, seed):
    """One trajectory of ``steps`` moves; vertices, or directed edges for the NBRW."""
    _check_start(kernel, start)
    rng = make_rng(seed)
    states = np.empty(steps + 1, dtype=np.int64)
    cur = np.array([start], dtype=np.int64)
    states[0] = start
    for t in range(1, steps + 1):
        cur = _step(kernel, cur, rng)
        states[t] = cur[0]
    return Trajectory(kernel.kind, states, seed)


def trajectory_is_valid(kernel, traj):
    s = traj.states
    if kernel.kind == NBRW:
        es = kernel.edges
        return bool(np.all(es.tail[s[1:]] == es.head[s[:-1]]) and np.all(s[1:] != es.twin[s[:-1]]))
    blocks = kernel.graph.blocks()
    moved = s[1:] != s[:-1]
    adjacent = np.any(blocks[s[:-1]] == s[1:, None], axis=1)
    if kernel.kind == LAZY:
        return bool(np.all(adjacent | ~moved))
    return bool(np.all(adjacent))


def final_states(kernel, start, steps, trials, seed, record=None):
    """End states of ``trials`` independent walks from ``start``.

    ``record`` may list times at which to also return the states; the
    return value is then ``(final, {t: states_at_t})``.
    """
    if trials < 1:
        raise InvalidTrials(f"trials must be >= 1, got {trials}")
    _check_start(kernel, start)
    record = sorted(set(record or ()))
    finals, snaps = [], {t: [] for t in record}
    for block, size in _blocks(trials):
        rng = make_rng(seed, block)
        cur = np.full(size, start, dtype=np.int64)
        for t in range(steps + 1):
            if t in snaps:
                snaps[t].append(cur.copy())
            if t < steps:
                cur = _step(kernel, cur, rng)
        finals.append(cur)
    final = np.concatenate(finals)
    if record:
        return final, {t: np.concatenate(v) for t, v in snaps.items()}
    return final


def empirical_distribution(kernel, start, steps, trials, seed):
    ends = final_states(kernel, start, steps, trials, seed)
    return np.bincount(ends, minlength=kernel.num_states) / trials


# --- distance from the start ---------------------------------------------

@dataclass(frozen=True)
class SpeedProfile:
    c_values: tuple
    times: tuple
    means: np.ndarray  # mean dist(X_t, u) / log_{d-1} n
    stderrs: np.ndarray
    predicted: np.ndarray  # min(c (d-2)/d, 1)
    trials: int


def distance_speed_profile(g, u, c_values, trials, seed, kind=SRW):
    """Normalised distance of the walk from ``u`` at times ``c log_{d-1} n``.

    The tree-like prediction is ``min(c (d-2)/d, 1)``; for ``d = 3`` this is
    ``min(c/3, 1)``.
    """
    if trials < 1:
        raise InvalidTrials(f"trials must be >= 1, got {trials}")
    L = math.log(g.n) / math.log(g.d - 1)
    times = tuple(int(math.floor(c * L)) for c in c_values)
    dist = bfs_distances(g, u)
    kernel = Kernel(kind, g)
    _, snaps = final_states(kernel, u, max(times), trials, seed, record=times)
    means, errs = [], []
    for t in times:
        x = dist[snaps[t]] / L
        means.append(x.mean())
        errs.append(x.std(ddof=1) / math.sqrt(trials) if trials > 1 else float("nan"))
    speed = (g.d - 2) / g.d
    pred = np.minimum(np.array(c_values, dtype=float) * speed, 1.0)
    return SpeedProfile(tuple(c_values), times, np.array(means), np.array(errs), pred, trials)


# --- burn-in to roots ----------------------------------------------------

def burn_in_root_rate(g_or_es, kind, K, L, burn_steps, trials, seed, start):
    """Fraction of walks of ``burn_steps`` moves that end at a root.

    For ``kind="srw"`` (or ``"lazy"``) the walk runs on vertices and success
    means ending at a ``K``-root.  For ``kind="nbrw"`` it runs on directed
    edges and success means ending at a directed ``L``-root.
    """
    if trials < 1:
        raise InvalidTrials(f"trials must be >= 1, got {trials}")
    if isinstance(g_or_es, DirectedEdgeSpace):
        es, g = g_or_es, g_or_es.graph
    else:
        g, es = g_or_es, None
    if kind == NBRW:
        es = es or build_edge_space(g)
        kernel = Kernel(NBRW, g, es)
        radius, target = L, es
    else:
        kernel = Kernel(kind, g)
        radius, target = K, g
    ends = final_states(kernel, start, burn_steps, trials, seed)
    uniq, counts = np.unique(ends, return_counts=True)
    good = sum(int(c) for s, c in zip(uniq.tolist(), counts.tolist())
               if is_k_root(target, s, radius))
    p = good / trials
    return Estimate(p, math.sqrt(p * (1 - p) / trials), trials)


# --- tree height ---------------------------------------------------------

def sample_tree_heights(d, t, trials, seed):
    """Distance from the root after ``t`` SRW steps on the infinite d-regular tree."""
    if trials < 1:
        raise InvalidTrials(f"trials must be >= 1, got {trials}")
    out = []
    for block, size in _blocks(trials):
        rng = make_rng(seed, block)
        h = np.zeros(size, dtype=np.int64)
        for _ in range(t):
            up = (h == 0) | (rng.random(size) < (d - 1) / d)
            h = np.where(up, h + 1, h - 1)
        out.append(h)
    return np.concatenate(out)
