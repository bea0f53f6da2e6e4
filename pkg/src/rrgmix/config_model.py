"""Configuration-model sampling of random regular graphs.

Each vertex owns ``d`` points; point ``i`` belongs to vertex ``i // d``.  A
uniform perfect matching of the ``dn`` points, collapsed to vertices, gives a
``d``-regular multigraph.  Conditioned on having no loops and no parallel
edges it is uniform over simple ``d``-regular graphs, which is what
:func:`sample_simple_regular` exploits by rejection.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import AttemptsExhausted, DegreeTooSmall, InvalidTrials, OddProduct
from .graph import RegularGraph
from .rng import make_rng


@dataclass(frozen=True)
class Pairing:
    n: int
    d: int
    matches: np.ndarray  # matches[p] is the partner of point p

    @property
    def num_points(self):
        return self.n * self.d

    def pairs(self):
        """Each matched pair once, as ``(p, q)`` with ``p < q``."""
        p = np.arange(self.num_points)
        keep = p < self.matches
        return np.column_stack([p[keep], self.matches[keep]])


@dataclass(frozen=True)
class MultiGraph:
    n: int
    d: int
    edges: np.ndarray  # (dn/2, 2) vertex pairs, loops allowed
    loop_count: int
    multi_count: int

    @property
    def simple(self):
        return self.loop_count == 0 and self.multi_count == 0

    def degrees(self):
        return np.bincount(self.edges.ravel(), minlength=self.n)


@dataclass(frozen=True)
class Classification:
    simple: bool
    loop_count: int
    multi_count: int


@dataclass(frozen=True)
class SampledGraph:
    graph: RegularGraph
    attempts: int
    exact: bool  # False when produced by the switching repair


@dataclass(frozen=True)
class SimpleEstimate:
    fraction: float
    stderr: float
    trials: int


def _check_nd(n, d):
    if d < 3:
        raise DegreeTooSmall(f"d must be >= 3, got {d}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if (n * d) % 2:
        raise OddProduct(f"n*d = {n * d} is odd")


def _random_pairs(n, d, rng):
    # Fisher-Yates permutation of the points, read off two at a time
    return rng.permutation(n * d).reshape(-1, 2)


def sample_pairing(n, d, seed=None, rng=None):
    _check_nd(n, d)
    if rng is None:
        rng = make_rng(seed)
    pairs = _random_pairs(n, d, rng)
    matches = np.empty(n * d, dtype=np.int64)
    matches[pairs[:, 0]] = pairs[:, 1]
    matches[pairs[:, 1]] = pairs[:, 0]
    return Pairing(n, d, matches)


def _count_defects(n, edges):
    loops = edges[:, 0] == edges[:, 1]
    lo = edges[~loops].min(axis=1)
    hi = edges[~loops].max(axis=1)
    keys = lo * n + hi
    multi = len(keys) - len(np.unique(keys))
    return int(loops.sum()), int(multi)


def collapse_to_multigraph(p):
    edges = p.pairs() // p.d
    loops, multi = _count_defects(p.n, edges)
    return MultiGraph(p.n, p.d, edges, loops, multi)


def classify(m):
    loops, multi = _count_defects(m.n, np.asarray(m.edges).reshape(-1, 2))
    return Classification(loops == 0 and multi == 0, loops, multi)


def _vertex_pairs(n, d, rng):
    return _random_pairs(n, d, rng) // d


def sample_simple_regular(n, d, seed, max_attempts=10_000, approximate=False):
    """Sample a simple ``d``-regular graph on ``n`` vertices.

    By default pairings are redrawn until one collapses to a simple graph,
    which makes the result exactly uniform.  The expected number of attempts
    grows like ``exp((d*d - 1) / 4)``, so for larger ``d`` pass
    ``approximate=True``: the first pairing is repaired by random edge
    switchings instead, and the result is flagged ``exact=False``.

    Raises :class:`AttemptsExhausted` if ``max_attempts`` pairings are all
    rejected.
    """
    _check_nd(n, d)
    if max_attempts < 1:
        raise ValueError("max_attempts must be positive")
    rng = make_rng(seed)
    if approximate:
        edges = _vertex_pairs(n, d, rng)
        edges = _switch_until_simple(n, edges, rng)
        return SampledGraph(RegularGraph(n, d, edges, check=False), 1, False)
    for attempt in range(1, max_attempts + 1):
        edges = _vertex_pairs(n, d, rng)
        loops, multi = _count_defects(n, edges)
        if loops == 0 and multi == 0:
            return SampledGraph(RegularGraph(n, d, edges, check=False), attempt, True)
    raise AttemptsExhausted(max_attempts)


def _switch_until_simple(n, edges, rng, max_rounds=1000):
    """Remove loops and parallel edges by random double-edge switches.

    A defective edge ``{a, b}`` and a uniformly chosen edge ``{c, e}`` are
    replaced by ``{a, c}, {b, e}`` (or ``{a, e}, {b, c}``); the switch is
    accepted only if neither new edge is a loop or duplicates an existing
    edge.  Degrees are preserved by construction.
    """
    edges = np.array(edges, dtype=np.int64)
    m = len(edges)
    lo = np.minimum(edges[:, 0], edges[:, 1])
    hi = np.maximum(edges[:, 0], edges[:, 1])
    counts = {}
    for k in (lo * n + hi).tolist():
        counts[k] = counts.get(k, 0) + 1

    def key(a, b):
        return min(a, b) * n + max(a, b)

    def defects():
        bad = []
        seen = set()
        for i, (a, b) in enumerate(edges.tolist()):
            k = key(a, b)
            if a == b or (counts[k] > 1 and k in seen):
                bad.append(i)
            seen.add(k)
        return bad

    for _ in range(max_rounds):
        bad = defects()
        if not bad:
            return edges
        for i in bad:
            a, b = edges[i].tolist()
            for _try in range(10_000):
                j = int(rng.integers(m))
                if j == i:
                    continue
                c, e = edges[j].tolist()
                if rng.random() < 0.5:
                    c, e = e, c
                if a == c or b == e:
                    continue
                k1, k2 = key(a, c), key(b, e)
                if k1 == k2 or counts.get(k1, 0) or counts.get(k2, 0):
                    continue
                for old in (key(a, b), key(c, e)):
                    counts[old] -= 1
                    if not counts[old]:
                        del counts[old]
                counts[k1] = 1
                counts[k2] = 1
                edges[i] = (a, c)
                edges[j] = (b, e)
                break
    raise RuntimeError("switching did not converge")


def estimate_simple_probability(n, d, trials, seed):
    """Fraction of configuration-model pairings that collapse to a simple graph."""
    if trials < 1:
        raise InvalidTrials(f"trials must be >= 1, got {trials}")
    _check_nd(n, d)
    rng = make_rng(seed)
    hits = 0
    for _ in range(trials):
        loops, multi = _count_defects(n, _vertex_pairs(n, d, rng))
        hits += loops == 0 and multi == 0
    frac = hits / trials
    return SimpleEstimate(frac, math.sqrt(frac * (1 - frac) / trials), trials)


def simple_probability_limit(d):
    """Large-``n`` limit ``exp((1 - d^2)/4)`` of the acceptance rate."""
    return math.exp((1 - d * d) / 4)
