"""Total-variation profiles, mixing times and related diagnostics."""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import (BudgetExceeded, MaxItersExceeded, NotConnected, NotReached,
                     SpaceMismatch)
from .graph import build_edge_space, validate
from .geometry import trajectory_count_vector
from .rng import make_rng
from .theory import tree_height_path
from .walks import LAZY, NBRW, SRW, Kernel, ProbVector, iterate, point_masses

DEFAULT_BUDGET = 10**10
DEFAULT_SAMPLE = 100
BATCH = 64
# d(t) within this of the level counts as equal to it, not strictly below
TIE_TOL = 1e-12


def tv_distance(p, q):
    """Half the L1 distance between two distributions on the same space."""
    if isinstance(p, ProbVector) or isinstance(q, ProbVector):
        if not (isinstance(p, ProbVector) and isinstance(q, ProbVector)) or p.space != q.space:
            raise SpaceMismatch("distributions live on different spaces")
        p, q = p.values, q.values
    p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise SpaceMismatch(f"shapes {p.shape} and {q.shape} differ")
    return 0.5 * float(np.abs(p - q).sum())


def _tv_to_uniform(values, size):
    return 0.5 * np.abs(values - 1.0 / size).sum(axis=0)


# --- start policies -------------------------------------------------------

@dataclass(frozen=True)
class StartPolicy:
    kind: str  # "all", "sample" or "single"
    m: int = 0
    seed: int = 0
    state: int = 0

    @classmethod
    def all(cls):
        return cls("all")

    @classmethod
    def sample(cls, m=DEFAULT_SAMPLE, seed=0):
        return cls("sample", m=int(m), seed=int(seed))

    @classmethod
    def single(cls, state):
        return cls("single", state=int(state))

    @classmethod
    def parse(cls, text, seed=0):
        """Parse ``all``, ``sample:M`` or ``single:S``."""
        text = text.strip().lower()
        if text == "all":
            return cls.all()
        kind, _, arg = text.partition(":")
        if kind == "sample":
            return cls.sample(int(arg) if arg else DEFAULT_SAMPLE, seed)
        if kind == "single":
            return cls.single(int(arg))
        raise ValueError(f"unknown start policy {text!r}")

    def starts(self, num_states):
        if self.kind == "all":
            return np.arange(num_states)
        if self.kind == "single":
            return np.array([self.state])
        m = min(self.m, num_states)
        return np.sort(make_rng(self.seed, 0).choice(num_states, size=m, replace=False))

    def __str__(self):
        if self.kind == "sample":
            return f"sample:{self.m}"
        if self.kind == "single":
            return f"single:{self.state}"
        return "all"


@dataclass
class MixingProfile:
    walk: str
    policy: StartPolicy
    values: np.ndarray
    exact: bool
    n: int = 0
    d: int = 0
    starts: np.ndarray = None
    projected: np.ndarray = None  # NBRW only: profile of the head-vertex chain
    meta: dict = field(default_factory=dict)

    @property
    def t_max(self):
        return len(self.values) - 1

    def __getitem__(self, t):
        return self.values[t]


# --- profiles -------------------------------------------------------------

def _profile_batch(kernel, starts, t_max, project):
    n = kernel.graph.n
    cols = point_masses(kernel, starts)
    size = kernel.num_states
    out = np.empty((t_max + 1, len(starts)))
    proj = np.empty((t_max + 1, len(starts))) if project else None
    in_edges = kernel.edges.twin.reshape(n, kernel.d) if project else None
    for t, values in enumerate(iterate(kernel, cols, t_max)):
        out[t] = _tv_to_uniform(values, size)
        if project:
            proj[t] = _tv_to_uniform(values[in_edges].sum(axis=1), n)
    return out, proj


def _profiles(kernel, starts, t_max, project=False, threads=1):
    """Per-start TV profiles, shape (t_max + 1, len(starts))."""
    starts = np.asarray(starts, dtype=np.int64)
    batches = [starts[i:i + BATCH] for i in range(0, len(starts), BATCH)]

    def run(b):
        return _profile_batch(kernel, b, t_max, project)

    if threads > 1 and len(batches) > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(run, batches))
    else:
        results = [run(b) for b in batches]
    tv = np.concatenate([r[0] for r in results], axis=1)
    proj = np.concatenate([r[1] for r in results], axis=1) if project else None
    return tv, proj


def distance_profile(kernel, start, t_max):
    """``d_start(t)`` for ``t = 0..t_max`` from a single starting state."""
    if t_max < 0:
        raise ValueError("t_max must be >= 0")
    tv, _ = _profiles(kernel, [start], t_max)
    return MixingProfile(kernel.kind, StartPolicy.single(start), tv[:, 0], exact=False,
                         n=kernel.graph.n, d=kernel.d, starts=np.array([start]))


def work_estimate(kernel, num_starts, t_max):
    return num_starts * kernel.num_states * kernel.d * t_max


def worst_case_profile(kernel, policy, t_max, budget=DEFAULT_BUDGET, threads=1,
                       project=False):
    """Pointwise maximum of single-start profiles over a set of starts.

    ``StartPolicy.all()`` gives the true worst case and refuses to run when the
    work (starts x states x degree x steps) exceeds ``budget``.  A sampled
    policy gives a lower bound on the worst case and is marked inexact.
    For the NBRW, ``project=True`` also records the profile of the chain's
    head vertex.
    """
    if t_max < 0:
        raise ValueError("t_max must be >= 0")
    if isinstance(policy, str):
        policy = StartPolicy.parse(policy)
    starts = policy.starts(kernel.num_states)
    if policy.kind == "all":
        work = work_estimate(kernel, len(starts), t_max)
        if work > budget:
            raise BudgetExceeded(
                f"all-starts profile needs ~{work:.2e} state updates (budget {budget:.2e}); "
                f"use a sampled policy such as sample:{DEFAULT_SAMPLE}")
    project = project and kernel.kind == NBRW
    tv, proj = _profiles(kernel, starts, t_max, project, threads)
    return MixingProfile(kernel.kind, policy, tv.max(axis=1), exact=policy.kind == "all",
                         n=kernel.graph.n, d=kernel.d, starts=starts,
                         projected=proj.max(axis=1) if project else None)


def mixing_time(profile, epsilon):
    """First ``t`` with ``d(t) < epsilon``; raises :class:`NotReached` otherwise.

    The comparison is strict up to round-off: a value within ``TIE_TOL`` of
    ``epsilon`` is treated as equal to it.
    """
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    values = profile.values if isinstance(profile, MixingProfile) else np.asarray(profile)
    hit = np.flatnonzero(values < epsilon - TIE_TOL)
    if hit.size == 0:
        raise NotReached(len(values) - 1, epsilon)
    return int(hit[0])


def profile_width(profile, epsilon):
    """``t_mix(eps) - t_mix(1 - eps)``."""
    return mixing_time(profile, epsilon) - mixing_time(profile, 1 - epsilon)


def is_monotone(profile, tol=1e-9):
    values = profile.values if isinstance(profile, MixingProfile) else np.asarray(profile)
    return bool(np.all(np.diff(values) <= tol))


# --- Poissonization -------------------------------------------------------

@dataclass(frozen=True)
class PoissonStat:
    value: float
    mu: float
    exact: bool
    normalization: Fraction


def poissonization_stat(es, x, m):
    """Mean over all directed edges ``y`` of ``|C_m(x, y) / mu - 1|``.

    ``C_m`` counts ``m``-step non-backtracking walks and
    ``mu = (d-1)^m / (dn)`` is their mean.  ``normalization`` is
    ``sum_y C_m(x, y) / (dn * mu)`` in exact arithmetic and equals 1.
    """
    tc = trajectory_count_vector(es, x, m)
    dn = es.size
    total_paths = (es.d - 1) ** m
    if tc.exact:
        # |C/mu - 1| = |C*dn - P| / P with P = (d-1)^m, all integers
        counts = tc.counts.astype(object) if total_paths * dn >= 2**62 else tc.counts
        num = int(np.abs(counts * dn - total_paths).sum())
        value = float(Fraction(num, total_paths * dn))
        norm = Fraction(int(tc.counts.sum()), total_paths)
    else:
        mu = total_paths / dn
        value = float(np.mean(np.abs(tc.counts / mu - 1)))
        norm = Fraction(float(tc.counts.sum() / total_paths)).limit_denominator(10**12)
    return PoissonStat(value, total_paths / dn, tc.exact, norm)


def poissonization_bound(n, d, epsilon):
    """``2 eps + 5 / log log n``, the reference level for the statistic."""
    return 2 * epsilon + 5 / math.log(math.log(n))


# --- SRW / NBRW duality ---------------------------------------------------

def _nb_layers(g, es, u, t_max):
    """Head-vertex laws ``rho_0 .. rho_t_max`` of NB walks from ``u``."""
    kernel = Kernel(NBRW, g, es)
    rho = [np.eye(1, g.n, u).ravel()]
    start = np.zeros(es.size)
    start[u * g.d:(u + 1) * g.d] = 1.0 / g.d
    for values in iterate(kernel, start, max(t_max - 1, 0)):
        if len(rho) > t_max:
            break
        rho.append(np.bincount(es.head, weights=values, minlength=g.n))
    return np.array(rho[:t_max + 1])


def duality_residuals(g, u, t_max, kind=SRW):
    """Residuals of the cover-tree identity for ``t = 0..t_max``.

    For the SRW from ``u`` the law at time ``t`` equals
    ``sum_k h_t(k) rho_k`` where ``h_t`` is the tree-height law and
    ``rho_k`` the head-vertex law of a uniform ``k``-step non-backtracking
    path from ``u``.  For the lazy walk, ``h_t`` is replaced by its binomial
    mixture over the number of moves.  Returns the max-norm residual per ``t``.
    """
    if kind not in (SRW, LAZY):
        raise ValueError("duality is defined for the srw and lazy walks")
    es = build_edge_space(g)
    rho = _nb_layers(g, es, u, t_max)
    heights = list(tree_height_path(g.d, t_max))
    kernel = Kernel(kind, g)
    out = np.empty(t_max + 1)
    for t, mu in enumerate(iterate(kernel, np.eye(1, g.n, u).ravel(), t_max)):
        if kind == SRW:
            h = heights[t]
        else:
            w = _binomial_half(t)
            h = np.zeros(t + 1)
            for j in range(t + 1):
                h[:j + 1] += w[j] * heights[j]
        out[t] = np.max(np.abs(mu - h @ rho[:t + 1]))
    return out


def _binomial_half(t):
    return np.array([math.comb(t, j) for j in range(t + 1)], dtype=float) / 2.0**t


def duality_residual(g, u, t, kind=SRW):
    return float(duality_residuals(g, u, t, kind)[t])


# --- spectrum -------------------------------------------------------------

def second_eigenvalue_estimate(g, max_iters=20_000, tol=1e-9, seed=0):
    """Largest absolute non-trivial eigenvalue of the SRW kernel.

    Power iteration on ``P^2`` restricted to vectors orthogonal to the
    constants (``P`` is symmetric on a regular graph), reporting
    ``sqrt(|Px|^2 / |x|^2)``.  Stops when successive estimates differ by
    less than ``tol``.
    """
    if not validate(g).is_connected:
        raise NotConnected("power iteration needs a connected graph")
    kernel = Kernel(SRW, g)
    x = make_rng(seed).standard_normal(g.n)
    x -= x.mean()
    x /= np.linalg.norm(x)
    prev = None
    for _ in range(max_iters):
        y = kernel.step(x)
        y -= y.mean()
        est = float(np.linalg.norm(y))
        if prev is not None and abs(est - prev) < tol:
            return est
        prev = est
        z = kernel.step(y)
        z -= z.mean()
        norm = np.linalg.norm(z)
        if norm == 0:
            return 0.0
        x = z / norm
    raise MaxItersExceeded(f"no convergence to {tol} in {max_iters} iterations")


# --- CSV ------------------------------------------------------------------

def write_profile_csv(profile, path, extra=None):
    """Write ``t,tv`` rows preceded by ``#`` metadata lines."""
    meta = {
        "walk": profile.walk,
        "n": profile.n,
        "d": profile.d,
        "policy": str(profile.policy),
        "seed": profile.policy.seed if profile.policy.kind == "sample" else "",
        "exactness": "exact" if profile.exact else "lower-bound",
    }
    meta.update(profile.meta)
    if extra:
        meta.update(extra)
    lines = [f"# {k}: {v}" for k, v in meta.items()]
    lines.append("t,tv")
    lines.extend(f"{t},{v:.17g}" for t, v in enumerate(profile.values.tolist()))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_profile_csv(path):
    """Return ``(meta, values)`` from a file written by :func:`write_profile_csv`."""
    meta, values = {}, []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.startswith("#"):
            key, _, val = line[1:].partition(":")
            meta[key.strip()] = val.strip()
        elif line and line != "t,tv":
            values.append(float(line.split(",")[1]))
    return meta, np.array(values)
