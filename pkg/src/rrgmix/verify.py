"""Checks of the local-geometry lemmas and exact identities on given graphs.

Each check yields a :class:`Check`.  Deterministic identities are *hard*: a
violation is a failure.  Statistical statements about random graphs only
*warn* when they fall outside their band, since they hold with high
probability rather than always.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import geometry, mixing, montecarlo, theory
from .config_model import sample_simple_regular
from .errors import NotReached
from .graph import bfs_distances, build_edge_space, validate
from .rng import make_rng
from .walks import LAZY, NBRW, SRW, Kernel, nb_push

PASS, WARN, FAIL, INFO = "pass", "warn", "fail", "info"

# statistical checks need a graph large enough for the lemmas to mean anything
STAT_MIN_N = 10_000


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    value: float
    threshold: str
    hard: bool
    detail: str = ""


def _log(n, d):
    return math.log(n) / math.log(d - 1)


def root_radius(n, d):
    """``floor(log_{d-1} ln n)``, the K-root radius used by the SRW lemmas."""
    return max(int(math.floor(math.log(math.log(n)) / math.log(d - 1))), 0)


# --- hard identities ------------------------------------------------------

def check_duality(g, vertices=(0,), t_max=60, tol=1e-10):
    out = []
    for kind in (SRW, LAZY):
        worst = max(float(mixing.duality_residuals(g, int(u), t_max, kind).max()) for u in vertices)
        out.append(Check(f"duality residual ({kind})", PASS if worst <= tol else FAIL,
                         worst, f"<= {tol:g}", True, f"t <= {t_max}"))
    return out


def check_trajectory_sums(es, edges=(0,), m_max=30):
    worst_m = -1
    ok = True
    for x in edges:
        counts = np.zeros(es.size, dtype=np.int64)
        counts[x] = 1
        in_edges = es.twin.reshape(es.n, es.d)
        for m in range(m_max + 1):
            if (es.d - 1) ** m >= 2**62:
                break
            if int(counts.sum()) != (es.d - 1) ** m:
                ok = False
            worst_m = max(worst_m, m)
            counts = nb_push(es, in_edges, counts)
    return Check("sum_y C_m(x,y) = (d-1)^m", PASS if ok else FAIL, worst_m,
                 f"exact for m <= {worst_m}", True)


def check_nbrw_lower_bound(g, es=None, starts=64, seed=0, epsilons=(0.5, 0.25, 0.1)):
    """``t_mix(1-eps) >= ceil(log(dn)) - ceil(log(1/eps))`` for each eps.

    Any set of starts is enough: a sampled profile lies below the worst case,
    so its mixing time can only be smaller.
    """
    es = es or build_edge_space(g)
    kernel = Kernel(NBRW, g, es)
    policy = (mixing.StartPolicy.all() if es.size <= starts
              else mixing.StartPolicy.sample(starts, seed))
    horizon = theory.nbrw_bounds(g.n, g.d, min(epsilons)).upper + 8
    profile = mixing.worst_case_profile(kernel, policy, horizon, budget=float("inf"))
    out = []
    for eps in epsilons:
        lower = theory.nbrw_bounds(g.n, g.d, eps).lower
        try:
            t = mixing.mixing_time(profile, 1 - eps)
        except NotReached:  # the bound holds trivially
            t = horizon + 1
        out.append(Check(f"NBRW t_mix({1 - eps:g}) lower bound", PASS if t >= lower else FAIL,
                         t, f">= {lower}", True))
    return out


def check_poisson_normalization(es, x=0, m=None):
    m = m if m is not None else theory.ceil_log(es.d - 1, es.size) + 2
    stat = mixing.poissonization_stat(es, x, m)
    ok = stat.normalization == 1
    return Check("Poissonization normalisation", PASS if ok else FAIL,
                 float(stat.normalization), "== 1", True, f"m = {m}")


# --- statistical lemma checks --------------------------------------------

def check_tree_excess(g):
    t = int(math.floor(_log(g.n, g.d) / 5))
    worst = int(geometry.tree_excess_all(g, t).max())
    return Check("max_u tx(B_t(u))", PASS if worst <= 1 else WARN, worst, "<= 1", False,
                 f"t = {t}")


def check_boundary_sizes(g, sample=2000, seed=0, factor=0.9):
    """Smallest ``|dB_t(u)| / d(d-1)^(t-1)`` over K-roots ``u`` and ``t <= R``.

    ``sample=None`` scans every K-root; otherwise a seeded sample of roots.
    """
    K = root_radius(g.n, g.d)
    R = int(math.floor(4 / 7 * _log(g.n, g.d)))
    tx = geometry.tree_excess_all(g, K)
    roots = np.flatnonzero(tx == 0)
    rng = make_rng(seed, 11)
    if sample is not None and len(roots) > sample:
        roots = np.sort(rng.choice(roots, sample, replace=False))
    sizes = geometry.layer_sizes_all(g, R, roots, chunk=4096)
    t = np.arange(1, R + 1)
    ideal = g.d * (g.d - 1.0) ** (t - 1)
    ratio = float((sizes[:, 1:] / ideal).min())
    return Check("min |dB_t(u)| / d(d-1)^(t-1) over K-roots", PASS if ratio >= factor else WARN,
                 ratio, f">= {factor}", False, f"K = {K}, t <= {R}, {len(roots)} roots")


def simple_path_ratios(g, pairs=40, seed=0, extra=2, cap=geometry.DEFAULT_PATH_CAP):
    """``S_k(u,v) n / (d (d-1)^(k-1))`` for random K-root pairs at distance > 2K.

    ``k = 2T + l`` with ``T = floor(log_{d-1}(n)/2)`` and ``l = 2K + extra``.
    """
    d = g.d
    L = _log(g.n, d)
    K = root_radius(g.n, d)
    T = int(math.floor(L / 2))
    k = 2 * T + 2 * K + extra
    roots = np.flatnonzero(geometry.tree_excess_all(g, K) == 0)
    rng = make_rng(seed, 12)
    ratios = []
    while len(ratios) < pairs:
        u, v = (int(a) for a in rng.choice(roots, 2, replace=False))
        if bfs_distances(g, u)[v] <= 2 * K:
            continue
        s = geometry.count_simple_paths(g, u, v, k, cap)
        ratios.append(s * g.n / (d * (d - 1) ** (k - 1)))
    return k, np.array(ratios)


def check_simple_paths(g, pairs=40, seed=0, factor=0.5, min_fraction=0.9):
    k, ratios = simple_path_ratios(g, pairs, seed)
    frac = float(np.mean(ratios >= factor))
    return Check(f"fraction of pairs with S_k >= {factor} d(d-1)^(k-1)/n",
                 PASS if frac >= min_fraction else WARN, frac, f">= {min_fraction}", False,
                 f"k = {k}, {pairs} pairs")


def worst_srw_start(g, K):
    tx = geometry.tree_excess_all(g, K)
    return int(np.argmax(tx))


def check_srw_burn_in(g, K=None, trials=2000, seed=0, level=0.9):
    K = K if K is not None else root_radius(g.n, g.d)
    start = worst_srw_start(g, K)
    est = montecarlo.burn_in_root_rate(g, SRW, K, None, 4 * K, trials, seed, start)
    return Check("SRW burn-in to K-root", PASS if est.mean >= level else WARN, est.mean,
                 f">= {level}", False, f"K = {K}, {4 * K} steps from vertex {start}")


def worst_nbrw_start(g, es, K, L):
    """An edge ``x`` with ``tx(B_{K+L}(x)) = 1`` if one exists near a short cycle."""
    tx = geometry.tree_excess_all(g, K + L)
    for v in np.argsort(-tx)[:50].tolist():
        for x in range(v * g.d, (v + 1) * g.d):
            if geometry.tree_excess(es, x, K + L) == 1:
                return x
    return 0


def check_nbrw_burn_in(g, es=None, epsilon=0.125, trials=2000, seed=0):
    es = es or build_edge_space(g)
    K = theory.ceil_log(g.d - 1, theory._as_fraction(2 / epsilon))
    L = int(math.floor(_log(g.n, g.d) / 6))
    x = worst_nbrw_start(g, es, K, L)
    est = montecarlo.burn_in_root_rate(es, NBRW, None, L, K, trials, seed, x)
    level = 1 - epsilon - 3 * est.stderr
    return Check("NBRW burn-in to directed L-root", PASS if est.mean >= level else WARN,
                 est.mean, f">= {level:.4f}", False, f"K = {K}, L = {L}, start edge {x}")


def check_speed(g, c_values=(1.5, 3.0, 9.0), trials=2000, seed=0, tol=0.1):
    prof = montecarlo.distance_speed_profile(g, 0, c_values, trials, seed)
    out = []
    for c, m, p in zip(c_values, prof.means, prof.predicted):
        out.append(Check(f"distance speed c={c:g}", PASS if abs(m - p) <= tol else WARN, float(m),
                         f"{p:.3f} +/- {tol}", False))
    return out


def check_poissonization(g, es=None, seed=0):
    es = es or build_edge_space(g)
    eps = (g.d - 1) ** -2.0
    L = theory.ceil_log(g.d - 1, g.d * g.n)
    m = L + 4
    Lroot = math.ceil(_log(g.d * g.n, g.d) / 6)
    rng = make_rng(seed, 13)
    x = int(rng.integers(es.size))
    while geometry.tree_excess(es, x, Lroot) != 0:
        x = int(rng.integers(es.size))
    stat = mixing.poissonization_stat(es, x, m)
    bound = mixing.poissonization_bound(g.n, g.d, eps)
    return Check("Poissonization E|Z/mu - 1|", INFO, stat.value, f"< {bound:.3f} (logged)", False,
                 f"m = {m}, x = {x}")


# --- suites --------------------------------------------------------------

def deterministic_checks(g, seed=0):
    es = build_edge_space(g)
    rng = make_rng(seed, 14)
    verts = sorted({0, int(rng.integers(g.n))})
    edges = sorted({0, int(rng.integers(es.size))})
    t_max = 60 if g.n <= 2000 else 20
    checks = check_duality(g, verts, t_max)
    checks.append(check_trajectory_sums(es, edges))
    checks.extend(check_nbrw_lower_bound(g, es, seed=seed))
    checks.append(check_poisson_normalization(es))
    return checks


def statistical_checks(g, seed=0, trials=2000):
    if g.n < STAT_MIN_N or g.d != 3:
        return []
    es = build_edge_space(g)
    checks = [check_tree_excess(g), check_boundary_sizes(g, seed=seed)]
    checks.append(check_srw_burn_in(g, trials=trials, seed=seed))
    checks.append(check_nbrw_burn_in(g, es, trials=trials, seed=seed))
    checks.extend(check_speed(g, trials=trials, seed=seed))
    checks.append(check_poissonization(g, es, seed=seed))
    return checks


def path_count_checks(d=3, n=1000, seed=0):
    g = sample_simple_regular(n, d, seed).graph
    return [check_simple_paths(g, seed=seed)]


def run_suite(graphs, seed=0, statistical=True, path_counts=False):
    """Run every applicable check on each graph; returns ``[(label, checks)]``."""
    results = []
    for label, g in graphs:
        if not validate(g).is_connected:
            results.append((label, [Check("connected", FAIL, 0, "connected", True)]))
            continue
        checks = deterministic_checks(g, seed)
        if statistical:
            checks.extend(statistical_checks(g, seed))
        results.append((label, checks))
    if path_counts:
        results.append(("G(1000,3) path counts", path_count_checks(seed=seed)))
    return results


def format_report(results):
    rows = [("graph", "check", "status", "value", "threshold", "detail")]
    for label, checks in results:
        for c in checks:
            val = f"{c.value:.6g}" if isinstance(c.value, float) else str(c.value)
            rows.append((label, c.name, c.status, val, c.threshold, c.detail))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines)


def summarize(results):
    checks = [c for _, cs in results for c in cs]
    return {
        "fail": sum(c.status == FAIL for c in checks),
        "warn": sum(c.status == WARN for c in checks),
        "pass": sum(c.status == PASS for c in checks),
        "info": sum(c.status == INFO for c in checks),
    }
