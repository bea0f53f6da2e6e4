"""Local geometry around vertices and directed edges.

Balls, tree excess, K-roots, unique-path boundaries, simple-path counts and
non-backtracking trajectory counts.  Functions that accept a center dispatch
on the first argument: a :class:`RegularGraph` means a vertex center, a
:class:`DirectedEdgeSpace` means a directed-edge center.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceeded, CountOverflow
from .graph import DirectedEdgeSpace, RegularGraph
from .walks import nb_push

DEFAULT_PATH_CAP = 10**7
_EXACT_LIMIT = 2**62


@dataclass
class BallLayers:
    center: int
    radius: int
    layers: list = field(default_factory=list)
    directed: bool = False

    @property
    def sizes(self):
        return [len(layer) for layer in self.layers]

    @property
    def size(self):
        return sum(self.sizes)

    def members(self):
        return np.concatenate(self.layers) if self.layers else np.empty(0, np.int64)


def ball_layers(g, center, t):
    """BFS layers ``{center}, dB_1, ..., dB_t`` of the vertex ball."""
    if t < 0:
        raise ValueError("radius must be >= 0")
    adj, d = g.adjacency, g.d
    seen = {int(center)}
    layers = [np.array([center], dtype=np.int64)]
    for _ in range(t):
        frontier = layers[-1]
        nxt = []
        for w in adj[(frontier[:, None] * d + np.arange(d)).ravel()].tolist():
            if w not in seen:
                seen.add(w)
                nxt.append(w)
        layers.append(np.array(nxt, dtype=np.int64))
    return BallLayers(int(center), t, layers)


def directed_ball_layers(es, x, t):
    """Layers of directed edges by non-backtracking distance from ``x``."""
    if t < 0:
        raise ValueError("radius must be >= 0")
    seen = {int(x)}
    layers = [np.array([x], dtype=np.int64)]
    d = es.d
    for _ in range(t):
        nxt = []
        for e in layers[-1].tolist():
            base = int(es.head[e]) * d
            tw = int(es.twin[e])
            for f in range(base, base + d):
                if f != tw and f not in seen:
                    seen.add(f)
                    nxt.append(f)
        layers.append(np.array(nxt, dtype=np.int64))
    return BallLayers(int(x), t, layers, directed=True)


def _vertex_tree_excess(g, u, t):
    ball = ball_layers(g, u, t)
    members = ball.members()
    inside = np.zeros(g.n, dtype=bool)
    inside[members] = True
    nbrs = g.blocks()[members]
    edges = int(inside[nbrs].sum()) // 2
    return edges - (len(members) - 1)


def _directed_tree_excess(es, x, t):
    members = directed_ball_layers(es, x, t).members()
    undirected = np.unique(np.minimum(members, es.twin[members]))
    verts = np.unique(np.concatenate([es.tail[members], es.head[members]]))
    return len(undirected) - (len(verts) - 1)


def tree_excess(g_or_es, center, t):
    """Edges of the ball beyond a spanning tree.

    For a vertex center this is the induced subgraph on ``B_t(u)``.  For a
    directed-edge center the ball is a set of directed edges; its excess is
    taken on the undirected graph those edges span.
    """
    if t < 0:
        raise ValueError("radius must be >= 0")
    if isinstance(g_or_es, DirectedEdgeSpace):
        return _directed_tree_excess(g_or_es, center, t)
    return _vertex_tree_excess(g_or_es, center, t)


def is_k_root(g_or_es, center, K):
    return tree_excess(g_or_es, center, K) == 0


def boundary_star(g, u, t):
    """Vertices of ``dB_t(u)`` joined to ``u`` by exactly one path of length ``t``."""
    if t < 1:
        raise ValueError("t must be >= 1")
    ball = ball_layers(g, u, t)
    level = np.full(g.n, -1, dtype=np.int64)
    for i, layer in enumerate(ball.layers):
        level[layer] = i
    count = {int(u): 1}
    for i in range(t):
        nxt = {}
        for w in ball.layers[i].tolist():
            c = count[w]
            for v in g.neighbors(w).tolist():
                if level[v] == i + 1:
                    nxt[v] = nxt.get(v, 0) + c
        count = nxt
    return {v for v, c in count.items() if c == 1}


def count_simple_paths(g, u, v, k, cap=DEFAULT_PATH_CAP):
    """Number of simple paths with exactly ``k`` edges from ``u`` to ``v``.

    Exhaustive depth-first search; raises :class:`CapExceeded` once more than
    ``cap`` partial paths have been expanded.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    blocks = g.blocks().tolist()
    on_path = [False] * g.n
    on_path[u] = True
    expanded = 0
    found = 0
    # iterative DFS: stack of (vertex, depth, neighbour iterator)
    stack = [(u, 0, iter(blocks[u]))]
    while stack:
        w, depth, it = stack[-1]
        nxt = next(it, None)
        if nxt is None:
            stack.pop()
            on_path[w] = False
            continue
        if on_path[nxt]:
            continue
        if depth + 1 == k:
            found += nxt == v
            continue
        if nxt == v:
            continue
        expanded += 1
        if expanded > cap:
            raise CapExceeded(f"more than {cap} partial paths")
        on_path[nxt] = True
        stack.append((nxt, depth + 1, iter(blocks[nxt])))
    on_path[u] = False
    return found


@dataclass(frozen=True)
class TrajectoryCounts:
    counts: np.ndarray
    steps: int
    exact: bool

    def total(self):
        return self.counts.sum()


def trajectory_count_vector(es, x, m, allow_float=True):
    """Number of ``m``-step non-backtracking walks from ``x`` ending at each edge.

    Counts are exact 64-bit integers while ``(d-1)^m < 2^62``.  Beyond that the
    recursion runs in float64 and the result is flagged ``exact=False``, or
    :class:`CountOverflow` is raised when ``allow_float`` is false.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    exact = (es.d - 1) ** m < _EXACT_LIMIT
    if not exact and not allow_float:
        raise CountOverflow(f"(d-1)^{m} does not fit in 63 bits")
    dtype = np.int64 if exact else np.float64
    counts = np.zeros(es.size, dtype=dtype)
    counts[x] = 1
    in_edges = es.twin.reshape(es.n, es.d)
    for _ in range(m):
        counts = nb_push(es, in_edges, counts)
    return TrajectoryCounts(counts, m, exact)


# --- batched versions for whole-graph scans --------------------------------

def _batched_bfs(g, centers, t):
    """Layer sizes and induced-edge counts of ``B_t`` for many centers.

    Returns ``(sizes, induced)`` where ``sizes`` has shape (len(centers), t+1)
    and ``induced[i]`` counts edges of the subgraph induced on the ball.
    States are encoded as ``row * n + vertex``.  Neighbours of layer ``i`` lie
    in layers ``i-1, i, i+1``, so only the last two layers are kept.
    """
    n, d = g.n, g.d
    adj = g.adjacency
    centers = np.asarray(centers, dtype=np.int64)
    rows = np.arange(len(centers), dtype=np.int64)
    sizes = np.zeros((len(centers), t + 1), dtype=np.int64)
    sizes[:, 0] = 1
    prev = np.empty(0, dtype=np.int64)
    frontier = rows * n + centers

    def expand(keys):
        r, v = np.divmod(keys, n)
        return np.repeat(r, d) * n + adj[(v[:, None] * d + np.arange(d)).ravel()]

    for level in range(1, t + 1):
        nk = np.unique(expand(frontier))
        nk = nk[~_sorted_isin(nk, frontier) & ~_sorted_isin(nk, prev)]
        sizes[:, level] = np.bincount(nk // n, minlength=len(centers))
        prev, frontier = frontier, nk
    # interior vertices keep all d edges inside the ball; boundary vertices
    # keep those to layers t-1 and t
    nk = expand(frontier)
    inside = _sorted_isin(nk, frontier) | _sorted_isin(nk, prev)
    boundary_deg = np.bincount(np.repeat(frontier // n, d), weights=inside,
                               minlength=len(centers))
    interior = sizes[:, :t].sum(axis=1)
    induced = (d * interior + boundary_deg.astype(np.int64)) // 2
    return sizes, induced


def _sorted_isin(a, sorted_b):
    if len(sorted_b) == 0:
        return np.zeros(len(a), dtype=bool)
    pos = np.searchsorted(sorted_b, a)
    pos[pos == len(sorted_b)] = 0
    return sorted_b[pos] == a


def tree_excess_all(g, t, centers=None, chunk=4096):
    """Tree excess of ``B_t(u)`` for every vertex (or for ``centers``)."""
    if centers is None:
        centers = np.arange(g.n)
    centers = np.asarray(centers, dtype=np.int64)
    out = np.empty(len(centers), dtype=np.int64)
    for lo in range(0, len(centers), chunk):
        sizes, induced = _batched_bfs(g, centers[lo:lo + chunk], t)
        out[lo:lo + chunk] = induced - (sizes.sum(axis=1) - 1)
    return out


def layer_sizes_all(g, t, centers=None, chunk=1024):
    """``|dB_0|, ..., |dB_t|`` for each center, shape (len(centers), t+1)."""
    if centers is None:
        centers = np.arange(g.n)
    centers = np.asarray(centers, dtype=np.int64)
    out = np.empty((len(centers), t + 1), dtype=np.int64)
    for lo in range(0, len(centers), chunk):
        sizes, _ = _batched_bfs(g, centers[lo:lo + chunk], t)
        out[lo:lo + chunk] = sizes
    return out
