"""Simple regular graphs stored as flat adjacency arrays.

Vertex ``v``'s neighbours live in ``adjacency[v*d:(v+1)*d]``.  The same flat
index doubles as a directed-edge id: edge ``e`` runs from ``e // d`` to
``adjacency[e]``.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DegreeMismatch, LoopOrMultiEdge, NotSimple, ParseError


class RegularGraph:
    """Immutable simple ``d``-regular graph on vertices ``0..n-1``.

    Built from an edge list; each vertex's neighbour block follows the order
    in which its edges appear in that list.
    """

    def __init__(self, n, d, edges, check=True):
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        n, d = int(n), int(d)
        if check:
            _check_edges(n, d, edges)
        self.n = n
        self.d = d
        self.edges = edges
        self.edges.setflags(write=False)
        self.adjacency = _blocks_from_edges(n, d, edges)
        self.adjacency.setflags(write=False)

    @property
    def num_edges(self):
        return len(self.edges)

    def neighbors(self, v):
        return self.adjacency[v * self.d:(v + 1) * self.d]

    def blocks(self):
        return self.adjacency.reshape(self.n, self.d)

    def sorted_blocks(self):
        return np.sort(self.blocks(), axis=1)

    def __eq__(self, other):
        if not isinstance(other, RegularGraph):
            return NotImplemented
        return (self.n == other.n and self.d == other.d
                and np.array_equal(self.sorted_blocks(), other.sorted_blocks()))

    def __hash__(self):
        return hash((self.n, self.d, self.sorted_blocks().tobytes()))

    def __repr__(self):
        return f"RegularGraph(n={self.n}, d={self.d})"


def _check_edges(n, d, edges):
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    if len(edges) * 2 != n * d:
        raise DegreeMismatch(f"expected {n * d // 2} edges, got {len(edges)}")
    if edges.size and (edges.min() < 0 or edges.max() >= n):
        raise ParseError("vertex id out of range")
    if np.any(edges[:, 0] == edges[:, 1]):
        raise LoopOrMultiEdge("graph has a loop")
    lo = edges.min(axis=1)
    hi = edges.max(axis=1)
    keys = lo * n + hi
    if len(np.unique(keys)) != len(keys):
        raise LoopOrMultiEdge("graph has a repeated edge")
    deg = np.bincount(edges.ravel(), minlength=n)
    if np.any(deg != d):
        bad = int(np.flatnonzero(deg != d)[0])
        raise DegreeMismatch(f"vertex {bad} has degree {deg[bad]}, expected {d}")


def _blocks_from_edges(n, d, edges):
    # interleave both orientations in edge order, then stable-sort by tail
    tails = edges.ravel()
    heads = edges[:, ::-1].ravel()
    order = np.argsort(tails, kind="stable")
    return np.ascontiguousarray(heads[order])


# --- named fixtures -------------------------------------------------------

def complete_graph(n):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return RegularGraph(n, n - 1, edges)


def complete_bipartite(k):
    edges = [(u, k + v) for u in range(k) for v in range(k)]
    return RegularGraph(2 * k, k, edges)


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return RegularGraph(10, 3, outer + spokes + inner)


def disjoint_union(*graphs):
    d = graphs[0].d
    if any(g.d != d for g in graphs):
        raise ValueError("all graphs must share the degree")
    edges, offset = [], 0
    for g in graphs:
        edges.append(g.edges + offset)
        offset += g.n
    return RegularGraph(offset, d, np.concatenate(edges))


# --- directed edges -------------------------------------------------------

class DirectedEdgeSpace:
    """The ``dn`` directed edges of a graph with the reversal involution.

    ``tail[e] = e // d``, ``head[e] = adjacency[e]`` and ``twin[e]`` is the id
    of the reversed edge.
    """

    def __init__(self, graph):
        self.graph = graph
        self.n = graph.n
        self.d = graph.d
        self.size = graph.n * graph.d
        e = np.arange(self.size, dtype=np.int64)
        self.tail = e // graph.d
        self.head = graph.adjacency.astype(np.int64)
        self.twin = _twins(graph)
        for arr in (self.tail, self.head, self.twin):
            arr.setflags(write=False)

    def out_edges(self, v):
        return np.arange(v * self.d, (v + 1) * self.d)

    def in_edges(self, v):
        return self.twin[v * self.d:(v + 1) * self.d]

    def successors(self, e):
        """Non-backtracking successors of edge ``e``, in block order."""
        out = self.out_edges(self.head[e])
        return out[out != self.twin[e]]

    def edge_id(self, u, v):
        block = self.graph.neighbors(u)
        hit = np.flatnonzero(block == v)
        if len(hit) != 1:
            raise KeyError(f"({u}, {v}) is not an edge")
        return int(u * self.d + hit[0])

    def __len__(self):
        return self.size


def _twins(graph):
    n, d = graph.n, graph.d
    head = graph.adjacency.astype(np.int64)
    tail = np.arange(n * d, dtype=np.int64) // d
    keys = tail * n + head
    order = np.argsort(keys, kind="stable")
    pos = np.searchsorted(keys[order], head * n + tail)
    return order[pos]


def build_edge_space(graph):
    if not isinstance(graph, RegularGraph):
        raise NotSimple("expected a simple RegularGraph")
    blocks = graph.blocks()
    s = np.sort(blocks, axis=1)
    if np.any(blocks == np.arange(graph.n)[:, None]) or np.any(s[:, 1:] == s[:, :-1]):
        raise NotSimple("graph has loops or repeated edges")
    return DirectedEdgeSpace(graph)


# --- validation -----------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    is_regular: bool
    is_simple: bool
    is_connected: bool
    is_bipartite: bool


def validate(graph):
    n, d = graph.n, graph.d
    blocks = graph.blocks()
    deg = np.bincount(graph.adjacency, minlength=n)
    is_regular = blocks.shape == (n, d) and bool(np.all(deg == d))
    s = np.sort(blocks, axis=1)
    is_simple = not (np.any(blocks == np.arange(n)[:, None]) or np.any(s[:, 1:] == s[:, :-1]))

    dist = np.full(n, -1, dtype=np.int64)
    components = 0
    for root in range(n):
        if dist[root] >= 0:
            continue
        components += 1
        comp = bfs_distances(graph, root)
        reached = comp >= 0
        dist[reached] = comp[reached]
    tails = np.repeat(np.arange(n), d)
    is_bipartite = bool(np.all(dist[tails] % 2 != dist[graph.adjacency] % 2))
    return ValidationReport(is_regular, is_simple, components == 1, is_bipartite)


def bfs_distances(graph, source):
    """Distances from ``source`` to every vertex (-1 if unreachable)."""
    n, d = graph.n, graph.d
    adj = graph.adjacency
    dist = np.full(n, -1, dtype=np.int64)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        nbrs = adj[(frontier[:, None] * d + np.arange(d)).ravel()]
        nbrs = np.unique(nbrs[dist[nbrs] < 0])
        dist[nbrs] = level
        frontier = nbrs
    return dist


# --- file format ----------------------------------------------------------

def save_graph(graph, path, comments=()):
    """Write ``n d`` then one edge per line; ``comments`` become leading ``#`` lines."""
    lines = [f"# {c}" for c in comments]
    lines.append(f"{graph.n} {graph.d}")
    lines.extend(f"{u} {v}" for u, v in graph.edges.tolist())
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_graph(path):
    header = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"not an integer pair: {line!r}", lineno) from None
        if header is None:
            if a < 1 or b < 1:
                raise ParseError("n and d must be positive", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(f"vertex out of range 0..{n - 1}", lineno)
        if a == b:
            raise LoopOrMultiEdge(f"loop at vertex {a}", lineno)
        key = (min(a, b), max(a, b))
        if key in seen:
            raise LoopOrMultiEdge(f"repeated edge {key}", lineno)
        seen.add(key)
        edges.append((a, b))
    if header is None:
        raise ParseError("empty file", 1)
    n, d = header
    deg = np.bincount(np.asarray(edges, dtype=np.int64).ravel(), minlength=n) if edges else np.zeros(n, int)
    bad = np.flatnonzero(deg != d)
    if bad.size:
        v = int(bad[0])
        raise DegreeMismatch(f"vertex {v} has {deg[v]} listed edges, expected {d}")
    return RegularGraph(n, d, edges, check=False)
