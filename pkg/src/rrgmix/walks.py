"""Exact evolution of random-walk distributions on regular graphs.

Three kernels are supported:

* ``srw``  - simple random walk on vertices,
* ``lazy`` - the lazy walk ``(P + I) / 2`` on vertices,
* ``nbrw`` - non-backtracking walk on directed edges.

Nothing is materialised as a matrix.  A step gathers, for every target
state, the masses of its predecessors in a fixed order, so the arithmetic is
identical whether one distribution or a batch of columns is pushed forward.
"""

from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, MassDrift, SpaceMismatch
from .graph import DirectedEdgeSpace, RegularGraph, build_edge_space

SRW = "srw"
LAZY = "lazy"
NBRW = "nbrw"
WALK_KINDS = (SRW, LAZY, NBRW)

RENORM_EVERY = 64
DRIFT_TOL = 1e-12


@dataclass(frozen=True)
class Space:
    kind: str  # "vertices" or "edges"
    size: int


@dataclass
class ProbVector:
    space: Space
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape[0] != self.space.size:
            raise SpaceMismatch(f"{self.values.shape[0]} entries for a space of size {self.space.size}")

    def total(self):
        return float(self.values.sum())

    def is_valid(self, tol=1e-9):
        return bool(np.all(self.values >= 0)) and abs(self.total() - 1.0) <= tol


class Kernel:
    """Transition kernel of one of the three walks on a fixed graph."""

    def __init__(self, kind, graph, edge_space=None):
        if kind not in WALK_KINDS:
            raise ValueError(f"unknown walk kind {kind!r}")
        if not isinstance(graph, RegularGraph):
            raise TypeError("graph must be a RegularGraph")
        self.kind = kind
        self.graph = graph
        self.d = graph.d
        if kind == NBRW:
            self.edges = edge_space if edge_space is not None else build_edge_space(graph)
            self.space = Space("edges", self.edges.size)
            self._in_edges = self.edges.twin.reshape(graph.n, graph.d)
        else:
            self.edges = edge_space
            self.space = Space("vertices", graph.n)
        self._nbrs = graph.blocks()

    @property
    def num_states(self):
        return self.space.size

    def step(self, values):
        """One push-forward step of a 1-D vector or a (states, batch) array."""
        if values.shape[0] != self.space.size:
            raise SpaceMismatch("vector does not live on this kernel's space")
        if self.kind == SRW:
            return _srw_step(self._nbrs, values, self.d)
        if self.kind == LAZY:
            return 0.5 * values + 0.5 * _srw_step(self._nbrs, values, self.d)
        return _nbrw_step(self.edges, self._in_edges, values)

    def __repr__(self):
        return f"Kernel({self.kind!r}, n={self.graph.n}, d={self.d})"


def _srw_step(nbrs, values, d):
    # symmetric graph: mass arriving at v comes from v's own neighbours
    out = values[nbrs[:, 0]].copy()
    for j in range(1, d):
        out += values[nbrs[:, j]]
    return out / d


def _nbrw_step(es, in_edges, values):
    return nb_push(es, in_edges, values) / (es.d - 1)


def nb_push(es, in_edges, values):
    """Sum of ``values`` over the non-backtracking predecessors of each edge.

    The predecessors of ``f = (v, z)`` are the in-edges of ``v`` other than
    ``twin(f)``, so the result is (mass entering ``v``) minus (mass on
    ``twin(f)``).  Integer input stays exact; float round-off below zero is
    clipped.
    """
    inflow = values[in_edges[:, 0]].copy()
    for j in range(1, es.d):
        inflow += values[in_edges[:, j]]
    out = inflow[es.tail] - values[es.twin]
    if out.dtype.kind == "f":
        np.maximum(out, 0.0, out=out)
    return out


def initial_distribution(space, start="uniform"):
    """Point mass on state ``start`` (an int) or the uniform distribution."""
    if isinstance(space, Kernel):
        space = space.space
    values = np.zeros(space.size)
    if isinstance(start, str):
        if start != "uniform":
            raise ValueError(f"unknown start {start!r}")
        values[:] = 1.0 / space.size
    else:
        s = int(start)
        if not 0 <= s < space.size:
            raise IndexOutOfRange(f"state {s} outside 0..{space.size - 1}")
        values[s] = 1.0
    return ProbVector(space, values)


def point_masses(kernel, starts):
    """(states, len(starts)) array whose columns are point masses."""
    starts = np.asarray(starts, dtype=np.int64)
    if starts.size and (starts.min() < 0 or starts.max() >= kernel.num_states):
        raise IndexOutOfRange("start state out of range")
    out = np.zeros((kernel.num_states, len(starts)))
    out[starts, np.arange(len(starts))] = 1.0
    return out


def _check_mass(values, steps_done, base):
    total = values.sum(axis=0)
    drift = np.max(np.abs(total - base))
    if drift > DRIFT_TOL * (steps_done + 1):
        raise MassDrift(f"mass drift {drift:.3e} after {steps_done} steps")
    return values / (total / base)


def iterate(kernel, values, steps):
    """Yield ``values`` pushed forward 0, 1, ..., ``steps`` times.

    Works on 1-D vectors and on (states, batch) arrays.  Mass is checked and
    renormalised every 64 steps; drift above ``1e-12`` per step raises
    :class:`MassDrift` rather than being silently corrected.
    """
    values = np.asarray(values, dtype=np.float64)
    base = values.sum(axis=0)
    yield values
    for t in range(1, steps + 1):
        values = kernel.step(values)
        if t % RENORM_EVERY == 0:
            values = _check_mass(values, t, base)
        yield values


def evolve(kernel, mu, steps):
    """Exact ``steps``-step push-forward of the distribution ``mu``."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    if mu.space != kernel.space:
        raise SpaceMismatch(f"{mu.space} does not match kernel space {kernel.space}")
    values = mu.values
    for values in iterate(kernel, mu.values, steps):
        pass
    return ProbVector(kernel.space, values)


def project_to_vertices(es, mu_edges):
    """Distribution of the head vertex of a random directed edge."""
    if not isinstance(es, DirectedEdgeSpace):
        raise TypeError("expected a DirectedEdgeSpace")
    if mu_edges.space != Space("edges", es.size):
        raise SpaceMismatch("expected a vector over directed edges")
    values = np.bincount(es.head, weights=mu_edges.values, minlength=es.n)
    return ProbVector(Space("vertices", es.n), values)
