import itertools

import numpy as np
import pytest

from rrgmix.errors import CapExceeded, CountOverflow
from rrgmix.geometry import (ball_layers, boundary_star, count_simple_paths,
                             directed_ball_layers, is_k_root, layer_sizes_all,
                             trajectory_count_vector, tree_excess, tree_excess_all)
from rrgmix.graph import build_edge_space


def brute_simple_paths(g, u, v, k):
    """Enumerate vertex sequences (oracle)."""
    nb = [set(g.neighbors(w).tolist()) for w in range(g.n)]
    others = [w for w in range(g.n) if w not in (u, v)]
    count = 0
    for mid in itertools.permutations(others, k - 1):
        seq = (u,) + mid + (v,)
        count += all(b in nb[a] for a, b in zip(seq, seq[1:]))
    return count


def test_ball_layers(k4, petersen, k33):
    assert ball_layers(k4, 0, 1).sizes == [1, 3]
    for u in range(10):
        assert ball_layers(petersen, u, 2).sizes == [1, 3, 6]
    assert ball_layers(k33, 0, 2).sizes == [1, 3, 2]


def test_directed_ball_layers(k4, petersen):
    es = build_edge_space(k4)
    x = es.edge_id(0, 1)
    b = directed_ball_layers(es, x, 1)
    pairs = sorted((int(es.tail[f]), int(es.head[f])) for f in b.layers[1])
    assert pairs == [(1, 2), (1, 3)]
    ep = build_edge_space(petersen)
    for x in range(ep.size):
        assert directed_ball_layers(ep, x, 2).sizes == [1, 2, 4]


def test_tree_excess(k4, petersen, k33):
    assert tree_excess(k4, 0, 1) == 3
    assert tree_excess(k33, 0, 2) == 4
    # girth 5: radius-1 balls are stars; radius 2 already covers all 10 vertices
    assert tree_excess(petersen, 0, 1) == 0
    assert tree_excess(petersen, 0, 2) == 6


def test_is_k_root(k4, petersen):
    assert not is_k_root(k4, 0, 1)
    assert is_k_root(petersen, 3, 1)
    assert not is_k_root(petersen, 3, 2)
    es = build_edge_space(k4)
    assert all(is_k_root(k4, u, 0) for u in range(4))
    assert all(is_k_root(es, x, 0) for x in range(12))


def test_directed_tree_excess_petersen():
    from rrgmix.graph import petersen_graph
    es = build_edge_space(petersen_graph())
    # 7 edges on 8 vertices at radius 2 is a tree; closing a 5-cycle needs radius 4
    assert tree_excess(es, 0, 2) == 0
    assert tree_excess(es, 0, 4) >= 1


def test_boundary_star(k4, petersen, k33):
    assert boundary_star(k4, 0, 1) == {1, 2, 3}
    assert boundary_star(petersen, 0, 2) == set(ball_layers(petersen, 0, 2).layers[2].tolist())
    assert boundary_star(k33, 0, 2) == set()


def test_boundary_star_tree_ball(g1000):
    u = int(np.flatnonzero(tree_excess_all(g1000, 3) == 0)[0])
    assert boundary_star(g1000, u, 3) == set(ball_layers(g1000, u, 3).layers[3].tolist())


def test_count_simple_paths_k4(k4):
    assert count_simple_paths(k4, 0, 1, 1) == 1
    assert count_simple_paths(k4, 0, 1, 2) == 2
    assert count_simple_paths(k4, 0, 1, 3) == 2


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
def test_count_simple_paths_against_enumeration(petersen, k):
    for v in (1, 5, 7):
        assert count_simple_paths(petersen, 0, v, k) == brute_simple_paths(petersen, 0, v, k)


def test_count_simple_paths_cap(g1000):
    with pytest.raises(CapExceeded):
        count_simple_paths(g1000, 0, 1, 30, cap=1000)


def test_trajectory_counts_k4(k4):
    es = build_edge_space(k4)
    x = es.edge_id(0, 1)
    c1 = trajectory_count_vector(es, x, 1).counts
    assert {(int(es.tail[f]), int(es.head[f])) for f in np.flatnonzero(c1)} == {(1, 2), (1, 3)}
    assert c1.sum() == 2
    c2 = trajectory_count_vector(es, x, 2).counts
    assert {(int(es.tail[f]), int(es.head[f])) for f in np.flatnonzero(c2)} == \
        {(2, 0), (2, 3), (3, 0), (3, 2)}
    assert set(c2[c2 > 0].tolist()) == {1}
    c0 = trajectory_count_vector(es, x, 0).counts
    assert c0[x] == 1 and c0.sum() == 1


def test_trajectory_counts_overflow(k4):
    es = build_edge_space(k4)
    with pytest.raises(CountOverflow):
        trajectory_count_vector(es, 0, 70, allow_float=False)
    tc = trajectory_count_vector(es, 0, 70)
    assert not tc.exact
    assert tc.total() == pytest.approx(2.0**70, rel=1e-12)


def test_batched_matches_single(g1000, petersen, k33):
    for g in (g1000, petersen, k33):
        centers = np.arange(min(g.n, 50))
        for t in (0, 1, 2, 4):
            batched = tree_excess_all(g, t, centers)
            single = [tree_excess(g, int(u), t) for u in centers]
            assert batched.tolist() == single
            sizes = layer_sizes_all(g, t, centers)
            assert sizes.tolist() == [ball_layers(g, int(u), t).sizes for u in centers]
