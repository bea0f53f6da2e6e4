import numpy as np
import pytest

from rrgmix.errors import DegreeMismatch, LoopOrMultiEdge, NotSimple, ParseError
from rrgmix.graph import (RegularGraph, bfs_distances, build_edge_space, complete_graph,
                          disjoint_union, load_graph, save_graph, validate)


def test_edge_space_sizes(k4, petersen):
    assert len(build_edge_space(k4)) == 12
    assert len(build_edge_space(petersen)) == 30


@pytest.mark.parametrize("name", ["K4", "Petersen", "K33"])
def test_twin_involution(fixtures, name):
    es = build_edge_space(fixtures[name])
    e = np.arange(es.size)
    assert np.all(es.twin[es.twin] == e)
    assert np.all(es.twin != e)
    assert np.all(es.head == es.tail[es.twin])
    assert np.all(es.tail == es.head[es.twin])


def test_edge_space_bijection(petersen):
    es = build_edge_space(petersen)
    got = sorted(zip(es.tail.tolist(), es.head.tolist()))
    want = sorted([(u, v) for u, v in petersen.edges.tolist()] +
                  [(v, u) for u, v in petersen.edges.tolist()])
    assert got == want


def test_edge_id_and_successors(k4):
    es = build_edge_space(k4)
    x = es.edge_id(0, 1)
    assert (es.tail[x], es.head[x]) == (0, 1)
    succ = sorted(int(es.head[f]) for f in es.successors(x))
    assert succ == [2, 3]


def test_not_simple():
    g = RegularGraph(2, 3, np.array([[0, 1]] * 3), check=False)
    with pytest.raises(NotSimple):
        build_edge_space(g)


def test_validate(k4, petersen, k33):
    r = validate(k33)
    assert r.is_regular and r.is_simple and r.is_connected and r.is_bipartite
    assert not validate(petersen).is_bipartite
    assert not validate(disjoint_union(k4, k4)).is_connected


def test_bfs_distances(petersen):
    dist = bfs_distances(petersen, 0)
    assert sorted(np.bincount(dist).tolist()) == [1, 3, 6]


def test_round_trip(tmp_path, petersen, g100):
    for g in (complete_graph(4), petersen, g100):
        path = tmp_path / "g.txt"
        save_graph(g, path, ["a comment"])
        h = load_graph(path)
        assert h == g
        assert np.array_equal(h.adjacency, g.adjacency)


def test_degree_mismatch(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("4 3\n0 1\n0 2\n0 3\n1 2\n1 3\n")
    with pytest.raises(DegreeMismatch):
        load_graph(p)


def test_loop_rejected(tmp_path):
    p = tmp_path / "loop.txt"
    p.write_text("6 3\n5 5\n")
    with pytest.raises(LoopOrMultiEdge) as info:
        load_graph(p)
    assert info.value.line == 2


def test_repeat_rejected(tmp_path):
    p = tmp_path / "rep.txt"
    p.write_text("4 3\n0 1\n1 0\n")
    with pytest.raises(LoopOrMultiEdge):
        load_graph(p)


def test_parse_error_line(tmp_path):
    p = tmp_path / "junk.txt"
    p.write_text("# header\n4 3\n0 x\n")
    with pytest.raises(ParseError) as info:
        load_graph(p)
    assert info.value.line == 3


def test_equality_ignores_block_order():
    a = RegularGraph(4, 3, np.array([[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]))
    b = RegularGraph(4, 3, np.array([[2, 3], [1, 3], [1, 2], [0, 3], [0, 2], [0, 1]]))
    assert a == b and hash(a) == hash(b)
    assert not np.array_equal(a.adjacency, b.adjacency)
