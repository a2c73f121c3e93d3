import pytest

from lcrigidity.canonical import (canonical_form, enumerate_looped_graphs, from_canonical,
                                  is_isomorphic, looped_graphs, simple_graphs)
from lcrigidity.graph import LoopedSimpleGraph


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)])
def test_simple_graph_counts(n, count):
    # unlabeled simple graphs, OEIS A000088
    assert len(simple_graphs(n)) == count


@pytest.mark.parametrize("n,count", [(1, 2), (2, 6), (3, 20), (4, 90), (5, 544)])
def test_looped_graph_counts(n, count):
    # unlabeled graphs with at most one loop per vertex, OEIS A000666
    assert len(looped_graphs(n, 1)) == count


def test_relabel_invariance():
    g = LoopedSimpleGraph(4, [(0, 1), (1, 2)], [0, 3, 3])
    h = LoopedSimpleGraph(4, [(3, 2), (2, 1)], [3, 0, 0])
    assert canonical_form(g) == canonical_form(h)
    assert is_isomorphic(g, h)
    assert not is_isomorphic(g, LoopedSimpleGraph(4, [(0, 1), (1, 2)], [1, 3, 3]))


def test_roundtrip():
    g = LoopedSimpleGraph(3, [(0, 2)], [1, 1])
    assert canonical_form(from_canonical(canonical_form(g))) == canonical_form(g)


def test_enumerate_is_cumulative():
    assert sum(1 for _ in enumerate_looped_graphs(3, 1)) == 2 + 6 + 20
