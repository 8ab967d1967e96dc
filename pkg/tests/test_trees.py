import pytest

from liftlab import trees
from liftlab.errors import ParseError
from liftlab.f2_linalg import xbit, y
from liftlab.trees import Leaf, ParityQuery, Query


def test_round_trip_with_coordinates_and_parities():
    t = ParityQuery(frozenset({xbit(0, 1), y(0, 2)}), Query(y(1, 0), Leaf("a"), Leaf("b")), Leaf("c"))
    assert trees.loads(trees.dumps(t)) == t


def test_measures():
    t = Query(0, Leaf("0"), Query(1, Leaf("0"), Leaf("1")))
    assert (trees.height(t), trees.leaves(t), trees.size(t)) == (2, 3, 5)
    assert trees.evaluate(t, {0: 1, 1: 1}) == "1"
    assert trees.walk(t, lambda v: 1)[1] == (1, 1)


def test_relabel_and_canonical():
    t = Query(0, Leaf("1"), Leaf("2"))
    r = trees.relabel(t, var_map=lambda v: v + 1, label_map=lambda s: "c" + s)
    assert r == Query(1, Leaf("c1"), Leaf("c2"))
    assert trees.canonical(ParityQuery(frozenset({3}), Leaf("a"), Leaf("b"))) == Query(3, Leaf("a"), Leaf("b"))


@pytest.mark.parametrize("text", ["DT\nQ 1\nLEAF a\n", "DT\nLEAF a\nLEAF b\n", "DT\nR 1\n", "DT\nQ x\nLEAF a\nLEAF b\n"])
def test_malformed_trees(text):
    with pytest.raises(ParseError):
        trees.loads(text)
