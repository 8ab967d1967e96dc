import itertools

import numpy as np
import pytest

from liftlab import gadgets, oracles
from liftlab.entropy import PointerSet
from liftlab.errors import ShapeMismatch


def test_index_and_inner_product_values():
    g = gadgets.ind(4, 2)
    assert gadgets.evaluate(g, (2, 0), ((0, 0, 1, 0), (1, 0, 0, 0))) == (1, 1)
    h = gadgets.ip(2, 1)
    assert gadgets.evaluate(h, ((1, 1),), ((1, 1),)) == (0,)
    assert gadgets.evaluate(h, ((1, 0),), ((1, 1),)) == (1,)


def test_shape_errors():
    with pytest.raises(ShapeMismatch):
        gadgets.evaluate(gadgets.ind(4, 2), (4, 0), ((0,) * 4, (0,) * 4))
    with pytest.raises(ShapeMismatch):
        gadgets.evaluate(gadgets.ind(4, 2), (0,), ((0,) * 4,))
    with pytest.raises(ShapeMismatch):
        gadgets.evaluate(gadgets.ip(2, 1), ((1, 0, 1),), ((1, 1),))


def test_pack_round_trip():
    blocks = [(1, 0, 1), (0, 1, 1)]
    v = gadgets.pack(blocks, 3)
    assert [gadgets.unpack_block(b, 3) for b in gadgets.unpack(v, 3, 2)] == blocks


@pytest.mark.parametrize("kind,width", [("IND", 2), ("IP", 2)])
def test_image_matches_brute_force(kind, width):
    rng = np.random.default_rng(5)
    N = 3
    g = gadgets.GadgetSpec(kind, width, N)
    ys = sorted(set(rng.integers(0, 1 << (width * N), size=6).tolist()))
    Y = [gadgets.unpack(v, width, N) for v in ys]
    Yb = [tuple(gadgets.unpack_block(b, width) for b in y) for y in Y]
    if kind == "IND":
        X = list(itertools.product(range(width), repeat=N))
    else:
        X = [tuple(gadgets.unpack_block(b, width) for b in x)
             for x in itertools.product(range(1 << width), repeat=N)]
    want = oracles.exhaustive_image(kind, X, Yb)
    got = gadgets.image(g, None, Yb)
    assert got == want
    for drop in [(0,), (1, 2)]:
        assert gadgets.image(g, None, Yb, drop=drop) == oracles.exhaustive_image(kind, X, Yb, drop)


def test_image_with_explicit_x_matches_brute_force():
    N, m = 2, 4
    X = PointerSet.from_vectors(N, m, [(0, 1), (3, 3), (2, 0)])
    Y = [((1, 0, 0, 1), (0, 1, 1, 0)), ((0, 0, 0, 0), (1, 1, 1, 1))]
    want = oracles.exhaustive_image("IND", list(X), Y)
    assert gadgets.image(gadgets.ind(m, N), X, Y) == want


def test_constant_lines():
    assert gadgets.has_constant_line(gadgets.ind(2)) == ("column", (0, 0), 0)
    assert gadgets.has_constant_line(gadgets.ip(2)) == ("column", (0, 0), 0)
    assert gadgets.has_constant_line(gadgets.table([[0, 1], [1, 0]])) is None


def test_universal_encoding_reproduces_table():
    rows = [[0, 1, 1], [1, 0, 1], [0, 0, 1]]
    enc = gadgets.universal_encoding(rows)
    for x in range(3):
        for yv in range(3):
            assert enc[yv][x] == rows[x][yv]
