"""Index and Inner-Product gadgets, their N-fold compositions and images.

Packed encodings: a y-block is an int whose bit j is y_j; a whole y is
an int with block i at bits ``[i*w, (i+1)*w)`` where w is the block
width (m for IND, b for IP).  Output vectors are ints with bit i equal
to the output of block i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _guard, _kernels
from .errors import ShapeMismatch

IMAGE_BLOCK_LIMIT = 24
PAIR_LIMIT = 1 << 32


@dataclass(frozen=True)
class GadgetSpec:
    """``kind`` is "IND", "IP" or "TABLE"; ``size`` is m (IND), b (IP) or |X| (TABLE)."""

    kind: str
    size: int
    N: int = 1
    table: Optional[tuple] = None

    def __post_init__(self):
        if self.kind not in ("IND", "IP", "TABLE"):
            raise ValueError(f"unknown gadget kind {self.kind!r}")
        if self.kind == "IND" and self.size < 2:
            raise ValueError("IND needs m >= 2")
        if self.kind == "IP" and self.size < 1:
            raise ValueError("IP needs b >= 1")
        if self.kind == "TABLE" and not self.table:
            raise ValueError("TABLE gadget needs a table")
        if self.N < 1:
            raise ValueError("N must be positive")

    @property
    def y_width(self) -> int:
        """Bits per y-block."""
        return self.size if self.kind in ("IND", "IP") else 0

    @property
    def m(self) -> int:
        return self.size


def ind(m: int, N: int = 1) -> GadgetSpec:
    return GadgetSpec("IND", m, N)


def ip(b: int, N: int = 1) -> GadgetSpec:
    return GadgetSpec("IP", b, N)


def table(rows: Sequence[Sequence[int]]) -> GadgetSpec:
    t = tuple(tuple(int(v) for v in r) for r in rows)
    return GadgetSpec("TABLE", len(t), 1, t)


# --- packing ---------------------------------------------------------------
def pack_block(block) -> int:
    if isinstance(block, (int, np.integer)):
        return int(block)
    out = 0
    for j, bit in enumerate(block):
        if bit not in (0, 1):
            raise ShapeMismatch(f"block entry {bit!r} is not a bit")
        out |= int(bit) << j
    return out


def unpack_block(value: int, width: int) -> tuple:
    return tuple((value >> j) & 1 for j in range(width))


def pack(blocks: Sequence, width: int) -> int:
    out = 0
    for i, b in enumerate(blocks):
        v = pack_block(b)
        if v >> width:
            raise ShapeMismatch(f"block {b!r} wider than {width} bits")
        out |= v << (i * width)
    return out


def unpack(value: int, width: int, N: int) -> tuple:
    mask = (1 << width) - 1
    return tuple((value >> (i * width)) & mask for i in range(N))


def bits_of(code: int, N: int) -> tuple:
    return tuple((code >> i) & 1 for i in range(N))


# --- evaluation ------------------------------------------------------------
def _check_len(v: Sequence, N: int, name: str) -> None:
    if len(v) != N:
        raise ShapeMismatch(f"{name} has {len(v)} blocks, expected {N}")


def eval_block(g: GadgetSpec, xb, yb) -> int:
    if g.kind == "IND":
        if isinstance(xb, (tuple, list)) or not 0 <= int(xb) < g.m:
            raise ShapeMismatch(f"pointer {xb!r} not in [0, {g.m})")
        yv = pack_block(yb)
        if not isinstance(yb, (int, np.integer)) and len(yb) != g.m:
            raise ShapeMismatch(f"y-block {yb!r} does not have {g.m} bits")
        return (yv >> int(xb)) & 1
    if g.kind == "IP":
        for v in (xb, yb):
            if not isinstance(v, (int, np.integer)) and len(v) != g.size:
                raise ShapeMismatch(f"block {v!r} does not have {g.size} bits")
        return bin(pack_block(xb) & pack_block(yb)).count("1") & 1
    return g.table[int(xb)][int(yb)]


def evaluate(g: GadgetSpec, x: Sequence, y: Sequence) -> tuple:
    """Componentwise gadget value on N blocks."""
    _check_len(x, g.N, "x")
    _check_len(y, g.N, "y")
    return tuple(eval_block(g, xb, yb) for xb, yb in zip(x, y))


# --- images ----------------------------------------------------------------
def _packed_y(g: GadgetSpec, Y) -> np.ndarray:
    if hasattr(Y, "packed"):
        return np.asarray(Y.packed(), dtype=np.int64)
    return np.array([pack(y, g.y_width) for y in Y], dtype=np.int64)


def _x_rows(g: GadgetSpec, X) -> np.ndarray:
    if hasattr(X, "members"):
        return np.asarray(X.members, dtype=np.int64)
    if g.kind == "IND":
        return np.array([list(x) for x in X], dtype=np.int64).reshape(-1, g.N)
    return np.array([[pack_block(b) for b in x] for x in X], dtype=np.int64).reshape(-1, g.N)


def _product_signatures(g: GadgetSpec, ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per y, the blocks that can output 0 and those that can output 1 over all x."""
    w = g.y_width
    low = (1 << w) - 1
    sig0 = np.zeros(ys.shape, dtype=np.int64)
    sig1 = np.zeros(ys.shape, dtype=np.int64)
    for i in range(g.N):
        block = (ys >> (i * w)) & low
        nonzero = (block != 0).astype(np.int64)
        if g.kind == "IND":
            can0 = (block != low).astype(np.int64)
        else:
            can0 = np.ones(ys.shape, dtype=np.int64)
        sig0 |= can0 << i
        sig1 |= nonzero << i
    return sig0, sig1


def image_mask(g: GadgetSpec, X, Y, force: bool = False) -> np.ndarray:
    """Indicator array over output codes in [0, 2^N) of ``g^N(X, Y)``.

    ``X=None`` means the full x-universe; the image is then the union over
    y of per-block product sets.  An explicit X is enumerated pairwise.
    """
    _guard.check("gadget image output space", g.N, IMAGE_BLOCK_LIMIT, force)
    ys = _packed_y(g, Y)
    if X is None:
        if g.kind == "TABLE":
            X = [tuple(x) for x in itertools.product(range(g.size), repeat=g.N)]
        else:
            sig0, sig1 = _product_signatures(g, ys)
            return _kernels.product_image_mask(sig0, sig1, g.N)
    xs = _x_rows(g, X)
    _guard.check("gadget image pair enumeration", xs.shape[0] * ys.shape[0], PAIR_LIMIT, force)
    if g.kind == "IND":
        return _kernels.ind_image_mask(xs, ys, g.m, g.N)
    out = np.zeros(1 << g.N, dtype=np.uint8)
    w = g.y_width
    low = (1 << w) - 1
    for row in xs:
        for yv in ys.tolist():
            code = 0
            for i in range(g.N):
                yb = (yv >> (i * w)) & low if g.kind == "IP" else yv
                code |= eval_block(g, int(row[i]), yb) << i
            out[code] = 1
    return out


def project_codes(codes: Iterable[int], N: int, drop: Iterable[int]) -> frozenset:
    keep = [i for i in range(N) if i not in set(drop)]
    return frozenset(tuple((c >> i) & 1 for i in keep) for c in codes)


def image(g: GadgetSpec, X, Y, drop: Iterable[int] = (), force: bool = False) -> frozenset:
    """The set of output vectors restricted to the blocks outside ``drop`` (ascending)."""
    mask = image_mask(g, X, Y, force=force)
    return project_codes(np.flatnonzero(mask).tolist(), g.N, drop)


def image_hits(mask: np.ndarray, N: int, drop: Iterable[int], target: int) -> bool:
    """Whether the projected image contains ``target`` restricted to the kept blocks."""
    keep = (1 << N) - 1
    for i in drop:
        keep &= ~(1 << i)
    codes = np.flatnonzero(mask)
    return bool(np.any((codes & keep) == (target & keep)))


# --- communication matrix ---------------------------------------------------
def _single_block_axes(g: GadgetSpec) -> tuple[list, list]:
    if g.kind == "IND":
        xs = list(range(g.m))
        ys = list(itertools.product((0, 1), repeat=g.m))
    elif g.kind == "IP":
        xs = list(itertools.product((0, 1), repeat=g.size))
        ys = list(itertools.product((0, 1), repeat=g.size))
    else:
        xs = list(range(len(g.table)))
        ys = list(range(len(g.table[0])))
    return xs, ys


def has_constant_line(g: GadgetSpec) -> Optional[tuple]:
    """Lexicographically first ``(side, index, bit)`` with a constant row or column, or None.

    ``side`` is "column" (fixed y) or "row" (fixed x).
    """
    xs, ys = _single_block_axes(g)
    found = []
    for yv in ys:
        vals = {eval_block(g, xv, yv) for xv in xs}
        if len(vals) == 1:
            found.append(("column", yv, vals.pop()))
    for xv in xs:
        vals = {eval_block(g, xv, yv) for yv in ys}
        if len(vals) == 1:
            found.append(("row", xv, vals.pop()))
    return min(found) if found else None


def universal_encoding(rows: Sequence[Sequence[int]]) -> dict:
    """Map each column y of an m x m table to the IND y-block ``(g(x, y))_x``."""
    m = len(rows)
    return {yv: tuple(rows[xv][yv] for xv in range(m)) for yv in range(len(rows[0]))}
