"""Communication protocol trees for problems lifted with IND_m.

Alice holds pointers ``x`` in ``[m]^N``; Bob holds ``y`` in ``({0,1}^m)^N``.
Node kinds:

* ``AliceSplit``: Alice sends 0 iff x lies in an explicit subset of ``[m]^N``.
* ``AliceParity``: Alice sends the parity of some bits of her pointers
  (bit t of ``x_i`` is ``(x_i >> t) & 1``; only for m a power of 2).
* ``BobParity``: Bob sends the parity of some coordinates ``y_{i,j}``.

A protocol is a (*,+)-protocol when every Bob node is a parity, and a
(+,+)-protocol when additionally no AliceSplit occurs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from . import _guard, gadgets, trees
from .errors import NotPowerOfTwo, ParseError, ShapeMismatch
from .f2_linalg import X_SIDE, Y_SIDE, Coord, xbit, y

PAIR_LIMIT = 1 << 24
BOTTOM = "BOT"


@dataclass(frozen=True, eq=False)
class PLeaf:
    label: str


@dataclass(frozen=True, eq=False)
class AliceSplit:
    zero_set: frozenset
    zero: "PNode"
    one: "PNode"


@dataclass(frozen=True, eq=False)
class AliceParity:
    support: frozenset
    zero: "PNode"
    one: "PNode"


@dataclass(frozen=True, eq=False)
class BobParity:
    support: frozenset
    zero: "PNode"
    one: "PNode"


PNode = Union[PLeaf, AliceSplit, AliceParity, BobParity]


def log2_exact(m: int) -> Optional[int]:
    """ell with 2^ell = m, or None."""
    if m >= 1 and m & (m - 1) == 0:
        return m.bit_length() - 1
    return None


class ProtocolTree:
    """An immutable protocol with pre-order node ids and cached subtree sizes."""

    def __init__(self, N: int, m: int, root: PNode):
        self.N = N
        self.m = m
        self.root = root
        self._ids: dict[int, int] = {}
        self._leaves: dict[int, int] = {}
        self._nodes: list = []
        self._index(root)
        self._validate()

    def _index(self, root: PNode) -> None:
        stack = [root]
        while stack:
            n = stack.pop()
            if id(n) in self._ids:
                raise ShapeMismatch("protocol nodes must form a tree, not share subtrees")
            self._ids[id(n)] = len(self._nodes)
            self._nodes.append(n)
            if not isinstance(n, PLeaf):
                stack.append(n.one)
                stack.append(n.zero)
        for n in reversed(self._nodes):
            if isinstance(n, PLeaf):
                self._leaves[id(n)] = 1
            else:
                self._leaves[id(n)] = self._leaves[id(n.zero)] + self._leaves[id(n.one)]

    def _validate(self) -> None:
        ell = log2_exact(self.m)
        for n in self._nodes:
            if isinstance(n, AliceParity):
                if ell is None:
                    raise NotPowerOfTwo(f"AliceParity needs m a power of 2, got m={self.m}")
                for c in n.support:
                    if c.side != X_SIDE or not (0 <= c.block < self.N and 0 <= c.position < ell):
                        raise ShapeMismatch(f"bad x-bit coordinate {c}")
            elif isinstance(n, BobParity):
                for c in n.support:
                    if c.side != Y_SIDE or not (0 <= c.block < self.N and 0 <= c.position < self.m):
                        raise ShapeMismatch(f"bad y coordinate {c}")
            elif isinstance(n, AliceSplit):
                for xv in n.zero_set:
                    if len(xv) != self.N or not all(0 <= v < self.m for v in xv):
                        raise ShapeMismatch(f"bad pointer vector {xv}")

    def node_id(self, node: PNode) -> int:
        return self._ids[id(node)]

    def subtree_leaves(self, node: PNode) -> int:
        return self._leaves[id(node)]

    @property
    def nodes(self) -> list:
        return list(self._nodes)

    @property
    def leaves(self) -> int:
        return self._leaves[id(self.root)]

    @property
    def depth(self) -> int:
        best = 0
        depth = {id(self.root): 0}
        for n in self._nodes:
            d = depth[id(n)]
            best = max(best, d)
            if not isinstance(n, PLeaf):
                depth[id(n.zero)] = depth[id(n.one)] = d + 1
        return best

    @property
    def kind(self) -> str:
        """"parity" if Alice only sends parities, "star" otherwise."""
        if any(isinstance(n, AliceSplit) for n in self._nodes):
            return "star"
        return "parity"


# --- evaluation ---------------------------------------------------------------
def _packed_y(P: ProtocolTree, yv) -> int:
    if isinstance(yv, (int, np.integer)):
        return int(yv)
    if len(yv) != P.N:
        raise ShapeMismatch(f"y has {len(yv)} blocks, expected {P.N}")
    return gadgets.pack(yv, P.m)


def node_bit(node: PNode, x: Sequence[int], ypacked: int, m: int) -> int:
    if isinstance(node, AliceSplit):
        return 0 if tuple(x) in node.zero_set else 1
    b = 0
    if isinstance(node, AliceParity):
        for c in node.support:
            b ^= (x[c.block] >> c.position) & 1
    else:
        for c in node.support:
            b ^= (ypacked >> (c.block * m + c.position)) & 1
    return b


def evaluate(P: ProtocolTree, x: Sequence[int], yv) -> tuple[str, str]:
    """Run the protocol on (x, y); returns the leaf label and the bit transcript."""
    if len(x) != P.N or not all(0 <= int(v) < P.m for v in x):
        raise ShapeMismatch(f"x = {x!r} is not in [{P.m}]^{P.N}")
    yp = _packed_y(P, yv)
    node = P.root
    bits = []
    while not isinstance(node, PLeaf):
        b = node_bit(node, x, yp, P.m)
        bits.append(str(b))
        node = node.one if b else node.zero
    return node.label, "".join(bits)


def leaf_of(P: ProtocolTree, x: Sequence[int], yv) -> PNode:
    yp = _packed_y(P, yv)
    node = P.root
    while not isinstance(node, PLeaf):
        node = node.one if node_bit(node, x, yp, P.m) else node.zero
    return node


# --- lifted problems ----------------------------------------------------------
@dataclass
class LiftedProblem:
    """A base problem on {0,1}^N composed with IND_m.

    ``accept(z)`` returns the set of labels that are correct on z (for a
    function, the single value).  An empty set means no witness exists,
    in which case BOTTOM is the correct output.
    """

    N: int
    m: int
    accept: Callable[[tuple], frozenset]
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_function(cls, N: int, m: int, f: Callable[[tuple], int], name: str = "") -> "LiftedProblem":
        return cls(N, m, lambda z: frozenset((str(int(f(z))),)), name)

    @classmethod
    def from_truth_table(cls, N: int, m: int, table: Sequence[int], name: str = "") -> "LiftedProblem":
        """``table[c]`` is f on z with z_i = bit i of c."""
        return cls.from_function(N, m, lambda z: table[sum(b << i for i, b in enumerate(z))], name)

    @classmethod
    def from_relation(cls, N: int, m: int, rel: Callable[[tuple], Iterable[str]], name: str = "") -> "LiftedProblem":
        return cls(N, m, lambda z: frozenset(rel(z)), name)

    @property
    def gadget(self) -> gadgets.GadgetSpec:
        return gadgets.ind(self.m, self.N)

    def correct(self, z: tuple, label: str) -> bool:
        key = tuple(z)
        ok = self._cache.get(key)
        if ok is None:
            ok = self._cache[key] = self.accept(key)
        if not ok:
            return label == BOTTOM
        return label in ok


def _all_pairs(N: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    xs = np.indices((m,) * N).reshape(N, -1).T.astype(np.int64)
    ys = np.arange(1 << (m * N), dtype=np.int64)
    xi = np.repeat(xs, len(ys), axis=0)
    yi = np.tile(ys, len(xs))
    return xi, yi


def _split_bits(node: PNode, xs: np.ndarray, ys: np.ndarray, m: int) -> np.ndarray:
    if isinstance(node, AliceSplit):
        N = xs.shape[1]
        weights = m ** np.arange(N - 1, -1, -1, dtype=np.int64)
        codes = xs @ weights
        zero_codes = np.array([sum(v * int(w) for v, w in zip(xv, weights)) for xv in node.zero_set],
                              dtype=np.int64)
        return (~np.isin(codes, zero_codes)).astype(np.int64)
    b = np.zeros(len(xs), dtype=np.int64)
    if isinstance(node, AliceParity):
        for c in node.support:
            b ^= (xs[:, c.block] >> c.position) & 1
    else:
        for c in node.support:
            b ^= (ys >> (c.block * m + c.position)) & 1
    return b


def check_correct(P: ProtocolTree, prob: LiftedProblem, force: bool = False) -> Optional[tuple]:
    """Return a pair (x, y) on which P answers wrongly, or None if P is correct everywhere.

    The pair space is partitioned down the tree with vectorized bit
    computations, then each leaf's label is checked against every z that
    reaches it.  The reported pair is the first failing one in
    (x lexicographic, y packed) order.
    """
    N, m = P.N, P.m
    total = (m ** N) << (m * N)
    _guard.check("protocol correctness pair scan", total, PAIR_LIMIT, force)
    xs, ys = _all_pairs(N, m)
    order = np.arange(len(xs))
    failures = []
    stack = [(P.root, xs, ys, order)]
    while stack:
        node, xa, ya, oa = stack.pop()
        if len(oa) == 0:
            continue
        if isinstance(node, PLeaf):
            z = np.zeros(len(xa), dtype=np.int64)
            for i in range(N):
                z |= ((ya >> (i * m + xa[:, i])) & 1) << i
            uniq, first = np.unique(z, return_index=True)
            bad = [int(c) for c in uniq if not prob.correct(gadgets.bits_of(int(c), N), node.label)]
            if bad:
                hit = np.isin(z, bad)
                failures.append(int(oa[hit].min()))
            continue
        b = _split_bits(node, xa, ya, m).astype(bool)
        stack.append((node.zero, xa[~b], ya[~b], oa[~b]))
        stack.append((node.one, xa[b], ya[b], oa[b]))
    if not failures:
        return None
    k = min(failures)
    return tuple(int(v) for v in xs[k]), gadgets.unpack(int(ys[k]), m, N)


# --- canonical protocols -------------------------------------------------------
def canonical_protocol(dt: trees.Tree, N: int, m: int, alice: str = "parity") -> ProtocolTree:
    """Simulate each query z_i by Alice announcing x_i and Bob answering y_{i, x_i}.

    ``alice="parity"`` sends the ell bits of x_i, most significant first,
    and needs m a power of 2; ``alice="split"`` halves the range of x_i
    with explicit partitions and works for any m.
    """
    ell = log2_exact(m)
    if alice == "parity" and ell is None:
        raise NotPowerOfTwo(f"m = {m} is not a power of 2")
    universe = list(itertools.product(range(m), repeat=N))

    def expand(node) -> PNode:
        if isinstance(node, trees.Leaf):
            return PLeaf(node.label)
        if not isinstance(node, trees.Query):
            raise ValueError("canonical_protocol takes an ordinary decision tree")
        i = node.var

        def bob(j: int) -> PNode:
            return BobParity(frozenset((y(i, j),)), expand(node.zero), expand(node.one))

        if alice == "parity":
            def announce(t: int, prefix: int) -> PNode:
                if t < 0:
                    return bob(prefix)
                return AliceParity(frozenset((xbit(i, t),)),
                                   announce(t - 1, prefix), announce(t - 1, prefix | (1 << t)))
            return announce(ell - 1, 0)

        def narrow(lo: int, hi: int) -> PNode:
            if hi - lo == 1:
                return bob(lo)
            mid = (lo + hi + 1) // 2
            zero_set = frozenset(xv for xv in universe if lo <= xv[i] < mid)
            return AliceSplit(zero_set, narrow(lo, mid), narrow(mid, hi))
        return narrow(0, m)

    return ProtocolTree(N, m, expand(dt))


# --- text format ----------------------------------------------------------------
def _fmt_x(xv) -> str:
    return ",".join(str(v) for v in xv)


def dumps(P: ProtocolTree) -> str:
    """Serialize in pre-order: ``PROTO N m kind`` then one line per node."""
    lines = [f"PROTO {P.N} {P.m} {P.kind}"]
    for n in P.nodes:
        nid = P.node_id(n)
        if isinstance(n, PLeaf):
            lines.append(f"LEAF {nid} {n.label}")
        elif isinstance(n, AliceSplit):
            lines.append(" ".join([f"A0 {nid}"] + [_fmt_x(xv) for xv in sorted(n.zero_set)]))
        else:
            tag = "AP" if isinstance(n, AliceParity) else "BP"
            coords = sorted(n.support)
            lines.append(" ".join([f"{tag} {nid}"] + [f"{c.block}:{c.position}" for c in coords]))
    return "\n".join(lines) + "\n"


def loads(text: str) -> ProtocolTree:
    rows = [ln.split() for ln in text.splitlines()]
    rows = [r for r in rows if r and not r[0].startswith("#")]
    if not rows or rows[0][0] != "PROTO" or len(rows[0]) not in (3, 4):
        raise ParseError("missing 'PROTO N m [kind]' header")
    try:
        N, m = int(rows[0][1]), int(rows[0][2])
    except ValueError as exc:
        raise ParseError(f"bad header: {' '.join(rows[0])}") from exc
    body = rows[1:]
    pos = 0

    def coord(tok: str, side: int) -> Coord:
        i, j = tok.split(":")
        return Coord(side, int(i), int(j))

    def rec() -> PNode:
        nonlocal pos
        if pos >= len(body):
            raise ParseError("unexpected end of protocol")
        line = body[pos]
        pos += 1
        tag = line[0]
        if len(line) < 2:
            raise ParseError(f"missing node id: {' '.join(line)}")
        if line[1] != str(pos - 1):
            raise ParseError(f"node id {line[1]} should be {pos - 1} (pre-order position)")
        args = line[2:]
        if tag == "LEAF":
            if len(args) != 1:
                raise ParseError(f"bad leaf line: {' '.join(line)}")
            return PLeaf(args[0])
        if tag == "A0":
            zero_set = frozenset(tuple(int(v) for v in a.split(",")) for a in args)
            return AliceSplit(zero_set, rec(), rec())
        if tag in ("AP", "BP"):
            side = X_SIDE if tag == "AP" else Y_SIDE
            sup: set = set()
            for a in args:
                sup ^= {coord(a, side)}
            cls = AliceParity if tag == "AP" else BobParity
            return cls(frozenset(sup), rec(), rec())
        raise ParseError(f"unknown node tag {tag!r}")

    try:
        root = rec()
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    if pos != len(body):
        raise ParseError("trailing lines after protocol")
    return ProtocolTree(N, m, root)


__all__ = [
    "PLeaf", "AliceSplit", "AliceParity", "BobParity", "ProtocolTree", "LiftedProblem",
    "evaluate", "check_correct", "canonical_protocol", "dumps", "loads", "BOTTOM",
]
