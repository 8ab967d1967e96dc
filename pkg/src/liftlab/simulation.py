"""Turn protocols and parity decision trees for lifted problems into decision trees.

The simulator walks a protocol for ``f o IND_m^N`` while keeping a
rectangle X x Y of inputs consistent with the path:

* X is an explicit set of pointer vectors;
* Y is the solution set of a row-reduced affine system E over the
  y-coordinates, whose pivots are the dependent coordinates D_Y;
* I is the set of queried blocks, with answers rho.

At every loop head, for the unqueried blocks, no pointer in X aims at a
dependent coordinate, and X has min-entropy rate at least ``tau``.  When the rate
drops below ``tau`` a maximal violating block set is fixed and queried.
The potential ``D(X restricted to unqueried blocks)`` never exceeds
``A + B - (1 - tau) * |I| * log2(m)``, where A and B count the bits that
actually shrank X or Y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import _guard, entropy, gadgets, protocol, trees
from .entropy import PointerSet
from .errors import (GuardExceeded, InvariantBroken, NotPowerOfTwo,
                     ShapeMismatch)
from .f2_linalg import X_SIDE, Y_SIDE, AffineSystem, CoordSpace, xbit, y
from .protocol import AliceSplit, BobParity, PLeaf, ProtocolTree

TAU = Fraction(1, 2)
STAR = "star-parity"
PARITY = "parity-parity"

Oracle = Union[Sequence[int], Callable[[int], int]]


@dataclass
class Step:
    """One loop-head record."""

    node: int
    rule: str
    bit: Optional[int]
    queried: tuple
    A: int
    B: int
    queried_total: int
    x_size: int
    potential: float


@dataclass
class SimTrace:
    steps: list = field(default_factory=list)
    snapshots: list = field(default_factory=list)

    def tsv(self) -> str:
        rows = ["step\tnode\trule\tbit\tqueried\tA\tB\tI\tX\tpotential"]
        for k, s in enumerate(self.steps):
            q = ",".join(str(i) for i in s.queried) or "-"
            bit = "-" if s.bit is None else str(s.bit)
            rows.append(f"{k}\t{s.node}\t{s.rule}\t{bit}\t{q}\t{s.A}\t{s.B}\t"
                        f"{s.queried_total}\t{s.x_size}\t{s.potential:.6f}")
        return "\n".join(rows) + "\n"


@dataclass
class SimResult:
    label: str
    queried: tuple
    answers: dict
    A: int
    B: int
    trace: SimTrace
    leaf: int
    m: int
    tau: Fraction = TAU
    path_bits: int = 0

    @property
    def spoken(self) -> int:
        """Bits that consumed information (A + B); forced bits are not counted."""
        return self.A + self.B

    def query_bound_holds(self) -> bool:
        """Exact ``(1 - tau) * |I| * log2(m) <= A + B``."""
        return potential_bound_holds(self.m, len(self.queried), self.spoken, 1, 1, self.tau)


def potential_bound_holds(m: int, queried: int, spoken: int, size: int, top: int,
                          tau: Fraction = TAU, remaining: int = 0) -> bool:
    """Exact test of ``D <= spoken - (1 - tau) * queried * log2(m)``.

    D is the min-entropy deficiency ``remaining*log2(m) - log2(size/top)``
    of a set of ``size`` vectors over ``remaining`` blocks whose most
    frequent vector occurs ``top`` times.  With ``remaining=0`` and
    ``size=top=1`` this is the plain query bound.
    """
    p, q = tau.numerator, tau.denominator
    lhs = m ** (q * remaining + (q - p) * queried) * top ** q
    rhs = size ** q * 2 ** (q * spoken)
    return lhs <= rhs


class SimState:
    """Rectangle X x Y (Y given by E), queried blocks I with answers rho, and counters."""

    def __init__(self, N: int, m: int, space: Optional[CoordSpace] = None,
                 X: Optional[PointerSet] = None):
        space = CoordSpace(N, m) if space is None else space
        self.N = N
        self.m = m
        self.X = PointerSet.full(N, m) if X is None else X
        self.E = AffineSystem(space)
        self.I: list[int] = []
        self.rho: dict[int, int] = {}
        self.alpha: dict[int, int] = {}
        self.A = 0
        self.B = 0

    @property
    def unqueried(self) -> list[int]:
        return [i for i in range(self.N) if i not in self.rho]

    def potential(self) -> float:
        return entropy.projected_deficiency(self.X, self.I)


def _as_oracle(z: Oracle) -> Callable[[int], int]:
    if callable(z):
        return z
    zs = tuple(int(b) for b in z)
    return lambda i: zs[i]


def _check_invariants(st: SimState, tau: Fraction, force: bool) -> None:
    if len(st.X) == 0:
        raise InvariantBroken("X became empty")
    if set(st.rho) != set(st.I):
        raise InvariantBroken("queried blocks and rho disagree")
    try:
        st.E.check_invariants()
    except AssertionError as exc:
        raise InvariantBroken(f"E is not row-reduced: {exc}") from exc
    unq = set(st.unqueried)
    for c in st.E.dependents:
        if c.side == Y_SIDE and c.block in unq and np.any(st.X.members[:, c.block] == c.position):
            raise InvariantBroken(f"a pointer in X aims at dependent coordinate {c}")
    space = st.E.space
    free = ((1 << space.size) - 1) & ~st.E.pivot_mask
    ext = st.E.extend_mask(0, free)
    if not st.E.satisfied_by(ext):
        raise InvariantBroken("unique extension does not satisfy E")
    for i in st.I:
        if np.any(st.X.members[:, i] != st.alpha[i]):
            raise InvariantBroken(f"block {i} is queried but X is not fixed there")
        if st.E.in_span_mask(1 << space.index(y(i, st.alpha[i]))) != st.rho[i]:
            raise InvariantBroken(f"Y does not force y[{i},{st.alpha[i]}] = z[{i}]")
    if entropy.first_violation(st.X, st.I, tau, force=force) is not None:
        raise InvariantBroken("min-entropy rate of X dropped below tau at a loop head")
    top, _ = entropy.projection_max(st.X, st.unqueried) if st.unqueried else (1, ())
    if not potential_bound_holds(st.m, len(st.I), st.A + st.B, len(st.X), top, tau,
                                 remaining=len(st.unqueried)):
        raise InvariantBroken("potential exceeds A + B - (1 - tau)|I| log2 m")


def restore(st: SimState, z: Oracle, tau: Fraction = TAU, force: bool = False,
            pdt: bool = False) -> tuple:
    """Fix and query a maximal block set on which X violates rate tau; returns the blocks.

    Each queried block i adds ``y[i, alpha_i] = z_i`` to E with pivot
    ``(i, alpha_i)``.  A no-op when the rate is already at least tau.
    """
    z = _as_oracle(z)
    blocks, alpha = entropy.maximal_low_rate_set(st.X, st.I, tau, force=force)
    if not blocks:
        return ()
    before = len(st.X)
    st.X = st.X.fix(blocks, alpha)
    after = len(st.X)
    p, q = tau.numerator, tau.denominator
    if not before ** q <= after ** q * st.m ** (p * len(blocks)):
        raise InvariantBroken("restoration lost more than tau*|I'|*log2 m bits")
    space = st.E.space
    for i, a in zip(blocks, alpha):
        if pdt:
            for t in range(space.ell):
                mask = 1 << space.index(xbit(i, t))
                if st.E.in_span_mask(mask) is None:
                    st.E, _ = st.E.insert_mask(mask, (a >> t) & 1)
        zi = int(z(i))
        st.rho[i] = zi
        st.alpha[i] = a
        st.E, piv = st.E.insert_mask(1 << space.index(y(i, a)), zi)
        if space.coord(piv) != y(i, a):
            raise InvariantBroken("restoration pivot is not the pointed coordinate")
    st.I.extend(blocks)
    return tuple(blocks)


def _witness(st: SimState, z_known: Callable[[int], Optional[int]]) -> tuple[tuple, int, int]:
    """A pair (x, y) in the current rectangle with IND(x, y) = z; also the full value mask."""
    space = st.E.space
    x = tuple(int(v) for v in st.X.members[0])
    values = 0
    for i in range(st.N):
        if space.ell:
            for t in range(space.ell):
                if (x[i] >> t) & 1:
                    values |= 1 << space.index(xbit(i, t))
        if i not in st.rho:
            zi = z_known(i) or 0
            if zi:
                values |= 1 << space.index(y(i, x[i]))
    pivots = st.E.pivot_mask
    free = ((1 << space.size) - 1) & ~pivots
    values &= free
    full = values | st.E.extend_mask(values, free)
    ny = st.N * st.m
    return x, full & ((1 << ny) - 1), full


def _check_leaf(st: SimState, P: ProtocolTree, node, z_known) -> None:
    x, ypacked, _ = _witness(st, z_known)
    out = gadgets.evaluate(gadgets.ind(st.m, st.N), x, gadgets.unpack(ypacked, st.m, st.N))
    for i in range(st.N):
        want = st.rho.get(i, z_known(i) or 0)
        if out[i] != want:
            raise InvariantBroken(f"witness pair gives z[{i}] = {out[i]}, expected {want}")
    if protocol.leaf_of(P, x, ypacked) is not node:
        raise InvariantBroken("witness pair does not reach the simulated leaf")


def simulate(P: ProtocolTree, z: Oracle, m: Optional[int] = None, N: Optional[int] = None,
             mode: str = STAR, tau: Fraction = TAU, check: bool = True,
             snapshots: bool = False, force: bool = False) -> SimResult:
    """Run the simulation on one input z of the base problem.

    ``mode=STAR`` is the (*,+) algorithm: Alice's branch keeps the larger
    half of X.  ``mode=PARITY`` needs a (+,+)-protocol and follows the
    smaller protocol subtree whenever Alice's bit splits X, and removes
    pointers to new dependent coordinates by fixing one pointer bit, so X
    stays an affine subspace.
    """
    m = P.m if m is None else m
    N = P.N if N is None else N
    if (m, N) != (P.m, P.N):
        raise ShapeMismatch(f"protocol is for N={P.N}, m={P.m}")
    if m < 4:
        raise ValueError("the simulation needs m >= 4")
    if mode not in (STAR, PARITY):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == PARITY and P.kind != "parity":
        raise ValueError("parity-parity mode needs a protocol without AliceSplit nodes")
    tau = Fraction(tau)
    cap = N * (math.log2(m) + 1)
    if P.depth > cap and not _guard.overridden(force):
        raise GuardExceeded(f"protocol depth {P.depth} exceeds N*(log2 m + 1) = {cap:g}")
    oracle = _as_oracle(z)
    answered: dict[int, int] = {}

    def ask(i: int) -> int:
        if i not in answered:
            answered[i] = int(oracle(i))
        return answered[i]

    st = SimState(N, m, CoordSpace(N, m))
    trace = SimTrace()
    node = P.root
    rule, bit, queried = "start", None, ()
    while True:
        if check:
            _check_invariants(st, tau, force)
        trace.steps.append(Step(P.node_id(node), rule, bit, queried, st.A, st.B,
                                len(st.I), len(st.X), st.potential()))
        if snapshots:
            trace.snapshots.append((st.X.members.copy(), tuple(st.I), st.A, st.B))
        if isinstance(node, PLeaf):
            break
        queried = ()
        if isinstance(node, BobParity):
            mask = st.E.space.mask(node.support)
            forced = st.E.in_span_mask(mask)
            if forced is not None:
                rule, bit = "span-forced", forced
            else:
                bit = 0 if P.subtree_leaves(node.zero) <= P.subtree_leaves(node.one) else 1
                st.E, piv = st.E.insert_mask(mask, bit)
                st.B += 1
                rule = "bob-new-equation"
                _, i_star, j_star = st.E.space.coord(piv)
                before = len(st.X)
                if mode == STAR:
                    st.X = st.X.avoid(i_star, j_star)
                else:
                    st.X = _avoid_by_bit(st.X, i_star, j_star, m)
                if 2 * len(st.X) < before:
                    raise InvariantBroken("Bob's step cost more than one bit of X")
        else:
            bits = _alice_bits(node, st.X)
            n1 = int(bits.sum())
            n0 = len(bits) - n1
            if n0 == 0 or n1 == 0:
                rule, bit = "alice-forced", 0 if n1 == 0 else 1
            elif mode == STAR:
                bit = 0 if 2 * n0 >= len(bits) else 1
                rule = "alice-split"
                st.A += 1
            else:
                if n0 != n1:
                    raise InvariantBroken("an Alice parity did not halve the affine set X")
                bit = 0 if P.subtree_leaves(node.zero) <= P.subtree_leaves(node.one) else 1
                rule = "alice-split"
                st.A += 1
            if rule == "alice-split":
                st.X = st.X.where(bits == bit)
        node = node.one if bit else node.zero
        if entropy.first_violation(st.X, st.I, tau, force=force) is not None:
            queried = restore(st, ask, tau, force)
            rule = rule + "+restore"
    if check:
        _check_leaf(st, P, node, lambda i: answered.get(i))
    return SimResult(node.label, tuple(st.I), dict(st.rho), st.A, st.B, trace,
                     P.node_id(node), m, tau, len(trace.steps) - 1)


def _alice_bits(node, X: PointerSet) -> np.ndarray:
    if isinstance(node, AliceSplit):
        members = X.members
        zero = np.array([tuple(int(v) for v in row) in node.zero_set for row in members], dtype=bool)
        return (~zero).astype(np.int64)
    b = np.zeros(len(X), dtype=np.int64)
    for c in node.support:
        b ^= X.block_bit(c.block, c.position)
    return b


def _avoid_by_bit(X: PointerSet, i: int, j: int, m: int) -> PointerSet:
    """Remove pointers x_i = j by fixing the lowest non-constant bit of x_i against j."""
    col = X.members[:, i]
    if not np.any(col == j):
        return X
    ell = m.bit_length() - 1
    for t in range(ell):
        bits = (col >> t) & 1
        if bits.min() != bits.max():
            return X.where(bits != ((j >> t) & 1))
    raise InvariantBroken(f"block {i} is fully fixed to a dependent coordinate")


class _NeedAnswer(Exception):
    def __init__(self, i: int):
        super().__init__(i)
        self.i = i


@dataclass
class Extraction:
    tree: trees.Tree
    runs: list


def _explore(run: Callable) -> Extraction:
    runs = []

    def rec(prefix: tuple) -> trees.Tree:
        asked: list[int] = []

        def oracle(i: int) -> int:
            k = len(asked)
            asked.append(i)
            if k < len(prefix):
                return prefix[k]
            raise _NeedAnswer(i)

        try:
            res = run(oracle)
        except _NeedAnswer as need:
            return trees.Query(need.i, rec(prefix + (0,)), rec(prefix + (1,)))
        runs.append(res)
        return trees.Leaf(res.label)

    return Extraction(rec(()), runs)


def extract_decision_tree(P: ProtocolTree, m: Optional[int] = None, N: Optional[int] = None,
                          mode: str = STAR, tau: Fraction = TAU, check: bool = True,
                          force: bool = False, with_runs: bool = False):
    """Decision tree over z obtained by exploring both answers to every query, 0 first."""
    ex = _explore(lambda oracle: simulate(P, oracle, m, N, mode, tau, check, force=force))
    return ex if with_runs else ex.tree


# --- parity decision trees ------------------------------------------------------
@dataclass
class PdtRun:
    label: str
    queried: tuple
    answers: dict
    A: int
    B: int
    trace: SimTrace
    m: int
    tau: Fraction = TAU

    @property
    def spoken(self) -> int:
        return self.A + self.B


def _tree_leaves(t: trees.Tree, memo: dict) -> int:
    key = id(t)
    if key not in memo:
        memo[key] = 1 if isinstance(t, trees.Leaf) else (
            _tree_leaves(t.zero, memo) + _tree_leaves(t.one, memo))
    return memo[key]


def _pdt_run(T: trees.Tree, z: Callable[[int], int], N: int, m: int, tau: Fraction,
             check: bool, force: bool, label_map: Optional[Callable], memo: dict) -> PdtRun:
    ell = m.bit_length() - 1
    space = CoordSpace(N, m, ell)
    st = SimState(N, m, space)
    answered: dict[int, int] = {}

    def ask(i: int) -> int:
        if i not in answered:
            answered[i] = int(z(i))
        return answered[i]

    trace = SimTrace()
    node = T
    rule, bit, queried = "start", None, ()
    while True:
        if check:
            _check_invariants(st, tau, force)
            _check_x_affine(st)
        trace.steps.append(Step(0, rule, bit, queried, st.A, st.B, len(st.I), len(st.X),
                                st.potential()))
        if isinstance(node, trees.Leaf):
            break
        queried = ()
        mask = space.mask(trees.support(node))
        forced = st.E.in_span_mask(mask)
        if forced is not None:
            rule, bit = "span-forced", forced
        else:
            bit = 0 if _tree_leaves(node.zero, memo) <= _tree_leaves(node.one, memo) else 1
            before = len(st.X)
            st.E, piv = st.E.insert_mask(mask, bit)
            side, i_star, j_star = space.coord(piv)
            if side == Y_SIDE:
                rule = "y-pivot"
                st.B += 1
                col = st.X.members[:, i_star]
                if np.any(col == j_star):
                    for t in range(ell):
                        bits = (col >> t) & 1
                        if bits.min() != bits.max():
                            st.E, _ = st.E.insert_mask(1 << space.index(xbit(i_star, t)),
                                                       1 - ((j_star >> t) & 1))
                            st.X = st.X.where(bits != ((j_star >> t) & 1))
                            break
                    else:
                        raise InvariantBroken("pointer block fully fixed to a dependent coordinate")
            else:
                rule = "x-pivot"
                st.A += 1
                residual = st.E.rows[-1]
                st.X = _filter_affine(st.X, residual, space)
            if 2 * len(st.X) < before:
                raise InvariantBroken("a parity query cost more than one bit of X")
        node = node.one if bit else node.zero
        if entropy.first_violation(st.X, st.I, tau, force=force) is not None:
            queried = restore(st, ask, tau, force, pdt=True)
            rule = rule + "+restore"
    if check:
        _check_pdt_leaf(st, T, node, lambda i: answered.get(i))
    label = label_map(node.label) if label_map else node.label
    return PdtRun(label, tuple(st.I), dict(st.rho), st.A, st.B, trace, m, tau)


def _filter_affine(X: PointerSet, row: tuple[int, int], space: CoordSpace) -> PointerSet:
    mask, rhs = row
    b = np.zeros(len(X), dtype=np.int64)
    for idx in _bits(mask):
        c = space.coord(idx)
        if c.side != X_SIDE:
            raise InvariantBroken("an x-pivot row mentions a y-coordinate")
        b ^= X.block_bit(c.block, c.position)
    return X.where(b == rhs)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_x_affine(st: SimState) -> None:
    n = len(st.X)
    if n & (n - 1):
        raise InvariantBroken("X is not an affine subspace (size not a power of 2)")
    space = st.E.space
    x_rows = [(r, b) for (r, b), p in zip(st.E.rows, st.E.pivots) if space.coord(p).side == X_SIDE]
    expected = (space.N * space.ell) - len(x_rows)
    if n != 1 << expected:
        raise InvariantBroken("X does not match the x-constraints of E")


def _check_pdt_leaf(st: SimState, T: trees.Tree, node, z_known) -> None:
    x, ypacked, full = _witness(st, z_known)
    space = st.E.space
    if not st.E.satisfied_by(full):
        raise InvariantBroken("witness violates E")
    for i in range(st.N):
        got = (ypacked >> (i * st.m + x[i])) & 1
        want = st.rho.get(i, z_known(i) or 0)
        if got != want:
            raise InvariantBroken(f"witness gives z[{i}] = {got}, expected {want}")
    reached = T
    while not isinstance(reached, trees.Leaf):
        b = 0
        for c in trees.support(reached):
            b ^= (full >> space.index(c)) & 1
        reached = reached.one if b else reached.zero
    if reached is not node:
        raise InvariantBroken("witness does not reach the simulated PDT leaf")


def pdt_run(T: trees.Tree, z: Oracle, m: int, N: int, tau: Fraction = TAU,
            check: bool = True, label_map: Optional[Callable] = None,
            force: bool = False) -> PdtRun:
    """Simulate a parity decision tree over x-bits and y-coordinates on one base input z."""
    _check_pdt_args(T, m, N)
    return _pdt_run(T, _as_oracle(z), N, m, Fraction(tau), check, force, label_map, {})


def _check_pdt_args(T: trees.Tree, m: int, N: int) -> None:
    if m < 4 or m & (m - 1):
        raise NotPowerOfTwo(f"m = {m} must be a power of 2 and at least 4")
    ell = m.bit_length() - 1
    for c in trees.all_vars(T):
        if not hasattr(c, "side"):
            raise ShapeMismatch(f"PDT variable {c!r} is not a coordinate")
        limit = m if c.side == Y_SIDE else ell
        if not (0 <= c.block < N and 0 <= c.position < limit):
            raise ShapeMismatch(f"coordinate {c} out of range")


def pdt_simulate(T: trees.Tree, m: int, N: int, tau: Fraction = TAU, check: bool = True,
                 label_map: Optional[Callable] = None, force: bool = False,
                 with_runs: bool = False):
    """Ordinary decision tree over z extracted from a PDT for a lifted problem.

    Leaf labels pass through ``label_map`` (e.g. lifted clause to base
    clause).  Asserts per run that the output is no taller and has no
    more leaves than T.
    """
    _check_pdt_args(T, m, N)
    memo: dict = {}
    tau = Fraction(tau)
    ex = _explore(lambda oracle: _pdt_run(T, oracle, N, m, tau, check, force, label_map, memo))
    if trees.height(ex.tree) > trees.height(T):
        raise InvariantBroken("extracted tree is taller than the PDT")
    if trees.leaves(ex.tree) > trees.leaves(T):
        raise InvariantBroken("extracted tree has more leaves than the PDT")
    return ex if with_runs else ex.tree


__all__ = ["simulate", "extract_decision_tree", "pdt_simulate", "pdt_run", "SimResult",
           "SimTrace", "SimState", "Step", "restore", "STAR", "PARITY", "TAU", "potential_bound_holds"]
