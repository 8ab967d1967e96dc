"""Deficiency and min-entropy rate of explicit sets, with exact thresholds.

Blocks are 0-indexed.  A set S of vectors over an alphabet of size ``m``
is treated as the uniform distribution on S.  Probabilities are kept as
integer counts over ``|S|``, so a threshold test such as
``Pr[x_J = a] > m^(-tau*|J|)`` with ``tau = p/q`` becomes the integer
comparison ``count^q * m^(p*|J|) > |S|^q``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _guard, _kernels
from .errors import EmptySet

HALF = Fraction(1, 2)
SUBSET_LIMIT = 20


class PointerSet:
    """An explicit duplicate-free subset of ``[m]^N`` stored as an (n, N) array.

    Rows are kept in lexicographic order so that iteration and witness
    selection are deterministic.
    """

    __slots__ = ("N", "m", "members")

    def __init__(self, N: int, m: int, members: np.ndarray, *, _trusted: bool = False):
        self.N = N
        self.m = m
        arr = np.asarray(members, dtype=np.int64).reshape(-1, N)
        if not _trusted:
            if arr.size and (arr.min() < 0 or arr.max() >= m):
                raise ValueError(f"entries must lie in [0, {m})")
            arr = np.unique(arr, axis=0) if arr.shape[0] else arr
        self.members = arr

    @classmethod
    def from_vectors(cls, N: int, m: int, vectors: Iterable[Sequence[int]]) -> "PointerSet":
        rows = [tuple(v) for v in vectors]
        for v in rows:
            if len(v) != N:
                raise ValueError(f"vector {v} does not have {N} blocks")
        return cls(N, m, np.array(rows, dtype=np.int64).reshape(-1, N))

    @classmethod
    def full(cls, N: int, m: int) -> "PointerSet":
        grid = np.indices((m,) * N).reshape(N, -1).T
        return cls(N, m, np.ascontiguousarray(grid), _trusted=True)

    def __len__(self) -> int:
        return self.members.shape[0]

    def __iter__(self):
        return (tuple(int(v) for v in row) for row in self.members)

    def __contains__(self, vec) -> bool:
        return bool(np.any(np.all(self.members == np.asarray(vec), axis=1)))

    def __repr__(self) -> str:
        return f"PointerSet(N={self.N}, m={self.m}, size={len(self)})"

    def where(self, keep: np.ndarray) -> "PointerSet":
        return PointerSet(self.N, self.m, self.members[keep], _trusted=True)

    def fix(self, blocks: Sequence[int], values: Sequence[int]) -> "PointerSet":
        keep = np.ones(len(self), dtype=bool)
        for b, v in zip(blocks, values):
            keep &= self.members[:, b] == v
        return self.where(keep)

    def avoid(self, block: int, value: int) -> "PointerSet":
        return self.where(self.members[:, block] != value)

    def block_bit(self, block: int, t: int) -> np.ndarray:
        return (self.members[:, block] >> t) & 1


@dataclass(frozen=True)
class EntropyReport:
    deficiency: float
    rate: float
    witness_set: tuple
    witness_assignment: tuple
    witness_count: int
    size: int


def _remaining(S: PointerSet, excluded: Iterable[int]) -> list[int]:
    ex = set(excluded)
    return [i for i in range(S.N) if i not in ex]


def _decode(code: int, alphabet: int, width: int) -> tuple:
    out = []
    for _ in range(width):
        out.append(code % alphabet)
        code //= alphabet
    return tuple(reversed(out))


def projection_max(S: PointerSet, J: Sequence[int]) -> tuple[int, tuple]:
    """Largest count of a single assignment on blocks J, and the lex-smallest such assignment."""
    count, code = _kernels.projection_max(S.members, S.m, np.asarray(J, dtype=np.int64))
    return count, _decode(code, S.m, len(J))


def violates(count: int, size: int, alphabet: int, width: int, tau: Fraction) -> bool:
    """Exact test of ``count/size > alphabet^(-tau*width)``."""
    tau = Fraction(tau)
    p, q = tau.numerator, tau.denominator
    return count ** q * alphabet ** (p * width) > size ** q


def at_threshold(count: int, size: int, alphabet: int, width: int, tau: Fraction) -> bool:
    tau = Fraction(tau)
    p, q = tau.numerator, tau.denominator
    return count ** q * alphabet ** (p * width) == size ** q


def deficiency(S, universe_bits: Optional[float] = None) -> float:
    """``universe_bits - log2|S|``; the universe defaults to ``N*log2(m)`` bits."""
    n = len(S)
    if n == 0:
        raise EmptySet("deficiency of an empty set")
    if universe_bits is None:
        universe_bits = S.N * math.log2(S.m)
    return universe_bits - math.log2(n)


def deficiency_at_most(size: int, universe_bits: int, delta: int) -> bool:
    """Exact test of ``universe_bits - log2(size) <= delta`` for integer bit counts."""
    return size << delta >= 1 << universe_bits


def projected_deficiency(S: PointerSet, excluded: Iterable[int] = ()) -> float:
    """Min-entropy deficiency of the projection of S onto the non-excluded blocks."""
    if len(S) == 0:
        raise EmptySet("deficiency of an empty set")
    rest = _remaining(S, excluded)
    if not rest:
        return 0.0
    c, _ = projection_max(S, rest)
    return len(rest) * math.log2(S.m) - math.log2(len(S) / c)


def _subsets(blocks: Sequence[int]):
    for size in range(1, len(blocks) + 1):
        yield from itertools.combinations(blocks, size)


def _rate_value(count: int, size: int, alphabet: int, width: int) -> float:
    return math.log2(size / count) / (width * math.log2(alphabet))


def _less_rate(c1: int, w1: int, c2: int, w2: int, n: int) -> bool:
    """Exact ``rate(c1, w1) < rate(c2, w2)``: (n/c1)^w2 < (n/c2)^w1."""
    return n ** w2 * c2 ** w1 < n ** w1 * c1 ** w2


def min_entropy_rate(S: PointerSet, excluded: Iterable[int] = (), force: bool = False) -> EntropyReport:
    """Min-entropy rate of S on the blocks outside ``excluded`` with its witness.

    Ties go to the smallest ``|J|``, then lexicographic J, then
    lexicographic assignment.  With no blocks left the rate is 1.
    """
    n = len(S)
    if n == 0:
        raise EmptySet("min-entropy rate of an empty set")
    rest = _remaining(S, excluded)
    _guard.check("min-entropy rate subset scan", len(rest), SUBSET_LIMIT, force)
    if not rest:
        return EntropyReport(0.0, 1.0, (), (), n, n)
    best = None
    for J in _subsets(rest):
        c, alpha = projection_max(S, J)
        if best is None or _less_rate(c, len(J), best[0], len(best[1]), n):
            best = (c, J, alpha)
    c, J, alpha = best
    return EntropyReport(
        deficiency=projected_deficiency(S, excluded),
        rate=_rate_value(c, n, S.m, len(J)),
        witness_set=tuple(J),
        witness_assignment=alpha,
        witness_count=c,
        size=n,
    )


def first_violation(S: PointerSet, excluded: Iterable[int], tau: Fraction,
                    strict: bool = False, force: bool = False):
    """First (J, count, alpha) in (size, lex) order with ``Pr > m^(-tau|J|)``.

    With ``strict=True`` equality also counts as a violation, which tests
    the strict bound ``rate > tau``.  Returns None when the bound holds.
    """
    n = len(S)
    if n == 0:
        raise EmptySet("min-entropy rate of an empty set")
    rest = _remaining(S, excluded)
    _guard.check("min-entropy rate subset scan", len(rest), SUBSET_LIMIT, force)
    for J in _subsets(rest):
        c, alpha = projection_max(S, J)
        if violates(c, n, S.m, len(J), tau) or (strict and at_threshold(c, n, S.m, len(J), tau)):
            return J, c, alpha
    return None


def rate_at_least(S: PointerSet, tau: Fraction, excluded: Iterable[int] = (),
                  strict: bool = False, force: bool = False) -> bool:
    return first_violation(S, excluded, tau, strict=strict, force=force) is None


def rate_equalities(S: PointerSet, tau: Fraction, excluded: Iterable[int] = (),
                    force: bool = False) -> list[tuple]:
    """Every block set J on which the largest probability equals ``m^(-tau|J|)`` exactly."""
    rest = _remaining(S, excluded)
    _guard.check("min-entropy rate subset scan", len(rest), SUBSET_LIMIT, force)
    return [J for J in _subsets(rest)
            if at_threshold(projection_max(S, J)[0], len(S), S.m, len(J), tau)]


def maximal_low_rate_set(S: PointerSet, excluded: Iterable[int] = (), tau: Fraction = HALF,
                         force: bool = False) -> tuple[tuple, tuple]:
    """A maximal block set I' outside ``excluded`` whose own projection violates rate ``tau``.

    Starts from the minimum-rate witness and moves to the smallest
    (then lexicographically first) violating strict superset until none
    exists, so no superset of the result violates.  The assignment is the
    most frequent one on I', lexicographically smallest among ties.
    Returns ``((), ())`` when the rate is already at least ``tau``.
    """
    tau = Fraction(tau)
    n = len(S)
    if n == 0:
        raise EmptySet("maximal low-rate set of an empty set")
    rest = _remaining(S, excluded)
    report = min_entropy_rate(S, excluded, force=force)
    J = report.witness_set
    if not J or not violates(report.witness_count, n, S.m, len(J), tau):
        return (), ()
    current = tuple(J)
    while True:
        grown = None
        others = [i for i in rest if i not in current]
        for extra_size in range(1, len(others) + 1):
            for extra in itertools.combinations(others, extra_size):
                T = tuple(sorted(current + extra))
                c, _ = projection_max(S, T)
                if violates(c, n, S.m, len(T), tau):
                    grown = T
                    break
            if grown is not None:
                break
        if grown is None:
            break
        current = grown
    _, alpha = projection_max(S, current)
    return current, alpha
