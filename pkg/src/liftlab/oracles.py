"""Brute-force ground truth, written straight from the definitions.

Nothing here imports the modules it is used to check; the only shared
pieces are the standard library and numpy.  Sets of pointer vectors
are plain Python collections of tuples, truth tables are sequences
indexed by ``sum(z_i << i)``.
"""

from __future__ import annotations

import itertools
import math
import os
import sys
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence


class OracleGuard(RuntimeError):
    """Raised when a brute-force scan would exceed its size limit."""


def _guard(what: str, cost: int, limit: int, force: bool) -> None:
    if cost <= limit:
        return
    if force or os.environ.get("LIFTLAB_GUARD_OVERRIDE") == "1":
        print(f"oracle override: {what} costs about {cost} (limit {limit})", file=sys.stderr)
        return
    raise OracleGuard(f"{what}: cost {cost} exceeds {limit}")


# --- optimal trees -------------------------------------------------------------
def _tt(f: Sequence[int], n: int) -> tuple:
    t = tuple(int(v) for v in f)
    if len(t) != 1 << n:
        raise ValueError(f"truth table has {len(t)} entries, expected {1 << n}")
    return t


def _points(rho: tuple) -> list:
    n = len(rho)
    out = []
    for z in range(1 << n):
        if all(r < 0 or ((z >> i) & 1) == r for i, r in enumerate(rho)):
            out.append(z)
    return out


def optimal_dt_height(f: Sequence[int], n: int, force: bool = False) -> int:
    """Minimum decision-tree height, by recursion over restrictions."""
    _guard("optimal decision-tree height", n, 5, force)
    t = _tt(f, n)

    @lru_cache(maxsize=None)
    def h(rho: tuple) -> int:
        if len({t[z] for z in _points(rho)}) <= 1:
            return 0
        best = n
        for i in range(n):
            if rho[i] < 0:
                a = rho[:i] + (0,) + rho[i + 1:]
                b = rho[:i] + (1,) + rho[i + 1:]
                best = min(best, 1 + max(h(a), h(b)))
        return best

    return h((-1,) * n)


def optimal_dt_size(f: Sequence[int], n: int, force: bool = False) -> int:
    """Minimum number of leaves of a decision tree computing f."""
    _guard("optimal decision-tree size", n, 4, force)
    t = _tt(f, n)

    @lru_cache(maxsize=None)
    def s(rho: tuple) -> int:
        if len({t[z] for z in _points(rho)}) <= 1:
            return 1
        best = None
        for i in range(n):
            if rho[i] < 0:
                v = s(rho[:i] + (0,) + rho[i + 1:]) + s(rho[:i] + (1,) + rho[i + 1:])
                best = v if best is None else min(best, v)
        return best

    return s((-1,) * n)


def optimal_pdt_height(f: Sequence[int], n: int, force: bool = False) -> int:
    """Minimum parity-decision-tree height; states are the point sets reached."""
    _guard("optimal parity-decision-tree height", n, 4, force)
    t = _tt(f, n)

    def dot(a: int, z: int) -> int:
        return bin(a & z).count("1") & 1

    @lru_cache(maxsize=None)
    def h(pts: frozenset) -> int:
        if len({t[z] for z in pts}) <= 1:
            return 0
        best = n
        for a in range(1, 1 << n):
            zero = frozenset(z for z in pts if dot(a, z) == 0)
            if 0 < len(zero) < len(pts):
                best = min(best, 1 + max(h(zero), h(pts - zero)))
        return best

    return h(frozenset(range(1 << n)))


def truth_table(fn: Callable[[tuple], int], n: int) -> tuple:
    return tuple(int(fn(tuple((z >> i) & 1 for i in range(n)))) for z in range(1 << n))


# --- tree evaluation --------------------------------------------------------------
def tree_value(t, value: Callable) -> str:
    """Follow a tree built from objects with ``label`` / ``var`` or ``support`` / ``zero`` / ``one``."""
    while not hasattr(t, "label"):
        vars_ = [t.var] if hasattr(t, "var") else list(t.support)
        b = sum(value(v) for v in vars_) % 2
        t = t.one if b else t.zero
    return t.label


def tree_height(t) -> int:
    if hasattr(t, "label"):
        return 0
    return 1 + max(tree_height(t.zero), tree_height(t.one))


def tree_leaves(t) -> int:
    if hasattr(t, "label"):
        return 1
    return tree_leaves(t.zero) + tree_leaves(t.one)


def tree_computes(t, f: Sequence[int], n: int, var_index: Callable = lambda v: v) -> bool:
    """Does the tree output ``str(f(z))`` on every z?  ``var_index`` maps a tree variable to 0-based i."""
    for z in range(1 << n):
        got = tree_value(t, lambda v: (z >> var_index(v)) & 1)
        if got != str(f[z]):
            return False
    return True


# --- counting ---------------------------------------------------------------------
def count_special_blocks(m: int, N: int, k: int, special: int, groups: int = 1,
                         force: bool = False) -> int:
    """Number of y in ({0,1}^m)^N with at least k blocks equal to ``special`` in every group."""
    _guard("block-family count", 1 << (m * N), 1 << 24, force)
    g = N // groups
    total = 0
    for code in range(1 << (m * N)):
        blocks = [(code >> (m * i)) & ((1 << m) - 1) for i in range(N)]
        if all(sum(1 for b in blocks[s * g:(s + 1) * g] if b == special) >= k for s in range(groups)):
            total += 1
    return total


def special_block_members(m: int, N: int, k: int, special: int, force: bool = False) -> list:
    _guard("block-family listing", 1 << (m * N), 1 << 20, force)
    out = []
    for code in range(1 << (m * N)):
        blocks = [(code >> (m * i)) & ((1 << m) - 1) for i in range(N)]
        if sum(1 for b in blocks if b == special) >= k:
            out.append(code)
    return out


@lru_cache(maxsize=None)
def all_one_histogram(m: int, N: int) -> tuple:
    """hist[t] = number of y in ({0,1}^m)^N with exactly t all-one blocks, by scanning."""
    full = (1 << m) - 1
    hist = [0] * (N + 1)
    for code in range(1 << (m * N)):
        hist[sum(1 for i in range(N) if (code >> (m * i)) & full == full)] += 1
    return tuple(hist)


def tail_fraction(m: int, N: int, K: Fraction, force: bool = False) -> Fraction:
    """Fraction of ({0,1}^m)^N with more than K - 1 all-one blocks, by scanning."""
    _guard("tail scan", 1 << (m * N), 1 << 20, force)
    hist = all_one_histogram(m, N)
    return Fraction(sum(c for t, c in enumerate(hist) if t > K - 1), 1 << (m * N))


def binomial_median_interval(n: int, p: Fraction) -> tuple:
    """All medians of B(n, p) as a sorted tuple, from the exact pmf."""
    q = 1 - p
    pmf = [Fraction(math.comb(n, t)) * p ** t * q ** (n - t) for t in range(n + 1)]
    out = []
    below = Fraction(0)
    for t in range(n + 1):
        at_most = below + pmf[t]
        if at_most >= Fraction(1, 2) and 1 - below >= Fraction(1, 2):
            out.append(t)
        below = at_most
    return tuple(out)


# --- gadget images --------------------------------------------------------------
def ind_value(x: Sequence[int], y: Sequence[Sequence[int]]) -> tuple:
    return tuple(yb[xb] for xb, yb in zip(x, y))


def ip_value(x: Sequence[Sequence[int]], y: Sequence[Sequence[int]]) -> tuple:
    return tuple(sum(a * b for a, b in zip(xb, yb)) % 2 for xb, yb in zip(x, y))


def exhaustive_image(kind: str, X: Iterable, Y: Iterable, drop: Iterable[int] = (),
                     force: bool = False) -> set:
    """Image of the N-fold gadget on X x Y, restricted to blocks outside ``drop``."""
    X, Y = list(X), list(Y)
    _guard("image enumeration", len(X) * len(Y), 1 << 26, force)
    fn = ind_value if kind == "IND" else ip_value
    drop = set(drop)
    out = set()
    for x in X:
        for yv in Y:
            v = fn(x, yv)
            out.add(tuple(b for i, b in enumerate(v) if i not in drop))
    return out


def blocks_of(code: int, width: int, N: int) -> tuple:
    return tuple(tuple((code >> (width * i + j)) & 1 for j in range(width)) for i in range(N))


# --- entropy --------------------------------------------------------------------
def max_projection_count(points: Iterable[Sequence[int]], J: Sequence[int]) -> int:
    c = Counter(tuple(p[j] for j in J) for p in points)
    return max(c.values()) if c else 0


def deficiency(size: int, alphabet: int, N: int) -> float:
    return N * math.log2(alphabet) - math.log2(size)


def projected_deficiency(points: Sequence[Sequence[int]], alphabet: int, keep: Sequence[int]) -> float:
    """D of the projection onto ``keep``: |keep| log2(alphabet) - log2(n / most frequent count)."""
    pts = list(points)
    if not keep:
        return 0.0
    c = max_projection_count(pts, keep)
    return len(keep) * math.log2(alphabet) - math.log2(len(pts) / c)


def potential_bound(points: Sequence[Sequence[int]], m: int, N: int, queried: Sequence[int],
                    spoken: int, tau: Fraction = Fraction(1, 2)) -> bool:
    """Exact ``D(points on unqueried blocks) <= spoken - (1 - tau)|I| log2 m``."""
    pts = list(points)
    keep = [i for i in range(N) if i not in set(queried)]
    c = max_projection_count(pts, keep) if keep else 1
    n = len(pts) if keep else 1
    # m^(|keep|) * c / n <= 2^spoken * m^(-(1-tau)|I|), raised to the denominator of tau
    p, q = tau.numerator, tau.denominator
    return m ** (q * len(keep) + (q - p) * len(queried)) * c ** q <= n ** q * 2 ** (q * spoken)


def violating_sets(points: Sequence[Sequence[int]], m: int, N: int, tau: Fraction,
                   excluded: Iterable[int] = ()) -> list:
    """All nonempty J (outside ``excluded``) whose projection has a value of probability > m^(-tau|J|)."""
    pts = list(points)
    n = len(pts)
    free = [i for i in range(N) if i not in set(excluded)]
    out = []
    for r in range(1, len(free) + 1):
        for J in itertools.combinations(free, r):
            c = max_projection_count(pts, J)
            # c/n > m^(-tau r)  <=>  (c/n)^q > m^(-p r)  <=>  c^q m^(p r) > n^q
            if c ** tau.denominator * m ** (tau.numerator * r) > n ** tau.denominator:
                out.append(J)
    return out


def min_rate(points: Sequence[Sequence[int]], m: int, N: int, excluded: Iterable[int] = ()) -> float:
    """min over nonempty J of log2(n / most frequent count) / (|J| log2 m); 1.0 when no block is free."""
    pts = list(points)
    free = [i for i in range(N) if i not in set(excluded)]
    best = None
    for r in range(1, len(free) + 1):
        for J in itertools.combinations(free, r):
            v = math.log2(len(pts) / max_projection_count(pts, J)) / (r * math.log2(m))
            best = v if best is None else min(best, v)
    return 1.0 if best is None else best


def is_maximal_violation(points, m: int, N: int, tau: Fraction, J: Sequence[int],
                         alpha: Sequence[int], excluded: Iterable[int] = ()) -> bool:
    """J violates with witness alpha and no strictly larger set violates."""
    pts = list(points)
    n = len(pts)
    hit = sum(1 for p in pts if tuple(p[j] for j in J) == tuple(alpha))
    if not hit ** tau.denominator * m ** (tau.numerator * len(J)) > n ** tau.denominator:
        return False
    viol = violating_sets(pts, m, N, tau, excluded)
    return not any(set(J) < set(K) for K in viol)


# --- affine spaces ----------------------------------------------------------------
def affine_points(equations: Iterable, n: int) -> set:
    """Points z in {0,1}^n (tuples, variable 1 first) satisfying every (support, rhs)."""
    eqs = [(tuple(s), r) for s, r in equations]
    _guard("affine point scan", 1 << n, 1 << 20, False)
    out = set()
    for z in itertools.product((0, 1), repeat=n):
        if all(sum(z[v - 1] for v in s) % 2 == r for s, r in eqs):
            out.add(z)
    return out


def covered(C: set, A: set, B: set) -> bool:
    return C <= (A | B)


def first_uncovered(C: set, A: set, B: set) -> Optional[tuple]:
    rest = sorted(C - A - B)
    return rest[0] if rest else None


def cnf_falsified(clauses: Sequence[Sequence[int]], z: Sequence[int]) -> set:
    """1-based ids of clauses falsified by z (z[v-1] is variable v)."""
    out = set()
    for k, c in enumerate(clauses, start=1):
        if all(z[abs(l) - 1] != (1 if l > 0 else 0) for l in c):
            out.add(k)
    return out


__all__ = [
    "OracleGuard", "optimal_dt_height", "optimal_dt_size", "optimal_pdt_height", "truth_table",
    "tree_value", "tree_height", "tree_leaves", "tree_computes", "count_special_blocks",
    "special_block_members", "tail_fraction", "binomial_median_interval", "ind_value", "ip_value",
    "exhaustive_image", "blocks_of", "max_projection_count", "deficiency", "projected_deficiency",
    "potential_bound", "violating_sets", "min_rate", "is_maximal_violation", "affine_points",
    "covered", "first_uncovered", "cnf_falsified",
]
