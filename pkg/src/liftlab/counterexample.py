"""Low-deficiency, high-rate y-sets whose gadget image misses a full sub-cube.

The family keeps every y with at least k = floor(K) "special" blocks in
each of Delta groups of N/Delta consecutive blocks.  A special block is
all-ones for IND (every pointer reads 1) and all-zeros for IP (every
inner product is 0), so the forbidden output is all-0 for IND and all-1
for IP.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

import numpy as np

from . import _guard, _kernels, entropy, gadgets
from .errors import ParamViolation

EXHAUSTIVE_BIT_LIMIT = 24
CROSS_CHECK_PAIR_LIMIT = 1 << 28


def as_fraction(value) -> Fraction:
    """Accept ints, Fractions and ``"p/q"`` strings."""
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


@dataclass(frozen=True)
class CounterexampleParams:
    m: int
    N: int
    K: Fraction
    delta: int = 1
    gadget: str = "IND"

    def __post_init__(self):
        object.__setattr__(self, "K", as_fraction(self.K))
        object.__setattr__(self, "gadget", self.gadget.upper())

    @property
    def k(self) -> int:
        return math.floor(self.K)

    @property
    def max_dropped(self) -> int:
        """Largest |I| allowed: floor((K-1)*Delta)."""
        return math.floor((self.K - 1) * self.delta)

    def validate(self) -> None:
        if self.gadget not in ("IND", "IP"):
            raise ParamViolation(f"gadget must be IND or IP, got {self.gadget}")
        if self.m < 1 or (self.gadget == "IND" and self.m < 2):
            raise ParamViolation(f"gadget size {self.m} too small")
        if self.K < 1:
            raise ParamViolation(f"K >= 1 fails: K = {self.K}")
        if self.delta < 1:
            raise ParamViolation(f"Delta >= 1 fails: Delta = {self.delta}")
        if self.N % self.delta:
            padded = -(-self.N // self.delta) * self.delta
            raise ParamViolation(
                f"Delta | N fails: {self.delta} does not divide {self.N} (try N = {padded})")
        if (1 << self.m) * self.K * self.delta > self.N:
            raise ParamViolation(
                f"2^m <= N/(K*Delta) fails: 2^{self.m} = {1 << self.m} > "
                f"{self.N}/({self.K}*{self.delta}) = {Fraction(self.N) / (self.K * self.delta)}")


class BlockFamily:
    """Bob's side: a symbolic threshold family or an explicit list of packed y's."""

    def __init__(self, N: int, m: int, *, groups=None, k: int = 0, pattern: int = 0,
                 explicit: Optional[np.ndarray] = None):
        self.N = N
        self.m = m
        self.groups = tuple(tuple(g) for g in groups) if groups is not None else None
        self.k = k
        self.pattern = pattern
        self._explicit = None if explicit is None else np.unique(np.asarray(explicit, dtype=np.int64))
        self._cache: Optional[np.ndarray] = None

    @classmethod
    def symbolic(cls, N: int, m: int, delta: int, k: int, pattern: int) -> "BlockFamily":
        size = N // delta
        groups = [range(g * size, (g + 1) * size) for g in range(delta)]
        return cls(N, m, groups=groups, k=k, pattern=pattern)

    @classmethod
    def explicit(cls, N: int, m: int, ys) -> "BlockFamily":
        packed = [y if isinstance(y, (int, np.integer)) else gadgets.pack(y, m) for y in ys]
        return cls(N, m, explicit=np.array(packed, dtype=np.int64))

    @classmethod
    def full(cls, N: int, m: int) -> "BlockFamily":
        return cls(N, m, explicit=np.arange(1 << (m * N), dtype=np.int64))

    @property
    def is_symbolic(self) -> bool:
        return self._explicit is None

    def __repr__(self) -> str:
        if self.is_symbolic:
            return (f"BlockFamily(N={self.N}, m={self.m}, groups={len(self.groups)}, "
                    f"k={self.k}, pattern={self.pattern:#x})")
        return f"BlockFamily(N={self.N}, m={self.m}, explicit={len(self._explicit)})"

    def special_counts(self, y: int) -> list[int]:
        low = (1 << self.m) - 1
        return [sum(((y >> (i * self.m)) & low) == self.pattern for i in g) for g in self.groups]

    def __contains__(self, y) -> bool:
        if not isinstance(y, (int, np.integer)):
            y = gadgets.pack(y, self.m)
        y = int(y)
        if not self.is_symbolic:
            idx = np.searchsorted(self._explicit, y)
            return bool(idx < len(self._explicit) and self._explicit[idx] == y)
        return all(c >= self.k for c in self.special_counts(y))

    def cardinality(self) -> int:
        """Exact size; symbolic families use the binomial tail per group."""
        if not self.is_symbolic:
            return len(self._explicit)
        q = (1 << self.m) - 1
        total = 1
        for g in self.groups:
            n = len(g)
            total *= sum(comb(n, t) * q ** (n - t) for t in range(self.k, n + 1))
        return total

    def packed(self, force: bool = False) -> np.ndarray:
        """All members as packed ints in increasing order."""
        if not self.is_symbolic:
            return self._explicit
        if self._cache is None:
            _guard.check("exhaustive y-scan (bits)", self.m * self.N, EXHAUSTIVE_BIT_LIMIT, force)
            sizes = {len(g) for g in self.groups}
            if len(sizes) != 1:
                raise ValueError("groups must have equal sizes")
            mask = _kernels.pattern_member_mask(self.m, self.N, self.pattern, sizes.pop(), self.k)
            self._cache = np.flatnonzero(mask).astype(np.int64)
        return self._cache

    def __len__(self) -> int:
        return self.cardinality()

    def __iter__(self):
        for y in self.packed().tolist():
            yield gadgets.unpack(y, self.m, self.N)

    def as_pointer_set(self) -> entropy.PointerSet:
        """Members as vectors over the block alphabet of size 2^m."""
        ys = self.packed()
        low = (1 << self.m) - 1
        cols = [(ys >> (i * self.m)) & low for i in range(self.N)]
        arr = np.stack(cols, axis=1) if cols else np.zeros((len(ys), 0), dtype=np.int64)
        return entropy.PointerSet(self.N, 1 << self.m, np.ascontiguousarray(arr), _trusted=True)


def special_pattern(params: CounterexampleParams) -> int:
    return (1 << params.m) - 1 if params.gadget == "IND" else 0


def forbidden_output(params: CounterexampleParams) -> int:
    return 0 if params.gadget == "IND" else (1 << params.N) - 1


def build(params: CounterexampleParams) -> BlockFamily:
    params.validate()
    return BlockFamily.symbolic(params.N, params.m, params.delta, params.k, special_pattern(params))


@dataclass
class VerificationReport:
    params: CounterexampleParams
    size: int
    closed_form: Optional[int]
    deficiency: float
    deficiency_ok: bool
    rate: float
    rate_bound: Fraction
    rate_strict: bool
    rate_ok: bool
    rate_equality_sets: list
    forbidden: tuple
    sets_checked: int
    image_ok: bool
    image_failure: Optional[tuple]
    image_routes_agree: Optional[bool]
    special_ok: bool
    special_witness: Optional[tuple]
    implication_ok: bool
    notes: list = field(default_factory=list)

    @property
    def cardinality_ok(self) -> bool:
        return self.closed_form is None or self.closed_form == self.size

    @property
    def passed(self) -> bool:
        return (self.cardinality_ok and self.deficiency_ok and self.rate_ok and self.image_ok
                and self.special_ok and self.implication_ok
                and self.image_routes_agree is not False)

    def items(self) -> list[tuple[str, object]]:
        p = self.params
        return [
            ("gadget", p.gadget.lower()), ("m", p.m), ("N", p.N), ("K", p.K),
            ("delta", p.delta), ("k", p.k),
            ("size", self.size),
            ("closed_form", self.closed_form if self.closed_form is not None else "n/a"),
            ("cardinality_ok", self.cardinality_ok),
            ("deficiency", f"{self.deficiency:.6f}"),
            ("deficiency_ok", self.deficiency_ok),
            ("rate", f"{self.rate:.6f}"),
            ("rate_bound", f"{'>' if self.rate_strict else '>='}{self.rate_bound}"),
            ("rate_ok", self.rate_ok),
            ("rate_equality_sets", len(self.rate_equality_sets)),
            ("forbidden", "".join(map(str, self.forbidden))),
            ("sets_checked", self.sets_checked),
            ("image_ok", self.image_ok),
            ("image_routes_agree", "n/a" if self.image_routes_agree is None else self.image_routes_agree),
            ("special_ok", self.special_ok),
            ("special_witness", "none" if self.special_witness is None else
             " ".join("".join(map(str, b)) for b in self.special_witness)),
            ("implication_ok", self.implication_ok),
            ("passed", self.passed),
        ]


def _subsets_up_to(N: int, size: int):
    import itertools
    for s in range(0, min(size, N) + 1):
        yield from itertools.combinations(range(N), s)


def verify(params: CounterexampleParams, family: BlockFamily, force: bool = False,
           cross_check: bool = True) -> VerificationReport:
    """Exhaustively check the four properties of the family; failures are reported, not raised."""
    _guard.check("exhaustive y-scan (bits)", params.m * params.N, EXHAUSTIVE_BIT_LIMIT, force)
    g = gadgets.GadgetSpec(params.gadget, params.m, params.N)
    ys = family.packed(force=force)
    size = len(ys)
    bits = params.m * params.N
    closed = family.cardinality() if family.is_symbolic else None

    defic = bits - math.log2(size) if size else math.inf
    defic_ok = size > 0 and entropy.deficiency_at_most(size, bits, params.delta)

    bound = 1 - Fraction(1, params.m)
    strict = params.gadget == "IP"
    S = family.as_pointer_set()
    if size:
        rate = entropy.min_entropy_rate(S, force=force).rate
        rate_ok = entropy.rate_at_least(S, bound, strict=strict, force=force)
        equalities = entropy.rate_equalities(S, bound, force=force)
    else:
        rate, rate_ok, equalities = 0.0, False, []

    target = forbidden_output(params)
    mask = gadgets.image_mask(g, None, family, force=force)
    routes = None
    if cross_check and params.gadget == "IND" and (params.m ** params.N) * size <= CROSS_CHECK_PAIR_LIMIT:
        X = entropy.PointerSet.full(params.N, params.m)
        routes = bool(np.array_equal(mask, gadgets.image_mask(g, X, family, force=force)))
    checked = 0
    failure = None
    for I in _subsets_up_to(params.N, params.max_dropped):
        checked += 1
        if failure is None and gadgets.image_hits(mask, params.N, I, target):
            failure = I
    image_ok = failure is None and size > 0

    low = (1 << params.m) - 1
    pattern = special_pattern(params)
    special = np.zeros(ys.shape, dtype=np.int64)
    for i in range(params.N):
        special += ((ys >> (i * params.m)) & low) == pattern
    threshold = (params.K - 1) * params.delta
    bad = np.flatnonzero(special <= threshold) if size else np.array([], dtype=np.int64)
    witness = None
    if len(bad):
        witness = tuple(gadgets.unpack_block(int(b), params.m)
                        for b in gadgets.unpack(int(ys[bad[0]]), params.m, params.N))
    special_ok = witness is None and size > 0

    return VerificationReport(
        params=params, size=size, closed_form=closed,
        deficiency=defic, deficiency_ok=defic_ok,
        rate=rate, rate_bound=bound, rate_strict=strict, rate_ok=rate_ok,
        rate_equality_sets=equalities,
        forbidden=gadgets.bits_of(target, params.N),
        sets_checked=checked, image_ok=image_ok, image_failure=failure,
        image_routes_agree=routes,
        special_ok=special_ok, special_witness=witness,
        implication_ok=(not special_ok) or image_ok,
    )


def binomial_pmf(n: int, p: Fraction) -> list[Fraction]:
    p = Fraction(p)
    return [comb(n, t) * p ** t * (1 - p) ** (n - t) for t in range(n + 1)]


def binomial_medians(n: int, p) -> list[int]:
    """All integers t with P[X <= t] >= 1/2 and P[X >= t] >= 1/2."""
    pmf = binomial_pmf(n, Fraction(p))
    out = []
    below = Fraction(0)
    for t in range(n + 1):
        below += pmf[t]
        above = 1 - below + pmf[t]
        if below >= Fraction(1, 2) and above >= Fraction(1, 2):
            out.append(t)
    return out


def binomial_median_check(n: int, p) -> tuple[bool, int]:
    """Whether every median of B(n, p) lies in [floor(np), ceil(np)]; also the smallest median."""
    if n > 64:
        raise ParamViolation("n <= 64 required")
    p = as_fraction(p)
    medians = binomial_medians(n, p)
    lo, hi = math.floor(n * p), math.ceil(n * p)
    return all(lo <= t <= hi for t in medians), medians[0]


def majority_fraction_check(m: int, N: int, K) -> Fraction:
    """Exact fraction of ({0,1}^m)^N with more than K-1 all-one blocks."""
    K = as_fraction(K)
    if (1 << m) * K > N:
        raise ParamViolation(f"2^m <= N/K fails: {1 << m} > {Fraction(N) / K}")
    k = math.floor(K)
    pmf = binomial_pmf(N, Fraction(1, 1 << m))
    return sum(pmf[k:], Fraction(0))
