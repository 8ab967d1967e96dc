"""GF(2) affine systems kept in row-reduced form.

Rows are Python ints used as bitsets over a dense coordinate numbering
fixed by a coordinate space.  Each row owns one pivot (dependent)
coordinate that appears in no other row, so the coefficient matrix
restricted to the pivots is an identity up to row order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from .errors import IncompleteAssignment, Inconsistent, SpanViolation

Y_SIDE = 0
X_SIDE = 1


class Coord(NamedTuple):
    """A coordinate: ``side`` 0 is a y-coordinate (i, j), side 1 an x-bit (i, t)."""

    side: int
    block: int
    position: int

    def __str__(self) -> str:
        tag = "y" if self.side == Y_SIDE else "x"
        return f"{tag}{self.block}:{self.position}"


def y(i: int, j: int) -> Coord:
    return Coord(Y_SIDE, i, j)


def xbit(i: int, t: int) -> Coord:
    return Coord(X_SIDE, i, t)


def parse_coord(text: str) -> Coord:
    """Inverse of ``str(Coord)``; a bare ``i:j`` is read as a y-coordinate."""
    side = Y_SIDE
    if text[0] in "xy":
        side = Y_SIDE if text[0] == "y" else X_SIDE
        text = text[1:]
    i, j = text.split(":")
    return Coord(side, int(i), int(j))


@dataclass(frozen=True)
class CoordSpace:
    """Dense numbering: y-coordinates block-major, then x-bits block-major.

    Bit order therefore agrees with the lexicographic order on
    ``(side, block, position)``.
    """

    N: int
    m: int
    ell: int = 0

    @property
    def size(self) -> int:
        return self.N * (self.m + self.ell)

    def index(self, c: Coord) -> int:
        side, i, j = c
        if not 0 <= i < self.N:
            raise ValueError(f"block {i} out of range for N={self.N}")
        if side == Y_SIDE:
            if not 0 <= j < self.m:
                raise ValueError(f"position {j} out of range for m={self.m}")
            return i * self.m + j
        if not 0 <= j < self.ell:
            raise ValueError(f"x-bit {j} out of range for ell={self.ell}")
        return self.N * self.m + i * self.ell + j

    def coord(self, idx: int) -> Coord:
        ny = self.N * self.m
        if idx < ny:
            return Coord(Y_SIDE, idx // self.m, idx % self.m)
        idx -= ny
        return Coord(X_SIDE, idx // self.ell, idx % self.ell)

    def mask(self, coords: Iterable[Coord]) -> int:
        out = 0
        for c in coords:
            out ^= 1 << self.index(c)
        return out

    def coords(self, mask: int) -> tuple:
        return tuple(self.coord(i) for i in bits(mask))


@dataclass(frozen=True)
class VarSpace:
    """Numbering for plain 1-based variables (DIMACS style)."""

    n: int

    @property
    def size(self) -> int:
        return self.n

    def index(self, v: int) -> int:
        if not 1 <= v <= self.n:
            raise ValueError(f"variable {v} out of range 1..{self.n}")
        return v - 1

    def coord(self, idx: int) -> int:
        return idx + 1

    def mask(self, vs: Iterable[int]) -> int:
        out = 0
        for v in vs:
            out ^= 1 << self.index(v)
        return out

    def coords(self, mask: int) -> tuple:
        return tuple(i + 1 for i in bits(mask))


def bits(mask: int):
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def parity(mask: int) -> int:
    return bin(mask).count("1") & 1


@dataclass(frozen=True)
class ParityEq:
    """The equation ``XOR of support = rhs``."""

    support: frozenset
    rhs: int

    @classmethod
    def of(cls, coords: Iterable, rhs: int) -> "ParityEq":
        """Build from a coordinate list, cancelling repeated coordinates."""
        sup: set = set()
        for c in coords:
            sup ^= {c}
        return cls(frozenset(sup), rhs & 1)


class AffineSystem:
    """An immutable, consistent, fully row-reduced system of GF(2) equations."""

    __slots__ = ("space", "_rows", "_pivots")

    def __init__(self, space, rows: Sequence[tuple[int, int]] = (), pivots: Sequence[int] = ()):
        self.space = space
        self._rows = tuple(rows)
        self._pivots = tuple(pivots)

    # --- views -----------------------------------------------------------
    @property
    def codim(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[tuple[int, int], ...]:
        """Coefficient rows as ``(mask, rhs)`` in insertion order."""
        return self._rows

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._pivots

    @property
    def pivot_mask(self) -> int:
        out = 0
        for p in self._pivots:
            out |= 1 << p
        return out

    @property
    def dependents(self) -> tuple:
        return tuple(self.space.coord(p) for p in self._pivots)

    @property
    def equations(self) -> tuple[ParityEq, ...]:
        return tuple(ParityEq(frozenset(self.space.coords(r)), b) for r, b in self._rows)

    def support_mask(self) -> int:
        out = 0
        for r, _ in self._rows:
            out |= r
        return out

    def __repr__(self) -> str:
        eqs = ", ".join(
            "+".join(str(c) for c in self.space.coords(r)) + f"={b}" for r, b in self._rows
        )
        return f"AffineSystem({eqs})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffineSystem):
            return NotImplemented
        return self.space == other.space and self._rows == other._rows and self._pivots == other._pivots

    def __hash__(self) -> int:
        return hash((self._rows, self._pivots))

    # --- core operations on masks ----------------------------------------
    def reduce_mask(self, mask: int, rhs: int = 0) -> tuple[int, int]:
        """Eliminate every pivot from ``mask``; returns the residual row and rhs."""
        for (r, b), p in zip(self._rows, self._pivots):
            if (mask >> p) & 1:
                mask ^= r
                rhs ^= b
        return mask, rhs

    def in_span_mask(self, mask: int) -> Optional[int]:
        residual, value = self.reduce_mask(mask)
        return value if residual == 0 else None

    def insert_mask(self, mask: int, rhs: int) -> tuple["AffineSystem", int]:
        residual, value = self.reduce_mask(mask, rhs & 1)
        if residual == 0:
            if value:
                raise Inconsistent("equation contradicts the system")
            raise SpanViolation("equation lies in the span of the system")
        pivot = (residual & -residual).bit_length() - 1
        rows = []
        for r, b in self._rows:
            if (r >> pivot) & 1:
                r ^= residual
                b ^= value
            rows.append((r, b))
        rows.append((residual, value))
        return AffineSystem(self.space, rows, self._pivots + (pivot,)), pivot

    def extend_mask(self, free_values: int, free_known: int) -> int:
        """Values of the pivots given free-coordinate values, as a pivot bitmask.

        ``free_known`` marks which free coordinates are assigned; a row
        needing an unassigned coordinate raises IncompleteAssignment.
        """
        out = 0
        for (r, b), p in zip(self._rows, self._pivots):
            rest = r & ~(1 << p)
            if rest & ~free_known:
                missing = self.space.coords(rest & ~free_known)
                raise IncompleteAssignment(f"free coordinates {missing} are unassigned")
            if b ^ parity(rest & free_values):
                out |= 1 << p
        return out

    def satisfied_by(self, values: int) -> bool:
        return all(parity(r & values) == b for r, b in self._rows)

    def check_invariants(self) -> None:
        """Assert the identity-submatrix property on the pivot columns."""
        assert len(self._rows) == len(self._pivots)
        assert len(set(self._pivots)) == len(self._pivots)
        for k, (r, _) in enumerate(self._rows):
            for k2, p in enumerate(self._pivots):
                assert ((r >> p) & 1) == (1 if k == k2 else 0), "pivot column is not a unit vector"

    # --- coordinate-level API --------------------------------------------
    def in_span(self, support: Iterable) -> Optional[int]:
        return self.in_span_mask(self.space.mask(support))

    def row_reduce(self, eq: ParityEq) -> tuple["AffineSystem", object]:
        new, pivot = self.insert_mask(self.space.mask(eq.support), eq.rhs)
        return new, self.space.coord(pivot)

    def unique_extension(self, free_assignment: Mapping) -> dict:
        dep = self.pivot_mask
        values = 0
        known = 0
        for c, v in free_assignment.items():
            idx = self.space.index(c)
            if (dep >> idx) & 1:
                continue
            known |= 1 << idx
            if v:
                values |= 1 << idx
        out_mask = self.extend_mask(values, known)
        return {self.space.coord(p): (out_mask >> p) & 1 for p in self._pivots}

    def solution_count(self, universe: Iterable) -> int:
        umask = self.space.mask(set(universe))
        if self.support_mask() & ~umask:
            raise ValueError("universe does not cover the coordinates of the system")
        return 1 << (bin(umask).count("1") - self.codim)


def empty(space) -> AffineSystem:
    return AffineSystem(space)


def from_equations(space, eqs: Iterable[ParityEq]) -> AffineSystem:
    sys_ = AffineSystem(space)
    for e in eqs:
        sys_, _ = sys_.row_reduce(e)
    return sys_


def in_span(sys_: AffineSystem, support: Iterable) -> Optional[int]:
    """Forced value of the parity over ``support``, or None when not in the span."""
    return sys_.in_span(support)


def row_reduce(sys_: AffineSystem, eq: ParityEq) -> tuple[AffineSystem, object]:
    return sys_.row_reduce(eq)


def unique_extension(sys_: AffineSystem, free_assignment: Mapping) -> dict:
    return sys_.unique_extension(free_assignment)


def solution_count(sys_: AffineSystem, universe: Iterable) -> int:
    return sys_.solution_count(universe)


def rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of integer bitset rows."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return len(basis)
