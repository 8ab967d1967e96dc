import random

import pytest
from hypothesis import given, settings, strategies as st

from liftlab import f2_linalg as fl
from liftlab.errors import Inconsistent, IncompleteAssignment, SpanViolation
from liftlab.f2_linalg import AffineSystem, CoordSpace, ParityEq, VarSpace, xbit, y


def test_coordinate_numbering_is_lexicographic():
    sp = CoordSpace(2, 4, 2)
    coords = [sp.coord(i) for i in range(sp.size)]
    assert coords == sorted(coords)
    assert sp.index(y(1, 3)) == 7
    assert sp.index(xbit(0, 1)) == 9
    assert all(sp.index(c) == i for i, c in enumerate(coords))


def test_parse_and_print_coordinates():
    assert str(y(0, 2)) == "y0:2"
    assert fl.parse_coord("x1:0") == xbit(1, 0)
    with pytest.raises(ValueError):
        fl.parse_coord("z1:0")


def test_parity_eq_cancels_repeats():
    eq = ParityEq.of([y(0, 1), y(0, 2), y(0, 1)], 3)
    assert eq.support == frozenset({y(0, 2)}) and eq.rhs == 1


def test_row_reduce_picks_lowest_residual_pivot_and_keeps_identity():
    sp = CoordSpace(1, 4)
    E = AffineSystem(sp)
    E, p = E.row_reduce(ParityEq.of([y(0, 2), y(0, 3)], 1))
    assert p == y(0, 2)
    E, p = E.row_reduce(ParityEq.of([y(0, 2), y(0, 1)], 0))
    assert p == y(0, 1)
    E.check_invariants()
    assert E.in_span([y(0, 1), y(0, 3)]) == 1
    assert E.in_span([y(0, 0)]) is None


def test_span_and_inconsistency_errors():
    sp = CoordSpace(1, 2)
    E = fl.from_equations(sp, [ParityEq.of([y(0, 0)], 1)])
    with pytest.raises(SpanViolation):
        E.row_reduce(ParityEq.of([y(0, 0)], 1))
    with pytest.raises(Inconsistent):
        E.row_reduce(ParityEq.of([y(0, 0)], 0))


def test_unique_extension_and_incomplete_assignment():
    sp = CoordSpace(1, 4)
    E = fl.from_equations(sp, [ParityEq.of([y(0, 0), y(0, 1), y(0, 3)], 1)])
    ext = E.unique_extension({y(0, 1): 1, y(0, 3): 1, y(0, 2): 0})
    assert ext == {y(0, 0): 1}
    with pytest.raises(IncompleteAssignment):
        E.unique_extension({y(0, 1): 1})


def test_solution_count_and_rank():
    sp = VarSpace(5)
    E = fl.from_equations(sp, [ParityEq.of([1, 2], 0), ParityEq.of([2, 3], 1)])
    assert E.solution_count(range(1, 6)) == 8
    assert fl.rank([0b011, 0b110, 0b101]) == 2


def _solutions(rows, n):
    out = set()
    for v in range(1 << n):
        if all(bin(r & v).count("1") % 2 == b for r, b in rows):
            out.add(v)
    return out


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_row_reduced_system_has_the_raw_solution_set(data):
    n = data.draw(st.integers(1, 10))
    k = data.draw(st.integers(0, 8))
    raw = [(data.draw(st.integers(1, (1 << n) - 1)), data.draw(st.integers(0, 1))) for _ in range(k)]
    E = AffineSystem(VarSpace(n))
    kept = []
    for r, b in raw:
        try:
            E, _ = E.insert_mask(r, b)
            kept.append((r, b))
        except SpanViolation:
            kept.append((r, b))
        except Inconsistent:
            pass
        E.check_invariants()
    assert _solutions(E.rows, n) == _solutions(kept, n)


def test_extension_satisfies_system_random():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(2, 12)
        E = AffineSystem(VarSpace(n))
        for _ in range(rng.randint(1, n)):
            try:
                E, _ = E.insert_mask(rng.randrange(1, 1 << n), rng.randint(0, 1))
            except (SpanViolation, Inconsistent):
                pass
        free = ((1 << n) - 1) & ~E.pivot_mask
        vals = rng.randrange(1 << n) & free
        assert E.satisfied_by(vals | E.extend_mask(vals, free))
