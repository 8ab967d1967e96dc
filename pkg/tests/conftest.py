from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


def read_fixture(*parts: str) -> str:
    return FIXTURES.joinpath(*parts).read_text()


def canonical_pdt(dt, m: int):
    """PDT over coordinates: read the pointer bits of block i, then the pointed y."""
    from liftlab.f2_linalg import xbit, y
    from liftlab.trees import Leaf, Query

    ell = m.bit_length() - 1
    if isinstance(dt, Leaf):
        return dt
    i = dt.var

    def rec(t: int, pre: int):
        if t == ell:
            return Query(y(i, pre), canonical_pdt(dt.zero, m), canonical_pdt(dt.one, m))
        return Query(xbit(i, t), rec(t + 1, pre), rec(t + 1, pre | (1 << t)))

    return rec(0, 0)


BASE_FUNCTIONS = {
    "z1": (1, lambda z: z[0]),
    "and2": (2, lambda z: z[0] & z[1]),
    "or2": (2, lambda z: z[0] | z[1]),
    "xor2": (2, lambda z: z[0] ^ z[1]),
    "xor3": (3, lambda z: z[0] ^ z[1] ^ z[2]),
}
