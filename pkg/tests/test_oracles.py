from fractions import Fraction

import pytest

from liftlab import oracles

XOR3 = oracles.truth_table(lambda z: z[0] ^ z[1] ^ z[2], 3)
AND2 = oracles.truth_table(lambda z: z[0] & z[1], 2)


def test_optimal_heights():
    assert oracles.optimal_dt_height(AND2, 2) == 2
    assert oracles.optimal_dt_height(XOR3, 3) == 3
    assert oracles.optimal_dt_height((1,) * 8, 3) == 0
    assert oracles.optimal_pdt_height(XOR3, 3) == 1
    assert oracles.optimal_pdt_height(AND2, 2) == 2
    assert oracles.optimal_pdt_height((0,) * 4, 2) == 0


def test_optimal_sizes():
    assert oracles.optimal_dt_size(XOR3, 3) == 8
    assert oracles.optimal_dt_size(AND2, 2) == 3


def test_guards():
    with pytest.raises(oracles.OracleGuard):
        oracles.optimal_dt_height((0,) * 64, 6)
    with pytest.raises(oracles.OracleGuard):
        oracles.optimal_pdt_height((0,) * 32, 5)


def test_counts_and_entropy():
    assert oracles.count_special_blocks(2, 8, 2, 3) == 41479
    assert oracles.deficiency(16, 4, 2) == 0
    assert oracles.min_rate([(2, b) for b in range(4)], 4, 2) == 0.0


def test_medians():
    assert oracles.binomial_median_interval(8, Fraction(1, 4)) == (2,)
    assert oracles.binomial_median_interval(1, Fraction(1, 2)) == (0, 1)


def test_oracles_do_not_import_liftlab_modules():
    import inspect
    src = inspect.getsource(oracles)
    assert "from ." not in src and "import liftlab" not in src
