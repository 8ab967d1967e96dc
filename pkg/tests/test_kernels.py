import numpy as np
import pytest

from liftlab import _kernels

BACKENDS = _kernels.backends()


def test_python_backend_always_present():
    assert "python" in BACKENDS
    assert _kernels.BACKEND in BACKENDS


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_pattern_member_mask_counts(name):
    k = BACKENDS[name]
    mask = k.pattern_member_mask(2, 8, 3, 8, 2)
    assert int(mask.sum()) == 41479
    mask = k.pattern_member_mask(2, 4, 0, 2, 1)
    assert int(mask.sum()) == (16 - 9) ** 2


def _rand_values(rng, n, N, a):
    return rng.integers(0, a, size=(n, N), dtype=np.int64)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
def test_backends_agree_on_random_inputs():
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    rng = np.random.default_rng(3)
    for _ in range(30):
        N = int(rng.integers(1, 5))
        a = int(rng.integers(2, 6))
        vals = np.unique(_rand_values(rng, int(rng.integers(1, 60)), N, a), axis=0)
        blocks = np.array(sorted(rng.choice(N, size=int(rng.integers(1, N + 1)), replace=False)), dtype=np.int64)
        assert py.projection_max(vals, a, blocks) == cy.projection_max(vals, a, blocks)
        m = 2
        xs = _rand_values(rng, 5, N, m)
        ys = rng.integers(0, 1 << (m * N), size=7, dtype=np.int64)
        assert np.array_equal(py.ind_image_mask(xs, ys, m, N), cy.ind_image_mask(xs, ys, m, N))
        s0 = rng.integers(0, 1 << N, size=6, dtype=np.int64)
        s1 = rng.integers(0, 1 << N, size=6, dtype=np.int64)
        assert np.array_equal(py.product_image_mask(s0, s1, N), cy.product_image_mask(s0, s1, N))
    for args in [(2, 6, 3, 3, 1), (3, 4, 0, 4, 2), (1, 10, 1, 5, 3)]:
        assert np.array_equal(py.pattern_member_mask(*args), cy.pattern_member_mask(*args))


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_projection_max_picks_smallest_argmax(name):
    vals = np.array([[1, 0], [0, 1], [1, 1], [0, 0]], dtype=np.int64)
    assert BACKENDS[name].projection_max(vals, 2, np.array([0], dtype=np.int64)) == (2, 0)
