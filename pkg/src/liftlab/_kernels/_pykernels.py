"""Numpy implementations of the hot kernels (fallback when the C core is not built)."""

from __future__ import annotations

import numpy as np

_DENSE_LIMIT = 1 << 24


def pattern_member_mask(m: int, N: int, pattern: int, group_size: int, k: int) -> np.ndarray:
    """Membership of every packed y in [0, 2^(mN)) in the threshold family.

    Block i of y occupies bits [i*m, (i+1)*m).  y is a member iff every
    consecutive group of ``group_size`` blocks holds at least ``k`` blocks
    equal to ``pattern``.
    """
    ys = np.arange(1 << (m * N), dtype=np.int64)
    low = (1 << m) - 1
    member = np.ones(ys.shape, dtype=bool)
    for g in range(N // group_size):
        hits = np.zeros(ys.shape, dtype=np.int32)
        for i in range(g * group_size, (g + 1) * group_size):
            hits += ((ys >> (i * m)) & low) == pattern
        member &= hits >= k
    return member.astype(np.uint8)


def _codes(values: np.ndarray, alphabet: int, blocks: np.ndarray) -> np.ndarray:
    codes = np.zeros(values.shape[0], dtype=np.int64)
    for b in blocks:
        codes = codes * alphabet + values[:, b]
    return codes


def projection_max(values: np.ndarray, alphabet: int, blocks: np.ndarray) -> tuple[int, int]:
    """Largest multiplicity of a projected row and the smallest code attaining it.

    The code of a projection reads ``blocks`` most-significant first in
    base ``alphabet``, so code order is lexicographic order.
    """
    if values.shape[0] == 0:
        return 0, 0
    codes = _codes(values, alphabet, blocks)
    if alphabet ** len(blocks) <= _DENSE_LIMIT:
        counts = np.bincount(codes)
        arg = int(np.argmax(counts))
        return int(counts[arg]), arg
    uniq, counts = np.unique(codes, return_counts=True)
    arg = int(np.argmax(counts))
    return int(counts[arg]), int(uniq[arg])


def ind_image_mask(xs: np.ndarray, ys: np.ndarray, m: int, N: int) -> np.ndarray:
    """Indicator over {0,1}^N (bit i = block i) of IND outputs on xs x ys."""
    out = np.zeros(1 << N, dtype=np.uint8)
    if xs.shape[0] == 0 or ys.shape[0] == 0:
        return out
    for row in xs:
        codes = np.zeros(ys.shape[0], dtype=np.int64)
        for i in range(N):
            codes |= ((ys >> (i * m + int(row[i]))) & 1) << i
        out[codes] = 1
    return out


def product_image_mask(sig0: np.ndarray, sig1: np.ndarray, N: int) -> np.ndarray:
    """Union over rows r of the product set {c : c_i=0 allowed by sig0, c_i=1 by sig1}."""
    out = np.zeros(1 << N, dtype=np.uint8)
    full = (1 << N) - 1
    pairs = np.unique((sig0.astype(np.int64) << N) | sig1.astype(np.int64))
    for pair in pairs.tolist():
        s0, s1 = pair >> N, pair & full
        if (s0 | s1) != full:
            continue
        forced = s1 & ~s0
        subs = np.zeros(1, dtype=np.int64)
        free = s0 & s1
        while free:
            low = free & -free
            subs = np.concatenate([subs, subs | low])
            free ^= low
        out[subs | forced] = 1
    return out
