# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; signatures mirror _pykernels."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t, int32_t

cnp.import_array()

cdef long long DENSE_LIMIT = 16777216


def pattern_member_mask(int m, int N, int64_t pattern, int group_size, int k):
    cdef int64_t total = (<int64_t>1) << (m * N)
    cdef int64_t low = ((<int64_t>1) << m) - 1
    cdef cnp.ndarray[uint8_t, ndim=1] out = np.zeros(total, dtype=np.uint8)
    cdef int64_t y
    cdef int g, i, hits, ngroups = N // group_size
    cdef bint ok
    for y in range(total):
        ok = True
        for g in range(ngroups):
            hits = 0
            for i in range(g * group_size, (g + 1) * group_size):
                if ((y >> (i * m)) & low) == pattern:
                    hits += 1
            if hits < k:
                ok = False
                break
        if ok:
            out[y] = 1
    return out


def projection_max(cnp.ndarray values_in, int64_t alphabet, cnp.ndarray blocks_in):
    cdef cnp.ndarray[int64_t, ndim=2] values = np.ascontiguousarray(values_in, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] blocks = np.ascontiguousarray(blocks_in, dtype=np.int64)
    cdef Py_ssize_t n = values.shape[0], nb = blocks.shape[0], r, t
    if n == 0:
        return 0, 0
    cdef cnp.ndarray[int64_t, ndim=1] codes = np.empty(n, dtype=np.int64)
    cdef int64_t c, space = 1
    for t in range(nb):
        space *= alphabet
    for r in range(n):
        c = 0
        for t in range(nb):
            c = c * alphabet + values[r, blocks[t]]
        codes[r] = c
    cdef cnp.ndarray[int32_t, ndim=1] counts
    cdef int64_t best = 0, arg = 0, run, prev
    if space <= DENSE_LIMIT:
        counts = np.zeros(space, dtype=np.int32)
        for r in range(n):
            counts[codes[r]] += 1
        for c in range(space):
            if counts[c] > best:
                best = counts[c]
                arg = c
        return int(best), int(arg)
    codes.sort()
    run = 0
    prev = codes[0]
    for r in range(n):
        if codes[r] == prev:
            run += 1
        else:
            prev = codes[r]
            run = 1
        if run > best:
            best = run
            arg = prev
    return int(best), int(arg)


def ind_image_mask(cnp.ndarray xs_in, cnp.ndarray ys_in, int m, int N):
    cdef cnp.ndarray[int64_t, ndim=2] xs = np.ascontiguousarray(xs_in, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] ys = np.ascontiguousarray(ys_in, dtype=np.int64)
    cdef cnp.ndarray[uint8_t, ndim=1] out = np.zeros((<int64_t>1) << N, dtype=np.uint8)
    cdef Py_ssize_t p = xs.shape[0], q = ys.shape[0], a, b
    cdef int i
    cdef int64_t code, yv
    cdef int64_t shifts[64]
    for a in range(p):
        for i in range(N):
            shifts[i] = i * m + xs[a, i]
        for b in range(q):
            yv = ys[b]
            code = 0
            for i in range(N):
                code |= ((yv >> shifts[i]) & 1) << i
            out[code] = 1
    return out


def product_image_mask(cnp.ndarray sig0_in, cnp.ndarray sig1_in, int N):
    cdef cnp.ndarray[int64_t, ndim=1] sig0 = np.ascontiguousarray(sig0_in, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] sig1 = np.ascontiguousarray(sig1_in, dtype=np.int64)
    cdef cnp.ndarray[uint8_t, ndim=1] out = np.zeros((<int64_t>1) << N, dtype=np.uint8)
    cdef int64_t full = ((<int64_t>1) << N) - 1
    cdef cnp.ndarray[int64_t, ndim=1] pairs = np.unique((sig0 << N) | sig1)
    cdef Py_ssize_t r
    cdef int64_t s0, s1, forced, free, sub
    for r in range(pairs.shape[0]):
        s0 = pairs[r] >> N
        s1 = pairs[r] & full
        if (s0 | s1) != full:
            continue
        forced = s1 & ~s0
        free = s0 & s1
        sub = free
        while True:
            out[forced | sub] = 1
            if sub == 0:
                break
            sub = (sub - 1) & free
    return out
