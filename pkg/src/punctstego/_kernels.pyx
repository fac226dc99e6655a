# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: coset-table enumeration and BCH decoding.

Bit-exact twins of the functions in ``_kernels_py``; limited to code
length n <= 63 (words packed into uint64).
"""

import numpy as np

BACKEND_NAME = "cython"

ctypedef unsigned long long u64
ctypedef long long i64


cdef inline u64 _gosper_next(u64 u):
    cdef u64 c = u & (~u + 1)
    cdef u64 r = u + c
    return (((r ^ u) >> 2) / c) | r


cdef inline int _lowbit(u64 x):
    cdef int b = 0
    while not (x & 1):
        x >>= 1
        b += 1
    return b


def build_coset_table(u64[::1] col_synd_rev, int n, int r):
    """See _kernels_py.build_coset_table."""
    if n > 63:
        raise ValueError("compiled kernel supports n <= 63")
    cdef Py_ssize_t size = (<Py_ssize_t>1) << r
    leaders_np = np.zeros(size, dtype=np.uint64)
    weights_np = np.full(size, -1, dtype=np.int8)
    cdef u64[::1] leaders = leaders_np
    cdef signed char[::1] weights = weights_np
    cdef u64 u, top, t, s, v, c
    cdef int w, b
    cdef Py_ssize_t filled = 1
    weights[0] = 0
    top = (<u64>1) << n
    for w in range(1, n + 1):
        if filled == size:
            break
        u = ((<u64>1) << w) - 1
        while u < top:
            s = 0
            v = 0
            t = u
            while t:
                c = t & (~t + 1)
                b = _lowbit(c)
                s ^= col_synd_rev[b]
                v |= (<u64>1) << (n - 1 - b)
                t &= t - 1
            if weights[s] < 0:
                weights[s] = <signed char>w
                leaders[s] = v
                filled += 1
                if filled == size:
                    break
            u = _gosper_next(u)
    return leaders_np, weights_np


def decode_bch(u64 y, int n, int t, i64[::1] log_arr, u64[::1] exp_arr):
    """See _kernels_py.decode_bch.  Returns codeword int or -1."""
    cdef int N = n
    cdef int twot = 2 * t
    cdef u64 S[65]
    cdef u64 C[65]
    cdef u64 B[65]
    cdef u64 T[65]
    cdef int i, j, step, dgr, L, lag, nroots, x, b
    cdef u64 w, d, coef, acc, bb, flips, corrected, c
    cdef bint nonzero

    if twot >= 65:
        raise ValueError("t too large for compiled kernel")

    for j in range(twot + 1):
        S[j] = 0
    w = y
    while w:
        c = w & (~w + 1)
        i = _lowbit(c)
        for j in range(1, twot + 1):
            S[j] ^= exp_arr[(i * j) % N]
        w &= w - 1
    nonzero = False
    for j in range(1, twot + 1):
        if S[j]:
            nonzero = True
            break
    if not nonzero:
        return <object>y

    for j in range(twot + 1):
        C[j] = 0
        B[j] = 0
    C[0] = 1
    B[0] = 1
    L = 0
    lag = 1
    bb = 1
    for step in range(twot):
        d = S[step + 1]
        for i in range(1, L + 1):
            if C[i] and S[step + 1 - i]:
                d ^= exp_arr[(log_arr[C[i]] + log_arr[S[step + 1 - i]]) % N]
        if d == 0:
            lag += 1
        elif 2 * L <= step:
            for j in range(twot + 1):
                T[j] = C[j]
            coef = exp_arr[(log_arr[d] - log_arr[bb] + N) % N]
            for i in range(0, twot + 1 - lag):
                if B[i]:
                    C[i + lag] ^= exp_arr[(log_arr[coef] + log_arr[B[i]]) % N]
            L = step + 1 - L
            for j in range(twot + 1):
                B[j] = T[j]
            bb = d
            lag = 1
        else:
            coef = exp_arr[(log_arr[d] - log_arr[bb] + N) % N]
            for i in range(0, twot + 1 - lag):
                if B[i]:
                    C[i + lag] ^= exp_arr[(log_arr[coef] + log_arr[B[i]]) % N]
            lag += 1
    if L > t:
        return -1

    flips = 0
    nroots = 0
    for i in range(n):
        x = (N - i) % N
        acc = C[0]
        for dgr in range(1, L + 1):
            if C[dgr]:
                acc ^= exp_arr[(log_arr[C[dgr]] + dgr * x) % N]
        if acc == 0:
            flips |= (<u64>1) << i
            nroots += 1
    if nroots != L:
        return -1
    corrected = y ^ flips

    for j in range(twot + 1):
        S[j] = 0
    w = corrected
    while w:
        c = w & (~w + 1)
        i = _lowbit(c)
        for j in range(1, twot + 1):
            S[j] ^= exp_arr[(i * j) % N]
        w &= w - 1
    for j in range(1, twot + 1):
        if S[j]:
            return -1
    return <object>corrected


def support_counts(u64[::1] col_synd_rev, signed char[::1] weights,
                   int n, int r, int t):
    """See _kernels_py.support_counts."""
    counts_np = np.zeros(n, dtype=np.int64)
    cdef i64[::1] counts = counts_np
    cdef Py_ssize_t size = (<Py_ssize_t>1) << r
    cdef int max_w = 0, w, b
    cdef Py_ssize_t idx
    cdef u64 u, top, tt, s, c
    for idx in range(size):
        if weights[idx] > max_w:
            max_w = weights[idx]
    top = (<u64>1) << n
    for w in range(t + 1, max_w + 1):
        u = ((<u64>1) << w) - 1
        while u < top:
            s = 0
            tt = u
            while tt:
                c = tt & (~tt + 1)
                s ^= col_synd_rev[_lowbit(c)]
                tt &= tt - 1
            if weights[s] == w:
                tt = u
                while tt:
                    c = tt & (~tt + 1)
                    counts[n - 1 - _lowbit(c)] += 1
                    tt &= tt - 1
            u = _gosper_next(u)
    return counts_np


def support_intersections(u64[::1] col_synd_rev, signed char[::1] weights,
                          int n, int r):
    """See _kernels_py.support_intersections.  Returns list of ints."""
    cdef Py_ssize_t size = (<Py_ssize_t>1) << r
    inter_np = np.full(size, (1 << n) - 1, dtype=np.uint64)
    cdef u64[::1] inter = inter_np
    inter[0] = 0
    cdef int max_w = 0, w, b
    cdef Py_ssize_t idx
    cdef u64 u, top, tt, s, v, c
    for idx in range(size):
        if weights[idx] > max_w:
            max_w = weights[idx]
    top = (<u64>1) << n
    for w in range(1, max_w + 1):
        u = ((<u64>1) << w) - 1
        while u < top:
            s = 0
            v = 0
            tt = u
            while tt:
                c = tt & (~tt + 1)
                b = _lowbit(c)
                s ^= col_synd_rev[b]
                v |= (<u64>1) << (n - 1 - b)
                tt &= tt - 1
            if weights[s] == w:
                inter[s] &= v
            u = _gosper_next(u)
    return [int(x) for x in inter_np]
