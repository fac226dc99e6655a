"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``.

Same signatures, same bit-exact results.  Python ints are unbounded, so
this backend also serves code lengths above 63 where the compiled
uint64 kernels cannot.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def _gosper_next(u: int) -> int:
    """Next integer with the same popcount, increasing order."""
    c = u & -u
    r = u + c
    return (((r ^ u) >> 2) // c) | r


def build_coset_table(col_synd_rev, n: int, r: int):
    """Fill the full syndrome -> coset-leader table.

    ``col_synd_rev[b]`` is the syndrome int of the unit vector at
    coordinate n-1-b.  Vectors are enumerated in increasing weight, and
    within a weight in increasing order of the reversed-bit mask, so the
    first vector reaching a syndrome is its minimum-weight,
    lexicographically-smallest (left-to-right bit string) leader.

    Returns (leaders, weights) as numpy uint64 / int8 arrays for n <= 63,
    otherwise (list[int], numpy int8).
    """
    size = 1 << r
    weights = np.full(size, -1, dtype=np.int8)
    if n <= 63:
        leaders = np.zeros(size, dtype=np.uint64)
    else:
        leaders = [0] * size
    col = [int(c) for c in col_synd_rev]
    weights[0] = 0
    filled = 1
    top = 1 << n
    for w in range(1, n + 1):
        if filled == size:
            break
        u = (1 << w) - 1
        while u < top:
            s = 0
            v = 0
            t = u
            while t:
                b = (t & -t).bit_length() - 1
                s ^= col[b]
                v |= 1 << (n - 1 - b)
                t &= t - 1
            if weights[s] < 0:
                weights[s] = w
                leaders[s] = v
                filled += 1
                if filled == size:
                    break
            u = _gosper_next(u)
    return leaders, weights


def decode_bch(y: int, n: int, t: int, log_arr, exp_arr) -> int:
    """Bounded-distance BCH decode of the length-n word y (bit i = coord i).

    Berlekamp-Massey over GF(2^m) with n = 2^m - 1, then Chien search.
    Returns the corrected codeword int, or -1 on decoding failure.
    """
    N = n
    log = log_arr.tolist() if hasattr(log_arr, "tolist") else list(log_arr)
    exp = exp_arr.tolist() if hasattr(exp_arr, "tolist") else list(exp_arr)
    exp = [int(e) for e in exp]

    def syndromes(word: int) -> list[int]:
        S = [0] * (2 * t + 1)
        w = word
        while w:
            i = (w & -w).bit_length() - 1
            for j in range(1, 2 * t + 1):
                S[j] ^= exp[(i * j) % N]
            w &= w - 1
        return S

    S = syndromes(y)
    if not any(S[1:]):
        return y

    def mul(a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return exp[(log[a] + log[b]) % N]

    # Berlekamp-Massey: find the minimal LFSR (error locator) for S_1..S_2t
    C = [0] * (2 * t + 1)
    B = [0] * (2 * t + 1)
    C[0] = B[0] = 1
    L = 0
    lag = 1
    b = 1
    for step in range(2 * t):
        d = S[step + 1]
        for i in range(1, L + 1):
            d ^= mul(C[i], S[step + 1 - i])
        if d == 0:
            lag += 1
        elif 2 * L <= step:
            T = C[:]
            coef = mul(d, exp[(-log[b]) % N])
            for i in range(0, 2 * t + 1 - lag):
                C[i + lag] ^= mul(coef, B[i])
            L = step + 1 - L
            B = T
            b = d
            lag = 1
        else:
            coef = mul(d, exp[(-log[b]) % N])
            for i in range(0, 2 * t + 1 - lag):
                C[i + lag] ^= mul(coef, B[i])
            lag += 1
    if L > t:
        return -1

    # Chien search: positions i where the locator vanishes at alpha^{-i}
    flips = 0
    nroots = 0
    for i in range(n):
        x = (N - i) % N
        acc = C[0]
        for dgr in range(1, L + 1):
            if C[dgr]:
                acc ^= exp[(log[C[dgr]] + dgr * x) % N]
        if acc == 0:
            flips |= 1 << i
            nroots += 1
    if nroots != L:
        return -1
    corrected = y ^ flips
    if any(syndromes(corrected)[1:]):
        return -1
    return corrected


def support_counts(col_synd_rev, weights, n: int, r: int, t: int):
    """Occurrence count per coordinate over the supports of all
    minimum-weight members of cosets whose leader weight exceeds t."""
    counts = np.zeros(n, dtype=np.int64)
    col = [int(c) for c in col_synd_rev]
    max_w = int(np.max(weights))
    top = 1 << n
    for w in range(t + 1, max_w + 1):
        u = (1 << w) - 1
        while u < top:
            s = 0
            tt = u
            while tt:
                b = (tt & -tt).bit_length() - 1
                s ^= col[b]
                tt &= tt - 1
            if weights[s] == w:
                tt = u
                while tt:
                    b = (tt & -tt).bit_length() - 1
                    counts[n - 1 - b] += 1
                    tt &= tt - 1
            u = _gosper_next(u)
    return counts


def support_intersections(col_synd_rev, weights, n: int, r: int):
    """Per-coset AND of the supports of all its minimum-weight members.

    Returns a list of ints (coordinate convention, bit i = coord i);
    entry for the zero coset is 0 by convention (leader is the zero word).
    """
    size = 1 << r
    inter = [(1 << n) - 1] * size
    inter[0] = 0
    col = [int(c) for c in col_synd_rev]
    max_w = int(np.max(weights))
    top = 1 << n
    for w in range(1, max_w + 1):
        u = (1 << w) - 1
        while u < top:
            s = 0
            v = 0
            tt = u
            while tt:
                b = (tt & -tt).bit_length() - 1
                s ^= col[b]
                v |= 1 << (n - 1 - b)
                tt &= tt - 1
            if weights[s] == w:
                inter[s] &= v
            u = _gosper_next(u)
    return inter
