"""Linear codes over GF(2) and their steganographic invariants.

Covering radius, average radius and the leader-weight distribution all
come from one exhaustive syndrome -> coset-leader table, built by the
selected kernel backend.  Syndrome convention: bit j of the syndrome int
is coordinate j of y.H^T (LSB first).  Leader tie-break: minimum weight,
then lexicographically smallest left-to-right bit string.
"""

from __future__ import annotations

import math
import struct
from fractions import Fraction

import numpy as np

from ._backend import kernels, py_kernels
from .linalg2 import BitMatrix, BitVector, nullspace, parity, rank, rref

DEFAULT_TABLE_CAP = 1 << 26  # max coset-table entries

_CACHE_MAGIC = b"CLT1"


class ResourceLimitError(Exception):
    """Raised when an exhaustive enumeration would exceed the memory cap."""

    def __init__(self, message: str, required_entries: int):
        super().__init__(message)
        self.required_entries = required_entries


class LinearCode:
    """An [n, k] binary linear code with consistent G and H.

    G is kept in reduced row-echelon form; when its pivots are the
    leading columns (the usual case here) it literally reads [I_k | A].
    ``perm`` records the information-set-first column permutation
    (pivots of G, then the rest), so callers can move vectors between
    original and systematic coordinates.
    """

    def __init__(self, G: BitMatrix, H: BitMatrix):
        if G.ncols != H.ncols:
            raise ValueError("G and H length mismatch")
        for g in G.rows:
            for h in H.rows:
                if parity(g & h):
                    raise ValueError("G.H^T != 0")
        self.n = G.ncols
        self.k = G.nrows
        self.G = G
        self.H = H
        if rank(G) != self.k or rank(H) != self.n - self.k:
            raise ValueError("G or H rank deficient")
        _, pivots, _ = rref(G)
        self.info_set = tuple(pivots)
        self.perm = tuple(pivots) + tuple(
            j for j in range(self.n) if j not in set(pivots)
        )
        self._clt: CosetLeaderTable | None = None

    @property
    def r(self) -> int:
        return self.n - self.k

    @classmethod
    def from_generator(cls, G: BitMatrix) -> "LinearCode":
        R, pivots, rk = rref(G)
        rows = [r for r in R.rows if r]
        if not rows:
            raise ValueError("zero code not supported")
        Gr = BitMatrix(len(rows), G.ncols, rows)
        return cls(Gr, nullspace(Gr))

    @classmethod
    def from_parity_check(cls, H: BitMatrix) -> "LinearCode":
        if rank(H) != H.nrows:
            raise ValueError("H must have full row rank")
        return cls(nullspace(H), H)

    def syndrome_int(self, y_bits: int) -> int:
        s = 0
        for j, h in enumerate(self.H.rows):
            s |= parity(h & y_bits) << j
        return s

    def contains(self, y: BitVector) -> bool:
        return y.n == self.n and self.syndrome_int(y.bits) == 0

    def codewords(self) -> list[int]:
        """All 2^k codewords as ints; only for desk-scale k."""
        words = [0]
        for g in self.G.rows:
            words += [w ^ g for w in words]
        return words

    def __repr__(self):
        return f"LinearCode[n={self.n}, k={self.k}]"


class CosetLeaderTable:
    """Complete syndrome-indexed table of minimum-weight coset leaders."""

    def __init__(self, n: int, k: int, leaders, weights):
        self.n = n
        self.k = k
        self.r = n - k
        self.leaders = leaders          # uint64 array (n <= 63) or list[int]
        self.weights = weights          # int8 array of leader weights
        counts = np.bincount(np.asarray(weights, dtype=np.int64))
        self.weight_histogram = tuple(int(c) for c in counts)
        self.max_weight = len(self.weight_histogram) - 1

    def leader(self, syndrome: int) -> BitVector:
        return BitVector(self.n, int(self.leaders[syndrome]))

    def leader_int(self, syndrome: int) -> int:
        return int(self.leaders[syndrome])

    def save(self, path) -> None:
        """Binary cache: magic, n, k, convention version, packed leaders.

        Leaders are stored in syndrome order, each as ceil(n/8)
        little-endian bytes (bit i = coordinate i).
        """
        nbytes = (self.n + 7) // 8
        with open(path, "wb") as fh:
            fh.write(_CACHE_MAGIC)
            fh.write(struct.pack("<HHB", self.n, self.k, 1))
            for s in range(1 << self.r):
                fh.write(int(self.leaders[s]).to_bytes(nbytes, "little"))

    @classmethod
    def load(cls, path) -> "CosetLeaderTable":
        with open(path, "rb") as fh:
            if fh.read(4) != _CACHE_MAGIC:
                raise ValueError("bad coset-table cache magic")
            n, k, ver = struct.unpack("<HHB", fh.read(5))
            if ver != 1:
                raise ValueError(f"unsupported cache version {ver}")
            nbytes = (n + 7) // 8
            r = n - k
            raw = fh.read()
        if len(raw) != nbytes << r:
            raise ValueError("truncated coset-table cache")
        leaders = [
            int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little")
            for i in range(1 << r)
        ]
        weights = np.array([v.bit_count() for v in leaders], dtype=np.int8)
        if n <= 63:
            leaders = np.array(leaders, dtype=np.uint64)
        return cls(n, k, leaders, weights)


def syndrome(code: LinearCode, y: BitVector) -> BitVector:
    """y.H^T as a length-r vector."""
    if y.n != code.n:
        raise ValueError(f"length mismatch: {y.n} != {code.n}")
    return BitVector(code.r, code.syndrome_int(y.bits))


def column_syndromes_rev(code: LinearCode) -> np.ndarray:
    """Syndromes of unit vectors, indexed by reversed coordinate (kernel
    enumeration convention)."""
    cols = [code.syndrome_int(1 << (code.n - 1 - b)) for b in range(code.n)]
    return np.array(cols, dtype=np.uint64)


def coset_leader_table(
    code: LinearCode, cap: int = DEFAULT_TABLE_CAP
) -> CosetLeaderTable:
    """Exhaustive coset-leader table; cached on the code instance."""
    if code._clt is not None:
        return code._clt
    entries = 1 << code.r
    if entries > cap:
        raise ResourceLimitError(
            f"coset table needs 2^{code.r} = {entries} entries "
            f"(cap {cap}); raise the cap to proceed",
            required_entries=entries,
        )
    backend = kernels if code.n <= 63 else py_kernels
    leaders, weights = backend.build_coset_table(
        column_syndromes_rev(code), code.n, code.r
    )
    code._clt = CosetLeaderTable(code.n, code.k, leaders, weights)
    return code._clt


def covering_radius(code: LinearCode, cap: int = DEFAULT_TABLE_CAP) -> int:
    return coset_leader_table(code, cap).max_weight


def average_radius(code: LinearCode, cap: int = DEFAULT_TABLE_CAP) -> Fraction:
    """Mean coset-leader weight over all 2^r cosets, exact."""
    table = coset_leader_table(code, cap)
    total = sum(j * a for j, a in enumerate(table.weight_histogram))
    return Fraction(total, 1 << table.r)


def leader_weight_distribution(
    code: LinearCode, cap: int = DEFAULT_TABLE_CAP
) -> tuple[int, ...]:
    """(A_0, ..., A_rho): number of cosets with leader weight j."""
    return coset_leader_table(code, cap).weight_histogram


def ball_volume(q: int, n: int, r: int) -> int:
    """Volume of a Hamming ball of radius r in A^n, |A| = q."""
    if not (0 <= r <= n and q >= 2):
        raise ValueError("need 0 <= r <= n and q >= 2")
    return sum(math.comb(n, j) * (q - 1) ** j for j in range(r + 1))


def hamming_code(m: int) -> LinearCode:
    """Binary Hamming code of length 2^m - 1; column i+1 of H is the
    binary representation of i+1 (LSB in the first row)."""
    if m < 2:
        raise ValueError("m >= 2 required")
    n = (1 << m) - 1
    rows = []
    for j in range(m):
        bits = 0
        for i in range(n):
            bits |= (((i + 1) >> j) & 1) << i
        rows.append(bits)
    return LinearCode.from_parity_check(BitMatrix(m, n, rows))


def syndrome_table_size_mb(n: int, r: int) -> float:
    """Size of a full syndrome-leader table, one (n + r)-bit entry per
    coset, in megabits (10^6 bits), rounded to 3 decimals."""
    return round((1 << r) * (n + r) / 1e6, 3)
