"""Bit-packed vectors and matrices over GF(2).

Vectors are Python ints with bit i = coordinate i; a BitVector wraps the
int with an explicit length.  Matrices are lists of row ints.  Everything
here is immutable and pure.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def parity(x: int) -> int:
    return x.bit_count() & 1


def project_int(v: int, keep: Sequence[int]) -> int:
    """Gather the bits of v at the given positions (increasing order)."""
    out = 0
    for j, i in enumerate(keep):
        out |= ((v >> i) & 1) << j
    return out


def scatter_int(v: int, positions: Sequence[int]) -> int:
    """Inverse of project_int: place bit j of v at positions[j]."""
    out = 0
    for j, i in enumerate(positions):
        out |= ((v >> j) & 1) << i
    return out


class BitVector:
    """Fixed-length binary vector packed into an int (bit i = coordinate i)."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int = 0):
        if n < 0:
            raise ValueError("negative length")
        if bits >> n:
            raise ValueError("bits set beyond vector length")
        self.n = n
        self.bits = bits

    @classmethod
    def from_bits(cls, seq: Iterable[int]) -> "BitVector":
        bits = 0
        n = 0
        for b in seq:
            bits |= (int(b) & 1) << n
            n += 1
        return cls(n, bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.n)]

    def support(self) -> list[int]:
        return [i for i in range(self.n) if (self.bits >> i) & 1]

    def __len__(self):
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return BitVector(self.n, self.bits ^ other.bits)

    def __eq__(self, other):
        return (
            isinstance(other, BitVector)
            and self.n == other.n
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash((self.n, self.bits))

    def __repr__(self):
        return f"BitVector('{''.join(str(b) for b in self.to_list())}')"


class BitMatrix:
    """Row-major bit-packed binary matrix."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[int]):
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        mask = (1 << ncols) - 1
        for r in rows:
            if r & ~mask:
                raise ValueError("bits set beyond column count")
        self.nrows = nrows
        self.ncols = ncols
        self.rows = tuple(rows)

    @classmethod
    def from_lists(cls, lists: Sequence[Sequence[int]]) -> "BitMatrix":
        ncols = len(lists[0]) if lists else 0
        rows = []
        for row in lists:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            rows.append(sum((int(b) & 1) << i for i, b in enumerate(row)))
        return cls(len(lists), ncols, rows)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> i) & 1 for i in range(self.ncols)] for r in self.rows]

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i])

    def column(self, j: int) -> BitVector:
        bits = 0
        for i, r in enumerate(self.rows):
            bits |= ((r >> j) & 1) << i
        return BitVector(self.nrows, bits)

    def transpose(self) -> "BitMatrix":
        return BitMatrix(
            self.ncols, self.nrows,
            [self.column(j).bits for j in range(self.ncols)],
        )

    def mul_vector(self, v: BitVector) -> BitVector:
        """M · v^T as a length-nrows vector."""
        if v.n != self.ncols:
            raise ValueError("length mismatch")
        bits = 0
        for i, r in enumerate(self.rows):
            bits |= parity(r & v.bits) << i
        return BitVector(self.nrows, bits)

    def __eq__(self, other):
        return (
            isinstance(other, BitMatrix)
            and (self.nrows, self.ncols, self.rows)
            == (other.nrows, other.ncols, other.rows)
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.rows))

    def __repr__(self):
        return f"BitMatrix({self.nrows}x{self.ncols})"


def _rref_rows(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """In-place style RREF on row ints; returns (reduced rows, pivot columns)."""
    work = list(rows)
    pivots: list[int] = []
    row_idx = 0
    for col in range(ncols):
        pivot = None
        for r in range(row_idx, len(work)):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        for r in range(len(work)):
            if r != row_idx and ((work[r] >> col) & 1):
                work[r] ^= work[row_idx]
        pivots.append(col)
        row_idx += 1
        if row_idx == len(work):
            break
    return work, pivots


def rref(M: BitMatrix) -> tuple[BitMatrix, list[int], int]:
    """Reduced row-echelon form: (R, pivot columns, rank)."""
    work, pivots = _rref_rows(list(M.rows), M.ncols)
    return BitMatrix(M.nrows, M.ncols, work), pivots, len(pivots)


def rank(M: BitMatrix) -> int:
    return rref(M)[2]


def systematic_form(G: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Permute columns so the matrix reads [I_k | A].

    Returns (G_sys, perm) with column j of G_sys = column perm[j] of G.
    Requires full row rank.
    """
    R, pivots, rk = rref(G)
    if rk != G.nrows:
        raise ValueError(f"rank {rk} < row count {G.nrows}: not full row rank")
    perm = pivots + [j for j in range(G.ncols) if j not in set(pivots)]
    rows = [project_int(r, perm) for r in R.rows]
    return BitMatrix(G.nrows, G.ncols, rows), perm


def apply_perm(v: BitVector, perm: Sequence[int]) -> BitVector:
    """Coordinate j of the result = coordinate perm[j] of v."""
    return BitVector(v.n, project_int(v.bits, perm))


def invert_perm(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for j, i in enumerate(perm):
        inv[i] = j
    return inv


def delete_columns(M: BitMatrix, P: Iterable[int]) -> BitMatrix:
    """Drop the columns of P, then re-reduce to full row rank."""
    pset = set(P)
    if any(not 0 <= i < M.ncols for i in pset):
        raise ValueError(f"column index out of range 0..{M.ncols - 1}")
    keep = [j for j in range(M.ncols) if j not in pset]
    rows = [project_int(r, keep) for r in M.rows]
    reduced, pivots = _rref_rows(rows, len(keep))
    kept = [r for r in reduced if r]
    return BitMatrix(len(kept), len(keep), kept)


def project(v: BitVector, keep: Sequence[int]) -> BitVector:
    """Restrict v to the given coordinates, in increasing original order."""
    keep = sorted(keep)
    if keep and not (0 <= keep[0] and keep[-1] < v.n):
        raise ValueError("keep index out of range")
    return BitVector(len(keep), project_int(v.bits, keep))


def nullspace(M: BitMatrix) -> BitMatrix:
    """Basis of {v : M v^T = 0}, one row per free column, in RREF."""
    R, pivots, rk = rref(M)
    pivot_set = set(pivots)
    free = [j for j in range(M.ncols) if j not in pivot_set]
    rows = []
    for f in free:
        v = 1 << f
        for i, p in enumerate(pivots):
            if (R.rows[i] >> f) & 1:
                v |= 1 << p
        rows.append(v)
    reduced, _ = _rref_rows(rows, M.ncols)
    reduced = [r for r in reduced if r]
    return BitMatrix(len(reduced), M.ncols, reduced)


def invert_matrix(M: BitMatrix) -> BitMatrix:
    """Inverse of a square invertible matrix over GF(2)."""
    if M.nrows != M.ncols:
        raise ValueError("not square")
    n = M.nrows
    aug = [M.rows[i] | (1 << (n + i)) for i in range(n)]
    reduced, pivots = _rref_rows(aug, 2 * n)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return BitMatrix(n, n, [r >> n for r in reduced])
