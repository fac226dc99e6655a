"""Primitive narrow-sense binary BCH codes and bounded-distance decoding.

The decoder (syndromes in GF(2^m), Berlekamp-Massey, Chien search)
corrects up to t errors and returns None otherwise: failure is a value,
not an exception, because the stegoscheme layer needs a crisp
decodable/undecodable predicate.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._backend import kernels, py_kernels
from .codes import DEFAULT_TABLE_CAP, LinearCode, ball_volume, coset_leader_table
from .galois import FieldSpec, gf_mul, gf_pow
from .linalg2 import BitMatrix, BitVector

# Covering radii known for the paper's families (used only when the
# exhaustive table is out of reach).
KNOWN_COVERING_RADIUS = {2: 3, 3: 5}


@dataclass(frozen=True)
class BCHCode:
    """BCH_m(t): length 2^m - 1, designed distance 2t + 1."""

    base: LinearCode
    m: int
    t: int
    field: FieldSpec
    generator_poly: int

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def r(self) -> int:
        return self.base.r


def _minimal_polynomial(s: int, f: FieldSpec) -> int:
    """Minimal polynomial of alpha^s over GF(2), as a bit polynomial."""
    coset = set()
    e = s % f.mult_order
    while e not in coset:
        coset.add(e)
        e = (e * 2) % f.mult_order
    # product of (x - alpha^j) over the cyclotomic coset, in GF(2^m)[x]
    poly = [1]
    for j in sorted(coset):
        root = gf_pow(f.exp[1], j, f)
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] ^= c
            nxt[i] ^= gf_mul(c, root, f)
        poly = nxt
    bits = 0
    for i, c in enumerate(poly):
        if c not in (0, 1):
            raise AssertionError("minimal polynomial not over GF(2)")
        bits |= c << i
    return bits


def _poly_mul_gf2(a: int, b: int) -> int:
    out = 0
    while b:
        low = b & -b
        out ^= a << (low.bit_length() - 1)
        b ^= low
    return out


def generator_polynomial(m: int, t: int, f: FieldSpec) -> int:
    """lcm of the minimal polynomials of alpha, alpha^2, ..., alpha^2t."""
    seen: set[int] = set()
    g = 1
    for s in range(1, 2 * t + 1):
        coset_min = min(
            (s * (1 << i)) % f.mult_order for i in range(f.m)
        )
        if coset_min in seen:
            continue
        seen.add(coset_min)
        g = _poly_mul_gf2(g, _minimal_polynomial(s, f))
    return g


def bch_code(m: int, t: int, fieldspec: FieldSpec | None = None) -> BCHCode:
    """Construct BCH_m(t) as a LinearCode in systematic form.

    For the cyclic generator matrix (rows = shifts of g) the RREF pivots
    are the leading k columns, so no column permutation occurs and the
    BCH coordinates coincide with the natural cyclic ones.
    """
    if m < 2 or t < 1 or 2 * t + 1 > (1 << m) - 1:
        raise ValueError(f"invalid BCH parameters m={m}, t={t}")
    f = fieldspec if fieldspec is not None else FieldSpec(m)
    if f.m != m:
        raise ValueError("field degree does not match m")
    n = (1 << m) - 1
    g = generator_polynomial(m, t, f)
    k = n - (g.bit_length() - 1)
    G = BitMatrix(k, n, [g << i for i in range(k)])
    code = LinearCode.from_generator(G)
    assert code.info_set == tuple(range(k))
    return BCHCode(base=code, m=m, t=t, field=f, generator_poly=g)


def decode_int(code: BCHCode, y_bits: int) -> int | None:
    """Bounded-distance decode on packed ints; None on failure."""
    backend = kernels if code.n <= 63 else py_kernels
    res = backend.decode_bch(
        y_bits, code.n, code.t, code.field.log_arr, code.field.exp_arr
    )
    return None if res == -1 else int(res)


def bm_decode(code: BCHCode, y: BitVector) -> BitVector | None:
    """Nearest codeword when d(y, C) <= t, else None (never wrong)."""
    if y.n != code.n:
        raise ValueError(f"length mismatch: {y.n} != {code.n}")
    res = decode_int(code, y.bits)
    return None if res is None else BitVector(code.n, res)


def decode_success_count(
    code: BCHCode, cap: int = DEFAULT_TABLE_CAP, verify: bool = False
) -> int:
    """Number of cosets whose vectors the bounded decoder can handle,
    i.e. cosets with leader weight <= t; equals V_2(n, t).

    With verify=True, bm_decode is run on one representative per coset
    and must succeed exactly on those cosets.
    """
    table = coset_leader_table(code.base, cap)
    count = sum(table.weight_histogram[: code.t + 1])
    if verify:
        checked = 0
        for s in range(1 << table.r):
            rep = table.leader_int(s)
            ok = decode_int(code, rep) is not None
            if ok != (table.weights[s] <= code.t):
                raise AssertionError(f"decoder disagrees with table at syndrome {s}")
            checked += ok
        assert checked == count
    assert count == ball_volume(2, code.n, code.t)
    return count
