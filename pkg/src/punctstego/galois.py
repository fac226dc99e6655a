"""Arithmetic in GF(2^m) over a fixed primitive polynomial.

Field elements are m-bit integers holding polynomial-basis coefficients
(bit i = coefficient of x^i).  Addition is XOR; multiplication goes
through log/antilog tables built once per field.  A ``FieldSpec`` is
immutable after construction and safe to share.
"""

from __future__ import annotations

import numpy as np

# Standard low-weight primitive polynomials, low bit = constant term.
DEFAULT_PRIMITIVE_POLYS = {
    2: 0b111,                  # x^2 + x + 1
    3: 0b1011,                 # x^3 + x + 1
    4: 0b10011,                # x^4 + x + 1
    5: 0b100101,               # x^5 + x^2 + 1
    6: 0b1000011,              # x^6 + x + 1
    7: 0b10001001,             # x^7 + x^3 + 1
    8: 0b100011101,            # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,           # x^9 + x^4 + 1
    10: 0b10000001001,         # x^10 + x^3 + 1
    11: 0b100000000101,        # x^11 + x^2 + 1
    12: 0b1000001010011,       # x^12 + x^6 + x^4 + x + 1
    13: 0b10000000011011,      # x^13 + x^4 + x^3 + x + 1
    14: 0b100010001000011,     # x^14 + x^10 + x^6 + x + 1
    15: 0b1000000000000011,    # x^15 + x + 1
    16: 0b10001000000001011,   # x^16 + x^12 + x^3 + x + 1
}


class FieldSpec:
    """GF(2^m) with precomputed log/antilog tables.

    ``exp[i]`` is x^i for 0 <= i < 2^m - 1 and ``log[a]`` the inverse map
    (log[0] is -1 and must never be consumed).  Construction verifies the
    polynomial is primitive: the powers of x must enumerate every nonzero
    element before cycling.
    """

    def __init__(self, m: int, prim_poly: int | None = None):
        if not 2 <= m <= 16:
            raise ValueError(f"extension degree m={m} out of supported range [2, 16]")
        if prim_poly is None:
            prim_poly = DEFAULT_PRIMITIVE_POLYS[m]
        if prim_poly.bit_length() != m + 1:
            raise ValueError(f"prim_poly must have degree exactly {m}")
        self.m = m
        self.prim_poly = prim_poly
        self.order = 1 << m
        self.mult_order = self.order - 1

        exp = [0] * self.mult_order
        log = [-1] * self.order
        a = 1
        for i in range(self.mult_order):
            if log[a] != -1:
                raise ValueError(
                    f"0b{prim_poly:b} is not primitive over GF(2): "
                    f"x has multiplicative order {i}"
                )
            exp[i] = a
            log[a] = i
            a <<= 1
            if a & self.order:
                a ^= prim_poly
        if a != 1:
            raise ValueError(f"0b{prim_poly:b} is not primitive over GF(2)")
        self.exp = exp
        self.log = log
        # uint64/int64 copies for the compiled decoder kernel
        self.exp_arr = np.array(exp, dtype=np.uint64)
        self.log_arr = np.array(log, dtype=np.int64)

    def __repr__(self):
        return f"FieldSpec(m={self.m}, prim_poly=0b{self.prim_poly:b})"

    def check_element(self, a: int) -> None:
        if not 0 <= a < self.order:
            raise ValueError(f"{a} is not an element of GF(2^{self.m})")


def gf_mul(a: int, b: int, f: FieldSpec) -> int:
    """Product of a and b in GF(2^m)."""
    if a == 0 or b == 0:
        return 0
    return f.exp[(f.log[a] + f.log[b]) % f.mult_order]


def gf_inv(a: int, f: FieldSpec) -> int:
    """Multiplicative inverse; zero has none."""
    if a == 0:
        raise ZeroDivisionError("0 has no inverse in GF(2^m)")
    return f.exp[(-f.log[a]) % f.mult_order]


def gf_pow(a: int, e: int, f: FieldSpec) -> int:
    """a^e, exponent taken modulo 2^m - 1 for nonzero a; 0^0 = 1."""
    if a == 0:
        if e < 0:
            raise ZeroDivisionError("negative power of 0 in GF(2^m)")
        return 1 if e == 0 else 0
    return f.exp[(f.log[a] * e) % f.mult_order]
