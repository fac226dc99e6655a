"""Stegoschemes built from (code, decoder) pairs.

Three realizations: the complete coset-table map x - cl(xH^T - m), the
bounded BCH map through the systematic shortcut (0,m) + dec(x - (0,m))
which can fail, and the punctured-code map y + dec'(v - y) which never
fails once rho' = t.  Embedding failure is returned as None so callers
can measure the embedding probability without exception control flow.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import bch as bch_mod
from .codes import (
    DEFAULT_TABLE_CAP,
    LinearCode,
    ResourceLimitError,
    average_radius,
    coset_leader_table,
)
from .linalg2 import (
    BitMatrix,
    BitVector,
    delete_columns,
    invert_matrix,
    rref,
    scatter_int,
)
from .puncturing import _nearest_int, embedding_probability

CSV_COLUMNS = [
    "m", "n", "r", "a", "T", "T_avg", "R", "R_avg",
    "e", "e_avg", "p_S", "e_rel", "e_avg_rel",
]


def _syndrome_solver(code: LinearCode):
    """Returns msg_int -> y_int with y.H^T = msg and support inside one
    fixed information set of H (the '(0, m) in systematic coordinates'
    trick, done in original coordinates)."""
    R, pivots, rk = rref(code.H)
    if rk != code.r:
        raise ValueError("H rank deficient")
    sub = BitMatrix(
        code.r, code.r,
        [sum(((row >> p) & 1) << j for j, p in enumerate(pivots)) for row in code.H.rows],
    )
    inv = invert_matrix(sub)
    inv_cols = [inv.column(j).bits for j in range(code.r)]

    def solve(msg: int) -> int:
        yq = 0
        mm = msg
        while mm:
            low = mm & -mm
            yq ^= inv_cols[low.bit_length() - 1]
            mm &= mm - 1
        return scatter_int(yq, pivots)

    return solve


class StegoScheme:
    """One realization of a code as a stegoscheme.

    decoder is "coset-table", "bounded-bch" or "punctured"; t_embed is
    the guaranteed maximum number of changes on success.
    """

    def __init__(self, code, decoder, t_embed, proper, embed_int, meta=None):
        self.code: LinearCode = code
        self.decoder = decoder
        self.t_embed = t_embed
        self.proper = proper
        self._embed_int = embed_int
        self.meta = meta or {}

    # -- constructors -------------------------------------------------

    @classmethod
    def coset_table(cls, code: LinearCode, cap: int = DEFAULT_TABLE_CAP):
        """Complete, proper realization via the syndrome-leader table."""
        table = coset_leader_table(code, cap)

        def embed_int(x: int, msg: int) -> int:
            return x ^ table.leader_int(code.syndrome_int(x) ^ msg)

        return cls(code, "coset-table", table.max_weight, True, embed_int)

    @classmethod
    def bounded_bch(cls, bchcode: bch_mod.BCHCode):
        """Bounded-distance realization; embedding fails on cosets whose
        leader weight exceeds t."""
        code = bchcode.base
        solve = _syndrome_solver(code)

        def embed_int(x: int, msg: int) -> int | None:
            y = solve(msg)
            c = bch_mod.decode_int(bchcode, x ^ y)
            return None if c is None else y ^ c

        return cls(
            code, "bounded-bch", bchcode.t, False, embed_int,
            meta={"m": bchcode.m, "t": bchcode.t, "bch": bchcode},
        )

    @classmethod
    def punctured(
        cls,
        bchcode: bch_mod.BCHCode,
        positions,
        cache_decodes: bool = True,
        cache_limit: int = 1 << 20,
    ):
        """Guaranteed-success realization on the punctured code.

        positions are parent-coordinate puncture indices; the child must
        have covering radius t for totality (not re-verified here).
        """
        P = sorted(positions)
        parent = bchcode.base
        child = LinearCode.from_generator(delete_columns(parent.G, P))
        solve = _syndrome_solver(child)
        pset = set(P)
        keep = [i for i in range(parent.n) if i not in pset]
        t = bchcode.t
        cache: dict[int, int | None] = {}

        def dec_int(y: int) -> int | None:
            return bch_mod.decode_int(bchcode, y)

        def nearest(w: int) -> int | None:
            if cache_decodes and w in cache:
                return cache[w]
            c, _, _ = _nearest_int(P, keep, w, dec_int, t)
            if cache_decodes and len(cache) < cache_limit:
                cache[w] = c
            return c

        def embed_int(x: int, msg: int) -> int | None:
            y = solve(msg)
            c = nearest(x ^ y)
            return None if c is None else y ^ c

        return cls(
            child, "punctured", t, True, embed_int,
            meta={
                "m": bchcode.m, "t": t, "bch": bchcode,
                "positions": tuple(P), "parent": parent,
            },
        )

    # -- maps ----------------------------------------------------------

    def embed(self, x: BitVector, msg: BitVector) -> BitVector | None:
        """Stego vector with syndrome msg, or None on embedding failure."""
        if x.n != self.code.n:
            raise ValueError(f"cover length {x.n} != {self.code.n}")
        if msg.n != self.code.r:
            raise ValueError(f"message length {msg.n} != {self.code.r}")
        s = self._embed_int(x.bits, msg.bits)
        return None if s is None else BitVector(self.code.n, s)

    def extract(self, v: BitVector) -> BitVector:
        """v.H^T."""
        if v.n != self.code.n:
            raise ValueError(f"length {v.n} != {self.code.n}")
        return BitVector(self.code.r, self.code.syndrome_int(v.bits))


def embed(scheme: StegoScheme, x: BitVector, msg: BitVector) -> BitVector | None:
    return scheme.embed(x, msg)


def extract(scheme: StegoScheme, v: BitVector) -> BitVector:
    return scheme.extract(v)


@dataclass
class SchemeParams:
    """Full parameter record of a stegoscheme realization.

    T_avg (and the quantities derived from it) is None when the coset
    enumeration needed for it exceeds the cap.  For bounded decoders the
    unconditional average over all cosets is reported in T_avg (matching
    the covering/average-radius convention) and the average over
    decodable cosets only in T_avg_conditional.  p_S_paper normalizes the
    coset count by 2^(m*t) instead of 2^r, which differs from p_S only
    for BCH_4(3).
    """

    n: int
    r: int
    T: int | None
    T_avg: Fraction | None
    a: Fraction
    R: Fraction | None
    R_avg: Fraction | None
    e: Fraction | None
    e_avg: float | None
    p_S: Fraction
    e_rel: float | None
    e_avg_rel: float | None
    m: int | None = None
    p_S_paper: Fraction | None = None
    T_avg_conditional: Fraction | None = None
    e_avg_conditional: float | None = None

    def to_json(self) -> str:
        def render(v):
            if isinstance(v, Fraction):
                return {"num": v.numerator, "den": v.denominator, "value": float(v)}
            return v

        return json.dumps(
            {k: render(v) for k, v in self.__dict__.items()}, sort_keys=True
        )

    def to_csv_row(self) -> str:
        def cell(v):
            if v is None:
                return "n/a"
            if isinstance(v, Fraction):
                return repr(float(v))
            if isinstance(v, float):
                return repr(v)
            return str(v)

        return ",".join(cell(getattr(self, k)) for k in CSV_COLUMNS)


def scheme_params(scheme: StegoScheme, cap: int = DEFAULT_TABLE_CAP) -> SchemeParams:
    """Derive (n, r, T, T_avg, rates, efficiencies, p_S) for a scheme."""
    code = scheme.code
    n, r = code.n, code.r
    m = scheme.meta.get("m")
    t = scheme.meta.get("t")

    T: int | None
    T_avg: Fraction | None
    T_cond: Fraction | None = None
    try:
        table = coset_leader_table(code, cap)
        T = table.max_weight
        T_avg = average_radius(code, cap)
        if scheme.decoder == "bounded-bch":
            num = sum(j * a for j, a in enumerate(table.weight_histogram[: t + 1]))
            den = sum(table.weight_histogram[: t + 1])
            T_cond = Fraction(num, den)
    except ResourceLimitError:
        T_avg = None
        T = scheme.t_embed if scheme.decoder != "bounded-bch" else (
            bch_mod.KNOWN_COVERING_RADIUS.get(t)
        )

    if scheme.decoder == "punctured":
        T = scheme.t_embed  # worst case is t by construction

    if scheme.decoder == "bounded-bch":
        p_S = embedding_probability(n, r, t)
        p_S_paper = embedding_probability(n, m * t, t)
    else:
        p_S = Fraction(1)
        p_S_paper = Fraction(1)

    a = Fraction(r, n)
    e = Fraction(r, T) if T else None
    R = Fraction(T, n) if T is not None else None
    R_avg = T_avg / n if T_avg is not None else None
    e_avg = float(r / T_avg) if T_avg not in (None, 0) else None
    e_cond = float(r / T_cond) if T_cond not in (None, 0) else None
    return SchemeParams(
        n=n, r=r, T=T, T_avg=T_avg, a=a, R=R, R_avg=R_avg,
        e=e, e_avg=e_avg, p_S=p_S,
        e_rel=float(e * p_S) if e is not None else None,
        e_avg_rel=float(e_avg * p_S) if e_avg is not None else None,
        m=m, p_S_paper=p_S_paper,
        T_avg_conditional=T_cond, e_avg_conditional=e_cond,
    )


def entropy_bound(q: int, a) -> float:
    """Upper bound a / H_q^{-1}(a) on embedding efficiency at relative
    payload a; the inverse entropy is found by bisection to 1e-12."""
    if not 0 < a <= 1:
        raise ValueError("relative payload must be in (0, 1]")
    a = float(a)
    if a == 1.0:
        # the entropy is flat at its maximum (q-1)/q, where bisection on
        # H(x) = a loses half its precision; the inverse is known exactly
        return q / (q - 1)

    def H(x: float) -> float:
        if x <= 0:
            return 0.0
        s = x * math.log(q - 1, q) if q > 2 else 0.0
        s -= x * math.log(x, q)
        if x < 1:
            s -= (1 - x) * math.log(1 - x, q)
        return s

    lo, hi = 0.0, (q - 1) / q
    while hi - lo > 1e-12:
        mid = (lo + hi) / 2
        if H(mid) < a:
            lo = mid
        else:
            hi = mid
    x = (lo + hi) / 2
    return a / x


def empirical_probability(
    scheme: StegoScheme, trials: int = 10**4, seed: int = 0
) -> Fraction:
    """Fraction of (cover, message) pairs for which embedding succeeds;
    exhaustive when the pair space is at most 2^24."""
    if trials < 1:
        raise ValueError("trials >= 1 required")
    n, r = scheme.code.n, scheme.code.r
    if n + r <= 24:
        ok = 0
        for x in range(1 << n):
            for msg in range(1 << r):
                if scheme._embed_int(x, msg) is not None:
                    ok += 1
        return Fraction(ok, 1 << (n + r))
    rng = random.Random(seed)
    ok = 0
    for _ in range(trials):
        x = rng.getrandbits(n)
        msg = rng.getrandbits(r)
        if scheme._embed_int(x, msg) is not None:
            ok += 1
    return Fraction(ok, trials)
