"""Decoding and searching punctured codes.

A bounded decoder for the parent code C lifts to a decoder of the
punctured code C': try every completion of the received word on the
punctured positions (the completion loop is pruned by covering the
prefix space with Hamming balls once an incumbent is known).  A greedy
search picks puncture positions until the covering radius drops to the
decoder's correction capability, at which point embedding always
succeeds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from ._backend import kernels, py_kernels
from .codes import (
    DEFAULT_TABLE_CAP,
    LinearCode,
    ball_volume,
    column_syndromes_rev,
    coset_leader_table,
)
from .linalg2 import BitMatrix, BitVector, delete_columns, project_int, scatter_int

Decoder = Callable[[BitVector], BitVector | None]
IntDecoder = Callable[[int], "int | None"]


@dataclass
class StopPolicy:
    """When to stop puncturing: reach rho' = t, reach a target embedding
    probability, or hit a maximum number of punctures."""

    mode: str  # "reach_t" | "target_probability" | "max_punctures"
    t: int
    p_target: Fraction | float | None = None
    p_max: int | None = None

    def __post_init__(self):
        if self.mode not in ("reach_t", "target_probability", "max_punctures"):
            raise ValueError(f"unknown stop mode {self.mode!r}")
        if self.mode == "target_probability":
            if self.p_target is None or not 0 < self.p_target <= 1:
                raise ValueError("target_probability mode needs p_target in (0, 1]")
        if self.mode == "max_punctures" and (self.p_max is None or self.p_max < 0):
            raise ValueError("max_punctures mode needs p_max >= 0")

    @classmethod
    def reach_t(cls, t: int) -> "StopPolicy":
        return cls(mode="reach_t", t=t)

    @classmethod
    def target_probability(cls, t: int, p_target) -> "StopPolicy":
        return cls(mode="target_probability", t=t, p_target=p_target)

    @classmethod
    def max_punctures(cls, t: int, p_max: int) -> "StopPolicy":
        return cls(mode="max_punctures", t=t, p_max=p_max)


@dataclass
class PunctureResult:
    parent: LinearCode
    positions: tuple[int, ...]      # punctured positions, original 0-based
    child: LinearCode
    achieved_rho: int
    converged: bool
    trace: list[dict] = field(default_factory=list)

    def trace_json(self) -> list[dict]:
        return self.trace


def embedding_probability(n: int, r: int, t: int, q: int = 2) -> Fraction:
    """V_q(n, t) / q^r, capped at 1: chance a uniform (cover, message)
    pair lands in a coset the bounded decoder can reach.  The cap covers
    codes with covering radius <= t, where radius-t balls overlap and
    every coset is reachable."""
    return min(Fraction(ball_volume(q, n, t), q**r), Fraction(1))


# ---------------------------------------------------------------------------
# Algorithm: lifting the parent decoder to the punctured code
# ---------------------------------------------------------------------------


def _complement(P: Sequence[int], n: int) -> list[int]:
    pset = set(P)
    return [i for i in range(n) if i not in pset]


def _decode_list_int(
    P: Sequence[int], keep: Sequence[int], yp: int, dec_int: IntDecoder
) -> list[int]:
    seen: dict[int, None] = {}
    base = scatter_int(yp, keep)
    for prefix in range(1 << len(P)):
        y = base | scatter_int(prefix, P)
        c = dec_int(y)
        if c is not None:
            seen.setdefault(project_int(c, keep), None)
    return list(seen)


def punctured_decode_list(
    P: Sequence[int], y_prime: BitVector, dec: Decoder, t: int
) -> list[BitVector]:
    """All codewords of C' within distance t of y_prime (possibly more).

    Runs the parent decoder on every completion of y_prime over the
    punctured positions and projects the successes.
    """
    P = sorted(P)
    n = y_prime.n + len(P)
    keep = _complement(P, n)

    def dec_int(y: int) -> int | None:
        c = dec(BitVector(n, y))
        return None if c is None else c.bits

    np_ = y_prime.n
    return [
        BitVector(np_, c) for c in _decode_list_int(P, keep, y_prime.bits, dec_int)
    ]


def _farthest_prefix(tried: list[int], plen: int) -> int:
    """Untried prefix maximizing the min distance to the tried set,
    smallest value on ties.  Generalizes the (0,...,0) -> (1,...,1) jump."""
    best = None
    best_d = -1
    for q in range(1 << plen):
        if q in tried:
            continue
        d = min((q ^ p).bit_count() for p in tried)
        if d > best_d:
            best, best_d = q, d
    return best


def _nearest_int(
    P: Sequence[int],
    keep: Sequence[int],
    yp: int,
    dec_int: IntDecoder,
    t: int,
) -> tuple[int | None, int, int]:
    """Pruned nearest-codeword search; returns (codeword, distance, calls).

    Once an incumbent at distance d is known, any strictly better
    codeword would have been found by a parent-decoder call whose prefix
    lies within t - d + 1 of it, so the loop stops as soon as the tried
    prefixes cover the prefix space with balls of that radius.
    """
    plen = len(P)
    base = scatter_int(yp, keep)
    best_c: int | None = None
    best_d = t + 1
    tried: list[int] = []
    calls = 0
    next_prefix = 0
    while True:
        y = base | scatter_int(next_prefix, P)
        calls += 1
        c = dec_int(y)
        tried.append(next_prefix)
        if c is not None:
            cp = project_int(c, keep)
            d = (cp ^ yp).bit_count()
            if d < best_d or (d == best_d and (best_c is None or cp < best_c)):
                best_c, best_d = cp, d
        if best_c is not None:
            if best_d == 0:
                break
            radius = t - best_d + 1
            if all(
                min((q ^ p).bit_count() for p in tried) <= radius
                for q in range(1 << plen)
            ):
                break
        if len(tried) == 1 << plen:
            break
        next_prefix = _farthest_prefix(tried, plen)
    return best_c, best_d, calls


def punctured_decode_nearest(
    P: Sequence[int], y_prime: BitVector, dec: Decoder, t: int
) -> BitVector | None:
    """A codeword of C' at distance d(y', C') from y'; None only if no
    codeword lies within t (impossible once rho' = t)."""
    c, _, _ = punctured_decode_nearest_info(P, y_prime, dec, t)
    return c


def punctured_decode_nearest_info(
    P: Sequence[int], y_prime: BitVector, dec: Decoder, t: int
) -> tuple[BitVector | None, int, int]:
    """Like punctured_decode_nearest but also reports (distance, number of
    parent-decoder calls)."""
    P = sorted(P)
    n = y_prime.n + len(P)
    keep = _complement(P, n)

    def dec_int(y: int) -> int | None:
        c = dec(BitVector(n, y))
        return None if c is None else c.bits

    c, d, calls = _nearest_int(P, keep, y_prime.bits, dec_int, t)
    if c is None:
        return None, d, calls
    return BitVector(y_prime.n, c), d, calls


# ---------------------------------------------------------------------------
# Greedy search for the puncture set
# ---------------------------------------------------------------------------


def _support_counts(code: LinearCode, t: int, all_min_weight: bool):
    table = coset_leader_table(code)
    if all_min_weight:
        backend = kernels if code.n <= 63 else py_kernels
        return backend.support_counts(
            column_syndromes_rev(code), table.weights, code.n, code.r, t
        )
    counts = [0] * code.n
    for s in range(1 << code.r):
        if table.weights[s] > t:
            v = table.leader_int(s)
            while v:
                low = v & -v
                counts[low.bit_length() - 1] += 1
                v &= v - 1
    return counts


def find_puncture_set(
    code: LinearCode,
    t: int,
    policy: StopPolicy | None = None,
    cap: int = DEFAULT_TABLE_CAP,
    all_min_weight: bool = True,
    first_positions: bool = False,
) -> PunctureResult:
    """Greedily puncture until the covering radius reaches t (or the
    policy stops earlier).

    Each step scores positions by how often they occur in the supports of
    the minimum-weight vectors of cosets with leader weight > t (all such
    vectors by default; only the canonical stored leaders when
    all_min_weight=False), punctures the top-scoring position (ties ->
    smallest index), and recomputes the covering radius.  Positions are
    reported as indices of the original code.  With first_positions=True
    the score is skipped and leading positions are punctured in order.
    """
    if policy is None:
        policy = StopPolicy.reach_t(t)
    rho = coset_leader_table(code, cap).max_weight
    if t > rho:
        raise ValueError(f"t={t} exceeds covering radius {rho}")

    current = code
    remaining = list(range(code.n))
    chosen: list[int] = []
    trace: list[dict] = []

    def probability(c: LinearCode) -> Fraction:
        return embedding_probability(c.n, c.r, t)

    def stop(rho_now: int, c: LinearCode) -> bool:
        if rho_now == t:
            return True
        if policy.mode == "target_probability":
            return probability(c) >= policy.p_target
        if policy.mode == "max_punctures":
            return len(chosen) >= policy.p_max
        return False

    while not stop(rho, current) and current.n > 1:
        if first_positions:
            local = 0
        else:
            counts = _support_counts(current, t, all_min_weight)
            best = max(counts)
            local = min(i for i, c in enumerate(counts) if c == best)
        original = remaining.pop(local)
        chosen.append(original)
        child = LinearCode.from_generator(delete_columns(current.G, [local]))
        table = coset_leader_table(child, cap)
        rho = table.max_weight
        current = child
        trace.append(
            {
                "step": len(chosen),
                "position": original,
                "rho_after": rho,
                "n_after": child.n,
                "r_after": child.r,
                "leader_histogram_after": list(table.weight_histogram),
            }
        )

    converged = rho == t or (
        policy.mode == "target_probability"
        and probability(current) >= policy.p_target
    )
    return PunctureResult(
        parent=code,
        positions=tuple(chosen),
        child=current,
        achieved_rho=rho,
        converged=converged,
        trace=trace,
    )


# ---------------------------------------------------------------------------
# Covering-radius bound for support-intersection puncturing
# ---------------------------------------------------------------------------


@dataclass
class Prop3Result:
    j: int
    positions: tuple[int, ...]
    bound: int
    actual: int
    ok: bool
    degenerate: bool


def proposition3_check(
    code: LinearCode, j: int, cap: int = DEFAULT_TABLE_CAP
) -> Prop3Result:
    """Puncture at the common support of all minimal error vectors of the
    deep cosets (leader weight >= rho - j) and compare the child's
    covering radius against max(rho - j - 1, rho - |P_j|)."""
    table = coset_leader_table(code, cap)
    rho = table.max_weight
    if not 0 <= j <= rho:
        raise ValueError(f"j={j} out of range 0..{rho}")
    backend = kernels if code.n <= 63 else py_kernels
    inter = backend.support_intersections(
        column_syndromes_rev(code), table.weights, code.n, code.r
    )
    pj_mask = (1 << code.n) - 1
    for s in range(1 << code.r):
        if table.weights[s] >= rho - j:
            pj_mask &= int(inter[s])
            if pj_mask == 0:
                break
    positions = tuple(i for i in range(code.n) if (pj_mask >> i) & 1)
    if not positions:
        return Prop3Result(
            j=j, positions=(), bound=rho, actual=rho, ok=True, degenerate=True
        )
    child = LinearCode.from_generator(delete_columns(code.G, positions))
    actual = coset_leader_table(child, cap).max_weight
    bound = max(rho - j - 1, rho - len(positions))
    return Prop3Result(
        j=j,
        positions=positions,
        bound=bound,
        actual=actual,
        ok=actual <= bound,
        degenerate=False,
    )
