"""Command-line front end.

Subcommands: info, table1, table2, puncture, tables34, embed, extract,
bound, verify.  Exit codes: 0 ok, 1 usage, 2 resource limit,
3 verification failure, 4 embedding failure.
"""

from __future__ import annotations

import argparse
import json
import os
import struct
import sys

from . import bch as bch_mod
from ._backend import BACKEND
from .codes import (
    DEFAULT_TABLE_CAP,
    ResourceLimitError,
    average_radius,
    ball_volume,
    coset_leader_table,
    hamming_code,
    syndrome_table_size_mb,
)
from .linalg2 import BitVector
from .puncturing import StopPolicy, embedding_probability, find_puncture_set
from .stego import StegoScheme, entropy_bound, scheme_params

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RESOURCE = 2
EXIT_VERIFY = 3
EXIT_EMBED = 4

CAP_ENV = "PUNCTSTEGO_CAP"

# ---------------------------------------------------------------------------
# Bitstream container
# ---------------------------------------------------------------------------

_MAGIC = b"STGC"
_HEADER = "<4sBBHHIII"  # magic, version, kind, n', r', blocks, pad, msg_pad
KIND_STEGO = 0
KIND_MESSAGE = 1


def bits_from_bytes(data: bytes) -> list[int]:
    """Big-endian bit order within each byte."""
    out = []
    for byte in data:
        for b in range(7, -1, -1):
            out.append((byte >> b) & 1)
    return out


def bytes_from_bits(bits: list[int]) -> bytes:
    out = bytearray()
    for i in range(0, len(bits), 8):
        chunk = bits[i:i + 8]
        byte = 0
        for j, bit in enumerate(chunk):
            byte |= (bit & 1) << (7 - j)
        out.append(byte)
    return bytes(out)


def write_bitstream(path, kind, n_prime, r_prime, blocks, pad, msg_pad, bits):
    with open(path, "wb") as fh:
        fh.write(
            struct.pack(_HEADER, _MAGIC, 1, kind, n_prime, r_prime, blocks, pad, msg_pad)
        )
        fh.write(bytes_from_bits(bits))


def read_bitstream(path):
    with open(path, "rb") as fh:
        header = fh.read(struct.calcsize(_HEADER))
        magic, ver, kind, n_prime, r_prime, blocks, pad, msg_pad = struct.unpack(
            _HEADER, header
        )
        if magic != _MAGIC:
            raise ValueError("not a STGC bitstream file")
        if ver != 1:
            raise ValueError(f"unsupported STGC version {ver}")
        payload = fh.read()
    per_block = n_prime if kind == KIND_STEGO else r_prime
    nbits = blocks * per_block
    bits = bits_from_bytes(payload)[:nbits]
    if len(bits) < nbits:
        raise ValueError("truncated STGC payload")
    return {
        "kind": kind, "n_prime": n_prime, "r_prime": r_prime,
        "blocks": blocks, "pad": pad, "msg_pad": msg_pad, "bits": bits,
    }


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _cap(args) -> int:
    cap = args.cap
    if cap is None:
        cap = int(os.environ.get(CAP_ENV, DEFAULT_TABLE_CAP))
    if cap < 1 << 10:
        raise SystemExit("--cap must be at least 2^10")
    return cap


def _parse_range(spec: str) -> list[int]:
    if ":" in spec:
        lo, hi = spec.split(":")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in spec.split(",")]


def _emit(args, rows: list[dict], columns: list[str]) -> None:
    fmt = args.format
    if fmt == "json":
        print(json.dumps(rows, indent=2))
    elif fmt == "csv":
        print(",".join(columns))
        for row in rows:
            print(",".join(str(row.get(c, "n/a")) for c in columns))
    else:
        widths = {c: max(len(c), *(len(str(r.get(c, "n/a"))) for r in rows)) for c in columns}
        print("  ".join(c.rjust(widths[c]) for c in columns))
        for row in rows:
            print("  ".join(str(row.get(c, "n/a")).rjust(widths[c]) for c in columns))


def _policy(args) -> StopPolicy:
    mode = args.mode
    if mode == "reach_t":
        return StopPolicy.reach_t(args.t)
    if mode == "target_p":
        if args.p_target is None:
            raise SystemExit("--p-target required for mode target_p")
        return StopPolicy.target_probability(args.t, args.p_target)
    if mode == "max_p":
        if args.p_max is None:
            raise SystemExit("--p-max required for mode max_p")
        return StopPolicy.max_punctures(args.t, args.p_max)
    raise SystemExit(f"unknown mode {mode}")


def _build_code(args, cap):
    if args.family == "hamming":
        return hamming_code(args.m), None
    bchc = bch_mod.bch_code(args.m, args.t)
    return bchc.base, bchc


def _build_scheme(args, cap) -> StegoScheme:
    if args.family == "hamming":
        return StegoScheme.coset_table(hamming_code(args.m), cap)
    bchc = bch_mod.bch_code(args.m, args.t)
    if args.scheme == "table":
        return StegoScheme.coset_table(bchc.base, cap)
    if args.scheme == "bounded":
        return StegoScheme.bounded_bch(bchc)
    # punctured: recompute the deterministic puncture set
    result = find_puncture_set(
        bchc.base, args.t, StopPolicy.reach_t(args.t), cap=cap,
        first_positions=args.puncture_first_positions,
    )
    return StegoScheme.punctured(bchc, result.positions)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_info(args) -> int:
    cap = _cap(args)
    code, bchc = _build_code(args, cap)
    row = {
        "family": args.family, "m": args.m, "t": args.t,
        "n": code.n, "k": code.k, "r": code.r, "backend": BACKEND,
    }
    if bchc is not None:
        row["generator_poly"] = format(bchc.generator_poly, "b")
    try:
        table = coset_leader_table(code, cap)
        row["covering_radius"] = table.max_weight
        row["average_radius"] = float(average_radius(code, cap))
        row["leader_histogram"] = list(table.weight_histogram)
    except ResourceLimitError as exc:
        row["covering_radius"] = "n/a"
        row["note"] = str(exc)
    _emit(args, [row], list(row.keys()))
    return EXIT_OK


def cmd_table1(args) -> int:
    rows = []
    for m in _parse_range(args.m_range):
        n = (1 << m) - 1
        rows.append({"m": m, "size_mb": f"{syndrome_table_size_mb(n, 3 * m):.3f}"})
    _emit(args, rows, ["m", "size_mb"])
    return EXIT_OK


def cmd_table2(args) -> int:
    cap = _cap(args)
    rows = []
    for m in _parse_range(args.m_range):
        bchc = bch_mod.bch_code(m, 3)
        scheme = StegoScheme.bounded_bch(bchc)
        params = scheme_params(scheme, cap)
        p_paper = float(params.p_S_paper)
        row = {
            "m": m, "n": params.n, "r": params.r,
            "T_avg": round(float(params.T_avg), 2) if params.T_avg is not None else "n/a",
            "e": round(float(params.e), 4) if params.e is not None else "n/a",
            "e_avg": round(params.e_avg, 3) if params.e_avg is not None else "n/a",
            "p_S": round(p_paper, 3),
            "e_rel": round(float(params.e) * p_paper, 3) if params.e is not None else "n/a",
            "e_avg_rel": round(params.e_avg * p_paper, 3) if params.e_avg is not None else "n/a",
        }
        rows.append(row)
    _emit(args, rows, ["m", "n", "r", "T_avg", "e", "e_avg", "p_S", "e_rel", "e_avg_rel"])
    return EXIT_OK


def cmd_puncture(args) -> int:
    cap = _cap(args)
    try:
        bchc = bch_mod.bch_code(args.m, args.t)
        result = find_puncture_set(
            bchc.base, args.t, _policy(args), cap=cap,
            first_positions=args.puncture_first_positions,
        )
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    child = result.child
    p_s = embedding_probability(child.n, child.r, args.t)
    report = {
        "family": args.family, "m": args.m, "t": args.t,
        "n": bchc.n, "r": bchc.r,
        "positions_0based": list(result.positions),
        "positions_1based": [p + 1 for p in result.positions],
        "n_prime": child.n, "r_prime": child.r,
        "achieved_rho": result.achieved_rho,
        "converged": result.converged,
        "e_prime": round(child.r / args.t, 4),
        "p_S": float(p_s),
        "trace": result.trace,
    }
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report, fh, indent=2)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        for key in ("positions_1based", "n_prime", "r_prime", "achieved_rho",
                    "converged", "e_prime", "p_S"):
            print(f"{key}: {report[key]}")
    return EXIT_OK if result.converged else EXIT_VERIFY


def cmd_tables34(args) -> int:
    cap = _cap(args)
    t = args.t
    rows = []
    for m in _parse_range(args.m_range):
        bchc = bch_mod.bch_code(m, t)
        row = {"m": m, "n": bchc.n, "r": bchc.r, "a": round(bchc.r / bchc.n, 4)}
        try:
            tavg = average_radius(bchc.base, cap)
            rho = coset_leader_table(bchc.base, cap).max_weight
            row["R_avg"] = round(float(tavg) / bchc.n, 4)
            row["e"] = round(bchc.r / rho, 4)
            row["e_avg"] = round(float(bchc.r / tavg), 4)
            result = find_puncture_set(
                bchc.base, t, StopPolicy.reach_t(t), cap=cap,
                first_positions=args.puncture_first_positions,
            )
            child = result.child
            ctavg = average_radius(child, cap)
            row.update({
                "n_prime": child.n, "r_prime": child.r,
                "a_prime": round(child.r / child.n, 4),
                "R_avg_prime": round(float(ctavg) / child.n, 4),
                "e_prime": round(child.r / t, 4),
                "e_avg_prime": round(float(child.r / ctavg), 4),
            })
        except ResourceLimitError:
            row["R_avg"] = "n/a"
        rows.append(row)
    _emit(args, rows, ["m", "n", "r", "a", "R_avg", "e", "e_avg", "n_prime",
                       "r_prime", "a_prime", "R_avg_prime", "e_prime", "e_avg_prime"])
    return EXIT_OK


def cmd_embed(args) -> int:
    cap = _cap(args)
    scheme = _build_scheme(args, cap)
    n_prime, r_prime = scheme.code.n, scheme.code.r
    with open(args.infile, "rb") as fh:
        cover_bits = bits_from_bytes(fh.read())
    with open(args.msg, "rb") as fh:
        msg_bits = bits_from_bytes(fh.read())
    pad = (-len(cover_bits)) % n_prime
    cover_bits += [0] * pad
    blocks = len(cover_bits) // n_prime
    capacity = blocks * r_prime
    if len(msg_bits) > capacity:
        print(
            f"message too long: {len(msg_bits)} bits > capacity {capacity} "
            f"({blocks} blocks x {r_prime} bits)", file=sys.stderr,
        )
        return EXIT_USAGE
    msg_pad = capacity - len(msg_bits)
    msg_bits = msg_bits + [0] * msg_pad
    stego_bits: list[int] = []
    failures = []
    for b in range(blocks):
        x = BitVector.from_bits(cover_bits[b * n_prime:(b + 1) * n_prime])
        msg = BitVector.from_bits(msg_bits[b * r_prime:(b + 1) * r_prime])
        s = scheme.embed(x, msg)
        if s is None:
            failures.append(b)
            stego_bits += x.to_list()
        else:
            stego_bits += s.to_list()
    if failures:
        print(f"embedding failed on blocks {failures}", file=sys.stderr)
        return EXIT_EMBED
    write_bitstream(args.out, KIND_STEGO, n_prime, r_prime, blocks, pad, msg_pad,
                    stego_bits)
    print(f"embedded {capacity - msg_pad} message bits into {blocks} blocks -> {args.out}")
    return EXIT_OK


def cmd_extract(args) -> int:
    cap = _cap(args)
    scheme = _build_scheme(args, cap)
    data = read_bitstream(args.infile)
    if data["kind"] != KIND_STEGO:
        print("input is not a stego bitstream", file=sys.stderr)
        return EXIT_USAGE
    n_prime, r_prime = data["n_prime"], data["r_prime"]
    if (n_prime, r_prime) != (scheme.code.n, scheme.code.r):
        print(
            f"scheme mismatch: file has (n'={n_prime}, r'={r_prime}), "
            f"scheme has (n'={scheme.code.n}, r'={scheme.code.r})",
            file=sys.stderr,
        )
        return EXIT_USAGE
    msg_bits: list[int] = []
    for b in range(data["blocks"]):
        v = BitVector.from_bits(data["bits"][b * n_prime:(b + 1) * n_prime])
        msg_bits += scheme.extract(v).to_list()
    if data["msg_pad"]:
        msg_bits = msg_bits[: -data["msg_pad"]]
    with open(args.out, "wb") as fh:
        fh.write(bytes_from_bits(msg_bits))
    print(f"extracted {len(msg_bits)} message bits -> {args.out}")
    return EXIT_OK


def cmd_bound(args) -> int:
    b = entropy_bound(args.q, args.a)
    if args.format == "json":
        print(json.dumps({"q": args.q, "a": args.a, "bound": b}))
    else:
        print(f"e <= {b:.6f} at relative payload a = {args.a} (q = {args.q})")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------


def _suite_default(cap) -> list[tuple[str, bool]]:
    from .galois import FieldSpec, gf_inv, gf_mul

    checks = []
    f = FieldSpec(4)
    checks.append((
        "gf16 group order",
        all(gf_mul(a, gf_inv(a, f), f) == 1 for a in range(1, 16)),
    ))
    ham = hamming_code(3)
    table = coset_leader_table(ham, cap)
    checks.append(("hamming [7,4] rho=1", table.max_weight == 1))
    bchc = bch_mod.bch_code(4, 2)
    checks.append((
        "bch_4(2) params [15,7] rho=3",
        (bchc.n, bchc.k) == (15, 7)
        and coset_leader_table(bchc.base, cap).max_weight == 3,
    ))
    scheme = StegoScheme.coset_table(ham, cap)
    ok = True
    for x in range(1 << 7):
        for msg in range(1 << 3):
            s = scheme._embed_int(x, msg)
            if ham.syndrome_int(s) != msg or (s ^ x).bit_count() > 1:
                ok = False
    checks.append(("hamming embed/extract exhaustive", ok))
    return checks


def _suite_prop3(cap) -> list[tuple[str, bool]]:
    from .puncturing import proposition3_check

    checks = []
    for name, code in [
        ("hamming[7,4]", hamming_code(3)),
        ("bch_4(2)", bch_mod.bch_code(4, 2).base),
        ("bch_4(3)", bch_mod.bch_code(4, 3).base),
    ]:
        rho = coset_leader_table(code, cap).max_weight
        for j in range(rho + 1):
            res = proposition3_check(code, j, cap)
            checks.append((f"prop3 {name} j={j}", res.ok))
    return checks


def _suite_oracle(cap) -> list[tuple[str, bool]]:
    from .puncturing import StopPolicy, find_puncture_set, punctured_decode_list

    bchc = bch_mod.bch_code(4, 3)
    result = find_puncture_set(bchc.base, 3, StopPolicy.reach_t(3), cap=cap)
    child = result.child
    codewords = child.codewords()
    dec = lambda y: bch_mod.bm_decode(bchc, y)
    ok = True
    for y in range(1 << child.n):
        got = {
            c.bits for c in punctured_decode_list(result.positions, BitVector(child.n, y), dec, 3)
        }
        want = {c for c in codewords if (c ^ y).bit_count() <= 3}
        if not want <= got:
            ok = False
            break
    return [("algorithm-1 vs brute force on punctured bch_4(3)", ok)]


def cmd_verify(args) -> int:
    cap = _cap(args)
    suites = {
        "default": _suite_default,
        "prop3": _suite_prop3,
        "oracle": _suite_oracle,
    }
    if args.suite not in suites:
        print(f"unknown suite {args.suite}", file=sys.stderr)
        return EXIT_USAGE
    checks = suites[args.suite](cap)
    failed = 0
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        failed += not ok
    return EXIT_OK if failed == 0 else EXIT_VERIFY


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_common(p):
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.add_argument("--cap", type=int, default=None,
                   help=f"max coset-table entries (default {CAP_ENV} or 2^26)")
    p.add_argument("--seed", type=int, default=0)


def _add_code(p):
    p.add_argument("--family", choices=["bch", "hamming"], default="bch")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=int, default=3)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="punctstego",
        description="matrix-embedding steganography with punctured codes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="code and scheme parameters")
    _add_code(p)
    _add_common(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("table1", help="syndrome-leader table sizes for BCH_m(3)")
    p.add_argument("--m-range", default="5:10")
    _add_common(p)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("table2", help="efficiency of BCH_m(3) stegoschemes")
    p.add_argument("--m-range", default="4:5")
    _add_common(p)
    p.set_defaults(func=cmd_table2)

    p = sub.add_parser("puncture", help="search a puncture set")
    _add_code(p)
    p.add_argument("--mode", choices=["reach_t", "target_p", "max_p"],
                   default="reach_t")
    p.add_argument("--p-target", type=float, default=None)
    p.add_argument("--p-max", type=int, default=None)
    p.add_argument("--puncture-first-positions", action="store_true")
    p.add_argument("--out", default=None, help="write JSON trace here")
    _add_common(p)
    p.set_defaults(func=cmd_puncture)

    p = sub.add_parser("tables34", help="original vs punctured scheme parameters")
    p.add_argument("--t", type=int, required=True, choices=[2, 3])
    p.add_argument("--m-range", default="4:5")
    p.add_argument("--puncture-first-positions", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_tables34)

    p = sub.add_parser("embed", help="embed a message file into a cover file")
    _add_code(p)
    p.add_argument("--scheme", choices=["punctured", "table", "bounded"],
                   default="punctured")
    p.add_argument("--puncture-first-positions", action="store_true")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--msg", required=True)
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="extract the message from a stego file")
    _add_code(p)
    p.add_argument("--scheme", choices=["punctured", "table", "bounded"],
                   default="punctured")
    p.add_argument("--puncture-first-positions", action="store_true")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("bound", help="entropy upper bound on efficiency")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--q", type=int, default=2)
    _add_common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", default="default",
                   choices=["default", "prop3", "oracle"])
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(f"error: {exc.code}", file=sys.stderr)
            return EXIT_USAGE
        return exc.code or 0
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
