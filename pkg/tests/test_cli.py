import json
import struct

import pytest

from punctstego import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBitstreamIO:
    def test_bit_round_trip(self):
        data = bytes(range(256))
        assert cli.bytes_from_bits(cli.bits_from_bytes(data)) == data

    def test_bit_order_big_endian(self):
        assert cli.bits_from_bytes(b"\x80") == [1, 0, 0, 0, 0, 0, 0, 0]
        assert cli.bytes_from_bits([0, 0, 0, 0, 0, 0, 0, 1]) == b"\x01"

    def test_container_round_trip(self, tmp_path):
        path = tmp_path / "x.stg"
        bits = [1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0, 1]
        cli.write_bitstream(path, cli.KIND_STEGO, 12, 7, 1, 3, 2, bits)
        data = cli.read_bitstream(path)
        assert data["bits"] == bits
        assert (data["n_prime"], data["r_prime"]) == (12, 7)
        assert (data["pad"], data["msg_pad"]) == (3, 2)

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "bad.stg"
        path.write_bytes(b"NOPE" + b"\x00" * 32)
        with pytest.raises(ValueError):
            cli.read_bitstream(path)

    def test_bad_version(self, tmp_path):
        path = tmp_path / "bad.stg"
        path.write_bytes(struct.pack(cli._HEADER, b"STGC", 9, 0, 1, 1, 0, 0, 0))
        with pytest.raises(ValueError):
            cli.read_bitstream(path)

    def test_truncated_payload(self, tmp_path):
        path = tmp_path / "short.stg"
        path.write_bytes(struct.pack(cli._HEADER, b"STGC", 1, 0, 64, 7, 2, 0, 0))
        with pytest.raises(ValueError):
            cli.read_bitstream(path)


class TestTableCommands:
    def test_table1_values(self, capsys):
        code, out, _ = run(capsys, "table1", "--format", "csv")
        assert code == 0
        rows = dict(line.split(",") for line in out.strip().splitlines()[1:])
        assert rows == {
            "5": "1.507", "6": "21.234", "7": "310.378",
            "8": "4680.843", "9": "72209.138", "10": "1130650.141",
        }

    def test_table2_values(self, capsys):
        code, out, _ = run(capsys, "table2", "--format", "json")
        assert code == 0
        rows = {row["m"]: row for row in json.loads(out)}
        assert rows[4]["T_avg"] == 3.33
        assert rows[4]["e"] == 2.0
        assert rows[4]["p_S"] == 0.141
        assert rows[5]["T_avg"] == 4.28
        assert rows[5]["e"] == 3.0
        assert rows[5]["p_S"] == 0.152

    def test_tables34(self, capsys):
        code, out, _ = run(capsys, "tables34", "--t", "3", "--format", "json")
        assert code == 0
        rows = {row["m"]: row for row in json.loads(out)}
        assert (rows[4]["n_prime"], rows[4]["r_prime"]) == (12, 7)
        assert rows[4]["e_prime"] == pytest.approx(7 / 3, abs=1e-4)
        assert (rows[5]["n_prime"], rows[5]["r_prime"]) == (25, 9)
        code, out, _ = run(capsys, "tables34", "--t", "2", "--m-range", "4",
                           "--format", "json")
        assert code == 0
        row = json.loads(out)[0]
        assert (row["n_prime"], row["r_prime"]) == (11, 4)

    def test_info(self, capsys):
        code, out, _ = run(capsys, "info", "--m", "4", "--t", "3",
                           "--format", "json")
        assert code == 0
        row = json.loads(out)[0]
        assert (row["n"], row["k"], row["r"]) == (15, 5, 10)
        assert row["covering_radius"] == 5
        assert row["leader_histogram"] == [1, 15, 105, 455, 420, 28]

    def test_output_byte_stable(self, capsys):
        _, out1, _ = run(capsys, "table2", "--format", "csv")
        _, out2, _ = run(capsys, "table2", "--format", "csv")
        assert out1 == out2


class TestPunctureCommand:
    def test_reach_t_json(self, capsys, tmp_path):
        trace = tmp_path / "trace.json"
        code, out, _ = run(capsys, "puncture", "--m", "4", "--t", "3",
                           "--format", "json", "--out", str(trace))
        assert code == 0
        report = json.loads(out)
        assert report["positions_0based"] == [0, 1, 2]
        assert report["n_prime"] == 12 and report["r_prime"] == 7
        assert report["achieved_rho"] == 3 and report["converged"]
        assert report["p_S"] == 1.0
        assert json.loads(trace.read_text()) == report
        assert len(report["trace"]) == 3

    def test_max_punctures_unconverged(self, capsys):
        code, out, _ = run(capsys, "puncture", "--m", "4", "--t", "3",
                           "--mode", "max_p", "--p-max", "1")
        assert code == cli.EXIT_VERIFY
        assert "converged: False" in out

    def test_missing_mode_arg(self, capsys):
        code, _, _ = run(capsys, "puncture", "--m", "4", "--t", "3",
                         "--mode", "target_p")
        assert code == cli.EXIT_USAGE


class TestEmbedExtract:
    def embed_extract(self, capsys, tmp_path, scheme_args, cover, msg):
        cover_f = tmp_path / "cover.bin"
        msg_f = tmp_path / "msg.bin"
        stego_f = tmp_path / "out.stg"
        rec_f = tmp_path / "rec.bin"
        cover_f.write_bytes(cover)
        msg_f.write_bytes(msg)
        code, out, err = run(capsys, "embed", *scheme_args,
                             "--in", str(cover_f), "--msg", str(msg_f),
                             "--out", str(stego_f))
        if code != 0:
            return code, None
        code, _, _ = run(capsys, "extract", *scheme_args,
                         "--in", str(stego_f), "--out", str(rec_f))
        assert code == 0
        return 0, rec_f.read_bytes()

    def test_punctured_round_trip(self, capsys, tmp_path):
        cover = bytes(range(1, 61))
        msg = b"covert payload!"
        code, rec = self.embed_extract(
            capsys, tmp_path, ["--m", "4", "--t", "3"], cover, msg
        )
        assert code == 0
        assert rec[: len(msg)] == msg

    def test_table_scheme_round_trip(self, capsys, tmp_path):
        cover = bytes([0x5A] * 30)
        msg = b"hi"
        code, rec = self.embed_extract(
            capsys, tmp_path,
            ["--m", "4", "--t", "2", "--scheme", "table"], cover, msg,
        )
        assert code == 0
        assert rec[: len(msg)] == msg

    def test_hamming_round_trip(self, capsys, tmp_path):
        code, rec = self.embed_extract(
            capsys, tmp_path, ["--family", "hamming", "--m", "3"],
            bytes(range(70)), b"ok",
        )
        assert code == 0
        assert rec[:2] == b"ok"

    def test_message_too_long(self, capsys, tmp_path):
        cover_f = tmp_path / "cover.bin"
        msg_f = tmp_path / "msg.bin"
        cover_f.write_bytes(b"\x00" * 3)  # 24 bits -> two 12-bit blocks
        msg_f.write_bytes(b"\xff\xff\xff")  # 24 message bits > 14 capacity
        code, _, err = run(capsys, "embed", "--m", "4", "--t", "3",
                           "--in", str(cover_f), "--msg", str(msg_f),
                           "--out", str(tmp_path / "o.stg"))
        assert code == cli.EXIT_USAGE
        assert "message too long" in err

    def test_extract_rejects_mismatched_scheme(self, capsys, tmp_path):
        stego_f = tmp_path / "o.stg"
        cli.write_bitstream(stego_f, cli.KIND_STEGO, 7, 3, 1, 0, 0,
                            [0] * 7)
        code, _, err = run(capsys, "extract", "--m", "4", "--t", "3",
                           "--in", str(stego_f), "--out",
                           str(tmp_path / "r.bin"))
        assert code == cli.EXIT_USAGE
        assert "scheme mismatch" in err

    def test_extract_rejects_bad_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.stg"
        bad.write_bytes(b"NOPE" + b"\x00" * 32)
        code, _, err = run(capsys, "extract", "--family", "hamming",
                           "--m", "3", "--in", str(bad),
                           "--out", str(tmp_path / "r.bin"))
        assert code == cli.EXIT_USAGE


class TestBoundAndVerify:
    def test_bound_full_payload(self, capsys):
        code, out, _ = run(capsys, "bound", "--a", "1", "--format", "json")
        assert code == 0
        assert json.loads(out)["bound"] == 2.0

    def test_bound_text(self, capsys):
        code, out, _ = run(capsys, "bound", "--a", "0.5")
        assert code == 0
        assert "e <=" in out

    def test_bound_bad_payload(self, capsys):
        code, _, err = run(capsys, "bound", "--a", "2")
        assert code == cli.EXIT_USAGE

    def test_verify_default(self, capsys):
        code, out, _ = run(capsys, "verify")
        assert code == 0
        assert "FAIL" not in out
        assert "hamming embed/extract exhaustive" in out

    def test_verify_prop3(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "prop3")
        assert code == 0
        assert "FAIL" not in out

    def test_verify_oracle(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "oracle")
        assert code == 0
        assert out.startswith("PASS")


class TestArgHandling:
    def test_unknown_command(self, capsys):
        assert cli.main(["frobnicate"]) == cli.EXIT_USAGE
        capsys.readouterr()

    def test_help_exits_zero(self, capsys):
        assert cli.main(["--help"]) == 0
        capsys.readouterr()

    def test_cap_too_small(self, capsys):
        code, _, _ = run(capsys, "info", "--m", "4", "--t", "2",
                         "--cap", "16")
        assert code == cli.EXIT_USAGE

    def test_resource_limit_exit(self, capsys):
        code, _, err = run(capsys, "info", "--m", "4", "--t", "3",
                           "--cap", "1024")
        # r = 10 needs 1024 entries; use a bigger code to trip the cap
        code2, _, err2 = run(capsys, "puncture", "--m", "5", "--t", "3",
                             "--cap", "1024")
        assert code2 == cli.EXIT_RESOURCE
        assert "resource limit" in err2
