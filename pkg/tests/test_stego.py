import json
import math
import random
from fractions import Fraction

import pytest

import punctstego as ps
from punctstego.linalg2 import BitVector
from punctstego.stego import (
    CSV_COLUMNS,
    StegoScheme,
    empirical_probability,
    entropy_bound,
    scheme_params,
)

from conftest import get_bch, get_puncture


class TestCosetTableScheme:
    def test_hamming_zero_cover(self, hamming74):
        # syndrome coordinates spell the coordinate index + 1, so embedding
        # message 3 into the all-zero cover flips coordinate 2
        scheme = StegoScheme.coset_table(hamming74)
        x = BitVector(7, 0)
        msg = BitVector(3, 0b011)
        v = scheme.embed(x, msg)
        assert v.bits == 1 << 2
        assert scheme.extract(v) == msg

    def test_round_trip_and_distortion(self, hamming74):
        scheme = StegoScheme.coset_table(hamming74)
        for x in range(1 << 7):
            for msg in range(1 << 3):
                v = scheme.embed(BitVector(7, x), BitVector(3, msg))
                assert scheme.extract(v).bits == msg
                assert (v ^ BitVector(7, x)).weight() <= scheme.t_embed
        assert scheme.t_embed == 1

    def test_proper_hamming_exhaustive(self, hamming74):
        scheme = StegoScheme.coset_table(hamming74)
        assert scheme.proper
        for x in range(1 << 7):
            xv = BitVector(7, x)
            assert scheme.embed(xv, scheme.extract(xv)) == xv

    def test_proper_bch_random(self, bch42):
        scheme = StegoScheme.coset_table(bch42.base)
        rng = random.Random(7)
        for _ in range(10**4):
            x = BitVector(15, rng.getrandbits(15))
            assert scheme.embed(x, scheme.extract(x)) == x

    def test_length_checks(self, hamming74):
        scheme = StegoScheme.coset_table(hamming74)
        with pytest.raises(ValueError):
            scheme.embed(BitVector(8, 0), BitVector(3, 0))
        with pytest.raises(ValueError):
            scheme.embed(BitVector(7, 0), BitVector(4, 0))
        with pytest.raises(ValueError):
            scheme.extract(BitVector(6, 0))

    def test_module_level_helpers(self, hamming74):
        scheme = StegoScheme.coset_table(hamming74)
        x, msg = BitVector(7, 0b1010101), BitVector(3, 0b110)
        v = ps.embed(scheme, x, msg)
        assert ps.extract(scheme, v) == msg


class TestBoundedBCHScheme:
    def test_round_trip_within_radius(self, bch42):
        scheme = StegoScheme.bounded_bch(bch42)
        rng = random.Random(11)
        successes = 0
        for _ in range(2000):
            x = BitVector(15, rng.getrandbits(15))
            msg = BitVector(8, rng.getrandbits(8))
            v = scheme.embed(x, msg)
            if v is None:
                continue
            successes += 1
            assert scheme.extract(v) == msg
            assert (v ^ x).weight() <= 2
        assert successes > 0
        assert not scheme.proper

    def test_failure_exists(self, bch43):
        # BCH(15, t=3) has covering radius 5, so some cosets are undecodable
        scheme = StegoScheme.bounded_bch(bch43)
        table = ps.coset_leader_table(bch43.base)
        deep = next(
            s for s in range(1 << 10) if table.weights[s] > 3
        )
        x = BitVector(15, 0)
        assert scheme.embed(x, BitVector(10, deep)) is None

    def test_success_iff_leader_within_t(self, bch43):
        scheme = StegoScheme.bounded_bch(bch43)
        table = ps.coset_leader_table(bch43.base)
        rng = random.Random(3)
        for _ in range(500):
            x = rng.getrandbits(15)
            msg = rng.getrandbits(10)
            got = scheme._embed_int(x, msg)
            want_ok = table.weights[bch43.base.syndrome_int(x) ^ msg] <= 3
            assert (got is not None) == want_ok


class TestPuncturedScheme:
    def test_total_round_trip(self, bch43, punct43):
        scheme = StegoScheme.punctured(bch43, punct43.positions)
        n, r = scheme.code.n, scheme.code.r
        assert (n, r) == (12, 7)
        rng = random.Random(5)
        for _ in range(2000):
            x = BitVector(n, rng.getrandbits(n))
            msg = BitVector(r, rng.getrandbits(r))
            v = scheme.embed(x, msg)
            assert v is not None
            assert scheme.extract(v) == msg
            assert (v ^ x).weight() <= 3

    def test_proper(self, bch43, punct43):
        scheme = StegoScheme.punctured(bch43, punct43.positions)
        assert scheme.proper
        rng = random.Random(6)
        for _ in range(2000):
            x = BitVector(12, rng.getrandbits(12))
            assert scheme.embed(x, scheme.extract(x)) == x

    def test_cache_does_not_change_results(self, bch43, punct43):
        cached = StegoScheme.punctured(bch43, punct43.positions)
        plain = StegoScheme.punctured(
            bch43, punct43.positions, cache_decodes=False
        )
        rng = random.Random(9)
        for _ in range(500):
            x = rng.getrandbits(12)
            msg = rng.getrandbits(7)
            assert cached._embed_int(x, msg) == plain._embed_int(x, msg)


class TestSchemeParams:
    def test_bounded_bch53(self):
        params = scheme_params(StegoScheme.bounded_bch(get_bch(5, 3)))
        assert (params.n, params.r) == (31, 15)
        assert params.T == 5
        assert params.e == Fraction(15, 5)
        assert abs(params.e_avg - 15 / 4.2818) < 0.01
        assert params.a == Fraction(15, 31)

    def test_bounded_bch43_probabilities(self, bch43):
        params = scheme_params(StegoScheme.bounded_bch(bch43))
        assert params.p_S == Fraction(576, 1024)
        assert params.p_S_paper == Fraction(576, 4096)
        assert params.e_rel == pytest.approx(float(params.e * params.p_S))
        # conditional average only counts cosets the decoder can reach
        assert params.T_avg_conditional == Fraction(
            0 * 1 + 1 * 15 + 2 * 105 + 3 * 455, 576
        )

    def test_punctured_bch52(self):
        res = get_puncture(5, 2)
        params = scheme_params(StegoScheme.punctured(get_bch(5, 2), res.positions))
        assert (params.n, params.r) == (28, 7)
        assert params.T == 2
        assert params.e == Fraction(7, 2)
        assert params.p_S == Fraction(1)

    def test_coset_table_hamming(self, hamming74):
        params = scheme_params(StegoScheme.coset_table(hamming74))
        assert params.T == 1
        assert params.T_avg == Fraction(7, 8)
        assert params.e == Fraction(3, 1)
        assert params.p_S == Fraction(1)

    def test_csv_and_json_stable(self, bch43):
        params = scheme_params(StegoScheme.bounded_bch(bch43))
        row = params.to_csv_row()
        assert len(row.split(",")) == len(CSV_COLUMNS)
        blob = json.loads(params.to_json())
        assert blob["n"] == 15
        assert blob["p_S"]["num"] == 9 and blob["p_S"]["den"] == 16
        # serialization is deterministic
        assert params.to_json() == scheme_params(
            StegoScheme.bounded_bch(bch43)
        ).to_json()


class TestEntropyBound:
    def test_full_payload_binary(self):
        assert entropy_bound(2, 1) == pytest.approx(2.0, abs=1e-9)

    def test_inverse_matches_forward_entropy(self):
        # forward-evaluate H2(0.25) and check the bound returns a / 0.25
        x = 0.25
        a = -x * math.log2(x) - (1 - x) * math.log2(1 - x)
        assert entropy_bound(2, a) == pytest.approx(a / x, abs=1e-9)

    def test_nonbinary(self):
        # H3(2/3) = 1, so the ternary bound at full payload is 3/2
        assert entropy_bound(3, 1) == pytest.approx(1.5, abs=1e-9)

    def test_domain(self):
        with pytest.raises(ValueError):
            entropy_bound(2, 0)
        with pytest.raises(ValueError):
            entropy_bound(2, 1.5)

    def test_dominates_measured_efficiency(self, bch43, hamming74):
        for scheme in (
            StegoScheme.coset_table(hamming74),
            StegoScheme.bounded_bch(bch43),
        ):
            params = scheme_params(scheme)
            assert params.e_avg <= entropy_bound(2, params.a) + 1e-9


class TestEmpiricalProbability:
    def test_exhaustive_complete_scheme(self, hamming74):
        scheme = StegoScheme.coset_table(hamming74)
        assert empirical_probability(scheme) == Fraction(1)

    def test_sampled_bounded_scheme(self, bch43):
        scheme = StegoScheme.bounded_bch(bch43)
        p = empirical_probability(scheme, trials=4000, seed=1)
        assert abs(float(p) - 576 / 1024) < 0.03

    def test_seed_reproducible(self, bch43):
        scheme = StegoScheme.bounded_bch(bch43)
        assert empirical_probability(scheme, trials=500, seed=2) == (
            empirical_probability(scheme, trials=500, seed=2)
        )

    def test_trials_validation(self, hamming74):
        with pytest.raises(ValueError):
            empirical_probability(StegoScheme.coset_table(hamming74), trials=0)
