"""Channel simulation: determinism, ML sanity, SNR bookkeeping."""

import math

import numpy as np
import pytest

from quatstbc.exactnum import Field, gaussian
from quatstbc.algebras import QuaternionAlgebra
from quatstbc.codes import (
    CodebookSpec,
    Codebook,
    build_quaternion_codebook,
    golden_codebook,
    qam_alphabet,
)
from quatstbc.sim import (
    ChannelConfig,
    SimPoint,
    SimResult,
    intervals_separated,
    ordering_check,
    received_energy,
    run_sim,
    snr_scale,
    zero_noise_accuracy,
)

TAKE5 = build_quaternion_codebook(
    CodebookSpec(
        QuaternionAlgebra(gaussian(1, 2), gaussian(0, 1), Field.QI), qam_alphabet(4)
    )
)


class TestAlphabets:
    def test_sizes(self):
        assert len(qam_alphabet(4)) == 4
        assert len(qam_alphabet(16)) == 16
        with pytest.raises(ValueError):
            qam_alphabet(64)

    def test_mean_energy(self):
        e4 = sum(float(s.norm()) for s in qam_alphabet(4)) / 4
        assert e4 == 2.0
        e16 = sum(float(s.norm()) for s in qam_alphabet(16)) / 16
        assert e16 == 10.0


class TestSnrScale:
    def test_zero_db_matches_received_energy(self):
        assert snr_scale(0.0, TAKE5) == pytest.approx(received_energy(TAKE5))

    def test_ten_db_divides_by_ten(self):
        assert snr_scale(10.0, TAKE5) == pytest.approx(received_energy(TAKE5) / 10)

    def test_scale_invariance_of_measured_convention(self):
        scaled = Codebook("s", TAKE5.matrices * 3.0, TAKE5.symbols, {})
        r1 = snr_scale(12.0, TAKE5) / received_energy(TAKE5)
        r2 = snr_scale(12.0, scaled) / received_energy(scaled)
        assert r1 == pytest.approx(r2)

    def test_metadata_round_trip(self):
        cfg = ChannelConfig(2, 2, (10.0,), trials=10, seed=3)
        res = run_sim(TAKE5, cfg)
        assert res.points[0].noise_var == pytest.approx(snr_scale(10.0, TAKE5))
        assert "snr" in res.meta["snr_definition"]


class TestRunSim:
    def test_deterministic(self):
        cfg = ChannelConfig(2, 2, (12.0, 16.0), trials=2000, seed=99)
        r1 = run_sim(TAKE5, cfg)
        r2 = run_sim(TAKE5, cfg)
        for p1, p2 in zip(r1.points, r2.points):
            assert (p1.ser, p1.bler, p1.ser_ci) == (p2.ser, p2.bler, p2.ser_ci)

    def test_seed_changes_result(self):
        cfg1 = ChannelConfig(2, 2, (10.0,), trials=3000, seed=1)
        cfg2 = ChannelConfig(2, 2, (10.0,), trials=3000, seed=2)
        assert run_sim(TAKE5, cfg1).points[0].ser != run_sim(TAKE5, cfg2).points[0].ser

    def test_zero_noise_decodes_perfectly(self):
        assert zero_noise_accuracy(TAKE5, trials=500, seed=11) == 1.0

    def test_rates_decrease_with_snr(self):
        cfg = ChannelConfig(2, 2, (6.0, 12.0, 18.0), trials=4000, seed=5)
        res = run_sim(TAKE5, cfg)
        sers = [p.ser for p in res.points]
        # statistical monotonicity: allow the half-widths as slack
        for lo, hi in zip(res.points[1:], res.points[:-1]):
            assert lo.ser <= hi.ser + lo.ser_ci + hi.ser_ci

    def test_trials_validation(self):
        with pytest.raises(ValueError):
            ChannelConfig(2, 2, (10.0,), trials=0)

    def test_dimension_validation(self):
        cfg = ChannelConfig(4, 4, (10.0,), trials=10)
        with pytest.raises(ValueError, match="tx antennas"):
            run_sim(TAKE5, cfg)

    def test_codebook_budget(self):
        big = Codebook(
            "big",
            np.zeros((10**6 + 1, 1, 1), dtype=complex),
            np.zeros((10**6 + 1, 0)),
            {},
        )
        cfg = ChannelConfig(1, 1, (10.0,), trials=1)
        with pytest.raises(ValueError, match="budget"):
            run_sim(big, cfg)

    def test_reference_energy_convention(self):
        cfg_meas = ChannelConfig(2, 2, (12.0,), trials=1000, seed=8)
        cfg_ref = ChannelConfig(
            2, 2, (12.0,), trials=1000, seed=8, reference_energy=received_energy(TAKE5)
        )
        r1, r2 = run_sim(TAKE5, cfg_meas), run_sim(TAKE5, cfg_ref)
        assert r1.points[0].noise_var == pytest.approx(r2.points[0].noise_var)
        assert r1.points[0].ser == r2.points[0].ser

    def test_csv_output(self):
        cfg = ChannelConfig(2, 2, (10.0,), trials=100, seed=1)
        csv = run_sim(TAKE5, cfg).to_csv()
        assert csv.splitlines()[0] == "snr_db,ser,bler,ser_ci,bler_ci,trials"
        assert len(csv.splitlines()) == 2


def _fake_result(name, ser, ci):
    return SimResult([SimPoint(14.0, ser, ser, ci, ci, 1000, 0.1)], {"codebook": name})


class TestOrderingCheck:
    def test_separated(self):
        a, b = SimPoint(14, 0.01, 0.01, 0.001, 0.001, 1, 0.1), SimPoint(
            14, 0.02, 0.02, 0.001, 0.001, 1, 0.1
        )
        assert intervals_separated(a, b)
        assert not intervals_separated(b, a)

    def test_overlap_is_inconclusive(self):
        res = {
            "a": _fake_result("a", 0.010, 0.0005),
            "b": _fake_result("b", 0.011, 0.0009),
            "c": _fake_result("c", 0.020, 0.0005),
        }
        chk = ordering_check(res, ("a", "b", "c"), 14.0)
        assert chk["verdict"] == "inconclusive"
        assert [c["separated"] for c in chk["chain"]] == [False, True]

    def test_ordered(self):
        res = {
            "a": _fake_result("a", 0.010, 0.0005),
            "b": _fake_result("b", 0.015, 0.0005),
        }
        assert ordering_check(res, ("a", "b"), 14.0)["verdict"] == "ordered"


class TestGoldenSmoke:
    def test_golden_beats_unshaped_underlier(self):
        # the shaped code vs the same algebra without shaping, short run
        A5 = QuaternionAlgebra(gaussian(5), gaussian(0, 1), Field.QI)
        unshaped = build_quaternion_codebook(
            CodebookSpec(A5, qam_alphabet(4)), force=True
        )
        cfg = ChannelConfig(
            2, 2, (14.0,), trials=8000, seed=31, reference_energy=4.0
        )
        golden = run_sim(golden_codebook(), cfg)
        raw = run_sim(unshaped, cfg)
        assert golden.points[0].ser < raw.points[0].ser
