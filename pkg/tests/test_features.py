import math

import numpy as np
import pytest

from jamscope.sim.estimator import EstimateStatus, SpeedEstimate
from jamscope.sim.features import (
    ObservationRecord, assemble_observation, bpsk_ber, compute_pdr, compute_rssi, compute_sinr, delivery_window,
    packet_delivered, packet_success_probability, qfunc,
)
from jamscope.sim.vrs import NUM_NA
from jamscope.util.errors import DomainError, UndefinedInputError


class TestSinr:
    def test_known_values(self):
        assert compute_sinr(1.0, 0.0, 0.01) == pytest.approx(20.0)
        assert compute_sinr(1.0, 0.99, 0.01) == pytest.approx(0.0)

    def test_no_signal_hits_the_floor(self):
        assert compute_sinr(0.0, 1.0, 0.01) == -40.0

    def test_clamped(self):
        assert compute_sinr(1e9, 0.0, 1.0) == 60.0
        assert compute_sinr(1e-9, 1.0, 1.0) == -40.0

    def test_decreases_with_jamming(self):
        values = [compute_sinr(1e-6, j, 1e-8) for j in (0.0, 1e-8, 1e-7, 1e-6)]
        assert values == sorted(values, reverse=True)

    def test_noise_must_be_positive(self):
        with pytest.raises(DomainError):
            compute_sinr(1.0, 0.0, 0.0)


class TestRssi:
    def test_known_values(self):
        assert compute_rssi(100.0, 0.0, 0.0) == pytest.approx(20.0)
        assert compute_rssi(1.0, 1.0, 0.0) == pytest.approx(3.0103, abs=1e-4)

    def test_never_below_signal_power(self):
        assert compute_rssi(1e-6, 3e-7, 1e-9) >= 10 * math.log10(1e-6)

    def test_nothing_received(self):
        with pytest.raises(DomainError):
            compute_rssi(0.0, 0.0, 0.0)


class TestBitErrors:
    def test_q_function(self):
        assert qfunc(0.0) == pytest.approx(0.5)
        assert qfunc(1.0) == pytest.approx(0.158655254, rel=1e-8)
        assert qfunc(3.0) == pytest.approx(1.349898e-3, rel=1e-5)

    def test_bpsk_ber(self):
        assert bpsk_ber(0.0) == pytest.approx(0.5)
        assert bpsk_ber(10 ** 0.96) == pytest.approx(qfunc(math.sqrt(2 * 10 ** 0.96)))
        assert bpsk_ber(-1.0) == pytest.approx(0.5)

    def test_packet_success_at_9_6_db(self):
        ber = float(qfunc(math.sqrt(2 * 9.09)))
        assert packet_success_probability(9.09, 500) == pytest.approx((1 - ber) ** 500)
        assert 0.98 < packet_success_probability(9.09, 500) < 1.0

    def test_packet_success_limits(self):
        assert packet_success_probability(0.0, 500) == pytest.approx(0.0, abs=1e-100)
        assert packet_success_probability(1e4, 500) == pytest.approx(1.0)

    def test_jammed_header_sinks_the_packet(self):
        clean = packet_success_probability(100.0, 500)
        headed = packet_success_probability(100.0, 500, header_bits=84, header_sinr_linear=0.01)
        assert headed < 1e-10 < clean

    def test_delivery_rate_matches_probability(self, rng):
        p = packet_success_probability(3.0, 500)
        rate = np.mean([packet_delivered(3.0, 500, rng) for _ in range(20000)])
        assert rate == pytest.approx(p, abs=0.01)

    def test_stronger_jammer_delivers_less(self, rng):
        signal, noise = 100 / 35**4, 100 / 35**4 / 100
        weak = np.mean([packet_delivered(signal / (1 / 30**4 + noise), 500, rng) for _ in range(1000)])
        strong = np.mean([packet_delivered(signal / (100 / 30**4 + noise), 500, rng) for _ in range(1000)])
        assert strong <= weak


class TestPdr:
    def test_window(self):
        window = delivery_window(10)
        for outcome in [True] * 8 + [False] * 2:
            window.append(outcome)
        assert compute_pdr(window) == pytest.approx(0.8)
        for _ in range(10):
            window.append(True)
        assert compute_pdr(window) == 1.0
        assert compute_pdr([False, False]) == 0.0

    def test_empty_window(self):
        with pytest.raises(UndefinedInputError):
            compute_pdr(delivery_window())


class TestAssembleObservation:
    def test_undetected_emitter_reads_own_speed(self):
        window = delivery_window()
        window.append(True)
        idle = SpeedEstimate(0.0, 0.0, float("inf"), EstimateStatus.NO_SIGNAL)
        record = assemble_observation(1.0, 1e-6, 0.0, 1e-8, idle, 15.0, window, "Interference")
        assert record.delta_u == 15.0
        assert record.own_speed == 15.0
        assert record.vrs == NUM_NA
        assert record.sinr == pytest.approx(20.0)
        assert record.pdr == 1.0
        assert assemble_observation(1.0, 1e-6, 0.0, 1e-8, None, 25.0, window, "Interference").delta_u == 25.0

    def test_detected_emitter_reads_estimate(self):
        window = [True, False]
        estimate = SpeedEstimate(4.9, 96.4, 0.01)
        record = assemble_observation(2.0, 1e-6, 1e-7, 1e-8, estimate, 15.0, window, "SmartAttack")
        assert record.delta_u == pytest.approx(4.9)
        assert record.pdr == 0.5
        assert record.class_label == "SmartAttack"

    def test_record_validation(self):
        with pytest.raises(DomainError):
            ObservationRecord(0.0, -50.0, 10.0, 1.5, 0.0, 15.0, 0.0, "Interference")
        with pytest.raises(DomainError):
            ObservationRecord(0.0, -50.0, 10.0, 1.0, -1.0, 15.0, 0.0, "Interference")
