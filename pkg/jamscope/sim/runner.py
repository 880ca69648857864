"""
Per-tick simulation of one scenario: geometry -> fading taps -> pilot blocks
-> MMSE/Doppler estimate -> packet outcome -> ObservationRecord, then VRS over
the finished run.
"""
from dataclasses import dataclass, field, replace

import numpy as np

from jamscope.sim.channel import (
    RayGeometry, RayKind, make_tap, draw_rayleigh, tap_vector, tap_matrix, complex_noise, path_gain, mw_to_dbm,
)
from jamscope.sim.estimator import (
    pilot_sequence, design_matrix, mmse_weights, separate_jammer_los, estimate_relative_speed,
    calibrate_noise_floor, detection_floor,
)
from jamscope.sim.features import assemble_observation, delivery_window, packet_delivered
from jamscope.sim.scenario import (
    ScenarioKind, SmartJammerState, platoon_track, jammer_trajectory, smart_jammer_activity,
)
from jamscope.sim.vrs import VrsInput, vrs_labels
from jamscope.util.logger import get_logger

logger = get_logger(__name__)


@dataclass
class ScenarioTrace:
    config: object
    records: list
    truth: dict = field(default_factory=dict)

    @property
    def kind(self):
        return self.config.kind


def scenario_seed_sequence(cfg):
    return np.random.SeedSequence([int(cfg.seed), cfg.kind.index, int(round(cfg.base_speed * 1000))])


def reflector_positions(cfg, platoon):
    """(x, y) of the N-1 static reflectors, centred on the receiver's route."""
    n = cfg.radio.n_rays - 1
    if n == 0:
        return []
    end = platoon.rx_pos[-1] + platoon.speed[-1] * cfg.sample_period
    mid = platoon.rx_pos[0] + (end - platoon.rx_pos[0]) / 2
    return [(mid + (i - (n - 1) / 2) * cfg.reflector_spacing, cfg.reflector_offset) for i in range(n)]


def link_rays(src, rx_x, reflectors, los_cos, nlos_origin=None, along_road=False):
    """LOS plus one NLOS ray per reflector between `src` (x, y) and the receiver on y = 0.

    NLOS angles are measured at `nlos_origin` (the moving end of the link),
    defaulting to the source. With `along_road` they collapse to +-1 by the
    sign of the reflector's road offset.
    """
    sx, sy = src
    los = RayGeometry(RayKind.LOS, float(np.hypot(rx_x - sx, sy)), float(los_cos))
    rays = [los]
    ox, oy = nlos_origin if nlos_origin is not None else src
    for fx, fy in reflectors:
        d_in = np.hypot(fx - sx, fy - sy)
        d_out = np.hypot(rx_x - fx, fy)
        leg = np.hypot(fx - ox, fy - oy)
        if along_road:
            cos = 1.0 if fx >= ox else -1.0
        else:
            cos = (fx - ox) / leg if leg > 0 else 1.0
        rays.append(RayGeometry(RayKind.NLOS, float(d_in + d_out), float(np.clip(cos, -1.0, 1.0))))
    return rays


def simulate_scenario(cfg, progress=False):
    radio, est = cfg.radio, cfg.estimator
    streams = [np.random.default_rng(s) for s in scenario_seed_sequence(cfg).spawn(5)]
    kin_rng, fade_rng, noise_rng, pkt_rng, cal_rng = streams

    platoon = platoon_track(cfg, kin_rng)
    track = jammer_trajectory(cfg, platoon)
    reflectors = reflector_positions(cfg, platoon)

    pilots = pilot_sequence(est)
    X = design_matrix(pilots, radio.n_rays)
    W = mmse_weights(X, radio.noise_power, est.tap_prior)
    n_blocks = cfg.blocks_per_sample
    block_sigma = calibrate_noise_floor(W, radio.noise_power, est.calibration_blocks, cal_rng)
    floor = detection_floor(block_sigma, n_blocks, est.floor_sigmas)
    times = np.arange(n_blocks) * est.block_interval
    sqrt_p1 = np.sqrt(radio.tx_power_p1)

    jam_state = SmartJammerState(sense_threshold=cfg.sense_threshold_dbm, t_detection=cfg.t_detection,
                                 t_duration=cfg.t_duration, header_only=cfg.header_only)
    # the jammer re-arms after every busy period, so its masks depend only on (mode, packet sensed)
    activity = {}
    window = delivery_window(cfg.pdr_window)
    records = []
    truth = {k: np.zeros(cfg.n_ticks) for k in
             ("delta_u_true", "jammer_range", "jam_power", "jam_duty", "below_sense")}

    ticks = range(cfg.n_ticks)
    if progress:
        from tqdm import tqdm
        ticks = tqdm(ticks, desc=cfg.kind.value)
    for i in ticks:
        rx_x, tx_x, u = platoon.rx_pos[i], platoon.tx_pos[i], platoon.speed[i]

        tx_rays = link_rays((tx_x, 0.0), rx_x, reflectors, los_cos=1.0)
        tx_taps = [make_tap(g, draw_rayleigh(g.dist, radio, fade_rng), radio, 0.0) for g in tx_rays]
        g1 = tap_vector(tx_taps, radio) * sqrt_p1

        jam_src = (track.pos[i], track.lateral)
        power = track.power_mw[i]
        if cfg.kind == ScenarioKind.INTERFERENCE:
            du_true = u
            los_cos = 1.0 if track.pos[i] >= rx_x else -1.0
            jam_rays = link_rays(jam_src, rx_x, reflectors, los_cos, nlos_origin=(rx_x, 0.0), along_road=True)
        else:
            du_true = track.relative_speed[i]
            jam_rays = link_rays(jam_src, rx_x, reflectors, los_cos=1.0)
        jam_taps = [make_tap(g, draw_rayleigh(g.dist, radio, fade_rng), radio, du_true) for g in jam_rays]
        G2 = tap_matrix(jam_taps, radio, times) * np.sqrt(power)

        if cfg.kind == ScenarioKind.SMART_ATTACK:
            sensed = mw_to_dbm(radio.tx_power_p1 * path_gain(abs(tx_x - track.pos[i])) ** 2)
            jam_state = replace(jam_state, mode=track.mode[i])
            key = (jam_state.mode, sensed > cfg.sense_threshold_dbm)
            if key not in activity:
                jam_state, packet_mask = smart_jammer_activity(jam_state, sensed, cfg.packet_bits,
                                                               radio.symbol_duration)
                jam_state, pilot_mask = smart_jammer_activity(jam_state, sensed, est.pilot_length,
                                                              radio.symbol_duration)
                activity[key] = (packet_mask, pilot_mask)
            packet_mask, pilot_mask = activity[key]
        else:
            packet_mask = np.ones(cfg.packet_bits, dtype=bool)
            pilot_mask = np.ones(est.pilot_length, dtype=bool)
        duty = float(packet_mask.mean())

        # pilot blocks: jamming symbols follow the pilot pattern while the jammer is on
        Y = (X @ g1)[None, :] + G2 @ (X * pilot_mask[:, None]).T
        if radio.noise_power > 0:
            Y = Y + complex_noise(radio.noise_power, Y.shape, noise_rng)
        Z = Y @ W.T
        h2 = separate_jammer_los(Z, g1[0] / sqrt_p1, radio.tx_power_p1)
        estimate = estimate_relative_speed(h2, est.block_interval, radio.f_c, floor=floor)

        signal = radio.tx_power_p1 * sum(abs(tap.value) ** 2 for tap in tx_taps)
        jam_burst = power * sum(abs(tap.value) ** 2 for tap in jam_taps)
        jam_avg = jam_burst * duty
        noise = radio.noise_power
        if cfg.kind == ScenarioKind.SMART_ATTACK:
            delivered = packet_delivered(signal / noise, cfg.packet_bits, pkt_rng,
                                         header_bits=int(packet_mask.sum()),
                                         header_sinr_linear=signal / (jam_burst + noise))
        else:
            delivered = packet_delivered(signal / (jam_avg + noise), cfg.packet_bits, pkt_rng)
        window.append(delivered)

        t = round(i * cfg.sample_period, 10)
        records.append(assemble_observation(t, signal, jam_avg, noise, estimate, u, window, cfg.kind.value))
        truth["delta_u_true"][i] = du_true
        truth["jammer_range"][i] = float(np.hypot(rx_x - track.pos[i], track.lateral))
        truth["jam_power"][i] = power
        truth["jam_duty"][i] = duty
        truth["below_sense"][i] = float(mw_to_dbm(signal) < radio.carrier_sense_dbm)

    out = vrs_labels(VrsInput([r.delta_u for r in records], [r.own_speed for r in records], cfg.vrs_epsilon))
    for record, value in zip(records, out.encoded):
        record.vrs = value
    logger.debug("simulated %s at %.1f m/s seed %d: %d records", cfg.kind.value, cfg.base_speed, cfg.seed,
                 len(records))
    return ScenarioTrace(config=cfg, records=records, truth=truth)
