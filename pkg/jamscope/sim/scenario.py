"""
Kinematics of the platoon (Tx ahead of Rx), the pursuing jammers and the
roadside interferer, plus the reactive jammer's sensing state machine.
"""
from dataclasses import dataclass, field, fields, replace
from enum import Enum

import numpy as np

from jamscope.sim.channel import RadioConfig
from jamscope.sim.estimator import EstimatorConfig
from jamscope.util.configuration import read_config_file, write_config_file, coerce_value
from jamscope.util.errors import ConfigError, DomainError


class ScenarioKind(str, Enum):
    # declaration order is the class order used for tie breaking
    INTERFERENCE = "Interference"
    SMART_ATTACK = "SmartAttack"
    CONSTANT_ATTACK = "ConstantAttack"

    @property
    def index(self):
        return list(ScenarioKind).index(self)

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        aliases = {
            "interference": cls.INTERFERENCE,
            "smart": cls.SMART_ATTACK,
            "smartattack": cls.SMART_ATTACK,
            "constant": cls.CONSTANT_ATTACK,
            "constantattack": cls.CONSTANT_ATTACK,
        }
        key = str(name).strip().lower().replace("_", "").replace("-", "")
        if key not in aliases:
            raise ValueError(f"unknown scenario {name!r}")
        return aliases[key]


CLASS_NAMES = [kind.value for kind in ScenarioKind]

# concatenation order of full-run datasets
RUN_ORDER = (ScenarioKind.SMART_ATTACK, ScenarioKind.INTERFERENCE, ScenarioKind.CONSTANT_ATTACK)


class Role(str, Enum):
    TRANSMITTER = "transmitter"
    RECEIVER = "receiver"
    JAMMER = "jammer"
    INTERFERER = "interferer"


class JammerMode(str, Enum):
    PURSUE = "Pursue"
    RETREATED = "Retreated"


@dataclass(frozen=True)
class VehicleState:
    pos: float
    speed: float
    role: Role


def step_kinematics(states, dt):
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt}")
    return [replace(s, pos=s.pos + s.speed * dt) for s in states]


@dataclass
class ScenarioConfig:
    kind: ScenarioKind = ScenarioKind.INTERFERENCE
    base_speed: float = 15.0
    dist_initial: float = 200.0
    duration: float = 100.0
    sample_period: float = 0.1
    seed: int = 0
    dist_tx_rx: float = 35.0
    pursuit_offset: float = 5.0
    reach_distance: float = 10.0
    safe_distance: float = 50.0
    follow_distance: float = 10.0
    # pursuit power of both jammers, strong enough to be sensed at dist_initial
    p_min: float = 25.0
    interferer_power: float = 100.0
    interferer_offset: float = 10.0
    reflector_offset: float = 30.0
    reflector_spacing: float = 100.0
    speed_jitter: float = 0.0
    sense_threshold_dbm: float = -86.0
    t_detection: float = 12e-6
    t_duration: float = 84e-6
    header_only: bool = True
    packet_bits: int = 500
    pdr_window: int = 10
    vrs_epsilon: float = 0.5
    radio: RadioConfig = field(default_factory=RadioConfig)
    estimator: EstimatorConfig = field(default_factory=EstimatorConfig)

    def __post_init__(self):
        if isinstance(self.kind, str) and not isinstance(self.kind, ScenarioKind):
            self.kind = ScenarioKind.parse(self.kind)
        for key in ("base_speed", "dist_initial", "duration", "sample_period", "dist_tx_rx"):
            if not getattr(self, key) > 0:
                raise ConfigError(key, f"{key} must be positive, got {getattr(self, key)}")
        ticks = self.duration / self.sample_period
        if abs(ticks - round(ticks)) > 1e-6:
            raise ConfigError("sample_period", "duration must be a whole number of sample periods")
        if self.pursuit_offset <= 0:
            raise ConfigError("pursuit_offset", "pursuit_offset must be positive")
        if not 0 < self.reach_distance < self.dist_initial:
            raise ConfigError("reach_distance", "reach_distance must lie in (0, dist_initial)")
        if self.safe_distance < self.reach_distance:
            raise ConfigError("safe_distance", "safe_distance must be >= reach_distance")
        if not 0 < self.follow_distance < self.dist_initial:
            raise ConfigError("follow_distance", "follow_distance must lie in (0, dist_initial)")
        if self.packet_bits < 1:
            raise ConfigError("packet_bits", "packet_bits must be >= 1")
        if self.pdr_window < 1:
            raise ConfigError("pdr_window", "pdr_window must be >= 1")
        if self.vrs_epsilon <= 0:
            raise ConfigError("vrs_epsilon", "vrs_epsilon must be positive")
        if self.speed_jitter < 0:
            raise ConfigError("speed_jitter", "speed_jitter must be >= 0")
        if self.t_detection <= 0 or self.t_duration <= 0:
            raise ConfigError("t_detection", "jammer timers must be positive")

    @property
    def n_ticks(self):
        return int(round(self.duration / self.sample_period))

    @property
    def blocks_per_sample(self):
        return max(2, int(round(self.sample_period / self.estimator.block_interval)))

    def with_kind(self, kind):
        return replace(self, kind=ScenarioKind.parse(kind))

    def to_mapping(self):
        values = {}
        for f in fields(self):
            if f.name in ("radio", "estimator"):
                continue
            values[f.name] = getattr(self, f.name)
        for f in fields(self.radio):
            values[f.name] = getattr(self.radio, f.name)
        for f in fields(self.estimator):
            values[f.name] = getattr(self.estimator, f.name)
        return values

    @classmethod
    def from_mapping(cls, values, **overrides):
        """Builds a config from flat `key = value` strings. Unknown keys raise ConfigError."""
        own = {f.name: f for f in fields(cls) if f.name not in ("radio", "estimator")}
        radio_fields = {f.name: f for f in fields(RadioConfig)}
        est_fields = {f.name: f for f in fields(EstimatorConfig)}
        kwargs, radio_kwargs, est_kwargs = {}, {}, {}
        merged = dict(values)
        merged.update(overrides)
        for key, raw in merged.items():
            if key in own:
                target, kind = kwargs, _field_type(cls, key)
            elif key in radio_fields:
                target, kind = radio_kwargs, _field_type(RadioConfig, key)
            elif key in est_fields:
                target, kind = est_kwargs, _field_type(EstimatorConfig, key)
            else:
                raise ConfigError(key, f"unknown config key '{key}'")
            if key == "kind":
                try:
                    target[key] = raw if isinstance(raw, ScenarioKind) else ScenarioKind.parse(raw)
                except ValueError:
                    raise ConfigError(key, f"invalid value for 'kind': {raw!r}")
            elif isinstance(raw, str):
                target[key] = coerce_value(key, raw, kind)
            else:
                target[key] = raw
        return cls(radio=RadioConfig(**radio_kwargs), estimator=EstimatorConfig(**est_kwargs), **kwargs)

    @classmethod
    def from_file(cls, path, **overrides):
        return cls.from_mapping(read_config_file(path), **overrides)

    def to_file(self, path, header=None):
        return write_config_file(path, self.to_mapping(), header=header)


_TYPES = {"ScenarioKind": ScenarioKind, "float": float, "int": int, "bool": bool, "str": str}


def _field_type(cls, name):
    for f in fields(cls):
        if f.name == name:
            t = f.type
            if isinstance(t, str):
                return _TYPES[t]
            return t
    raise ConfigError(name)


@dataclass
class SmartJammerState:
    mode: JammerMode = JammerMode.PURSUE
    sense_threshold: float = -86.0
    t_detection: float = 12e-6
    t_duration: float = 84e-6
    energy_timer: float = 0.0
    tx_timer: float = 0.0
    # one burst per busy period (packet header) when set
    header_only: bool = True
    fired: bool = False


_TIMER_TOL = 1e-12


def smart_jammer_decision(state, sensed_dbm, dt):
    """Advances the reactive jammer by `dt` and reports whether it transmits during it."""
    if dt > state.t_detection + _TIMER_TOL:
        raise DomainError(f"dt {dt} exceeds the detection window {state.t_detection}")
    if state.tx_timer > _TIMER_TOL:
        return replace(state, tx_timer=max(0.0, state.tx_timer - dt)), True
    if sensed_dbm > state.sense_threshold:
        if state.header_only and state.fired:
            return state, False
        energy = state.energy_timer + dt
        if energy >= state.t_detection - _TIMER_TOL:
            return replace(state, energy_timer=0.0, tx_timer=state.t_duration, fired=True), False
        return replace(state, energy_timer=energy), False
    return replace(state, energy_timer=0.0, tx_timer=0.0, fired=False), False


def jam_activity(state, sensed_dbm, n_symbols, dt):
    """Runs the jammer over one busy period of `n_symbols` and returns the per-symbol mask.

    The medium goes idle afterwards, so the returned state is re-armed.
    """
    mask = np.zeros(n_symbols, dtype=bool)
    for i in range(n_symbols):
        state, mask[i] = smart_jammer_decision(state, sensed_dbm, dt)
    idle = replace(state, energy_timer=0.0, tx_timer=0.0, fired=False)
    return idle, mask


def smart_jammer_activity(state, sensed_dbm, n_symbols, dt):
    """Per-symbol transmit mask of the smart jammer for one busy period.

    While pursuing it jams continuously; once it has retreated it only reacts to sensed packets.
    """
    if state.mode == JammerMode.PURSUE:
        return state, np.ones(n_symbols, dtype=bool)
    return jam_activity(state, sensed_dbm, n_symbols, dt)


@dataclass
class PlatoonTrack:
    t: np.ndarray
    rx_pos: np.ndarray
    tx_pos: np.ndarray
    speed: np.ndarray


@dataclass
class JammerTrack:
    pos: np.ndarray
    speed: np.ndarray
    power_mw: np.ndarray
    mode: list
    # ground truth |u_J - u_Rx| per tick
    relative_speed: np.ndarray
    lateral: float = 0.0

    def gap(self, platoon):
        return platoon.rx_pos - self.pos


def speed_profile(cfg, rng=None):
    n = cfg.n_ticks
    if cfg.speed_jitter == 0:
        return np.full(n, cfg.base_speed)
    rho = 0.95
    e = np.zeros(n)
    noise = rng.standard_normal(n)
    for i in range(1, n):
        e[i] = rho * e[i - 1] + cfg.speed_jitter * np.sqrt(1 - rho**2) * noise[i]
    e = np.clip(e, -3 * cfg.speed_jitter, 3 * cfg.speed_jitter)
    return np.maximum(cfg.base_speed + e, 1.0)


def platoon_track(cfg, rng=None):
    speeds = speed_profile(cfg, rng)
    states = [VehicleState(cfg.dist_tx_rx, speeds[0], Role.TRANSMITTER), VehicleState(0.0, speeds[0], Role.RECEIVER)]
    tx, rx = np.zeros(cfg.n_ticks), np.zeros(cfg.n_ticks)
    for i in range(cfg.n_ticks):
        states = [replace(s, speed=speeds[i]) for s in states]
        tx[i], rx[i] = states[0].pos, states[1].pos
        states = step_kinematics(states, cfg.sample_period)
    t = np.arange(cfg.n_ticks) * cfg.sample_period
    return PlatoonTrack(t=t, rx_pos=rx, tx_pos=tx, speed=speeds)


def _pursue(cfg, platoon, stop_distance, retreat_to=None):
    """Shared pursuit kinematics: approach to `stop_distance`, optionally fall back to `retreat_to`."""
    dt = cfg.sample_period
    n = cfg.n_ticks
    pos, speed = np.zeros(n), np.zeros(n)
    phases = []
    jammer = VehicleState(platoon.rx_pos[0] - cfg.dist_initial, platoon.speed[0] + cfg.pursuit_offset, Role.JAMMER)
    phase = "approach"
    for i in range(n):
        u = platoon.speed[i]
        gap = platoon.rx_pos[i] - jammer.pos
        if phase == "approach" and gap <= stop_distance + 1e-9:
            phase = "retreat" if retreat_to is not None and retreat_to > stop_distance else "follow"
        if phase == "retreat" and gap >= retreat_to - 1e-9:
            phase = "follow"
        if phase == "approach":
            v = u + min(cfg.pursuit_offset, (gap - stop_distance) / dt)
        elif phase == "retreat":
            v = u - min(cfg.pursuit_offset, (retreat_to - gap) / dt)
        else:
            v = u
        jammer = replace(jammer, speed=v)
        pos[i], speed[i] = jammer.pos, v
        phases.append(phase)
        jammer = step_kinematics([jammer], dt)[0]
    return pos, speed, phases


def smart_jammer_trajectory(cfg, platoon=None):
    if cfg.kind != ScenarioKind.SMART_ATTACK:
        raise ValueError(f"smart jammer trajectory needs kind SmartAttack, got {cfg.kind.value}")
    platoon = platoon if platoon is not None else platoon_track(cfg)
    pos, speed, phases = _pursue(cfg, platoon, cfg.reach_distance, retreat_to=cfg.safe_distance)
    mode = [JammerMode.PURSUE if p == "approach" else JammerMode.RETREATED for p in phases]
    pursuing = np.array([m == JammerMode.PURSUE for m in mode])
    power = np.where(pursuing, cfg.p_min, cfg.radio.jam_power_p2)
    return JammerTrack(pos=pos, speed=speed, power_mw=power, mode=mode,
                       relative_speed=np.abs(speed - platoon.speed))


def constant_jammer_trajectory(cfg, platoon=None):
    if cfg.kind != ScenarioKind.CONSTANT_ATTACK:
        raise ValueError(f"constant jammer trajectory needs kind ConstantAttack, got {cfg.kind.value}")
    platoon = platoon if platoon is not None else platoon_track(cfg)
    pos, speed, phases = _pursue(cfg, platoon, cfg.follow_distance)
    reached = np.array([p != "approach" for p in phases])
    power = np.where(reached, cfg.radio.jam_power_p2, cfg.p_min)
    mode = [JammerMode.PURSUE if p == "approach" else JammerMode.RETREATED for p in phases]
    return JammerTrack(pos=pos, speed=speed, power_mw=power, mode=mode,
                       relative_speed=np.abs(speed - platoon.speed))


def interference_trajectory(cfg, platoon=None):
    """A static roadside emitter halfway along the receiver's route."""
    if cfg.kind != ScenarioKind.INTERFERENCE:
        raise ValueError(f"interference trajectory needs kind Interference, got {cfg.kind.value}")
    platoon = platoon if platoon is not None else platoon_track(cfg)
    end = platoon.rx_pos[-1] + platoon.speed[-1] * cfg.sample_period
    midpoint = platoon.rx_pos[0] + (end - platoon.rx_pos[0]) / 2
    n = cfg.n_ticks
    return JammerTrack(pos=np.full(n, midpoint), speed=np.zeros(n),
                       power_mw=np.full(n, cfg.interferer_power),
                       mode=[JammerMode.RETREATED] * n,
                       relative_speed=platoon.speed.copy(),
                       lateral=cfg.interferer_offset)


def jammer_trajectory(cfg, platoon=None):
    dispatch = {
        ScenarioKind.SMART_ATTACK: smart_jammer_trajectory,
        ScenarioKind.CONSTANT_ATTACK: constant_jammer_trajectory,
        ScenarioKind.INTERFERENCE: interference_trajectory,
    }
    return dispatch[cfg.kind](cfg, platoon)
