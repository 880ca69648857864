from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc

from jamscope.sim.vrs import NUM_NA
from jamscope.util.errors import DomainError, UndefinedInputError

SINR_FLOOR_DB = -40.0
SINR_CAP_DB = 60.0


@dataclass
class ObservationRecord:
    t: float
    rssi: float
    sinr: float
    pdr: float
    delta_u: float
    own_speed: float
    vrs: float
    class_label: str

    def __post_init__(self):
        if not 0.0 <= self.pdr <= 1.0:
            raise DomainError(f"pdr must lie in [0, 1], got {self.pdr}")
        if self.delta_u < 0:
            raise DomainError(f"delta_u must be >= 0, got {self.delta_u}")


def qfunc(x):
    return 0.5 * erfc(np.asarray(x) / np.sqrt(2.0))


def bpsk_ber(sinr_linear):
    return qfunc(np.sqrt(2.0 * np.maximum(sinr_linear, 0.0)))


def compute_sinr(signal_mw, jam_mw, noise_mw):
    if not noise_mw > 0:
        raise DomainError("noise_mw must be positive")
    if signal_mw <= 0:
        return SINR_FLOOR_DB
    sinr = 10.0 * np.log10(signal_mw / (jam_mw + noise_mw))
    return float(np.clip(sinr, SINR_FLOOR_DB, SINR_CAP_DB))


def compute_rssi(signal_mw, jam_mw, noise_mw):
    total = signal_mw + jam_mw + noise_mw
    if not total > 0:
        raise DomainError("total received power must be positive")
    return float(10.0 * np.log10(total))


def packet_success_probability(mean_sinr_linear, bits, header_bits=0, header_sinr_linear=None):
    if bits < 1:
        raise DomainError("bits must be >= 1")
    header_bits = min(max(int(header_bits), 0), bits)
    body = (1.0 - bpsk_ber(mean_sinr_linear)) ** (bits - header_bits)
    if header_bits == 0:
        return float(body)
    head_sinr = mean_sinr_linear if header_sinr_linear is None else header_sinr_linear
    return float(body * (1.0 - bpsk_ber(head_sinr)) ** header_bits)


def packet_delivered(mean_sinr_linear, bits, rng, header_bits=0, header_sinr_linear=None):
    """Bernoulli delivery draw for one BPSK packet.

    For a header-jammed packet the first `header_bits` see `header_sinr_linear`
    and the rest `mean_sinr_linear`.
    """
    p = packet_success_probability(mean_sinr_linear, bits, header_bits, header_sinr_linear)
    return bool(rng.random() < p)


def compute_pdr(window):
    outcomes = list(window)
    if len(outcomes) == 0:
        raise UndefinedInputError("PDR of an empty window is undefined")
    return sum(1 for o in outcomes if o) / len(outcomes)


def delivery_window(size=10):
    return deque(maxlen=size)


def assemble_observation(t, signal_mw, jam_mw, noise_mw, estimate, own_speed, window, class_label):
    """One feature row; an undetected emitter is reported at the vehicle's own speed."""
    if estimate is None or not estimate.detected:
        delta_u = own_speed
    else:
        delta_u = estimate.delta_u_hat
    return ObservationRecord(
        t=t,
        rssi=compute_rssi(signal_mw, jam_mw, noise_mw),
        sinr=compute_sinr(signal_mw, jam_mw, noise_mw),
        pdr=compute_pdr(window),
        delta_u=float(delta_u),
        own_speed=float(own_speed),
        vrs=NUM_NA,
        class_label=class_label,
    )
