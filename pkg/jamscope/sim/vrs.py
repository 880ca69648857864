"""
Variations of Relative Speed (VRS): labels each observation A (attack-like
change in the jammer-receiver relative speed) or NA, walking the whole
observation array once with a persistent trigger.
"""
from dataclasses import dataclass
from enum import Enum

from jamscope.util.errors import UndefinedInputError, DomainError

NUM_NA = 0.0
NUM_A = 100.0


class VrsLabel(str, Enum):
    NA = "NA"
    A = "A"


@dataclass
class VrsInput:
    delta_u: list
    own_speed: list
    epsilon: float = 0.5

    def __post_init__(self):
        self.delta_u = [float(v) for v in self.delta_u]
        self.own_speed = [float(v) for v in self.own_speed]
        if len(self.delta_u) != len(self.own_speed):
            raise UndefinedInputError("delta_u and own_speed must have equal length")
        if len(self.delta_u) < 2:
            raise UndefinedInputError("VRS needs at least 2 observations")
        if not self.epsilon > 0:
            raise DomainError("epsilon must be positive")


@dataclass
class VrsOutput:
    labels: list
    final_trigger: int
    encoded: list


def encode_labels(labels, num_na=NUM_NA, num_a=NUM_A):
    return [num_na if VrsLabel(label) == VrsLabel.NA else num_a for label in labels]


def vrs_labels(inp):
    du, u, eps = inp.delta_u, inp.own_speed, inp.epsilon
    M = len(du)

    def eq(a, b):
        return abs(a - b) <= eps

    def zero(a):
        return abs(a) <= eps

    labels = [None] * M
    trigger = 0
    # first element only looks ahead at its neighbour
    if eq(du[0], du[1]):
        labels[0] = VrsLabel.NA
    else:
        labels[0] = VrsLabel.A
        trigger = 1

    k = 1
    while k < M:
        has_next = k < M - 1
        if not zero(du[k]):
            if not eq(du[k], du[k - 1]):
                if eq(du[k], u[k]):
                    label, trigger = VrsLabel.NA, 0
                else:
                    label, trigger = VrsLabel.A, 1
            elif not eq(du[k], u[k]):
                label, trigger = VrsLabel.A, 1
            elif has_next:
                if eq(du[k - 1], u[k - 1]) and eq(du[k + 1], u[k + 1]):
                    label, trigger = VrsLabel.NA, 0
                else:
                    label, trigger = VrsLabel.A, 1
            else:
                label = VrsLabel.A if trigger else VrsLabel.NA
        else:
            if not zero(u[k]):
                label, trigger = VrsLabel.A, 1
            elif eq(du[k - 1], u[k - 1]):
                label = VrsLabel.A if trigger else VrsLabel.NA
            else:
                label, trigger = VrsLabel.A, 1
        labels[k] = label
        k += 1

    return VrsOutput(labels=labels, final_trigger=trigger, encoded=encode_labels(labels))
