from .channel import (
    RayKind, RayGeometry, ChannelTap, RadioConfig, doppler_shift, path_gain, make_tap, received_sample,
    mw_to_dbm, dbm_to_mw,
)
from .estimator import (
    EstimatorConfig, PilotBlock, SpeedEstimate, EstimateStatus, mmse_estimate_combined, ls_estimate_combined,
    separate_jammer_los, estimate_relative_speed, detection_floor,
)
from .scenario import (
    ScenarioKind, ScenarioConfig, VehicleState, SmartJammerState, step_kinematics, smart_jammer_decision,
    smart_jammer_activity,
    smart_jammer_trajectory, constant_jammer_trajectory, interference_trajectory, RUN_ORDER, CLASS_NAMES,
)
from .features import ObservationRecord, compute_sinr, compute_rssi, packet_delivered, compute_pdr, assemble_observation
from .vrs import VrsInput, VrsOutput, VrsLabel, vrs_labels, encode_labels, NUM_NA, NUM_A
from .runner import ScenarioTrace, simulate_scenario
