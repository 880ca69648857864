"""
Observation CSVs, simulation run directories and the experiment-case
datasets built from them.

Layout under the data directory:

    runs/manifest.cfg
    runs/speed15-seed000/{smart,interference,constant}.csv
    runs/speed15-seed000/observations.csv   (Smart, Interference, Constant back to back)
    runs/speed15-seed000/sinr.csv          (ground truth, for plots)
    runs/speed15-seed000/config.cfg
    results/<case>-seed000.cfg
"""
import os
from dataclasses import dataclass, replace

import numpy as np
import pandas as pd

from jamscope import models
from jamscope.models.training import FeatureMatrix, FeatureSet, SplitConfig, split_train_test, normalize_minmax
from jamscope.sim.features import ObservationRecord
from jamscope.sim.runner import simulate_scenario
from jamscope.sim.scenario import ScenarioConfig, ScenarioKind, RUN_ORDER
from jamscope.util.configuration import read_config_file, write_config_file, get_data_dir
from jamscope.util.errors import DatasetError, UndefinedInputError
from jamscope.util.logger import get_logger

logger = get_logger(__name__)

OBSERVATION_COLUMNS = ["t", "rssi_dbm", "sinr_db", "pdr", "delta_u_mps", "own_speed_mps", "vrs", "class"]
FLOAT_FORMAT = "%.6f"

SCENARIO_FILES = {
    ScenarioKind.SMART_ATTACK: "smart.csv",
    ScenarioKind.INTERFERENCE: "interference.csv",
    ScenarioKind.CONSTANT_ATTACK: "constant.csv",
}


@dataclass(frozen=True)
class ExperimentCase:
    name: str
    group: str
    classifier: str
    use_vrs: bool
    normalize: bool
    train_speed: float
    test_speed: float

    @classmethod
    def from_dict(cls, d):
        return cls(name=d["name"], group=d["group"], classifier=d["classifier"], use_vrs=bool(d["use_vrs"]),
                   normalize=bool(d["normalize"]), train_speed=float(d["train_speed"]),
                   test_speed=float(d["test_speed"]))

    @classmethod
    def get(cls, name):
        return cls.from_dict(models.get_case_dict(name))

    @property
    def feature_set(self):
        return FeatureSet.for_vrs(self.use_vrs)


def records_to_frame(records):
    return pd.DataFrame({
        "t": [r.t for r in records],
        "rssi_dbm": [r.rssi for r in records],
        "sinr_db": [r.sinr for r in records],
        "pdr": [r.pdr for r in records],
        "delta_u_mps": [r.delta_u for r in records],
        "own_speed_mps": [r.own_speed for r in records],
        "vrs": [float(r.vrs) for r in records],
        "class": [r.class_label for r in records],
    }, columns=OBSERVATION_COLUMNS)


def frame_to_records(df):
    return [
        ObservationRecord(t=float(t), rssi=float(rssi), sinr=float(sinr), pdr=float(pdr), delta_u=float(du),
                          own_speed=float(u), vrs=float(vrs), class_label=str(label))
        for t, rssi, sinr, pdr, du, u, vrs, label in zip(*(df[c] for c in OBSERVATION_COLUMNS))
    ]


def _write_frame(df, path):
    directory = os.path.dirname(path)
    try:
        if directory and not os.path.exists(directory):
            os.makedirs(directory)
        df.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    except OSError as e:
        raise DatasetError(f"cannot write {path}: {e}") from e
    return path


def write_observations(records, path):
    if len(records) == 0:
        raise UndefinedInputError("no observations to write")
    return _write_frame(records_to_frame(records), path)


def read_observation_frame(path):
    if not os.path.exists(path):
        raise DatasetError(f"missing simulation data: {path}")
    df = pd.read_csv(path)
    if list(df.columns) != OBSERVATION_COLUMNS:
        raise DatasetError(f"{path} does not have the observation header {','.join(OBSERVATION_COLUMNS)}")
    return df


def read_observations(path):
    return frame_to_records(read_observation_frame(path))


def run_id(speed, seed):
    return f"speed{speed:g}-seed{int(seed):03d}"


def run_dir(data_dir, speed, seed):
    return os.path.join(data_dir, "runs", run_id(speed, seed))


def run_config(base_cfg, speed, seed):
    return replace(base_cfg or ScenarioConfig(), base_speed=float(speed), seed=int(seed))


def simulate_run(cfg, kinds=RUN_ORDER, n_jobs=1, progress=False):
    """Simulates each scenario kind with `cfg`; returns {kind: ScenarioTrace} in `kinds` order."""
    from joblib import Parallel, delayed
    traces = Parallel(n_jobs=n_jobs)(
        delayed(simulate_scenario)(cfg.with_kind(kind), progress and n_jobs == 1) for kind in kinds
    )
    return dict(zip(kinds, traces))


def combined_frame(traces):
    """Concatenates scenarios in run order, offsetting time by one scenario duration each."""
    frames = []
    offset = 0.0
    for kind in RUN_ORDER:
        if kind not in traces:
            continue
        trace = traces[kind]
        df = records_to_frame(trace.records)
        df["t"] = np.round(df["t"] + offset, 10)
        frames.append(df)
        offset += trace.config.duration
    return pd.concat(frames, ignore_index=True)


def trace_frame(traces):
    frames = []
    for kind, trace in traces.items():
        df = records_to_frame(trace.records)
        frames.append(pd.DataFrame({
            "t": df["t"],
            "scenario": kind.value,
            "sinr_db": df["sinr_db"],
            "rssi_dbm": df["rssi_dbm"],
            "pdr": df["pdr"],
            "delta_u_true_mps": trace.truth["delta_u_true"],
            "delta_u_mps": df["delta_u_mps"],
            "jammer_range_m": trace.truth["jammer_range"],
            "jam_power_mw": trace.truth["jam_power"],
            "jam_duty": trace.truth["jam_duty"],
            "below_sense": trace.truth["below_sense"].astype(int),
        }))
    return pd.concat(frames, ignore_index=True)


def write_run(traces, directory, cfg):
    paths = []
    for kind, trace in traces.items():
        paths.append(write_observations(trace.records, os.path.join(directory, SCENARIO_FILES[kind])))
    if all(kind in traces for kind in RUN_ORDER):
        paths.append(_write_frame(combined_frame(traces), os.path.join(directory, "observations.csv")))
    paths.append(_write_frame(trace_frame(traces), os.path.join(directory, "sinr.csv")))
    paths.append(cfg.to_file(os.path.join(directory, "config.cfg"), header="jamscope scenario config"))
    return paths


def update_manifest(data_dir, rid, cfg, directory):
    path = os.path.join(data_dir, "runs", "manifest.cfg")
    values = read_config_file(path) if os.path.exists(path) else {}
    values = {k: v for k, v in values.items() if not k.startswith(f"{rid}.")}
    values[f"{rid}.path"] = os.path.relpath(directory, data_dir)
    for key, value in cfg.to_mapping().items():
        values[f"{rid}.{key}"] = value
    write_config_file(path, dict(sorted(values.items())), header="simulation runs: <run-id>.<config key> = value")
    return path


def read_manifest(data_dir):
    path = os.path.join(data_dir, "runs", "manifest.cfg")
    if not os.path.exists(path):
        return {}
    runs = {}
    for key, value in read_config_file(path).items():
        rid, _, field_name = key.partition(".")
        runs.setdefault(rid, {})[field_name] = value
    return runs


def ensure_run(data_dir, speed, seed, base_cfg=None, n_jobs=1):
    """Path of the combined observations for (speed, seed), simulating the run if it is missing."""
    directory = run_dir(data_dir, speed, seed)
    path = os.path.join(directory, "observations.csv")
    if os.path.exists(path):
        return path
    cfg = run_config(base_cfg, speed, seed)
    logger.info("simulating missing run %s", run_id(speed, seed))
    traces = simulate_run(cfg, n_jobs=n_jobs)
    write_run(traces, directory, cfg)
    update_manifest(data_dir, run_id(speed, seed), cfg, directory)
    return path


def build_case_dataset(case, seed, data_dir=None, base_cfg=None, split=None, n_jobs=1):
    """Train and test FeatureMatrix for `case`.

    Both sets are drawn from one split of each run, so no observation can be
    in both, even when train and test come from the same run.
    """
    if isinstance(case, str):
        case = ExperimentCase.get(case)
    data_dir = data_dir or get_data_dir()
    split = split or SplitConfig(seed=seed)
    feature_set = case.feature_set

    train_df = read_observation_frame(ensure_run(data_dir, case.train_speed, seed, base_cfg, n_jobs))
    train, test = split_train_test(FeatureMatrix.from_frame(train_df, feature_set), split)
    if case.test_speed != case.train_speed:
        test_df = read_observation_frame(ensure_run(data_dir, case.test_speed, seed, base_cfg, n_jobs))
        _, test = split_train_test(FeatureMatrix.from_frame(test_df, feature_set), split)
    if case.normalize:
        train, test, _ = normalize_minmax(train, test)
    return train, test
