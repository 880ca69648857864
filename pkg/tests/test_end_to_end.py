"""Full-length runs (100 s per scenario) over five seeds. Run with `pytest -m slow`."""
import numpy as np
import pytest

from jamscope.scripts.evaluate import evaluate_cases
from jamscope.sim.scenario import CLASS_NAMES, ScenarioKind

pytestmark = pytest.mark.slow

SEEDS = [0, 1, 2, 3, 4]
CLASSIFIERS = ["KNN", "RF"]
GROUPS = ["Same", "Different", "HighSpeed"]

# with and without VRS see the same relative speed column, and VRS is a function of it and
# the own speed, so the gaps below hinge on how often the estimator misreads the emitter
VRS_GAP = pytest.mark.xfail(strict=False, reason="VRS carries no information beyond delta_u and own speed")


@pytest.fixture(scope="module")
def results(tmp_path_factory):
    data_dir = str(tmp_path_factory.mktemp("data"))
    names = [f"{g}_{c}{v}" for g in GROUPS for c in CLASSIFIERS for v in ("-VRS", "")]
    runs = evaluate_cases(names, seeds=SEEDS, trees=30, data_dir=data_dir)
    return data_dir, {name: [r for r in runs if r["case"] == name] for name in names}


def mean_accuracy(results, name):
    _, by_case = results
    return float(np.mean([r["accuracy"] for r in by_case[name]]))


def test_full_runs_have_the_published_shape(results):
    _, by_case = results
    for runs in by_case.values():
        assert len(runs) == len(SEEDS)
        for r in runs:
            assert r["n_train"] == 900
            assert r["n_test"] == 2100


@pytest.mark.parametrize("classifier", CLASSIFIERS)
def test_same_speed_accuracy_band(results, classifier):
    assert 0.72 <= mean_accuracy(results, f"Same_{classifier}-VRS") <= 0.92


def test_interference_is_not_confused_with_jamming(results):
    interference = ScenarioKind.INTERFERENCE.value
    jamming = [name for name in CLASS_NAMES if name != interference]
    _, by_case = results
    for classifier in CLASSIFIERS:
        for r in by_case[f"Same_{classifier}-VRS"]:
            n_interference = sum(r[f"count.{p}.{interference}"] for p in CLASS_NAMES)
            crossed = sum(r[f"count.{j}.{interference}"] + r[f"count.{interference}.{j}"] for j in jamming)
            assert crossed <= 0.02 * n_interference


@pytest.mark.parametrize("classifier", CLASSIFIERS)
def test_vrs_generalises_across_speeds(results, classifier):
    same = mean_accuracy(results, f"Same_{classifier}-VRS")
    different = mean_accuracy(results, f"Different_{classifier}-VRS")
    assert different >= same - 0.10


@VRS_GAP
@pytest.mark.parametrize("classifier", CLASSIFIERS)
def test_vrs_beats_plain_features_at_same_speed(results, classifier):
    assert mean_accuracy(results, f"Same_{classifier}-VRS") > mean_accuracy(results, f"Same_{classifier}")


@VRS_GAP
@pytest.mark.parametrize("classifier", CLASSIFIERS)
def test_vrs_gain_across_speeds(results, classifier):
    gain = mean_accuracy(results, f"Different_{classifier}-VRS") - mean_accuracy(results, f"Different_{classifier}")
    assert gain >= 0.05


@VRS_GAP
@pytest.mark.parametrize("classifier", CLASSIFIERS)
def test_high_speed_training(results, classifier):
    high = mean_accuracy(results, f"HighSpeed_{classifier}-VRS")
    assert high > mean_accuracy(results, f"Same_{classifier}-VRS")
    assert high > mean_accuracy(results, f"HighSpeed_{classifier}")


def test_high_speed_accuracy_band(results):
    for classifier in CLASSIFIERS:
        assert 0.72 <= mean_accuracy(results, f"HighSpeed_{classifier}-VRS") <= 0.95


def test_reevaluation_is_reproducible(results):
    data_dir, by_case = results
    again = evaluate_cases(["Same_RF-VRS"], seeds=[SEEDS[0]], trees=30, data_dir=data_dir)
    assert again[0]["accuracy"] == by_case["Same_RF-VRS"][0]["accuracy"]
