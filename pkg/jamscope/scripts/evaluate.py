# Usage: js-evaluate --case <name|all|high|everything> --seed <n> [--k 5] [--trees 100]
# Example: js-evaluate --case Same_KNN-VRS --seed 0
import os
import sys
import argparse

from jamscope import models
from jamscope.util import get_data_dir
from jamscope.util.errors import UnknownCaseError
from jamscope.scripts import positive_int, run_command


def seed_list(value):
    try:
        return [int(s) for s in value.split(",") if s.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"seeds must be comma separated integers, got {value!r}")


def main():
    parser = argparse.ArgumentParser(description='Train and evaluate a classifier on an experiment case')
    parser.add_argument('--case', type=str, help='Case name, or all / high / everything', required=True)
    parser.add_argument('--seed', type=int, help='Seed for simulation, split and forest', default=0)
    parser.add_argument('--seeds', type=seed_list, help='Comma separated seeds, overrides --seed', default=None)
    parser.add_argument('--k', type=positive_int, help='Neighbours for KNN', default=5)
    parser.add_argument('--trees', type=positive_int, help='Trees in the random forest', default=100)
    parser.add_argument('--max-depth', type=positive_int, help='Depth cap for forest trees', default=None)
    parser.add_argument('--config', type=str, help='Scenario config used when runs must be simulated', default=None)
    parser.add_argument('--jobs', type=positive_int, help='Cases evaluated in parallel', default=1)

    args = parser.parse_args()
    try:
        names = models.resolve_case_names(args.case)
    except UnknownCaseError as e:
        parser.error(str(e))
    seeds = args.seeds if args.seeds else [args.seed]
    sys.exit(run_command(evaluate_cases, names, seeds, args.k, args.trees, args.max_depth, args.config, args.jobs))


def results_path(data_dir, case_name, seed):
    return os.path.join(data_dir, "results", f"{case_name}-seed{int(seed):03d}.cfg")


def evaluate_case(case_name, seed=0, k=5, trees=100, max_depth=None, config=None, data_dir=None, n_jobs=1,
                  verbose=True):
    from tabulate import tabulate
    from jamscope.dataset import ExperimentCase, build_case_dataset
    from jamscope.models.training import evaluate
    from jamscope.sim.scenario import ScenarioConfig, CLASS_NAMES
    from jamscope.util.configuration import write_config_file

    data_dir = data_dir or get_data_dir()
    case = ExperimentCase.get(case_name)
    base = ScenarioConfig.from_file(config) if config else None
    train, test = build_case_dataset(case, seed, data_dir=data_dir, base_cfg=base)

    if case.classifier == "knn":
        classifier = models.get_classifier("knn", k=k)
    else:
        classifier = models.get_classifier("rf", n_trees=trees, max_depth=max_depth, seed=seed, n_jobs=n_jobs)
    classifier.fit(train)
    cm, accuracy = evaluate(classifier.predict(test.rows), test.labels)

    result = {
        "case": case.name,
        "classifier": case.classifier,
        "use_vrs": case.use_vrs,
        "normalize": case.normalize,
        "train_speed": case.train_speed,
        "test_speed": case.test_speed,
        "seed": int(seed),
        "params": classifier.describe(),
        "n_train": len(train),
        "n_test": len(test),
        "accuracy": accuracy,
    }
    for i, predicted in enumerate(CLASS_NAMES):
        for j, actual in enumerate(CLASS_NAMES):
            result[f"count.{predicted}.{actual}"] = int(cm.counts[i, j])
    path = write_config_file(results_path(data_dir, case.name, seed), result, header=f"results for {case.name}")

    if verbose:
        print(f"{case.name} (seed {seed}, {classifier.describe()}): train {len(train)} / test {len(test)}")
        print(tabulate(cm.as_rows(), headers=["predicted \\ actual"] + CLASS_NAMES, tablefmt="github"))
        print(f"accuracy: {accuracy * 100:.2f}%")
        print("wrote", path)
    return result


def evaluate_cases(names, seeds=(0,), k=5, trees=100, max_depth=None, config=None, n_jobs=1, data_dir=None):
    from joblib import Parallel, delayed
    from tabulate import tabulate
    from jamscope.dataset import ExperimentCase, ensure_run
    from jamscope.sim.scenario import ScenarioConfig

    data_dir = data_dir or get_data_dir()
    print("RUNNING:", ",".join(names) if len(names) <= 3 else f"{len(names)} cases", "seeds", list(seeds))

    # simulate missing runs up front so parallel cases never race on the same run directory
    base = ScenarioConfig.from_file(config) if config else None
    cases = [ExperimentCase.get(n) for n in names]
    speeds = sorted({s for c in cases for s in (c.train_speed, c.test_speed)})
    for seed in seeds:
        for speed in speeds:
            ensure_run(data_dir, speed, seed, base)

    jobs = [(name, seed) for name in names for seed in seeds]
    verbose = len(jobs) == 1
    if n_jobs == 1 or len(jobs) == 1:
        from tqdm import tqdm
        results = [evaluate_case(n, s, k, trees, max_depth, config, data_dir, verbose=verbose)
                   for n, s in tqdm(jobs, disable=verbose)]
    else:
        results = Parallel(n_jobs=n_jobs)(
            delayed(evaluate_case)(n, s, k, trees, max_depth, config, data_dir, 1, False) for n, s in jobs
        )

    if len(jobs) > 1:
        rows = []
        for name in names:
            accs = [r["accuracy"] for r in results if r["case"] == name]
            rows.append([name, f"{100 * sum(accs) / len(accs):.2f}%", len(accs)])
        print(tabulate(rows, headers=["case", "accuracy", "seeds"], tablefmt="github"))
    print("done with", len(jobs), "evaluations")
    return results


if __name__ == "__main__":
    main()
