# Usage: js-report [results_dir] [--out DIR]
import os
import re
import sys
import argparse

from jamscope import models
from jamscope.util import get_data_dir, get_logger, read_config_file
from jamscope.util.errors import DatasetError
from jamscope.scripts import run_command

logger = get_logger(__name__)

SUMMARY_COLUMNS = ["case", "classifier", "use_vrs", "train_speed", "test_speed", "accuracy"]


def main():
    parser = argparse.ArgumentParser(description='Summarise evaluation results as CSV and an SVG bar chart')
    parser.add_argument('results_dir', type=str, nargs='?', help='Directory of results files', default=None)
    parser.add_argument('--out', type=str, help='Where to write summary.csv and accuracy.svg', default=None)

    args = parser.parse_args()
    sys.exit(run_command(report, args.results_dir, args.out))


def read_results(results_dir):
    if not os.path.isdir(results_dir):
        raise DatasetError(f"results directory not found: {results_dir}")
    files = sorted(f for f in os.listdir(results_dir) if re.match(r".+-seed\d+\.cfg$", f))
    if len(files) == 0:
        raise DatasetError(f"no results files in {results_dir}")
    return [read_config_file(os.path.join(results_dir, f)) for f in files]


def report(results_dir=None, out=None):
    import pandas as pd
    from tabulate import tabulate
    from jamscope.util.configuration import parse_bool

    if results_dir is None:
        results_dir = os.path.join(get_data_dir(), "results")
    out = out or results_dir
    print("RUNNING: report", results_dir)

    results = read_results(results_dir)
    df = pd.DataFrame({
        "case": [r["case"] for r in results],
        "classifier": [r["classifier"] for r in results],
        "use_vrs": [parse_bool("use_vrs", r["use_vrs"]) for r in results],
        "train_speed": [float(r["train_speed"]) for r in results],
        "test_speed": [float(r["test_speed"]) for r in results],
        "accuracy": [float(r["accuracy"]) for r in results],
    })
    summary = df.groupby(["case", "classifier", "use_vrs", "train_speed", "test_speed"], as_index=False,
                         sort=False)["accuracy"].mean()

    registry = [c["name"] for c in models.get_case_list()]
    order = {name: i for i, name in enumerate(registry)}
    summary = summary.assign(_order=summary["case"].map(lambda n: order.get(n, len(order))))
    summary = summary.sort_values(["_order", "case"]).drop(columns="_order").reset_index(drop=True)
    summary = summary[SUMMARY_COLUMNS]

    missing = [name for name in models.resolve_case_names("all") if name not in set(summary["case"])]
    for name in missing:
        print("WARNING: missing case", name)
        logger.warning("no results for case %s", name)

    if not os.path.exists(out):
        os.makedirs(out)
    summary_path = os.path.join(out, "summary.csv")
    summary.to_csv(summary_path, index=False, float_format="%.6f")
    print(tabulate(summary.assign(accuracy=summary["accuracy"] * 100).values.tolist(),
                   headers=SUMMARY_COLUMNS[:-1] + ["accuracy (%)"], floatfmt=".2f", tablefmt="github"))
    print("wrote", summary_path)

    chart_path = plot_accuracy(summary, os.path.join(out, "accuracy.svg"))
    print("wrote", chart_path)
    return {"summary": summary_path, "chart": chart_path, "cases": list(summary["case"]), "missing": missing}


def plot_accuracy(summary, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(max(6, 0.8 * len(summary)), 5))
    colors = ["tab:orange" if v else "tab:blue" for v in summary["use_vrs"]]
    bars = ax.bar(range(len(summary)), summary["accuracy"] * 100, color=colors)
    ax.set_xticks(range(len(summary)))
    ax.set_xticklabels(summary["case"], rotation=45, ha="right")
    ax.set_ylabel("accuracy (%)")
    ax.set_ylim(0, 100)
    for bar, acc in zip(bars, summary["accuracy"]):
        ax.annotate(f"{acc * 100:.1f}", (bar.get_x() + bar.get_width() / 2, bar.get_height()),
                    ha="center", va="bottom", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path


if __name__ == "__main__":
    main()
