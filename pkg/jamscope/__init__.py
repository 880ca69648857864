from .__version__ import __version__
from . import models
from .scripts.simulate import simulate
from .scripts.evaluate import evaluate_case, evaluate_cases
from .scripts.report import report

from .util import update_data_dir, get_data_dir

def init(data_dir, env_file=".env"):
  data_dir = update_data_dir(data_dir, env_file=env_file)
  print("Initialized env with data directory at", data_dir)

def main():
    import argparse
    parser = argparse.ArgumentParser(description='Initialize a data directory')
    parser.add_argument('data_dir', type=str, help='Directory to store simulation runs and results')
    parser.add_argument('--env_file', type=str, help='Path to .env file', default=".env")

    args = parser.parse_args()
    init(args.data_dir, args.env_file)

def list_cases():
    from tabulate import tabulate
    rows = []
    for c in models.get_case_list():
        rows.append([c["name"], c["group"], c["classifier"], c["use_vrs"], c["normalize"], c["train_speed"], c["test_speed"]])
    print("=== Experiment Cases ===")
    print(tabulate(rows, headers=["case", "group", "classifier", "vrs", "normalize", "train m/s", "test m/s"], tablefmt="github"))
    print("\n")
    print("=== Classifiers ===")
    for c in models.get_classifier_list():
        print(c["id"], c["params"])
