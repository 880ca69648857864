# Usage: js-simulate [config] --speed <m/s> --scenario <all|smart|interference|constant> --seed <n> [--out DIR]
# Example: js-simulate --speed 25 --seed 3 --plot
import os
import sys
import argparse

from jamscope.util import get_data_dir
from jamscope.scripts import positive_int, run_command


def main():
    parser = argparse.ArgumentParser(description='Simulate jamming/interference scenarios and write observation CSVs')
    parser.add_argument('config', type=str, nargs='?', help='Scenario config file (key = value)', default=None)
    parser.add_argument('--speed', type=float, help='Platoon speed in m/s (overrides base_speed)', default=None)
    parser.add_argument('--scenario', type=str, help='Scenario to simulate', default="all",
                        choices=["all", "smart", "interference", "constant"])
    parser.add_argument('--seed', type=int, help='Random seed (overrides seed)', default=None)
    parser.add_argument('--out', type=str, help='Output directory, defaults to <data>/runs/<run-id>', default=None)
    parser.add_argument('--plot', action='store_true', help='Also render the SINR traces as SVG')
    parser.add_argument('--jobs', type=positive_int, help='Scenarios simulated in parallel', default=1)

    args = parser.parse_args()
    sys.exit(run_command(simulate, args.config, args.speed, args.scenario, args.seed, args.out, args.plot, args.jobs))


def simulate(config=None, speed=None, scenario="all", seed=None, out=None, plot=False, n_jobs=1):
    from jamscope.dataset import run_id, run_dir, run_config, simulate_run, write_run, update_manifest
    from jamscope.sim.scenario import ScenarioConfig, ScenarioKind, RUN_ORDER

    base = ScenarioConfig.from_file(config) if config else ScenarioConfig()
    cfg = run_config(base, base.base_speed if speed is None else speed, base.seed if seed is None else seed)
    rid = run_id(cfg.base_speed, cfg.seed)
    print("RUNNING:", rid)

    kinds = RUN_ORDER if scenario == "all" else (ScenarioKind.parse(scenario),)
    data_dir = None
    if out is None:
        data_dir = get_data_dir()
        out = run_dir(data_dir, cfg.base_speed, cfg.seed)

    traces = simulate_run(cfg, kinds, n_jobs=n_jobs, progress=True)
    for p in write_run(traces, out, cfg):
        print("wrote", p)
    if data_dir is not None and scenario == "all":
        print("wrote", update_manifest(data_dir, rid, cfg, out))
    if plot:
        print("wrote", plot_sinr_traces(traces, os.path.join(out, "sinr.svg")))
    print("done with", rid)
    return out


def plot_sinr_traces(traces, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(len(traces), 1, figsize=(10, 3 * len(traces)), squeeze=False)
    for ax, (kind, trace) in zip(axes[:, 0], traces.items()):
        t = [r.t for r in trace.records]
        ax.plot(t, [r.sinr for r in trace.records], lw=0.8)
        ax.set_title(kind.value)
        ax.set_ylabel("SINR (dB)")
    axes[-1, 0].set_xlabel("time (s)")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path


if __name__ == "__main__":
    main()
