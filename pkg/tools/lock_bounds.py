"""Measure max |method - ED| on the figure datasets and write the locked bounds.

Run once after a deliberate numerical change:

    python tools/lock_bounds.py
"""
import json
from pathlib import Path

from rabigvm import bounds
from rabigvm.sweep import error_summary, figure_dataset

OUT = Path(__file__).resolve().parents[1] / "src" / "rabigvm" / "data" / "regression_bounds.json"


def main():
    cache = {}
    entries = {}
    for fig, method, observable in bounds.LOCKED:
        if fig not in cache:
            cache[fig] = figure_dataset(fig)
        max_abs, mean_abs, argmax_x = error_summary(cache[fig], method, observable)
        entries[bounds.key(fig, method, observable)] = {
            "measured_max_abs": max_abs,
            "measured_mean_abs": mean_abs,
            "argmax_x": argmax_x,
            "bound": bounds.round_up(max_abs),
        }
        print(f"{fig:9s} {method:13s} {observable:12s} max={max_abs:.4e} at x={argmax_x:.2f} -> bound {entries[bounds.key(fig, method, observable)]['bound']:.2e}")
    payload = {
        "grid_steps": 101,
        "ed_n_fock": 200,
        "units": "omega = 1",
        "bounds": entries,
    }
    OUT.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
