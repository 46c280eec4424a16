"""Locked regression bounds on method-vs-ED errors for the figure datasets.

The bounds are measured once with ``tools/lock_bounds.py`` (101-point grids,
ED at n_fock = 200) and stored in ``data/regression_bounds.json``.
"""
from __future__ import annotations

import json
import math
from importlib import resources

# (figure, method, observable) entries that carry a locked bound
LOCKED = (
    ("f1a", "gvm_explicit", "energy"),
    ("f1b", "gvm_explicit", "energy"),
    ("f2a", "gvm_explicit", "energy"),
    ("f2b", "gvm_explicit", "energy"),
    ("f3", "gvm_full", "energy"),
    ("f4", "gvm_explicit", "mean_photon"),
)


def key(fig: str, method: str, observable: str) -> str:
    return f"{fig}:{method}:{observable}"


def round_up(value: float, digits: int = 2) -> float:
    """Round ``value`` up to ``digits`` significant figures."""
    if value <= 0:
        return 0.0
    exp = math.floor(math.log10(value)) - digits + 1
    scale = 10.0**exp
    return float(f"{math.ceil(value / scale - 1e-9) * scale:.{digits}g}")


def load() -> dict[str, dict[str, float]]:
    text = resources.files("rabigvm").joinpath("data/regression_bounds.json").read_text()
    return json.loads(text)["bounds"]


def bound(fig: str, method: str, observable: str) -> float:
    return load()[key(fig, method, observable)]["bound"]
