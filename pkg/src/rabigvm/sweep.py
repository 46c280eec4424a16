"""Parameter sweeps and the datasets behind the energy / photon-number figures.

Methods
-------
``gvm_explicit``  closed forms: explicit energy and the approximate photon number
``gvm_full``      exact variational root with second-order energy and first-order state
``grwa``          generalized rotating-wave approximation
``ed``            exact diagonalization (the reference)
"""
from __future__ import annotations

import csv
import enum
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import baselines, ed, gvm
from .errors import DomainError, MissingOracleError, RabiError
from .model import ModelParams

__all__ = [
    "METHODS",
    "OBSERVABLES",
    "SweepSpec",
    "CurvePoint",
    "FigureId",
    "run_sweep",
    "figure_spec",
    "figure_dataset",
    "error_summary",
    "to_csv",
    "to_json",
]

METHODS = ("gvm_explicit", "gvm_full", "grwa", "ed")
OBSERVABLES = ("energy", "mean_photon")
SWEPT = ("atom_freq", "coupling")


@dataclass(frozen=True)
class SweepSpec:
    """Grid over one parameter in units of omega; ``fixed`` holds the other one."""

    swept: str
    start: float
    stop: float
    steps: int
    fixed: float
    omega: float = 1.0
    methods: tuple[str, ...] = METHODS
    observables: tuple[str, ...] = ("energy",)

    def __post_init__(self):
        if self.swept not in SWEPT:
            raise DomainError(f"swept must be one of {SWEPT}, got {self.swept!r}")
        if self.steps < 2:
            raise DomainError("steps must be at least 2")
        if not self.start < self.stop:
            raise DomainError("start must be below stop")
        if self.start < 0 or self.fixed < 0:
            raise DomainError("range values must be non-negative")
        if not self.omega > 0:
            raise DomainError("omega must be positive")
        bad = [m for m in self.methods if m not in METHODS]
        if bad or not self.methods:
            raise DomainError(f"unknown methods {bad}")
        bad = [o for o in self.observables if o not in OBSERVABLES]
        if bad or not self.observables:
            raise DomainError(f"unknown observables {bad}")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)

    def params_at(self, x: float) -> ModelParams:
        w = self.omega
        if self.swept == "atom_freq":
            return ModelParams(w, w * float(x), w * self.fixed)
        return ModelParams(w, w * self.fixed, w * float(x))

    def columns(self) -> list[str]:
        return [f"{m}_{o}" for o in self.observables for m in self.methods]

    def error_columns(self) -> list[str]:
        if "ed" not in self.methods:
            return []
        others = [m for m in self.methods if m != "ed"]
        if len(self.observables) == 1:
            return [f"{m}_err" for m in others]
        return [f"{m}_{o}_err" for o in self.observables for m in others]


@dataclass
class CurvePoint:
    x: float
    values: dict[str, float] = field(default_factory=dict)
    errors: dict[str, float] = field(default_factory=dict)
    failures: dict[str, str] = field(default_factory=dict)

    def value(self, method: str, observable: str = "energy") -> float:
        return self.values[f"{method}_{observable}"]


def _evaluate(method: str, params: ModelParams, pcfg: gvm.PerturbationConfig, ecfg: ed.EdConfig, observables):
    if method == "gvm_explicit":
        out = {"energy": lambda: gvm.energy_explicit(params), "mean_photon": lambda: gvm.mean_photon_approx(params)}
        return {o: out[o]() for o in observables}
    if method == "grwa":
        out = {"energy": lambda: baselines.energy_grwa(params), "mean_photon": lambda: baselines.mean_photon_grwa(params)}
        return {o: out[o]() for o in observables}
    if method == "gvm_full":
        res = gvm.ground_state(params, pcfg, gvm.Method.EXACT_ROOT)
        return {"energy": res.e0_total, "mean_photon": res.mean_photon_full}
    res = ed.exact_ground(params, ecfg)
    return {"energy": res.energy, "mean_photon": res.mean_photon}


def _point(args) -> CurvePoint:
    spec, x, pcfg, ecfg = args
    params = spec.params_at(x)
    point = CurvePoint(x=float(x))
    for method in spec.methods:
        try:
            vals = _evaluate(method, params, pcfg, ecfg, spec.observables)
        except RabiError as exc:
            point.failures[method] = f"{type(exc).__name__}: {exc}"
            for o in spec.observables:
                point.values[f"{method}_{o}"] = math.nan
            continue
        for o in spec.observables:
            point.values[f"{method}_{o}"] = float(vals[o])
    if "ed" in spec.methods:
        single = len(spec.observables) == 1
        for o in spec.observables:
            ref = point.values[f"ed_{o}"]
            for m in spec.methods:
                if m == "ed":
                    continue
                key = f"{m}_err" if single else f"{m}_{o}_err"
                point.errors[key] = abs(point.values[f"{m}_{o}"] - ref)
    return point


def run_sweep(
    spec: SweepSpec,
    pcfg: gvm.PerturbationConfig = gvm.PerturbationConfig(),
    ecfg: ed.EdConfig = ed.EdConfig(),
    workers: int | None = None,
) -> list[CurvePoint]:
    """Evaluate every method and observable on the grid, in grid order.

    Per-point failures are stored on the point instead of aborting the sweep.
    With ``workers > 1`` points are evaluated in a process pool.
    """
    jobs = [(spec, x, pcfg, ecfg) for x in spec.grid()]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_point, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_point(job) for job in jobs]


class FigureId(str, enum.Enum):
    F1A = "f1a"
    F1B = "f1b"
    F2A = "f2a"
    F2B = "f2b"
    F3 = "f3"
    F4 = "f4"
    F4_INSET = "f4_inset"


# swept, (start, stop), fixed, methods, observables
_FIGURES = {
    FigureId.F1A: ("atom_freq", (0.0, 2.0), 0.2, METHODS, ("energy",)),
    FigureId.F1B: ("atom_freq", (0.0, 2.0), 0.6, METHODS, ("energy",)),
    FigureId.F2A: ("coupling", (0.0, 0.8), 1.0, ("gvm_explicit", "grwa", "ed"), ("energy",)),
    FigureId.F2B: ("coupling", (0.0, 0.8), 1.5, ("gvm_explicit", "grwa", "ed"), ("energy",)),
    FigureId.F3: ("atom_freq", (0.0, 2.0), 1.0, ("gvm_full", "grwa", "ed"), ("energy",)),
    FigureId.F4: ("atom_freq", (0.0, 2.0), 0.6, METHODS, ("mean_photon",)),
    FigureId.F4_INSET: ("coupling", (0.0, 1.0), 1.5, METHODS, ("mean_photon",)),
}


def figure_spec(fig: FigureId | str, steps: int = 101, omega: float = 1.0) -> SweepSpec:
    swept, (start, stop), fixed, methods, observables = _FIGURES[FigureId(fig)]
    return SweepSpec(swept, start, stop, steps, fixed, omega, methods, observables)


def figure_dataset(
    fig: FigureId | str,
    steps: int = 101,
    pcfg: gvm.PerturbationConfig = gvm.PerturbationConfig(),
    ecfg: ed.EdConfig = ed.EdConfig(),
    workers: int | None = None,
) -> list[CurvePoint]:
    return run_sweep(figure_spec(fig, steps), pcfg, ecfg, workers)


def error_summary(points: list[CurvePoint], method: str, observable: str | None = None):
    """``(max_abs, mean_abs, argmax_x)`` of |method - ed| over the sweep."""
    if not points:
        raise MissingOracleError("no points")
    if observable is None:
        observable = next(k for k in points[0].values if k.startswith(f"{method}_"))[len(method) + 1 :]
    errs = []
    for p in points:
        ref = p.values.get(f"ed_{observable}")
        if ref is None or math.isnan(ref):
            raise MissingOracleError(f"point x={p.x} has no ed_{observable} value")
        errs.append(abs(p.values[f"{method}_{observable}"] - ref))
    errs = np.asarray(errs)
    k = int(np.nanargmax(errs))
    return float(errs[k]), float(np.nanmean(errs)), points[k].x


def _fmt(v: float) -> str:
    return "" if math.isnan(v) else format(v, ".17g")


def to_csv(points: list[CurvePoint], spec: SweepSpec) -> str:
    """CSV text: ``x``, value columns, error columns, then ``failures`` if any occurred."""
    cols = spec.columns()
    ecols = spec.error_columns()
    any_failure = any(p.failures for p in points)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", *cols, *ecols] + (["failures"] if any_failure else []))
    for p in points:
        row = [_fmt(p.x)] + [_fmt(p.values[c]) for c in cols] + [_fmt(p.errors[c]) for c in ecols]
        if any_failure:
            row.append("; ".join(f"{m}: {msg}" for m, msg in sorted(p.failures.items())))
        writer.writerow(row)
    return buf.getvalue()


def to_json(points: list[CurvePoint]) -> str:
    def clean(d):
        return {k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in d.items()}

    payload = [
        {"x": p.x, "values": clean(p.values), "errors": clean(p.errors), "failures": p.failures} for p in points
    ]
    return json.dumps(payload, indent=1, sort_keys=True)
