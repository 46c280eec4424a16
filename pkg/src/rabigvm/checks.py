"""Acceptance checks: exact anchors, oracle equivalence and the figure claims.

Every check returns a :class:`CheckResult`; ``run_checks`` drives them for
``rabigvm check`` and ``tests/test_acceptance.py``. Functions are looked up
through their modules at call time, so a patched implementation is what gets
checked.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import baselines, bounds, ed, gvm, kernels
from .model import BasisLabel, Branch, ModelParams
from .sweep import error_summary, figure_dataset

G_GRID = tuple(round(0.1 * k, 10) for k in range(1, 11))
ATOM_GRID = (0.0, 0.5, 1.0, 1.5, 2.0)


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: str
    threshold: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<34s} measured: {self.measured:<44s} threshold: {self.threshold} ({self.seconds:.2f} s)"


def _grid():
    return [ModelParams(1.0, w, g) for g in G_GRID for w in ATOM_GRID]


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def check_polaron_anchor() -> CheckResult:
    worst_rel = worst_ed = worst_n = 0.0
    t0 = time.perf_counter()
    for g in (0.1, 0.25, 0.5, 0.75, 1.0):
        p = ModelParams(1.0, 0.0, g)
        exact = 0.5 - g * g
        res = gvm.ground_state(p)
        for e in (gvm.energy_explicit(p), baselines.energy_grwa(p), res.e0_total):
            worst_rel = max(worst_rel, _rel(e, exact))
        worst_ed = max(worst_ed, abs(ed.exact_ground(p, ed.EdConfig(n_fock=200)).energy - exact))
        for n in (res.mean_photon_full, gvm.mean_photon_approx(p)):
            worst_n = max(worst_n, abs(n - g * g))
    dt = time.perf_counter() - t0
    ok = worst_rel <= 1e-12 and worst_ed <= 1e-8 and worst_n <= 1e-10 and dt < 1.0
    return CheckResult(
        "1 polaron anchor",
        ok,
        f"rel={worst_rel:.1e} ed={worst_ed:.1e} n={worst_n:.1e} t={dt:.2f}s",
        "rel<=1e-12 ed<=1e-8 n<=1e-10 t<1s",
    )


def check_decoupled_anchor() -> CheckResult:
    bad = []
    for w in ATOM_GRID:
        p = ModelParams(1.0, w, 0.0)
        expected = 0.5 * 1.0 - 0.5 * w
        energies = {
            "explicit": gvm.energy_explicit(p),
            "grwa": baselines.energy_grwa(p),
            "full": gvm.ground_state(p, mode=gvm.Method.EXACT_ROOT).e0_total,
            "closed": gvm.ground_state(p, mode=gvm.Method.CLOSED_FORM).e0_total,
            "ed": ed.exact_ground(p).energy,
        }
        photons = {
            "approx": gvm.mean_photon_approx(p),
            "weak": gvm.mean_photon_weak_atom(p),
            "grwa": baselines.mean_photon_grwa(p),
            "full": gvm.ground_state(p).mean_photon_full,
            "ed": ed.exact_ground(p).mean_photon,
        }
        bad += [f"E_{k}(atom={w})" for k, v in energies.items() if v != expected]
        bad += [f"n_{k}(atom={w})" for k, v in photons.items() if v != 0.0]
    return CheckResult("2 decoupled anchor", not bad, f"{len(bad)} mismatches {bad[:3]}", "exact equality")


def check_variational_bound() -> CheckResult:
    t0 = time.perf_counter()
    margin = math.inf
    for p in _grid():
        e00 = gvm.solve_lambda_exact(p).e0_unperturbed
        margin = min(margin, e00 - ed.exact_ground(p).energy)
    dt = time.perf_counter() - t0
    ok = margin >= -1e-9 and dt < 10.0
    return CheckResult("3 variational bound", ok, f"min(E00-E_ED)={margin:.3e} t={dt:.2f}s", ">= -1e-9, t<10s")


def check_figure1() -> CheckResult:
    t0 = time.perf_counter()
    notes = []
    ok = True
    for fig in ("f1a", "f1b"):
        pts = figure_dataset(fig)
        for p in pts:
            if p.x >= 1.1 - 1e-12 and p.errors["gvm_explicit_err"] > p.errors["grwa_err"]:
                ok = False
                notes.append(f"{fig} order x={p.x:.2f}")
        tail = [p.errors["grwa_err"] for p in pts if p.x >= 1.0 - 1e-12]
        if any(b < a for a, b in zip(tail, tail[1:])):
            ok = False
            notes.append(f"{fig} grwa error decreases")
        max_abs, _, _ = error_summary(pts, "gvm_explicit", "energy")
        limit = bounds.bound(fig, "gvm_explicit", "energy")
        ok &= max_abs <= limit
        notes.append(f"{fig} max={max_abs:.2e}/{limit:.1e}")
    dt = time.perf_counter() - t0
    ok &= dt < 30.0
    return CheckResult("4 fig1 ordering + accuracy", ok, " ".join(notes) + f" t={dt:.1f}s", "locked bounds, t<30s")


def check_figure2_3() -> CheckResult:
    notes = []
    ok = True
    for fig, method in (("f2a", "gvm_explicit"), ("f2b", "gvm_explicit"), ("f3", "gvm_full")):
        pts = figure_dataset(fig)
        failed = [p.x for p in pts if method in p.failures]
        max_abs, _, _ = error_summary(pts, method, "energy")
        limit = bounds.bound(fig, method, "energy")
        ok &= max_abs <= limit and not failed
        notes.append(f"{fig} max={max_abs:.2e}/{limit:.1e}")
    return CheckResult("5 fig2/fig3 validity window", ok, " ".join(notes), "locked bounds")


def check_figure4() -> CheckResult:
    pts = figure_dataset("f4")
    approx = np.array([p.value("gvm_explicit", "mean_photon") for p in pts])
    grwa_n = np.array([p.value("grwa", "mean_photon") for p in pts])
    max_abs, _, _ = error_summary(pts, "gvm_explicit", "mean_photon")
    limit = bounds.bound("f4", "gvm_explicit", "mean_photon")
    decreasing = bool(np.all(np.diff(approx) < 0))
    constant = bool(np.all(grwa_n == grwa_n[0]) and abs(grwa_n[0] - 0.36) <= 1e-15)
    order = all(
        p.errors["gvm_explicit_err"] <= p.errors["grwa_err"] for p in pts if p.x >= 0.5 - 1e-12
    )
    ok = max_abs <= limit and decreasing and constant and order
    return CheckResult(
        "6 fig4 photon number",
        ok,
        f"max={max_abs:.2e} decr={decreasing} const={constant} order={order}",
        f"<= {limit:.1e}",
    )


def _dense_perturbation(sol, params, n_max):
    h = gvm.transformed_hamiltonian(sol.lam, params, n_max)
    diag = np.array([gvm.unperturbed_energy(sol.lam, params, lab) for lab in _labels(n_max)])
    h_r = h - np.diag(diag)
    e0 = diag[0]
    col = h_r[:, 0]
    gaps = e0 - diag
    gaps[0] = np.inf
    return h_r[0, 0], float(np.sum(col**2 / gaps)), col / gaps


def _labels(n_max):
    return [BasisLabel(Branch.MINUS, n) for n in range(n_max + 1)] + [
        BasisLabel(Branch.PLUS, n) for n in range(n_max + 1)
    ]


def check_perturbation_oracle(n_points: int = 20, seed: int = 7) -> CheckResult:
    rng = np.random.default_rng(seed)
    cfg = gvm.PerturbationConfig()
    worst_e = worst_c = worst_e1 = 0.0
    for _ in range(n_points):
        p = ModelParams(1.0, float(rng.uniform(0.0, 2.0)), float(rng.uniform(0.01, 0.8)))
        sol = gvm.solve_lambda_exact(p, cfg)
        e1, e2_oracle, c_oracle = _dense_perturbation(sol, p, cfg.n_max)
        e2 = gvm.second_order_energy(sol, p, cfg)
        wf = gvm.first_order_wavefunction(sol, p, cfg)
        minus, plus = wf.as_arrays(cfg.n_max)
        c = np.concatenate([minus, plus])
        c[0] = 0.0
        worst_e = max(worst_e, _rel(e2, e2_oracle))
        worst_c = max(worst_c, float(np.max(np.abs(c - c_oracle)) / np.max(np.abs(c_oracle))))
        worst_e1 = max(worst_e1, abs(e1))
    ok = worst_e <= 1e-10 and worst_c <= 1e-10 and worst_e1 == 0.0
    return CheckResult(
        "7 perturbation-oracle equivalence",
        ok,
        f"E2 rel={worst_e:.1e} coeff rel={worst_c:.1e} E1={worst_e1:.0e}",
        "<= 1e-10, E1 == 0",
    )


def check_stationarity() -> CheckResult:
    h = 1e-6
    worst_res = worst_fd = 0.0
    for p in _grid():
        sol = gvm.solve_lambda_exact(p)
        worst_res = max(worst_res, sol.stationarity_residual / p.omega)
        fd = (gvm.unperturbed_energy(sol.lam + h, p) - gvm.unperturbed_energy(sol.lam - h, p)) / (2 * h)
        worst_fd = max(worst_fd, abs(fd) / p.omega)
    ok = worst_res <= 1e-12 and worst_fd <= 1e-8
    return CheckResult("8 stationarity", ok, f"residual={worst_res:.1e} fd={worst_fd:.1e}", "<=1e-12, fd<=1e-8")


def check_grwa_limit() -> CheckResult:
    atoms = (0.2, 0.1, 0.05, 0.025, 0.0125)
    diffs = []
    for w in atoms:
        p = ModelParams(1.0, w, 0.3)
        diffs.append(abs(gvm.energy_explicit(p) - baselines.energy_grwa(p)))
    ratios = [d / w for d, w in zip(diffs, atoms)]
    steps = [abs(b - a) for a, b in zip(ratios, ratios[1:])]
    decreasing = all(b < a for a, b in zip(diffs, diffs[1:]))
    settling = all(b < a for a, b in zip(steps, steps[1:])) and all(math.isfinite(r) for r in ratios)
    return CheckResult(
        "9 GRWA limit collapse",
        decreasing and settling,
        f"diff/atom={', '.join(f'{r:.3e}' for r in ratios)}",
        "diff decreasing, ratio converging",
    )


def check_ed_certification() -> CheckResult:
    worst_dense = worst_trunc = 0.0
    for p in _grid():
        chain = ed.exact_ground(p, ed.EdConfig(n_fock=64))
        dense = ed.exact_ground(p, ed.EdConfig(n_fock=64, use_parity_chains=False))
        worst_dense = max(worst_dense, abs(chain.energy - dense.energy))
        e200 = ed.exact_ground(p, ed.EdConfig(n_fock=200)).energy
        e100 = ed.exact_ground(p, ed.EdConfig(n_fock=100)).energy
        worst_trunc = max(worst_trunc, abs(e200 - e100))
    ok = worst_dense <= 1e-11 and worst_trunc <= 1e-10
    return CheckResult("10 ED self-certification", ok, f"dense={worst_dense:.1e} trunc={worst_trunc:.1e}", "<=1e-11, <=1e-10")


def _observables(p: ModelParams):
    res = gvm.ground_state(p)
    exact = ed.exact_ground(p)
    energies = {
        "e00": res.solution.e0_unperturbed,
        "e2": res.e0_order2,
        "full": res.e0_total,
        "explicit": gvm.energy_explicit(p),
        "grwa": baselines.energy_grwa(p),
        "ed": exact.energy,
    }
    invariants = {
        "lam": res.solution.lam,
        "lam_closed": gvm.lambda_closed_form(p).lam,
        "n_full": res.mean_photon_full,
        "n_approx": gvm.mean_photon_approx(p),
        "n_grwa": baselines.mean_photon_grwa(p),
        "n_ed": exact.mean_photon,
    }
    return energies, invariants


def check_scale_invariance(seed: int = 11) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(3):
        omega = float(rng.uniform(0.5, 2.0))
        p = ModelParams(omega, omega * float(rng.uniform(0.0, 2.0)), omega * float(rng.uniform(0.05, 0.8)))
        e_ref, i_ref = _observables(p)
        for s in (0.5, 3.0):
            e_s, i_s = _observables(p.scaled(s))
            for k, v in e_ref.items():
                worst = max(worst, abs(e_s[k] - s * v) / max(abs(s * v), 1e-300))
            for k, v in i_ref.items():
                worst = max(worst, abs(i_s[k] - v) / max(abs(v), 1e-300))
    return CheckResult("11 scale invariance", worst <= 1e-14, f"max rel={worst:.1e}", "<= 1e-14")


CHECKS: dict[str, Callable[[], CheckResult]] = {
    "polaron_anchor": check_polaron_anchor,
    "decoupled_anchor": check_decoupled_anchor,
    "variational_bound": check_variational_bound,
    "figure1": check_figure1,
    "figure2_3": check_figure2_3,
    "figure4": check_figure4,
    "perturbation_oracle": check_perturbation_oracle,
    "stationarity": check_stationarity,
    "grwa_limit": check_grwa_limit,
    "ed_certification": check_ed_certification,
    "scale_invariance": check_scale_invariance,
}

QUICK = ("polaron_anchor", "decoupled_anchor")


def warm_up() -> None:
    """Compile the eigen-kernels so that timed checks measure the numerics only."""
    ed.exact_ground(ModelParams(1.0, 1.0, 0.3), ed.EdConfig(n_fock=16))
    _ = kernels.BACKEND


def run_checks(quick: bool = False, names=None) -> list[CheckResult]:
    warm_up()
    selected = names or (QUICK if quick else tuple(CHECKS))
    results = []
    for name in selected:
        t0 = time.perf_counter()
        result = CHECKS[name]()
        result.seconds = time.perf_counter() - t0
        results.append(result)
    return results
