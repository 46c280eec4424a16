"""Command-line front end.

Exit codes: 0 success, 1 check failure, 2 usage/domain error, 3 numerical
failure, 4 unconverged ED (output still written).
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import baselines, checks, ed, gvm, sweep
from .errors import ConvergenceError, DegenerateDenominatorError, DomainError, RabiError
from .model import ModelParams, validate

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_NUMERIC, EXIT_UNCONVERGED = 0, 1, 2, 3, 4

FIGURE_IDS = {"1a": "f1a", "1b": "f1b", "2a": "f2a", "2b": "f2b", "3": "f3", "4": "f4", "4i": "f4_inset"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # route argparse failures through the structured error path
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fail(exc: BaseException, code: int) -> int:
    payload = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    return code


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _params(args) -> ModelParams:
    atom, g = args.atom, args.g
    if args.units_of_omega:
        atom, g = atom * args.omega, g * args.omega
    return validate(ModelParams(args.omega, atom, g))


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--omega", type=float, default=1.0, help="photon frequency (default 1)")
    p.add_argument("--atom", type=float, required=True, help="atomic resonant frequency")
    p.add_argument("--g", type=float, required=True, help="atom-photon coupling")
    p.add_argument("--units-of-omega", action="store_true", help="read --atom and --g as multiples of --omega")


def _nfock(args) -> int:
    return args.nfock if args.nfock is not None else ed.default_n_fock()


def cmd_gvm(args) -> int:
    params = _params(args)
    cfg = gvm.PerturbationConfig(n_max=args.nmax, term_tol=args.term_tol, root_tol=args.root_tol)
    if args.mode == "full":
        res = gvm.ground_state(params, cfg, gvm.Method.EXACT_ROOT)
        e2, neglected, total = res.e0_order2, None, res.e0_total
    else:
        res = gvm.ground_state(params, cfg, gvm.Method.CLOSED_FORM)
        e2, neglected, total = 0.0, res.e0_order2, gvm.energy_explicit(params)
    out = {
        "mode": args.mode,
        "lambda": res.solution.lam,
        "e0_order0": res.solution.e0_unperturbed,
        "e0_order2": e2,
        "e0_total": total,
        "mean_photon_full": res.mean_photon_full,
        "mean_photon_approx": res.mean_photon_approx,
        "stationarity_residual": res.solution.stationarity_residual,
        "corrections": [
            {"branch": k.branch.value, "n": k.photon_n, "coeff": c}
            for k, c in sorted(res.wavefunction.corrections().items(), key=lambda kv: kv[0].photon_n)
        ],
    }
    if neglected is not None:
        out["e0_order2_neglected"] = neglected
    _emit(json.dumps(out, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_grwa(args) -> int:
    params = _params(args)
    out = {"e0_grwa": baselines.energy_grwa(params), "mean_photon_grwa": baselines.mean_photon_grwa(params)}
    _emit(json.dumps(out, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_ed(args) -> int:
    params = _params(args)
    cfg = ed.EdConfig(n_fock=_nfock(args), use_parity_chains=not args.dense)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        res = ed.exact_ground(params, cfg)
    out = {
        "energy": res.energy,
        "mean_photon": res.mean_photon,
        "parity": res.parity.value,
        "converged": res.converged,
        "n_fock": res.n_fock,
    }
    _emit(json.dumps(out, indent=2) + "\n", args.out)
    return EXIT_OK if res.converged else EXIT_UNCONVERGED


def _write_points(points, spec, fmt, out) -> None:
    text = sweep.to_csv(points, spec) if fmt == "csv" else sweep.to_json(points) + "\n"
    _emit(text, out)


def cmd_sweep(args) -> int:
    swept = {"atom": "atom_freq", "g": "coupling"}.get(args.swept, args.swept)
    spec = sweep.SweepSpec(
        swept=swept,
        start=args.start,
        stop=args.stop,
        steps=args.steps,
        fixed=args.fixed,
        omega=args.omega,
        methods=tuple(m.strip() for m in args.methods.split(",") if m.strip()),
        observables=tuple(o.strip() for o in args.observables.split(",") if o.strip()),
    )
    ecfg = ed.EdConfig(n_fock=_nfock(args))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        points = sweep.run_sweep(spec, ecfg=ecfg, workers=args.workers)
    _write_points(points, spec, args.format, args.out)
    return EXIT_OK


def cmd_figure(args) -> int:
    if args.id not in FIGURE_IDS:
        raise UsageError(f"unknown figure id {args.id!r}; expected one of {', '.join(FIGURE_IDS)}")
    fig = FIGURE_IDS[args.id]
    spec = sweep.figure_spec(fig, args.steps)
    ecfg = ed.EdConfig(n_fock=_nfock(args))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        points = sweep.run_sweep(spec, ecfg=ecfg, workers=args.workers)
    _write_points(points, spec, args.format, args.out)
    observable = spec.observables[0]
    parts = []
    for method in spec.methods:
        if method != "ed":
            max_abs, _, x = sweep.error_summary(points, method, observable)
            parts.append(f"max|{method}-ed|={max_abs:.3e} (x={x:.3g})")
    summary = f"figure {args.id}: {len(points)} points; " + "; ".join(parts)
    print(summary, file=sys.stdout if args.out and args.out != "-" else sys.stderr)
    return EXIT_OK


def cmd_check(args) -> int:
    results = checks.run_checks(quick=args.quick)
    for r in results:
        print(r.line())
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_CHECK if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rabigvm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gvm", help="variational ground state at one parameter point")
    _add_model_flags(p)
    p.add_argument("--mode", choices=("explicit", "full"), default="full")
    p.add_argument("--nmax", type=int, default=60)
    p.add_argument("--term-tol", type=float, default=1e-16)
    p.add_argument("--root-tol", type=float, default=1e-13)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gvm)

    p = sub.add_parser("grwa", help="GRWA reference values")
    _add_model_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_grwa)

    p = sub.add_parser("ed", help="exact diagonalization in a truncated Fock space")
    _add_model_flags(p)
    p.add_argument("--nfock", type=int, default=None, help="Fock truncation (default $RABI_NFOCK or 200)")
    p.add_argument("--dense", action="store_true", help="solve the dense spin x Fock matrix instead")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ed)

    p = sub.add_parser("sweep", help="sweep one parameter (in units of omega)")
    p.add_argument("--swept", choices=("atom_freq", "coupling", "atom", "g"), required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--fixed", type=float, required=True, help="value of the other parameter, in units of omega")
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--methods", default=",".join(sweep.METHODS))
    p.add_argument("--observables", default="energy")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--nfock", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", help="regenerate a figure dataset")
    p.add_argument("--id", required=True, help="one of " + ", ".join(FIGURE_IDS))
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--nfock", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("check", help="run the acceptance checks")
    p.add_argument("--quick", action="store_true", help="exact anchors only")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (DomainError, UsageError) as exc:
        return _fail(exc, EXIT_USAGE)
    except (ConvergenceError, DegenerateDenominatorError) as exc:
        return _fail(exc, EXIT_NUMERIC)
    except RabiError as exc:
        return _fail(exc, EXIT_NUMERIC)


if __name__ == "__main__":
    sys.exit(main())
