"""Time the numba and numpy eigen-kernels on Rabi parity chains.

    python benchmarks/bench_kernels.py [--sizes 200 500 1000 2000] [--repeat 5]

The numpy backend is always measured; numba only when it is enabled
(unset RABI_DISABLE_NUMBA). Compilation happens before timing.
"""
import argparse
import time

import numpy as np

from rabigvm import ModelParams, ed, kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def chain(n):
    return ed.build_parity_chain(ModelParams(1.0, 1.5, 0.8), "even", n)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[200, 500, 1000, 2000])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    warm = chain(16)
    for b in backends:
        ed.ground_eigenpair(warm, backend=b)

    print(f"{'n':>6} " + " ".join(f"{b + ' eig':>12} {b + ' vec':>12}" for b in backends) + f" {'eig ratio':>10}")
    for n in args.sizes:
        m = chain(n)
        d, e = m.diag, m.offdiag
        v0 = np.ones(len(d))
        row, eig_t = [], {}
        for b in backends:
            theta = kernels.lowest_eigenvalue(d, e, backend=b)
            t_eig = best_of(lambda: kernels.lowest_eigenvalue(d, e, backend=b), args.repeat)
            t_vec = best_of(lambda: kernels.inverse_iteration(d, e, theta, v0, backend=b), args.repeat)
            eig_t[b] = t_eig
            row.append(f"{t_eig * 1e3:10.3f}ms {t_vec * 1e3:10.3f}ms")
        ratio = f"{eig_t['numpy'] / eig_t['numba']:.1f}x" if "numba" in eig_t else "-"
        print(f"{n:>6} " + " ".join(row) + f" {ratio:>10}")

    p = ModelParams(1.0, 1.5, 0.6)
    for b in backends:
        t = best_of(lambda: ed.exact_ground(p, backend=b), args.repeat)
        print(f"exact_ground (n_fock=200, both parities + half-size check) [{b}]: {t * 1e3:.2f} ms")


if __name__ == "__main__":
    main()
