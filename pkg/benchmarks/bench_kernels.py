"""Numba vs numpy kernels: reachability closure and ground-rule saturation.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--sizes 100 200 400]

Both variants are checked for equal output before timing.  The first numba
call (compilation) is excluded.
"""

import argparse
import time

import numpy as np

from cplkit._accel import HAVE_NUMBA
from cplkit.kernels import closure_numba, closure_numpy, compile_rules, fixpoint


def random_dag(n, p, rng):
    adj = rng.random((n, n)) < p
    return np.triu(adj, k=1)


def path_rules(n, rng, p=0.05):
    """Ground transitive closure over a random graph on ``n`` nodes."""
    edge = lambda i, j: i * n + j
    path = lambda i, j: n * n + i * n + j
    rules = [(edge(i, j), [], []) for i in range(n) for j in range(n) if rng.random() < p]
    for i in range(n):
        for j in range(n):
            rules.append((path(i, j), [edge(i, j)], []))
            for k in range(n):
                rules.append((path(i, k), [path(i, j), edge(j, k)], []))
    return compile_rules(2 * n * n, rules)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400])
    ap.add_argument("--rule-sizes", type=int, nargs="+", default=[20, 40, 60])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    rng = np.random.default_rng(args.seed)

    print(f"{'kernel':<22} {'size':>6} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for n in args.sizes:
        adj = random_dag(n, 0.05, rng)
        assert np.array_equal(closure_numba(adj), closure_numpy(adj))
        t_np = best_of(lambda: closure_numpy(adj), args.repeat)
        t_nb = best_of(lambda: closure_numba(adj), args.repeat)
        print(f"{'closure':<22} {n:>6} {t_np:>10.5f} {t_nb:>10.5f} {t_np / t_nb:>8.1f}")

    for n in args.rule_sizes:
        rules = path_rules(n, rng)
        db0 = np.zeros(rules.n_atoms, dtype=np.bool_)
        for semi in (False, True):
            a = fixpoint(rules, db0, semi, use_numba=True)[0]
            b = fixpoint(rules, db0, semi, use_numba=False)[0]
            assert np.array_equal(a, b)
            t_np = best_of(lambda: fixpoint(rules, db0, semi, use_numba=False), args.repeat)
            t_nb = best_of(lambda: fixpoint(rules, db0, semi, use_numba=True), args.repeat)
            label = "saturate semi-naive" if semi else "saturate naive"
            print(f"{label:<22} {rules.n_rules:>6} {t_np:>10.5f} {t_nb:>10.5f} {t_np / t_nb:>8.1f}")


if __name__ == "__main__":
    main()
