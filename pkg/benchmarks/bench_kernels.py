"""Compare the numba and numpy kernels on elimination, products and condition assembly.

    python3 benchmarks/bench_kernels.py --sizes 50 100 200 400 --repeat 3
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from zeroschemes import _kernels, exactla
from zeroschemes.postulation import random_configuration
from zeroschemes.surfaces import P2, functional_matrix, monomial_basis


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def random_matrix(rng, n: int) -> np.ndarray:
    return exactla.as_matrix([[int(x) for x in exactla.random_fp(rng, n)] for _ in range(n)])


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    rng = np.random.default_rng(args.seed)
    # warm the jit caches so compile time is not measured
    small = random_matrix(rng, 4)
    for b in backends:
        exactla.rank(small, backend=b)
        exactla.matmul(small, small, backend=b)

    print(f"{'kernel':<12}{'n':>6}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for n in args.sizes:
        m = random_matrix(rng, n)
        d = int((np.sqrt(8 * n + 1) - 3) / 2)  # P2(d) has about n monomials
        config = random_configuration({"tile": max(1, n // 8), "double": max(1, n // 6)}, rng)
        basis = monomial_basis(P2(d))
        jobs = {
            "rank": lambda b: exactla.rank(m, backend=b),
            "matmul": lambda b: exactla.matmul(m, m, backend=b),
            "conditions": lambda b: functional_matrix(config, basis, backend=b),
        }
        for name, job in jobs.items():
            ts = [best_of(lambda: job(b), args.repeat) for b in backends]
            speed = f"{ts[0] / ts[-1]:>9.1f}x" if len(ts) > 1 else ""
            print(f"{name:<12}{n:>6}" + "".join(f"{t * 1e3:>10.2f}ms" for t in ts) + speed)
        # both backends must agree bit for bit
        if len(backends) > 1:
            assert exactla.rank(m, backend="numpy") == exactla.rank(m, backend="numba")


if __name__ == "__main__":
    main()
