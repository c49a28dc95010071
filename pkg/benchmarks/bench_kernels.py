"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Times the support-aware truncated product on banded relations and the
basis-triple associativity scan over every relation on 5 points.
"""

import argparse
import time

import numpy as np

from tolalg import ext
from tolalg.relation import ToleranceRelation, all_relations


def banded(n, width):
    return ToleranceRelation(n, [(i, i + d) for i in range(1, n + 1) for d in range(1, width + 1) if i + d <= n])


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    backends = ext.available_backends()
    rng = np.random.default_rng(args.seed)
    print(f"backends: {sorted(backends)} (active: {ext.BACKEND})")

    print(f"\n{'kernel':<34}" + "".join(f"{b:>12}" for b in backends) + f"{'numpy dense':>14}")
    for n, width in [(100, 3), (200, 3), (200, 10)]:
        R = banded(n, width)
        a = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) * R.mask
        b = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) * R.mask
        row = f"{f'support_matmul n={n} band={width}':<34}"
        for name in backends:
            row += f"{best_of(lambda: ext.support_matmul(a, b, R.mask, impl=name), args.repeat) * 1e3:>10.2f}ms"
        row += f"{best_of(lambda: np.where(R.mask, a @ b, 0), args.repeat) * 1e3:>12.2f}ms"
        print(row)

    masks = [R.mask for R in all_relations(5)]
    row = f"{'basis-triple scan, 1024 rel. n=5':<34}"
    for name in backends:
        row += f"{best_of(lambda: [ext.nonassociative_basis_triple(m, impl=name) for m in masks], args.repeat) * 1e3:>10.2f}ms"
    print(row)


if __name__ == "__main__":
    main()
