"""Kernel computation time: compiled dense backend versus the pure-Python fallback.

    python3 benchmarks/bench_reduce.py [--sizes 16,32,64] [--repeat 3]
"""

import argparse
import random
import time

from ultracoalg.linalg import Op, TruncatedSpace, kernel_subspace
from ultracoalg.linalg import backend


def random_op(n: int, rng: random.Random, p: int):
    V = TruncatedSpace(p, range(n))
    # rank about n/2 with varied valuations so pivoting actually searches
    half = n // 2
    B = [[rng.choice([0, 1, p, p * p, rng.randint(-99, 99)]) for _ in range(n)] for _ in range(half)]
    mix = [[rng.randint(-3, 3) for _ in range(half)] for _ in range(n)]
    A = [[sum(m[k] * B[k][j] for k in range(half)) for j in range(n)] for m in mix]
    return Op.from_matrix(V, V, A, 30)


def best_time(fn, repeat: int) -> float:
    out = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t)
    return min(out)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="16,32,64")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--prime", type=int, default=5)
    ap.add_argument("--tol", type=int, default=20)
    args = ap.parse_args()
    if backend._compiled is None:
        print("compiled backend unavailable; only the Python timings are meaningful")
    rng = random.Random(0)
    print(f"{'n':>4} {'python s':>10} {'cython s':>10} {'speedup':>8} agree")
    for n in (int(s) for s in args.sizes.split(",")):
        T = random_op(n, rng, args.prime)
        py = best_time(lambda: kernel_subspace(T, args.tol, engine="python"), args.repeat)
        cy = best_time(lambda: kernel_subspace(T, args.tol, engine="cython"), args.repeat)
        a = kernel_subspace(T, args.tol, engine="python")
        b = kernel_subspace(T, args.tol, engine="cython")
        agree = a.leads == b.leads and all(x.agrees(y, args.tol) for x, y in zip(a.basis, b.basis))
        print(f"{n:>4} {py:>10.4f} {cy:>10.4f} {py / cy if cy else float('nan'):>8.1f} {agree}")


if __name__ == "__main__":
    main()
