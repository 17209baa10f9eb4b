"""Compare the compiled and numpy row-reduction kernels.

Usage: python3 benchmarks/bench_rref.py [--repeat 5] [--sizes 16,64,128,256]

Prints one line per (size, p) with the best time of each backend and the
speedup, then an end-to-end timing of an Ext computation under each backend
(run in a subprocess so ``STABLECAT_PURE`` takes effect at import).
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from stablecat import _rref_py

try:
    from stablecat import _rref
except ImportError:  # pragma: no cover - depends on the build
    _rref = None

WORKLOAD = (
    "from stablecat.algebra import mk_local_sq_zero\n"
    "from stablecat.modrep import trivial\n"
    "from stablecat.homalg import ext\n"
    "a = mk_local_sq_zero(2, 2)\n"
    "k = trivial(a)\n"
    "[ext(k, k, n) for n in range(6)]\n"
)


def _time_kernel(fn, a: np.ndarray, p: int, repeat: int) -> float:
    def run():
        fn(a.copy(order="C"), p)

    return min(timeit.repeat(run, number=1, repeat=repeat))


def bench_kernels(sizes, primes, repeat: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        for p in primes:
            a = rng.integers(0, p, size=(n, n), dtype=np.int64)
            t_py = _time_kernel(_rref_py.rref_inplace, a, p, repeat)
            t_cy = _time_kernel(_rref.rref_inplace, a, p, repeat) if _rref else float("nan")
            rows.append((n, p, t_cy, t_py))
    return rows


def bench_end_to_end(repeat: int):
    out = {}
    for label, pure in (("cython", ""), ("python", "1")):
        env = dict(os.environ, STABLECAT_PURE=pure)
        if not pure:
            env.pop("STABLECAT_PURE")
        code = f"import timeit\nprint(min(timeit.repeat({WORKLOAD!r}, number=1, repeat={repeat})))"
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        out[label] = float(res.stdout.strip())
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", default="16,64,128,256")
    ap.add_argument("--primes", default="2,5,101")
    args = ap.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]
    primes = [int(s) for s in args.primes.split(",")]

    print(f"{'n':>5} {'p':>5} {'cython_s':>12} {'python_s':>12} {'speedup':>8}")
    for n, p, t_cy, t_py in bench_kernels(sizes, primes, args.repeat):
        print(f"{n:>5} {p:>5} {t_cy:>12.6f} {t_py:>12.6f} {t_py / t_cy:>8.1f}")
    e2e = bench_end_to_end(max(1, args.repeat // 2))
    print(f"ext(k,k,0..5) over k[x,y]/(x,y)^2: cython {e2e['cython']:.4f}s, python {e2e['python']:.4f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
