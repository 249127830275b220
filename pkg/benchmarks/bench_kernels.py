"""Compare the compiled and pure-Python row-reduction kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Part one times rref_rows on random matrices with both kernels in this
process and checks that they agree. Part two times an adjoint H^2
computation end to end in a subprocess per backend, selected with
HOMLIE2_PURE_PYTHON.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from homlie2 import _pykernels
from homlie2.gf2k import GF2, GF16, GF256

try:
    from homlie2 import _ckernels
except ImportError:
    _ckernels = None

END_TO_END = (
    "import time; from homlie2.gf2k import GF16; from homlie2.linalg import Matrix; "
    "from homlie2.cohomology import cohomology; from homlie2.reps import adjoint_rep, gl_hom_structure; "
    "from homlie2 import _kernels; g = gl_hom_structure(2, 1, Matrix(GF16, [[1, 0, 0], [0, 3, 0], [0, 0, 1]])); "
    "t = time.perf_counter(); [cohomology(g, adjoint_rep(g), n) for n in (1, 2, 3)]; "
    "print(_kernels.BACKEND, time.perf_counter() - t)"
)


def random_rows(F, nrows, ncols, rng):
    return [[rng.randrange(F.q) for _ in range(ncols)] for _ in range(nrows)]


def kernels(args):
    rng = random.Random(0)
    print(f"{'field':>6} {'shape':>10} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for F in (GF2, GF16, GF256):
        for n in (20, 60, 120):
            rows = random_rows(F, n, n + 10, rng)
            py = min(timeit.repeat(lambda: _pykernels.rref_rows(rows, n + 10, F), number=1, repeat=args.repeat))
            if _ckernels is None:
                print(f"{F.q:>6} {n:>4}x{n + 10:<5} {py * 1e3:>10.2f} {'n/a':>10}")
                continue
            assert _ckernels.rref_rows(rows, n + 10, F) == _pykernels.rref_rows(rows, n + 10, F)
            cy = min(timeit.repeat(lambda: _ckernels.rref_rows(rows, n + 10, F), number=1, repeat=args.repeat))
            print(f"{F.q:>6} {n:>4}x{n + 10:<5} {py * 1e3:>10.2f} {cy * 1e3:>10.2f} {py / cy:>7.1f}x")


def end_to_end():
    for pure in ("1", "0"):
        env = dict(os.environ, HOMLIE2_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        backend, secs = out.stdout.split()
        print(f"adjoint cohomology of twisted gl(2|1), degrees 1-3, backend {backend}: {float(secs):.2f}s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    kernels(args)
    end_to_end()


if __name__ == "__main__":
    main()
