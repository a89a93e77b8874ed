"""Compiled vs pure-Python elimination kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Times Smith and Hermite reduction on scenario boundary matrices and on
random dense matrices, checks that both backends return the same result,
and prints one line per case. ``path`` says whether the int64 kernel
finished or overflowed and reran on Python integers.
"""
import argparse
import random
import sys
import time

from homstab.abelian import _backend, hermite_normal_form, smith_normal_form
from homstab.complex import boundary_matrix
from homstab.scenarios import build_annulus_orbit, build_mobius


def cases():
    for label, scn in (("mobius nx=32", build_mobius(32)), ("mobius nx=64", build_mobius(64)),
                       ("annulus-orbit", build_annulus_orbit(32))):
        for k in (1, 2):
            yield f"{label} d{k}", boundary_matrix(scn.complex, k)
    rng = random.Random(0)
    for n in (6, 12, 24, 40):
        yield f"random {n}x{n} [-9,9]", [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]


def int64_path(A, op):
    """"int64" if the compiled kernel finishes, "fallback" if it overflows."""
    rows = A.tolist() if hasattr(A, "tolist") else A
    m, n = len(rows), len(rows[0]) if rows else 0
    kernel = _backend._fast.smith_reduce if op == "snf" else _backend._fast.hermite_reduce
    try:
        kernel(rows, m, n)
    except OverflowError:
        return "fallback"
    return "int64"


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _backend._fast is None:
        sys.exit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")

    print(f"{'case':28s} {'op':4s} {'cython s':>10s} {'python s':>10s} {'speedup':>8s}  path")
    for label, A in cases():
        for op, fn in (("snf", smith_normal_form), ("hnf", hermite_normal_form)):
            tc, rc = best_of(lambda: fn(A, backend="cython"), args.repeat)
            tp, rp = best_of(lambda: fn(A, backend="python"), args.repeat)
            if rc != rp:
                sys.exit(f"{label} {op}: backends disagree")
            print(f"{label:28s} {op:4s} {tc:10.4f} {tp:10.4f} {tp / tc:7.1f}x  {int64_path(A, op)}")


if __name__ == "__main__":
    main()
