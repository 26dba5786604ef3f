"""Timing of coset multiplicity counting for |F| up to about 10^6.

Run:  python3 benchmarks/bench_multiplicity.py [--max-size 2000000]

The vectorized path goes from an int64 coordinate array to coset keys to
row counts.  The object path builds every group element and hashes its key,
and is timed at smaller sizes for comparison.  Each row also checks the
exact value of the squared norm against its closed form.
"""

from __future__ import annotations

import argparse
import time
from fractions import Fraction

import numpy as np

from cosetlab import cosets as cs
from cosetlab import groups as gr
from cosetlab.ell2 import avg_norm_sq_delta, coset_multiplicities_array
from cosetlab.folner import HeisBox


def heis_box_array(n: int) -> np.ndarray:
    r = np.arange(-n, n + 1, dtype=np.int64)
    rc = np.arange(-n * n, n * n + 1, dtype=np.int64)
    a, b, c = np.meshgrid(r, r, rc, indexing="ij")
    return np.stack([a.ravel(), b.ravel(), c.ravel()], axis=1)


def norm_from_counts(counts: np.ndarray, size: int) -> Fraction:
    return Fraction(int(np.sum(counts.astype(object) ** 2)), size * size)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-size", type=int, default=2_000_000)
    ap.add_argument("--object-max-size", type=int, default=150_000)
    args = ap.parse_args(argv)

    H = cs.HeisCenter()
    s = gr.Heis(7, -3, 11)
    print(f"{'path':<11}{'n':>4}{'|F|':>11}{'seconds':>10}  norm_sq")
    n = 2
    while HeisBox().size(n) <= args.max_size:
        arr = heis_box_array(n)
        t0 = time.perf_counter()
        counts = coset_multiplicities_array(gr.array_right_multiply(arr, s), H)
        dt = time.perf_counter() - t0
        val = norm_from_counts(counts, len(arr))
        assert val == Fraction(1, (2 * n + 1) ** 2)
        print(f"{'vectorized':<11}{n:>4}{len(arr):>11}{dt:>10.3f}  {val}")
        if len(arr) <= args.object_max_size:
            F = HeisBox().generate(n).right_translate(s)
            t0 = time.perf_counter()
            val2 = avg_norm_sq_delta(F, H, vectorize=False)
            dt2 = time.perf_counter() - t0
            assert val2 == val
            print(f"{'objects':<11}{n:>4}{len(F):>11}{dt2:>10.3f}  {val2}")
        n += 2 if n < 10 else 4


if __name__ == "__main__":
    main()
