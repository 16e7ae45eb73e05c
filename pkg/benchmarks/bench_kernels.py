"""Benchmark the numba kernel lane against the pure-numpy fallback.

Usage:
    python benchmarks/bench_kernels.py

The two lanes compute identical integers (tests/test_kernels.py asserts
bitwise agreement); this script only compares speed.  The selected lane for
normal package use is controlled by the NCSHIFT_NO_NUMBA environment
variable.
"""

import time

import numpy as np

from ncshift import _kernels
from ncshift.platform import build_a5


def timeit(fn, *args, repeat=200, setup=None):
    best = float("inf")
    for _ in range(5):
        a = setup() if setup else args
        t0 = time.perf_counter()
        for _ in range(repeat):
            fn(*a)
        best = min(best, (time.perf_counter() - t0) / repeat)
    return best * 1e6  # microseconds


def bench_conv(rng):
    cay = build_a5().cayley
    a = rng.integers(0, 7, 60).astype(np.int64)
    b = rng.integers(0, 7, 60).astype(np.int64)
    rows = [("group-algebra convolution (order 60, mod 7)", a, b, cay, 7)]
    for name, *args in rows:
        t_np = timeit(_kernels.conv_mod_np, *args)
        if _kernels.HAVE_NUMBA:
            t_nb = timeit(_kernels._conv_mod_nb, *args)
            print(f"{name:55s} numpy {t_np:9.2f} us   numba {t_nb:9.2f} us   x{t_np/t_nb:.1f}")
        else:
            print(f"{name:55s} numpy {t_np:9.2f} us   numba n/a")


def bench_eliminate(rng):
    # one row-reduction pass at the HKKS scale: 540 pivots, width 1080
    d = 540
    rows = rng.integers(0, 7, (d, 2 * d)).astype(np.int64)
    pivcols = np.arange(d, dtype=np.int64)
    for r in range(d):
        rows[r, r] = 1

    def setup():
        return rows, pivcols, d, rng.integers(0, 7, 2 * d).astype(np.int64), 7

    name = "row reduction vs 540 pivots (width 1080, mod 7)"
    t_np = timeit(eliminate_np_wrapper, repeat=20, setup=setup)
    if _kernels.HAVE_NUMBA:
        t_nb = timeit(eliminate_nb_wrapper, repeat=20, setup=setup)
        print(f"{name:55s} numpy {t_np:9.2f} us   numba {t_nb:9.2f} us   x{t_np/t_nb:.1f}")
    else:
        print(f"{name:55s} numpy {t_np:9.2f} us   numba n/a")


def eliminate_np_wrapper(rows, pivcols, n, v, p):
    _kernels.eliminate_rows_mod_np(rows, pivcols, n, v, p)


def eliminate_nb_wrapper(rows, pivcols, n, v, p):
    _kernels._eliminate_rows_mod_nb(rows, pivcols, n, v, p)


def bench_rref(rng):
    name = "dense RREF 200x400 (mod 7)"

    def setup():
        return (rng.integers(0, 7, (200, 400)).astype(np.int64), 7)

    t_np = timeit(lambda m, p: _kernels.rref_mod_np(m, p), repeat=3, setup=setup)
    if _kernels.HAVE_NUMBA:
        t_nb = timeit(lambda m, p: _kernels._rref_mod_nb(m, p), repeat=3, setup=setup)
        print(f"{name:55s} numpy {t_np:9.2f} us   numba {t_nb:9.2f} us   x{t_np/t_nb:.1f}")
    else:
        print(f"{name:55s} numpy {t_np:9.2f} us   numba n/a")


def bench_macro():
    # end-to-end flavor: one full HKKS-scale span build through SpanBasis,
    # which routes row operations through the selected kernel lane
    from ncshift.field import field_spec
    from ncshift.linalg import SpanBasis

    rng = np.random.default_rng(3)
    GF7 = field_spec(7)
    t0 = time.perf_counter()
    sb = SpanBasis(GF7, 540)
    i = 0
    while sb.dim < 540:
        sb.insert([int(x) for x in rng.integers(0, 7, 540)], i)
        i += 1
    dt = time.perf_counter() - t0
    print(f"{'540-dim span build through selected lane':55s} total {dt*1000:9.1f} ms "
          f"(lane: {_kernels.backend_name()})")


def main():
    rng = np.random.default_rng(0)
    print(f"kernel lane selected at import: {_kernels.backend_name()}")
    if _kernels.HAVE_NUMBA:
        # warm up JIT so compile time is not measured
        cay = build_a5().cayley
        a = np.ones(60, dtype=np.int64)
        _kernels._conv_mod_nb(a, a, cay, 7)
        rows = np.ones((2, 4), dtype=np.int64)
        _kernels._eliminate_rows_mod_nb(rows, np.array([0, 1]), 2,
                                        np.ones(4, dtype=np.int64), 7)
        _kernels._rref_mod_nb(np.ones((2, 2), dtype=np.int64), 7)
    bench_conv(rng)
    bench_eliminate(rng)
    bench_rref(rng)
    bench_macro()


if __name__ == "__main__":
    main()
