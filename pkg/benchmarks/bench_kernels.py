"""Time the numba kernels against the numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5]

The first numba call of each kernel is a compile (or a cache load) and is
reported separately.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qeuler._kernels import _numba, _numpy


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases():
    offsets = np.arange(0.0, 7.0)
    coeffs = np.array([1.0, -1.0, 0.0, -1.0, 1.0, 0.0])
    yield ("bracket_series k=3 n=5 (2e5 terms)",
           lambda m: m.bracket_series(offsets, 3, 2 / 3, 5, 3, 1.0, 1.0, 0.97, coeffs, 200_000))
    yield ("bracket_series gaussian k=3 (5e4 terms)",
           lambda m: m.bracket_series(offsets, 1, 0.5, 4, 3, 0.5, 1.0, 0.99, coeffs[:2], 50_000))
    L, mod = 3 * 5**5, 5**4
    chi = [0, 1, -1]
    yield ("alt_char_weights L=9375",
           lambda m: m.alt_char_weights(L, chi, 6, mod))
    a = _numpy.alt_char_weights(L, chi, 6, mod)
    yield ("conv_mod 9375 x 9375", lambda m: m.conv_mod(a, a, mod))
    yield ("qbracket_table 2e4", lambda m: m.qbracket_table(4, 1, 20_000, 3, 1, 3**5, 3**4))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':42s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s} {'first numba':>12s}")
    for name, call in cases():
        t0 = time.perf_counter()
        call(_numba)
        first = time.perf_counter() - t0
        t_np, out_np = _best(lambda: call(_numpy), args.repeat)
        t_nb, out_nb = _best(lambda: call(_numba), args.repeat)
        if not np.allclose(np.asarray(out_np, dtype=float), np.asarray(out_nb, dtype=float),
                           rtol=1e-9, atol=1e-9):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:42s} {t_np * 1e3:9.2f}ms {t_nb * 1e3:9.2f}ms {t_np / t_nb:7.1f}x {first:11.2f}s")


if __name__ == "__main__":
    main()
