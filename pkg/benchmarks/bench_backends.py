"""Benchmark the numba kernels against the pure-numpy fallback.

Run:  python benchmarks/bench_backends.py [n]

Both backends are imported directly (regardless of NEGMONO_BACKEND) and timed
on the hot paths: batched negativity triples, batched concurrence triples,
and the radial boundary solve.
"""

import sys
import time

import numpy as np

from negmono import states
from negmono import _kernels_numpy as knp

try:
    from negmono import _kernels_numba as knb
except ImportError:
    knb = None


def timeit(fn, *args, repeat=3):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 100_000
    amps2 = states.haar_amplitude_batch((2, 2, 2), n, 0)
    amps3 = states.haar_amplitude_batch((3, 3, 3), n // 10, 0)
    rng = np.random.default_rng(1)
    x2 = rng.random(n) * 0.4
    y2 = rng.random(n) * 0.4
    z2 = rng.random(n)

    rows = []

    def bench(name, fn_np, fn_nb, args, tol):
        t_np, out_np = timeit(fn_np, *args)
        if knb is None:
            rows.append((name, t_np, None, None))
            return
        fn_nb(*tuple(a[:2] if isinstance(a, np.ndarray) else a for a in args))  # jit warmup
        t_nb, out_nb = timeit(fn_nb, *args)
        diff = np.max(np.abs(np.asarray(out_np) - np.asarray(out_nb)))
        assert diff < tol, f"{name}: backends disagree by {diff}"
        rows.append((name, t_np, t_nb, diff))

    bench(f"triples d=2 (n={n})", knp.batch_triples, knb.batch_triples if knb else None,
          (amps2, 2), 1e-10)
    bench(f"triples d=3 (n={n // 10})", knp.batch_triples, knb.batch_triples if knb else None,
          (amps3, 3), 1e-10)
    bench(f"concurrence (n={n})", knp.batch_concurrence,
          knb.batch_concurrence if knb else None, (amps2,), 1e-10)

    def re_np(x2, y2, z2):
        return knp.radial_excess(x2, y2, z2, 2)[0]

    def re_nb(x2, y2, z2):
        return knb.radial_excess(x2, y2, z2, 2)[0]

    bench(f"radial excess (n={n})", re_np, re_nb if knb else None, (x2, y2, z2), 1e-10)

    print(f"{'kernel':32s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s} {'max diff':>10s}")
    for name, t_np, t_nb, diff in rows:
        if t_nb is None:
            print(f"{name:32s} {t_np:9.3f}s {'n/a':>10s} {'n/a':>8s} {'n/a':>10s}")
        else:
            print(f"{name:32s} {t_np:9.3f}s {t_nb:9.3f}s {t_np / t_nb:7.2f}x {diff:10.2e}")


if __name__ == "__main__":
    main()
