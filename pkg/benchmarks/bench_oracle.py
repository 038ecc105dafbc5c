"""Benchmark the oracle pair-scan kernel: compiled extension vs pure numpy.

Usage:
    python benchmarks/bench_oracle.py [--steps 200 300] [--repeats 3]

Both backends scan every 2-row, 3-column kernel on the shared resolution
grid, so the work grows like steps^5.  The two implementations must agree
to full precision; the script asserts that before reporting timings.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qctradeoff import _scan_py, ensembles, qcore
from qctradeoff._backend import BACKEND
from qctradeoff.oracle import _pair_tables

try:
    from qctradeoff import _scan_cy
except ImportError:
    _scan_cy = None


def bench_backend(fn, G, Hc, Hp, thresholds, repeats):
    times = []
    value = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        value = fn(G, Hc, Hp, thresholds, False)
        times.append(time.perf_counter() - t0)
    return np.asarray(value, dtype=float), min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, nargs="+", default=[100, 200, 300])
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    E = ensembles.pair_ensemble()
    Hp = qcore.shannon_entropy(E.probs)
    thresholds = np.array([0.2, 0.5, 0.8]) + 0.0

    print(f"active backend at import: {BACKEND}")
    header = f"{'steps':>6} {'python (s)':>12} {'cython (s)':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for steps in args.steps:
        G, Hc = _pair_tables(E, steps)
        thr = thresholds + 1.0 / steps
        v_py, t_py = bench_backend(_scan_py.scan_pair_tables,
                                   G, Hc, Hp, thr, args.repeats)
        if _scan_cy is not None:
            v_cy, t_cy = bench_backend(_scan_cy.scan_pair_tables,
                                       G, Hc, Hp, thr, args.repeats)
            assert np.allclose(v_py, v_cy, atol=1e-12), "backend mismatch"
            print(f"{steps:>6} {t_py:>12.4f} {t_cy:>12.4f} {t_py / t_cy:>8.1f}x")
        else:
            print(f"{steps:>6} {t_py:>12.4f} {'n/a':>12} {'n/a':>9}")


if __name__ == "__main__":
    main()
