"""Time the numba kernels against their numpy counterparts.

    python3 benchmarks/bench_backends.py [--repeat 3]

Both backends are importable in one process; the env flag only changes the
default, so this script passes ``backend=`` explicitly.
"""

import argparse
import time

import numpy as np

from quadric_census import _jit
from quadric_census.count import brute_count_q, brute_count_w, count_q, fast_count_w
from quadric_census.shear import make_bump, periodized_bump_many
from quadric_census.special.eisenstein import lattice_sum

CASES = [
    ("fast_count_w d=144 T=1e4", lambda b: fast_count_w(144, 1e4, backend=b).total),
    ("count_q d=144 T=1e4", lambda b: count_q(144, 1e4, backend=b).total),
    ("brute_count_w d=144 T=500", lambda b: brute_count_w(144, 500, backend=b).total),
    ("brute_count_q d=16 T=200", lambda b: brute_count_q(16, 200, backend=b).total),
    (
        "Eisenstein lattice sum R=400, 64 x",
        lambda b: float(lattice_sum(np.arange(64) / 64, 1.1, 2.0, 1, True, 400, b).sum()),
    ),
]


def _psi_case(backend):
    spec = make_bump(0.2)
    t = np.linspace(np.log(0.2), 0.2, 2000)
    y = np.exp(t)
    return float(periodized_bump_many(5 * y + 1j * y, spec, 1, backend=backend).sum())


CASES.append(("periodised bump, 2000 points", _psi_case))


def best_time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["numpy"] + (["numba"] if _jit.HAVE_NUMBA else [])
    print(f"{'case':40s} " + " ".join(f"{b:>12s}" for b in backends) + "   speedup  same")
    for name, fn in CASES:
        if "numba" in backends:
            fn("numba")  # compile outside the timing
        times, outs = [], []
        for b in backends:
            t, out = best_time(lambda: fn(b), args.repeat)
            times.append(t)
            outs.append(out)
        speed = times[0] / times[-1] if len(times) > 1 else 1.0
        same = all(abs(o - outs[0]) <= 1e-9 * max(1.0, abs(outs[0])) for o in outs)
        print(f"{name:40s} " + " ".join(f"{t * 1e3:10.2f}ms" for t in times) + f"   {speed:7.1f}x  {same}")


if __name__ == "__main__":
    main()
