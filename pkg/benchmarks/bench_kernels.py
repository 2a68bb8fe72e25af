"""Compare the numba and pure-numpy kernels.

Kernel timings call both backends in one process.  The end-to-end timings run
a small workload in a subprocess per backend, timing startup and
computation separately, switched by GRQUIVER_NO_NUMBA.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from grquiver import _kernels

WORKLOAD = """
import time
t0 = time.perf_counter()
import numpy as np
from grquiver import _kernels, registry
from grquiver.explorer import enumerate_indecomposables
from grquiver.grmeasure import gr_measure
from grquiver.repcore.covering import zigzag_module
_kernels.rref_inplace(np.eye(2, dtype=np.int64), 2)
_kernels.combinations(np.eye(2, dtype=np.int64), 2)
t1 = time.perf_counter()
gr_measure(zigzag_module(2, registry.algebra("doubled-chain")))
enumerate_indecomposables(registry.algebra("k2"), 7)
print(t1 - t0, time.perf_counter() - t1)
"""


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def kernel_rows(repeat):
    rng = np.random.default_rng(0)
    rows = []
    for p, shape in ((2, (40, 40)), (2, (200, 220)), (3, (120, 150)), (2, (600, 640))):
        a = rng.integers(0, p, size=shape, dtype=np.int64)
        ref = a.copy()
        piv_np = _kernels.rref_numpy(ref, p)
        t_np = best_of(lambda: _kernels.rref_numpy(a.copy(), p), repeat)
        row = {"kernel": f"rref p={p} {shape[0]}x{shape[1]}", "numpy": t_np}
        if _kernels.HAVE_NUMBA:
            out = a.copy()
            piv_nb = _kernels.rref_numba(out, p)
            assert np.array_equal(out, ref) and np.array_equal(piv_nb, piv_np)
            row["numba"] = best_of(lambda: _kernels.rref_numba(a.copy(), p), repeat)
        rows.append(row)
    for p, d, n in ((2, 12, 30), (3, 8, 20)):
        b = rng.integers(0, p, size=(d, n), dtype=np.int64)
        row = {"kernel": f"combinations p={p} d={d} n={n}",
               "numpy": best_of(lambda: _kernels.combinations_numpy(b, p), repeat)}
        if _kernels.HAVE_NUMBA:
            assert np.array_equal(_kernels.combinations_numba(b, p),
                                  _kernels.combinations_numpy(b, p))
            row["numba"] = best_of(lambda: _kernels.combinations_numba(b, p), repeat)
        rows.append(row)
    return rows


def end_to_end(no_numba):
    env = dict(os.environ)
    if no_numba:
        env["GRQUIVER_NO_NUMBA"] = "1"
    else:
        env.pop("GRQUIVER_NO_NUMBA", None)
    out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, check=True,
                         capture_output=True, text=True)
    startup, work = out.stdout.strip().splitlines()[-1].split()
    return float(startup), float(work)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args(argv)
    print(f"{'kernel':34s} {'numpy s':>10s} {'numba s':>10s} {'speedup':>8s}")
    for row in kernel_rows(args.repeat):
        nb = row.get("numba")
        speed = f"{row['numpy'] / nb:8.1f}" if nb else "       -"
        nbs = f"{nb:10.5f}" if nb else "         -"
        print(f"{row['kernel']:34s} {row['numpy']:10.5f} {nbs} {speed}")
    if not args.skip_end_to_end:
        end_to_end(False)  # warm the numba on-disk cache
        (s_nb, w_nb), (s_np, w_np) = end_to_end(False), end_to_end(True)
        print(f"{'startup (imports, kernel load)':34s} {s_np:10.3f} {s_nb:10.3f} {s_np / s_nb:8.1f}")
        print(f"{'workload (measure, enumeration)':34s} {w_np:10.3f} {w_nb:10.3f} {w_np / w_nb:8.1f}")


if __name__ == "__main__":
    main()
