"""Time the subset-DP kernel with and without numba.

    python3 benchmarks/bench_kernels.py --nmin 8 --nmax 12 --repeat 5

Values are random, so only the maximization kernel is measured (no EoF work).
Both paths must agree on best values and argmax choices; the script exits
non-zero if they do not.
"""
import argparse
import sys
import time

import numpy as np

from entcost import _kernels
from entcost.multipartite import candidate_arrays


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmin", type=int, default=8)
    ap.add_argument("--nmax", type=int, default=12)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if not _kernels.HAVE_NUMBA:
        print("numba is not installed; only the numpy path is timed")
    rng = np.random.default_rng(args.seed)
    print(f"{'n':>3} {'k':>3} {'terms':>8} {'numpy_s':>10} {'numba_s':>10} {'speedup':>8}")
    ok = True
    for n in range(args.nmin, args.nmax + 1):
        k = n
        heads, masks, offsets = candidate_arrays(n, k)
        values = rng.random(len(heads))
        t_np, ref = best_time(
            lambda: _kernels.subset_dp(values, heads, masks, offsets, n, k, use_jit=False), args.repeat
        )
        if _kernels.HAVE_NUMBA:
            _kernels.subset_dp(values, heads, masks, offsets, n, k, use_jit=True)  # compile
            t_jit, got = best_time(
                lambda: _kernels.subset_dp(values, heads, masks, offsets, n, k, use_jit=True), args.repeat
            )
            same = np.array_equal(ref[1], got[1]) and np.allclose(ref[0], got[0], rtol=0, atol=1e-12)
            ok &= same
            print(f"{n:>3} {k:>3} {len(heads):>8} {t_np:>10.4f} {t_jit:>10.4f} {t_np / t_jit:>8.1f}"
                  + ("" if same else "  MISMATCH"))
        else:
            print(f"{n:>3} {k:>3} {len(heads):>8} {t_np:>10.4f} {'-':>10} {'-':>8}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
