"""Numeric kernels with a numba path and a pure-numpy fallback.

Set ``ENTCOST_JIT=0`` to force the numpy implementations; numba is also
skipped silently when it is not installed.  Both paths return identical
results, including argmax choices.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAVE_NUMBA = False


def jit_enabled() -> bool:
    flag = os.environ.get("ENTCOST_JIT", "1").strip().lower()
    return HAVE_NUMBA and flag not in ("0", "false", "no", "off")


def _popcounts(n: int) -> np.ndarray:
    pc = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        pc += (np.arange(1 << n) >> b) & 1
    return pc


def _subset_dp_numpy(values, heads, masks, offsets, n, k, tie_tol):
    full = 1 << n
    best = np.full(full, -np.inf)
    choice = np.full(full, -1, dtype=np.int64)
    pc = _popcounts(n)
    best[pc == 1] = 0.0
    head_bits = np.left_shift(1, heads)
    for mask in range(full):
        r = pc[mask]
        if r < 2:
            continue
        c = min(k, r)
        lo, hi = offsets[c], offsets[c + 1]
        cm = masks[lo:hi]
        if r == 2:
            low = mask & -mask
            idx = np.flatnonzero((cm == mask) & (head_bits[lo:hi] == low))
        else:
            idx = np.flatnonzero((cm & ~mask) == 0)
        if idx.size == 0:
            continue
        cand = lo + idx
        vals = values[cand] + best[mask ^ head_bits[cand]]
        top = vals.max()
        first = int(np.argmax(vals >= top - tie_tol))
        best[mask] = vals[first]
        choice[mask] = cand[first]
    return best, choice


def _subset_dp_loops(values, heads, masks, offsets, n, k, tie_tol):
    full = 1 << n
    best = np.full(full, -np.inf)
    choice = np.full(full, -1, dtype=np.int64)
    for mask in range(1, full):
        r = 0
        m = mask
        while m:
            m &= m - 1
            r += 1
        if r == 1:
            best[mask] = 0.0
            continue
        c = min(k, r)
        lo = offsets[c]
        hi = offsets[c + 1]
        low = mask & -mask
        top = -np.inf
        for i in range(lo, hi):
            cm = masks[i]
            if cm & ~mask:
                continue
            hb = 1 << heads[i]
            if r == 2 and (cm != mask or hb != low):
                continue
            v = values[i] + best[mask ^ hb]
            if v > top:
                top = v
        if top == -np.inf:
            continue
        for i in range(lo, hi):
            cm = masks[i]
            if cm & ~mask:
                continue
            hb = 1 << heads[i]
            if r == 2 and (cm != mask or hb != low):
                continue
            v = values[i] + best[mask ^ hb]
            if v >= top - tie_tol:
                best[mask] = v
                choice[mask] = i
                break
    return best, choice


_subset_dp_jit = numba.njit(cache=False)(_subset_dp_loops) if HAVE_NUMBA else None


def subset_dp(values, heads, masks, offsets, n, k, tie_tol=1e-12, use_jit=None):
    """Maximize a sequence sum over the remaining-particle subsets.

    ``heads``/``masks``/``values`` list every (head, cluster) candidate,
    grouped by cluster size (``offsets[c]:offsets[c + 1]`` holds size ``c``)
    and sorted lexicographically inside each group.  ``best[mask]`` is the
    maximum sum over sequences on the particles in ``mask``; ``choice[mask]``
    is the candidate index of its first step.  Among candidates within
    ``tie_tol`` of the maximum the first in lexicographic order wins.
    """
    values = np.ascontiguousarray(values, dtype=np.float64)
    heads = np.ascontiguousarray(heads, dtype=np.int64)
    masks = np.ascontiguousarray(masks, dtype=np.int64)
    offsets = np.ascontiguousarray(offsets, dtype=np.int64)
    if use_jit is None:
        use_jit = jit_enabled()
    if use_jit and _subset_dp_jit is not None:
        return _subset_dp_jit(values, heads, masks, offsets, int(n), int(k), float(tie_tol))
    return _subset_dp_numpy(values, heads, masks, offsets, int(n), int(k), float(tie_tol))
