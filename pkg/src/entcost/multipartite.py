"""Degree-resolved multipartite entanglement from bipartite cluster terms.

A sequence for ``n`` particles at degree ``k`` has ``n - 1`` steps.  Step
``j`` picks a head and a cluster of ``min(k, n - j + 1)`` particles that
contains the head and none of the earlier heads; its term is the bipartite
entanglement between the head and the rest of the cluster, with every
particle outside the cluster traced out.  The total entanglement up to
degree ``k`` is the largest sequence sum, and the genuine ``k``-partite
entanglement is the increment from ``k - 1`` to ``k``.

Because a step only removes its head from the pool, the best completion
of a partial sequence depends only on the set of particles still
available.  :func:`e_up_to` therefore maximizes with a dynamic program over
subsets (see :mod:`entcost._kernels`), and :func:`enumerate_sequences`
provides the brute-force enumeration used to cross-check it.
"""
from __future__ import annotations

import itertools
import logging
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterator

import numpy as np

from . import _kernels
from .bipartite import Bipartition, EofResult, RoofBudget, TermCache, eof
from .errors import ArgumentError, ContractError, SizeError
from .qcore import StateObject, as_state

log = logging.getLogger(__name__)

MAX_VECTOR_QUBITS = 12
TIE_TOL = 1e-12


@dataclass(frozen=True, order=True)
class SequenceStep:
    head: int
    cluster: tuple[int, ...]

    def __post_init__(self):
        cluster = tuple(sorted(self.cluster))
        object.__setattr__(self, "cluster", cluster)
        if len(cluster) < 2 or len(set(cluster)) != len(cluster):
            raise ArgumentError(f"cluster {cluster} needs at least two distinct particles")
        if self.head not in cluster:
            raise ArgumentError(f"head {self.head} not in cluster {cluster}")

    @property
    def rest(self) -> tuple[int, ...]:
        return tuple(q for q in self.cluster if q != self.head)

    @property
    def cut(self) -> Bipartition:
        return Bipartition((self.head,), self.rest)

    def __str__(self) -> str:
        return f"{self.head}:{''.join(map(str, self.rest))}" if max(self.cluster) < 10 else (
            f"{self.head}:{','.join(map(str, self.rest))}"
        )


@dataclass(frozen=True)
class Sequence:
    steps: tuple[SequenceStep, ...]
    degree: int

    def check(self, n: int) -> None:
        """Raise if the steps violate the sequence rules for ``n`` particles."""
        if len(self.steps) != n - 1:
            raise ContractError(f"expected {n - 1} steps, got {len(self.steps)}")
        used: set[int] = set()
        for j, step in enumerate(self.steps):
            size = min(self.degree, n - j)
            if len(step.cluster) != size:
                raise ContractError(f"step {j} has cluster size {len(step.cluster)}, expected {size}")
            if set(step.cluster) & used:
                raise ContractError(f"step {j} cluster {step.cluster} reuses an earlier head")
            if max(step.cluster) >= n:
                raise ContractError(f"step {j} cluster {step.cluster} outside register")
            used.add(step.head)

    def to_json(self) -> list:
        return [[s.head, list(s.cluster)] for s in self.steps]

    def __str__(self) -> str:
        return " ".join(f"({s})" for s in self.steps)


@dataclass
class EntanglementVector:
    n: int
    measure: str
    per_degree: dict[int, float]
    cumulative: dict[int, float]
    argmax_sequences: dict[int, Sequence]
    method_summary: dict
    cumulative_bounds: dict[int, tuple[float, float]] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def total(self) -> float:
        return self.cumulative[max(self.cumulative)] if self.cumulative else 0.0

    @property
    def exact(self) -> bool:
        return bool(self.method_summary.get("exact", True))

    def per_degree_bounds(self, k: int) -> tuple[float, float]:
        lo, hi = self.cumulative_bounds.get(k, (self.cumulative[k],) * 2)
        plo, phi = self.cumulative_bounds.get(k - 1, (self.cumulative.get(k - 1, 0.0),) * 2)
        return lo - phi, hi - plo

    def clamped(self, k: int) -> tuple[float, bool]:
        """Per-degree value clamped into its certified interval and at zero."""
        v = self.per_degree[k]
        lo, hi = self.per_degree_bounds(k)
        if v >= 0 or self.exact:
            return v, False
        return min(max(0.0, lo), hi), True

    def as_list(self) -> list[float]:
        return [self.per_degree[k] for k in sorted(self.per_degree)]

    def to_dict(self, digits: int | None = 6) -> dict:
        rnd = (lambda x: round(float(x), digits) + 0.0) if digits is not None else float
        out = {
            "n": self.n,
            "measure": self.measure,
            "per_degree": {str(k): rnd(v) for k, v in sorted(self.per_degree.items())},
            "cumulative": {str(k): rnd(v) for k, v in sorted(self.cumulative.items())},
            "total": rnd(self.total),
            "argmax_sequences": {
                str(k): s.to_json() for k, s in sorted(self.argmax_sequences.items())
            },
            "method_summary": {
                key: (rnd(val) if isinstance(val, float) else val)
                for key, val in self.method_summary.items()
            },
        }
        if self.cumulative_bounds:
            out["cumulative_bounds"] = {
                str(k): [rnd(lo), rnd(hi)] for k, (lo, hi) in sorted(self.cumulative_bounds.items())
            }
        if self.notes:
            out["notes"] = list(self.notes)
        return out


# -- enumeration -------------------------------------------------------------

def _check_degree(n: int, k: int) -> None:
    if not (2 <= k <= n):
        raise ArgumentError(f"degree k={k} outside 2..{n}")


def _steps(pool: tuple[int, ...], k: int) -> list[SequenceStep]:
    """All admissible first steps on ``pool`` in lexicographic order."""
    r = len(pool)
    c = min(k, r)
    if r == 2:
        # last step: the head carries no exclusion consequence, keep one orientation
        return [SequenceStep(pool[0], pool)]
    out = []
    for h in pool:
        others = [q for q in pool if q != h]
        for combo in itertools.combinations(others, c - 1):
            out.append(SequenceStep(h, combo + (h,)))
    out.sort()
    return out


def enumerate_sequences(n: int, k: int) -> Iterator[Sequence]:
    """Yield every admissible sequence exactly once, lexicographically."""
    _check_degree(n, k)

    def rec(pool):
        if len(pool) == 1:
            yield ()
            return
        for step in _steps(pool, k):
            rest = tuple(q for q in pool if q != step.head)
            for tail in rec(rest):
                yield (step,) + tail

    for steps in rec(tuple(range(n))):
        yield Sequence(steps, k)


def count_sequences(n: int, k: int) -> int:
    _check_degree(n, k)
    total = 1
    for r in range(n, 2, -1):
        c = min(k, r)
        total *= r * comb(r - 1, c - 1)
    return total


# -- term table --------------------------------------------------------------

def _threads() -> int:
    raw = os.environ.get("ENTCOST_THREADS", "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            log.warning("ignoring non-integer ENTCOST_THREADS=%r", raw)
    return 1


@dataclass
class TermTable:
    """Every (head, cluster) term of cluster size 2..k_max, grouped by size."""

    n: int
    k_max: int
    heads: np.ndarray
    masks: np.ndarray
    offsets: np.ndarray
    results: list[EofResult]

    @property
    def values(self) -> np.ndarray:
        return np.array([r.value for r in self.results], dtype=float)

    @property
    def lower(self) -> np.ndarray:
        return np.array([r.lower_bound for r in self.results], dtype=float)

    @property
    def upper(self) -> np.ndarray:
        return np.array([r.upper_bound for r in self.results], dtype=float)

    def index(self) -> dict[tuple[int, int], int]:
        return {(int(h), int(m)): i for i, (h, m) in enumerate(zip(self.heads, self.masks))}

    def step(self, i: int) -> SequenceStep:
        m = int(self.masks[i])
        return SequenceStep(int(self.heads[i]), tuple(q for q in range(self.n) if m >> q & 1))

    def summary(self) -> dict:
        methods = Counter(r.method for r in self.results)
        worst = max((r.gap for r in self.results), default=0.0)
        return {
            "exact": all(r.is_exact for r in self.results),
            "methods": dict(sorted(methods.items())),
            "terms": len(self.results),
            "unconverged": sum(not r.converged for r in self.results),
            "worst_gap": float(worst),
        }


def _mask(qubits) -> int:
    m = 0
    for q in qubits:
        m |= 1 << q
    return m


def candidate_arrays(n: int, k_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(head, cluster mask) candidates of sizes 2..k_max in the layout the DP expects."""
    heads, masks = [], []
    offsets = np.zeros(k_max + 2, dtype=np.int64)
    for c in range(2, k_max + 1):
        offsets[c] = len(heads)
        for h in range(n):
            others = [q for q in range(n) if q != h]
            cands = sorted(
                tuple(sorted(combo + (h,))) for combo in itertools.combinations(others, c - 1)
            )
            for cluster in cands:
                heads.append(h)
                masks.append(_mask(cluster))
    offsets[k_max + 1] = len(heads)
    return np.array(heads, dtype=np.int64), np.array(masks, dtype=np.int64), offsets


def build_term_table(
    state: StateObject,
    k_max: int,
    budget: RoofBudget | None = None,
    cache: TermCache | None = None,
    threads: int | None = None,
) -> TermTable:
    state = as_state(state)
    n = state.n
    _check_degree(n, k_max)
    if n > MAX_VECTOR_QUBITS:
        raise SizeError(f"maximization over {n} particles exceeds the cap of {MAX_VECTOR_QUBITS}")
    cache = cache if cache is not None else TermCache()
    heads_arr, masks_arr, offsets = candidate_arrays(n, k_max)
    heads, masks = heads_arr.tolist(), masks_arr.tolist()

    def term(i):
        h = heads[i]
        rest = [q for q in range(n) if masks[i] >> q & 1 and q != h]
        return eof(state, Bipartition((h,), rest), budget=budget, cache=cache)

    workers = threads or _threads()
    if workers > 1 and len(heads) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(term, range(len(heads))))
    else:
        results = [term(i) for i in range(len(heads))]
    return TermTable(n, k_max, heads_arr, masks_arr, offsets, results)


# -- maximization ------------------------------------------------------------

@dataclass(frozen=True)
class Maximum:
    value: float
    lower: float
    upper: float
    sequence: Sequence


def _dp(table: TermTable, values: np.ndarray, k: int):
    return _kernels.subset_dp(
        values, table.heads, table.masks, table.offsets[: k + 2].copy(), table.n, k, TIE_TOL
    )


def maximize(table: TermTable, k: int) -> Maximum:
    """Largest sequence sum at degree ``k`` via the subset dynamic program."""
    n = table.n
    _check_degree(n, k)
    if k > table.k_max:
        raise ArgumentError(f"term table only covers degrees up to {table.k_max}")
    full = (1 << n) - 1
    best, choice = _dp(table, table.values, k)
    lo, _ = _dp(table, table.lower, k)
    hi, _ = _dp(table, table.upper, k)
    steps = []
    mask = full
    while mask & (mask - 1):
        i = int(choice[mask])
        steps.append(table.step(i))
        mask ^= 1 << int(table.heads[i])
    return Maximum(float(best[full]), float(lo[full]), float(hi[full]), Sequence(tuple(steps), k))


def maximize_exhaustive(table: TermTable, k: int) -> Maximum:
    """Brute-force maximum over :func:`enumerate_sequences` (for verification)."""
    idx = table.index()
    vals, lows, highs = table.values, table.lower, table.upper
    seqs, totals = [], []
    lo_best = hi_best = -np.inf
    for seq in enumerate_sequences(table.n, k):
        ids = [idx[(s.head, _mask(s.cluster))] for s in seq.steps]
        seqs.append(seq)
        totals.append(float(sum(vals[i] for i in ids)))
        lo_best = max(lo_best, float(sum(lows[i] for i in ids)))
        hi_best = max(hi_best, float(sum(highs[i] for i in ids)))
    totals = np.array(totals)
    first = int(np.argmax(totals >= totals.max() - TIE_TOL))
    return Maximum(float(totals[first]), lo_best, hi_best, seqs[first])


def sequence_value(state, seq: Sequence, budget: RoofBudget | None = None, cache: TermCache | None = None) -> float:
    state = as_state(state)
    seq.check(state.n)
    return float(sum(eof(state, s.cut, budget=budget, cache=cache).value for s in seq.steps))


def e_up_to(
    state,
    k: int,
    budget: RoofBudget | None = None,
    cache: TermCache | None = None,
    exhaustive: bool = False,
) -> tuple[float, Sequence]:
    """Total entanglement up to degree ``k`` and a maximizing sequence."""
    state = as_state(state)
    _check_degree(state.n, k)
    table = build_term_table(state, k, budget=budget, cache=cache)
    best = maximize_exhaustive(table, k) if exhaustive else maximize(table, k)
    return best.value, best.sequence


def e_k(state, k: int, budget: RoofBudget | None = None, cache: TermCache | None = None) -> float:
    """Genuine ``k``-partite entanglement, ``E^{2<->k} - E^{2<->k-1}``."""
    state = as_state(state)
    _check_degree(state.n, k)
    vec = entanglement_vector(state, k_max=k, budget=budget, cache=cache)
    value, clamped = vec.clamped(k)
    if clamped:
        log.warning("E^%d clamped from %.3g into its certified interval", k, vec.per_degree[k])
    return value


def entanglement_vector(
    state,
    k_max: int | None = None,
    budget: RoofBudget | None = None,
    cache: TermCache | None = None,
    threads: int | None = None,
) -> EntanglementVector:
    state = as_state(state)
    n = state.n
    if n < 2:
        raise ArgumentError("entanglement vector needs at least two particles")
    k_max = n if k_max is None else int(k_max)
    _check_degree(n, k_max)
    table = build_term_table(state, k_max, budget=budget, cache=cache, threads=threads)
    per, cum, seqs, bounds = {}, {}, {}, {}
    prev = 0.0
    for k in range(2, k_max + 1):
        best = maximize(table, k)
        cum[k] = best.value
        per[k] = best.value - prev
        prev = best.value
        seqs[k] = best.sequence
        bounds[k] = (best.lower, best.upper)
    summary = table.summary()
    if summary["exact"]:
        bounds = {}
    return EntanglementVector(n, "EoF", per, cum, seqs, summary, bounds)


# -- closed forms ------------------------------------------------------------

def _h(x: np.ndarray) -> np.ndarray:
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    out = np.zeros_like(x)
    inner = (x > 0) & (x < 1)
    xi = x[inner]
    out[inner] = -xi * np.log2(xi) - (1 - xi) * np.log2(1 - xi)
    return out


def w_g_values(n: int) -> np.ndarray:
    """``g(j, n)`` for ``j = 0..n`` with ``g(0, n) = g(1, n) = 0``."""
    j = np.arange(n + 1, dtype=float)
    vals = _h((1 + np.sqrt(np.clip(1 - 4 * (j - 1) / n**2, 0.0, 1.0))) / 2)
    vals[:2] = 0.0
    return vals


def symmetric_e_k(term: Callable[[int], float], n: int, k: int) -> float:
    """Compact form for exchange-symmetric states.

    ``term(j)`` must return the head-versus-rest entanglement inside a
    cluster of ``j`` particles (``term(1)`` is a lone particle, normally 0);
    the caller vouches for the symmetry.
    """
    _check_degree(n, k)
    return (n - k + 1) * (term(k) - term(k - 1))


def w_closed_form_vector(n: int) -> EntanglementVector:
    """Entanglement vector of ``W_n`` from scalar formulas only."""
    if n < 2:
        raise ArgumentError("W vector needs n >= 2")
    gv = w_g_values(n)
    ks = np.arange(2, n + 1)
    per = (n - ks + 1) * (gv[ks] - gv[ks - 1])
    prefix = np.concatenate([[0.0], np.cumsum(gv)])  # prefix[j] = sum_{m < j} g(m)
    cum = (n - ks + 1) * gv[ks] + (prefix[ks] - prefix[2])
    return EntanglementVector(
        n,
        "EoF",
        {int(k): float(v) for k, v in zip(ks, per)},
        {int(k): float(v) for k, v in zip(ks, cum)},
        {},
        {"exact": True, "methods": {"closed-form": 1}, "terms": 0, "unconverged": 0, "worst_gap": 0.0},
    )


def w_total(n: int) -> float:
    """Total entanglement of ``W_n``: the sum of ``g(j, n)`` over ``j = 2..n``."""
    return float(w_g_values(n)[2:].sum())


# -- pure-state factorization --------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    factors: tuple[tuple[int, ...], ...]

    @property
    def separability(self) -> int:
        """Number of tensor factors (the state is this-many-separable)."""
        return len(self.factors)

    @property
    def producibility(self) -> int:
        """Size of the largest factor."""
        return max(len(f) for f in self.factors)


def factorize_pure(psi) -> Factorization:
    psi = as_state(psi)
    if not psi.is_pure:
        raise ContractError("factorize_pure needs a pure state")
    return Factorization(tuple(psi.factors()))
