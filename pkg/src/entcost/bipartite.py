"""Bipartite entanglement of formation with exact fast paths.

Dispatch order in :func:`eof`: pure-state entropy, Wootters concurrence
(directly or after local-support compression to two qubits), a PPT zero
certificate in dimensions where PPT implies separability, and finally a
numerical convex-roof minimization, which only ever yields an upper bound.
"""
from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ArgumentError, ContractError
from .qcore import (
    StateObject,
    as_state,
    binary_entropy,
    eig_hermitian,
    entropy_of_spectrum,
    random_unitary,
    reduced_matrix,
    schmidt_probabilities,
)

SUPPORT_TOL = 1e-10
PPT_TOL = 1e-10
PRODUCT_TOL = 1e-10
ROOF_ZERO = 1e-13
PRODUCT_SEARCH = ((0, 8), (1, 4), (None, 2))  # (extra terms, starts); None doubles the rank

PURE_ENTROPY = "pure-entropy"
WOOTTERS = "wootters-2x2"
COMPRESSED_WOOTTERS = "compressed-wootters"
PPT_ZERO = "ppt-zero"
CONVEX_ROOF = "convex-roof-upper"
EXACT_METHODS = frozenset({PURE_ENTROPY, WOOTTERS, COMPRESSED_WOOTTERS, PPT_ZERO})

_YY = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex)


@dataclass(frozen=True)
class Bipartition:
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    def __init__(self, side_a: Iterable[int], side_b: Iterable[int]):
        a = tuple(sorted(int(q) for q in side_a))
        b = tuple(sorted(int(q) for q in side_b))
        if not a or not b:
            raise ArgumentError("both sides of a bipartition must be nonempty")
        if len(set(a)) != len(a) or len(set(b)) != len(b) or set(a) & set(b):
            raise ArgumentError(f"sides {a} and {b} must be disjoint sets")
        object.__setattr__(self, "side_a", a)
        object.__setattr__(self, "side_b", b)

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(sorted(self.side_a + self.side_b))

    def key(self) -> tuple:
        """Orientation-free key, since the measure is symmetric in the sides."""
        return tuple(sorted((self.side_a, self.side_b)))

    def check(self, n: int) -> None:
        if max(self.qubits) >= n or min(self.qubits) < 0:
            raise ArgumentError(f"bipartition {self} outside register of {n} qubits")


@dataclass(frozen=True)
class EofResult:
    value: float
    method: str
    lower_bound: float
    upper_bound: float
    converged: bool = True

    def __post_init__(self):
        if not (self.lower_bound <= self.value <= self.upper_bound):
            raise ContractError(f"inconsistent bounds in {self}")
        if self.method not in EXACT_METHODS and self.method != CONVEX_ROOF:
            raise ContractError(f"unknown method tag {self.method!r}")
        if self.method in EXACT_METHODS and self.lower_bound != self.upper_bound:
            raise ContractError(f"exact method {self.method} with a nonzero bound gap")

    @classmethod
    def exact(cls, value: float, method: str) -> "EofResult":
        value = float(max(value, 0.0))
        return cls(value, method, value, value)

    @property
    def is_exact(self) -> bool:
        return self.method in EXACT_METHODS

    @property
    def gap(self) -> float:
        return self.upper_bound - self.lower_bound


@dataclass(frozen=True)
class CompressionMap:
    """Local isometries onto the marginal supports (columns orthonormal)."""

    iso_a: np.ndarray
    iso_b: np.ndarray

    @property
    def dims(self) -> tuple[int, int]:
        return self.iso_a.shape[1], self.iso_b.shape[1]

    def expand(self, small: np.ndarray) -> np.ndarray:
        v = np.kron(self.iso_a, self.iso_b)
        return v @ small @ v.conj().T


@dataclass(frozen=True)
class RoofBudget:
    restarts: int = 16
    max_iter: int = 2000
    seed: int = 0
    gtol: float = 1e-10
    ftol: float = 1e-15


class TermCache:
    """Thread-safe memo of EoF terms keyed by (state fingerprint, cut).

    Values are deterministic, so concurrent writers racing on one key are
    harmless; the last write wins.
    """

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key):
        with self._lock:
            if key in self._data:
                self.hits += 1
                return self._data[key]
            self.misses += 1
            return None

    def put(self, key, value) -> None:
        with self._lock:
            self._data[key] = value

    def __len__(self):
        return len(self._data)


# -- closed forms ------------------------------------------------------------

def eof_from_concurrence(c: float) -> float:
    c = min(max(float(c), 0.0), 1.0)
    return binary_entropy((1 + np.sqrt(1 - c * c)) / 2)


def w_cluster_eof(m: int, k: int, n: int) -> float:
    """EoF of ``W_n`` reduced to ``k`` qubits, across ``m : k - m``."""
    if not (1 <= m < k <= n):
        raise ArgumentError(f"need 1 <= m < k <= n, got m={m}, k={k}, n={n}")
    return binary_entropy((1 + np.sqrt(1 - 4 * m * (k - m) / n**2)) / 2)


def g(k: int, n: int) -> float:
    """Head-versus-rest EoF inside a ``k``-qubit cluster of ``W_n``."""
    if not (2 <= k <= n):
        raise ArgumentError(f"need 2 <= k <= n, got k={k}, n={n}")
    return w_cluster_eof(1, k, n)


# -- pure and two-qubit paths ------------------------------------------------

def entropy_of_entanglement(psi: StateObject, cut: Bipartition) -> float:
    if not psi.is_pure:
        raise ContractError("entropy_of_entanglement needs a pure state")
    cut.check(psi.n)
    if len(cut.qubits) != psi.n:
        raise ArgumentError("cut must cover the whole register of a pure state")
    return entropy_of_spectrum(schmidt_probabilities(psi.vector, psi.n, cut.side_a))


def _two_qubit_matrix(rho) -> np.ndarray:
    if isinstance(rho, StateObject):
        if rho.n != 2:
            raise ArgumentError(f"need a two-qubit state, got {rho.n} qubits")
        return rho.density()
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ArgumentError(f"need a 4x4 density matrix, got shape {rho.shape}")
    return rho


def concurrence_2x2(rho) -> float:
    """Wootters concurrence of a two-qubit state.

    The square roots of the spectrum of ``rho (Y x Y) rho* (Y x Y)`` are
    taken as singular values of ``X^T (Y x Y) X`` with ``rho = X X^dag``,
    which avoids square roots of eigenvalues that are zero up to rounding.
    """
    rho = _two_qubit_matrix(rho)
    lam, vec = eig_hermitian(rho)
    keep = lam > 1e-14
    x = vec[:, keep] * np.sqrt(lam[keep])
    s = np.linalg.svd(x.T @ _YY @ x, compute_uv=False)
    s = np.concatenate([s, np.zeros(4)])[:4]
    return float(min(max(s[0] - s[1] - s[2] - s[3], 0.0), 1.0))


def eof_2x2(rho) -> EofResult:
    return EofResult.exact(eof_from_concurrence(concurrence_2x2(rho)), WOOTTERS)


# -- compression -------------------------------------------------------------

def _support(m: np.ndarray) -> np.ndarray:
    lam, vec = eig_hermitian(m)
    return vec[:, lam > SUPPORT_TOL]


def _marginals(rho: np.ndarray, da: int, db: int) -> tuple[np.ndarray, np.ndarray]:
    t = rho.reshape(da, db, da, db)
    return np.einsum("ijkj->ik", t), np.einsum("ijil->jl", t)


def local_support(rho, side: Iterable[int]) -> np.ndarray:
    """Orthonormal basis (as columns) of the support of the ``side`` marginal."""
    rho = as_state(rho)
    return _support(reduced_matrix(rho, list(side)))


def _compress(rho: np.ndarray, da: int, db: int) -> tuple[np.ndarray, CompressionMap]:
    ra, rb = _marginals(rho, da, db)
    cmap = CompressionMap(_support(ra), _support(rb))
    v = np.kron(cmap.iso_a, cmap.iso_b)
    small = v.conj().T @ rho @ v
    return 0.5 * (small + small.conj().T), cmap


def compress(rho, cut: Bipartition) -> tuple[np.ndarray, CompressionMap]:
    """Conjugate the cut's reduced state onto the local marginal supports.

    Returns the small density matrix on ``d_A' x d_B'`` (row/column order
    ``A`` then ``B``) and the isometries; ``cmap.expand(small)`` rebuilds the
    reduced state with qubits ordered ``side_a + side_b``.
    """
    rho = as_state(rho)
    cut.check(rho.n)
    full = reduced_matrix(rho, cut.side_a + cut.side_b)
    return _compress(full, 2 ** len(cut.side_a), 2 ** len(cut.side_b))


def _partial_transpose_b(rho: np.ndarray, da: int, db: int) -> np.ndarray:
    return rho.reshape(da, db, da, db).transpose(0, 3, 2, 1).reshape(da * db, da * db)


def _is_ppt(rho: np.ndarray, da: int, db: int) -> bool:
    pt = _partial_transpose_b(rho, da, db)
    return bool(np.linalg.eigvalsh(0.5 * (pt + pt.conj().T))[0] >= -PPT_TOL)


def ppt_is_separable_indicator(rho, cut: Bipartition) -> bool:
    """True when the partial transpose over ``side_b`` is positive.

    This certifies zero entanglement only when the compressed local
    dimensions are at most 2x3; elsewhere it is merely necessary.
    """
    rho = as_state(rho)
    cut.check(rho.n)
    full = reduced_matrix(rho, cut.side_a + cut.side_b)
    return _is_ppt(full, 2 ** len(cut.side_a), 2 ** len(cut.side_b))


# -- convex roof -------------------------------------------------------------

class _RoofObjective:
    """Average marginal entropy of the decomposition generated by an isometry.

    For ``rho = X X^dag`` (``X`` of shape ``D x r``) every pure-state
    decomposition into ``K >= r`` terms is ``phi_j = sum_i U[j, i] x_i`` for
    some ``K x r`` isometry ``U``; the weights are ``|phi_j|^2``.
    """

    def __init__(self, x: np.ndarray, da: int, db: int):
        self.da, self.db = da, db
        self.xhat = x.T.reshape(x.shape[1], da, db)
        self.xhat_conj = self.xhat.conj()

    def __call__(self, u: np.ndarray, grad: bool = True):
        phi = np.einsum("ki,iab->kab", u, self.xhat)
        m = phi @ phi.conj().transpose(0, 2, 1)
        mu, q = np.linalg.eigh(m)
        mu = np.clip(mu, 0.0, None)
        p = mu.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            mlogm = np.where(mu > 0, mu * np.log2(np.where(mu > 0, mu, 1.0)), 0.0)
            plogp = np.where(p > 0, p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
        f = float(np.sum(plogp) - np.sum(mlogm))
        if not grad:
            return f
        logmu = np.log2(np.maximum(mu, 1e-300))
        logp = np.log2(np.maximum(p, 1e-300))
        gdiag = -logmu + logp[:, None]
        gmat = (q * gdiag[:, None, :]) @ q.conj().transpose(0, 2, 1)
        wmat = gmat @ phi
        egrad = 2.0 * np.einsum("kab,iab->ki", wmat, self.xhat_conj)
        return f, egrad


class _MinorResidual:
    """All 2x2 minors of every decomposition term, viewed as a ``da x db`` matrix.

    A pure term is a product state exactly when its minors vanish, so a
    zero of this residual is a separable decomposition.  Levenberg-Marquardt
    on the Stiefel manifold finds such zeros with quadratic convergence.
    """

    def __init__(self, x: np.ndarray, da: int, db: int):
        self.xhat = x.T.reshape(x.shape[1], da, db)
        rows = list(itertools.combinations(range(da), 2))
        cols = list(itertools.combinations(range(db), 2))
        idx = np.array([(a1, a2, b1, b2) for a1, a2 in rows for b1, b2 in cols])
        self.a1, self.a2, self.b1, self.b2 = idx.T

    def residual(self, u: np.ndarray) -> np.ndarray:
        phi = np.einsum("ki,iab->kab", u, self.xhat)
        a1, a2, b1, b2 = self.a1, self.a2, self.b1, self.b2
        return phi[:, a1, b1] * phi[:, a2, b2] - phi[:, a1, b2] * phi[:, a2, b1]

    def jacobian(self, u: np.ndarray) -> np.ndarray:
        """Holomorphic derivative of each residual wrt ``U[k, i]``, shape ``(K, P, r)``."""
        phi = np.einsum("ki,iab->kab", u, self.xhat)
        x = self.xhat
        a1, a2, b1, b2 = self.a1, self.a2, self.b1, self.b2
        jac = (
            x[:, a1, b1][None] * phi[:, a2, b2][:, None]
            + phi[:, a1, b1][:, None] * x[:, a2, b2][None]
            - x[:, a1, b2][None] * phi[:, a2, b1][:, None]
            - phi[:, a1, b2][:, None] * x[:, a2, b1][None]
        )
        return jac.transpose(0, 2, 1)


def _skew_basis(r: int) -> np.ndarray:
    """Real basis of the ``r x r`` skew-Hermitian matrices, shape ``(r*r, r, r)``."""
    out = []
    for p in range(r):
        for q in range(p + 1, r):
            e = np.zeros((r, r), dtype=complex)
            e[p, q], e[q, p] = 1.0, -1.0
            out.append(e)
            e = np.zeros((r, r), dtype=complex)
            e[p, q], e[q, p] = 1j, 1j
            out.append(e)
        e = np.zeros((r, r), dtype=complex)
        e[p, p] = 1j
        out.append(e)
    return np.array(out)


def _find_product_decomposition(res: _MinorResidual, u: np.ndarray, max_iter: int = 200,
                                tol: float = 1e-28) -> tuple[float, np.ndarray]:
    """Levenberg-Marquardt on ``sum |minors|^2`` over ``K x r`` isometries.

    Tangent directions are ``U A + U_perp B`` with ``A`` skew-Hermitian and
    ``B`` arbitrary; the real Jacobian is built in that basis.
    """
    k, r = u.shape
    basis = _skew_basis(r)
    r_vec = res.residual(u)
    cost = float(np.sum(np.abs(r_vec) ** 2))
    damping = 1e-3
    for _ in range(max_iter):
        if cost < tol:
            break
        jac = res.jacobian(u)
        q, _ = np.linalg.qr(u, mode="complete")
        uperp = q[:, r:]
        jb = np.einsum("jp,jPq->jPpq", uperp, jac).reshape(k * jac.shape[1], -1)
        ja = np.einsum("jp,jPq->jPpq", u, jac).reshape(k * jac.shape[1], r * r)
        ja = ja @ basis.reshape(len(basis), r * r).T
        jr = np.block([[jb.real, -jb.imag, ja.real], [jb.imag, jb.real, ja.imag]])
        rr = np.concatenate([r_vec.ravel().real, r_vec.ravel().imag])
        jtj = jr.T @ jr
        g = jr.T @ rr
        diag = np.diag(np.diag(jtj) + 1e-12)
        nb = uperp.shape[1] * r
        while True:
            delta = np.linalg.solve(jtj + damping * diag, -g)
            b = (delta[:nb] + 1j * delta[nb:2 * nb]).reshape(uperp.shape[1], r)
            a = np.tensordot(delta[2 * nb:], basis, axes=1)
            u_new = _polar(u + u @ a + uperp @ b)
            r_new = res.residual(u_new)
            c_new = float(np.sum(np.abs(r_new) ** 2))
            if c_new < cost:
                damping = max(damping / 3.0, 1e-12)
                break
            damping *= 4.0
            if damping > 1e8:
                return cost, u
        u, r_vec, cost = u_new, r_new, c_new
    return cost, u


def _polar(y: np.ndarray) -> np.ndarray:
    a, _, bh = np.linalg.svd(y, full_matrices=False)
    return a @ bh


def _tangent(u: np.ndarray, z: np.ndarray) -> np.ndarray:
    sym = u.conj().T @ z
    return z - u @ (0.5 * (sym + sym.conj().T))


def _descend(obj, u: np.ndarray, budget: RoofBudget, zero: float = ROOF_ZERO) -> tuple[float, np.ndarray, bool]:
    """Riemannian conjugate gradient (PR+) on the Stiefel manifold with Armijo steps."""
    f, eg = obj(u)
    g = _tangent(u, eg)
    gg = float(np.vdot(g, g).real)
    d = -g
    step = 1.0
    stall = 0
    for _ in range(budget.max_iter):
        if gg < budget.gtol**2 or f <= zero:
            return f, u, True
        slope = float(np.vdot(g, d).real)
        if slope >= 0:
            d, slope = -g, -gg
        t = step
        while True:
            u_new = _polar(u + t * d)
            f_new = obj(u_new, grad=False)
            if f_new <= f + 1e-4 * t * slope or t < 1e-14:
                break
            t *= 0.5
        if t < 1e-14:
            return f, u, True
        improvement = f - f_new
        u = u_new
        f, eg = obj(u)
        g_new = _tangent(u, eg)
        gg_new = float(np.vdot(g_new, g_new).real)
        beta = max(0.0, float(np.vdot(g_new, g_new - _tangent(u, g)).real) / gg)
        d = -g_new + beta * _tangent(u, d)
        g, gg = g_new, gg_new
        step = min(t * 2.0, 1e3)
        stall = stall + 1 if improvement <= budget.ftol * (1 + abs(f)) else 0
        if stall >= 20:
            return f, u, True
    return f, u, False


def _roof_upper(rho: np.ndarray, da: int, db: int, budget: RoofBudget, seed_key=()) -> EofResult:
    lam, vec = eig_hermitian(rho)
    keep = lam > 1e-12
    x = vec[:, keep] * np.sqrt(lam[keep])
    r = x.shape[1]
    if r == 1:
        psi = vec[:, 0].reshape(da, db)
        s = np.linalg.svd(psi, compute_uv=False) ** 2
        return EofResult.exact(entropy_of_spectrum(s), PURE_ENTROPY)
    obj = _RoofObjective(x, da, db)
    rng = np.random.default_rng(np.random.SeedSequence([int(budget.seed), *map(int, seed_key)]))
    # separable inputs: the entropy landscape approaches its zero only
    # sublinearly, so look for an exact product decomposition first
    minors = _MinorResidual(x, da, db)
    for extra, starts in PRODUCT_SEARCH:
        k = 2 * r if extra is None else r + extra
        for _ in range(starts):
            _, u = _find_product_decomposition(minors, random_unitary(k, rng)[:, :r], max_iter=200)
            f = obj(u, grad=False)
            if f <= ROOF_ZERO:
                return EofResult(max(f, 0.0), CONVEX_ROOF, 0.0, max(f, 0.0), True)
    k = r * r
    best = np.inf
    converged = False
    for restart in range(max(budget.restarts, 1)):
        if restart == 0:
            u0 = np.eye(k, r, dtype=complex)
        else:
            u0 = random_unitary(k, rng)[:, :r]
        f, _, ok = _descend(obj, u0, budget)
        if f < best:
            best, converged = f, ok
        if best <= ROOF_ZERO:
            # entropies are nonnegative, so nothing can beat this
            break
    best = max(best, 0.0)
    return EofResult(best, CONVEX_ROOF, 0.0, best, converged)


def convex_roof_upper(rho, cut: Bipartition, budget: RoofBudget | None = None) -> EofResult:
    """Upper bound on EoF by minimizing over pure-state decompositions.

    Decompositions are parametrized by isometries acting on the
    eigen-ensemble.  A short seeded search for an all-product decomposition
    runs first and settles separable inputs to rounding level.  Otherwise
    the best of ``budget.restarts`` conjugate-gradient descents over
    ``rank**2``-term decompositions is returned (the first start is the
    eigen-ensemble itself).  The lower bound is 0, since no tightness is
    claimed.
    """
    budget = budget or RoofBudget()
    rho = as_state(rho)
    cut.check(rho.n)
    full = reduced_matrix(rho, cut.side_a + cut.side_b)
    return _roof_upper(full, 2 ** len(cut.side_a), 2 ** len(cut.side_b), budget, cut.side_a + cut.side_b)


# -- dispatcher --------------------------------------------------------------

def _product_subset(rho: np.ndarray, labels: list[int], side: list[int]) -> list[int] | None:
    """Smallest nonempty subset ``Y`` of ``side`` with ``rho = rho_rest (x) rho_Y``."""
    psi_like = StateObject.mixed(rho)
    pos = {q: i for i, q in enumerate(labels)}
    for size in range(1, len(side) + 1):
        for ys in itertools.combinations(side, size):
            rest = [q for q in labels if q not in ys]
            if not rest:
                continue
            yi = [pos[q] for q in ys]
            ri = [pos[q] for q in rest]
            joint = reduced_matrix(psi_like, ri + yi)
            prod = np.kron(reduced_matrix(psi_like, ri), reduced_matrix(psi_like, yi))
            if np.max(np.abs(joint - prod)) <= PRODUCT_TOL:
                return list(ys)
    return None


def _mixed_eof(rho: np.ndarray, a: list[int], b: list[int], budget: RoofBudget, strip: bool) -> EofResult:
    da, db = 2 ** len(a), 2 ** len(b)
    lam, vec = eig_hermitian(rho)
    if lam[1] <= SUPPORT_TOL:
        psi = vec[:, 0].reshape(da, db)
        s = np.linalg.svd(psi, compute_uv=False) ** 2
        return EofResult.exact(entropy_of_spectrum(s), PURE_ENTROPY)
    small, cmap = _compress(rho, da, db)
    ca, cb = cmap.dims
    if ca == 1 or cb == 1:
        # a pure marginal forces a product state: zero, and trivially PPT
        return EofResult.exact(0.0, PPT_ZERO)
    if (ca, cb) == (2, 2):
        method = WOOTTERS if (da, db) == (2, 2) else COMPRESSED_WOOTTERS
        return EofResult.exact(eof_from_concurrence(concurrence_2x2(small)), method)
    if ca * cb <= 6 and _is_ppt(small, ca, cb):
        return EofResult.exact(0.0, PPT_ZERO)
    if strip and len(a) + len(b) <= 8:
        labels = a + b
        for side in (b, a):
            ys = _product_subset(rho, labels, side)
            if ys is not None:
                a2 = [q for q in a if q not in ys]
                b2 = [q for q in b if q not in ys]
                if not a2 or not b2:
                    return EofResult.exact(0.0, PPT_ZERO)
                sub = reduced_matrix(StateObject.mixed(rho), [labels.index(q) for q in a2 + b2])
                return _mixed_eof(sub, a2, b2, budget, strip)
    return _roof_upper(small, ca, cb, budget, a + b)


def eof(state, cut: Bipartition, budget: RoofBudget | None = None, cache: TermCache | None = None) -> EofResult:
    """Entanglement of formation of ``state`` across ``cut``, in bits.

    Qubits outside the cut are traced out first.  The result carries the
    method that produced it; only ``convex-roof-upper`` is inexact.
    """
    state = as_state(state)
    cut.check(state.n)
    budget = budget or RoofBudget()
    key = None
    if cache is not None:
        key = (state.fingerprint(), cut.key())
        hit = cache.get(key)
        if hit is not None:
            return hit
    result = _eof(state, cut, budget)
    if cache is not None:
        cache.put(key, result)
    return result


def _eof(state: StateObject, cut: Bipartition, budget: RoofBudget) -> EofResult:
    a, b = list(cut.side_a), list(cut.side_b)
    if state.is_pure:
        if len(cut.qubits) == state.n:
            return EofResult.exact(entropy_of_entanglement(state, cut), PURE_ENTROPY)
        # only factors straddling the cut matter; the rest are local ancillas
        inside = set(a) | set(b)
        straddling = [f for f in state.factors() if set(f) & set(a) and set(f) & set(b)]
        if not straddling:
            return EofResult.exact(0.0, PURE_ENTROPY)
        keep = {q for f in straddling for q in f}
        a = [q for q in a if q in keep]
        b = [q for q in b if q in keep]
        if keep <= inside:
            s = entropy_of_spectrum(schmidt_probabilities(state.vector, state.n, a))
            return EofResult.exact(s, PURE_ENTROPY)
        rho = reduced_matrix(state, a + b)
        return _mixed_eof(rho, a, b, budget, strip=True)
    rho = reduced_matrix(state, a + b)
    return _mixed_eof(0.5 * (rho + rho.conj().T), a, b, budget, strip=True)
