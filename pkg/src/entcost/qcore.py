"""Dense linear algebra and entropy primitives for qubit registers.

Qubit ordering: qubit 0 is the leftmost tensor factor, i.e. the most
significant bit of a computational basis index.
"""
from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ArgumentError, ContractError, SizeError

MAX_ENTRIES = 2**20
STATE_TOL = 1e-10
HERMITIAN_TOL = 1e-8
CLAMP_TOL = 1e-10


@dataclass(frozen=True)
class RegisterLayout:
    local_dims: tuple[int, ...]

    def __post_init__(self):
        if any(d != 2 for d in self.local_dims):
            raise ArgumentError("only qubit registers are supported")

    @classmethod
    def qubits(cls, n: int) -> "RegisterLayout":
        return cls((2,) * n)

    @property
    def n(self) -> int:
        return len(self.local_dims)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.local_dims, dtype=np.int64))


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class StateObject:
    """A pure amplitude vector or a density matrix on a qubit register.

    Use :meth:`pure` or :meth:`mixed` to construct; both validate the
    physical invariants and freeze the underlying array.
    """

    layout: RegisterLayout
    vector: np.ndarray | None = None
    matrix: np.ndarray | None = None
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def pure(cls, amplitudes, *, normalize: bool = False) -> "StateObject":
        psi = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if psi.size > MAX_ENTRIES:
            raise SizeError(f"state vector of length {psi.size} exceeds cap {MAX_ENTRIES}")
        n = _qubit_count(psi.size)
        if not np.all(np.isfinite(psi)):
            raise ContractError("amplitudes must be finite")
        norm = np.linalg.norm(psi)
        if normalize:
            if norm == 0:
                raise ContractError("cannot normalize the zero vector")
            psi = psi / norm
        elif abs(norm - 1.0) > STATE_TOL:
            raise ContractError(f"amplitude vector has norm {norm!r}, expected 1")
        return cls(RegisterLayout.qubits(n), vector=_frozen(psi))

    @classmethod
    def mixed(cls, rho) -> "StateObject":
        rho = np.asarray(rho, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ContractError("density matrix must be square")
        if rho.size > MAX_ENTRIES:
            raise SizeError(f"density matrix with {rho.size} entries exceeds cap {MAX_ENTRIES}")
        n = _qubit_count(rho.shape[0])
        if not np.all(np.isfinite(rho)):
            raise ContractError("density matrix entries must be finite")
        if np.max(np.abs(rho - rho.conj().T), initial=0.0) > STATE_TOL:
            raise ContractError("density matrix is not Hermitian")
        tr = np.trace(rho).real
        if abs(tr - 1.0) > STATE_TOL:
            raise ContractError(f"density matrix has trace {tr!r}, expected 1")
        # symmetrize away rounding before the spectrum check
        rho = 0.5 * (rho + rho.conj().T)
        lam_min = np.linalg.eigvalsh(rho)[0]
        if lam_min < -STATE_TOL:
            raise ContractError(f"density matrix has negative eigenvalue {lam_min!r}")
        return cls(RegisterLayout.qubits(n), matrix=_frozen(rho))

    @property
    def n(self) -> int:
        return self.layout.n

    @property
    def dim(self) -> int:
        return self.layout.total_dim

    @property
    def is_pure(self) -> bool:
        return self.vector is not None

    def density(self) -> np.ndarray:
        if self.vector is not None:
            return np.outer(self.vector, self.vector.conj())
        return self.matrix

    def fingerprint(self) -> str:
        """Content hash used as a memoization key."""
        fp = self._memo.get("fingerprint")
        if fp is None:
            body = self.vector if self.vector is not None else self.matrix
            h = hashlib.sha1()
            h.update(b"pure" if self.is_pure else b"mixed")
            h.update(np.ascontiguousarray(body).tobytes())
            fp = self._memo["fingerprint"] = h.hexdigest()
        return fp

    def factors(self) -> list[tuple[int, ...]]:
        """Finest tensor-product partition of a pure state (cached)."""
        fs = self._memo.get("factors")
        if fs is None:
            fs = self._memo["factors"] = pure_factors(self)
        return fs

    def __repr__(self) -> str:
        kind = "pure" if self.is_pure else "mixed"
        return f"StateObject(n={self.n}, {kind})"


def _qubit_count(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if dim < 1 or 2**n != dim:
        raise ContractError(f"dimension {dim} is not a power of two")
    return n


def as_state(obj) -> StateObject:
    """Coerce a vector or matrix into a :class:`StateObject`."""
    if isinstance(obj, StateObject):
        return obj
    a = np.asarray(obj)
    if a.ndim == 1:
        return StateObject.pure(a)
    return StateObject.mixed(a)


def kron(a, b, cap: int = MAX_ENTRIES) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ContractError("kron inputs must be finite")
    if a.size * b.size > cap:
        raise SizeError(f"kron result with {a.size * b.size} entries exceeds cap {cap}")
    return np.kron(a, b)


def _check_qubits(n: int, qubits: Iterable[int]) -> tuple[int, ...]:
    qubits = tuple(int(q) for q in qubits)
    if len(set(qubits)) != len(qubits):
        raise ArgumentError(f"repeated qubit index in {qubits}")
    for q in qubits:
        if not 0 <= q < n:
            raise ArgumentError(f"qubit index {q} outside register of {n} qubits")
    return qubits


def reduced_matrix(state: StateObject, order: Sequence[int]) -> np.ndarray:
    """Density matrix of the qubits in ``order``, with tensor factors in that order.

    Unlike :func:`partial_trace` the order is not sorted, which lets callers
    line up the two sides of a bipartition as ``A`` then ``B``.
    """
    n = state.n
    order = _check_qubits(n, order)
    if not order:
        raise ArgumentError("keep-set must be nonempty")
    rest = [q for q in range(n) if q not in order]
    dk = 2 ** len(order)
    if state.is_pure:
        psi = state.vector.reshape((2,) * n)
        m = np.transpose(psi, list(order) + rest).reshape(dk, -1)
        return m @ m.conj().T
    rho = state.matrix.reshape((2,) * (2 * n))
    # bring kept axes forward on both row and column sides, then trace the rest
    perm = list(order) + rest + [n + q for q in order] + [n + q for q in rest]
    t = np.transpose(rho, perm).reshape(dk, 2 ** len(rest), dk, 2 ** len(rest))
    return np.einsum("ajbj->ab", t)


def partial_trace(state: StateObject, keep: Iterable[int]) -> StateObject:
    keep = sorted(_check_qubits(state.n, keep))
    if not keep:
        raise ArgumentError("keep-set must be nonempty")
    rho = reduced_matrix(state, keep)
    return StateObject.mixed(0.5 * (rho + rho.conj().T))


def eig_hermitian(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix, eigenvalues descending."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ContractError("eig_hermitian needs a square matrix")
    if np.max(np.abs(m - m.conj().T), initial=0.0) > HERMITIAN_TOL:
        raise ContractError("matrix is not Hermitian")
    lam, vec = np.linalg.eigh(0.5 * (m + m.conj().T))
    return lam[::-1].copy(), vec[:, ::-1].copy()


def binary_entropy(x: float) -> float:
    if x < -1e-12 or x > 1 + 1e-12:
        raise ArgumentError(f"binary entropy argument {x!r} outside [0, 1]")
    x = min(max(float(x), 0.0), 1.0)
    if x == 0.0 or x == 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1 - x) * np.log2(1 - x))


def entropy_of_spectrum(lam) -> float:
    """Shannon entropy in bits of a probability spectrum.

    Entries in ``[-CLAMP_TOL, 0)`` are clamped to zero; anything more
    negative is a contract violation.
    """
    lam = np.asarray(lam, dtype=float)
    if lam.size and lam.min() < -CLAMP_TOL:
        raise ContractError(f"negative eigenvalue {lam.min()!r} in entropy")
    lam = lam[lam > 0]
    return float(max(-np.sum(lam * np.log2(lam)), 0.0))


def von_neumann_entropy(rho) -> float:
    if isinstance(rho, StateObject):
        if rho.is_pure:
            return 0.0
        rho = rho.matrix
    lam, _ = eig_hermitian(rho)
    return entropy_of_spectrum(lam)


def is_unitary(u, tol: float = STATE_TOL) -> bool:
    u = np.asarray(u)
    return u.ndim == 2 and u.shape[0] == u.shape[1] and np.allclose(
        u.conj().T @ u, np.eye(u.shape[0]), atol=tol, rtol=0
    )


def apply_unitary(state: StateObject, u, targets: Sequence[int]) -> StateObject:
    """Apply a unitary on ``targets`` (in the given order) to a state."""
    targets = _check_qubits(state.n, targets)
    u = np.asarray(u, dtype=complex)
    t = len(targets)
    if u.shape != (2**t, 2**t):
        raise ContractError(f"unitary of shape {u.shape} does not act on {t} qubit(s)")
    if not is_unitary(u):
        raise ContractError("operator is not unitary")
    n = state.n
    ut = u.reshape((2,) * (2 * t))
    in_axes = list(range(t, 2 * t))
    if state.is_pure:
        psi = state.vector.reshape((2,) * n)
        out = np.tensordot(ut, psi, axes=(in_axes, list(targets)))
        out = np.moveaxis(out, list(range(t)), list(targets))
        return StateObject.pure(out.reshape(-1), normalize=True)
    rho = state.matrix.reshape((2,) * (2 * n))
    rho = np.tensordot(ut, rho, axes=(in_axes, list(targets)))
    rho = np.moveaxis(rho, list(range(t)), list(targets))
    cols = [n + q for q in targets]
    rho = np.tensordot(rho, ut.conj(), axes=(cols, in_axes))
    rho = np.moveaxis(rho, list(range(2 * n - t, 2 * n)), cols)
    rho = rho.reshape(2**n, 2**n)
    return StateObject.mixed(0.5 * (rho + rho.conj().T))


def apply_local_unitary(state: StateObject, u, target: int) -> StateObject:
    if np.asarray(u).shape != (2, 2):
        raise ContractError("local unitary must be 2x2")
    return apply_unitary(state, u, [target])


def permute_qubits(state: StateObject, perm: Sequence[int]) -> StateObject:
    """Relabel qubits so that new qubit ``i`` is old qubit ``perm[i]``."""
    n = state.n
    perm = _check_qubits(n, perm)
    if len(perm) != n:
        raise ArgumentError("permutation must cover the register")
    if state.is_pure:
        psi = np.transpose(state.vector.reshape((2,) * n), perm)
        return StateObject.pure(psi.reshape(-1))
    rho = state.matrix.reshape((2,) * (2 * n))
    rho = np.transpose(rho, list(perm) + [n + p for p in perm])
    return StateObject.mixed(rho.reshape(2**n, 2**n))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary: QR of a complex Ginibre matrix with phase fixing."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def schmidt_probabilities(psi: np.ndarray, n: int, side: Sequence[int]) -> np.ndarray:
    """Squared Schmidt coefficients of a pure vector across ``side : rest``."""
    side = list(side)
    rest = [q for q in range(n) if q not in side]
    m = np.transpose(psi.reshape((2,) * n), side + rest).reshape(2 ** len(side), -1)
    s = np.linalg.svd(m, compute_uv=False)
    return s**2


def pure_factors(state: StateObject, tol: float = STATE_TOL) -> list[tuple[int, ...]]:
    """Finest partition of a pure register into tensor-product factors.

    Qubits that share nonzero mutual information are necessarily in the
    same factor, so the mutual-information graph gives candidate blocks;
    blocks whose marginal is not pure are merged until every block is pure.
    """
    if not state.is_pure:
        raise ContractError("pure_factors needs a pure state")
    n = state.n
    psi = state.vector
    if n == 1:
        return [(0,)]
    single = [_marginal_entropy(psi, n, [q]) for q in range(n)]
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(n), 2):
        if single[i] <= tol or single[j] <= tol:
            continue
        mi = single[i] + single[j] - _marginal_entropy(psi, n, [i, j])
        if mi > tol:
            parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for q in range(n):
        groups.setdefault(find(q), []).append(q)
    blocks = sorted(tuple(g) for g in groups.values())

    pure_blocks = []
    impure = []
    for b in blocks:
        (pure_blocks if _is_pure_block(psi, n, b, tol) else impure).append(b)
    # merge impure blocks: smallest union of impure blocks that is pure
    while impure:
        found = None
        for size in range(2, len(impure) + 1):
            for combo in itertools.combinations(range(len(impure)), size):
                if 0 not in combo:
                    continue
                merged = tuple(sorted(q for c in combo for q in impure[c]))
                if _is_pure_block(psi, n, merged, tol):
                    found = combo, merged
                    break
            if found:
                break
        if found is None:
            # cannot happen for a pure global state; keep everything together
            found = tuple(range(len(impure))), tuple(sorted(q for b in impure for q in b))
        combo, merged = found
        pure_blocks.append(merged)
        impure = [b for i, b in enumerate(impure) if i not in combo]
    return sorted(pure_blocks)


def _marginal_entropy(psi, n, side) -> float:
    return entropy_of_spectrum(schmidt_probabilities(psi, n, side))


def _is_pure_block(psi, n, block, tol) -> bool:
    if len(block) == n:
        return True
    p = schmidt_probabilities(psi, n, block)
    return 1.0 - p[0] <= tol
