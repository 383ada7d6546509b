import numpy as np
import pytest
from hypothesis import given, strategies as st

from entcost.errors import ArgumentError, ContractError, SizeError
from entcost.qcore import (
    StateObject,
    apply_local_unitary,
    binary_entropy,
    eig_hermitian,
    kron,
    partial_trace,
    permute_qubits,
    random_unitary,
    von_neumann_entropy,
)
from entcost.states import ghz, w, zero

from conftest import random_density, random_pure
from oracles import H_TWO_THIRDS

SX = np.array([[0, 1], [1, 0]], dtype=complex)
seeds = st.integers(0, 2**32 - 1)


def test_kron_identity_and_basis_product():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    m = np.arange(4).reshape(2, 2)
    assert np.array_equal(kron(np.ones((1, 1)), m), m)
    out = kron(np.diag([1, 0]), np.diag([0, 1]))
    expected = np.zeros((4, 4))
    expected[1, 1] = 1
    assert np.array_equal(out, expected)


def test_kron_size_cap():
    with pytest.raises(SizeError):
        kron(np.ones((64, 64)), np.ones((32, 32)), cap=2**20)


def test_state_validation():
    with pytest.raises(ContractError):
        StateObject.pure([1, 1])
    with pytest.raises(ContractError):
        StateObject.mixed(np.diag([0.5, 0.6]))
    with pytest.raises(ContractError):
        StateObject.mixed(np.array([[0.5, 1], [0, 0.5]]))
    with pytest.raises(ContractError):
        StateObject.mixed(np.diag([1.5, -0.5]))
    with pytest.raises(ContractError):
        StateObject.pure([np.nan, 1])
    psi = StateObject.pure([1, 1], normalize=True)
    assert psi.n == 1 and psi.is_pure
    with pytest.raises(ValueError):
        psi.vector[0] = 0


def test_partial_trace_ghz2_is_maximally_mixed():
    assert np.allclose(partial_trace(ghz(2), [0]).matrix, np.eye(2) / 2, atol=1e-12)


def test_partial_trace_w3_pair():
    rho = partial_trace(w(3), [1, 2]).matrix
    plus = np.array([0, 1, 1, 0]) / np.sqrt(2)
    expected = 2 / 3 * np.outer(plus, plus)
    expected[0, 0] += 1 / 3
    assert np.allclose(rho, expected, atol=1e-12)


def test_partial_trace_w_general():
    for n in range(2, 7):
        for k in range(1, n + 1):
            rho = partial_trace(w(n), range(k)).matrix
            wk = np.zeros(2**k)
            wk[[1 << i for i in range(k)]] = 1 / np.sqrt(k)
            expected = k / n * np.outer(wk, wk)
            expected[0, 0] += 1 - k / n
            assert np.allclose(rho, expected, atol=1e-12)


def test_partial_trace_errors():
    with pytest.raises(ArgumentError):
        partial_trace(ghz(3), [])
    with pytest.raises(ArgumentError):
        partial_trace(ghz(3), [3])


def test_partial_trace_keeps_register_order():
    psi = kron(np.array([1, 0]), np.array([0, 1]))  # |01>
    rho = partial_trace(StateObject.pure(psi), [1, 0]).matrix
    assert np.isclose(rho[1, 1], 1)


def test_eig_hermitian_examples():
    lam, _ = eig_hermitian(np.eye(2))
    assert np.allclose(lam, [1, 1])
    lam, _ = eig_hermitian(np.diag([1 / 3, 2 / 3]))
    assert np.allclose(lam, [2 / 3, 1 / 3])
    lam, v = eig_hermitian(SX)
    assert np.allclose(lam, [1, -1])
    assert np.isclose(abs(v[:, 0] @ np.array([1, 1]) / np.sqrt(2)), 1)
    with pytest.raises(ContractError):
        eig_hermitian(np.array([[0, 1], [0, 0]]))


def test_binary_entropy():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0 and binary_entropy(1.0) == 0.0
    assert abs(binary_entropy(2 / 3) - H_TWO_THIRDS) < 1e-15
    with pytest.raises(ArgumentError):
        binary_entropy(1.1)


def test_von_neumann_entropy():
    assert von_neumann_entropy(ghz(3)) == 0.0
    assert von_neumann_entropy(np.outer([1, 0], [1, 0])) == 0.0
    assert abs(von_neumann_entropy(np.eye(2) / 2) - 1) < 1e-15
    assert abs(von_neumann_entropy(np.diag([1 / 3, 2 / 3])) - H_TWO_THIRDS) < 1e-14
    with pytest.raises(ContractError):
        von_neumann_entropy(np.diag([1.1, -0.1]))


def test_apply_local_unitary():
    assert np.allclose(apply_local_unitary(zero(2), np.eye(2), 0).vector, zero(2).vector)
    out = apply_local_unitary(zero(2), SX, 0)
    assert np.isclose(out.vector[0b10], 1)
    with pytest.raises(ContractError):
        apply_local_unitary(zero(2), np.array([[1, 1], [0, 1]]), 0)


def test_apply_local_unitary_mixed_matches_pure(rng):
    psi = StateObject.pure(random_pure(rng, 8))
    u = random_unitary(2, rng)
    a = apply_local_unitary(psi, u, 1).density()
    b = apply_local_unitary(StateObject.mixed(psi.density()), u, 1).matrix
    assert np.allclose(a, b, atol=1e-12)


def test_permute_qubits():
    psi = StateObject.pure(kron(np.array([0, 1]), np.array([1, 0, 0, 0])))  # |100>
    out = permute_qubits(psi, [1, 2, 0])
    assert np.isclose(out.vector[0b001], 1)


@given(seeds, st.integers(2, 5))
def test_nested_partial_trace(seed, n):
    rng = np.random.default_rng(seed)
    state = StateObject.mixed(random_density(rng, 2**n, rank=3))
    perm = rng.permutation(n)
    a = sorted(perm[: rng.integers(1, n)].tolist())
    extra = [q for q in perm if q not in a][: rng.integers(0, n - len(a) + 1)]
    ab = sorted(a + [int(q) for q in extra])
    inner = partial_trace(state, ab)
    a_inside = [ab.index(q) for q in a]
    nested = partial_trace(inner, a_inside).matrix
    direct = partial_trace(state, a).matrix
    assert np.max(np.abs(nested - direct)) <= 1e-10


@given(seeds, st.integers(1, 5))
def test_entropy_unitary_invariance(seed, n):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, 2**n, rank=int(rng.integers(1, 2**n + 1)))
    u = random_unitary(2**n, rng)
    assert abs(von_neumann_entropy(rho) - von_neumann_entropy(u @ rho @ u.conj().T)) <= 1e-9


@given(seeds, st.integers(2, 6))
def test_pure_marginal_entropies_agree(seed, n):
    rng = np.random.default_rng(seed)
    psi = StateObject.pure(random_pure(rng, 2**n))
    k = int(rng.integers(1, n))
    side = sorted(rng.choice(n, size=k, replace=False).tolist())
    rest = [q for q in range(n) if q not in side]
    sa = von_neumann_entropy(partial_trace(psi, side))
    sb = von_neumann_entropy(partial_trace(psi, rest))
    assert abs(sa - sb) <= 1e-9


@given(seeds, st.integers(1, 64))
def test_eig_reconstruction(seed, dim):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = x + x.conj().T
    lam, v = eig_hermitian(m)
    assert np.all(np.diff(lam) <= 0)
    assert np.linalg.norm(v @ np.diag(lam) @ v.conj().T - m) <= 1e-8
