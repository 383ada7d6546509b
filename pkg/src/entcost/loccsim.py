"""Pure-state circuits checking the entangling-gate cost of k-partite entanglement.

Starting from a product of single-qubit pure states, every two-qubit gate
can raise the largest nonzero degree by at most one, so a circuit with
``g`` entangling gates never produces ``E^k > 0`` for ``k > g + 1``.
:func:`verify_result2` samples random circuits and checks this bound at
every prefix of each circuit.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bipartite import RoofBudget
from .errors import ArgumentError, ContractError
from .multipartite import EntanglementVector, entanglement_vector
from .qcore import StateObject, apply_unitary, as_state, is_unitary, random_unitary

EXACT_TOL = 1e-6
BOUND_TOL = 1e-3

H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


@dataclass(frozen=True)
class GateOp:
    targets: tuple[int, ...]
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        t = tuple(int(q) for q in self.targets)
        object.__setattr__(self, "targets", t)
        if len(t) not in (1, 2) or len(set(t)) != len(t):
            raise ArgumentError(f"gate must act on one or two distinct qubits, got {t}")
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (2 ** len(t),) * 2 or not is_unitary(m):
            raise ContractError(f"gate on {t} is not a {2 ** len(t)}x{2 ** len(t)} unitary")
        object.__setattr__(self, "matrix", m)

    @property
    def entangling(self) -> bool:
        return len(self.targets) == 2

    @property
    def kind(self) -> str:
        return "two-qubit" if self.entangling else "single-qubit"


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple[GateOp, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for gate in self.gates:
            if max(gate.targets) >= self.n:
                raise ArgumentError(f"gate targets {gate.targets} outside {self.n} qubits")

    @property
    def entangling_count(self) -> int:
        return sum(g.entangling for g in self.gates)

    def describe(self) -> list[dict]:
        return [{"kind": g.kind, "targets": list(g.targets)} for g in self.gates]


def is_product_state(psi: StateObject) -> bool:
    return psi.is_pure and all(len(f) == 1 for f in psi.factors())


def apply_circuit(psi, c: Circuit) -> StateObject:
    psi = as_state(psi)
    if psi.n != c.n:
        raise ArgumentError(f"circuit is for {c.n} qubits, state has {psi.n}")
    if not is_product_state(psi):
        raise ArgumentError("input must be a product of single-qubit pure states")
    for gate in c.gates:
        psi = apply_unitary(psi, gate.matrix, gate.targets)
    return psi


def max_degree(psi, tol: float = EXACT_TOL, vec: EntanglementVector | None = None) -> int:
    """Largest ``k`` with ``E^k > tol``, or 1 when there is none."""
    psi = as_state(psi)
    if psi.n < 2:
        return 1
    vec = vec or entanglement_vector(psi)
    ks = [k for k, v in vec.per_degree.items() if v > tol]
    return max(ks, default=1)


def certified_degree(vec: EntanglementVector, tol: float) -> int:
    """Largest ``k`` whose certified lower bound on ``E^k`` exceeds ``tol``."""
    ks = [k for k in vec.per_degree if vec.per_degree_bounds(k)[0] > tol]
    return max(ks, default=1)


def random_product_state(n: int, rng: np.random.Generator) -> StateObject:
    psi = np.ones(1, dtype=complex)
    for _ in range(n):
        psi = np.kron(psi, random_unitary(2, rng)[:, 0])
    return StateObject.pure(psi, normalize=True)


def random_circuit(n: int, g: int, rng: np.random.Generator) -> Circuit:
    """``g`` Haar-random two-qubit gates on uniformly random qubit pairs."""
    gates = []
    for _ in range(g):
        pair = rng.choice(n, size=2, replace=False)
        gates.append(GateOp(tuple(int(q) for q in pair), random_unitary(4, rng)))
    return Circuit(n, tuple(gates))


def ghz_witness(n: int = 3) -> tuple[StateObject, Circuit]:
    """``|+0...0>`` and the CNOT ladder that turns it into ``GHZ_n``."""
    plus = H @ np.array([1, 0], dtype=complex)
    psi = plus
    for _ in range(n - 1):
        psi = np.kron(psi, [1, 0])
    gates = tuple(GateOp((i, i + 1), CNOT) for i in range(n - 1))
    return StateObject.pure(psi), Circuit(n, gates)


@dataclass
class Result2Report:
    n: int
    gates: int
    trials: int
    seed: int
    tol_exact: float
    tol_bound: float
    degree_counts: dict[int, int] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    bound_trials: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "gates": self.gates,
            "trials": self.trials,
            "seed": self.seed,
            "tol_exact": self.tol_exact,
            "tol_bound": self.tol_bound,
            "passed": self.passed,
            "degree_counts": {str(k): v for k, v in sorted(self.degree_counts.items())},
            "bound_trials": self.bound_trials,
            "violations": self.violations,
        }


def _vector_payload(vec: EntanglementVector) -> dict:
    return {
        "per_degree": {str(k): float(v) for k, v in vec.per_degree.items()},
        "per_degree_bounds": {str(k): list(vec.per_degree_bounds(k)) for k in vec.per_degree},
        "methods": vec.method_summary["methods"],
    }


def verify_result2(
    n: int,
    g: int,
    trials: int,
    seed: int = 0,
    tol: float | None = None,
    budget: RoofBudget | None = None,
    check_prefixes: bool = True,
) -> Result2Report:
    """Check ``max_degree <= entangling gates + 1`` on random circuits.

    Each trial draws its own RNG stream from ``seed``, so reports do not
    depend on trial order.  With inexact terms a violation is recorded only
    when the certified lower bound of ``E^k`` exceeds the tolerance.
    """
    if not (2 <= n <= 5):
        raise ArgumentError(f"desk-scale check supports 2 <= n <= 5, got n={n}")
    if not (0 <= g <= n - 1):
        raise ArgumentError(f"need 0 <= g <= n - 1, got g={g}")
    tol_exact = EXACT_TOL if tol is None else tol
    tol_bound = BOUND_TOL if tol is None else max(tol, BOUND_TOL)
    report = Result2Report(n, g, trials, seed, tol_exact, tol_bound)
    streams = np.random.SeedSequence(seed).spawn(trials)
    for t, ss in enumerate(streams):
        rng = np.random.default_rng(ss)
        psi = random_product_state(n, rng)
        circuit = random_circuit(n, g, rng)
        prefixes = range(g + 1) if check_prefixes else [g]
        final_degree = 1
        any_bound = False
        for used in prefixes:
            sub = Circuit(n, circuit.gates[:used])
            out = apply_circuit(psi, sub)
            vec = entanglement_vector(out, budget=budget)
            exact = vec.exact
            any_bound |= not exact
            degree = certified_degree(vec, tol_exact if exact else tol_bound)
            if degree > used + 1:
                report.violations.append(
                    {
                        "trial": t,
                        "prefix_gates": used,
                        "degree": degree,
                        "circuit": Circuit(n, circuit.gates[:used]).describe(),
                        **_vector_payload(vec),
                    }
                )
            final_degree = degree
        report.degree_counts[final_degree] = report.degree_counts.get(final_degree, 0) + 1
        report.bound_trials += int(any_bound)
    return report


def witness_report(n: int = 3) -> dict:
    """Degree reached by the CNOT-ladder witness and the gates it used."""
    psi, circuit = ghz_witness(n)
    out = apply_circuit(psi, circuit)
    vec = entanglement_vector(out)
    return {
        "n": n,
        "entangling_gates": circuit.entangling_count,
        "degree": max_degree(out, vec=vec),
        "per_degree": {str(k): float(v) for k, v in vec.per_degree.items()},
        "circuit": circuit.describe(),
    }
