"""Named state families and the state-spec grammar.

Grammar (whitespace is ignored)::

    product := factor ('*' factor)*
    factor  := 'ghz(' INT ')' | 'w(' INT ')' | 'zero(' INT ')' | 'bell'
             | 'mix(' weight ':' product (',' weight ':' product)* ')'
             | '(' product ')'
    weight  := decimal or fraction such as 0.25 or 1/3

Example: ``w(3)*ghz(3)*zero(2)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import ArgumentError, SizeError, SpecParseError
from .qcore import MAX_ENTRIES, StateObject, kron

MAX_PURE_QUBITS = 20
MAX_MIXED_QUBITS = 10


# -- constructors ------------------------------------------------------------

def _check_n(n: int, cap: int = MAX_PURE_QUBITS) -> int:
    if int(n) != n or n < 1:
        raise ArgumentError(f"qubit count must be a positive integer, got {n!r}")
    if n > cap:
        raise SizeError(f"{n} qubits exceeds the register cap of {cap}")
    return int(n)


def basis_index(bits) -> int:
    """Basis index of a bit string, qubit 0 being the most significant bit."""
    idx = 0
    for b in bits:
        idx = (idx << 1) | int(b)
    return idx


def zero(n: int) -> StateObject:
    n = _check_n(n)
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = 1.0
    return StateObject.pure(psi)


def ghz(n: int) -> StateObject:
    n = _check_n(n)
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = psi[-1] = 1 / np.sqrt(2)
    return StateObject.pure(psi)


def bell() -> StateObject:
    return ghz(2)


def _w_vector(n: int) -> np.ndarray:
    psi = np.zeros(2**n, dtype=complex)
    psi[[1 << (n - 1 - i) for i in range(n)]] = 1 / np.sqrt(n)
    return psi


def w(n: int) -> StateObject:
    """Uniform superposition of the ``n`` single-excitation basis states."""
    return StateObject.pure(_w_vector(_check_n(n)))


def w_reduced(k: int, n: int) -> StateObject:
    """Closed form of ``W_n`` with ``n - k`` qubits traced out.

    Returns ``(k/n)|W_k><W_k| + (1 - k/n)|0^k><0^k|`` built directly.
    """
    n = _check_n(n)
    k = _check_n(k, MAX_MIXED_QUBITS)
    if k > n:
        raise ArgumentError(f"cluster size k={k} exceeds n={n}")
    wk = _w_vector(k)
    rho = (k / n) * np.outer(wk, wk.conj())
    rho[0, 0] += 1 - k / n
    return StateObject.mixed(rho)


def psi_mk(m: int, k: int) -> StateObject:
    """Two-qubit state ``sqrt(m/k)|10> + sqrt((k-m)/k)|01>``."""
    if not (1 <= m < k):
        raise ArgumentError(f"need 1 <= m < k, got m={m}, k={k}")
    psi = np.zeros(4, dtype=complex)
    psi[0b10] = np.sqrt(m / k)
    psi[0b01] = np.sqrt((k - m) / k)
    return StateObject.pure(psi)


# -- spec AST ----------------------------------------------------------------

@dataclass(frozen=True)
class Ghz:
    n: int


@dataclass(frozen=True)
class W:
    n: int


@dataclass(frozen=True)
class Zero:
    n: int


@dataclass(frozen=True)
class Bell:
    pass


@dataclass(frozen=True)
class Product:
    items: tuple


@dataclass(frozen=True)
class Mix:
    branches: tuple  # of (weight, spec)


StateSpec = Union[Ghz, W, Zero, Bell, Product, Mix]


def n_qubits(spec: StateSpec) -> int:
    if isinstance(spec, (Ghz, W, Zero)):
        return spec.n
    if isinstance(spec, Bell):
        return 2
    if isinstance(spec, Product):
        return sum(n_qubits(s) for s in spec.items)
    if isinstance(spec, Mix):
        sizes = {n_qubits(s) for _, s in spec.branches}
        if len(sizes) != 1:
            raise ArgumentError(f"mixture branches have different qubit counts {sorted(sizes)}")
        return sizes.pop()
    raise ArgumentError(f"not a state spec: {spec!r}")


def is_pure_spec(spec: StateSpec) -> bool:
    if isinstance(spec, Mix):
        return False
    if isinstance(spec, Product):
        return all(is_pure_spec(s) for s in spec.items)
    return True


def flatten(spec: StateSpec) -> StateSpec:
    """Flatten nested products so that PRODUCT is associative."""
    if isinstance(spec, Product):
        items = []
        for s in spec.items:
            s = flatten(s)
            items.extend(s.items if isinstance(s, Product) else [s])
        return items[0] if len(items) == 1 else Product(tuple(items))
    if isinstance(spec, Mix):
        return Mix(tuple((wt, flatten(s)) for wt, s in spec.branches))
    return spec


def validate(spec: StateSpec) -> None:
    if isinstance(spec, (Ghz, W, Zero)):
        _check_n(spec.n)
    elif isinstance(spec, Product):
        if not spec.items:
            raise ArgumentError("empty product")
        for s in spec.items:
            validate(s)
    elif isinstance(spec, Mix):
        if not spec.branches:
            raise ArgumentError("empty mixture")
        weights = [float(wt) for wt, _ in spec.branches]
        if any(wt <= 0 for wt in weights):
            raise ArgumentError("mixture weights must be positive")
        if abs(sum(weights) - 1.0) > 1e-10:
            raise ArgumentError(f"mixture weights sum to {sum(weights)!r}, expected 1")
        for _, s in spec.branches:
            validate(s)
    n = n_qubits(spec)
    cap = MAX_PURE_QUBITS if is_pure_spec(spec) else MAX_MIXED_QUBITS
    if n > cap:
        raise SizeError(f"spec needs {n} qubits; cap is {cap} for this kind of state")


def build(spec: StateSpec) -> StateObject:
    validate(spec)
    spec = flatten(spec)
    return _build(spec)


def _build(spec) -> StateObject:
    if isinstance(spec, Ghz):
        return ghz(spec.n)
    if isinstance(spec, W):
        return w(spec.n)
    if isinstance(spec, Zero):
        return zero(spec.n)
    if isinstance(spec, Bell):
        return bell()
    if isinstance(spec, Product):
        parts = [_build(s) for s in spec.items]
        if all(p.is_pure for p in parts):
            psi = np.ones(1, dtype=complex)
            for p in parts:
                psi = kron(psi, p.vector)
            return StateObject.pure(psi, normalize=True)
        rho = np.ones((1, 1), dtype=complex)
        for p in parts:
            rho = kron(rho, p.density())
        return StateObject.mixed(rho)
    if isinstance(spec, Mix):
        total = sum(float(wt) for wt, _ in spec.branches)
        rho = sum(float(wt) / total * _build(s).density() for wt, s in spec.branches)
        return StateObject.mixed(rho)
    raise ArgumentError(f"not a state spec: {spec!r}")


# -- grammar -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:/\d+)?|\.\d+)|(?P<name>[A-Za-z_]+)|(?P<op>[()*:,]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise SpecParseError(f"unexpected character at position {pos} in {text!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            raise SpecParseError(f"expected {want!r} in {self.text!r}, got {tok[1]!r}")
        self.i += 1
        return tok[1]

    def product(self):
        items = [self.factor()]
        while self.peek() == ("op", "*"):
            self.take()
            items.append(self.factor())
        return items[0] if len(items) == 1 else Product(tuple(items))

    def factor(self):
        kind, val = self.peek()
        if (kind, val) == ("op", "("):
            self.take()
            inner = self.product()
            self.take("op", ")")
            return inner
        name = self.take("name").lower()
        if name == "bell":
            return Bell()
        if name == "mix":
            self.take("op", "(")
            branches = [self.branch()]
            while self.peek() == ("op", ","):
                self.take()
                branches.append(self.branch())
            self.take("op", ")")
            return Mix(tuple(branches))
        ctor = {"ghz": Ghz, "w": W, "zero": Zero}.get(name)
        if ctor is None:
            raise SpecParseError(f"unknown state family {name!r} in {self.text!r}")
        self.take("op", "(")
        num = self.take("num")
        if not num.isdigit():
            raise SpecParseError(f"qubit count must be an integer, got {num!r}")
        self.take("op", ")")
        return ctor(int(num))

    def branch(self):
        raw = self.take("num")
        try:
            weight = Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecParseError(f"bad weight {raw!r}") from exc
        self.take("op", ":")
        return weight, self.product()


def parse_spec(text: str) -> StateSpec:
    """Parse a state-spec string into its AST, validating weights and size."""
    p = _Parser(text)
    if not p.tokens:
        raise SpecParseError("empty state spec")
    spec = p.product()
    if p.i != len(p.tokens):
        raise SpecParseError(f"trailing input {p.tokens[p.i][1]!r} in {text!r}")
    validate(spec)
    return spec


def format_spec(spec: StateSpec) -> str:
    if isinstance(spec, Ghz):
        return f"ghz({spec.n})"
    if isinstance(spec, W):
        return f"w({spec.n})"
    if isinstance(spec, Zero):
        return f"zero({spec.n})"
    if isinstance(spec, Bell):
        return "bell"
    if isinstance(spec, Product):
        return "*".join(
            f"({format_spec(s)})" if isinstance(s, Product) else format_spec(s) for s in spec.items
        )
    if isinstance(spec, Mix):
        return "mix(" + ", ".join(f"{wt}:{format_spec(s)}" for wt, s in spec.branches) + ")"
    raise ArgumentError(f"not a state spec: {spec!r}")


def from_string(text: str) -> StateObject:
    return build(parse_spec(text))
