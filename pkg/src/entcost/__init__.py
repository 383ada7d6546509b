"""Operational multipartite entanglement measures for qubit registers."""

__version__ = "0.1.0"

from .bipartite import Bipartition, EofResult, RoofBudget, TermCache, eof, g
from .multipartite import (
    EntanglementVector,
    Sequence,
    SequenceStep,
    e_k,
    e_up_to,
    entanglement_vector,
    enumerate_sequences,
    factorize_pure,
    w_closed_form_vector,
)
from .qcore import StateObject, partial_trace
from .states import build, from_string, ghz, parse_spec, w, zero

__all__ = [
    "Bipartition",
    "EofResult",
    "EntanglementVector",
    "RoofBudget",
    "Sequence",
    "SequenceStep",
    "StateObject",
    "TermCache",
    "build",
    "e_k",
    "e_up_to",
    "entanglement_vector",
    "enumerate_sequences",
    "eof",
    "factorize_pure",
    "from_string",
    "g",
    "ghz",
    "parse_spec",
    "partial_trace",
    "w",
    "w_closed_form_vector",
    "zero",
]
