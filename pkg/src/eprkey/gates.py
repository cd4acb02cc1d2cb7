"""Reversible-gate library.

Fixed 1-qubit unitaries, the controlled-NOT (Feynman) gate, parametrically
wired Toffoli and Fredkin gates, classical truth-table views, and cascade
cost bookkeeping.  Wires inside a gate are numbered 1-based with wire 1 the
most significant bit of the basis index, matching ket notation |b1 b2 b3>.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

UNITARY_ATOL = 1e-12


class GateError(Exception):
    """Base class for gate-library errors."""


class UnknownGate(GateError):
    """Requested gate name is not in the library."""


class NotClassical(GateError):
    """Gate is not a basis-state permutation, so it has no truth table."""


class BadWiring(GateError):
    """Toffoli wiring is not a permutation of wires {1, 2, 3}."""


@dataclass(frozen=True)
class Gate:
    """A named unitary acting on `arity` qubits."""

    name: str
    arity: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        dim = 2 ** self.arity
        if m.shape != (dim, dim):
            raise ValueError(f"gate {self.name}: matrix shape {m.shape} does not fit arity {self.arity}")
        if not np.allclose(m.conj().T @ m, np.eye(dim), atol=UNITARY_ATOL):
            raise ValueError(f"gate {self.name}: matrix is not unitary")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class TruthTable:
    """Classical view of a permutation gate: basis index i maps to mapping[i]."""

    arity: int
    mapping: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(2 ** self.arity)):
            raise ValueError("mapping is not a bijection")


@dataclass(frozen=True)
class CascadeMetrics:
    """Cost bookkeeping for a described gate cascade."""

    gate_count: int
    constant_inputs: int
    garbage_outputs: int

    def __post_init__(self):
        if min(self.gate_count, self.constant_inputs, self.garbage_outputs) < 0:
            raise ValueError("cascade metrics must be nonnegative")


_SQRT2 = math.sqrt(2.0)

_STANDARD = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / _SQRT2,
}


def standard_gate(name: str) -> Gate:
    """One of the fixed 1-qubit gates I, X, Y, Z, H (case-insensitive)."""
    key = name.strip().upper()
    if key not in _STANDARD:
        raise UnknownGate(f"unknown gate name {name!r}")
    return Gate(key, 1, _STANDARD[key])


def feynman() -> Gate:
    """Controlled-NOT on two wires, first wire control: (A, B) -> (A, A xor B)."""
    m = np.zeros((4, 4), dtype=complex)
    for a in range(2):
        for b in range(2):
            m[(a << 1) | (a ^ b), (a << 1) | b] = 1.0
    return Gate("FG", 2, m)


def toffoli(controls: tuple[int, int] = (1, 3), target: int = 2) -> Gate:
    """Doubly-controlled NOT on three wires with parametric wiring.

    The default wiring puts the target on the middle wire between the two
    controls, the orientation used by the teleportation circuits here;
    toffoli((1, 2), 3) gives the conventional last-wire target.
    """
    wires = (*controls, target)
    if sorted(wires) != [1, 2, 3]:
        raise BadWiring(f"controls {controls} / target {target} must be a permutation of wires 1..3")
    c0, c1 = controls[0] - 1, controls[1] - 1
    t = target - 1
    m = np.zeros((8, 8), dtype=complex)
    for col in range(8):
        bits = [(col >> 2) & 1, (col >> 1) & 1, col & 1]
        if bits[c0] and bits[c1]:
            bits[t] ^= 1
        m[(bits[0] << 2) | (bits[1] << 1) | bits[2], col] = 1.0
    name = f"TG(c={controls[0]},{controls[1]};t={target})"
    return Gate(name, 3, m)


def fredkin() -> Gate:
    """Controlled swap on three wires: wires 2 and 3 swap iff wire 1 is set."""
    m = np.zeros((8, 8), dtype=complex)
    for col in range(8):
        bits = [(col >> 2) & 1, (col >> 1) & 1, col & 1]
        if bits[0]:
            bits[1], bits[2] = bits[2], bits[1]
        m[(bits[0] << 2) | (bits[1] << 1) | bits[2], col] = 1.0
    return Gate("FRG", 3, m)


def truth_table(gate: Gate) -> TruthTable:
    """The permutation a classical (0/1 permutation matrix) gate realizes.

    Raises NotClassical for gates with superposing entries, e.g. H.
    """
    m = gate.matrix
    rounded = np.rint(m.real)
    if not np.allclose(m, rounded, atol=UNITARY_ATOL):
        raise NotClassical(f"gate {gate.name} is not a basis-state permutation")
    mapping = []
    for col in range(m.shape[1]):
        ones = np.flatnonzero(rounded[:, col])
        if len(ones) != 1:
            raise NotClassical(f"gate {gate.name} is not a basis-state permutation")
        mapping.append(int(ones[0]))
    return TruthTable(gate.arity, tuple(mapping))


def cascade_metrics(
    steps: list[tuple[Gate, tuple[int, ...]]],
    declared_constant_inputs: int = 0,
    declared_garbage_outputs: int = 0,
) -> CascadeMetrics:
    """Report the cost counts of a described cascade.

    Pure bookkeeping: the gate count is taken from the step list, the
    constant-input and garbage-output counts are declared by the caller
    (they are properties of how a circuit is used, not inferable from the
    gate list alone).
    """
    return CascadeMetrics(len(steps), declared_constant_inputs, declared_garbage_outputs)


_TG_RE = re.compile(r"^TG\(C=([123]),([123]);T=([123])\)$")


def parse_gate(text: str) -> Gate:
    """Parse a gate name as accepted on the command line.

    Accepts I, X, Y, Z, H, FG, TG, FRG (case-insensitive); TG takes an
    optional wiring suffix, e.g. ``TG(c=1,3;t=2)``.  Bare TG uses the
    default middle-target wiring.
    """
    key = text.strip().upper().replace(" ", "")
    if key in _STANDARD:
        return standard_gate(key)
    if key == "FG":
        return feynman()
    if key == "FRG":
        return fredkin()
    if key == "TG":
        return toffoli()
    m = _TG_RE.match(key)
    if m:
        c0, c1, t = (int(g) for g in m.groups())
        return toffoli((c0, c1), t)
    raise UnknownGate(f"unknown gate name {text!r}")
