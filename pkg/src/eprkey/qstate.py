"""Exact dense complex statevector core for small multi-qubit registers.

Amplitudes are plain complex numbers.  Qubit numbering is 1-based and follows
ket notation: qubit 1 is the leftmost slot of |b1 b2 ... bn> and therefore the
most significant bit of the amplitude index, so |100> lives at index 4.

All values are immutable after construction.  Operations are pure functions,
except the sampling ones, which advance only the random stream they are given.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Normalization is accepted within 1e-9 when states are constructed from
# outside input, and must hold within 1e-12 after every internal operation.
CONSTRUCT_NORM_ATOL = 1e-9
INTERNAL_NORM_ATOL = 1e-12
# Branch probabilities below this count as genuinely impossible rather than
# rounding noise.
ZERO_BRANCH_ATOL = 1e-15
# Amplitudes below this are omitted from trace serialization.
TRACE_AMP_CUTOFF = 1e-12


class QStateError(Exception):
    """Base class for statevector errors."""


class NotNormalized(QStateError):
    """Amplitudes do not form a unit-norm state."""


class WireOutOfRange(QStateError):
    """A qubit position is outside 1..n_qubits."""


class DuplicateWire(QStateError):
    """The same qubit position appears twice."""


class ArityMismatch(QStateError):
    """Gate arity does not equal the number of wires given."""


class ZeroProbabilityBranch(QStateError):
    """The requested measurement branch has (numerically) zero probability."""


class DimensionMismatch(QStateError):
    """Operands have different qubit counts."""


class PureState:
    """Immutable pure state of n qubits as a length-2^n complex vector."""

    __slots__ = ("_vector", "_n_qubits")

    def __init__(self, amplitudes):
        vec = np.array(amplitudes, dtype=complex).reshape(-1)
        n = vec.size.bit_length() - 1
        if vec.size < 2 or vec.size != 2 ** n:
            raise ValueError(f"amplitude count {vec.size} is not a power of two >= 2")
        if not np.all(np.isfinite(vec.view(float))):
            raise NotNormalized("amplitudes must be finite")
        norm2 = float(np.sum(np.abs(vec) ** 2))
        if abs(norm2 - 1.0) > CONSTRUCT_NORM_ATOL:
            raise NotNormalized(f"squared norm is {norm2!r}, not 1")
        vec.flags.writeable = False
        self._vector = vec
        self._n_qubits = n

    @property
    def vector(self) -> np.ndarray:
        return self._vector

    @property
    def n_qubits(self) -> int:
        return self._n_qubits

    def probabilities(self) -> np.ndarray:
        return np.abs(self._vector) ** 2

    def __repr__(self):
        return f"PureState({self._n_qubits} qubits: {state_trace(self) or '~0'!s})"


@dataclass(frozen=True)
class MeasurementRecord:
    """Outcome of a projective measurement on selected qubits.

    `probability` is the Born mass of the observed branch before collapse.
    """

    measured_indices: tuple[int, ...]
    outcome_bits: tuple[int, ...]
    probability: float


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix over n qubits."""

    n_qubits: int
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        dim = 2 ** self.n_qubits
        if m.shape != (dim, dim):
            raise ValueError(f"density matrix shape {m.shape} does not fit {self.n_qubits} qubits")
        if not np.allclose(m, m.conj().T, atol=INTERNAL_NORM_ATOL):
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > INTERNAL_NORM_ATOL:
            raise ValueError(f"density matrix trace is {np.trace(m).real!r}, not 1")
        if np.linalg.eigvalsh(m).min() < -INTERNAL_NORM_ATOL:
            raise ValueError("density matrix has a negative eigenvalue")
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)


def _check_wires(state: PureState, wires) -> list[int]:
    wires = list(wires)
    for w in wires:
        if not 1 <= w <= state.n_qubits:
            raise WireOutOfRange(f"qubit {w} is outside 1..{state.n_qubits}")
    if len(set(wires)) != len(wires):
        raise DuplicateWire(f"duplicate qubit position in {wires}")
    return wires


def new_qubit(alpha: complex, beta: complex) -> PureState:
    """Single-qubit state alpha|0> + beta|1>.

    Raises NotNormalized unless |alpha|^2 + |beta|^2 is 1 within 1e-9.
    """
    return PureState([alpha, beta])


def tensor(a: PureState, b: PureState) -> PureState:
    """Tensor product; `a`'s qubits become the leading (leftmost) qubits."""
    return PureState(np.kron(a.vector, b.vector))


def apply_unitary(state: PureState, gate, wires) -> PureState:
    """Apply `gate` to the given 1-based qubit positions, in wire order.

    `wires[k]` of the register feeds gate wire k+1.  The gate is any object
    with `arity` and a 2^arity x 2^arity `matrix`.
    """
    wires = _check_wires(state, wires)
    if gate.arity != len(wires):
        raise ArityMismatch(f"gate {gate.name} has arity {gate.arity}, got {len(wires)} wires")
    n = state.n_qubits
    k = gate.arity
    axes = [w - 1 for w in wires]
    psi = state.vector.reshape([2] * n)
    g = gate.matrix.reshape([2] * (2 * k))
    # Contract gate input axes against the selected qubit axes, then move the
    # gate output axes back into place.
    psi = np.tensordot(g, psi, axes=(list(range(k, 2 * k)), axes))
    psi = np.moveaxis(psi, list(range(k)), axes)
    return PureState(psi.reshape(-1))


def _branch_masses(state: PureState, indices: list[int]) -> np.ndarray:
    """Born mass of each joint outcome of the given qubits, in index order."""
    n = state.n_qubits
    probs = state.probabilities().reshape([2] * n)
    axes = [i - 1 for i in indices]
    rest = [a for a in range(n) if a not in axes]
    return probs.transpose(axes + rest).reshape(2 ** len(axes), -1).sum(axis=1)


def _collapse(state: PureState, indices: list[int], bits: tuple[int, ...]):
    """Project onto the branch where `indices` read `bits`; return (mass, state)."""
    n = state.n_qubits
    psi = state.vector.reshape([2] * n)
    sel = [slice(None)] * n
    for w, b in zip(indices, bits):
        sel[w - 1] = b
    sel = tuple(sel)
    branch = psi[sel]
    mass = float(np.sum(np.abs(branch) ** 2))
    if mass < ZERO_BRANCH_ATOL:
        raise ZeroProbabilityBranch(f"branch {''.join(map(str, bits))} on qubits {indices} has mass {mass!r}")
    out = np.zeros_like(psi)
    out[sel] = branch / np.sqrt(mass)
    return mass, PureState(out.reshape(-1))


def measure_qubits(state: PureState, indices, rng) -> tuple[MeasurementRecord, PureState]:
    """Measure the given qubits, sampling the joint outcome from `rng`.

    Returns the measurement record (with the branch's pre-collapse Born mass)
    and the renormalized collapsed state over all n qubits.
    """
    indices = _check_wires(state, indices)
    masses = _branch_masses(state, indices)
    k = len(indices)
    draw = rng.random()
    outcome = int(min(np.searchsorted(np.cumsum(masses), draw, side="right"), 2 ** k - 1))
    bits = tuple((outcome >> (k - 1 - i)) & 1 for i in range(k))
    mass, collapsed = _collapse(state, indices, bits)
    return MeasurementRecord(tuple(indices), bits, mass), collapsed


def force_outcome(state: PureState, indices, bits) -> tuple[MeasurementRecord, PureState]:
    """Collapse to the requested branch instead of sampling.

    Raises ZeroProbabilityBranch when that branch carries mass below 1e-15.
    """
    indices = _check_wires(state, indices)
    bits = tuple(int(b) for b in bits)
    if len(bits) != len(indices) or any(b not in (0, 1) for b in bits):
        raise ValueError(f"need one bit in {{0,1}} per measured qubit, got {bits}")
    mass, collapsed = _collapse(state, indices, bits)
    return MeasurementRecord(tuple(indices), bits, mass), collapsed


def fidelity(a: PureState, b: PureState) -> float:
    """|<a|b>|^2, insensitive to global phase."""
    if a.n_qubits != b.n_qubits:
        raise DimensionMismatch(f"states have {a.n_qubits} and {b.n_qubits} qubits")
    return float(abs(np.vdot(a.vector, b.vector)) ** 2)


def reduced_density(state: PureState, keep) -> DensityMatrix:
    """Partial trace onto the qubits in `keep` (1-based, in the given order)."""
    keep = _check_wires(state, keep)
    if not keep:
        raise ValueError("keep must name at least one qubit")
    n = state.n_qubits
    axes = [w - 1 for w in keep]
    rest = [a for a in range(n) if a not in axes]
    block = state.vector.reshape([2] * n).transpose(axes + rest).reshape(2 ** len(keep), -1)
    return DensityMatrix(len(keep), block @ block.conj().T)


def _fmt_complex(z: complex) -> str:
    re = z.real + 0.0  # fold -0.0
    im = z.imag + 0.0
    sign = "+" if im >= 0 else "-"
    return f"{re:.12g}{sign}{abs(im):.12g}i"


def state_trace(state: PureState) -> str:
    """Serialize a state, one `|bits> re<sign>imi` line per nonzero amplitude.

    Lines are sorted by basis index; amplitudes below 1e-12 are omitted and
    the parts are printed with 12 significant digits, e.g. ``|01> 0.5-0.5i``.
    """
    n = state.n_qubits
    return "\n".join(
        f"|{idx:0{n}b}> {_fmt_complex(amp)}"
        for idx, amp in enumerate(state.vector)
        if abs(amp) >= TRACE_AMP_CUTOFF
    )
