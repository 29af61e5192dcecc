"""Dense statevector simulator for the circuit IR.

Qubit 0 is the most significant bit of the basis index, so a state reshaped
to ``(2,) * num_qubits`` has qubit ``i`` on axis ``i``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate, QubitLayout
from .core import ImageGeometry, QRMWError
from .state import QRMWState

DEFAULT_CAP = 24
PERMUTATION_CAP = 12

_SQRT1_2 = 1.0 / np.sqrt(2.0)


class QubitCapError(QRMWError):
    """Requested simulation is larger than the configured qubit cap."""


@dataclass(frozen=True, eq=False)
class StateVector:
    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.num_qubits,):
            raise QRMWError(f"expected {1 << self.num_qubits} amplitudes, got shape {amps.shape}")
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def max_deviation(self, other: "StateVector") -> float:
        if other.num_qubits != self.num_qubits:
            raise QRMWError("statevectors have different widths")
        return float(np.max(np.abs(self.amplitudes - other.amplitudes)))


def _check_cap(num_qubits: int, cap: int) -> None:
    if num_qubits > cap:
        raise QubitCapError(f"{num_qubits} qubits exceeds the simulation cap of {cap}")


def _apply_gate(psi: np.ndarray, gate: Gate) -> None:
    """Apply ``gate`` in place to a tensor whose leading axes are qubits.

    Trailing axes (if any) are a batch of independent states.
    """
    index: list = [slice(None)] * psi.ndim
    for qubit, polarity in gate.controls:
        index[qubit] = polarity
    # integer/slice indexing yields a writable view with the control axes dropped
    sub = psi[tuple(index)]
    axis = gate.target - sum(1 for c, _ in gate.controls if c < gate.target)
    zero = [slice(None)] * sub.ndim
    one = [slice(None)] * sub.ndim
    zero[axis], one[axis] = 0, 1
    zero, one = tuple(zero), tuple(one)
    a = sub[zero].copy()
    if gate.kind == "H":
        b = sub[one].copy()
        sub[zero] = (a + b) * _SQRT1_2
        sub[one] = (a - b) * _SQRT1_2
    else:  # X and MCX
        sub[zero] = sub[one]
        sub[one] = a


def apply_circuit(state: StateVector, circuit: Circuit, cap: int = DEFAULT_CAP) -> StateVector:
    if circuit.total_qubits != state.num_qubits:
        raise QRMWError(f"circuit has {circuit.total_qubits} qubits, state has {state.num_qubits}")
    _check_cap(circuit.total_qubits, cap)
    psi = state.amplitudes.copy().reshape((2,) * state.num_qubits)
    for gate in circuit.gates:
        _apply_gate(psi, gate)
    return StateVector(state.num_qubits, psi.reshape(-1))


def zero_state(num_qubits: int) -> StateVector:
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(num_qubits, amps)


def run_statevector(circuit: Circuit, cap: int = DEFAULT_CAP) -> StateVector:
    """Simulate ``circuit`` from ``|0...0>``."""
    _check_cap(circuit.total_qubits, cap)
    return apply_circuit(zero_state(circuit.total_qubits), circuit, cap)


def statevector_from_symbolic(state: QRMWState, cap: int = DEFAULT_CAP) -> StateVector:
    g = state.geometry
    _check_cap(g.total_qubits(), cap)
    slots = np.arange(1 << g.address_bits)
    amps = np.zeros(1 << g.total_qubits(), dtype=np.complex128)
    amps[(state.table.ravel() << g.address_bits) | slots] = state.amplitude
    return StateVector(g.total_qubits(), amps)


def symbolic_from_statevector(sv: StateVector, geometry: ImageGeometry, tol: float = 1e-9) -> QRMWState:
    """Read a QRMW-form statevector back into a symbolic state.

    Every channel/position slot must carry exactly one color basis state
    with a common real positive amplitude.
    """
    if sv.num_qubits != geometry.total_qubits():
        raise QRMWError(f"statevector has {sv.num_qubits} qubits, geometry needs {geometry.total_qubits()}")
    grid = sv.amplitudes.reshape(1 << geometry.q, 1 << geometry.address_bits)
    colors = np.argmax(np.abs(grid), axis=0)
    picked = grid[colors, np.arange(grid.shape[1])]
    amplitude = float(picked[0].real)
    residual = grid.copy()
    residual[colors, np.arange(grid.shape[1])] = 0
    if np.max(np.abs(residual)) > tol or np.max(np.abs(picked - amplitude)) > tol:
        raise QRMWError("statevector is not a QRMW basis-state image")
    return QRMWState(geometry, colors.reshape(geometry.slots, geometry.rows, geometry.cols), amplitude)


def check_permutation_unitary(circuit: Circuit, cap: int = PERMUTATION_CAP, tol: float = 1e-12) -> bool:
    """True iff every computational basis state maps to a single basis state.

    Circuits without H gates are tracked as an index map over all basis
    states; anything else is propagated densely, one batch of columns at a time.
    """
    nq = circuit.total_qubits
    _check_cap(nq, cap)
    dim = 1 << nq
    if all(gate.kind != "H" for gate in circuit.gates):
        image = np.arange(dim)
        for gate in circuit.gates:
            fire = np.ones(dim, dtype=bool)
            for qubit, polarity in gate.controls:
                fire &= ((image >> (nq - 1 - qubit)) & 1) == polarity
            image ^= fire.astype(image.dtype) << (nq - 1 - gate.target)
        return np.unique(image).size == dim
    chunk = max(1, min(dim, (1 << 20) // dim))
    for start in range(0, dim, chunk):
        cols = np.arange(start, min(dim, start + chunk))
        batch = np.zeros((dim, len(cols)), dtype=np.complex128)
        batch[cols, np.arange(len(cols))] = 1.0
        psi = batch.reshape((2,) * nq + (len(cols),))
        for gate in circuit.gates:
            _apply_gate(psi, gate)
        mags = np.abs(psi.reshape(dim, len(cols)))
        peak = mags.max(axis=0)
        if np.any(np.abs(peak - 1.0) > tol):
            return False
        if np.any((mags > tol).sum(axis=0) != 1):
            return False
    return True


def _register_axes(num_qubits: int, register: range) -> tuple[int, int, int]:
    qubits = list(register)
    if not qubits:
        raise QRMWError("measurement register is empty")
    if qubits != list(range(qubits[0], qubits[0] + len(qubits))):
        raise QRMWError("measurement register must be a contiguous qubit range")
    if qubits[0] < 0 or qubits[-1] >= num_qubits:
        raise QRMWError(f"register {register} outside 0..{num_qubits - 1}")
    before = 1 << qubits[0]
    width = 1 << len(qubits)
    after = 1 << (num_qubits - qubits[-1] - 1)
    return before, width, after


def register_probabilities(sv: StateVector, register: range) -> np.ndarray:
    before, width, after = _register_axes(sv.num_qubits, register)
    probs = sv.probabilities().reshape(before, width, after).sum(axis=(0, 2))
    return probs / probs.sum()


def sample_measurement(sv: StateVector, register: range, seed: int, shots: int = 1) -> np.ndarray:
    """Born-rule samples of a contiguous register, reproducible for a given seed."""
    probs = register_probabilities(sv, register)
    rng = np.random.default_rng(seed)
    return rng.choice(len(probs), size=shots, p=probs)


def collapse(sv: StateVector, register: range, outcome: int) -> StateVector:
    """Post-measurement state after observing ``outcome`` on ``register``."""
    before, width, after = _register_axes(sv.num_qubits, register)
    if not 0 <= outcome < width:
        raise QRMWError(f"outcome {outcome} outside register range")
    amps = sv.amplitudes.reshape(before, width, after).copy()
    keep = amps[:, outcome, :].copy()
    amps[:] = 0
    weight = np.vdot(keep, keep).real
    if weight == 0:
        raise QRMWError(f"outcome {outcome} has zero probability")
    amps[:, outcome, :] = keep / np.sqrt(weight)
    return StateVector(sv.num_qubits, amps.reshape(-1))


def measure(sv: StateVector, register: range, rng: np.random.Generator) -> tuple[int, StateVector]:
    probs = register_probabilities(sv, register)
    outcome = int(rng.choice(len(probs), p=probs))
    return outcome, collapse(sv, register, outcome)


def address_register(geometry: ImageGeometry) -> range:
    return QubitLayout(geometry).address


def color_register(geometry: ImageGeometry) -> range:
    return QubitLayout(geometry).color
