"""Gate-level IR and synthesis of the QRMW preparation circuit.

Global qubit order: color register (qubit 0 is the color MSB), channel
register, row register, column register, each MSB first. With that order the
computational basis index of a prepared term is
``color * 2^(b+n+m) + lam * 2^(n+m) + y * 2^m + x``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import ClassicalImage, FormatError, ImageGeometry, PixelAddress, QRMWError

GATE_KINDS = ("H", "X", "MCX")
PREP_MODES = ("strict", "skip-zero")


@dataclass(frozen=True)
class Gate:
    kind: str
    target: int
    controls: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise QRMWError(f"unknown gate kind {self.kind!r}")
        controls = tuple((int(c), int(p)) for c, p in self.controls)
        if self.kind != "MCX" and controls:
            raise QRMWError(f"{self.kind} gate takes no controls")
        qubits = [c for c, _ in controls]
        if len(set(qubits)) != len(qubits):
            raise QRMWError(f"duplicate control qubits in {controls}")
        if self.target in qubits:
            raise QRMWError(f"target {self.target} is also a control")
        if any(p not in (0, 1) for _, p in controls):
            raise QRMWError("control polarity must be 0 or 1")
        object.__setattr__(self, "controls", controls)

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target, *(c for c, _ in self.controls))


def H(target: int) -> Gate:
    return Gate("H", target)


def X(target: int) -> Gate:
    return Gate("X", target)


def MCX(controls: Iterable[tuple[int, int]], target: int) -> Gate:
    """Multi-controlled X; with no controls this is emitted as a plain X."""
    controls = tuple(controls)
    return Gate("MCX", target, controls) if controls else Gate("X", target)


@dataclass(frozen=True)
class Circuit:
    total_qubits: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        gates = tuple(self.gates)
        for gate in gates:
            if min(gate.qubits) < 0 or max(gate.qubits) >= self.total_qubits:
                raise QRMWError(f"{gate} touches a qubit outside 0..{self.total_qubits - 1}")
        object.__setattr__(self, "gates", gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.total_qubits != self.total_qubits:
            raise QRMWError("cannot concatenate circuits of different widths")
        return Circuit(self.total_qubits, self.gates + other.gates)

    def __len__(self):
        return len(self.gates)


@dataclass(frozen=True)
class QubitLayout:
    """Qubit index ranges of the four registers for one geometry."""

    geometry: ImageGeometry

    @property
    def color(self) -> range:
        return range(0, self.geometry.q)

    @property
    def channel(self) -> range:
        g = self.geometry
        return range(g.q, g.q + g.b)

    @property
    def row(self) -> range:
        g = self.geometry
        return range(g.q + g.b, g.q + g.b + g.n)

    @property
    def col(self) -> range:
        g = self.geometry
        return range(g.q + g.b + g.n, g.total_qubits())

    @property
    def address(self) -> range:
        """Channel and position registers together."""
        g = self.geometry
        return range(g.q, g.total_qubits())

    @property
    def position(self) -> range:
        g = self.geometry
        return range(g.q + g.b, g.total_qubits())


def _bits_msb_first(value: int, width: int) -> list[int]:
    return [(value >> (width - 1 - i)) & 1 for i in range(width)]


def address_controls(addr: PixelAddress, geometry: ImageGeometry) -> tuple[tuple[int, int], ...]:
    """Controls on every channel/position qubit matching ``addr``."""
    index = geometry.address_index(addr)
    layout = QubitLayout(geometry)
    return tuple(zip(layout.address, _bits_msb_first(index, geometry.address_bits)))


def color_flips(color: int, controls, geometry: ImageGeometry) -> list[Gate]:
    """One MCX per set bit of ``color``, all sharing ``controls``."""
    return [MCX(controls, qubit) for qubit, bit in zip(range(geometry.q), _bits_msb_first(color, geometry.q)) if bit]


def h_layer(geometry: ImageGeometry) -> list[Gate]:
    return [H(qubit) for qubit in QubitLayout(geometry).address]


def omega_gates(addr, f: int, geometry: ImageGeometry) -> list[Gate]:
    """Gates that write color ``f`` into the slot ``addr`` and nowhere else."""
    addr = geometry.check_address(addr, slots=True)
    if not 0 <= f <= geometry.max_value:
        raise QRMWError(f"color {f} outside [0, {geometry.max_value}]")
    return color_flips(f, address_controls(addr, geometry), geometry)


def _check_mode(mode: str, allowed: Sequence[str]) -> None:
    if mode not in allowed:
        raise QRMWError(f"mode must be one of {', '.join(allowed)}; got {mode!r}")


def build_preparation_circuit(image: ClassicalImage, mode: str = "strict") -> Circuit:
    """Hadamard layer on the address registers, then one Omega group per slot.

    Groups run in lam, y, x order. A zero color contributes no gates in
    either mode; ``skip-zero`` only differs in that such slots are never
    visited.
    """
    _check_mode(mode, PREP_MODES)
    g = image.geometry
    gates = h_layer(g)
    for lam in range(g.cn):
        for y in range(g.rows):
            for x in range(g.cols):
                f = int(image.values[lam, y, x])
                if f == 0 and mode == "skip-zero":
                    continue
                gates.extend(omega_gates(PixelAddress(lam, y, x), f, g))
    return Circuit(g.total_qubits(), tuple(gates))


@dataclass(frozen=True)
class CountReport:
    h_gates: int
    omega_ops: int
    mcx_gates: int
    total_gates: int
    x_gates: int = 0


def _count_circuit(circuit: Circuit) -> CountReport:
    h = sum(g.kind == "H" for g in circuit.gates)
    x = sum(g.kind == "X" for g in circuit.gates)
    mcx = sum(g.kind == "MCX" for g in circuit.gates)
    # An Omega group is a maximal run of MCX gates sharing one control set.
    groups = 0
    previous = None
    for gate in circuit.gates:
        key = gate.controls if gate.kind == "MCX" else None
        if key is not None and key != previous:
            groups += 1
        previous = key
    return CountReport(h, groups, mcx, len(circuit.gates), x)


def count_ops(subject: Circuit | ClassicalImage, mode: str = "skip-zero") -> CountReport:
    """Operator and gate counts of a circuit, or of an image's preparation circuit.

    For an image, ``omega_ops`` is ``cn * 2^(n+m)`` in strict mode and the
    number of nonzero entries in skip-zero mode. For a circuit, it counts
    runs of consecutive MCX gates with identical controls.
    """
    if isinstance(subject, Circuit):
        return _count_circuit(subject)
    _check_mode(mode, PREP_MODES)
    g = subject.geometry
    values = subject.values
    omega = values.size if mode == "strict" else int((values != 0).sum())
    mcx = sum(int(v).bit_count() for v in values.ravel())
    h = g.address_bits
    return CountReport(h, omega, mcx, h + mcx)


# --- circuit text format -----------------------------------------------------

_CIRCUIT_MAGIC = "QCIRCv1"


def _gate_line(gate: Gate) -> str:
    if gate.kind == "MCX":
        controls = " ".join(f"{c}:{p}" for c, p in gate.controls)
        return f"MCX {controls} -> {gate.target}"
    return f"{gate.kind} {gate.target}"


def emit_circuit_text(circuit: Circuit) -> bytes:
    lines = [f"{_CIRCUIT_MAGIC} {circuit.total_qubits}"]
    lines.extend(_gate_line(g) for g in circuit.gates)
    return ("\n".join(lines) + "\n").encode("ascii")


def parse_circuit_text(data: bytes | str) -> Circuit:
    if isinstance(data, bytes):
        data = data.decode("ascii", errors="replace")
    lines = [line.strip() for line in data.splitlines()]
    lines = [line for line in lines if line]
    if not lines:
        raise FormatError("empty circuit text")
    header = lines[0].split()
    if len(header) != 2 or header[0] != _CIRCUIT_MAGIC or not header[1].isdigit():
        raise FormatError(f"bad circuit header {lines[0]!r}")
    gates = []
    for lineno, line in enumerate(lines[1:], start=2):
        tokens = line.split()
        try:
            if tokens[0] in ("H", "X") and len(tokens) == 2:
                gates.append(Gate(tokens[0], int(tokens[1])))
            elif tokens[0] == "MCX" and len(tokens) >= 4 and tokens[-2] == "->":
                controls = []
                for token in tokens[1:-2]:
                    qubit, _, polarity = token.partition(":")
                    controls.append((int(qubit), int(polarity)))
                gates.append(Gate("MCX", int(tokens[-1]), tuple(controls)))
            else:
                raise FormatError(f"line {lineno}: cannot parse {line!r}")
        except (ValueError, QRMWError) as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"line {lineno}: {exc}") from exc
    try:
        return Circuit(int(header[1]), tuple(gates))
    except QRMWError as exc:
        raise FormatError(str(exc)) from exc
