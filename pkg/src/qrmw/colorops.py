"""Register-level image operators: color complement, channel-controlled
complement, channel exchange and position exchange.

Masks are integers over the acted register, read MSB-first like the
register itself: for a 2-bit channel register, mask ``0b10`` targets the
first channel qubit. A selector restricts a CH/PO operator to addresses
whose *unmasked* register bits equal the selector's; masked bits of the
selector are ignored.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import MCX, Circuit, QubitLayout, X
from .core import ImageGeometry, QRMWError
from .state import QRMWState

KINDS = ("CC", "PC", "CH", "PO")


@dataclass(frozen=True)
class OperatorSpec:
    kind: str
    mask: int | None = None  # None: every bit of the acted register
    selector: int | None = None  # PC: channel k; CH/PO: control pattern

    def __post_init__(self):
        if self.kind not in KINDS:
            raise QRMWError(f"operator kind must be one of {KINDS}, got {self.kind!r}")
        if self.kind == "PC" and self.selector is None:
            raise QRMWError("PC needs a channel selector k")
        if self.kind == "CC" and self.selector is not None:
            raise QRMWError("CC takes no selector")


def _register_width(kind: str, g: ImageGeometry) -> int:
    if kind in ("CC", "PC"):
        return g.q
    if kind == "CH":
        return g.b
    return g.n + g.m


def _resolve_mask(mask: int | None, width: int) -> int:
    full = (1 << width) - 1
    if mask is None:
        mask = full
    if mask == 0 or mask & ~full:
        raise QRMWError(f"mask {mask:#b} must be a non-empty subset of {width} register bits")
    return mask


def _resolve_selector(selector: int | None, width: int) -> int | None:
    if selector is not None and not 0 <= selector < (1 << width):
        raise QRMWError(f"selector {selector} outside a {width}-bit register")
    return selector


def _relabel(n: int, mask: int, selector: int | None) -> np.ndarray:
    """Index map of the (optionally selected) XOR relabeling on ``n`` labels."""
    labels = np.arange(n)
    flipped = labels ^ mask
    if selector is None:
        return flipped
    hit = (labels & ~mask) == (selector & ~mask)
    return np.where(hit, flipped, labels)


def apply_ucc(state: QRMWState, mask: int | None = None) -> QRMWState:
    """Complement the masked color bits everywhere (full mask: f -> 2^q - 1 - f)."""
    mask = _resolve_mask(mask, state.geometry.q)
    return state.with_table(state.table ^ mask)


def apply_upc(state: QRMWState, k: int, mask: int | None = None) -> QRMWState:
    """Complement the masked color bits of channel slot ``k`` only."""
    g = state.geometry
    if not 0 <= k < g.slots:
        raise QRMWError(f"channel k={k} outside 0..{g.slots - 1}")
    mask = _resolve_mask(mask, g.q)
    table = state.table.copy()
    table[k] ^= mask
    return state.with_table(table)


def apply_uch(state: QRMWState, mask: int | None = None, selector: int | None = None) -> QRMWState:
    """Move channel slot ``lam`` to ``lam ^ mask`` (only where the selector matches)."""
    g = state.geometry
    if g.b == 0:
        raise QRMWError("single-channel image has no channel register")
    mask = _resolve_mask(mask, g.b)
    selector = _resolve_selector(selector, g.b)
    table = np.empty_like(state.table)
    table[_relabel(g.slots, mask, selector)] = state.table
    return state.with_table(table)


def apply_upo(state: QRMWState, mask: int | None = None, selector: int | None = None) -> QRMWState:
    """Move pixel ``yx`` to ``yx ^ mask`` (only where the selector matches).

    The full mask is a point reflection ``(y, x) -> (2^n-1-y, 2^m-1-x)``;
    a mask on the column bits alone mirrors the image horizontally.
    """
    g = state.geometry
    width = g.n + g.m
    if width == 0:
        raise QRMWError("single-pixel image has no position register")
    mask = _resolve_mask(mask, width)
    selector = _resolve_selector(selector, width)
    flat = state.table.reshape(g.slots, -1)
    out = np.empty_like(flat)
    out[:, _relabel(flat.shape[1], mask, selector)] = flat
    return state.with_table(out.reshape(state.table.shape))


def apply_operator(state: QRMWState, spec: OperatorSpec) -> QRMWState:
    if spec.kind == "CC":
        return apply_ucc(state, spec.mask)
    if spec.kind == "PC":
        return apply_upc(state, spec.selector, spec.mask)
    if spec.kind == "CH":
        return apply_uch(state, spec.mask, spec.selector)
    return apply_upo(state, spec.mask, spec.selector)


def _bits(value: int, width: int) -> list[int]:
    return [(value >> (width - 1 - i)) & 1 for i in range(width)]


def operator_to_circuit(spec: OperatorSpec, geometry: ImageGeometry) -> Circuit:
    """X gates on the masked qubits, controlled by the selector pattern if one is given."""
    g = geometry
    layout = QubitLayout(g)
    width = _register_width(spec.kind, g)
    if width == 0:
        raise QRMWError(f"{spec.kind} acts on an empty register for this geometry")
    mask = _resolve_mask(spec.mask, width)

    if spec.kind in ("CC", "PC"):
        register = layout.color
        controls = []
        if spec.kind == "PC":
            k = spec.selector
            if not 0 <= k < g.slots:
                raise QRMWError(f"channel k={k} outside 0..{g.slots - 1}")
            controls = list(zip(layout.channel, _bits(k, g.b)))
    else:
        register = layout.channel if spec.kind == "CH" else layout.position
        controls = []
        selector = _resolve_selector(spec.selector, width)
        if selector is not None:
            controls = [(qubit, bit) for qubit, bit, m in zip(register, _bits(selector, width), _bits(mask, width))
                        if not m]

    gates = [MCX(controls, qubit) if controls else X(qubit)
             for qubit, m in zip(register, _bits(mask, width)) if m]
    return Circuit(g.total_qubits(), tuple(gates))


def parse_opspec(text: str, geometry: ImageGeometry) -> OperatorSpec:
    """Parse ``cc[:mask]``, ``pc:<k>[:mask]``, ``ch[:mask[:selector]]`` or ``po[:mask[:selector]]``.

    Masks and selectors are bit strings as wide as the acted register; an
    empty mask field means the full register.
    """
    parts = text.strip().split(":")
    kind = parts[0].upper()
    if kind not in KINDS:
        raise QRMWError(f"unknown operator {parts[0]!r}")
    width = _register_width(kind, geometry)

    def bitfield(token: str, what: str) -> int | None:
        if token == "":
            return None
        if len(token) != width or set(token) - set("01"):
            raise QRMWError(f"{what} {token!r} must be a {width}-character bit string")
        return int(token, 2)

    if kind == "PC":
        if len(parts) not in (2, 3):
            raise QRMWError("expected pc:<k>[:mask]")
        try:
            k = int(parts[1])
        except ValueError as exc:
            raise QRMWError(f"bad channel index {parts[1]!r}") from exc
        mask = bitfield(parts[2], "mask") if len(parts) == 3 else None
        return OperatorSpec("PC", mask, k)
    max_parts = 2 if kind == "CC" else 3
    if len(parts) > max_parts:
        raise QRMWError(f"too many fields in {text!r}")
    mask = bitfield(parts[1], "mask") if len(parts) > 1 else None
    selector = bitfield(parts[2], "selector") if len(parts) > 2 else None
    return OperatorSpec(kind, mask, selector)
