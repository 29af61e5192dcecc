"""Symbolic QRMW state: encoding, deterministic pixel retrieval and decoding."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ClassicalImage, ImageGeometry, QRMWError


@dataclass(frozen=True, eq=False)
class QRMWState:
    """Basis-state image: one color code per (lam, y, x) slot, uniform amplitude.

    ``table`` has shape ``(2^b, 2^n, 2^m)`` and covers every channel slot,
    including the unused ones ``lam >= cn``.
    """

    geometry: ImageGeometry
    table: np.ndarray
    amplitude: float

    def __post_init__(self):
        g = self.geometry
        table = np.array(self.table, dtype=np.int64, copy=True)
        if table.size != g.slots * g.rows * g.cols:
            raise QRMWError(f"state table needs {g.slots * g.rows * g.cols} entries, got {table.size}")
        table = table.reshape(g.slots, g.rows, g.cols)
        if table.min() < 0 or table.max() > g.max_value:
            raise QRMWError(f"color codes must lie in [0, {g.max_value}]")
        if abs(self.amplitude**2 * table.size - 1.0) > 1e-9:
            raise QRMWError(f"amplitude {self.amplitude} does not normalize {table.size} slots")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def __repr__(self):
        g = self.geometry
        return f"QRMWState(q={g.q}, slots={g.slots}, {g.rows}x{g.cols}, amplitude={self.amplitude:.6g})"

    def with_table(self, table: np.ndarray) -> "QRMWState":
        return QRMWState(self.geometry, table, self.amplitude)


def uniform_amplitude(geometry: ImageGeometry) -> float:
    return 1.0 / math.sqrt(1 << geometry.address_bits)


def encode(image: ClassicalImage) -> QRMWState:
    g = image.geometry
    table = np.zeros((g.slots, g.rows, g.cols), dtype=np.int64)
    table[: g.cn] = image.values
    return QRMWState(g, table, uniform_amplitude(g))


def retrieve_pixel(state: QRMWState, addr) -> int:
    """Read the color of one slot; exact because colors live in basis states."""
    lam, y, x = state.geometry.check_address(addr, slots=True)
    return int(state.table[lam, y, x])


def decode(state: QRMWState) -> ClassicalImage:
    g = state.geometry
    return ClassicalImage(g, state.table[: g.cn])


def state_equal(a: QRMWState, b: QRMWState, tol: float = 0.0) -> bool:
    if a.geometry != b.geometry:
        raise QRMWError(f"geometry mismatch: {a.geometry} vs {b.geometry}")
    return bool(np.array_equal(a.table, b.table)) and abs(a.amplitude - b.amplitude) <= tol
