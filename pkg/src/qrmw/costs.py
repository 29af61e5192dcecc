"""Qubit counts and preparation-cost bounds for QRMW, MCQI and QMCR.

All formulas are for 4-channel ``2^n x 2^n`` images with ``2^q`` color
levels. Preparation costs are the expressions inside the O(.) bounds,
evaluated as integers; they are operand counts, not gate counts.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import QRMWError, channel_bits

MODELS = ("QRMW", "MCQI", "QMCR")


@dataclass(frozen=True)
class ModelCostReport:
    model: str
    qubits: int
    arbitrary_qubits: int
    step1_cost: int
    step2_cost: int

    @property
    def total_qubits(self) -> int:
        return self.qubits + self.arbitrary_qubits


def _check(model: str, q: int, n: int) -> str:
    model = model.upper()
    if model not in MODELS:
        raise QRMWError(f"unknown model {model!r}; expected one of {MODELS}")
    if q < 1 or n < 1:
        raise QRMWError(f"need q >= 1 and n >= 1, got q={q}, n={n}")
    return model


def _qubits(model: str, q: int, n: int) -> tuple[int, int]:
    if model == "QRMW":
        return q + 2 + 2 * n, 0
    if model == "MCQI":
        return 3 + 2 * n, 0
    return 4 * q + 2 * n, 4 * q


def prep_cost(model: str, q: int, n: int) -> tuple[int, int]:
    """Dominant operand counts ``(step1, step2)`` of the preparation procedure."""
    model = _check(model, q, n)
    if model == "QRMW":
        return q + 2 + 2 * n, q * 2 ** (2 + 2 * n)
    if model == "MCQI":
        return 3 + 2 * n, 2 ** (3 + 4 * n)
    return 4 * q + 2 * n, q * n * 2 ** (2 + 2 * n)


def qubit_counts(model: str, q: int, n: int) -> ModelCostReport:
    model = _check(model, q, n)
    qubits, arbitrary = _qubits(model, q, n)
    step1, step2 = prep_cost(model, q, n)
    return ModelCostReport(model, qubits, arbitrary, step1, step2)


def generalized_qrmw_qubits(q: int, cn: int, n: int, m: int) -> int:
    """QRMW register width for ``cn`` channels on a ``2^n x 2^m`` grid."""
    if q < 1 or cn < 1 or n < 0 or m < 0:
        raise QRMWError("invalid geometry parameters")
    return q + channel_bits(cn) + n + m


def compare_table(q: int, n: int) -> str:
    """Fixed-width text table of qubit counts and preparation costs."""
    header = f"{'model':<6} {'qubits':>8} {'arbitrary':>10} {'total':>8} {'step1':>8} {'step2':>14}"
    lines = [f"q={q} n={n} (4 channels, {2 ** n}x{2 ** n})", header, "-" * len(header)]
    for model in MODELS:
        r = qubit_counts(model, q, n)
        lines.append(f"{r.model:<6} {r.qubits:>8} {r.arbitrary_qubits:>10} {r.total_qubits:>8} "
                     f"{r.step1_cost:>8} {r.step2_cost:>14}")
    return "\n".join(lines) + "\n"
