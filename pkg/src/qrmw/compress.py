"""Compressed preparation: merge equal-color slots into implicants.

Each implicant becomes one Omega group whose MCX gates are controlled only
on the implicant's fixed address bits, so a single group writes its color
into every slot the cube covers.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, QubitLayout, color_flips, h_layer
from .core import ClassicalImage, ImageGeometry, PixelAddress, QRMWError
from .minimize import DEFAULT_MAX_WORK, cube_covers, cube_minterms, minimize

COMPRESS_MODES = ("exact", "paper")


@dataclass(frozen=True, order=True)
class Implicant:
    """Address cube with a shared color.

    ``pattern`` is MSB-first over the channel+position bits, using
    ``'0'``, ``'1'`` and ``'-'`` for don't-care.
    """

    color: int
    pattern: str

    def __post_init__(self):
        if set(self.pattern) - set("01-"):
            raise QRMWError(f"bad implicant pattern {self.pattern!r}")

    @property
    def width(self) -> int:
        return len(self.pattern)

    @classmethod
    def from_cube(cls, cube: tuple[int, int], width: int, color: int) -> "Implicant":
        value, mask = cube
        chars = []
        for i in range(width - 1, -1, -1):
            chars.append("-" if mask >> i & 1 else str(value >> i & 1))
        return cls(color, "".join(chars))

    def cube(self) -> tuple[int, int]:
        value = mask = 0
        for ch in self.pattern:
            value <<= 1
            mask <<= 1
            if ch == "-":
                mask |= 1
            elif ch == "1":
                value |= 1
        return value, mask

    def covers(self, minterm: int) -> bool:
        return cube_covers(self.cube(), minterm)

    def minterms(self) -> list[int]:
        return sorted(cube_minterms(self.cube()))

    def fixed_bits(self) -> list[tuple[int, int]]:
        """``(offset, bit)`` for every fixed position, offset 0 being the MSB."""
        return [(i, int(ch)) for i, ch in enumerate(self.pattern) if ch != "-"]


def group_onsets(image: ClassicalImage) -> dict[int, frozenset[int]]:
    """Nonzero colors mapped to the address indices that carry them."""
    g = image.geometry
    flat = image.values.reshape(-1)  # (lam, y, x) order matches address_index for lam < cn
    groups: dict[int, set[int]] = {}
    for index in np.flatnonzero(flat):
        groups.setdefault(int(flat[index]), set()).add(int(index))
    return {color: frozenset(groups[color]) for color in sorted(groups)}


def unused_slot_minterms(geometry: ImageGeometry) -> range:
    """Address indices of channel slots ``lam >= cn``."""
    per_channel = geometry.rows * geometry.cols
    return range(geometry.cn * per_channel, geometry.slots * per_channel)


def minimize_exact(onset, width: int, *, color: int = 1, dont_cares=(), initial=None,
                   max_work: int = DEFAULT_MAX_WORK) -> list[Implicant]:
    """Fewest disjoint implicants whose union is exactly ``onset``.

    ``dont_cares`` may additionally be covered. ``initial`` is an optional
    known partition (implicants) that the search must beat; if the work
    budget runs out the best partition found is returned.
    """
    onset = list(onset)
    if not onset:
        raise QRMWError("onset must be non-empty")
    seed = None if initial is None else [imp.cube() for imp in initial]
    cubes, _ = minimize(onset, width, dont_cares, seed, max_work)
    return sorted(Implicant.from_cube(c, width, color) for c in cubes)


def minimize_paper_mode(image: ClassicalImage) -> list[Implicant]:
    """One implicant per (channel, column) whose whole column shares a nonzero color.

    Everything else stays a singleton implicant.
    """
    g = image.geometry
    width = g.address_bits
    out = []
    for lam in range(g.cn):
        for x in range(g.cols):
            column = image.values[lam, :, x]
            if column[0] != 0 and np.all(column == column[0]):
                value = (lam << (g.n + g.m)) | x
                mask = ((1 << g.n) - 1) << g.m
                out.append(Implicant.from_cube((value, mask), width, int(column[0])))
                continue
            for y in np.flatnonzero(column):
                index = g.address_index(PixelAddress(lam, int(y), x))
                out.append(Implicant.from_cube((index, 0), width, int(column[y])))
    return sorted(out)


def minimize_image(image: ClassicalImage, mode: str = "exact", *, free_unused_slots: bool = False,
                   max_work: int = DEFAULT_MAX_WORK) -> list[Implicant]:
    """Implicants for the compressed preparation of ``image``.

    Exact mode minimizes each color separately, starting from the paper-mode
    grouping, so it never needs more implicants than paper mode.

    With ``free_unused_slots`` the channel slots ``lam >= cn`` are treated
    as don't-cares in exact mode: the decoded image is unchanged but those
    slots may end up holding a nonzero color in the prepared state.
    """
    if mode not in COMPRESS_MODES:
        raise QRMWError(f"mode must be one of {', '.join(COMPRESS_MODES)}; got {mode!r}")
    if mode == "paper":
        return minimize_paper_mode(image)
    g = image.geometry
    free = unused_slot_minterms(g) if free_unused_slots else ()
    seeds: dict[int, list[Implicant]] = {}
    for imp in minimize_paper_mode(image):
        seeds.setdefault(imp.color, []).append(imp)
    out = []
    for color, onset in group_onsets(image).items():
        out.extend(minimize_exact(onset, g.address_bits, color=color, dont_cares=free,
                                  initial=seeds[color], max_work=max_work))
    return sorted(out)


def implicant_circuit(implicants, geometry: ImageGeometry) -> Circuit:
    layout = QubitLayout(geometry)
    gates = h_layer(geometry)
    for imp in implicants:
        if imp.width != geometry.address_bits:
            raise QRMWError(f"implicant width {imp.width} != address width {geometry.address_bits}")
        controls = [(layout.address[offset], bit) for offset, bit in imp.fixed_bits()]
        gates.extend(color_flips(imp.color, controls, geometry))
    return Circuit(geometry.total_qubits(), tuple(gates))


def build_compressed_circuit(image: ClassicalImage, mode: str = "exact", *,
                             free_unused_slots: bool = False) -> Circuit:
    implicants = minimize_image(image, mode, free_unused_slots=free_unused_slots)
    return implicant_circuit(implicants, image.geometry)


@dataclass(frozen=True)
class CompressionReport:
    ops_before: int
    ops_after: int
    ratio_percent: float

    def to_json(self) -> str:
        return (f'{{"ops_before":{self.ops_before},"ops_after":{self.ops_after},'
                f'"ratio_percent":{self.ratio_percent:.2f}}}')


def compression_ratio(ops_before: int, ops_after: int) -> CompressionReport:
    if ops_before <= 0:
        raise QRMWError("ops_before must be positive")
    if not 0 <= ops_after <= ops_before:
        raise QRMWError(f"need 0 <= ops_after <= ops_before, got {ops_after}/{ops_before}")
    return CompressionReport(ops_before, ops_after, (1.0 - ops_after / ops_before) * 100.0)


def compress_image(image: ClassicalImage, mode: str = "exact", *,
                   free_unused_slots: bool = False) -> CompressionReport:
    """Compression of the skip-zero preparation (nonzero entries) to implicant groups."""
    before = image.nonzero_count()
    if before == 0:
        raise QRMWError("image has no nonzero entries; nothing to compress")
    after = len(minimize_image(image, mode, free_unused_slots=free_unused_slots))
    return compression_ratio(before, after)
