"""Domain types, parameter validation and image file I/O.

Color codes are stored MSB-first: bit ``c^0`` of a color is its most
significant bit, and the same convention is used for every register.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np


class QRMWError(ValueError):
    """Base class for every validation failure raised by this package."""


class FormatError(QRMWError):
    """Malformed QRMW text, circuit text or PPM payload."""


class PixelAddress(NamedTuple):
    lam: int
    y: int
    x: int


def channel_bits(cn: int) -> int:
    """Width of the channel register for ``cn`` channels (0 for a single channel)."""
    return 0 if cn <= 1 else math.ceil(math.log2(cn))


@dataclass(frozen=True)
class ImageGeometry:
    """Register widths and shape of a QRMW image.

    ``q`` color bits, ``cn`` channels held in a ``b``-qubit register, and a
    ``2^n x 2^m`` pixel grid.
    """

    q: int
    cn: int
    n: int
    m: int
    b: int = field(init=False)

    def __post_init__(self):
        for name in ("q", "cn", "n", "m"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
                raise QRMWError(f"{name} must be an integer, got {value!r}")
        if self.q < 1:
            raise QRMWError(f"color depth q must be >= 1, got {self.q}")
        if self.cn < 1:
            raise QRMWError(f"channel count cn must be >= 1, got {self.cn}")
        if self.n < 0 or self.m < 0:
            raise QRMWError(f"position widths must be >= 0, got n={self.n}, m={self.m}")
        object.__setattr__(self, "b", channel_bits(self.cn))

    @property
    def rows(self) -> int:
        return 1 << self.n

    @property
    def cols(self) -> int:
        return 1 << self.m

    @property
    def slots(self) -> int:
        """Number of channel slots ``2^b`` (may exceed ``cn``)."""
        return 1 << self.b

    @property
    def address_bits(self) -> int:
        return self.b + self.n + self.m

    @property
    def max_value(self) -> int:
        return (1 << self.q) - 1

    def total_qubits(self) -> int:
        return self.q + self.b + self.n + self.m

    def address_index(self, addr: PixelAddress) -> int:
        """Pack ``(lam, y, x)`` into the integer held by the channel+position registers."""
        lam, y, x = addr
        return (lam << (self.n + self.m)) | (y << self.m) | x

    def split_index(self, index: int) -> PixelAddress:
        x = index & (self.cols - 1)
        y = (index >> self.m) & (self.rows - 1)
        lam = index >> (self.n + self.m)
        return PixelAddress(lam, y, x)

    def check_address(self, addr, *, slots: bool = False) -> PixelAddress:
        """Validate an address; ``slots=True`` admits unused channel slots ``lam >= cn``."""
        lam, y, x = (int(v) for v in addr)
        lam_limit = self.slots if slots else self.cn
        if not (0 <= lam < lam_limit and 0 <= y < self.rows and 0 <= x < self.cols):
            raise QRMWError(
                f"address (lam={lam}, y={y}, x={x}) outside "
                f"{lam_limit} x {self.rows} x {self.cols}"
            )
        return PixelAddress(lam, y, x)


def geometry_new(q: int, cn: int, n: int, m: int) -> ImageGeometry:
    return ImageGeometry(q, cn, n, m)


@dataclass(frozen=True, eq=False)
class ClassicalImage:
    """Dense color codes ``f(lam, y, x)`` with shape ``(cn, 2^n, 2^m)``."""

    geometry: ImageGeometry
    values: np.ndarray

    def __post_init__(self):
        g = self.geometry
        values = np.array(self.values, dtype=np.int64, copy=True)
        expected = (g.cn, g.rows, g.cols)
        if values.size != g.cn * g.rows * g.cols:
            raise QRMWError(f"expected {g.cn * g.rows * g.cols} values, got {values.size}")
        values = values.reshape(expected)
        if values.size and (values.min() < 0 or values.max() > g.max_value):
            raise QRMWError(f"color values must lie in [0, {g.max_value}]")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, geometry: ImageGeometry) -> "ClassicalImage":
        return cls(geometry, np.zeros((geometry.cn, geometry.rows, geometry.cols), dtype=np.int64))

    def __eq__(self, other):
        if not isinstance(other, ClassicalImage):
            return NotImplemented
        return self.geometry == other.geometry and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.geometry, self.values.tobytes()))

    def __repr__(self):
        g = self.geometry
        return f"ClassicalImage(q={g.q}, cn={g.cn}, {g.rows}x{g.cols})"

    def get(self, addr) -> int:
        lam, y, x = self.geometry.check_address(addr)
        return int(self.values[lam, y, x])

    def set(self, addr, value: int) -> "ClassicalImage":
        """Return a copy with ``addr`` set to ``value``."""
        lam, y, x = self.geometry.check_address(addr)
        if not 0 <= value <= self.geometry.max_value:
            raise QRMWError(f"value {value} outside [0, {self.geometry.max_value}]")
        values = self.values.copy()
        values[lam, y, x] = value
        return ClassicalImage(self.geometry, values)

    def requantize(self, q: int) -> "ClassicalImage":
        """Keep the ``q`` most significant color bits (q=1 thresholds at mid-scale)."""
        if not 1 <= q <= self.geometry.q:
            raise QRMWError(f"cannot requantize q={self.geometry.q} to q={q}")
        g = self.geometry
        return ClassicalImage(ImageGeometry(q, g.cn, g.n, g.m), self.values >> (g.q - q))

    def nonzero_count(self) -> int:
        return int(np.count_nonzero(self.values))


def image_get(image: ClassicalImage, addr) -> int:
    return image.get(addr)


def image_set(image: ClassicalImage, addr, value: int) -> ClassicalImage:
    return image.set(addr, value)


# --- QRMW planar text format -------------------------------------------------

_MAGIC = "QRMWv1"


def emit_qrmw_text(image: ClassicalImage) -> bytes:
    g = image.geometry
    lines = [f"{_MAGIC} {g.q} {g.cn} {g.n} {g.m}"]
    for plane in image.values:
        for row in plane:
            lines.append(" ".join(str(int(v)) for v in row))
    return ("\n".join(lines) + "\n").encode("ascii")


def parse_qrmw_text(data: bytes | str) -> ClassicalImage:
    if isinstance(data, bytes):
        try:
            data = data.decode("ascii")
        except UnicodeDecodeError as exc:
            raise FormatError("QRMW text must be ASCII") from exc
    header, _, body = data.partition("\n")
    fields = header.split()
    if len(fields) != 5 or fields[0] != _MAGIC:
        raise FormatError(f"bad header {header!r}; expected '{_MAGIC} <q> <cn> <n> <m>'")
    try:
        q, cn, n, m = (int(v) for v in fields[1:])
        tokens = [int(t) for t in body.split()]
    except ValueError as exc:
        raise FormatError(f"non-integer token: {exc}") from exc
    geometry = ImageGeometry(q, cn, n, m)
    expected = cn * geometry.rows * geometry.cols
    if len(tokens) != expected:
        raise FormatError(f"count mismatch: header implies {expected} values, found {len(tokens)}")
    return ClassicalImage(geometry, np.array(tokens, dtype=np.int64))


# --- PPM ---------------------------------------------------------------------

_PPM_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def _log2_exact(value: int, what: str) -> int:
    if value < 1 or value & (value - 1):
        raise FormatError(f"{what} {value} is not a power of two")
    return value.bit_length() - 1


def import_ppm(data: bytes) -> ClassicalImage:
    """Parse a P3 or P6 PPM into a 3-channel image (R, G, B -> lam 0, 1, 2)."""
    pos = 0
    header = []
    while len(header) < 4:
        match = _PPM_TOKEN.match(data, pos)
        if match is None:
            raise FormatError("truncated PPM header")
        header.append(match.group(1))
        pos = match.end()
    magic = header[0]
    if magic not in (b"P3", b"P6"):
        raise FormatError(f"unsupported PPM magic {magic!r}")
    try:
        width, height, maxval = (int(t) for t in header[1:])
    except ValueError as exc:
        raise FormatError("non-integer PPM header field") from exc
    m = _log2_exact(width, "width")
    n = _log2_exact(height, "height")
    if maxval < 1 or maxval >= 1 << 16 or (maxval + 1) & maxval:
        raise FormatError(f"unsupported maxval {maxval}; must be 2^q - 1 with q <= 16")
    q = (maxval + 1).bit_length() - 1
    count = 3 * width * height

    if magic == b"P3":
        tokens = data[pos:].split()
        if len(tokens) < count:
            raise FormatError(f"truncated payload: need {count} samples, found {len(tokens)}")
        try:
            samples = np.array([int(t) for t in tokens[:count]], dtype=np.int64)
        except ValueError as exc:
            raise FormatError("non-integer PPM sample") from exc
    else:
        pos += 1  # single whitespace byte after maxval
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        raw = data[pos:pos + count * dtype.itemsize]
        if len(raw) < count * dtype.itemsize:
            raise FormatError("truncated payload")
        samples = np.frombuffer(raw, dtype=dtype).astype(np.int64)
    if samples.max(initial=0) > maxval:
        raise FormatError("sample exceeds maxval")
    planes = samples.reshape(height, width, 3).transpose(2, 0, 1)
    return ClassicalImage(ImageGeometry(q, 3, n, m), planes)


def export_ppm(image: ClassicalImage, *, binary: bool = True) -> bytes:
    """Write channels 0-2 of an image as PPM (P6 by default)."""
    g = image.geometry
    if g.cn < 3:
        raise QRMWError(f"PPM export needs at least 3 channels, image has {g.cn}")
    if g.q > 16:
        raise QRMWError("PPM supports at most 16-bit samples")
    rgb = image.values[:3].transpose(1, 2, 0)
    header = f"{'P6' if binary else 'P3'}\n{g.cols} {g.rows}\n{g.max_value}\n".encode("ascii")
    if binary:
        dtype = ">u2" if g.max_value > 255 else "u1"
        return header + rgb.astype(dtype).tobytes()
    rows = [" ".join(str(int(v)) for v in row.ravel()) for row in rgb]
    return header + ("\n".join(rows) + "\n").encode("ascii")
