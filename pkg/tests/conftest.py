import contextlib
import time

import numpy as np
import pytest

from qrmw.core import ClassicalImage, ImageGeometry
from qrmw.samples import figure4_image

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@contextlib.contextmanager
def criterion(label: str, max_seconds: float | None = None):
    """Record PASS/FAIL for one acceptance criterion and enforce its runtime."""
    start = time.perf_counter()
    info: dict[str, str] = {}
    try:
        yield info
        elapsed = time.perf_counter() - start
        if max_seconds is not None:
            assert elapsed < max_seconds, f"took {elapsed:.2f}s, limit {max_seconds}s"
    except BaseException as exc:
        _ACCEPTANCE.append((label, False, f"{type(exc).__name__}: {exc}"))
        raise
    elapsed = time.perf_counter() - start
    detail = info.get("detail", "")
    _ACCEPTANCE.append((label, True, f"{detail} ({elapsed:.2f}s)".strip()))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")


@pytest.fixture
def sample_image():
    return figure4_image()


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def gray_images() -> dict[str, ClassicalImage]:
    """4x4, 3-channel, q=8 gray images (R=G=B) with 4, 8, 1 and 48 color groups."""
    g = ImageGeometry(q=8, cn=3, n=2, m=2)
    y, x = np.mgrid[0:4, 0:4]
    quadrant = (y >> 1) * 2 + (x >> 1)
    a = np.array([40, 90, 160, 220])[quadrant]
    b = np.array([10, 30, 50, 70, 90, 110, 130, 150])[quadrant * 2 + (x & 1)]
    c = np.full((4, 4), 128)
    gray = lambda plane: np.stack([plane] * 3)
    d = np.arange(1, 49).reshape(3, 4, 4)
    return {
        "a": ClassicalImage(g, gray(a)),
        "b": ClassicalImage(g, gray(b)),
        "c": ClassicalImage(g, gray(c)),
        "d": ClassicalImage(g, d),
    }


def random_geometry(rng, max_qubits=16, max_q=4, max_cn=4, max_pos=10) -> ImageGeometry:
    while True:
        q = int(rng.integers(1, max_q + 1))
        cn = int(rng.integers(1, max_cn + 1))
        pos = int(rng.integers(0, max_pos + 1))
        n = int(rng.integers(0, pos + 1))
        g = ImageGeometry(q, cn, n, pos - n)
        if g.total_qubits() <= max_qubits:
            return g


def random_structured_image(rng, g: ImageGeometry) -> ClassicalImage:
    """Random colors with repeats, some zeros and some constant full columns."""
    shape = (g.cn, g.rows, g.cols)
    palette = rng.integers(0, g.max_value + 1, size=int(rng.integers(1, 6)))
    values = rng.choice(palette, size=shape)
    values = np.where(rng.random(shape) < rng.random(), values, 0)
    for lam in range(g.cn):
        for x in range(g.cols):
            if rng.random() < 0.3:
                values[lam, :, x] = rng.choice(palette)
    return ClassicalImage(g, values)
