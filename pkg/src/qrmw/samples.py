"""Reference images with known structure."""
from __future__ import annotations

import numpy as np

from .core import ClassicalImage, ImageGeometry

# (channel, column) of the nine full-height groups of color 255 in the
# 8x4, 4-channel grouping example. Group order follows its labels 1..9.
COLUMN_GROUPS = (
    (0, 0),  # 1 red
    (1, 1),  # 2 green
    (2, 2),  # 3 blue
    (0, 3),  # 4 red2
    (1, 3),  # 5 green2
    (3, 0),  # 6 alpha1
    (3, 1),  # 7 alpha2
    (3, 2),  # 8 alpha2
    (3, 3),  # 9 alpha4
)


def figure4_image() -> ClassicalImage:
    """8 rows x 4 columns, 4 channels, q=8: 72 entries of 255, the rest 0."""
    geometry = ImageGeometry(q=8, cn=4, n=3, m=2)
    values = np.zeros((4, 8, 4), dtype=np.int64)
    for lam, x in COLUMN_GROUPS:
        values[lam, :, x] = 255
    return ClassicalImage(geometry, values)


def random_image(geometry: ImageGeometry, rng: np.random.Generator, density: float = 1.0) -> ClassicalImage:
    """Uniform random colors; ``density`` is the chance an entry is drawn rather than left 0."""
    shape = (geometry.cn, geometry.rows, geometry.cols)
    values = rng.integers(0, geometry.max_value + 1, size=shape)
    if density < 1.0:
        values = np.where(rng.random(shape) < density, values, 0)
    return ClassicalImage(geometry, values)
