"""
Encoding an image and reading pixels back
=========================================

A multi-channel image becomes one superposed state with three registers:
color, channel and position. Reading any (channel, row, column) returns the
stored color exactly.
"""

import numpy as np

from qrmw import ClassicalImage, ImageGeometry, decode, encode, retrieve_pixel

# A 4x4 RGB image with 8-bit colors. Three channels need a 2-qubit channel
# register, so the fourth slot (lam = 3) exists in the state but stays empty.
rng = np.random.default_rng(0)
geometry = ImageGeometry(q=8, cn=3, n=2, m=2)
image = ClassicalImage(geometry, rng.integers(0, 256, size=(3, 4, 4)))
print(f"{geometry.total_qubits()} qubits: q={geometry.q} b={geometry.b} n={geometry.n} m={geometry.m}")

state = encode(image)
print("amplitude of every term:", state.amplitude)

# Retrieval is deterministic: the same lookup always gives the same color.
for addr in [(0, 0, 0), (1, 2, 3), (2, 3, 1)]:
    print(addr, "->", retrieve_pixel(state, addr), "(stored", image.get(addr), ")")
print("unused slot (3, 0, 0) ->", retrieve_pixel(state, (3, 0, 0)))

# Decoding drops the unused slots and recovers the image bit for bit.
assert decode(state) == image
print("round trip exact")
