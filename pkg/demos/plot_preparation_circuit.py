"""
Building and simulating the preparation circuit
===============================================

The circuit puts Hadamards on the address registers, then writes each
color with multi-controlled X gates. Simulating it reproduces the symbolic
state, and measuring the address register gives a uniformly random pixel
together with its color.
"""

from qrmw import ClassicalImage, ImageGeometry, build_preparation_circuit, count_ops, encode
from qrmw.circuit import emit_circuit_text
from qrmw.sim import (
    address_register,
    collapse,
    color_register,
    register_probabilities,
    run_statevector,
    sample_measurement,
    statevector_from_symbolic,
)

# A 2x2, 4-channel image with 2-bit colors: 2 + 2 + 1 + 1 = 6 qubits.
geometry = ImageGeometry(q=2, cn=4, n=1, m=1)
image = ClassicalImage(geometry, [[[0, 1], [2, 3]], [[3, 3], [0, 0]], [[1, 0], [0, 1]], [[2, 2], [2, 2]]])

circuit = build_preparation_circuit(image, "skip-zero")
print(emit_circuit_text(circuit).decode().splitlines()[:6])
print(count_ops(circuit))

# The simulated statevector equals the symbolic one.
sv = run_statevector(circuit)
print("max deviation:", sv.max_deviation(statevector_from_symbolic(encode(image))))

# Every address is equally likely.
print("address probabilities:", register_probabilities(sv, address_register(geometry)).round(4))

# Sampling is seeded, so repeated runs agree.
shots = sample_measurement(sv, address_register(geometry), seed=1, shots=8)
print("sampled addresses:", shots)

# After fixing an address the color register holds that pixel's color with certainty.
index = geometry.address_index((1, 0, 1))
post = collapse(sv, address_register(geometry), index)
print("color distribution at (1, 0, 1):", register_probabilities(post, color_register(geometry)))
