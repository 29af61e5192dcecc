"""
Compressing the preparation circuit
===================================

Pixels that share a color can be written by one group of gates whose
controls skip the address bits that vary. Grouping equal-color columns
turns 72 color-setting operations into 9; an exact search finds 5.
"""

from qrmw import compress_image, figure4_image, minimize_image
from qrmw.compress import build_compressed_circuit
from qrmw.sim import run_statevector, statevector_from_symbolic
from qrmw.state import encode

# 8x4 image with four channels; nine full columns are set to 255.
image = figure4_image()
print("nonzero entries:", image.nonzero_count())

for mode in ("paper", "exact"):
    implicants = minimize_image(image, mode)
    print(mode, [imp.pattern for imp in implicants])
    print(mode, compress_image(image, mode).to_json())

# Check the compressed circuit on a 1-bit copy (8 qubits keeps it quick).
small = image.requantize(1)
target = statevector_from_symbolic(encode(small))
for mode in ("paper", "exact"):
    circuit = build_compressed_circuit(small, mode)
    print(mode, "gates:", len(circuit), "deviation:", run_statevector(circuit).max_deviation(target))
