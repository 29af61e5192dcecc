"""
Color, channel and position operators
=====================================

X gates on the color register invert colors, X gates on the channel
register swap channels, and X gates on the position register move pixels.
Controls restrict any of them to one channel or to part of the image.
"""

import numpy as np

from qrmw import ClassicalImage, ImageGeometry, decode, encode
from qrmw.colorops import apply_operator, operator_to_circuit, parse_opspec
from qrmw.sim import apply_circuit, check_permutation_unitary, statevector_from_symbolic

geometry = ImageGeometry(q=4, cn=4, n=1, m=2)
image = ClassicalImage(geometry, np.arange(32).reshape(4, 2, 4) % 16)
state = encode(image)

for text in ["cc", "pc:1", "ch", "ch:01:10", "po", "po:011", "po:011:100"]:
    spec = parse_opspec(text, geometry)
    out = decode(apply_operator(state, spec))
    circuit = operator_to_circuit(spec, geometry)
    # the gate-level version must give the same state
    sv = apply_circuit(statevector_from_symbolic(state), circuit)
    deviation = sv.max_deviation(statevector_from_symbolic(apply_operator(state, spec)))
    print(f"{text:<11} gates={len(circuit)} permutation={check_permutation_unitary(circuit)} "
          f"deviation={deviation:.0e}")
    print("  channel 0 before:", image.values[0].tolist(), "after:", out.values[0].tolist())
