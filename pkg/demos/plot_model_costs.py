"""
Qubit counts and preparation cost
=================================

Compares register widths and the dominant preparation terms of QRMW with
two earlier RGB models, and shows how the channel register grows only
logarithmically with the number of channels.
"""

from qrmw.costs import compare_table, generalized_qrmw_qubits, prep_cost

print(compare_table(q=8, n=2))

for n in range(1, 6):
    qrmw = prep_cost("QRMW", 8, n)[1]
    qmcr = prep_cost("QMCR", 8, n)[1]
    print(f"n={n}: QRMW/QMCR step-2 ratio = {qrmw / qmcr:.3f}")

# one extra qubit each time the channel count doubles
for cn in (1, 2, 3, 4, 8, 16, 31, 64):
    print(f"cn={cn:>2}: {generalized_qrmw_qubits(8, cn, 2, 2)} qubits for a 4x4, 8-bit image")
