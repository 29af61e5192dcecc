"""Quantum representation of multi-wavelength images (QRMW).

Classical images are encoded as basis-state superpositions over color,
channel and position registers. The package synthesizes and simulates
preparation circuits, compresses them by Boolean minimization, applies
register-level image operators and compares qubit/cost models.
"""
from .core import (
    ClassicalImage,
    FormatError,
    ImageGeometry,
    PixelAddress,
    QRMWError,
    emit_qrmw_text,
    export_ppm,
    geometry_new,
    image_get,
    image_set,
    import_ppm,
    parse_qrmw_text,
)
from .state import QRMWState, decode, encode, retrieve_pixel, state_equal
from .circuit import (
    Circuit,
    CountReport,
    Gate,
    QubitLayout,
    build_preparation_circuit,
    count_ops,
    emit_circuit_text,
    omega_gates,
    parse_circuit_text,
)
from .sim import (
    StateVector,
    check_permutation_unitary,
    run_statevector,
    sample_measurement,
    statevector_from_symbolic,
    symbolic_from_statevector,
)
from .compress import (
    CompressionReport,
    Implicant,
    build_compressed_circuit,
    compress_image,
    compression_ratio,
    group_onsets,
    minimize_exact,
    minimize_image,
    minimize_paper_mode,
)
from .colorops import (
    OperatorSpec,
    apply_operator,
    apply_uch,
    apply_ucc,
    apply_upc,
    apply_upo,
    operator_to_circuit,
)
from .costs import ModelCostReport, compare_table, generalized_qrmw_qubits, prep_cost, qubit_counts
from .samples import figure4_image

__version__ = "0.1.0"
