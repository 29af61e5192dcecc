import numpy as np
import pytest

from qrmw.colorops import (
    OperatorSpec,
    apply_operator,
    apply_ucc,
    apply_uch,
    apply_upc,
    apply_upo,
    operator_to_circuit,
    parse_opspec,
)
from qrmw.core import ClassicalImage, ImageGeometry, QRMWError
from qrmw.sim import apply_circuit, check_permutation_unitary, statevector_from_symbolic
from qrmw.state import decode, encode, state_equal

from conftest import random_geometry, random_structured_image


def _image(g, rng):
    return ClassicalImage(g, rng.integers(0, g.max_value + 1, size=(g.cn, g.rows, g.cols)))


def test_ucc_full_mask():
    g = ImageGeometry(8, 1, 0, 1)
    state = apply_ucc(encode(ClassicalImage(g, [0, 255])))
    assert state.table.ravel().tolist() == [255, 0]


def test_ucc_partial_mask():
    g = ImageGeometry(4, 1, 0, 0)
    state = apply_ucc(encode(ClassicalImage(g, [0b0101])), mask=0b1000)
    assert state.table.item() == 0b1101


def test_upc_inverts_one_channel(sample_image):
    out = decode(apply_upc(encode(sample_image), 0))
    assert np.array_equal(out.values[0], 255 - sample_image.values[0])
    assert not out.values[0, :, 0].any() and not out.values[0, :, 3].any()
    assert np.array_equal(out.values[1:], sample_image.values[1:])


def test_upc_unused_slot_leaves_image(rng):
    g = ImageGeometry(4, 3, 1, 1)
    img = _image(g, rng)
    assert decode(apply_upc(encode(img), 3)) == img
    with pytest.raises(QRMWError):
        apply_upc(encode(img), 4)


def test_uch_full_mask_reverses_channels(rng):
    g = ImageGeometry(3, 4, 1, 1)
    img = _image(g, rng)
    out = decode(apply_uch(encode(img)))
    assert np.array_equal(out.values, img.values[::-1])


def test_uch_selector_swaps_one_pair(rng):
    g = ImageGeometry(3, 4, 1, 1)
    img = _image(g, rng)
    # flip the low channel bit only where the high bit is 1: swaps 2 <-> 3
    out = decode(apply_uch(encode(img), mask=0b01, selector=0b10))
    assert np.array_equal(out.values, img.values[[0, 1, 3, 2]])


def test_uch_needs_channel_register():
    with pytest.raises(QRMWError):
        apply_uch(encode(ClassicalImage.zeros(ImageGeometry(2, 1, 1, 1))))


def test_upo_two_by_two():
    g = ImageGeometry(3, 1, 1, 1)
    img = ClassicalImage(g, [[1, 2], [3, 4]])
    assert decode(apply_upo(encode(img))).values[0].tolist() == [[4, 3], [2, 1]]


def test_upo_column_mask_mirrors(rng):
    g = ImageGeometry(4, 3, 2, 3)
    img = _image(g, rng)
    out = decode(apply_upo(encode(img), mask=0b00111))
    assert np.array_equal(out.values, img.values[:, :, ::-1])
    assert np.array_equal(out.values.sum(axis=1), img.values.sum(axis=1)[:, ::-1])


def test_upo_selector_mirrors_one_row(rng):
    g = ImageGeometry(4, 1, 1, 2)
    img = _image(g, rng)
    # flip column bits only in row 1
    out = decode(apply_upo(encode(img), mask=0b011, selector=0b100))
    assert np.array_equal(out.values[0, 0], img.values[0, 0])
    assert np.array_equal(out.values[0, 1], img.values[0, 1, ::-1])


def test_upo_needs_position_register():
    with pytest.raises(QRMWError):
        apply_upo(encode(ClassicalImage.zeros(ImageGeometry(2, 2, 0, 0))))


@pytest.mark.parametrize("mask", [0, 0b10000])
def test_bad_masks(mask):
    state = encode(ClassicalImage.zeros(ImageGeometry(4, 1, 1, 1)))
    with pytest.raises(QRMWError):
        apply_ucc(state, mask)


def test_cc_circuit_is_x_layer():
    circuit = operator_to_circuit(OperatorSpec("CC"), ImageGeometry(8, 4, 1, 1))
    assert [(g.kind, g.target) for g in circuit.gates] == [("X", q) for q in range(8)]


def test_pc_circuit_uses_channel_controls():
    g = ImageGeometry(8, 4, 1, 1)
    circuit = operator_to_circuit(OperatorSpec("PC", selector=2), g)
    assert len(circuit) == 8
    assert all(gate.kind == "MCX" and gate.controls == ((8, 1), (9, 0)) for gate in circuit.gates)


def test_po_selector_controls_unmasked_bits():
    g = ImageGeometry(2, 1, 1, 2)
    circuit = operator_to_circuit(OperatorSpec("PO", 0b011, 0b100), g)
    assert [(gate.target, gate.controls) for gate in circuit.gates] == [(3, ((2, 1),)), (4, ((2, 1),))]


def _specs(g, rng):
    specs = [OperatorSpec("CC", int(rng.integers(1, 1 << g.q)))]
    specs.append(OperatorSpec("PC", int(rng.integers(1, 1 << g.q)), int(rng.integers(g.slots))))
    if g.b:
        specs.append(OperatorSpec("CH"))
        specs.append(OperatorSpec("CH", int(rng.integers(1, 1 << g.b)), int(rng.integers(1 << g.b))))
    if g.n + g.m:
        width = g.n + g.m
        specs.append(OperatorSpec("PO"))
        specs.append(OperatorSpec("PO", int(rng.integers(1, 1 << width)), int(rng.integers(1 << width))))
    return specs


def test_algebra_on_random_images(rng):
    for _ in range(30):
        g = random_geometry(rng, max_qubits=12)
        img = random_structured_image(rng, g)
        state = encode(img)
        for spec in _specs(g, rng):
            once = apply_operator(state, spec)
            assert state_equal(apply_operator(once, spec), state)
            circuit = operator_to_circuit(spec, g)
            assert check_permutation_unitary(circuit)
            sv = apply_circuit(statevector_from_symbolic(state), circuit)
            assert sv.max_deviation(statevector_from_symbolic(once)) <= 1e-12
            if spec.kind == "PC":
                keep = np.arange(g.slots) != spec.selector
                assert np.array_equal(once.table[keep], state.table[keep])
            if spec.kind == "CH":
                assert sorted(once.table.ravel()) == sorted(state.table.ravel())
            if spec.kind == "PO":
                for lam in range(g.slots):
                    assert sorted(once.table[lam].ravel()) == sorted(state.table[lam].ravel())


@pytest.mark.parametrize(
    "text, spec",
    [
        ("cc", OperatorSpec("CC")),
        ("cc:1000", OperatorSpec("CC", 0b1000)),
        ("pc:2", OperatorSpec("PC", None, 2)),
        ("pc:1:0011", OperatorSpec("PC", 0b0011, 1)),
        ("ch", OperatorSpec("CH")),
        ("ch:01:10", OperatorSpec("CH", 0b01, 0b10)),
        ("po::110", OperatorSpec("PO", None, 0b110)),
        ("PO:011", OperatorSpec("PO", 0b011)),
    ],
)
def test_parse_opspec(text, spec):
    assert parse_opspec(text, ImageGeometry(4, 3, 1, 2)) == spec


@pytest.mark.parametrize("text", ["xx", "cc:10", "cc:1:1", "pc", "pc:a", "ch:1", "po:011:0:1", "cc:0002"])
def test_parse_opspec_errors(text):
    with pytest.raises(QRMWError):
        parse_opspec(text, ImageGeometry(4, 3, 1, 2))
