"""``qrmw`` command-line interface.

Exit status: 0 success, 1 verification mismatch, 2 bad arguments,
3 I/O failure, 4 validation failure.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import colorops, compress, costs
from .circuit import PREP_MODES, build_preparation_circuit, count_ops, emit_circuit_text, parse_circuit_text
from .core import ClassicalImage, QRMWError, emit_qrmw_text, export_ppm, import_ppm, parse_qrmw_text
from .sim import DEFAULT_CAP, run_statevector, sample_measurement, statevector_from_symbolic
from .state import decode, encode

EXIT_MISMATCH, EXIT_USAGE, EXIT_IO, EXIT_INVALID = 1, 2, 3, 4


class _IOFailure(Exception):
    pass


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise _IOFailure(f"cannot read {path}: {exc.strerror or exc}") from exc


def _write(path: str | None, data: bytes) -> None:
    if path is None:
        sys.stdout.write(data.decode("ascii"))
        return
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc.strerror or exc}") from exc


def load_image(path: str) -> ClassicalImage:
    """Read QRMW text, or a PPM if the file starts with a PPM magic number."""
    data = _read(path)
    if data[:2] in (b"P3", b"P6"):
        return import_ppm(data)
    return parse_qrmw_text(data)


def cmd_encode(args) -> int:
    image = load_image(args.image)
    circuit = build_preparation_circuit(image, args.mode)
    _write(args.output, emit_circuit_text(circuit))
    if args.output is not None:
        r = count_ops(image, args.mode)
        print(f"omega_ops={r.omega_ops} mcx_gates={r.mcx_gates} h_gates={r.h_gates}")
    return 0


def cmd_decode(args) -> int:
    restored = decode(encode(load_image(args.image)))
    _write(args.output, emit_qrmw_text(restored))
    if args.ppm:
        _write(args.ppm, export_ppm(restored))
    return 0


def cmd_compress(args) -> int:
    image = load_image(args.image)
    implicants = compress.minimize_image(image, args.mode, free_unused_slots=args.free_unused_slots)
    before = image.nonzero_count()
    report = compress.compression_ratio(before, len(implicants))
    print(report.to_json())
    if args.emit:
        _write(args.emit, emit_circuit_text(compress.implicant_circuit(implicants, image.geometry)))
    return 0


def cmd_apply(args) -> int:
    image = load_image(args.image)
    state = encode(image)
    for text in args.opspec:
        state = colorops.apply_operator(state, colorops.parse_opspec(text, image.geometry))
    _write(args.output, emit_qrmw_text(decode(state)))
    return 0


def _parse_register(text: str) -> range:
    try:
        start, _, stop = text.partition(":")
        return range(int(start), int(stop))
    except ValueError as exc:
        raise QRMWError(f"register must be START:STOP, got {text!r}") from exc


def cmd_simulate(args) -> int:
    circuit = parse_circuit_text(_read(args.circuit))
    sv = run_statevector(circuit, cap=args.cap)
    nq = sv.num_qubits
    if args.sample is None:
        for index in np.flatnonzero(np.abs(sv.amplitudes) > 1e-12):
            amp = sv.amplitudes[index]
            print(f"{int(index):0{nq}b} {amp.real:.12f} {amp.imag:.12f}")
        return 0
    register = _parse_register(args.register) if args.register else range(nq)
    outcomes = sample_measurement(sv, register, seed=args.seed, shots=args.sample)
    values, counts = np.unique(outcomes, return_counts=True)
    for value, count in zip(values, counts):
        print(f"{int(value):0{len(register)}b} {int(count)}")
    return 0


def cmd_verify(args) -> int:
    image = load_image(args.image)
    reference = statevector_from_symbolic(encode(image), cap=args.cap)
    circuits = {
        "strict": build_preparation_circuit(image, "strict"),
        "skip-zero": build_preparation_circuit(image, "skip-zero"),
        "exact": compress.build_compressed_circuit(image, "exact"),
        "paper": compress.build_compressed_circuit(image, "paper"),
    }
    ok = True
    for name, circuit in circuits.items():
        deviation = run_statevector(circuit, cap=args.cap).max_deviation(reference)
        passed = deviation <= args.tol
        ok &= passed
        print(f"{name:<10} gates={len(circuit):<6} max_dev={deviation:.3e} {'ok' if passed else 'MISMATCH'}")
    return 0 if ok else EXIT_MISMATCH


def cmd_compare(args) -> int:
    sys.stdout.write(costs.compare_table(args.q, args.n))
    return 0


def cmd_stats(args) -> int:
    image = load_image(args.image)
    g = image.geometry
    strict = count_ops(image, "strict")
    skip = count_ops(image, "skip-zero")
    print(f"geometry q={g.q} cn={g.cn} b={g.b} n={g.n} m={g.m} size={g.rows}x{g.cols}")
    print(f"total_qubits {g.total_qubits()}")
    print(f"nonzero_entries {image.nonzero_count()}")
    print(f"distinct_nonzero_colors {len(compress.group_onsets(image))}")
    print(f"omega_ops strict={strict.omega_ops} skip-zero={skip.omega_ops}")
    print(f"mcx_gates {skip.mcx_gates}")
    if image.nonzero_count():
        for mode in compress.COMPRESS_MODES:
            print(f"compress {mode} {compress.compress_image(image, mode).to_json()}")
    return 0


def cmd_import_ppm(args) -> int:
    image = import_ppm(_read(args.ppm))
    _write(args.output, emit_qrmw_text(image))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qrmw", description="QRMW quantum image toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="emit the preparation circuit of an image")
    p.add_argument("image")
    p.add_argument("-o", "--output")
    p.add_argument("--mode", choices=PREP_MODES, default="strict")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="encode then decode an image (round-trip check)")
    p.add_argument("image")
    p.add_argument("-o", "--output")
    p.add_argument("--ppm", help="also write channels 0-2 as a PPM")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("compress", help="report the compression ratio of the preparation")
    p.add_argument("image")
    p.add_argument("--mode", choices=compress.COMPRESS_MODES, default="exact")
    p.add_argument("--emit", help="write the compressed circuit here")
    p.add_argument("--free-unused-slots", action="store_true",
                   help="treat channel slots >= cn as don't-cares (exact mode)")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("apply", help="apply image operators, e.g. cc, pc:0, ch:11, po::0101")
    p.add_argument("image")
    p.add_argument("opspec", nargs="+")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("simulate", help="simulate a circuit file from |0...0>")
    p.add_argument("circuit")
    p.add_argument("--sample", type=int, metavar="N")
    p.add_argument("--seed", type=int)
    p.add_argument("--register", metavar="START:STOP", help="qubits to sample (default: all)")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="check every preparation circuit against the symbolic state")
    p.add_argument("image")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", help="qubit and cost table for QRMW, MCQI, QMCR")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("stats", help="summary counts for an image")
    p.add_argument("image")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("import-ppm", help="convert a P3/P6 PPM to QRMW text")
    p.add_argument("ppm")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_import_ppm)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "simulate" and args.sample is not None and args.seed is None:
        parser.error("--sample requires an explicit --seed")
    try:
        return args.func(args)
    except _IOFailure as exc:
        print(f"qrmw: {exc}", file=sys.stderr)
        return EXIT_IO
    except QRMWError as exc:
        print(f"qrmw: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
