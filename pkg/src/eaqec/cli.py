"""Command-line front end.

Commands: reduce, circuit, verify, oracle, css, syndrome.

Exit codes are a stable contract:
    0  success
    2  input error (unreadable file, syntax, bad error spec, receiver-qudit error)
    3  not constructible in strict mode
    4  verification failure
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys

import numpy as np

from . import __version__
from .checkmatrix import (
    CheckMatrix,
    CliffordOp,
    RowOp,
    apply_clifford,
    parse_check_matrix,
    replay_steps,
    row_space_equal,
)
from .circuit import (
    circuit_to_json,
    synthesize_encoding_circuit,
    verify_encoding_circuit,
)
from .eacode import build_code, css_import, parse_classical, syndrome
from .errors import (
    DependentRowsError,
    DimensionTooLargeError,
    EaqecError,
    EmptyMatrixError,
    ErrorOnBobQuditError,
    NonPrimeFieldError,
    NotConstructibleError,
    ParseError,
)
from .oracle import MAX_DIM, ebit_state, is_stabilized, pauli_unitary, stabilized_subspace_dim
from .reduction import NORMALIZED, STRICT, ReductionResult, reduce_matrix

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_CONSTRUCTIBLE = 3
EXIT_VERIFY = 4


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _verify_result(result: ReductionResult) -> dict:
    """Replay soundness, per-step invariants and augmented abelianness."""
    source = result.source
    verdicts = {"replay": True, "row_space": True, "symplectic": True, "abelian": True}
    prev = source
    for op, cur in replay_steps(source, result.oplog):
        if isinstance(op, RowOp):
            if not row_space_equal(prev, cur):
                verdicts["row_space"] = False
        else:
            if prev.symplectic_table() != cur.symplectic_table():
                verdicts["symplectic"] = False
        prev = cur
    verdicts["replay"] = prev.rows == result.canonical.rows
    aug = result.augmented
    verdicts["abelian"] = all(
        aug.product(i, j) == 0
        for i in range(1, aug.row_count + 1)
        for j in range(i + 1, aug.row_count + 1))
    return verdicts


def _report(result: ReductionResult, digest: str, verdicts: dict) -> dict:
    ops = result.oplog
    kinds = {}
    for op in ops:
        key = op.kind
        kinds[key] = kinds.get(key, 0) + 1
    return {
        "input_digest": digest,
        "mode": result.mode,
        "params": result.params,
        "display": result.display(),
        "canonical": [{"x": list(x), "z": list(z)} for x, z in result.canonical.rows],
        "augmented": [{"x": list(x), "z": list(z)} for x, z in result.augmented.rows],
        "op_counts": {
            "total": len(ops),
            "row_ops": sum(1 for op in ops if isinstance(op, RowOp)),
            "clifford_ops": sum(1 for op in ops if isinstance(op, CliffordOp)),
            "by_kind": kinds,
        },
        "verdicts": verdicts,
    }


def _print_report(report: dict, as_json: bool):
    if as_json:
        print(json.dumps(report, indent=1))
        return
    pr = report["params"]
    print(f"{report['display']}  (n={pr['n']} k={pr['k']} c={pr['c']} a={pr['a']} "
          f"p={pr['p']} m={pr['m']})")
    print(f"mode: {report['mode']}   ops: {report['op_counts']['row_ops']} row, "
          f"{report['op_counts']['clifford_ops']} clifford")
    print("canonical:")
    for row in report["canonical"]:
        print("  " + " ".join(str(v) for v in row["x"]) + " | "
              + " ".join(str(v) for v in row["z"]))
    verdicts = report["verdicts"]
    print("verified: " + "  ".join(f"{k}={'ok' if v else 'FAIL'}"
                                   for k, v in verdicts.items()))


def cmd_reduce(args) -> int:
    text = _read(args.file)
    matrix = parse_check_matrix(text)
    result = reduce_matrix(matrix, mode=args.mode)
    verdicts = _verify_result(result)
    if args.oracle:
        field = matrix.field
        total = matrix.n + result.c
        if field.q ** total <= MAX_DIM:
            dim = stabilized_subspace_dim(field, list(result.augmented.rows), total)
            verdicts["oracle"] = dim == field.q ** result.k
        else:
            print(f"oracle skipped: dimension {field.q ** total} exceeds {MAX_DIM}",
                  file=sys.stderr)
    _print_report(_report(result, _digest(text), verdicts), args.json)
    return EXIT_OK if all(verdicts.values()) else EXIT_VERIFY


def cmd_circuit(args) -> int:
    matrix = parse_check_matrix(_read(args.file))
    result = reduce_matrix(matrix, mode=args.mode)
    circuit = synthesize_encoding_circuit(result)
    if not verify_encoding_circuit(result, circuit):
        print("circuit replay failed its row-space postcondition; not writing",
              file=sys.stderr)
        return EXIT_VERIFY
    payload = circuit_to_json(circuit)
    if args.output == "-":
        sys.stdout.write(payload)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
        print(f"wrote {circuit.gate_count} gates to {args.output}")
    return EXIT_OK


def cmd_verify(args) -> int:
    text = _read(args.file)
    matrix = parse_check_matrix(text)
    result = reduce_matrix(matrix, mode=args.mode)
    verdicts = _verify_result(result)
    circuit = synthesize_encoding_circuit(result)
    verdicts["circuit"] = verify_encoding_circuit(result, circuit)
    if args.random_checks:
        verdicts["random_ops"] = _random_op_audit(matrix, args.random_checks,
                                                  random.Random(args.seed))
    for name, ok in verdicts.items():
        print(f"{name}: {'ok' if ok else 'FAIL'}")
    return EXIT_OK if all(verdicts.values()) else EXIT_VERIFY


def _random_op_audit(matrix: CheckMatrix, count: int, rng: random.Random) -> bool:
    """Random column ops must preserve products; random row ops the row space."""
    from .checkmatrix import add, dft, mul, phase, row_add

    f = matrix.field
    cur = matrix
    ok = True
    for _ in range(count):
        roll = rng.randrange(5)
        if roll == 0 and matrix.n >= 2:
            i, j = rng.sample(range(1, matrix.n + 1), 2)
            op = add(i, j)
        elif roll == 1:
            op = mul(rng.randrange(1, f.q), rng.randrange(1, matrix.n + 1))
        elif roll == 2:
            op = phase(rng.randrange(f.q), rng.randrange(1, matrix.n + 1))
        else:
            op = dft(rng.randrange(1, matrix.n + 1))
        nxt = apply_clifford(cur, op)
        ok &= nxt.symplectic_table() == cur.symplectic_table()
        cur = nxt
        if cur.row_count >= 2:
            d, s = rng.sample(range(1, cur.row_count + 1), 2)
            nxt = row_add(cur, d, s, rng.randrange(f.p if f.m > 1 else f.q))
            ok &= row_space_equal(cur, nxt)
            cur = nxt
    return ok


def cmd_oracle(args) -> int:
    matrix = parse_check_matrix(_read(args.file))
    result = reduce_matrix(matrix, mode=args.mode)
    code = build_code(result)
    field = matrix.field
    total_qudits = code.n + code.c
    dim = field.q ** total_qudits
    max_dim = min(args.max_dim, MAX_DIM)
    if dim > max_dim:
        print(f"skipped: dimension {dim} exceeds --max-dim {max_dim}")
        return EXIT_OK
    failures = []
    aug = result.augmented
    # dense abelianness of the augmented canonical generators
    mats = [pauli_unitary(field, row, total_qudits) for row in aug.rows]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if not np.allclose(mats[i] @ mats[j], mats[j] @ mats[i], atol=1e-9):
                failures.append(f"generators {i + 1} and {j + 1} do not commute densely")
    dim_found = stabilized_subspace_dim(field, list(aug.rows), total_qudits,
                                        max_dim=max_dim)
    expected = field.q ** code.k
    print(f"stabilized subspace dimension: {dim_found} (expected q^k = {expected})")
    if dim_found != expected:
        failures.append("stabilized subspace dimension mismatch")
    if code.c > 0 and field.q ** 2 <= args.max_dim:
        pair_x = ((1, 1), (0, 0))
        pair_z = ((0, 0), (1, field.p - 1))
        state = ebit_state(field)
        for row in (pair_x, pair_z):
            if not is_stabilized(state, pauli_unitary(field, row, 2)):
                failures.append(f"ebit stabilizer {row} fails on the entangled pair")
    for msg in failures:
        print("FAIL: " + msg)
    if not failures:
        print("oracle checks: ok")
    return EXIT_OK if not failures else EXIT_VERIFY


def cmd_css(args) -> int:
    field, h_rows = parse_classical(_read(args.file))
    matrix = css_import(field, h_rows)
    result = reduce_matrix(matrix, mode=NORMALIZED)
    if args.json:
        print(json.dumps({"params": result.params, "display": result.display()}))
    else:
        print(result.display())
    return EXIT_OK


def _parse_error_spec(spec: str, code) -> tuple:
    f = code.field
    x = [0] * code.n
    z = [0] * code.n
    if spec.strip():
        for part in spec.split(","):
            fields = part.strip().split(":")
            if len(fields) != 3 or fields[0] not in ("X", "Z"):
                raise ParseError(f"bad error spec component {part!r}; "
                                 "use X:<qudit>:<elem> or Z:<qudit>:<elem>")
            try:
                qudit, elem = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError(f"bad integers in error spec {part!r}") from None
            if not 1 <= qudit <= code.n:
                raise ErrorOnBobQuditError(
                    f"qudit {qudit} outside the sender range 1..{code.n}")
            if not 0 <= elem < f.q:
                raise ParseError(f"element {elem} outside 0..{f.q - 1}")
            if fields[0] == "X":
                x[qudit - 1] = f.add(x[qudit - 1], elem)
            else:
                z[qudit - 1] = f.add(z[qudit - 1], elem)
    pad = (0,) * code.c
    return (tuple(x) + pad, tuple(z) + pad)


def cmd_syndrome(args) -> int:
    matrix = parse_check_matrix(_read(args.file))
    result = reduce_matrix(matrix, mode=args.mode)
    code = build_code(result)
    err = _parse_error_spec(args.error, code)
    vec = syndrome(code, err)
    print("syndrome: " + " ".join(str(v) for v in vec))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eaqec",
        description="Entanglement-assisted qudit stabilizer code construction")
    parser.add_argument("--version", action="version", version=f"eaqec {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_mode(p, default=STRICT):
        p.add_argument("--mode", choices=[STRICT, NORMALIZED], default=default)

    p = sub.add_parser("reduce", help="reduce a check matrix to canonical form")
    p.add_argument("file")
    add_mode(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--oracle", action="store_true",
                   help="also check the dense stabilized-subspace dimension")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("circuit", help="synthesize and write an encoding circuit")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True, help="output path or '-'")
    add_mode(p)
    p.set_defaults(func=cmd_circuit)

    p = sub.add_parser("verify", help="run the invariant suite on a reduction")
    p.add_argument("file")
    add_mode(p, default=NORMALIZED)
    p.add_argument("--random-checks", type=int, default=0, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="dense-unitary checks at desk scale")
    p.add_argument("file")
    add_mode(p, default=NORMALIZED)
    p.add_argument("--max-dim", type=int, default=MAX_DIM)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("css", help="derive EA parameters from a parity-check matrix")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_css)

    p = sub.add_parser("syndrome", help="syndrome of a sender-side error")
    p.add_argument("file")
    p.add_argument("--error", required=True,
                   help="comma-separated X:<qudit>:<elem> / Z:<qudit>:<elem>; empty = identity")
    add_mode(p, default=NORMALIZED)
    p.set_defaults(func=cmd_syndrome)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotConstructibleError as exc:
        print(f"not constructible: {exc}", file=sys.stderr)
        return EXIT_NOT_CONSTRUCTIBLE
    except (ParseError, ErrorOnBobQuditError, EmptyMatrixError,
            DependentRowsError, NonPrimeFieldError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DimensionTooLargeError as exc:
        print(f"skipped: {exc}")
        return EXIT_OK
    except EaqecError as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
