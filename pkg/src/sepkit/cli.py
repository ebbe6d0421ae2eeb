"""Command-line front end: load or construct states, run criteria, emit reports.

Exit codes: 0 = run completed (the verdict lives in the report, not the exit
status), 2 = invalid input, 3 = witness construction failure.

State file schema (JSON): {"dims": [d1, ...], "matrix": [[[re, im], ...], ...],
"kind": "state" | "witness"} with the matrix row-major and D x D. Files whose
"kind" names a builtin recipe (see state_zoo.StateSpec) are built instead of
read verbatim.
"""

import argparse
import json
import sys

import numpy as np

from .criteria import DETECT_TOL, AnalysisReport, sweep_multipartite
from .errors import ConstructionError, InvalidInputError, NotPSDError, NumericalError
from .perm_classifier import classify
from .state_zoo import BUILTIN_KINDS, StateSpec, parse_builtin
from .tensor_core import DensityMatrix, HermitianOperator, as_complex_matrix
from .witness_compiler import (
    Witness,
    compile_witness,
    detect,
    product_expectation_spot_check,
    witness_expectation,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONSTRUCTION = 3


def matrix_to_json(mat: np.ndarray) -> list:
    return [[[float(x.real), float(x.imag)] for x in row] for row in np.asarray(mat, dtype=complex)]


def matrix_from_json(rows) -> np.ndarray:
    try:
        mat = np.asarray([[complex(re, im) for re, im in row] for row in rows])
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"matrix entries must be [re, im] pairs: {exc}") from None
    return as_complex_matrix(mat)


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InvalidInputError(f"{path}: expected a JSON object")
    return data


def load_state_file(path: str) -> DensityMatrix:
    data = _load_json(path)
    if "matrix" in data:
        kind = data.get("kind", "state")
        if kind != "state":
            raise InvalidInputError(f"{path}: kind {kind!r} is not a state")
        if "dims" not in data:
            raise InvalidInputError(f"{path}: missing 'dims'")
        return DensityMatrix(tuple(data["dims"]), matrix_from_json(data["matrix"]))
    if data.get("kind") in BUILTIN_KINDS:
        return StateSpec.from_dict(data).build()
    raise InvalidInputError(f"{path}: expected a 'matrix' field or a builtin state 'kind'")


def load_witness_file(path: str) -> Witness:
    data = _load_json(path)
    if data.get("kind") != "witness":
        raise InvalidInputError(f"{path}: witness files must carry \"kind\": \"witness\"")
    if "matrix" not in data or "dims" not in data:
        raise InvalidInputError(f"{path}: missing 'dims' or 'matrix'")
    return Witness(HermitianOperator(tuple(data["dims"]), matrix_from_json(data["matrix"])))


def _dump_json(payload: dict, stream) -> None:
    json.dump(payload, stream, indent=2, sort_keys=True)
    stream.write("\n")


def _print_report_table(report: AnalysisReport, stream) -> None:
    stream.write(f"state: {report.label}   dims: {'x'.join(str(d) for d in report.dims)}\n")
    stream.write(f"{'criterion':<24} {'norm':>18} {'threshold':>14}  detected\n")
    for crit in report.criteria:
        stream.write(
            f"{crit.name:<24} {crit.norm:>18.12g} {crit.threshold:>14.12g}  "
            f"{'yes' if crit.detected else 'no'}\n"
        )
    stream.write(f"e_value: {report.e_value:.12g}\n")
    stream.write(f"verdict: {report.verdict}\n")


def _resolve_state(args) -> tuple[DensityMatrix, str]:
    if args.state and args.builtin:
        raise InvalidInputError("pass either --state or --builtin, not both")
    if args.state:
        return load_state_file(args.state), args.state
    if args.builtin:
        return parse_builtin(args.builtin, seed=args.seed).build(), args.builtin
    raise InvalidInputError("a state source is required: --state FILE or --builtin NAME[:params]")


def cmd_analyze(args) -> int:
    rho, label = _resolve_state(args)
    report = sweep_multipartite(
        rho, args.criteria, detect_tol=args.tol, label=label, force=args.force
    )
    if args.format == "json":
        _dump_json(report.to_dict(), sys.stdout)
    else:
        _print_report_table(report, sys.stdout)
    return EXIT_OK


def cmd_classify(args) -> int:
    dims = _parse_dims(args.dims)
    result = classify(dims, probe_count=args.probes, seed=args.seed, force=args.force)
    if args.format == "json":
        _dump_json(result.to_dict(), sys.stdout)
    else:
        sys.stdout.write("class,representative,member\n")
        for idx, cls in enumerate(result.classes):
            for member in cls.members:
                sys.stdout.write(f"{idx},{cls.representative.one_line()},{member.one_line()}\n")
    return EXIT_OK


def cmd_compile_witness(args) -> int:
    try:
        witness = load_witness_file(args.witness)
        rho = load_state_file(args.state)
    except NotPSDError as exc:
        # a bad input file is exit 2; exit 3 is reserved for the compile chain
        raise InvalidInputError(str(exc)) from exc
    if rho.dims != witness.op.dims:
        raise InvalidInputError(
            f"state dims {rho.dims} do not match witness dims {witness.op.dims}"
        )
    compiled = compile_witness(witness)
    expectation, norm = detect(compiled, rho)
    payload = {
        "witness": args.witness,
        "state": args.state,
        "d_in": compiled.d_in,
        "d_out": compiled.d_out,
        "witness_expectation": witness_expectation(witness, rho),
        "witness_scale": compiled.witness_scale,
        "witness_product_spot_check_min": product_expectation_spot_check(witness),
        "trace_preserving_residual": compiled.trace_preserving_residual,
        "reduction_residual": compiled.reduction_residual,
        "completeness_residual": compiled.completeness_residual,
        "detection_expectation": expectation,
        "output_trace_norm": norm,
        "detected": norm > 1.0 + args.tol,
    }
    _dump_json(payload, sys.stdout)
    return EXIT_OK


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise InvalidInputError(f"--dims expects comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepkit",
        description="Entanglement detection via trace-norm contraction criteria.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="run a criterion family against a state")
    analyze.add_argument("--state", metavar="FILE", help="state file (JSON)")
    analyze.add_argument(
        "--builtin",
        metavar="NAME[:params]",
        help="builtin state: upb3, maxent:d, product:d1,d2,..., ginibre:d1,d2,...",
    )
    analyze.add_argument("--criteria", choices=("ppt", "realign", "perms", "all"), default="all")
    analyze.add_argument("--tol", type=float, default=DETECT_TOL, help="detection tolerance over norm 1")
    analyze.add_argument("--seed", type=int, default=0, help="seed for random builtins")
    analyze.add_argument("--format", choices=("json", "table"), default="json")
    analyze.add_argument("--force", action="store_true", help="lift the permutation budget cap")
    analyze.set_defaults(run=cmd_analyze)

    classify_p = sub.add_parser("classify", help="group permutation criteria into equivalence classes")
    classify_p.add_argument("--dims", required=True, help="subsystem dimensions, e.g. 2,2")
    classify_p.add_argument("--probes", type=int, default=32)
    classify_p.add_argument("--seed", type=int, default=0)
    classify_p.add_argument("--format", choices=("json", "csv"), default="json")
    classify_p.add_argument("--force", action="store_true", help="lift the permutation budget cap")
    classify_p.set_defaults(run=cmd_classify)

    compile_p = sub.add_parser("compile-witness", help="compile a witness into a positive map and test a state")
    compile_p.add_argument("witness", metavar="WITNESS_FILE")
    compile_p.add_argument("state", metavar="STATE_FILE")
    compile_p.add_argument("--tol", type=float, default=DETECT_TOL)
    compile_p.set_defaults(run=cmd_compile_witness)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (ConstructionError, NumericalError, NotPSDError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        # a witness that cannot be compiled is a construction failure; the
        # same exceptions on other commands just mean bad input
        return EXIT_CONSTRUCTION if args.command == "compile-witness" else EXIT_INPUT
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
