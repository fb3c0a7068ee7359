"""Command line front end.

    qcoeff schmidt STATE.json [--tol T] [--pretty]
    qcoeff run PROTOCOL.json [--tol T] [--verify-with-oracle] [--pretty]

Complex numbers are ``[re, im]`` pairs everywhere, in input and output.
Reports go to stdout as JSON; diagnostics go to stderr.

Exit codes: 0 ok, 2 unreadable or malformed input, 3 the two Schmidt-number
criteria disagree, 4 oracle deviation above tolerance, 5 impossible
measurement outcome, 6 singular teleportation channel.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from qcoeff import matrix_core as mc
from qcoeff import protocols as pr
from qcoeff import state_algebra as sa
from qcoeff import tensor_oracle as to
from qcoeff.errors import ImpossibleOutcomeError, QcoeffError, SingularMatrixError

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CRITERIA = 3
EXIT_ORACLE = 4
EXIT_IMPOSSIBLE = 5
EXIT_SINGULAR = 6

SIGNIFICANT_DIGITS = 12
OUTPUT_ZERO = 1e-14
"""Magnitudes below this print as 0 so rounding noise does not leak into reports."""


class ParseError(QcoeffError, ValueError):
    pass


# ---------------------------------------------------------------- input


def parse_matrix(payload, where: str = "matrix") -> np.ndarray:
    if not isinstance(payload, list) or not payload:
        raise ParseError(f"{where}: expected a non-empty list of rows")
    width = None
    rows = []
    for i, row in enumerate(payload):
        if not isinstance(row, list) or not row:
            raise ParseError(f"{where}: row {i} is not a non-empty list")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"{where}: row {i} has {len(row)} entries, expected {width}")
        values = []
        for j, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
            ):
                raise ParseError(f"{where}: row {i}, column {j} is not an [re, im] pair")
            values.append(complex(entry[0], entry[1]))
        rows.append(values)
    return np.array(rows, dtype=np.complex128)


def _parse_dims(payload, where: str) -> tuple[int, int]:
    dims = payload.get("dims")
    if (
        not isinstance(dims, list)
        or len(dims) != 2
        or not all(isinstance(d, int) and not isinstance(d, bool) and d > 0 for d in dims)
    ):
        raise ParseError(f"{where}: 'dims' must be a pair of positive integers")
    return dims[0], dims[1]


def _state_payload(payload, where: str) -> tuple[np.ndarray, bool]:
    if not isinstance(payload, dict):
        raise ParseError(f"{where}: expected an object")
    d1, d2 = _parse_dims(payload, where)
    if "matrix" not in payload:
        raise ParseError(f"{where}: missing 'matrix'")
    matrix = parse_matrix(payload["matrix"], f"{where}.matrix")
    if matrix.shape != (d1, d2):
        raise ParseError(f"{where}: matrix shape {matrix.shape} does not match dims [{d1}, {d2}]")
    normalize = payload.get("normalize", False)
    if not isinstance(normalize, bool):
        raise ParseError(f"{where}: 'normalize' must be true or false")
    return matrix, normalize


def parse_state(payload, where: str = "state") -> sa.PureBipartiteState:
    matrix, normalize = _state_payload(payload, where)
    try:
        return sa.make_state(*matrix.shape, matrix, normalize=normalize)
    except (QcoeffError, ValueError) as exc:
        raise ParseError(f"{where}: {exc}") from exc


def parse_outcome(payload, where: str = "outcome") -> pr.MeasurementOutcome:
    matrix, normalize = _state_payload(payload, where)
    try:
        return pr.outcome(matrix, normalize=normalize)
    except (QcoeffError, ValueError) as exc:
        raise ParseError(f"{where}: {exc}") from exc


def _required(payload: dict, key: str):
    if key not in payload:
        raise ParseError(f"protocol: missing entry '{key}'")
    return payload[key]


def _list_entry(payload: dict, key: str) -> list:
    value = _required(payload, key)
    if not isinstance(value, list):
        raise ParseError(f"protocol: '{key}' must be a list")
    return value


def load_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc


# ---------------------------------------------------------------- output


def format_real(x: float) -> float:
    x = float(x)
    if abs(x) < OUTPUT_ZERO:
        return 0.0
    return float(f"{x:.{SIGNIFICANT_DIGITS}g}")


def format_matrix(a: np.ndarray) -> list:
    return [[[format_real(z.real), format_real(z.imag)] for z in row] for row in np.asarray(a)]


def state_file(a: np.ndarray) -> dict:
    """A matrix in StateFile form, so report entries re-parse directly."""
    return {"dims": list(a.shape), "matrix": format_matrix(a)}


def schmidt_report(state: sa.PureBipartiteState, tol: float) -> dict:
    eigenvalues = sa.schmidt_coefficients(state, max(tol**2, sa.EIGENVALUE_NOISE_FLOOR))
    by_rank = sa.schmidt_number(state, tol)
    decomposition = sa.schmidt_decompose(state, tol)
    return {
        "schmidt_number": {
            "eigenvalue_count": len(eigenvalues),
            "rank": by_rank,
            "agree": len(eigenvalues) == by_rank,
        },
        "eigenvalues": [format_real(x) for x in eigenvalues],
        "schmidt_coefficients": [format_real(np.sqrt(x)) for x in eigenvalues],
        "is_entangled": by_rank >= 2,
        "decomposition": {
            "coefficients": [format_real(x) for x in decomposition.coefficients],
            "left_basis": state_file(decomposition.left_basis),
            "right_basis": state_file(decomposition.right_basis),
        },
    }


def dump(report: dict, pretty: bool) -> str:
    if pretty:
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    return json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"


# ---------------------------------------------------------------- commands


def cmd_schmidt(path: str, tol: float) -> tuple[dict, int]:
    state = parse_state(load_json(path))
    report = {"command": "schmidt", "dims": [state.dim_left, state.dim_right], "tol": tol}
    report.update(schmidt_report(state, tol))
    code = EXIT_OK if report["schmidt_number"]["agree"] else EXIT_CRITERIA
    return report, code


def _run_swap_like(kind: str, protocol: dict, tol: float, verify: bool) -> tuple[dict, int]:
    if kind == "swap":
        left = parse_state(_required(protocol, "left"), "left")
        meas = parse_outcome(_required(protocol, "measurement"), "measurement")
        right = parse_state(_required(protocol, "right"), "right")
        pairs, measurements = [left, right], [meas]
        result = pr.entanglement_swap(left, meas, right)
    else:
        pairs = [parse_state(p, f"pairs[{i}]") for i, p in enumerate(_list_entry(protocol, "pairs"))]
        measurements = [
            parse_outcome(m, f"measurements[{i}]") for i, m in enumerate(_list_entry(protocol, "measurements"))
        ]
        if not pairs or len(measurements) != len(pairs) - 1:
            raise ParseError(f"protocol: {len(pairs)} pairs need {max(len(pairs) - 1, 0)} measurements")
        result = pr.swap_chain(pairs, measurements)

    report = {
        "command": "run",
        "kind": kind,
        "tol": tol,
        "probability": format_real(result.probability),
        "state": state_file(result.state.coeffs),
        "schmidt": schmidt_report(result.state, tol),
    }
    code = EXIT_OK
    if verify:
        oracle_state, oracle_p = to.oracle_chain(pairs, measurements)
        oracle_coeffs = to.to_bipartite(oracle_state)
        deviation = max(
            float(np.max(np.abs(oracle_coeffs - result.state.coeffs))), abs(oracle_p - result.probability)
        )
        report["oracle"] = {
            "state": state_file(oracle_coeffs),
            "probability": format_real(oracle_p),
            "max_deviation": format_real(deviation),
        }
        if deviation > tol:
            code = EXIT_ORACLE
    return report, code


def _run_teleport(protocol: dict, tol: float, verify: bool) -> tuple[dict, int]:
    a = parse_state(_required(protocol, "input"), "input")
    r1 = parse_state(_required(protocol, "resource1"), "resource1")
    r2 = parse_state(_required(protocol, "resource2"), "resource2")
    o1 = parse_outcome(_required(protocol, "outcome1"), "outcome1")
    o2 = parse_outcome(_required(protocol, "outcome2"), "outcome2")
    plan = pr.teleport_bipartite(a, r1, r2, o1, o2)
    report = {
        "command": "run",
        "kind": "teleport",
        "tol": tol,
        "m_matrix": state_file(plan.m_matrix),
        "n_matrix": state_file(plan.n_matrix),
        "rho1": format_real(plan.rho1),
        "rho2": format_real(plan.rho2),
        "total_probability": format_real(plan.total_probability),
        "correction": state_file(plan.correction),
        "correction_is_unitary": plan.correction_is_unitary,
        "single_sided": plan.single_sided,
        "final_state": state_file(plan.final_state),
        "recovered": state_file(plan.recovered),
        "residual": format_real(plan.residual),
        "left_correction": state_file(plan.left_correction),
        "right_correction": state_file(plan.right_correction),
        "two_sided_residual": format_real(plan.two_sided_residual),
    }
    code = EXIT_OK
    if verify:
        bob, oracle_p = to.oracle_teleport(a, r1, r2, o1, o2)
        oracle_final = to.to_bipartite(bob)
        deviation = max(
            float(np.max(np.abs(oracle_final - plan.final_state))), abs(oracle_p - plan.total_probability)
        )
        corrected = to.apply_local(bob, 1, plan.correction)
        report["oracle"] = {
            "final_state": state_file(oracle_final),
            "total_probability": format_real(oracle_p),
            "corrected_state": state_file(to.to_bipartite(corrected)),
            "max_deviation": format_real(deviation),
        }
        if deviation > tol:
            code = EXIT_ORACLE
    return report, code


def cmd_run(path: str, tol: float | None, verify: bool) -> tuple[dict, int]:
    protocol = load_json(path)
    if not isinstance(protocol, dict):
        raise ParseError("protocol: expected an object")
    kind = protocol.get("kind")
    if tol is None:
        tol = protocol.get("tol", mc.DEFAULT_TOL)
        if not isinstance(tol, (int, float)) or isinstance(tol, bool) or tol <= 0:
            raise ParseError("protocol: 'tol' must be a positive number")
    if kind in ("swap", "chain"):
        return _run_swap_like(kind, protocol, tol, verify)
    if kind == "teleport":
        return _run_teleport(protocol, tol, verify)
    raise ParseError(f"protocol: unknown kind {kind!r} (expected swap, chain or teleport)")


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcoeff", description="Coefficient-matrix analysis of pure bipartite states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schmidt", help="Schmidt analysis of a state file")
    p.add_argument("path", help="state file, or - for stdin")
    p.add_argument("--tol", type=_positive_float, default=mc.DEFAULT_TOL)
    p.add_argument("--pretty", action="store_true", help="indented output")

    p = sub.add_parser("run", help="run a swap, chain or teleport protocol file")
    p.add_argument("path", help="protocol file, or - for stdin")
    p.add_argument("--tol", type=_positive_float, default=None, help="overrides the file's tol (default 1e-9)")
    p.add_argument("--verify-with-oracle", action="store_true")
    p.add_argument("--pretty", action="store_true", help="indented output")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "schmidt":
            report, code = cmd_schmidt(args.path, args.tol)
        else:
            report, code = cmd_run(args.path, args.tol, args.verify_with_oracle)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ImpossibleOutcomeError as exc:
        print(f"error: impossible outcome: {exc}", file=sys.stderr)
        return EXIT_IMPOSSIBLE
    except SingularMatrixError as exc:
        print(f"error: teleportation channel is singular: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except QcoeffError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    sys.stdout.write(dump(report, args.pretty))
    if code == EXIT_CRITERIA:
        print("error: Schmidt number criteria disagree", file=sys.stderr)
    elif code == EXIT_ORACLE:
        print("error: oracle deviation exceeds tolerance", file=sys.stderr)
    return code
