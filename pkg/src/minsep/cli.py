"""Command line front end.

Every subcommand reads JSON (or a built-in fixture name), performs one
pipeline stage and writes a single JSON report to stdout or ``--out``.
Reports embed the tolerances used and a machine-checkable "claims" array;
the exit status is 0 when all claims pass, 2 when a verification claim
fails, and 1 on malformed input.  All randomised behaviour is a pure
function of the inputs and ``--seed``, and reports are byte-identical
across runs with identical inputs.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import serialize
from .crossnorm import DiagonalScaling, cross_norm_value, decomposition_cost
from .decompositions import (
    cross_norm_decomposition,
    equal_norm_check,
    equal_norm_decomposition,
    hermitian_decomposition,
    random_orthogonal,
    random_unitary,
)
from .feasibility import StateSpace, deletion_minimality, separable_feasible
from .lhv import LhvConstructionError, build_lhv, povm_scan
from .schmidt import operator_schmidt, reconstruct
from .serialize import FormatError, dumps
from .states import (
    BipartiteState,
    bell_state,
    identity_povm,
    magic_povm,
    max_entangled,
    projective_povm,
    random_density,
    random_pure_state,
)
from .tolerances import ATOL, INFEAS_THRESHOLD, RANK_CUTOFF, RECON_TOL, tolerance_table
from .transport import (
    build_maps,
    build_w_basis,
    check_condition_a,
    check_condition_b,
    construct_alignment,
    transported_cost,
    transported_decomposition,
)


class CliInputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # input errors exit with status 1, not argparse's 2
        raise CliInputError(message)


def _claim(claim_id: str, value, tolerance: float, passed: bool) -> dict:
    return {
        "id": claim_id,
        "value": None if value is None else float(value),
        "tolerance": float(tolerance),
        "pass": bool(passed),
    }


def parse_state(spec: str) -> BipartiteState:
    """A fixture name (bell | max-entangled:d | random:seed:dA:dB |
    random-pure:seed:dA:dB) or a path to a state JSON file."""
    if spec == "bell":
        return bell_state()
    if spec.startswith("max-entangled:"):
        return max_entangled(_int_field(spec.split(":")[1], "state.d"))
    if spec.startswith("random:") or spec.startswith("random-pure:"):
        parts = spec.split(":")
        if len(parts) != 4:
            raise FormatError("state", f"expected {parts[0]}:seed:dA:dB, got {spec!r}")
        seed, dA, dB = (_int_field(x, "state") for x in parts[1:])
        maker = random_pure_state if parts[0] == "random-pure" else random_density
        return maker(seed, dA, dB)
    return serialize.decode_state(_load_wrapped(spec, "dA", "state"), "state")


def _int_field(text: str, field: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise FormatError(field, f"expected an integer, got {text!r}") from exc


def _load_wrapped(path: str, marker: str, field: str):
    """Load a JSON object, unwrapping the ``result`` of a CLI report.

    Lets the output of one subcommand feed the next directly: a report whose
    result carries the expected marker key is unwrapped to that result.
    """
    obj = serialize.load_json(path, field)
    if isinstance(obj, dict) and marker not in obj and isinstance(obj.get("result"), dict):
        if marker in obj["result"]:
            return obj["result"]
    return obj


def parse_povm(spec: str, transpose_of=None):
    if spec in ("x", "y", "z"):
        return projective_povm(spec)
    if spec == "identity":
        return identity_povm(2)
    if spec.startswith("magic:"):
        return magic_povm(float(spec.split(":")[1]))
    if spec == "transpose-a":
        if transpose_of is None:
            raise FormatError("povm", "transpose-a needs --povm-a")
        return transpose_of.transpose()
    return serialize.decode_povm(_load_wrapped(spec, "effects", "povm"), "povm")


def _parse_scaling(spec: str, os) -> DiagonalScaling:
    if spec == "identity":
        return DiagonalScaling.identity(os.D)
    if spec == "sqrtS":
        return DiagonalScaling.sqrt_s(os)
    data = serialize.load_json(spec, "R")
    if not isinstance(data, list) or not all(isinstance(x, (int, float)) for x in data):
        raise FormatError("R", "expected a JSON list of positive diagonal entries")
    return DiagonalScaling(np.asarray(data, dtype=float))


def _parse_unitary(spec: str, D: int, seed: int, orthogonal: bool) -> np.ndarray:
    if spec == "identity":
        return np.eye(D, dtype=complex)
    if spec == "seed":
        return (random_orthogonal(D, seed) if orthogonal else random_unitary(D, seed))
    u = serialize.decode_matrix(serialize.load_json(spec, "unitary"), "unitary")
    if u.shape[0] != D:
        raise FormatError("unitary", f"expected {D} rows, got {u.shape[0]}")
    return u


def _frame_report(os) -> dict:
    gram_x = max(
        abs(np.vdot(x.reshape(-1), y.reshape(-1)) - (1.0 if i == j else 0.0))
        for i, x in enumerate(os.X)
        for j, y in enumerate(os.X)
    )
    return {"orthonormality_deviation": float(gram_x)}


def cmd_schmidt(args) -> tuple[dict, list]:
    state = parse_state(args.state)
    os = operator_schmidt(state, rank_cutoff=args.rank_cutoff)
    residual = float(np.linalg.norm(reconstruct(os) - state.rho))
    purity_dev = abs(float(np.sum(os.s**2)) - float(np.real(np.trace(state.rho @ state.rho))))
    claims = [
        _claim("schmidt.reconstruction_residual", residual, RECON_TOL, residual <= RECON_TOL),
        _claim("schmidt.two_norm_preserved", purity_dev, ATOL, purity_dev <= ATOL),
    ]
    result = serialize.encode_schmidt(os)
    result.update(_frame_report(os))
    return result, claims


def cmd_crossnorm(args) -> tuple[dict, list]:
    state = parse_state(args.state)
    os = operator_schmidt(state)
    value = cross_norm_value(os)
    rng = np.random.default_rng(args.seed)
    per_r = []
    worst = 0.0
    for _ in range(args.samples):
        r = np.exp(rng.normal(0.0, 0.5, os.D))
        scaling = DiagonalScaling(r)
        dec = cross_norm_decomposition(
            os, scaling, np.eye(os.D, dtype=complex), np.full(os.D, 1.0 / os.D), np.ones(os.D)
        )
        cost = decomposition_cost(dec, scaling)
        worst = max(worst, abs(cost - value))
        per_r.append({"r": [float(x) for x in r], "cost": float(cost)})
    claims = [_claim("crossnorm.invariant_under_R", worst, ATOL, worst <= ATOL)]
    return {"value": float(value), "per_r": per_r}, claims


def _decompose_transported(args, state):
    os = operator_schmidt(state)
    cond_a = check_condition_a(os)
    if not cond_a.passed:
        raise FormatError("state", "condition A fails; no transported decomposition")
    maps = build_maps(os)
    alignment = construct_alignment(cond_a, seed=args.t_seed)
    w = build_w_basis(maps, alignment)
    dec = transported_decomposition(maps, w)
    residual = float(np.linalg.norm(dec.reconstruct() - state.rho))
    traces = [abs(complex(np.trace(a)) - 1.0) for a in dec.A]
    traces += [abs(complex(np.trace(b)) - 1.0) for b in dec.B]
    cost_dev = abs(transported_cost(dec, maps) - maps.d)
    claims = [
        _claim("decompose.reconstruction_residual", residual, RECON_TOL, residual <= RECON_TOL),
        _claim("decompose.unit_traces", max(traces), 1e-9, max(traces) <= 1e-9),
        _claim("decompose.transported_cost", cost_dev, ATOL, cost_dev <= ATOL),
    ]
    result = serialize.encode_decomposition(dec)
    result["T"] = serialize.encode_matrix(alignment.T)
    return result, claims


def cmd_decompose(args) -> tuple[dict, list]:
    state = parse_state(args.state)
    if args.theorem == 3:
        return _decompose_transported(args, state)
    os = operator_schmidt(state)
    scaling = _parse_scaling(args.R, os)
    u = _parse_unitary(args.unitary, os.D, args.seed, args.orthogonal)
    if args.theorem == 1:
        n = u.shape[1]
        p = np.full(n, 1.0 / n)
        dec = cross_norm_decomposition(os, scaling, u, p, np.full(n, args.c))
    else:
        if args.orthogonal:
            dec = hermitian_decomposition(os, scaling, u.real, args.c)
        else:
            dec = equal_norm_decomposition(os, scaling, u, args.c)
    residual = float(np.linalg.norm(dec.reconstruct() - state.rho))
    cost_dev = abs(decomposition_cost(dec, scaling) - cross_norm_value(os))
    claims = [
        _claim("decompose.reconstruction_residual", residual, RECON_TOL, residual <= RECON_TOL),
        _claim("decompose.cost_attains_cross_norm", cost_dev, ATOL, cost_dev <= ATOL),
    ]
    if args.theorem == 2:
        report = equal_norm_check(dec, scaling)
        dev = max(report.max_dev_a, report.max_dev_b)
        claims.append(_claim("decompose.equal_norms", dev, ATOL, report.passed))
    return serialize.encode_decomposition(dec), claims


def cmd_verify_minimal(args) -> tuple[dict, list]:
    state = parse_state(args.state)
    dec = serialize.decode_decomposition(
        _load_wrapped(args.decomposition, "p", "decomposition"), "decomposition"
    )
    va = StateSpace(state.dA, dec.A, args.mode)
    vb = StateSpace(state.dB, dec.B, args.mode)
    baseline = separable_feasible(state, va, vb)
    report = deletion_minimality(state, va, vb, threshold=args.threshold)
    rows = [
        {"side": r.side, "index": r.index, "residual": float(r.residual), "feasible": r.feasible}
        for r in report.records
    ]
    min_residual = min((r.residual for r in report.records), default=float("inf"))
    claims = [
        _claim(
            "verify-minimal.all_deletions_infeasible",
            min_residual,
            args.threshold,
            report.passed,
        )
    ]
    return {
        "baseline": serialize.encode_feasibility(baseline),
        "deletions": rows,
        "passed": report.passed,
    }, claims


def cmd_conditions(args) -> tuple[dict, list]:
    state = parse_state(args.state)
    os = operator_schmidt(state)
    result: dict = {}
    claims = []
    if state.dA != state.dB or os.D != state.dA**2:
        result["condition_a"] = {"passed": False, "reason": "operator-Schmidt rank deficient"}
        result["condition_b"] = {"passed": False, "reason": "operator-Schmidt rank deficient"}
        claims.append(_claim("conditions.a", 1.0, ATOL, False))
        claims.append(_claim("conditions.b", 1.0, ATOL, False))
        return result, claims
    cond_a = check_condition_a(os)
    maps = build_maps(os)
    cond_b = check_condition_b(maps, seed=args.seed)
    result["condition_a"] = {
        "passed": cond_a.passed,
        "e": [float(x) for x in cond_a.e],
        "f": [float(x) for x in cond_a.f],
        "deviation": cond_a.deviation,
    }
    result["condition_b"] = {
        "passed": cond_b.passed,
        "min_s": cond_b.min_s,
        "bound": cond_b.bound,
        "ceiling": cond_b.ceiling,
        "sampled_max_inverse_norm": cond_b.sampled_max,
        "marginal": cond_b.marginal,
    }
    claims.append(_claim("conditions.a", cond_a.deviation, ATOL, cond_a.passed))
    margin = cond_b.min_s - 1.0 / state.dA**2
    claims.append(_claim("conditions.b", margin, 0.0, cond_b.passed))
    return result, claims


def cmd_lhv(args) -> tuple[dict, list]:
    dec = serialize.decode_decomposition(
        _load_wrapped(args.decomposition, "p", "decomposition"), "decomposition"
    )
    povm_a = parse_povm(args.povm_a)
    povm_b = parse_povm(args.povm_b, transpose_of=povm_a)
    try:
        model = build_lhv(dec, povm_a, povm_b)
    except LhvConstructionError as exc:
        claims = [_claim("lhv.born_match", None, 1e-10, False)]
        return {"error": str(exc)}, claims
    result = {
        "hidden_weights": [float(x) for x in model.hidden_weights],
        "response_a": [[float(x) for x in row] for row in model.response_a],
        "response_b": [[float(x) for x in row] for row in model.response_b],
        "dropped": list(model.dropped),
        "born_deviation": float(model.born_deviation),
    }
    claims = [
        _claim("lhv.born_match", model.born_deviation, 1e-10, model.born_deviation <= 1e-10)
    ]
    return result, claims


def cmd_scan(args) -> tuple[dict, list]:
    dec = serialize.decode_decomposition(
        _load_wrapped(args.decomposition, "p", "decomposition"), "decomposition"
    )
    report = povm_scan(dec, family=args.family, seed=args.seed, budget=args.budget)
    rows = [
        {
            "label": r.label,
            "success": r.success,
            "born_deviation": None if r.born_deviation is None else float(r.born_deviation),
            "detail": r.detail,
        }
        for r in report.rows
    ]
    result = {"family": report.family, "rows": rows}
    if report.threshold is not None:
        result["threshold"] = float(report.threshold)
    return result, []


def build_parser() -> _Parser:
    parser = _Parser(prog="minsep", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0, help="seed for all randomised behaviour")
        p.add_argument("--out", default=None, help="write the JSON report to this path")

    p = sub.add_parser("schmidt", help="operator-Schmidt decomposition of a state")
    p.add_argument("--state", required=True)
    p.add_argument("--rank-cutoff", type=float, default=RANK_CUTOFF)
    common(p)

    p = sub.add_parser("crossnorm", help="cross-norm value and invariance under the diagonal scaling")
    p.add_argument("--state", required=True)
    p.add_argument("--samples", type=int, default=10)
    common(p)

    p = sub.add_parser("decompose", help="construct a separable decomposition")
    p.add_argument("--theorem", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--unitary", default="identity", help="identity | seed | path to a matrix file")
    p.add_argument("--R", default="identity", help="identity | sqrtS | path to a diagonal file")
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--orthogonal", action="store_true", help="use a real orthogonal mixing (Hermitian output)")
    p.add_argument("--t-seed", type=int, default=None, help="randomise the trace alignment (construction 3)")
    common(p)

    p = sub.add_parser("verify-minimal", help="deletion test on a decomposition's generator sets")
    p.add_argument("--state", required=True)
    p.add_argument("--decomposition", required=True)
    p.add_argument("--mode", choices=("convex", "conic"), default="convex")
    p.add_argument("--threshold", type=float, default=INFEAS_THRESHOLD)
    common(p)

    p = sub.add_parser("conditions", help="admissibility conditions of the transported construction")
    p.add_argument("--state", required=True)
    common(p)

    p = sub.add_parser("lhv", help="build a local hidden variable model for a POVM pair")
    p.add_argument("--decomposition", required=True)
    p.add_argument("--povm-a", required=True, help="x | y | z | identity | magic:c | path")
    p.add_argument("--povm-b", default="transpose-a", help="same forms, or transpose-a")
    common(p)

    p = sub.add_parser("scan", help="scan a POVM family for model constructions")
    p.add_argument("--decomposition", required=True)
    p.add_argument("--family", default="pauli", choices=("pauli", "magic"))
    p.add_argument("--budget", type=int, default=16)
    common(p)

    return parser


COMMANDS = {
    "schmidt": cmd_schmidt,
    "crossnorm": cmd_crossnorm,
    "decompose": cmd_decompose,
    "verify-minimal": cmd_verify_minimal,
    "conditions": cmd_conditions,
    "lhv": cmd_lhv,
    "scan": cmd_scan,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result, claims = COMMANDS[args.command](args)
    except (CliInputError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    tolerances = tolerance_table()
    if hasattr(args, "rank_cutoff"):
        tolerances["rank_cutoff"] = args.rank_cutoff
    if hasattr(args, "threshold"):
        tolerances["infeas_threshold"] = args.threshold
    report = {
        "command": args.command,
        "seed": getattr(args, "seed", 0),
        "tolerances": tolerances,
        "result": result,
        "claims": claims,
    }
    text = dumps(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(c["pass"] for c in claims) else 2


if __name__ == "__main__":
    raise SystemExit(main())
