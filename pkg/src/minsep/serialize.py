"""JSON wire formats shared by the library and the command line tool.

Complex numbers are encoded as two-element arrays [re, im].  A matrix is
``{"rows": n, "cols": m, "entries": [[re, im], ...]}`` with entries in
row-major order; a bipartite state additionally carries "dA" and "dB".
Decoding errors name the offending field.
"""

from __future__ import annotations

import json

import numpy as np

from .crossnorm import DiagonalScaling
from .decompositions import DecompositionMeta, SeparableDecomposition
from .schmidt import OperatorSchmidt
from .states import BipartiteState, Povm


class FormatError(ValueError):
    """Malformed JSON input; ``field`` names the offending location."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def _require(obj, key, field):
    if not isinstance(obj, dict):
        raise FormatError(field, f"expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise FormatError(f"{field}.{key}", "missing")
    return obj[key]


def encode_matrix(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in m.reshape(-1)],
    }


def decode_matrix(obj, field: str = "matrix") -> np.ndarray:
    rows = _require(obj, "rows", field)
    cols = _require(obj, "cols", field)
    entries = _require(obj, "entries", field)
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 1 or cols < 1:
        raise FormatError(f"{field}.rows", "rows and cols must be positive integers")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise FormatError(
            f"{field}.entries",
            f"expected {rows * cols} entries, got {len(entries) if isinstance(entries, list) else 'non-list'}",
        )
    out = np.empty(rows * cols, dtype=complex)
    for i, pair in enumerate(entries):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) for x in pair)
        ):
            raise FormatError(f"{field}.entries[{i}]", "expected [re, im]")
        out[i] = complex(pair[0], pair[1])
    return out.reshape(rows, cols)


def encode_state(state: BipartiteState) -> dict:
    out = encode_matrix(state.rho)
    out["dA"] = state.dA
    out["dB"] = state.dB
    return out


def decode_state(obj, field: str = "state", check_psd: bool = True) -> BipartiteState:
    dA = _require(obj, "dA", field)
    dB = _require(obj, "dB", field)
    if not isinstance(dA, int) or not isinstance(dB, int):
        raise FormatError(f"{field}.dA", "dA and dB must be integers")
    rho = decode_matrix(obj, field)
    try:
        return BipartiteState(dA, dB, rho, check_psd=check_psd)
    except ValueError as exc:
        raise FormatError(field, str(exc)) from exc


def encode_schmidt(os: OperatorSchmidt) -> dict:
    return {
        "s": [float(v) for v in os.s],
        "X": [encode_matrix(x) for x in os.X],
        "Y": [encode_matrix(y) for y in os.Y],
        "lambda_total": float(os.lambda_total),
        "hermitian": list(os.hermitian),
    }


def encode_povm(povm: Povm) -> dict:
    return {"dim": povm.dim, "effects": [encode_matrix(e) for e in povm.effects]}


def decode_povm(obj, field: str = "povm") -> Povm:
    dim = _require(obj, "dim", field)
    effects = _require(obj, "effects", field)
    if not isinstance(dim, int):
        raise FormatError(f"{field}.dim", "must be an integer")
    if not isinstance(effects, list) or not effects:
        raise FormatError(f"{field}.effects", "expected a nonempty list of matrices")
    mats = [decode_matrix(e, f"{field}.effects[{i}]") for i, e in enumerate(effects)]
    try:
        return Povm(dim, tuple(mats))
    except ValueError as exc:
        raise FormatError(field, str(exc)) from exc


def encode_meta(meta: DecompositionMeta | None) -> dict | None:
    if meta is None:
        return None
    out = {"kind": meta.kind}
    if meta.s is not None:
        out["s"] = [float(v) for v in meta.s]
    if meta.scaling is not None:
        out["R"] = [float(v) for v in meta.scaling.r]
    if meta.U is not None:
        out["U"] = encode_matrix(meta.U)
    if meta.c is not None:
        out["c"] = [float(v) for v in meta.c]
    if meta.T is not None:
        out["T"] = encode_matrix(meta.T)
    return out


def decode_meta(obj, field: str = "meta") -> DecompositionMeta | None:
    if obj is None:
        return None
    kind = _require(obj, "kind", field)
    s = np.asarray(obj["s"], dtype=float) if "s" in obj else None
    scaling = DiagonalScaling(np.asarray(obj["R"], dtype=float)) if "R" in obj else None
    u = decode_matrix(obj["U"], f"{field}.U") if "U" in obj else None
    c = np.asarray(obj["c"], dtype=float) if "c" in obj else None
    t = decode_matrix(obj["T"], f"{field}.T") if "T" in obj else None
    return DecompositionMeta(kind=kind, s=s, scaling=scaling, U=u, c=c, T=t)


def encode_decomposition(dec: SeparableDecomposition) -> dict:
    return {
        "p": [float(v) for v in dec.p],
        "A": [encode_matrix(a) for a in dec.A],
        "B": [encode_matrix(b) for b in dec.B],
        "meta": encode_meta(dec.meta),
    }


def decode_decomposition(obj, field: str = "decomposition") -> SeparableDecomposition:
    p = _require(obj, "p", field)
    terms_a = _require(obj, "A", field)
    terms_b = _require(obj, "B", field)
    if not isinstance(p, list) or not all(isinstance(x, (int, float)) for x in p):
        raise FormatError(f"{field}.p", "expected a list of numbers")
    if not isinstance(terms_a, list) or not isinstance(terms_b, list):
        raise FormatError(f"{field}.A", "A and B must be lists of matrices")
    if len(terms_a) != len(p) or len(terms_b) != len(p):
        raise FormatError(f"{field}.A", "A, B and p must have equal length")
    mats_a = [decode_matrix(a, f"{field}.A[{k}]") for k, a in enumerate(terms_a)]
    mats_b = [decode_matrix(b, f"{field}.B[{k}]") for k, b in enumerate(terms_b)]
    meta = decode_meta(obj.get("meta"), f"{field}.meta")
    try:
        return SeparableDecomposition(np.asarray(p, dtype=float), tuple(mats_a), tuple(mats_b), meta=meta)
    except ValueError as exc:
        raise FormatError(field, str(exc)) from exc


def encode_feasibility(result) -> dict:
    return {
        "feasible": bool(result.feasible),
        "weights": [[float(x) for x in row] for row in np.atleast_2d(result.weights)],
        "residual": float(result.residual),
        "constraint_violation": float(result.constraint_violation),
    }


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline.

    Identical inputs produce byte-identical output.
    """
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def load_json(path: str, field: str = "input"):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise FormatError(field, f"file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(field, f"invalid JSON in {path}: {exc}") from exc
