"""Matrix and function-spec serialization."""

from __future__ import annotations

import json
import math
import re
from pathlib import Path

import numpy as np

from .errors import InputError
from .linalg import as_cmatrix
from .wirtinger import WirtingerFunction, builtin

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "matrix_to_csv",
    "matrix_from_csv",
    "read_matrix",
    "write_matrix",
    "parse_function_spec",
    "read_function_spec",
]


def matrix_to_json(a) -> dict:
    """``{"rows", "cols", "data": [[re, im], ...]}`` in row-major order."""
    a = np.asarray(a, dtype=np.complex128)
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]),
            "data": [[float(x.real), float(x.imag)] for x in a.ravel()]}


def _loads(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: malformed JSON at line {exc.lineno}, column {exc.colno} "
                         f"(char {exc.pos}): {exc.msg}") from exc


def matrix_from_json(obj, source: str = "<json>") -> np.ndarray:
    """Inverse of :func:`matrix_to_json`; accepts a dict or a JSON string."""
    if isinstance(obj, (str, bytes)):
        obj = _loads(obj, source)
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{source}: expected keys rows, cols, data ({exc})") from exc
    if len(data) != rows * cols:
        raise InputError(f"{source}: data has {len(data)} entries, expected {rows * cols}")
    try:
        vals = np.array([complex(float(re_), float(im)) for re_, im in data], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{source}: entries must be [re, im] pairs ({exc})") from exc
    try:
        return as_cmatrix(vals.reshape(rows, cols))
    except ValueError as exc:
        raise InputError(f"{source}: {exc}") from exc


def _fmt(x: complex) -> str:
    sign = "-" if math.copysign(1.0, x.imag) < 0 else "+"
    return f"{x.real!r}{sign}{abs(x.imag)!r}i"


def matrix_to_csv(a) -> str:
    """One line per row, entries written as ``a+bi``."""
    a = np.asarray(a, dtype=np.complex128)
    return "".join(",".join(_fmt(complex(x)) for x in row) + "\n" for row in a)


_BARE_I = re.compile(r"(?<![0-9.eE])i")


def _parse_entry(tok: str, where: str) -> complex:
    s = tok.strip().replace(" ", "")
    if not s:
        raise InputError(f"{where}: empty entry")
    s = _BARE_I.sub("1j", s).replace("i", "j")
    try:
        return complex(s)
    except ValueError as exc:
        raise InputError(f"{where}: cannot parse {tok.strip()!r} as a complex number") from exc


def matrix_from_csv(text: str, source: str = "<csv>") -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    rows = [[_parse_entry(tok, f"{source}:{i + 1}:{j + 1}") for j, tok in enumerate(ln.split(","))]
            for i, ln in enumerate(lines)]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise InputError(f"{source}: expected a square array of entries")
    try:
        return as_cmatrix(rows)
    except ValueError as exc:
        raise InputError(f"{source}: {exc}") from exc


def read_matrix(path) -> np.ndarray:
    """Read a ``.json`` or ``.csv`` matrix file (other suffixes are sniffed)."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {p}: {exc.strerror or exc}") from exc
    if p.suffix.lower() == ".csv" or (p.suffix.lower() != ".json" and not text.lstrip().startswith("{")):
        return matrix_from_csv(text, str(p))
    return matrix_from_json(text, str(p))


def write_matrix(path, a, fmt: str = "json") -> None:
    text = matrix_to_csv(a) if fmt == "csv" else json.dumps(matrix_to_json(a)) + "\n"
    Path(path).write_text(text)


def parse_function_spec(spec) -> WirtingerFunction:
    """
    Build a builtin from ``{"fn": name, ...}``, its JSON text, or a bare name.

    ``zzbar_poly`` takes ``terms`` as ``[[k, m, re, im], ...]``; ``holo_poly``
    takes ``coeffs`` as ``[[re, im], ...]`` in ascending order.
    """
    if isinstance(spec, str):
        text = spec.strip()
        spec = _loads(text, "function spec") if text.startswith("{") else {"fn": text}
    if not isinstance(spec, dict) or "fn" not in spec:
        raise InputError("function spec must be an object with an 'fn' key")
    name = spec["fn"]
    try:
        if name == "zzbar_poly":
            return builtin(name, terms=[(int(k), int(m), complex(re_, im)) for k, m, re_, im in spec["terms"]])
        if name == "holo_poly":
            return builtin(name, coeffs=[complex(re_, im) for re_, im in spec["coeffs"]])
        if name == "monomial":
            return builtin(name, k=int(spec["k"]), m=int(spec["m"]))
        return builtin(name)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad function spec {spec!r}: {exc}") from exc


def read_function_spec(path) -> WirtingerFunction:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return parse_function_spec(_loads(text, str(path)))
