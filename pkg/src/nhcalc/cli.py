"""
Command-line front end.

Every subcommand reads a matrix file, runs one operation and writes a
deterministic report (JSON with sorted keys, or CSV).  Exit codes: 0 on
success, 1 for unreadable or malformed input, 2 for domain violations,
3 for numerical breakdown.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .calculus import METHODS, matrix_function
from .cauchy_green import STUDY_MODES, QuadratureConfig, convergence_study
from .conjugate import abs_matrix, bounds_report, polar_representation, sign_decomposition
from .errors import DomainError, InputError, NumericalError
from .experiments import random_experiment
from .io import matrix_to_csv, matrix_to_json, parse_function_spec, read_function_spec, read_matrix
from .linalg import default_cluster_tol, eigen_structure, operator_norm, schur_decompose
from .wirtinger import tau

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN, EXIT_NUMERICAL = 0, 1, 2, 3


@dataclass
class RunConfig:
    """Everything that determines a report."""

    command: str
    input: str | None = None
    fn: str | None = None
    fn_file: str | None = None
    method: str = "parlett"
    cluster_tol: float | None = None
    angular_nodes: int = 256
    radial_nodes: int = 64
    out: str | None = None
    format: str = "json"
    check: bool = False
    seed: int = 0
    eps_list: list = field(default_factory=list)
    mode: str = "with_area_centered"
    n_list: list = field(default_factory=list)
    trials: int = 20


def _floats(text: str) -> list[float]:
    if text is None or not text.strip():
        return []
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"cannot parse number list {text!r}") from exc


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"cannot parse integer list {text!r}") from exc


def _structure_meta(a: np.ndarray, tol: float) -> dict:
    spec = eigen_structure(schur_decompose(a, tol), tol)
    sep = spec.separation
    return {
        "cluster_tol": tol,
        "separation": None if not np.isfinite(sep) else sep,
        "clusters": [{"value": [c.value.real, c.value.imag], "exponent_bound": c.exponent_bound}
                     for c in spec.clusters],
    }


def _cfg_opts(cfg: RunConfig) -> dict:
    return {"cfg": QuadratureConfig(cfg.angular_nodes, cfg.radial_nodes)} if cfg.method == "integral" else {}


def _rel(x, y) -> float:
    return float(np.linalg.norm(x - y, 2) / (1 + np.linalg.norm(y, 2)))


def _eval(f, a, cfg: RunConfig, tol: float) -> tuple[np.ndarray, dict]:
    result = matrix_function(f, a, cfg.method, tol, **_cfg_opts(cfg))
    extra = {}
    if cfg.check:
        alt = "hermite" if cfg.method == "parlett" else "parlett"
        other = matrix_function(f, a, alt, tol)
        extra["check"] = {"method": alt, "relative_difference": _rel(result, other)}
    return result, extra


def _function(cfg: RunConfig):
    if cfg.fn_file:
        return read_function_spec(cfg.fn_file)
    if cfg.fn:
        return parse_function_spec(cfg.fn)
    raise InputError("a function is required: pass --fn or --fn-file")


def cmd_funcval(cfg: RunConfig, a: np.ndarray, tol: float) -> dict:
    f = _function(cfg)
    result, extra = _eval(f, a, cfg, tol)
    out = {"function": f.name, "matrix": result, **extra}
    if f.name == "tau":
        out["distance_to_adjoint"] = float(np.linalg.norm(result - a.conj().T, 2))
        out["normality_defect"] = float(np.linalg.norm(a @ a.conj().T - a.conj().T @ a, 2))
    return out


def cmd_conjugate(cfg: RunConfig, a: np.ndarray, tol: float) -> dict:
    result, extra = _eval(tau(), a, cfg, tol)
    return {"matrix": result, "norm": operator_norm(result),
            "distance_to_adjoint": float(np.linalg.norm(result - a.conj().T, 2)), **extra}


def cmd_abs(cfg: RunConfig, a: np.ndarray, tol: float) -> dict:
    ab = abs_matrix(a, tol)
    abab = abs_matrix(ab, tol)
    diff = float(np.linalg.norm(abab - ab, 2))
    return {"matrix": ab, "abs_of_abs": abab, "abs_of_abs_difference": diff,
            "abs_of_abs_equals_abs": bool(diff <= 1e-8 * max(1.0, np.linalg.norm(ab, 2)))}


def cmd_polar(cfg: RunConfig, a: np.ndarray, tol: float) -> dict:
    parts = polar_representation(a, tol)
    return {"abs": parts.abs_part, "v": parts.v_part,
            "residual": float(np.linalg.norm(parts.abs_part @ parts.v_part - a, 2))}


def cmd_sign(cfg: RunConfig, a: np.ndarray, tol: float) -> dict:
    s, n = sign_decomposition(a)
    return {"sign": s, "n": n, "residual": float(np.linalg.norm(s @ n - a, 2))}


def cmd_bounds(cfg: RunConfig, a: np.ndarray, tol: float) -> dict:
    rep = bounds_report(a, tol)
    applicable = ["spectral_lower", "triangular", "von_neumann"]
    if rep["spectral"]["upper_available"]:
        applicable.append("spectral_upper")
    if rep["interpolation"] is not None:
        applicable.append("interpolation")
    rep["applicable"] = sorted(applicable)
    return rep


def cmd_study(cfg: RunConfig, a: np.ndarray, tol: float):
    if not cfg.eps_list:
        raise InputError("--eps-list is empty")
    return convergence_study(a, cfg.eps_list, cfg.mode,
                             QuadratureConfig(cfg.angular_nodes, cfg.radial_nodes), tol)


MATRIX_COMMANDS = {
    "funcval": cmd_funcval,
    "conjugate": cmd_conjugate,
    "abs": cmd_abs,
    "polar": cmd_polar,
    "sign": cmd_sign,
    "bounds": cmd_bounds,
    "study": cmd_study,
}


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return matrix_to_json(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    return x


def _table_csv(rows: list[dict]) -> str:
    keys = list(rows[0]) if rows else []
    lines = [",".join(keys)] + [",".join(repr(r[k]) for k in keys) for r in rows]
    return "\n".join(lines) + "\n"


def run(cfg: RunConfig) -> str:
    """Execute `cfg` and return the report text."""
    if cfg.command == "random-experiment":
        if not cfg.n_list:
            raise InputError("--n-list is empty")
        rows = random_experiment(cfg.n_list, cfg.trials, cfg.seed)
        if cfg.format == "csv":
            return _table_csv(rows)
        return json.dumps({"config": asdict(cfg), "rows": rows}, sort_keys=True, indent=2) + "\n"
    if cfg.input is None:
        raise InputError("--input is required")
    if cfg.command == "study" and not cfg.eps_list:
        raise InputError("--eps-list is empty")
    a = read_matrix(cfg.input)
    tol = default_cluster_tol(a) if cfg.cluster_tol is None else cfg.cluster_tol
    payload = MATRIX_COMMANDS[cfg.command](cfg, a, tol)
    if cfg.command == "study":
        if cfg.format == "csv":
            return payload.to_csv()
        body = payload.to_dict()
    else:
        if cfg.format == "csv":
            key = next(k for k in ("matrix", "abs", "sign") if k in payload)
            return matrix_to_csv(payload[key])
        body = payload
    report = {"command": cfg.command, "config": asdict(cfg), "structure": _structure_meta(a, tol),
              "result": _jsonable(body)}
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nhcalc", description="Non-holomorphic matrix functions.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fn=False):
        p.add_argument("--input", required=True, help="matrix file (.json or .csv)")
        p.add_argument("--method", choices=METHODS, default="parlett")
        p.add_argument("--cluster-tol", type=float, default=None)
        p.add_argument("--angular-nodes", type=int, default=256)
        p.add_argument("--radial-nodes", type=int, default=64)
        p.add_argument("--out", default=None, help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--check", action="store_true", help="cross-check against a second method")
        p.add_argument("--seed", type=int, default=0)
        if fn:
            g = p.add_mutually_exclusive_group()
            g.add_argument("--fn", help='builtin name or JSON spec, e.g. \'{"fn":"monomial","k":1,"m":1}\'')
            g.add_argument("--fn-file")

    common(sub.add_parser("funcval", help="evaluate f(A)"), fn=True)
    for name, text in (("conjugate", "the conjugate of A"), ("abs", "abs(A) = (A A^c)^(1/2)"),
                       ("polar", "commutative polar representation"), ("sign", "sign decomposition"),
                       ("bounds", "norm bounds for the conjugate")):
        common(sub.add_parser(name, help=text))
    st = sub.add_parser("study", help="disc-radius convergence study")
    common(st)
    st.add_argument("--eps-list", required=True, help="comma-separated decreasing radii")
    st.add_argument("--mode", choices=STUDY_MODES, default="with_area_centered")
    rx = sub.add_parser("random-experiment", help="conjugate norms of random complex matrices")
    rx.add_argument("--n-list", required=True)
    rx.add_argument("--trials", type=int, default=20)
    rx.add_argument("--seed", type=int, default=0)
    rx.add_argument("--out", default=None)
    rx.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    d = vars(ns).copy()
    d["eps_list"] = _floats(d.get("eps_list")) if "eps_list" in d else []
    d["n_list"] = _ints(d["n_list"]) if d.get("n_list") else []
    known = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in d.items() if k in known})


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        text = run(cfg)
        if cfg.out:
            with open(cfg.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (InputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


__all__ = ["RunConfig", "run", "main", "build_parser", "config_from_args"]
