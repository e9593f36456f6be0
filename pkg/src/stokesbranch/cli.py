"""Batch front end: JSON configs in, CSV/JSON tables out.

Subcommands
    stream              uniform-stream summary and wave-existence verdict
    dispersion          (tau, sigma) table plus the dispersion root
    mu2                 second-order branch coefficients lambda2/Lambda2/mu2
    irrotational-scan   closed-form zero-vorticity scan plus tau0/F0/window

Configs are JSON objects:

    {"omega_poly": [c0, c1, ...],
     "s": 0.8,                  # or "R": 1.9 (exactly one of the two)
     "tau_scan": {"min": 0.1, "max": 3.0, "n": 30}}

``tau_scan`` is required by ``dispersion`` and ``irrotational-scan``.
Numbers are printed with 12 significant digits and a dot decimal
separator, so identical configs produce byte-identical output.

Exit codes: 0 success, 2 invalid config, 3 numerical failure,
4 no dispersion root (supercritical stream).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import dispersion as _dispersion
from . import expansion as _expansion
from . import irrotational as _irrotational
from . import stream as _stream
from .errors import NoRootError, StokesBranchError

__all__ = ["main", "RunConfig", "load_config"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_NO_ROOT = 4

JSON_SCHEMA = "v1"


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    omega_poly: tuple[float, ...]
    s: float | None
    bernoulli: float | None
    tau_scan: tuple[float, float, int] | None
    tolerance: float | None

    @property
    def vorticity(self) -> _stream.VorticitySpec:
        return _stream.VorticitySpec(self.omega_poly)


def load_config(path: str) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")

    omega_poly = raw.get("omega_poly")
    if not isinstance(omega_poly, list) or not omega_poly or not all(
        isinstance(c, (int, float)) and math.isfinite(c) for c in omega_poly
    ):
        raise ConfigError("omega_poly must be a non-empty list of finite numbers")

    has_s = "s" in raw
    has_r = "R" in raw
    if has_s == has_r:
        raise ConfigError("exactly one of 's' or 'R' must be provided")
    for key in ("s", "R"):
        if key in raw and not (
            isinstance(raw[key], (int, float)) and math.isfinite(raw[key])
        ):
            raise ConfigError(f"'{key}' must be a finite number")

    tau_scan = None
    if "tau_scan" in raw:
        ts = raw["tau_scan"]
        if not isinstance(ts, dict) or not {"min", "max", "n"} <= set(ts):
            raise ConfigError("tau_scan must be an object with min, max, n")
        lo, hi, n = ts["min"], ts["max"], ts["n"]
        if not (
            isinstance(lo, (int, float))
            and isinstance(hi, (int, float))
            and isinstance(n, int)
            and lo < hi
            and n >= 2
        ):
            raise ConfigError("tau_scan requires min < max and integer n >= 2")
        tau_scan = (float(lo), float(hi), int(n))

    tolerance = None
    if "tolerance" in raw:
        tol = raw["tolerance"]
        if not (isinstance(tol, (int, float)) and 0.0 < tol <= 1e-2):
            raise ConfigError("tolerance must lie in (0, 1e-2]")
        tolerance = float(tol)

    return RunConfig(
        omega_poly=tuple(float(c) for c in omega_poly),
        s=float(raw["s"]) if has_s else None,
        bernoulli=float(raw["R"]) if has_r else None,
        tau_scan=tau_scan,
        tolerance=tolerance,
    )


def _fmt(x: float) -> str:
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(float(x), ".12g")


def _build_stream(config: RunConfig) -> _stream.StreamSolution:
    vort = config.vorticity
    if config.s is not None:
        return _stream.stream_profile(vort, config.s)
    return _stream.stream_from_bernoulli(vort, config.bernoulli)


def _write(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv_table(header: list[str], rows: list[list], footer: list[tuple] = ()) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(x) for x in row))
    for label, value in footer:
        lines.append(f"{label},{_fmt(value)}")
    return "\n".join(lines) + "\n"


def _json_doc(payload: dict) -> str:
    return json.dumps({"schema": JSON_SCHEMA, **payload}, indent=2) + "\n"


def cmd_stream(config: RunConfig, out: str | None, fmt: str) -> int:
    sol = _build_stream(config)
    crit = _stream.critical_point(config.vorticity)
    verdict = _stream.froude_condition(sol).value
    fields = [
        ("s", sol.s),
        ("d", sol.d),
        ("R", sol.bernoulli),
        ("kappa", sol.kappa),
        ("froude", sol.froude),
        ("s_c", crit.s_c),
        ("R_c", crit.r_c),
    ]
    if fmt == "json":
        payload = {key: value for key, value in fields}
        payload["verdict"] = verdict
        _write(_json_doc(payload), out)
    else:
        header = [key for key, _ in fields] + ["verdict"]
        row = ",".join([_fmt(v) for _, v in fields] + [verdict])
        _write(",".join(header) + "\n" + row + "\n", out)
    return EXIT_OK


def cmd_dispersion(config: RunConfig, out: str | None, fmt: str) -> int:
    if config.tau_scan is None:
        raise ConfigError("dispersion requires tau_scan")
    sol = _build_stream(config)
    tol = config.tolerance if config.tolerance is not None else 1e-12
    disp = _dispersion.tau_star(sol, tol=tol)
    lo, hi, n = config.tau_scan
    taus = np.linspace(lo, hi, n)
    sigmas = [_dispersion.sigma(sol, t) for t in taus]
    if fmt == "json":
        _write(
            _json_doc(
                {
                    "rows": [[t, s] for t, s in zip(taus.tolist(), sigmas)],
                    "tau_star": disp.tau_star,
                    "lambda0": disp.lambda0,
                }
            ),
            out,
        )
    else:
        _write(
            _csv_table(
                ["tau", "sigma"],
                [[t, s] for t, s in zip(taus, sigmas)],
                footer=[("tau_star", disp.tau_star), ("lambda0", disp.lambda0)],
            ),
            out,
        )
    return EXIT_OK


def cmd_mu2(config: RunConfig, out: str | None, fmt: str) -> int:
    sol = _build_stream(config)
    tol = config.tolerance if config.tolerance is not None else 1e-12
    disp = _dispersion.tau_star(sol, tol=tol)
    _, result = _expansion.second_order_pipeline(sol, disp)
    fields = [
        ("tau_star", disp.tau_star),
        ("lambda2", result.lambda2),
        ("Lambda2", result.Lambda2),
        ("mu2", result.mu2),
        ("I1", result.I1),
        ("I2", result.I2),
        ("relation_residual", result.relation_residual),
    ]
    if fmt == "json":
        _write(_json_doc(dict(fields)), out)
    else:
        _write(_csv_table(["quantity", "value"], [[k, v] for k, v in fields]), out)
    return EXIT_OK


def cmd_irrotational_scan(config: RunConfig, out: str | None, fmt: str) -> int:
    if config.tau_scan is None:
        raise ConfigError("irrotational-scan requires tau_scan")
    if any(c != 0.0 for c in config.omega_poly):
        raise ConfigError("irrotational-scan requires omega_poly == [0]")
    lo, hi, n = config.tau_scan
    if lo < _irrotational.TAU_MIN:
        raise ConfigError(f"tau_scan.min must be >= {_irrotational.TAU_MIN}")
    taus = np.linspace(lo, hi, n)
    rows = []
    for t in taus:
        link = _irrotational.chain(float(t))
        mu2_sign = int(np.sign(-link.lambda2))
        rows.append(
            [link.tau_star, link.theta, link.froude, link.f_value, link.lambda2, mu2_sign]
        )
    tau0 = _irrotational.tau0_root()
    window = _irrotational.assumption_window()
    footer = [
        ("tau0", tau0),
        ("F0", window.f_high),
        ("window_low", window.f_low),
        ("window_high", window.f_high),
    ]
    if fmt == "json":
        _write(
            _json_doc(
                {
                    "columns": ["tau", "theta", "F", "f", "lambda2", "mu2_sign"],
                    "rows": rows,
                    "tau0": tau0,
                    "F0": window.f_high,
                    "window_low": window.f_low,
                    "window_high": window.f_high,
                    "analytic_bound": window.analytic_bound,
                    "analytic_bound_sufficient": window.analytic_bound_sufficient,
                }
            ),
            out,
        )
    else:
        _write(
            _csv_table(["tau", "theta", "F", "f", "lambda2", "mu2_sign"], rows, footer),
            out,
        )
    return EXIT_OK


_COMMANDS = {
    "stream": cmd_stream,
    "dispersion": cmd_dispersion,
    "mu2": cmd_mu2,
    "irrotational-scan": cmd_irrotational_scan,
}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stokesbranch",
        description="Branch coefficients of small-amplitude steady gravity waves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="path to a JSON run config")
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--format", default="csv", choices=("csv", "json"))
        p.add_argument("--tol", type=float, default=None,
                       help="override the root-finding tolerance")
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, which matches the config exit code
        return int(exc.code) if exc.code else EXIT_OK
    try:
        config = load_config(args.config)
        if args.tol is not None:
            if not 0.0 < args.tol <= 1e-2:
                raise ConfigError("--tol must lie in (0, 1e-2]")
            config = RunConfig(
                omega_poly=config.omega_poly,
                s=config.s,
                bernoulli=config.bernoulli,
                tau_scan=config.tau_scan,
                tolerance=args.tol,
            )
        return _COMMANDS[args.command](config, args.out, args.format)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NoRootError as exc:
        print(f"no dispersion root: {exc}", file=sys.stderr)
        return EXIT_NO_ROOT
    except (StokesBranchError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
