"""Command-line front end.

Subcommands::

    phi | cfun | density | jone | residues    evaluation tables
    transform                                 spherical transform on an s-grid
    invert                                    inversion report at the origin
    verify                                    named invariant suites and A1..A12

``eval <kind>`` is accepted as a synonym for the five table commands.  Every
flag may also come from ``--config file.json`` (same key names, with dashes
replaced by underscores); explicit flags override the file.  Exit codes: 0
success, 1 verification failure, 2 configuration error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .profiles import ProfileError, parse_profile
from .quadrature import QuadratureSpec
from .spherical import EvalMethod, RhoParam, c_function, phi, plancherel_density
from . import transforms as tr

TABLE_COMMANDS = ("phi", "cfun", "density", "jone", "residues")
COMMANDS = TABLE_COMMANDS + ("transform", "invert", "verify")

DEFAULTS = {
    "rho": None, "p": None, "q": None, "format": None, "out": None, "tol": None,
    "method": "auto", "smax": 80.0, "nodes": 16, "panels": 16, "sgrid": None,
    "lam": None, "t": None, "profile": None, "h1": None, "h2": None, "suite": "all",
    "form": "jet", "timings": False,
}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    """Validated run parameters for one command."""

    command: str
    rho: RhoParam | None = None
    fmt: str = "csv"
    out: str | None = None
    tol: float | None = None
    method: EvalMethod = EvalMethod.AUTO
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    sgrid: np.ndarray | None = None
    lam: list = field(default_factory=list)
    t: list = field(default_factory=list)
    profile: object = None
    h1: object = None
    h2: object = None
    suite: str = "all"
    form: str = "jet"
    timings: bool = False


# ---------------------------------------------------------------------------
# parsing helpers

def parse_complex(text: str) -> complex:
    s = str(text).strip().replace(" ", "").replace("i", "j")
    try:
        return complex(s)
    except ValueError as exc:
        raise ConfigError(f"cannot parse complex number {text!r}") from exc


def _split(value) -> list:
    if value is None:
        return []
    if isinstance(value, (list, tuple)):
        return list(value)
    return [v for v in str(value).split(",") if v.strip()]


def parse_sgrid(text) -> np.ndarray:
    """'a:b:n' -> n equally spaced points from a to b inclusive."""
    try:
        a, b, n = str(text).split(":")
        n = int(n)
        if n < 1:
            raise ValueError
        return np.linspace(float(a), float(b), n)
    except ValueError as exc:
        raise ConfigError(f"grid must look like a:b:n, got {text!r}") from exc


def _resolve_rho(rho, p, q) -> RhoParam:
    parsed = None
    if rho is not None:
        try:
            parsed = RhoParam.parse(str(rho))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(str(exc)) from exc
    if p is not None or q is not None:
        if p is None or q is None:
            raise ConfigError("--p and --q must be given together")
        try:
            from_pq = RhoParam.from_pq(int(p), int(q))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if parsed is not None and parsed.two_rho != from_pq.two_rho:
            raise ConfigError(f"rho={parsed} inconsistent with (p,q)=({p},{q})")
        return from_pq
    if parsed is None:
        raise ConfigError("rho is required (--rho n/2 or --p/--q)")
    return parsed


def _profile(text):
    if text is None:
        return None
    try:
        return parse_profile(str(text))
    except ProfileError as exc:
        raise ConfigError(str(exc)) from exc


def build_config(command: str, values: dict) -> RunConfig:
    """Validate merged flag/config values."""
    cfg = RunConfig(command)
    if command != "verify":
        cfg.rho = _resolve_rho(values["rho"], values["p"], values["q"])
    default_fmt = "json" if command in ("invert", "verify") else "csv"
    cfg.fmt = values["format"] or default_fmt
    if cfg.fmt not in ("csv", "json"):
        raise ConfigError("--format must be csv or json")
    cfg.out = values["out"]
    cfg.tol = None if values["tol"] is None else float(values["tol"])
    try:
        cfg.method = EvalMethod.parse(values["method"])
    except ValueError as exc:
        raise ConfigError(f"unknown method {values['method']!r}") from exc
    try:
        cfg.quad = QuadratureSpec(panels=int(values["panels"]), nodes_per_panel=16,
                                  s_max=float(values["smax"]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if values["sgrid"] is not None:
        cfg.sgrid = parse_sgrid(values["sgrid"])
    elif command == "density":
        n = int(values["nodes"])
        if n < 1:
            raise ConfigError("--nodes must be positive")
        cfg.sgrid = np.linspace(0.0, float(values["smax"]), n)
    cfg.lam = [parse_complex(v) for v in _split(values["lam"])]
    try:
        cfg.t = [float(v) for v in _split(values["t"])]
    except ValueError as exc:
        raise ConfigError(f"cannot parse --t {values['t']!r}") from exc
    if any(v < 0 for v in cfg.t):
        raise ConfigError("--t values must be non-negative")
    cfg.profile, cfg.h1, cfg.h2 = (_profile(values[k]) for k in ("profile", "h1", "h2"))
    cfg.suite = values["suite"]
    cfg.form = values["form"]
    cfg.timings = bool(values["timings"])
    _check_command(cfg)
    return cfg


def _check_command(cfg: RunConfig):
    c = cfg.command
    if c in ("phi", "cfun") and not cfg.lam:
        raise ConfigError("--lambda is required")
    if c in ("phi", "jone", "residues") and not cfg.t:
        raise ConfigError("--t is required")
    if c in ("jone", "residues") and cfg.rho.two_rho >= 0:
        raise ConfigError("J(1) defined only for rho<0")
    if c == "transform" and cfg.sgrid is None:
        raise ConfigError("--sgrid is required")
    if c in ("transform", "invert"):
        half = cfg.rho.two_rho < 0 and not cfg.rho.is_integral
        pair = cfg.h1 is not None or cfg.h2 is not None
        if pair and not half:
            raise ConfigError("--h1/--h2 are only meaningful for half-integral rho<0")
        if pair and (cfg.h1 is None or cfg.h2 is None):
            raise ConfigError("half-integral rho<0 needs both --h1 and --h2")
        if pair and cfg.profile is not None:
            raise ConfigError("give either --profile or --h1/--h2")
        if not pair and cfg.profile is None:
            raise ConfigError("--profile is required")
    if c == "verify":
        from .acceptance import SUITES
        if cfg.suite not in SUITES:
            raise ConfigError(f"unknown suite {cfg.suite!r}; choose from {', '.join(SUITES)}")


def _data(cfg: RunConfig) -> tr.KInvariantData:
    if cfg.profile is not None:
        return tr.KInvariantData(f=cfg.profile)
    return tr.KInvariantData(h1=cfg.h1, h2=cfg.h2)


# ---------------------------------------------------------------------------
# commands

def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    return "%.17g" % v


def render_table(columns, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"columns": list(columns), "rows": [list(map(_json_cell, r)) for r in rows]},
                          indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _json_cell(v):
    if isinstance(v, str):
        return v
    v = float(v)
    return v if math.isfinite(v) else str(v)


def cmd_table(cfg: RunConfig):
    rho, c = cfg.rho, cfg.command
    rows = []
    if c == "phi":
        cols = ("lambda_re", "lambda_im", "t", "re", "im", "method")
        for lam in cfg.lam:
            vals = phi(rho, np.full(len(cfg.t), lam), np.array(cfg.t), cfg.method)
            for t, v in zip(cfg.t, np.atleast_1d(vals)):
                rows.append((lam.real, lam.imag, t, v.real, v.imag, cfg.method.value))
    elif c == "cfun":
        cols = ("lambda_re", "lambda_im", "re", "im")
        for lam in cfg.lam:
            v = complex(c_function(rho, lam))
            rows.append((lam.real, lam.imag, v.real, v.imag))
    elif c == "density":
        cols = ("s", "density")
        for s, d in zip(cfg.sgrid, np.atleast_1d(plancherel_density(rho, cfg.sgrid))):
            rows.append((s, float(np.real(d))))
    elif c == "jone":
        cols = ("t", "jone")
        for t in cfg.t:
            rows.append((t, float(tr.j_one(rho, t, cfg.form))))
    else:
        cols = ("k", "t", "residue", "residue_jet")
        n = (-rho.two_rho + 1) // 2
        for k in range(n):
            for t in cfg.t:
                rows.append((str(k), t, float(tr.residue_at(rho, k, t, "sum")),
                             float(tr.residue_at(rho, k, t, "jet"))))
    return render_table(cols, rows, cfg.fmt), 0


def cmd_transform(cfg: RunConfig):
    vals = tr.spherical_transform(cfg.rho, _data(cfg), 1j * cfg.sgrid, cfg.quad, cfg.method)
    rows = [(s, v.real, v.imag) for s, v in zip(cfg.sgrid, np.atleast_1d(vals))]
    return render_table(("s", "re", "im"), rows, cfg.fmt), 0


def cmd_invert(cfg: RunConfig):
    rep = tr.invert_at_origin(cfg.rho, _data(cfg), cfg.quad)
    tol = cfg.tol if cfg.tol is not None else 1e-5
    if _regime_half(cfg):
        branch = tr.constant_branch_check(cfg.rho)
        rep.diagnostics["constant_branch"] = {"lhs": branch.lhs, "rhs": branch.rhs,
                                              "rel_err": branch.rel_err}
    code = 0 if rep.rel_err <= tol else 1
    d = rep.to_dict()
    d["tol"] = tol
    d["passed"] = code == 0
    if cfg.fmt == "json":
        return json.dumps(d, indent=2, sort_keys=True) + "\n", code
    return render_table(("lhs", "rhs", "abs_err", "rel_err"),
                        [(rep.lhs, rep.rhs, rep.abs_err, rep.rel_err)], "csv"), code


def _regime_half(cfg):
    return cfg.rho.two_rho < 0 and not cfg.rho.is_integral


def cmd_verify(cfg: RunConfig):
    from .acceptance import run_suite
    results = run_suite(cfg.suite, cfg.tol)
    items = []
    for r in results:
        d = r.to_dict()
        if not cfg.timings:
            d.pop("runtime")
        items.append(d)
    ok = all(r.passed for r in results)
    report = {"suite": cfg.suite, "passed": ok, "results": items}
    if cfg.fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        rows = [(r.id, c.name, c.error, c.tol, "pass" if c.passed else "fail")
                for r in results for c in r.checks]
        text = render_table(("group", "check", "error", "tol", "status"), rows, "csv")
    return text, 0 if ok else 1


HANDLERS = {"transform": cmd_transform, "invert": cmd_invert, "verify": cmd_verify}


# ---------------------------------------------------------------------------
# argument parsing

def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON file with default values for any flag")
    p.add_argument("--rho", help="exact half-integer, e.g. -3/2")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--tol", type=float)
    p.add_argument("--method", choices=[m.value for m in EvalMethod])
    p.add_argument("--smax", type=float, help="spectral cutoff")
    p.add_argument("--nodes", type=int, help="number of s points for density")
    p.add_argument("--panels", type=int, help="panels of the s quadrature")
    p.add_argument("--sgrid", help="a:b:n grid of s values")
    p.add_argument("--lambda", dest="lam", help="comma separated complex values, e.g. 0+1.3i")
    p.add_argument("--t", help="comma separated radial parameters")
    p.add_argument("--profile", help="bump:<x_c>:<A> or polybump:<c0,...>:<x_c>")
    p.add_argument("--h1", help="bulk profile for half-integral rho<0")
    p.add_argument("--h2", help="log profile for half-integral rho<0")
    p.add_argument("--suite", help="verify suite name")
    p.add_argument("--form", choices=("jet", "halfint", "residue"), help="J(1) evaluation route")
    p.add_argument("--timings", action="store_true", default=None, help="include runtimes in verify output")
    p.add_argument("-v", "--verbose", action="store_true")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superhyp", description="Spherical analysis on supersymmetric spaces")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        _add_common(sub.add_parser(name))
    ev = sub.add_parser("eval", help="evaluation tables")
    ev.add_argument("kind", choices=TABLE_COMMANDS)
    _add_common(ev)
    return parser


def merged_values(ns: argparse.Namespace) -> dict:
    values = dict(DEFAULTS)
    if ns.config:
        try:
            data = json.loads(Path(ns.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        data = {k.replace("-", "_"): v for k, v in data.items()}
        if "lambda" in data:
            data["lam"] = data.pop("lambda")
        unknown = set(data) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        values.update(data)
    for k in DEFAULTS:
        v = getattr(ns, k, None)
        if v is not None:
            values[k] = v
    return values


def _join_negative(argv: list) -> list:
    """Attach values such as '-3/2' or '-1+2i' to the preceding flag.

    argparse only recognizes plain negative numbers as values, not fractions.
    """
    out = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] \
                and re.match(r"^-[0-9.]", tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def run(argv=None) -> tuple[str, int, RunConfig | None]:
    parser = make_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    ns = parser.parse_args(_join_negative(argv))
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    command = ns.kind if ns.command == "eval" else ns.command
    try:
        cfg = build_config(command, merged_values(ns))
    except (ConfigError, ValueError, TypeError) as exc:
        return f"superhyp: error: {exc}\n", 2, None
    try:
        text, code = HANDLERS.get(command, cmd_table)(cfg)
    except (tr.RegimeError, ProfileError) as exc:
        return f"superhyp: error: {exc}\n", 2, cfg
    return text, code, cfg


def main(argv=None) -> int:
    text, code, cfg = run(argv)
    if code == 2 and cfg is None or text.startswith("superhyp: error"):
        sys.stderr.write(text)
        return code
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
