"""Command-line front end.

Usage: ``bergman-lab COMMAND [options]`` with COMMAND one of spectrum, norm,
trace, schatten, oracle, compare, sweep.  Options may also come from a JSON
file given by ``--config``; flags on the command line win.

Exit status: 0 on success (for ``compare``: all checks passed), 1 when a
computation fails (structured error as JSON on stderr) or a comparison
fails, 2 when the configuration cannot be parsed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import oracles
from .acceptance import CASES, run_cases
from .errors import BergmanLabError, NonTraceClass
from .geometry import (AmbientDomain, Complement, DilatedCopy, Disc, Horodisc, HorocyclicStrip,
                       HypercyclicLune, IdealPolygon, Region, region_from_json)
from .io import dumps, eigenvalue_svg, to_csv
from .moments import compress
from .schatten import dilation_tail_sum, schatten_norm, trace_by_formula
from .toeplitz import norm_estimate, sweep_spectra

COMMANDS = ("spectrum", "norm", "trace", "schatten", "oracle", "compare", "sweep")
ORACLE_CASES = ("dilation", "offcenter", "horostrip", "lune", "ball")

DEFAULTS = {
    "ambient": "disc", "region": None, "orders": "32", "p": 1.0, "rho": None, "rho1": None,
    "rho2": None, "a": None, "b": None, "n": 1, "x": 0.0, "y": 0.0, "r": None, "R": 1.0,
    "delta": None, "case": None, "output": "json", "out": None, "seed": 0,
    "budget": 60_000, "depth": 10, "method": "auto",
}


class ConfigError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bergman-lab",
                                     description="Spectra of Toeplitz operators on Bergman spaces.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="JSON file with option values")
    parser.add_argument("--ambient", help="disc | ball:N | polydisc:R1,R2,... | JSON")
    parser.add_argument("--region", help="region JSON or shorthand (ideal-triangle, horodisc:RHO, "
                                         "strip:RHO1,RHO2, lune:A,B, disc:X,Y,R, dilated:RHO)")
    parser.add_argument("--orders", help="truncation order(s), comma separated")
    parser.add_argument("--method", choices=("auto", "closed_form", "quadrature", "slice"))
    parser.add_argument("--p", type=float, help="Schatten exponent")
    parser.add_argument("--rho", type=float)
    parser.add_argument("--rho1", type=float)
    parser.add_argument("--rho2", type=float)
    parser.add_argument("--a", type=float, help="normalized lower wedge angle")
    parser.add_argument("--b", type=float, help="normalized upper wedge angle")
    parser.add_argument("--n", type=int, help="dimension for oracle cases")
    parser.add_argument("--x", type=float, help="disc center, real part")
    parser.add_argument("--y", type=float, help="disc center, imaginary part")
    parser.add_argument("--r", type=float, help="inner radius")
    parser.add_argument("--R", type=float, help="outer radius")
    parser.add_argument("--delta", type=float, help="distance from inner center to outer boundary")
    parser.add_argument("--case", help="oracle case or comparison case ('all' for compare)")
    parser.add_argument("--output", choices=("csv", "json", "svg"))
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--budget", type=int, help="maximum quadrature cell count")
    parser.add_argument("--depth", type=int, help="maximum quadrature refinement depth")
    return parser


def resolve(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = set(loaded) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(loaded)
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    cfg["command"] = args.command
    try:
        orders = cfg["orders"]
        if isinstance(orders, str):
            orders = [int(v) for v in orders.split(",") if v.strip()]
        elif isinstance(orders, int):
            orders = [orders]
        cfg["orders"] = [int(v) for v in orders]
    except ValueError as exc:
        raise ConfigError(f"bad --orders value: {cfg['orders']!r}") from exc
    if not cfg["orders"] or min(cfg["orders"]) < 1:
        raise ConfigError("orders must be positive integers")
    cfg["ambient"] = parse_ambient(cfg["ambient"])
    if cfg["region"] is not None:
        cfg["region"] = parse_region(cfg["region"], cfg)
    return cfg


def _floats(text: str, count: int | None = None) -> list[float]:
    vals = [float(v) for v in text.split(",")] if text else []
    if count is not None and len(vals) != count:
        raise ValueError(f"expected {count} numbers, got {text!r}")
    return vals


def parse_ambient(spec) -> AmbientDomain:
    try:
        if isinstance(spec, AmbientDomain):
            return spec
        if isinstance(spec, dict):
            return AmbientDomain.from_json(spec)
        spec = str(spec).strip()
        if spec.startswith("{"):
            return AmbientDomain.from_json(json.loads(spec))
        head, _, tail = spec.partition(":")
        if head == "disc":
            return AmbientDomain.unit_disc()
        if head == "ball":
            return AmbientDomain.unit_ball(int(tail or 1))
        if head == "polydisc":
            return AmbientDomain.polydisc(_floats(tail))
    except (ValueError, KeyError, BergmanLabError) as exc:
        raise ConfigError(f"bad ambient {spec!r}: {exc}") from exc
    raise ConfigError(f"unknown ambient {spec!r}")


def parse_region(spec, cfg: dict | None = None) -> Region:
    """Region from JSON (text or object) or a shorthand; flags fill omitted parameters."""
    cfg = cfg or DEFAULTS

    def need(key):
        if cfg.get(key) is None:
            raise ValueError(f"missing --{key}")
        return float(cfg[key])

    try:
        if isinstance(spec, dict):
            return region_from_json(spec)
        spec = str(spec).strip()
        if spec.startswith("{"):
            return region_from_json(json.loads(spec))
        head, _, tail = spec.partition(":")
        if head == "complement":
            return Complement(parse_region(tail, cfg))
        if head == "ideal-triangle":
            return IdealPolygon.regular(3)
        if head == "ideal-polygon":
            return IdealPolygon.regular(int(tail))
        if head == "horodisc":
            return Horodisc(0.0, _floats(tail, 1)[0] if tail else need("rho"))
        if head == "dilated":
            return DilatedCopy(_floats(tail, 1)[0] if tail else need("rho"))
        if head == "strip":
            r1, r2 = _floats(tail, 2) if tail else (need("rho1"), need("rho2"))
            return HorocyclicStrip(0.0, r1, r2)
        if head == "lune":
            a, b = _floats(tail, 2) if tail else (need("a"), need("b"))
            return HypercyclicLune(-1.0, 1.0, math.pi * a, math.pi * b)
        if head == "disc":
            x, y, r = _floats(tail, 3)
            return Disc(complex(x, y), r)
    except (ValueError, KeyError, TypeError, BergmanLabError) as exc:
        raise ConfigError(f"bad region {spec!r}: {exc}") from exc
    raise ConfigError(f"unknown region shorthand {spec!r}")


def _require_region(cfg) -> Region:
    if cfg["region"] is None:
        raise ConfigError(f"{cfg['command']} needs --region")
    return cfg["region"]


def _quad_kwargs(cfg) -> dict:
    return {"budget": int(cfg["budget"]), "depth": int(cfg["depth"])}


def oracle_rules(region: Region) -> list[tuple]:
    """Known spectral endpoints for plotting; empty when none is cataloged."""
    try:
        if isinstance(region, Horodisc):
            return [(1.0, "spectrum fills [0, 1]")]
        if isinstance(region, HorocyclicStrip):
            return [(oracles.horostrip_endpoint(region.rho1, region.rho2), "strip endpoint")]
        if isinstance(region, HypercyclicLune):
            a, b = region.normalized
            return [(oracles.lune_norm(a, b).hi, "lune endpoint")]
        if isinstance(region, DilatedCopy):
            return [(region.rho ** 2, "rho^2")]
        if isinstance(region, Disc):
            return [(oracles.offcenter_disc_spectrum(region.center, region.radius).values(1)[0],
                     "top eigenvalue (closed form)")]
    except BergmanLabError:
        return []
    return []


def cmd_spectrum(cfg):
    region = _require_region(cfg)
    specs = sweep_spectra(region, cfg["orders"], cfg["ambient"], cfg["method"], **_quad_kwargs(cfg))
    last = specs[-1]
    history = [(s.order, s.top, s.bottom) for s in specs]
    if cfg["output"] == "csv":
        rows = [(i, float(v), s.order, float(s.gram_error), float(s.solver_residual))
                for s in specs for i, v in enumerate(s.eigenvalues)]
        return to_csv(("index", "eigenvalue", "order", "gram_error", "solver_residual"), rows), 0
    if cfg["output"] == "svg":
        return eigenvalue_svg(last.eigenvalues, f"{region.kind}, N = {last.order}",
                              oracle_rules(region)), 0
    out = last.to_json()
    out["history"] = [list(h) for h in history]
    out["region"] = region.to_json()
    return dumps(out), 0


def _history_rows(history):
    rows = []
    prev = None
    for order, top, bottom in history:
        rows.append((order, float(top), float(bottom), float(top - prev) if prev is not None else 0.0))
        prev = top
    return rows


def cmd_norm(cfg):
    region = _require_region(cfg)
    lower, history = norm_estimate(cfg["ambient"], region, cfg["orders"], cfg["method"],
                                   **_quad_kwargs(cfg))
    if cfg["output"] == "csv":
        return to_csv(("order", "top", "bottom", "top_change"), _history_rows(history)), 0
    if cfg["output"] == "svg":
        return eigenvalue_svg([h[1] for h in history], f"top eigenvalue by order, {region.kind}",
                              oracle_rules(region)), 0
    return dumps({"toeplitz_norm_lower": lower, "restriction_norm_lower": math.sqrt(max(lower, 0.0)),
                  "history": [list(h) for h in history], "region": region.to_json()}), 0


def cmd_sweep(cfg):
    region = _require_region(cfg)
    specs = sweep_spectra(region, cfg["orders"], cfg["ambient"], cfg["method"], **_quad_kwargs(cfg))
    history = [(s.order, s.top, s.bottom) for s in specs]
    rows = _history_rows(history)
    if cfg["output"] == "csv":
        return to_csv(("order", "top", "bottom", "top_change"), rows), 0
    if cfg["output"] == "svg":
        return eigenvalue_svg([h[1] for h in history], f"top eigenvalue by order, {region.kind}",
                              oracle_rules(region)), 0
    return dumps({"region": region.to_json(),
                  "sweep": [{"order": o, "top": t, "bottom": b, "top_change": d} for o, t, b, d in rows],
                  "spectra": [s.to_json() for s in specs]}), 0


def cmd_trace(cfg):
    region = _require_region(cfg)
    value, err = trace_by_formula(region, cfg["ambient"])
    if cfg["output"] == "csv":
        return to_csv(("value", "error_estimate"), [(value, err)]), 0
    if cfg["output"] == "svg":
        raise ConfigError("trace has no SVG output")
    return dumps({"value": value, "error_estimate": err, "region": region.to_json()}), 0


def cmd_schatten(cfg):
    region = _require_region(cfg)
    p = float(cfg["p"])
    order = cfg["orders"][-1]
    g = compress(region, order, cfg["ambient"], cfg["method"], **_quad_kwargs(cfg))
    tail = 0.0
    if isinstance(region, DilatedCopy) and cfg["ambient"].is_unit_disc:
        tail = dilation_tail_sum(region.rho, order, p)
    trace_value = None
    if p == 1.0 and cfg["ambient"].n == 1:
        try:
            trace_value = trace_by_formula(region, cfg["ambient"])[0]
        except NonTraceClass:
            trace_value = None
    rep = schatten_norm(g, p, tail, trace_value)
    if cfg["output"] == "csv":
        return to_csv(("p", "order", "value_matrix", "tail_bound", "value_trace_formula"),
                      [(rep.p, rep.order, rep.value_matrix, rep.tail_bound,
                        "" if rep.value_trace_formula is None else rep.value_trace_formula)]), 0
    if cfg["output"] == "svg":
        raise ConfigError("schatten has no SVG output")
    out = rep.to_json()
    out["region"] = region.to_json()
    return dumps(out), 0


def _oracle(cfg) -> oracles.OracleResult:
    case = cfg["case"]

    def need(key):
        if cfg.get(key) is None:
            raise ConfigError(f"oracle case {case!r} needs --{key}")
        return cfg[key]

    if case == "dilation":
        return oracles.dilation_spectrum(int(cfg["n"]), float(need("rho")))
    if case == "offcenter":
        return oracles.offcenter_disc_spectrum(complex(float(cfg["x"]), float(cfg["y"])), float(need("r")))
    if case == "horostrip":
        return oracles.horostrip_interval(float(need("rho1")), float(need("rho2")))
    if case == "lune":
        return oracles.lune_norm(float(need("a")), float(need("b")))
    if case == "ball":
        return oracles.ball_bounds(int(cfg["n"]), float(cfg["R"]), float(need("r")), float(need("delta")))
    raise ConfigError(f"unknown oracle case {case!r}; choose from {', '.join(ORACLE_CASES)}")


def cmd_oracle(cfg):
    res = _oracle(cfg)
    count = cfg["orders"][0] if cfg["orders"] else 8
    if cfg["output"] == "csv":
        if res.kind == "sequence":
            return to_csv(("index", "eigenvalue"), list(enumerate(float(v) for v in res.values(count)))), 0
        return to_csv(("lo", "hi"), [(float(res.lo), float(res.hi))]), 0
    if cfg["output"] == "svg":
        if res.kind != "sequence":
            raise ConfigError("oracle SVG output is available for eigenvalue sequences only")
        return eigenvalue_svg(res.values(count), f"closed-form eigenvalues ({cfg['case']})"), 0
    return dumps(res.to_json(count)), 0


def cmd_compare(cfg):
    case = cfg["case"] or "all"
    names = list(CASES) if case == "all" else [case]
    for name in names:
        if name not in CASES:
            raise ConfigError(f"unknown comparison case {name!r}; choose from all, {', '.join(CASES)}")
    checks = run_cases(names, int(cfg["seed"]))
    passed = all(c.passed for c in checks)
    if cfg["output"] == "csv":
        text = to_csv(("case", "label", "value", "target", "tolerance", "passed"),
                      [(c.case, c.label, c.value, c.target, c.tolerance, "pass" if c.passed else "fail")
                       for c in checks])
    elif cfg["output"] == "svg":
        raise ConfigError("compare has no SVG output")
    else:
        text = dumps({"cases": names, "seed": int(cfg["seed"]), "passed": passed,
                      "checks": [c.to_json() for c in checks]})
    return text, 0 if passed else 1


HANDLERS = {"spectrum": cmd_spectrum, "norm": cmd_norm, "trace": cmd_trace, "schatten": cmd_schatten,
            "oracle": cmd_oracle, "compare": cmd_compare, "sweep": cmd_sweep}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve(args)
        text, status = HANDLERS[args.command](cfg)
    except ConfigError as exc:
        print(f"bergman-lab: {exc}", file=sys.stderr)
        return 2
    except BergmanLabError as exc:
        print(json.dumps(exc.to_dict()), file=sys.stderr)
        return 1
    if cfg["out"]:
        with open(cfg["out"], "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def entry() -> None:
    sys.exit(main())
