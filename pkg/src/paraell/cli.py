"""Command-line front end.

Exit codes: 0 success, 2 negative verdict, 1 error.  Every command prints a
single summary line on stdout; reports go to ``--out``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import interpolation, spaces, strip, symbols
from .problems import LIBRARY
from .rofunc import parse_phi

EXIT_OK, EXIT_ERROR, EXIT_FALSE = 0, 1, 2

COMMANDS = ("check-ellipticity", "norm", "interp-verify", "estimate-scan", "fredholm-probe")


class ConfigError(Exception):
    pass


def _read_json(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def load_problem(spec: str) -> symbols.BVProblem:
    """A JSON problem file, or ``library:<name>`` for a built-in problem."""
    if spec.startswith("library:"):
        name = spec.split(":", 1)[1]
        if name not in LIBRARY:
            raise ConfigError(f"unknown library problem {name!r}; choose from {sorted(LIBRARY)}")
        return LIBRARY[name]()
    d = _read_json(spec)
    try:
        p = symbols.problem_from_dict(d)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{spec}: invalid problem: {exc}") from exc
    if p.name == "problem":
        p = symbols.BVProblem(p.q, p.interior, p.boundary, name=os.path.splitext(os.path.basename(spec))[0])
    return p


def parse_angle_value(text: str) -> float:
    """``90deg``, ``1.57rad`` or a bare number in radians."""
    t = text.strip().lower()
    try:
        if t.endswith("deg"):
            return math.radians(float(t[:-3]))
        if t.endswith("rad"):
            return float(t[:-3])
        return float(t)
    except ValueError as exc:
        raise ConfigError(f"bad angle {text!r}") from exc


def parse_grid(text: str) -> tuple:
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except ValueError as exc:
        raise ConfigError(f"bad grid {text!r}; expected AxB") from exc


def parse_lambdas(text: str) -> list:
    try:
        return [complex(v.strip().replace(" ", "")) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad lambda list {text!r}") from exc


def _angle_from(args, cfg) -> symbols.Angle:
    if args.ray is not None:
        return symbols.Angle.ray(parse_angle_value(args.ray))
    if args.angle is not None:
        lo, _, hi = args.angle.partition(",")
        if not hi:
            raise ConfigError("--angle needs lo,hi")
        return symbols.Angle(parse_angle_value(lo), parse_angle_value(hi))
    if "angle" in cfg:
        return symbols.Angle.from_dict(cfg["angle"])
    if "ray" in cfg:
        return symbols.Angle.ray(float(cfg["ray"]))
    raise ConfigError("an angle is required (--ray or --angle)")


def _merge(args, cfg, name, default=None):
    v = getattr(args, name, None)
    if v is not None:
        return v
    return cfg.get(name, default)


def _out_dir(args, cfg):
    out = _merge(args, cfg, "out", ".")
    os.makedirs(out, exist_ok=True)
    return out


def _dump(path, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# commands


def cmd_check_ellipticity(args, cfg):
    problem = args.problem or cfg.get("problem")
    if not problem:
        raise ConfigError("a problem file is required")
    p = load_problem(problem)
    K = _angle_from(args, cfg)
    conf = symbols.EllipticityConfig(
        tol_a=float(_merge(args, cfg, "tol_a", 1e-6)), tol_b=float(_merge(args, cfg, "tol_b", 1e-6))
    )
    rep = symbols.check_parameter_ellipticity(p, K, conf)
    out = _out_dir(args, cfg)
    _dump(os.path.join(out, "ellipticity.json"), rep.to_dict())
    print(
        f"check-ellipticity {p.name}: verdict={'true' if rep.verdict else 'false'} "
        f"minSymbolModulus={rep.min_symbol_modulus:.6g} minLopatinskiiSigma={rep.min_lopatinskii_sigma:.6g}"
    )
    return EXIT_OK if rep.verdict else EXIT_FALSE


def cmd_norm(args, cfg):
    phi = parse_phi(_merge(args, cfg, "phi", "power:0"))
    field_path = _merge(args, cfg, "field")
    if field_path:
        if field_path.endswith(".json"):
            with open(field_path) as fh:
                f = spaces.field_from_json(fh.read())
        else:
            f = spaces.read_field(field_path)
        u = spaces.transform(f)
    else:
        sizes = parse_grid(_merge(args, cfg, "grid", "32x32"))
        rng = np.random.default_rng(int(_merge(args, cfg, "seed", 0)))
        u = spaces.Spectrum.random(spaces.TorusGrid(sizes), rng, decay=float(_merge(args, cfg, "decay", 2.0)))
    result = {"phi": phi.label, "grid": list(u.grid.sizes), "hnorm": spaces.hnorm(u, phi)}
    p = _merge(args, cfg, "p")
    if p is not None:
        result["p"] = float(p)
        result["pnorm"] = spaces.pnorm(u, phi, float(p))
        result["pnormPrime"] = spaces.pnorm_prime(u, phi, float(p))
    out = _out_dir(args, cfg)
    _dump(os.path.join(out, "norm.json"), result)
    extra = f" pnorm={result['pnorm']:.12g}" if "pnorm" in result else ""
    print(f"norm {phi.label}: hnorm={result['hnorm']:.12g}{extra}")
    return EXIT_OK


def cmd_interp_verify(args, cfg):
    alpha = parse_phi(_merge(args, cfg, "alpha", None) or _merge(args, cfg, "phi", "power:1"))
    s0 = _merge(args, cfg, "s0")
    s1 = _merge(args, cfg, "s1")
    if s0 is None or s1 is None:
        raise ConfigError("--s0 and --s1 are required")
    s0, s1 = float(s0), float(s1)
    sizes = parse_grid(_merge(args, cfg, "grid", "32x32"))
    grid = spaces.TorusGrid(sizes)
    rng = np.random.default_rng(int(_merge(args, cfg, "seed", 0)))
    trials = int(_merge(args, cfg, "trials", 20))
    lam_text = _merge(args, cfg, "lambdas")
    ps = [abs(v) for v in parse_lambdas(lam_text)] if isinstance(lam_text, str) else [1.0, 10.0, 100.0, 1000.0]
    rel_s, rel_p = [], []
    for _ in range(trials):
        u = spaces.Spectrum.random(grid, rng)
        rel_s.append(interpolation.sobolev_scale_identity(u, alpha, s0, s1)["relerr"])
        if s0 > 0:
            for p in ps:
                rel_p.append(interpolation.param_scale_identity(u, alpha, s0, s1, p)["relerr"])
    worst = max(rel_s + rel_p)
    ok = worst <= 1e-12
    out = _out_dir(args, cfg)
    _dump(
        os.path.join(out, "interp_verify.json"),
        {"alpha": alpha.label, "s0": s0, "s1": s1, "grid": list(sizes), "trials": trials,
         "maxRelerrScale": max(rel_s), "maxRelerrParam": max(rel_p) if rel_p else None, "pass": ok},
    )
    print(f"interp-verify {alpha.label} s0={s0:g} s1={s1:g}: max relerr={worst:.3e} {'pass' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FALSE


def _geometry(args, cfg, default="32x64"):
    K, N = parse_grid(_merge(args, cfg, "grid", default))
    return strip.StripGeometry(K, N)


def cmd_estimate_scan(args, cfg):
    problem = args.problem or cfg.get("problem")
    if not problem:
        raise ConfigError("a problem file is required")
    p = load_problem(problem)
    phi = parse_phi(_merge(args, cfg, "phi", "power:0"))
    K = _angle_from(args, cfg)
    if not K.is_ray:
        raise ConfigError("estimate-scan needs --ray")
    lam_text = _merge(args, cfg, "lambdas", "4,8,16,32,64")
    lams = parse_lambdas(lam_text) if isinstance(lam_text, str) else [complex(v) for v in lam_text]
    mags = sorted(abs(v) for v in lams)
    geom = _geometry(args, cfg)
    res = strip.estimate_scan(p, phi, K, mags, geom)
    out = _out_dir(args, cfg)
    fmt = _merge(args, cfg, "format", "csv")
    if fmt == "json":
        strip.write_scan_json(res, os.path.join(out, "scan.json"))
    else:
        strip.write_scan_csv(res, os.path.join(out, "scan.csv"))
        if fmt == "svg":
            strip.write_scan_svg(res, os.path.join(out, "scan.svg"))
    smin, smax = res.sigma_min(), res.sigma_max()
    print(
        f"estimate-scan {p.name} arg={K.arg_lo:.6g} grid={geom.label}: "
        f"sigmaMin in [{smin.min():.4g}, {smin.max():.4g}] sigmaMax in [{smax.min():.4g}, {smax.max():.4g}]"
    )
    return EXIT_OK


def cmd_fredholm_probe(args, cfg):
    problem = args.problem or cfg.get("problem")
    if not problem:
        raise ConfigError("a problem file is required")
    p = load_problem(problem)
    lam_text = _merge(args, cfg, "lambdas")
    if lam_text is None:
        raise ConfigError("--lambdas is required")
    lams = parse_lambdas(lam_text) if isinstance(lam_text, str) else [complex(v) for v in lam_text]
    if args.ray is not None or args.angle is not None:
        arg = _angle_from(args, cfg).arg_lo
        lams = [abs(v) * complex(math.cos(arg), math.sin(arg)) for v in lams]
    geom = _geometry(args, cfg, "8x32")
    rows = []
    for lam in lams:
        r = strip.fredholm_probe(p, lam, geom)
        rows.append({"lambda": [lam.real, lam.imag], "dimKer": r["dimKer"], "dimCoker": r["dimCoker"]})
    out = _out_dir(args, cfg)
    _dump(os.path.join(out, "fredholm.json"), {"problem": p.name, "grid": geom.label, "probes": rows})
    zero = all(r["dimKer"] == r["dimCoker"] for r in rows)
    print(
        f"fredholm-probe {p.name}: {len(rows)} probes, index zero={'true' if zero else 'false'}, "
        f"max dimKer={max(r['dimKer'] for r in rows)}"
    )
    return EXIT_OK if zero else EXIT_FALSE


HANDLERS = {
    "check-ellipticity": cmd_check_ellipticity,
    "norm": cmd_norm,
    "interp-verify": cmd_interp_verify,
    "estimate-scan": cmd_estimate_scan,
    "fredholm-probe": cmd_fredholm_probe,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="paraell", description="Parameter-elliptic problem toolkit")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("problem", nargs="?", help="problem JSON file or library:<name>")
    ap.add_argument("--config", help="JSON run configuration; flags override its fields")
    ap.add_argument("--ray", help="ray direction, e.g. 90deg or 1.5708rad")
    ap.add_argument("--angle", help="closed angle lo,hi")
    ap.add_argument("--lambdas", help="comma list of lambda values (complex allowed, e.g. 2j)")
    ap.add_argument("--phi", help="smoothness parameter, e.g. powerlog:2,1")
    ap.add_argument("--alpha", help="parameter for interp-verify (alias of --phi)")
    ap.add_argument("--s0", type=float)
    ap.add_argument("--s1", type=float)
    ap.add_argument("--p", type=float, help="parameter value for norm")
    ap.add_argument("--field", help="PELF or JSON field file for norm")
    ap.add_argument("--grid", help="KxN (strip) or NxN (torus)")
    ap.add_argument("--out", help="output directory")
    ap.add_argument("--format", choices=("csv", "json", "svg"))
    ap.add_argument("--seed", type=int)
    ap.add_argument("--tol-a", dest="tol_a", type=float)
    ap.add_argument("--tol-b", dest="tol_b", type=float)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        cfg = _read_json(args.config) if args.config else {}
        if not isinstance(cfg, dict):
            raise ConfigError("configuration must be a JSON object")
        if args.seed is not None and args.seed < 0:
            raise ConfigError("--seed must be non-negative")
        return HANDLERS[args.command](args, cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, RuntimeError, OSError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
