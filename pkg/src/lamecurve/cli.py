"""Command-line frontend: curve data, band edges and verification suites."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

import numpy as np

from . import __version__
from .curve import (
    band_edges_bloch,
    band_edges_hyper,
    curve_coeffs,
    fibre_over_zeta,
    hyperelliptic,
    match_multisets,
    root_separation,
)
from .errors import LameCurveError, NumericalError, ValidationError
from .theta import CHECK_TOL, POLE_GUARD, SERIES_TOL, EllipticContext
from .verify import SUITES, run_suite

SCHEMA = "lamecurve/1"
DEFAULT_TAU = "0.1+1.1i"
DEFAULT_ETA = "0.123+0.057i"
DEFAULT_ZETA = "0.31+0.2i"
EDGE_MATCH_TOL = 1e-5


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_complex(text: str) -> complex:
    """Parse ``a+bi``, ``a-bi``, ``a`` or ``bi`` with no whitespace."""
    bad = ValidationError(f"cannot parse complex number {text!r}; expected a+bi")
    if not text or any(c.isspace() for c in text) or "j" in text.lower():
        raise bad
    s = text
    if s.endswith("i"):
        s = s[:-1]
        if s == "" or s[-1] in "+-":
            s += "1"
        s += "j"
    try:
        z = complex(s)
    except ValueError:
        raise bad from None
    if not np.isfinite(z):
        raise bad
    return z


def pair(z) -> list:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def pairs(values) -> list:
    return [pair(v) for v in np.asarray(values).ravel()]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lamecurve", description="Spectral curve of the difference Lame operator.")
    p.add_argument("--version", action="version", version=f"lamecurve {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--ell", type=int, default=1)
        sp.add_argument("--eta", default=DEFAULT_ETA)
        sp.add_argument("--tau", default=DEFAULT_TAU)
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--check-tol", type=float, default=CHECK_TOL)
        sp.add_argument("--pole-guard", type=float, default=POLE_GUARD)
        sp.add_argument("--series-tol", type=float, default=SERIES_TOL)
        sp.add_argument("--timing", action="store_true", help="include wall-clock timing (not deterministic)")
        return sp

    common(sub.add_parser("coeffs", help="covering-form coefficients C_0..C_N"))
    e = common(sub.add_parser("edges", help="band edges"))
    e.add_argument("--method", choices=("bloch", "hyper", "both"), default="both")
    e.add_argument("--edge-tol", type=float, default=1e-6)
    e.add_argument("--match-tol", type=float, default=EDGE_MATCH_TOL)
    common(sub.add_parser("hyper", help="D, T_top and P coefficients"))
    b = common(sub.add_parser("bloch", help="fibre of the curve over zeta"))
    b.add_argument("--zeta", default=DEFAULT_ZETA)
    b.add_argument("--point-tol", type=float, default=1e-8)
    v = common(sub.add_parser("verify", help="run verification suites"))
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    return p


def resolve_seed(value) -> int:
    if value is not None:
        return int(value)
    env = os.environ.get("LAMECURVE_SEED")
    if env is None:
        return 42
    try:
        return int(env)
    except ValueError:
        raise ValidationError(f"LAMECURVE_SEED must be an integer, got {env!r}") from None


def make_context(args) -> EllipticContext:
    return EllipticContext(
        tau=parse_complex(args.tau),
        eta=parse_complex(args.eta),
        ell=args.ell,
        series_tol=args.series_tol,
        check_tol=args.check_tol,
        pole_guard=args.pole_guard,
    )


def _config(args, ctx, seed) -> dict:
    d = {
        "command": args.command,
        "ell": ctx.ell,
        "eta": pair(ctx.eta),
        "tau": pair(ctx.tau),
        "seed": seed,
        "check_tol": args.check_tol,
        "pole_guard": args.pole_guard,
        "series_tol": args.series_tol,
    }
    for key in ("method", "suite", "zeta", "edge_tol", "match_tol", "point_tol"):
        if hasattr(args, key):
            val = getattr(args, key)
            d[key] = pair(parse_complex(val)) if key == "zeta" else val
    return d


def _checks(rows) -> list:
    return [r.as_dict() for r in rows]


def _row(name, residual, threshold) -> dict:
    residual = float(residual)
    return {
        "name": name,
        "residual": residual,
        "threshold": threshold,
        "passed": bool(np.isfinite(residual) and residual < threshold),
    }


def cmd_coeffs(args, ctx, seed) -> dict:
    C = curve_coeffs(ctx)
    sym = float(np.max(np.abs(C - C[::-1])) / np.max(np.abs(C)))
    return {
        "N": ctx.N,
        "C": pairs(C),
        "checks": [_row("symmetry", sym, args.check_tol)],
    }


def cmd_edges(args, ctx, seed) -> dict:
    doc, checks = {}, []
    bloch = hyper = None
    if args.method in ("bloch", "both"):
        bloch = band_edges_bloch(ctx, args.edge_tol)
        doc["bloch"] = pairs(bloch)
    if args.method in ("hyper", "both"):
        hyper = band_edges_hyper(ctx)
        doc["hyper"] = pairs(hyper)
    expected = 2 * (2 * ctx.ell + 1)
    for name, edges in (("bloch", bloch), ("hyper", hyper)):
        if edges is not None:
            checks.append(_row(f"{name}_count", abs(len(edges) - expected), 0.5))
            neg = match_multisets(edges, -edges)
            checks.append(_row(f"{name}_negation", neg, 1e-9 * max(1.0, float(np.max(np.abs(edges))))))
    if bloch is not None and hyper is not None:
        disc = match_multisets(bloch, hyper)
        doc["discrepancy"] = disc
        checks.append(_row("discrepancy", disc, args.match_tol))
    doc["checks"] = checks
    return doc


def cmd_hyper(args, ctx, seed) -> dict:
    h = hyperelliptic(ctx)
    T, D = h.T_top, h.D
    t_odd = float(np.max(np.abs(T.coeffs[0::2])) / T.max_abs())
    d_even = float(np.max(np.abs(D.coeffs[1::2])) / D.max_abs()) if D.degree > 0 else 0.0
    return {
        "T_top": pairs(T.coeffs),
        "D": pairs(D.coeffs),
        "P": pairs(h.P.coeffs),
        "T_top_odd": t_odd < 1e-10,
        "D_even": d_even < 1e-10,
        "P_degree": h.P.degree,
        "P_root_separation": root_separation(h.P),
        "checks": [
            _row("T_top_parity", t_odd, 1e-10),
            _row("D_parity", d_even, 1e-10),
            _row("odd_part", h.odd_residual, 1e-10),
        ],
    }


def cmd_bloch(args, ctx, seed) -> dict:
    zeta = parse_complex(args.zeta)
    sols = fibre_over_zeta(zeta, ctx, seed=seed, point_tol=args.point_tol)
    points, checks = [], []
    worst = {"curve_equations": 0.0, "covering": 0.0, "eigen": 0.0, "glueing": 0.0}
    for bs in sols:
        d = bs.diagnostics
        res = {
            "curve_equations": max(d["curve_equations"]),
            "covering": d["covering"],
            "eigen": d["eigen"],
            "glueing": d["glueing"],
        }
        for k, v in res.items():
            worst[k] = max(worst[k], float(v))
        points.append(
            {
                "K": pair(bs.point.K),
                "E": pair(bs.point.E),
                "s": pairs(bs.s),
                "residuals": {k: float(v) for k, v in res.items()},
            }
        )
    for k, v in worst.items():
        checks.append(_row(k, v, 1e-8))
    checks.append(_row("fibre_size", abs(len(sols) - 2 * ctx.N), 0.5))
    return {"zeta": pair(zeta), "points": points, "checks": checks}


def cmd_verify(args, ctx, seed) -> dict:
    return {"suite": args.suite, "checks": _checks(run_suite(args.suite, ctx, seed))}


COMMANDS = {
    "coeffs": cmd_coeffs,
    "edges": cmd_edges,
    "hyper": cmd_hyper,
    "bloch": cmd_bloch,
    "verify": cmd_verify,
}


def edges_csv(doc) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["re", "im", "method"])
    for method in ("bloch", "hyper"):
        for re_, im in doc.get(method, []):
            w.writerow([repr(re_), repr(im), method])
    return buf.getvalue()


def _emit(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> tuple:
    """Return ``(exit_code, document)``; the document is ``None`` on input errors."""
    try:
        args = build_parser().parse_args(argv)
        seed = resolve_seed(args.seed)
        if args.format == "csv" and args.command != "edges":
            raise ValidationError("csv output is only available for edges")
        if args.ell < 1:
            raise ValidationError(f"ell must be a positive integer, got {args.ell}")
        ctx = make_context(args)
        config = _config(args, ctx, seed)
    except ValidationError as exc:
        print(f"lamecurve: error: {exc}", file=sys.stderr)
        return 1, None
    doc = {"schema": SCHEMA, "version": __version__, "config": config}
    t0 = time.perf_counter()
    try:
        body = COMMANDS[args.command](args, ctx, seed)
        doc.update(body)
        code = 0 if all(c["passed"] for c in body.get("checks", [])) else 2
    except ValidationError as exc:
        print(f"lamecurve: error: {exc}", file=sys.stderr)
        return 1, None
    except (NumericalError, LameCurveError) as exc:
        doc["error"] = f"{type(exc).__name__}: {exc}"
        code = 2
    doc["passed"] = code == 0
    if args.timing:
        doc["timing"] = {"seconds": time.perf_counter() - t0}
    if args.format == "csv":
        text = edges_csv(doc)
    else:
        text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    _emit(text, args.out)
    if code:
        print(f"lamecurve: {args.command} failed", file=sys.stderr)
    return code, doc


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
