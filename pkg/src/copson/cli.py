"""Command line front end.

Subcommands: certify, scan, estimate, probe, weights, aux, evaluate.
Exit codes: 0 pass, 1 failed certificate or anomaly, 2 usage/config error.

CSV outputs start with one ``# config: {...}`` line holding the resolved
configuration; JSON outputs carry it under the ``config`` key.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from fractions import Fraction

import numpy as np

from . import __version__
from .auxiliary import BOUNDS, aux_sign_scan, resolve
from .best_constant import DEFAULT_SCHEDULE, OptimizerConfig, estimate_schedule, extremal_probe
from .conditions import (
    DEFAULT_TOL,
    a1,
    a2,
    check_cond_16,
    check_cond_17,
    check_cond_115,
    theorem1_applicable,
    theorem1_certificate,
    theorem1prime_certificate,
    _jsonable,
)
from .inequality import copson_constant, copson_lhs, power_sum, ratio_functional
from .weight_builder import build_weights, margins_21
from .weights import parse_family, read_values


class UsageError(Exception):
    pass


def number(text):
    """Decimal strings become floats, ``num/den`` strings exact fractions."""
    text = text.strip()
    try:
        if "/" in text:
            return Fraction(text)
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def int_list(text):
    try:
        vals = [int(float(v)) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError(f"need positive integers: {text!r}")
    return vals


def horizon(text):
    try:
        v = int(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("N must be >= 1")
    return v


def grid_spec(text):
    """``START:STOP:COUNT`` with exact rational endpoints."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be START:STOP:COUNT, got {text!r}")
    try:
        lo, hi, count = Fraction(parts[0]), Fraction(parts[1]), int(parts[2])
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"malformed grid {text!r}") from None
    if count < 1 or hi < lo or (count == 1 and hi != lo):
        raise argparse.ArgumentTypeError(f"malformed grid {text!r}")
    if count == 1:
        return [lo]
    return [lo + (hi - lo) * k / (count - 1) for k in range(count)]


def fmt(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return repr(float(v))


def _config(args):
    cfg = {k: v for k, v in vars(args).items() if k not in ("func",)}
    return _jsonable(cfg)


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
        return
    d = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(out))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv(args, header, rows):
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(_config(args), sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if not isinstance(v, str) else v for v in row])
    return buf.getvalue()


def _family(args):
    spec, alpha = args.family, args.alpha
    if alpha is None:
        return parse_family(spec)
    kind, _, arg = spec.partition(":")
    if kind.lower() not in ("powerdiff", "powerkernel"):
        raise ValueError(f"--alpha does not apply to family {spec!r}")
    if arg and float(arg) != alpha:
        raise ValueError(f"--alpha {alpha} conflicts with family {spec!r}")
    return parse_family(f"{kind}:{alpha!r}")


def cmd_certify(args):
    fam = _family(args)
    conds = args.conditions
    if conds is None:
        conds = ["1.6", "1.7", "thm1"]
        if 0 < float(args.L) < 1:
            conds.append("thm1prime")
        if args.M is not None:
            conds.append("1.15")
    certs = []
    for c in conds:
        if c == "1.6":
            certs.append(check_cond_16(fam, float(args.L), float(args.p), args.N, args.tol))
        elif c == "1.7":
            certs.append(check_cond_17(fam, float(args.L), max(args.N, 2), args.tol))
        elif c == "1.15":
            if args.M is None:
                raise UsageError("condition 1.15 needs --M")
            certs.append(check_cond_115(fam, float(args.L), float(args.M), args.N, args.tol))
        elif c == "thm1":
            certs.append(theorem1_certificate(args.L, args.p, args.tol))
        elif c == "thm1prime":
            certs.append(theorem1prime_certificate(fam, args.L, args.p, max(args.N, 2),
                                                   M=args.M, tol=args.tol))
        else:
            raise UsageError(f"unknown condition {c!r}")
    doc = {"config": _config(args), "certificates": [c.to_dict() for c in certs],
           "passed": all(c.passed for c in certs)}
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return 0 if doc["passed"] else 1


def cmd_scan(args):
    Ls = args.L_grid
    M = args.M
    rows = []
    for L in Ls:
        ps = [L * L / 4] if args.p_curve == "pL" else args.p_grid
        for p in ps:
            if not (0 < p < 1 and L > p):
                continue
            d = theorem1_applicable(L, p)
            rows.append([L, p, M, d.a1, d.a2, str(d.branch) if d.applicable else "none"])
    _emit(_csv(args, ["L", "p", "M", "a1", "a2", "applicable_branch"], rows), args.out)
    return 0


def cmd_estimate(args):
    fam = _family(args)
    cfg = OptimizerConfig(N=1, max_iters=args.max_iters, step_rule=args.step_rule,
                          init=args.init, eps=args.eps, seed=args.seed)
    ests = estimate_schedule(fam, args.p, args.Ns, cfg)
    rows = [[N, e.value, e.iterations, e.residual] for N, e in zip(args.Ns, ests)]
    if args.seq_out:
        last = ests[-1].x
        _emit("".join(fmt(v) + "\n" for v in last), args.seq_out)
    _emit(_csv(args, ["N", "value", "iters", "residual"], rows), args.out)
    return 0


def cmd_probe(args):
    fam = _family(args)
    rows = [[N, args.eps, extremal_probe(fam, args.p, args.eps, N)] for N in args.N]
    _emit(_csv(args, ["N", "eps", "value"], rows), args.out)
    return 0


def cmd_weights(args):
    fam = _family(args)
    trace = build_weights(fam, float(args.L), float(args.p), args.N)
    with np.errstate(all="ignore"):
        m = margins_21(trace)
        w = np.exp(trace.log_w)
    rows = [[n, w[n - 1], m[n - 1], trace.log_w[n - 1]] for n in range(1, args.N + 1)]
    _emit(_csv(args, ["n", "w", "margin_21", "log_w"], rows), args.out)
    return 0


def cmd_aux(args):
    rep = aux_sign_scan(args.fn, float(args.L), float(args.M), float(args.p), args.grid)
    rows = [[rep.function_id, rep.L, rep.M, rep.p, rep.grid, rep.min_value,
             rep.argmin_x, rep.bound, rep.certified, rep.anomaly(args.tol)]]
    _emit(_csv(args, ["function", "L", "M", "p", "grid", "min_value", "argmin_x",
                      "bound", "certified", "anomaly"], rows), args.out)
    return 1 if rep.anomaly(args.tol) else 0


def cmd_evaluate(args):
    fam = _family(args)
    x = read_values(args.seq)
    p, L = float(args.p), float(args.L)
    lhs = copson_lhs(fam, x, p)
    rhs = copson_constant(p, L) * power_sum(x, p)
    ratio = ratio_functional(fam, x, p)
    margin = ratio - copson_constant(p, L)
    _emit(_csv(args, ["lhs", "rhs", "ratio", "margin"], [[lhs, rhs, ratio, margin]]), args.out)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="copson", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, need=("family", "p")):
        if "family" in need:
            sp.add_argument("--family", default="unit",
                            help="unit | powerdiff:ALPHA | powerkernel:ALPHA | custom:PATH")
            sp.add_argument("--alpha", type=float, default=None,
                            help="exponent for a bare powerdiff or powerkernel family")
        if "p" in need:
            sp.add_argument("--p", type=number, required=True)
        if "L" in need:
            sp.add_argument("--L", type=number, required=True)
        sp.add_argument("--out", default=None, help="output file (default stdout)")

    sp = sub.add_parser("certify", help="finite-horizon certificates")
    common(sp, ("family", "p", "L"))
    sp.add_argument("--M", type=number, default=None)
    sp.add_argument("--N", type=horizon, default=100_000)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sp.add_argument("--conditions", type=lambda s: [c.strip() for c in s.split(",") if c.strip()],
                    default=None, help="comma list of 1.6,1.7,1.15,thm1,thm1prime")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("scan", help="a1/a2 and polynomial-branch applicability over an (L, p) grid")
    sp.add_argument("--L-grid", dest="L_grid", type=grid_spec, required=True)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--p-grid", dest="p_grid", type=grid_spec)
    g.add_argument("--p-curve", dest="p_curve", choices=["pL"],
                   help="pL: p = L**2/4 for each L")
    sp.add_argument("--M", type=lambda s: Fraction(s), default=Fraction(0))
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("estimate", help="optimise the ratio functional")
    common(sp)
    sp.add_argument("--Ns", type=int_list, default=list(DEFAULT_SCHEDULE))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-iters", dest="max_iters", type=int, default=20_000)
    sp.add_argument("--init", choices=["uniform", "extremal", "random"], default="extremal")
    sp.add_argument("--eps", type=float, default=0.1)
    sp.add_argument("--step-rule", dest="step_rule", choices=["fixed", "backtracking"],
                    default="backtracking")
    sp.add_argument("--seq-out", dest="seq_out", default=None)
    sp.set_defaults(func=cmd_estimate)

    sp = sub.add_parser("probe", help="ratio at x_n = n**(-1/p - eps)")
    common(sp)
    sp.add_argument("--eps", type=float, default=1e-3)
    sp.add_argument("--N", type=int_list, default=[100_000])
    sp.set_defaults(func=cmd_probe)

    sp = sub.add_parser("weights", help="auxiliary weights and per-index margins")
    common(sp, ("family", "p", "L"))
    sp.add_argument("--N", type=horizon, default=100)
    sp.set_defaults(func=cmd_weights)

    sp = sub.add_parser("aux", help="sign scan of an auxiliary function")
    sp.add_argument("--fn", required=True,
                    help="one of " + ", ".join(sorted(BOUNDS)) + " (or f, g, u, v, h)")
    sp.add_argument("--p", type=number, required=True)
    sp.add_argument("--L", type=number, required=True)
    sp.add_argument("--M", type=number, default=0.0)
    sp.add_argument("--grid", type=horizon, default=10_000)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_aux)

    sp = sub.add_parser("evaluate", help="both sides of the inequality for a sequence file")
    common(sp, ("family", "p", "L"))
    sp.add_argument("--seq", required=True, help="file with one non-negative value per line")
    sp.set_defaults(func=cmd_evaluate)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if getattr(args, "fn", None) is not None:
            resolve(args.fn)
        return args.func(args)
    except (UsageError, ValueError, IndexError, OverflowError, OSError) as exc:
        print(f"copson {args.command}: error: {exc}", file=sys.stderr)
        return 2
