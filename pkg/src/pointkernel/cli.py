"""Command-line interface.

Subcommands: convert, scatter, supersingular, propagator, born, verify.
Sweeps and grids are written as CSV (a ``#`` comment header, then a column
row); single-object results as JSON. Exit codes: 0 success, 1 usage error,
2 non-representable conversion, 3 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings

import numpy as np

from . import __version__
from .born import SeriesDivergenceWarning, born_series, closed_form_state
from .convert import (
    ConnectedSAE,
    RobinPair,
    SeparatedSAE,
    from_connected,
    from_separated,
    in_separated_stratum,
    separated_cases,
    to_connected,
    to_separated,
)
from .core import PointInteraction, determinant, parity
from .errors import NotConnected, NotRepresentable, NotSeparated
from .propagator import QUADRANTS, TimeAxis, delta_prime_grid
from .scatter import (
    SuperSingularSpec,
    check_griffiths_form,
    scattering,
    super_singular_interaction,
)

EXIT_OK, EXIT_USAGE, EXIT_NOT_REPRESENTABLE, EXIT_VERIFY_FAILED = 0, 1, 2, 3
TOL_ENV = "POINTKERNEL_TOL"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    """Shortest round-tripping representation of a float."""
    return repr(float(x) + 0.0)  # + 0.0 folds -0.0 into 0.0


def _quadrant_name(q) -> str:
    sx, sy = QUADRANTS[q]
    return ("+" if sx > 0 else "-") + ("+" if sy > 0 else "-")


def _tolerance(args, default):
    if getattr(args, "tol", None) is not None:
        return args.tol
    env = os.environ.get(TOL_ENV)
    if env:
        try:
            return float(env)
        except ValueError:
            raise UsageError(f"{TOL_ENV}={env!r} is not a number")
    return default


def _echo(argv) -> str:
    return "pointkernel " + " ".join(argv)


def _open_out(args):
    return open(args.out, "w", newline="") if args.out else None


def _emit_csv(args, argv, header, rows, comments=()):
    buf = io.StringIO()
    buf.write(f"# pointkernel v{__version__}, {_echo(argv)}\n")
    for line in comments:
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    _write(args, buf.getvalue())


def _emit_json(args, doc):
    _write(args, json.dumps(doc, indent=2) + "\n")


def _write(args, text):
    fh = _open_out(args)
    if fh is None:
        sys.stdout.write(text)
    else:
        with fh:
            fh.write(text)


def _interaction(args) -> PointInteraction:
    return PointInteraction(args.c1, complex(args.c2re, args.c2im), args.c3)


def _pi_json(pi: PointInteraction):
    # + 0.0 folds -0.0 into 0.0
    return {"c1": pi.c1 + 0.0, "c2_re": pi.c2.real + 0.0, "c2_im": pi.c2.imag + 0.0, "c3": pi.c3 + 0.0}


def _pair_json(pair: RobinPair):
    kind = "dirichlet" if pair.is_dirichlet else "neumann" if pair.is_neumann else "robin"
    return {"p": pair.p, "q": pair.q, "kind": kind,
            "b": None if math.isinf(pair.b) else pair.b,
            "b_tilde": None if math.isinf(pair.b_tilde) else pair.b_tilde}


def _diagnostics(pi: PointInteraction):
    sep = in_separated_stratum(pi)
    return {
        "determinant": determinant(pi),
        "parity_image": _pi_json(parity(pi)),
        "stratum": "separated" if sep else "connected",
        "separated_cases": separated_cases(pi) if sep else None,
    }


# -- convert ---------------------------------------------------------------

def cmd_convert(args, argv):
    doc = {"command": "convert", "version": __version__}
    try:
        if args.to == "connected":
            pi = _interaction(args)
            doc["input"] = _pi_json(pi)
            doc["diagnostics"] = _diagnostics(pi)
            conn = to_connected(pi)
            doc["result"] = {"theta": conn.theta, "a": [[conn.a11, conn.a12], [conn.a21, conn.a22]]}
        elif args.to == "separated":
            pi = _interaction(args)
            doc["input"] = _pi_json(pi)
            doc["diagnostics"] = _diagnostics(pi)
            sep = to_separated(pi)
            doc["result"] = {"plus": _pair_json(sep.side_plus), "minus": _pair_json(sep.side_minus)}
        elif args.from_connected:
            conn = ConnectedSAE(args.theta, args.a11, args.a12, args.a21, args.a22)
            doc["input"] = {"theta": conn.theta, "a": [list(r) for r in conn.matrix]}
            pi = from_connected(conn)
            doc["result"] = _pi_json(pi)
            doc["diagnostics"] = _diagnostics(pi)
        else:
            sep = SeparatedSAE(RobinPair(args.p_plus, args.q_plus), RobinPair(args.p_minus, args.q_minus))
            doc["input"] = {"plus": _pair_json(sep.side_plus), "minus": _pair_json(sep.side_minus)}
            pi = from_separated(sep)
            doc["result"] = _pi_json(pi)
            doc["diagnostics"] = _diagnostics(pi)
    except (NotConnected, NotSeparated, NotRepresentable) as exc:
        doc["error"] = type(exc).__name__
        doc["message"] = str(exc)
        _emit_json(args, doc)
        return EXIT_NOT_REPRESENTABLE
    _emit_json(args, doc)
    return EXIT_OK


# -- scatter / supersingular ----------------------------------------------

def _k_grid(args):
    if not args.k_min > 0:
        raise UsageError("--k-min must be > 0")
    if args.k_max < args.k_min:
        raise UsageError("--k-max must be >= --k-min")
    if args.k_steps < 1:
        raise UsageError("--k-steps must be >= 1")
    if args.k_steps == 1:
        return np.array([args.k_min])
    return np.linspace(args.k_min, args.k_max, args.k_steps)


def cmd_scatter(args, argv):
    ks = _k_grid(args)
    tol = _tolerance(args, 1e-12)
    if args.delta_n is not None:
        spec = SuperSingularSpec(args.delta_n, args.coupling)
        interactions = [super_singular_interaction(spec, k) for k in ks]
    else:
        pi = _interaction(args)
        interactions = [pi] * len(ks)
    rows = []
    worst = 0.0
    for k, pi in zip(ks, interactions):
        S = scattering(pi, float(k))
        defect = S.unitarity_defect()
        worst = max(worst, defect)
        rows.append([fmt(k)] + [fmt(part) for z in (S.t_plus, S.t_minus, S.r_plus, S.r_minus)
                                for part in (z.real, z.imag)]
                    + [fmt(S.transmission), fmt(defect)])
    header = ["k", "t_plus_re", "t_plus_im", "t_minus_re", "t_minus_im",
              "r_plus_re", "r_plus_im", "r_minus_re", "r_minus_im", "transmission", "unitarity_defect"]
    _emit_csv(args, argv, header, rows)
    if worst > tol:
        print(f"unitarity defect {worst:.3g} exceeds tolerance {tol:.3g}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_supersingular(args, argv):
    if not args.k > 0:
        raise UsageError("--k must be > 0")
    spec = SuperSingularSpec(args.n, args.coupling)
    pi = super_singular_interaction(spec, args.k)
    S = scattering(pi, args.k)
    griffiths = check_griffiths_form(spec, args.k)
    doc = {
        "command": "supersingular",
        "version": __version__,
        "n": spec.n,
        "coupling": spec.c,
        "k": args.k,
        "interaction": _pi_json(pi),
        "s_matrix": {name: {"re": z.real, "im": z.imag}
                     for name, z in (("t_plus", S.t_plus), ("t_minus", S.t_minus),
                                     ("r_plus", S.r_plus), ("r_minus", S.r_minus))},
        "transmission": S.transmission,
        "unitarity_defect": S.unitarity_defect(),
        "griffiths_form": {"ok": griffiths.ok, "deriv_residual": griffiths.deriv_residual,
                           "value_residual": griffiths.value_residual},
    }
    _emit_json(args, doc)
    return EXIT_OK


# -- propagator / born ----------------------------------------------------

def _axis_grid(values, lo, hi, steps, name):
    if values:
        grid = np.array(values, dtype=float)
    else:
        if steps < 1 or hi < lo:
            raise UsageError(f"bad {name} range")
        grid = np.linspace(lo, hi, steps)
    if np.any(grid == 0):
        raise UsageError(f"{name} grid contains 0; the propagator is undefined on the interaction point")
    return grid


def cmd_propagator(args, argv):
    xs = _axis_grid(args.x, args.x_min, args.x_max, args.x_steps, "x")
    ys = _axis_grid(args.y, args.y_min, args.y_max, args.y_steps, "y")
    if not args.t > args.s:
        raise UsageError("need --t > --s")
    axis = TimeAxis.IMAGINARY if args.imaginary_time else TimeAxis.REAL
    grid = delta_prime_grid(args.coupling, ys, xs, args.t, args.s, axis)
    rows = [[fmt(x), fmt(y), fmt(grid[i, j].real), fmt(grid[i, j].imag)]
            for j, x in enumerate(xs) for i, y in enumerate(ys)]
    _emit_csv(args, argv, ["x", "y", "re", "im"], rows,
              comments=[f"axis={axis.value} coupling={fmt(args.coupling)} t={fmt(args.t)} s={fmt(args.s)}"])
    return EXIT_OK


def cmd_born(args, argv):
    if args.terms < 0:
        raise UsageError("--terms must be >= 0")
    c = args.coupling
    series = born_series(c, args.terms)
    closed = closed_form_state(c)
    comments = []
    if not series.converges and args.terms > 0:
        msg = f"series diverges for |c| = {abs(c)} >= 2; partial sums do not approach the closed form"
        warnings.warn(msg, SeriesDivergenceWarning, stacklevel=1)
        comments.append(msg)
    rows = []
    for i in range(args.terms + 1):
        term = series.partial_sum(0) if i == 0 else series.terms[i - 1]
        partial = series.partial_sum(i)
        err = series.error(i)
        for q in range(4):
            rows.append([i, _quadrant_name(q), fmt(term.direct[q]), fmt(term.mirror[q]),
                         fmt(partial.direct[q]), fmt(partial.mirror[q]),
                         fmt(closed.direct[q]), fmt(closed.mirror[q]), fmt(err),
                         fmt(series.error_bound(i))])
    header = ["term", "quadrant", "direct", "mirror", "partial_direct", "partial_mirror",
              "closed_direct", "closed_mirror", "partial_error", "error_bound"]
    _emit_csv(args, argv, header, rows, comments=comments)
    return EXIT_OK


# -- verify -----------------------------------------------------------------

def cmd_verify(args, argv):
    from .suites import SUITES, run_suites

    names = list(SUITES) if args.suite == "all" else [args.suite]
    tol = _tolerance(args, None)
    results = run_suites(names, seed=args.seed, tol=tol)
    ok = all(r.ok for r in results)
    if args.format == "json":
        doc = {"command": "verify", "version": __version__, "seed": args.seed, "ok": ok,
               "checks": [r.as_dict() for r in results]}
        _emit_json(args, doc)
    else:
        lines = [f"# pointkernel v{__version__}, {_echo(argv)}"]
        lines += [r.line() for r in results]
        lines.append(f"{'ALL PASS' if ok else 'FAILURES'}: {sum(r.ok for r in results)}/{len(results)}")
        _write(args, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


# -- parser -----------------------------------------------------------------

def _add_interaction(p):
    p.add_argument("--c1", type=float, default=0.0)
    p.add_argument("--c2", "--c2re", dest="c2re", type=float, default=0.0, help="real part of c2")
    p.add_argument("--c2im", type=float, default=0.0, help="imaginary part of c2")
    p.add_argument("--c3", type=float, default=0.0)


def _add_common(p, tol=False):
    p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    if tol:
        p.add_argument("--tol", type=float, default=None,
                       help=f"override the default tolerance (also via ${TOL_ENV}; the flag wins)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pointkernel", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"pointkernel {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("convert", help="convert between jump-average and SAE parameterizations")
    _add_interaction(p)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--to", choices=("connected", "separated"))
    mode.add_argument("--from-connected", action="store_true")
    mode.add_argument("--from-separated", action="store_true")
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--a11", type=float, default=1.0)
    p.add_argument("--a12", type=float, default=0.0)
    p.add_argument("--a21", type=float, default=0.0)
    p.add_argument("--a22", type=float, default=1.0)
    p.add_argument("--p-plus", type=float, default=1.0)
    p.add_argument("--q-plus", type=float, default=0.0)
    p.add_argument("--p-minus", type=float, default=0.0)
    p.add_argument("--q-minus", type=float, default=1.0)
    _add_common(p)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("scatter", help="S-matrix sweep over wavenumbers (CSV)")
    _add_interaction(p)
    p.add_argument("--delta-n", type=int, default=None, help="use c * delta^(n) instead of (c1, c2, c3)")
    p.add_argument("--coupling", type=float, default=0.0)
    p.add_argument("--k-min", type=float, default=0.1)
    p.add_argument("--k-max", type=float, default=10.0)
    p.add_argument("--k-steps", type=int, default=100)
    _add_common(p, tol=True)
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("supersingular", help="energy-dependent couplings and S-matrix of c * delta^(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--coupling", type=float, required=True)
    p.add_argument("--k", type=float, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_supersingular)

    p = sub.add_parser("propagator", help="delta-prime propagator on a grid (CSV)")
    p.add_argument("--coupling", type=float, required=True)
    p.add_argument("--imaginary-time", action="store_true")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--s", type=float, default=0.0)
    for name, lo, hi in (("x", 0.5, 2.0), ("y", -2.0, 2.0)):
        p.add_argument(f"--{name}", type=float, nargs="+", default=None, help=f"explicit {name} values")
        p.add_argument(f"--{name}-min", type=float, default=lo)
        p.add_argument(f"--{name}-max", type=float, default=hi)
        p.add_argument(f"--{name}-steps", type=int, default=4)
    _add_common(p)
    p.set_defaults(func=cmd_propagator)

    p = sub.add_parser("born", help="Born-series terms and partial sums (CSV)")
    p.add_argument("--coupling", type=float, required=True)
    p.add_argument("--terms", type=int, default=5)
    _add_common(p)
    p.set_defaults(func=cmd_born)

    p = sub.add_parser("verify", help="run numerical verification suites")
    p.add_argument("--suite", choices=("all", "jumps", "residual", "scatter-oracle", "bc"), default="all")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--format", choices=("text", "json"), default="text")
    _add_common(p, tol=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, argv)
    except UsageError as exc:
        print(f"pointkernel {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotConnected, NotSeparated, NotRepresentable) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_NOT_REPRESENTABLE
    except ValueError as exc:
        # PointKernelError is a ValueError; so are malformed parameter sets
        print(f"pointkernel {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
