"""Command-line front end.

Data goes to ``--out`` (written atomically) or stdout; diagnostics go to
stderr.  Exit status: 0 success, 1 model or numerical error, 2 usage error.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile

import numpy as np

from . import materials_io as mio
from .dielectric import bruggeman_mix
from .errors import WetCasimirError
from .lifshitz import LayerStack, delta_curve, force_curve
from .quadrature import QuadratureSpec

#: liquid material name -> built-in Au row measured in that liquid
FIG2_LIQUIDS = {"water": 1.33, "ccl3f": 1.42, "cbr3f": 1.60}


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _separations(text):
    vals = [_positive_float(t) for t in text.split(",") if t.strip()]
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise argparse.ArgumentTypeError("separations must be strictly increasing")
    return vals


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    p.add_argument("--materials", metavar="DIR", default=str(mio.MATERIALS_DIR),
                   help="material database directory (default: shipped files)")
    p.add_argument("--rel-tol", type=_positive_float, default=None)
    p.add_argument("--max-evals", type=int, default=None)
    p.add_argument("--paper-literal-colecole", action="store_true",
                   help="evaluate the Cole-Cole formula with swapped limits")
    p.add_argument("--workers", type=int, default=1,
                   help="threads used across separations")
    return p


def _zeta_grid(p, lo, hi, n):
    p.add_argument("--zeta-min", type=_positive_float, default=lo)
    p.add_argument("--zeta-max", type=_positive_float, default=hi)
    p.add_argument("--zeta-points", type=int, default=n)


def _d_grid(p, lo, hi, n):
    p.add_argument("--d-min", type=_positive_float, default=lo)
    p.add_argument("--d-max", type=_positive_float, default=hi)
    p.add_argument("--d-points", type=int, default=n)
    p.add_argument("--separations", type=_separations, default=None,
                   help="explicit comma-separated separations in nm")


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(
        prog="wetcasimir",
        description="Lifshitz pressure between metal slabs across a liquid gap.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eps", parents=[common],
                       help="permittivity of one model on the imaginary axis")
    p.add_argument("model")
    _zeta_grid(p, 1e-3, 1e2, 60)

    p = sub.add_parser("force", parents=[common], help="pressure versus separation")
    p.add_argument("slab1")
    p.add_argument("gap")
    p.add_argument("slab2")
    _d_grid(p, 10.0, 1000.0, 40)

    p = sub.add_parser("delta", parents=[common],
                       help="percent change from dry to wet Au parameters")
    p.add_argument("liquid")
    p.add_argument("wet_row", type=float, help="ambient index of the wet Au row")
    p.add_argument("--dry-row", type=float, default=1.0)
    _d_grid(p, 10.0, 1000.0, 40)

    p = sub.add_parser("mix", parents=[common],
                       help="Bruggeman effective permittivity")
    p.add_argument("eps_metal", type=_positive_float)
    p.add_argument("eps_fluid", type=_positive_float)
    p.add_argument("f_metal", type=float)

    p = sub.add_parser("fig1", parents=[common],
                       help="wet/dry Au permittivity ratios for every built-in Au row")
    _zeta_grid(p, 1e-3, 1e2, 60)

    p = sub.add_parser("fig2", parents=[common],
                       help="percent difference versus separation, three liquids")
    _d_grid(p, 10.0, 1000.0, 40)
    return parser


def _grid(lo, hi, n, what):
    if n < 1 or hi < lo or (n > 1 and hi == lo):
        raise argparse.ArgumentTypeError(f"bad {what} grid")
    if n == 1:
        return [lo]
    return list(np.geomspace(lo, hi, n))


def _write(text, out):
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".csv")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(text.encode("utf-8"))
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _execute(args, parser):
    quad = QuadratureSpec()
    overrides = {}
    if args.rel_tol is not None:
        overrides["rel_tol"] = args.rel_tol
    if args.max_evals is not None:
        overrides["max_evals"] = args.max_evals
    if overrides:
        quad = QuadratureSpec(**{**quad.__dict__, **overrides})

    if args.command == "mix":
        print(f"{bruggeman_mix(args.eps_metal, args.eps_fluid, args.f_metal):.15g}")
        return

    db = mio.MaterialDatabase.load(args.materials)

    def model(ref):
        return mio.resolve_model(ref, db, args.paper_literal_colecole)

    if args.command in ("eps", "fig1"):
        try:
            zetas = _grid(args.zeta_min, args.zeta_max, args.zeta_points, "zeta")
        except argparse.ArgumentTypeError as exc:
            parser.error(str(exc))
        zetas = np.asarray(zetas)
        if args.command == "eps":
            values = np.atleast_1d(model(args.model).eval(zetas, quad))
            _write(mio.format_eps_csv(zetas, values), args.out)
            return
        dry = mio.builtin_table1(1.0)
        eps_dry = model("au").eval(zetas, quad)
        omega_pd = math.sqrt(dry.omega_p_sq)
        rows = []
        for n in mio.TABLE1:
            ratio = model(f"au:{n}").eval(zetas, quad) / eps_dry
            rows += [(z / omega_pd, r, n) for z, r in zip(zetas, ratio)]
        _write(mio.format_eps_curve_csv(rows), args.out)
        return

    if args.separations is not None:
        seps = args.separations
    else:
        try:
            seps = _grid(args.d_min, args.d_max, args.d_points, "separation")
        except argparse.ArgumentTypeError as exc:
            parser.error(str(exc))

    if args.command == "force":
        stack = LayerStack(model(args.slab1), model(args.slab2), model(args.gap),
                           seps[0])
        curve = force_curve(stack, seps, quad, workers=args.workers)
        _write(mio.format_curve_csv(curve), args.out)
    elif args.command == "delta":
        curve = delta_curve(model(args.liquid), mio.builtin_table1(args.dry_row),
                            mio.builtin_table1(args.wet_row), seps, quad,
                            workers=args.workers)
        _write(mio.format_curve_csv(curve), args.out)
    elif args.command == "fig2":
        dry = mio.builtin_table1(1.0)
        curves = {}
        for name, n in FIG2_LIQUIDS.items():
            curves[name] = delta_curve(model(name), dry, mio.builtin_table1(n),
                                       seps, quad, workers=args.workers)
        _write(mio.format_series_csv(curves), args.out)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _execute(args, parser)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except (WetCasimirError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"wetcasimir: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
