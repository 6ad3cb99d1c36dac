"""Command-line interface.

Subcommands: poly (emit one polynomial as text), factor (emit and check a
complete factorization), count (el/n bookkeeping), roots (locate parameters,
CSV), verify (reassembly sweep), plot (escape-time image with overlays).
Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import mpmath

from .counting import BudgetMismatch, degree_budget, hyp_count, mis_count
from .families import DEFAULT_CAP, FamilyIndex, mt_poly, orbit_poly
from .factoring import factorize, verify
from .intpoly import NonzeroRemainder
from .render import PlotSpec, render
from .roots import Hyperbolic, Misiurewicz, PrecisionExhausted, points_of_order


def _write_text(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_poly(args) -> int:
    if args.ell is None:
        poly = orbit_poly(args.n, args.cap)
    else:
        poly = mt_poly(FamilyIndex(args.ell, args.n), args.cap)
    _write_text(poly.to_text(), args.out)
    return 0


def _cmd_factor(args) -> int:
    idx = FamilyIndex(args.ell, args.n)
    table = factorize(idx, args.cap)
    os.makedirs(args.out_dir, exist_ok=True)
    for k in sorted(table.hyp_factors):
        poly, exp = table.hyp_factors[k]
        path = os.path.join(args.out_dir, f"h_{k}.poly")
        with open(path, "w", encoding="ascii") as fh:
            fh.write(poly.to_text())
        print(f"h k={k} exp={exp} deg={int(poly.degree)} file={path}")
    for j, k in sorted(table.mis_factors):
        poly = table.mis_factors[(j, k)]
        path = os.path.join(args.out_dir, f"m_{j}_{k}.poly")
        with open(path, "w", encoding="ascii") as fh:
            fh.write(poly.to_text())
        print(f"m l={j} k={k} deg={int(poly.degree)} file={path}")
    if args.verify:
        if not verify(table, args.cap):
            print("verify: FAIL", file=sys.stderr)
            return 1
        print("verify: ok")
    return 0


def _cmd_count(args) -> int:
    FamilyIndex(args.ell, args.n)  # index validation only
    rec = degree_budget(args.ell, args.n)
    print(
        f"hyp_count={rec.hyp_count} phi={rec.phi} "
        f"mis_count={rec.mis_count} budget={rec.degree_budget}"
    )
    if args.table:
        print(f"l={rec.ell} n={rec.n} order={rec.ell + rec.n} degree={rec.degree_budget}")
        for k, e in rec.eta_by_divisor:
            line = f"  k={k} eta={e} hyp_count={hyp_count(k)}"
            if rec.ell >= 2:
                mis = " ".join(f"mis({j},{k})={mis_count(j, k)}" for j in range(2, rec.ell + 1))
                line += " " + mis
            print(line)
    return 0


def _kind_fields(kind) -> tuple[str, int, int]:
    if isinstance(kind, Hyperbolic):
        return "hyperbolic", 0, kind.period
    if isinstance(kind, Misiurewicz):
        return "misiurewicz", kind.preperiod, kind.period
    return "unclassified", 0, 0


def _roots_csv(max_order: int, precision_bits: int, cap: int) -> str:
    points = points_of_order(max_order, precision_bits, cap)
    digits = int(precision_bits * 0.30103) + 2
    lines = ["re,im,kind,preperiod,period,residual_log2,precision_bits"]
    for p in points:
        name, pre, per = _kind_fields(p.kind)
        re_s = mpmath.nstr(p.value.real, digits)
        im_s = mpmath.nstr(p.value.imag, digits)
        if p.residual == 0:
            res_s = "-inf"
        else:
            res_s = f"{float(mpmath.log(p.residual, 2)):.2f}"
        lines.append(f"{re_s},{im_s},{name},{pre},{per},{res_s},{p.precision_bits}")
    return "\n".join(lines) + "\n"


def _cmd_roots(args) -> int:
    _write_text(_roots_csv(args.max_order, args.precision, args.cap), args.out)
    return 0


def _verify_task(task: tuple[int, int, int]) -> tuple[int, int, bool]:
    ell, n, cap = task
    try:
        table = factorize(FamilyIndex(ell, n), cap)
        return ell, n, verify(table, cap)
    except ArithmeticError:
        return ell, n, False


def _cmd_verify(args) -> int:
    tasks = [
        (ell, order - ell, args.cap)
        for order in range(1, args.max_order + 1)
        for ell in range(order)
    ]
    jobs = args.jobs if args.jobs else (os.cpu_count() or 1)
    if jobs > 1:
        # Workers share computed factors only through the cache directory.
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_task, tasks))
    else:
        results = [_verify_task(t) for t in tasks]
    failures = 0
    for ell, n, ok in results:
        print(f"l={ell} n={n} {'ok' if ok else 'FAIL'}")
        failures += 0 if ok else 1
    print(f"checked {len(results)} indices, {failures} failures")
    return 1 if failures else 0


def _parse_pixels(text: str) -> tuple[int, int]:
    try:
        if "x" in text.lower():
            w, h = text.lower().split("x")
            return int(w), int(h)
        v = int(text)
        return v, v
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad --pixels value {text!r}") from exc


def _cmd_plot(args) -> int:
    overlay = ()
    if args.max_order:
        overlay = tuple(points_of_order(args.max_order, args.precision, args.cap))
    spec = PlotSpec(
        center=args.center,
        width=args.width,
        pixels=args.pixels,
        max_iter=args.max_iter,
        overlay=overlay,
    )
    render(spec, args.out, png=args.png)
    print(f"wrote {args.out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mandelpoly",
        description="Exact factor structure and special points of z^2 + c.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="emit p_n (or q_{l,n} with --ell) as text")
    p.add_argument("--n", type=int, required=True, help="period index n >= 1")
    p.add_argument("--ell", type=int, default=None, help="pre-period; emits q_{l,n}")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="degree-cap override")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_poly)

    p = sub.add_parser("factor", help="write all factors of q_{l,n} and list them")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="recheck the product")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--out-dir", default=".", help="directory for .poly files")
    p.set_defaults(func=_cmd_factor)

    p = sub.add_parser("count", help="counting and multiplicity bookkeeping")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--table", action="store_true", help="per-divisor breakdown")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("roots", help="locate all points up to an order, as CSV")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--precision", type=int, default=128, help="bits")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_roots)

    p = sub.add_parser("verify", help="reassembly sweep over all l+n <= max order")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--jobs", type=int, default=0, help="workers (default: cores)")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("plot", help="escape-time image with located points")
    p.add_argument(
        "--center", type=complex, default=-0.75 + 0j,
        help="complex center; values starting with '-' need --center=-0.75+0.1j",
    )
    p.add_argument("--width", type=float, default=3.0)
    p.add_argument("--pixels", type=_parse_pixels, default=(800, 800))
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--max-order", type=int, default=0, help="overlay points up to order")
    p.add_argument("--precision", type=int, default=128)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--png", action="store_true", help="write PNG instead of PPM")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_plot)

    return parser


def cli_main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (None, 0) else 2
    try:
        return args.func(args)
    except ValueError as exc:  # covers InvalidIndex and CapExceeded
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BudgetMismatch, NonzeroRemainder, PrecisionExhausted) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))
