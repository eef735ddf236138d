"""Command line front end: ``hermarea <command> ...``.

Exit codes: 0 success, 1 a check or comparison failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence

from . import checks
from .areamod import AreaMeasure, area_basis, area_module, dim_area, presentation_check
from .expr import ExprError, evaluate, evaluate_as, to_valuation
from .forms import derive_t_hat_table
from .poly import Coords, GradedPoly, convert, format_poly, fu_f, poly_p, poly_q
from .tables import table_diff, table_to_csv, table_to_json
from .valalg import algebra, dim_val, mu_basis


class UsageError(Exception):
    pass


# -- helpers -------------------------------------------------------------------


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise UsageError(f"cannot write {out}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


def _val(text: str, n: int):
    return evaluate_as(text, "valuation", n)


def _measure(text: str, n: int) -> AreaMeasure:
    return evaluate_as(text, "measure", n)


def _poly_arg(text: str, n: int | None = None) -> GradedPoly:
    """Polynomial or valuation argument to frak_b / frak_g."""
    v = evaluate(text, n)
    if isinstance(v, GradedPoly):
        return v
    return to_valuation(v, n)


# -- commands ------------------------------------------------------------------


def cmd_verify(args) -> int:
    try:
        report = checks.verify(args.n, args.filter)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    print(report.format(timings=args.timings))
    return 0 if report.ok else 1


def _dims_doc(n: int) -> list[dict]:
    rows = []
    for k in range(2 * n + 1):
        rows.append({"k": k, "dim_val": dim_val(n, k), "dim_area": dim_area(n, k) if k < 2 * n else 0})
    return rows


def cmd_export(args) -> int:
    n = args.n
    if args.kind in ("t-table", "s-table"):
        mod = area_module(n)
        name = "t_hat" if args.kind == "t-table" else "s_hat"
        table = mod.raw_table(mod.hat_t_table if name == "t_hat" else mod.hat_s_table)
        text = table_to_json(n, name, table) if args.format == "json" else table_to_csv(n, name, table)
    elif args.kind == "dims":
        rows = _dims_doc(n)
        if args.format == "json":
            doc = {"n": n, "degrees": rows, "total_val": sum(r["dim_val"] for r in rows),
                   "total_area": sum(r["dim_area"] for r in rows)}
            text = json.dumps(doc, sort_keys=True, indent=2)
        else:
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["k", "dim_val", "dim_area"])
            for r in rows:
                w.writerow([r["k"], r["dim_val"], r["dim_area"]])
            text = buf.getvalue()
    else:
        area = [{"kind": kind, "k": k, "q": q} for kind, k, q in area_basis(n)]
        val = [{"k": k, "q": q} for k, q in mu_basis(n)]
        if args.format == "json":
            text = json.dumps({"n": n, "area": area, "val": val}, sort_keys=True, indent=2)
        else:
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["space", "kind", "k", "q"])
            for e in area:
                w.writerow(["area", e["kind"], e["k"], e["q"]])
            for e in val:
                w.writerow(["val", "mu", e["k"], e["q"]])
            text = buf.getvalue()
    _emit(text, args.out)
    return 0


def cmd_act(args) -> int:
    val = args.val if args.val is not None else args.val_pos
    measure = args.measure if args.measure is not None else args.measure_pos
    if val is None or measure is None:
        raise UsageError("act needs a valuation and a measure")
    mod = area_module(args.n)
    print(mod.act(_val(val, args.n), _measure(measure, args.n)))
    return 0


def cmd_glob(args) -> int:
    print(area_module(args.n).glob(_measure(args.measure, args.n)))
    return 0


def cmd_delta(args) -> int:
    print(area_module(args.n).delta_map(_val(args.val, args.n)))
    return 0


def cmd_fourier(args) -> int:
    print(algebra(args.n).fourier(_val(args.val, args.n)))
    return 0


def cmd_mul(args) -> int:
    print(algebra(args.n).product(_val(args.a, args.n), _val(args.b, args.n)))
    return 0


def cmd_conv(args) -> int:
    print(algebra(args.n).convolution(_val(args.a, args.n), _val(args.b, args.n)))
    return 0


def cmd_poly(args) -> int:
    fn = {"fk": fu_f, "pk": poly_p, "qk": poly_q}[args.family]
    if args.k < (1 if args.family == "fk" else 0):
        raise UsageError(f"{args.family} needs k >= {1 if args.family == 'fk' else 0}")
    print(format_poly(fn(args.k, Coords(args.coords))))
    return 0


def cmd_topoly(args) -> int:
    p = algebra(args.n).to_poly(_val(args.val, args.n))
    print(format_poly(convert(p, Coords(args.coords))))
    return 0


def cmd_frompoly(args) -> int:
    p = evaluate_as(args.poly, "poly")
    print(algebra(args.n).from_poly(convert(p, Coords.ST)))
    return 0


def cmd_evalball(args) -> int:
    print(algebra(args.n).eval_ball_top(_val(args.val, args.n)))
    return 0


def cmd_bg(args) -> int:
    mod = area_module(args.n)
    out = mod.frak_b(_poly_arg(args.p, args.n))
    if args.q is not None:
        out = out + mod.frak_g(_poly_arg(args.q, args.n))
    print(out)
    return 0


def cmd_present(args) -> int:
    report = presentation_check(args.n)
    print(f"n={args.n}  generators in ker h: {'yes' if report.generators_in_kernel else 'no'}")
    print("degree  dim_ker  dim_I  joint  ok")
    for d in report.degrees:
        print(f"{d.degree:>6}  {d.kernel_dim:>7}  {d.ideal_dim:>5}  {d.joint_rank:>5}  {'yes' if d.ok else 'NO'}")
    return 0 if report.ok else 1


def cmd_angular(args) -> int:
    mod = area_module(args.n)
    if args.classical is not None:
        if not 0 <= args.classical <= 2 * args.n - 1:
            raise UsageError(f"--classical must lie in 0..{2 * args.n - 1}")
        print(mod.to_delta_basis(mod.classical_delta(args.classical)))
        return 0
    if args.measure is None:
        for d in mod.angular_basis():
            print(d)
        return 0
    m = _measure(args.measure, args.n)
    print(f"angular: {'yes' if mod.is_angular(m) else 'no'}")
    print(f"expansion: {mod.to_delta_basis(m)}")
    return 0


def cmd_oracle(args) -> int:
    n = args.n
    derived = {idx: img.coeffs for idx, img in derive_t_hat_table(n).items()}
    if args.diff_against:
        mod = area_module(n)
        diff = table_diff(derived, mod.raw_table(mod.hat_t_table))
        for line in diff:
            print(line)
        print(f"oracle vs areamod t_hat table, n={n}: {'identical' if not diff else f'{len(diff)} differences'}")
        return 0 if not diff else 1
    text = table_to_json(n, "t_hat", derived) if args.format == "json" else table_to_csv(n, "t_hat", derived)
    _emit(text, args.out)
    return 0


# -- parser ----------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("n must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hermarea", description="Unitarily invariant area measures, exactly.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_n(sp, required=True):
        sp.add_argument("--n", type=_positive, required=required, help="complex dimension (>= 1)")
        return sp

    sp = with_n(sub.add_parser("verify", help="run the named identity checks for 1..N"))
    sp.add_argument("--filter", help="check name or glob pattern (comma separated)")
    sp.add_argument("--timings", action="store_true", help="show wall-clock time per check")
    sp.set_defaults(func=cmd_verify)

    sp = with_n(sub.add_parser("export", help="export structure tables, dimensions or bases"))
    sp.add_argument("kind", choices=["t-table", "s-table", "dims", "basis"])
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.add_argument("--out", help="output path (default stdout)")
    sp.set_defaults(func=cmd_export)

    sp = with_n(sub.add_parser("act", help="convolution action of a valuation on a measure"))
    sp.add_argument("val_pos", nargs="?", metavar="VAL")
    sp.add_argument("measure_pos", nargs="?", metavar="MEASURE")
    sp.add_argument("--val")
    sp.add_argument("--measure")
    sp.set_defaults(func=cmd_act)

    sp = with_n(sub.add_parser("glob", help="globalization of a measure"))
    sp.add_argument("measure")
    sp.set_defaults(func=cmd_glob)

    sp = with_n(sub.add_parser("delta", help="first variation of a valuation"))
    sp.add_argument("val")
    sp.set_defaults(func=cmd_delta)

    sp = with_n(sub.add_parser("fourier", help="Fourier transform of a valuation"))
    sp.add_argument("val")
    sp.set_defaults(func=cmd_fourier)

    for name, fn, text in (("mul", cmd_mul, "product"), ("conv", cmd_conv, "convolution")):
        sp = with_n(sub.add_parser(name, help=f"{text} of two valuations"))
        sp.add_argument("a")
        sp.add_argument("b")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("poly", help="print f_k, p_k or q_k")
    sp.add_argument("family", choices=["fk", "pk", "qk"])
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--coords", choices=["st", "tu"], default="st")
    sp.set_defaults(func=cmd_poly)

    sp = with_n(sub.add_parser("topoly", help="canonical polynomial representative of a valuation"))
    sp.add_argument("val")
    sp.add_argument("--coords", choices=["st", "tu"], default="st")
    sp.set_defaults(func=cmd_topoly)

    sp = with_n(sub.add_parser("frompoly", help="valuation of a polynomial in s, t, u"))
    sp.add_argument("poly")
    sp.set_defaults(func=cmd_frompoly)

    sp = with_n(sub.add_parser("evalball", help="value of a top-degree valuation on the unit ball"))
    sp.add_argument("val")
    sp.set_defaults(func=cmd_evalball)

    sp = with_n(sub.add_parser("bg", help="b(P) + g(Q)"))
    sp.add_argument("p")
    sp.add_argument("q", nargs="?")
    sp.set_defaults(func=cmd_bg)

    sp = with_n(sub.add_parser("present", help="check the two-generator presentation degree by degree"))
    sp.set_defaults(func=cmd_present)

    sp = with_n(sub.add_parser("angular", help="angularity test, angular basis, or classical Delta_k"))
    sp.add_argument("measure", nargs="?")
    sp.add_argument("--classical", type=int, metavar="K")
    sp.set_defaults(func=cmd_angular)

    sp = sub.add_parser("oracle", help="structure constants re-derived from invariant forms")
    sp.add_argument("what", choices=["t-table"])
    with_n(sp)
    sp.add_argument("--diff-against", choices=["areamod"])
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ExprError) as exc:
        print(f"hermarea {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"hermarea {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
