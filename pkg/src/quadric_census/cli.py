"""Command-line front end: ``quadric-census <subcommand> ...``.

Grid specs: ``log:a:b:k`` gives k log-spaced points from a to b inclusive,
``lin:a:b:k`` k evenly spaced ones.

Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import _jit
from .errors import DomainError, NumericError

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERIC = 3


def fmt_real(x: float, digits: int = 15) -> str:
    return f"{x:.{digits}g}"


def series_csv(series, digits: int = 15) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["T", "count", "main", "residual"])
    for T, count, main, res in series.rows():
        w.writerow([fmt_real(T, digits), str(count), fmt_real(main, digits), fmt_real(res, digits)])
    return buf.getvalue()


def _jsonable(obj, digits):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return fmt_real(obj, digits)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v, digits) for v in obj]
    return str(obj)


def to_json(obj, digits: int = 15) -> str:
    return json.dumps(_jsonable(obj, digits), sort_keys=True, indent=2) + "\n"


def series_json(series, digits: int = 15) -> str:
    rows = [{"T": T, "count": c, "main": m, "residual": r} for T, c, m, r in series.rows()]
    return to_json({"d": series.d, "target": series.target, "rows": rows}, digits)


def _poly(xs, ys, box, xr, yr, log_x):
    x0, y0, w, h = box
    lx = [math.log(v) for v in xs] if log_x else list(xs)
    lo_x, hi_x = xr
    lo_y, hi_y = yr
    pts = []
    for a, b in zip(lx, ys):
        px = x0 + (a - lo_x) / ((hi_x - lo_x) or 1.0) * w
        py = y0 + h - (b - lo_y) / ((hi_y - lo_y) or 1.0) * h
        pts.append(f"{px:.2f},{py:.2f}")
    return " ".join(pts)


def series_svg(series) -> str:
    """Two panels: count and main term against T, and the residual against T."""
    Ts, counts, mains, res = series.T, series.count, series.main, series.residual
    log_x = len(Ts) > 1 and Ts[0] > 0 and Ts[-1] / Ts[0] > 5
    xr = (math.log(Ts[0]), math.log(Ts[-1])) if log_x else (Ts[0], Ts[-1])
    W, H, pad = 900, 360, 50
    top = (pad, 30, W / 2 - 2 * pad, H - 80)
    bot = (W / 2 + pad, 30, W / 2 - 2 * pad, H - 80)
    ya = (min(min(counts), min(mains)), max(max(counts), max(mains)))
    rmax = max(1.0, max(abs(r) for r in res))
    yb = (-rmax, rmax)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for (x0, y0, w, h), title in ((top, f"(a) count, d={series.d}"), (bot, "(b) residual")):
        out.append(f'<rect x="{x0}" y="{y0}" width="{w:.2f}" height="{h}" fill="none" stroke="black"/>')
        out.append(f'<text x="{x0}" y="{y0 - 8}" font-size="13" font-family="sans-serif">{title}</text>')
        out.append(
            f'<text x="{x0 + w / 2:.2f}" y="{y0 + h + 30}" font-size="12" font-family="sans-serif">'
            f'T ({fmt_real(Ts[0], 6)} to {fmt_real(Ts[-1], 6)}{", log scale" if log_x else ""})</text>'
        )
    out.append(f'<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{_poly(Ts, counts, top, xr, ya, log_x)}"/>')
    out.append(f'<polyline fill="none" stroke="firebrick" stroke-dasharray="4 3" points="{_poly(Ts, mains, top, xr, ya, log_x)}"/>')
    zero = _poly([Ts[0], Ts[-1]], [0.0, 0.0], bot, xr, yb, log_x)
    out.append(f'<polyline fill="none" stroke="gray" points="{zero}"/>')
    out.append(f'<polyline fill="none" stroke="black" stroke-width="1" points="{_poly(Ts, res, bot, xr, yb, log_x)}"/>')
    for pt in _poly(Ts, res, bot, xr, yb, log_x).split():
        cx, cy = pt.split(",")
        out.append(f'<circle cx="{cx}" cy="{cy}" r="2" fill="black"/>')
    out.append(
        f'<text x="{bot[0]}" y="{H - 10}" font-size="11" font-family="sans-serif">'
        f"max |residual| = {fmt_real(rmax, 6)}</text>"
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_pair(text: str, what: str) -> tuple[float, float]:
    try:
        a, b = (float(v) for v in text.split(","))
    except ValueError as exc:
        raise DomainError(f"{what} must look like 're,im', got {text!r}") from exc
    return a, b


def _parse_form(text: str):
    from fractions import Fraction

    from .forms import FormTriple

    try:
        a, b, c = (Fraction(v.strip()) for v in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"form must look like 'a,b,c', got {text!r}") from exc
    return FormTriple.of(a, b, c)


def _grid(args) -> list[float]:
    from .mainterm import parse_grid

    if args.t_grid:
        return parse_grid(args.t_grid)
    if args.t is None:
        raise DomainError("give --t or --t-grid")
    return [float(args.t)]


def cmd_constants(args) -> int:
    import math as _m

    from .special import special_constants

    sc = special_constants()
    data = {
        "C": sc.C,
        "euler_gamma": sc.euler_gamma,
        "gamma_quarter": sc.gamma_quarter,
        "log2": _m.log(2.0),
        "v_gamma1": sc.v_gamma1,
        "zeta_2": sc.zeta_2,
        "zeta_prime_2": sc.zeta_prime_2,
        "zeta_prime_over_zeta_2": sc.zeta_ratio_2,
    }
    if args.format == "json":
        _emit(to_json(data, args.precision), args.output)
    else:
        _emit("".join(f"{k},{fmt_real(v, args.precision)}\n" for k, v in sorted(data.items())), args.output)
    return EXIT_OK


def _cmd_count(args, target: str) -> int:
    from .mainterm import residual_series

    series = residual_series(args.d, _grid(args), target, threads=args.threads)
    if args.format == "csv":
        _emit(series_csv(series, args.precision), args.output)
    elif args.format == "json":
        _emit(series_json(series, args.precision), args.output)
    else:
        _emit(series_svg(series), args.output)
    return EXIT_OK


def cmd_orbits(args) -> int:
    from .forms import orbit_reps

    reps = orbit_reps(args.n, args.lattice)
    if args.format == "json":
        doc = [{"class": str(c), "kind": c.kind, "j": c.j, "rep": [str(v.a), str(v.b), str(v.c)]} for c, v in reps]
        _emit(to_json({"lattice": reps[0][0].lattice, "n": args.n, "reps": doc}), args.output)
    else:
        _emit("".join(f"{c}\t{v}\n" for c, v in reps), args.output)
    return EXIT_OK


def cmd_classify(args) -> int:
    from .forms import act, classify_with_element, orbit_reps

    v = _parse_form(args.form)
    cls, g = classify_with_element(v, args.lattice)
    n = math.isqrt(int(v.disc()))
    rep = dict(orbit_reps(n, args.lattice))[cls]
    assert act(rep, g) == v
    if args.format == "json":
        _emit(to_json({"class": str(cls), "kind": cls.kind, "j": cls.j, "element": str(g), "rep": str(rep)}), args.output)
    else:
        _emit(f"{cls}\trep={rep}\tg={g}\n", args.output)
    return EXIT_OK


def cmd_kronecker(args) -> int:
    from .special import HalfPlanePoint, kronecker_gamma0p, kronecker_sl2z

    re_, im_ = _parse_pair(args.z, "--z")
    z = HalfPlanePoint(re_, im_)
    if args.p == 1:
        val = kronecker_sl2z(z)
    else:
        val = kronecker_gamma0p(z, args.p, args.cusp)
    doc = {"cusp": args.cusp if args.p != 1 else "infinity", "p": args.p, "value": val, "z": [re_, im_]}
    if args.format == "json":
        _emit(to_json(doc, args.precision), args.output)
    else:
        _emit(fmt_real(val, args.precision) + "\n", args.output)
    return EXIT_OK


def eis_report(z: complex, s: float, p: int, radius: int, panels: int, m_max: int) -> list[dict]:
    """Direct-sum Fourier coefficients against the scattering formulas, both cusps."""
    from .special import (
        eisenstein_direct_many,
        fourier_coeff_numeric,
        kbessel,
        scattering_gamma0p,
        scattering_gamma0p_constant,
        scattering_sl2z,
        scattering_sl2z_m,
    )

    y = z.imag
    cusps = ["infinity"] if p == 1 else ["infinity", "zero"]
    rows = []
    for cusp in cusps:
        for m in range(0, m_max + 1):

            def ev(xs, yy, cusp=cusp, m=m):
                return eisenstein_direct_many(xs, yy, s, p, cusp, radius, add_tail=(m == 0))

            direct = fourier_coeff_numeric(ev, m, y, panels)
            if m == 0:
                if p == 1:
                    pred = y**s + scattering_sl2z(s) * y ** (1 - s)
                else:
                    e = scattering_gamma0p_constant(s, p)
                    pred = (y**s + e.phi_inf_inf * y ** (1 - s)) if cusp == "infinity" else e.phi_0_inf * y ** (1 - s)
            else:
                if p == 1:
                    coef = scattering_sl2z_m(s, m)
                else:
                    e = scattering_gamma0p(s, m, p)
                    coef = e.phi_inf_inf if cusp == "infinity" else e.phi_0_inf
                pred = coef * 2.0 * math.sqrt(y) * kbessel(s - 0.5, 2.0 * math.pi * m * y)
            rows.append({"cusp": cusp, "m": m, "direct": direct, "formula": pred, "diff": direct - pred})
    return rows


def cmd_eis_check(args) -> int:
    re_, im_ = _parse_pair(args.z, "--z")
    if im_ <= 0:
        raise DomainError("im(z) must be positive")
    if args.p != 1:
        from .special.kronecker import check_prime

        check_prime(args.p)
    rows = eis_report(complex(re_, im_), args.s, args.p, args.radius, args.panels, args.m_max)
    worst = max(abs(r["diff"]) for r in rows)
    if args.format == "json":
        _emit(to_json({"p": args.p, "radius": args.radius, "panels": args.panels, "rows": rows, "max_abs_diff": worst}, args.precision), args.output)
    else:
        lines = ["cusp,m,direct,formula,diff\n"]
        lines += [
            f"{r['cusp']},{r['m']},{fmt_real(r['direct'])},{fmt_real(r['formula'])},{fmt_real(r['diff'])}\n" for r in rows
        ]
        _emit("".join(lines), args.output)
    if worst > args.tol:
        print(f"direct and Fourier sides differ by {worst:.3g} > {args.tol:g}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_shear(args) -> int:
    from .shear import make_bump, predicted_shear, predicted_two_sided, shear_integral, two_sided_shear

    if args.p != 1:
        from .special.kronecker import check_prime

        check_prime(args.p)
    spec = make_bump(args.delta)
    rows = []
    for T in _grid(args):
        if args.two_sided:
            val, pred = two_sided_shear(T, spec, args.p), predicted_two_sided(T, spec, args.p)
        else:
            val, pred = shear_integral(T, spec, args.p), predicted_shear(T, spec, args.p)
        rows.append({"T": T, "integral": val, "predicted": pred, "residual": val - pred})
    if args.format == "json":
        _emit(to_json({"delta": args.delta, "p": args.p, "two_sided": args.two_sided, "rows": rows}, args.precision), args.output)
    else:
        lines = ["T,integral,predicted,residual\n"]
        lines += [",".join(fmt_real(r[k], args.precision) for k in ("T", "integral", "predicted", "residual")) + "\n" for r in rows]
        _emit("".join(lines), args.output)
    return EXIT_OK


def read_series_csv(path: str):
    from .mainterm import make_series

    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["T", "count", "main", "residual"]:
            raise DomainError(f"{path}: expected header T,count,main,residual")
        rows = [r for r in reader if r]
    Ts = [float(r[0]) for r in rows]
    return make_series(0, "csv", Ts, [int(r[1]) for r in rows], [float(r[2]) for r in rows])


def cmd_fit(args) -> int:
    from .mainterm import fit_exponent

    slope = fit_exponent(read_series_csv(args.input))
    if args.format == "json":
        _emit(to_json({"slope": slope}, args.precision), args.output)
    else:
        _emit(fmt_real(slope, args.precision) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="quadric-census",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, formats=("text", "json"), default=None):
        p.add_argument("--format", choices=formats, default=default or formats[0])
        p.add_argument("--output", "-o", help="write here instead of stdout")
        p.add_argument("--precision", type=int, default=15, help="significant digits for reals")
        return p

    common(sub.add_parser("constants", help="gamma, zeta'(2)/zeta(2), Gamma(1/4), C, v_Gamma1"), ("json", "csv"))

    for name, helptext in (("count", "N_d(T) on x^2+y^2-z^2=d"), ("count-q", "N_{Q,d}(T) on b^2-4ac=d")):
        p = common(sub.add_parser(name, help=helptext), ("csv", "json", "svg"))
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--t", type=float)
        p.add_argument("--t-grid", help="log:a:b:k or lin:a:b:k")
        p.add_argument("--threads", type=int, default=None, help="default: $QUADRIC_CENSUS_THREADS or 1")

    p = common(sub.add_parser("orbits", help="orbit representatives"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lattice", default="gamma1", type=str.lower, choices=["gamma1", "gamma2"])

    p = common(sub.add_parser("classify", help="orbit class of a form a,b,c"))
    p.add_argument("--form", required=True, help="a,b,c (halves allowed for gamma2, e.g. 1/2)")
    p.add_argument("--lattice", default="gamma1", type=str.lower, choices=["gamma1", "gamma2"])

    p = common(sub.add_parser("kronecker", help="Kronecker limit at z"))
    p.add_argument("--z", required=True, help="re,im")
    p.add_argument("--p", type=int, default=1, help="1 for SL2(Z), else a prime")
    p.add_argument("--cusp", default="infinity", choices=["infinity", "zero"])

    p = common(sub.add_parser("eis-check", help="direct Eisenstein sums vs scattering formulas"))
    p.add_argument("--z", default="0.37,1.1")
    p.add_argument("--s", type=float, default=2.0)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--radius", type=int, default=1500)
    p.add_argument("--panels", type=int, default=64)
    p.add_argument("--m-max", type=int, default=2)
    p.add_argument("--tol", type=float, default=1e-6)

    p = common(sub.add_parser("shear", help="shear integrals against the predicted main term"), ("csv", "json"))
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--t", type=float)
    p.add_argument("--t-grid")
    p.add_argument("--two-sided", action="store_true")

    p = common(sub.add_parser("fit", help="residual exponent from a count CSV"))
    p.add_argument("--input", required=True)
    return ap


_COMMANDS = {
    "constants": cmd_constants,
    "count": lambda a: _cmd_count(a, "W"),
    "count-q": lambda a: _cmd_count(a, "Q"),
    "orbits": cmd_orbits,
    "classify": cmd_classify,
    "kronecker": cmd_kronecker,
    "eis-check": cmd_eis_check,
    "shear": cmd_shear,
    "fit": cmd_fit,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    if getattr(args, "threads", None) is not None:
        if args.threads < 1:
            print("error: thread count must be >= 1", file=sys.stderr)
            return EXIT_INVALID
        _jit.set_threads(args.threads)
    try:
        return _COMMANDS[args.cmd](args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (NumericError, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main() -> None:
    sys.exit(run(sys.argv[1:]))
