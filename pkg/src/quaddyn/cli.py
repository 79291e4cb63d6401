"""Command-line front end: JSON reports, CSV sweeps with figures, PPM/PGM planes."""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .complex_poly import NonConvergence
from .extplane import is_inf
from .families import DerivativeZero, PoleHit
from .figures import plot_critical_sweep, plot_fixed_sweep, plot_stability_profile
from .operator_s import (
    ATTRACTOR,
    SUPERATTRACTOR,
    DomainExcluded,
    ParamA,
    critical_points,
    fixed_points,
    in_stability_disk_z1,
    in_stability_disk_z23,
    s_prime,
    stability_profile,
    stability_z1,
    stability_z23,
    strange_fixed_point_pair,
    sweep_critical_points,
    sweep_fixed_points,
)
from .orbits import GroupingFailure, find_periodic_orbits
from .render import (
    IterConfig,
    Window,
    dyn_plane,
    param_plane,
    render_report,
    write_pgm,
    write_ppm,
)
from .verify import run_all

DYN_BASE_PALETTE = {
    0: (173, 216, 230),  # basin of 0
    1: (205, 65, 50),  # basin of infinity
    2: (15, 15, 25),  # no convergence
}
ATTRACTOR_COLORS = [
    (240, 220, 90),
    (120, 200, 120),
    (200, 140, 220),
    (255, 160, 40),
    (90, 200, 210),
    (230, 120, 160),
    (160, 160, 90),
    (140, 120, 230),
]
PARAM_PALETTE = {
    0: (205, 65, 50),  # critical orbit captured by a root
    2: (20, 25, 80),  # no convergence
    3: (240, 220, 90),  # captured by a strange fixed point
    255: (128, 128, 128),  # no free critical point at this parameter
}


def parse_complex(text: str) -> complex:
    """Accepts "0.75", "0.75+0.1i", "-4+1i" and "0.75,0.1" forms."""
    s = text.strip()
    if "," in s:
        parts = s.split(",")
        if len(parts) == 2:
            try:
                return complex(float(parts[0]), float(parts[1]))
            except ValueError:
                pass
        raise argparse.ArgumentTypeError(f"not a complex value: {text!r}")
    t = s[:-1] + "j" if s.endswith(("i", "I")) else s
    try:
        return complex(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex value: {text!r}")


def parse_window(text: str) -> tuple[float, float, float, float]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("window needs re_min,re_max,im_min,im_max")
    try:
        vals = tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a window: {text!r}")
    if not (vals[0] < vals[1] and vals[2] < vals[3]):
        raise argparse.ArgumentTypeError("window bounds must satisfy min < max")
    return vals


def parse_mesh(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("mesh looks like 200x200")
    try:
        w, h = int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a mesh: {text!r}")
    if w < 1 or h < 1:
        raise argparse.ArgumentTypeError("mesh must be at least 1x1")
    return w, h


def cval(z: complex):
    return "inf" if is_inf(z) else [z.real, z.imag]


def fval(x: float):
    return "inf" if math.isinf(x) else x


def _print_json(doc, out_path=None):
    text = json.dumps(doc, indent=2)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {out_path}")
    else:
        print(text)


def _cmd_fixed_points(args) -> int:
    doc = {
        "A": cval(args.A),
        "fixed_points": [
            {
                "label": r.label,
                "point": cval(r.point),
                "multiplier_modulus": fval(r.multiplier_modulus),
                "class": r.classification,
                "multiplicity": r.multiplicity,
            }
            for r in fixed_points(args.A)
        ],
    }
    _print_json(doc)
    return 0


def _cmd_critical_points(args) -> int:
    doc = {
        "A": cval(args.A),
        "critical_points": [
            {"point": cval(c.point), "free": c.free} for c in critical_points(args.A)
        ],
    }
    _print_json(doc)
    return 0


def _cmd_stability(args) -> int:
    A = args.A
    if ParamA(A).is_newton:
        z23, source = None, "absent"
    else:
        try:
            z23, source = stability_z23(A), "formula"
        except DomainExcluded:
            z2, _ = strange_fixed_point_pair(A)
            z23, source = abs(s_prime(A, z2)), "direct"
    doc = {
        "A": cval(A),
        "stability_z1": fval(stability_z1(A)),
        "stability_z23": None if z23 is None else fval(z23),
        "stability_z23_source": source,
        "disk_z1": in_stability_disk_z1(A),
        "disk_z23": in_stability_disk_z23(A),
    }
    _print_json(doc)
    return 0


def _cmd_sweep(args) -> int:
    import csv

    if args.kind == "fixed":
        rows = sweep_fixed_points(args.min, args.max, args.n)
        header = ["A", "z2_re", "z2_im", "z3_re", "z3_im"]
        plotter = plot_fixed_sweep
    elif args.kind == "critical":
        rows = sweep_critical_points(args.min, args.max, args.n)
        header = ["A", "zc1_re", "zc1_im", "zc2_re", "zc2_im"]
        plotter = plot_critical_sweep
    else:
        rows = stability_profile(args.min, args.max, args.n)
        header = ["A", "s1_z1", "s1_z23"]
        plotter = plot_stability_profile
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for r in rows:
            flat = [r.A]
            for v in r[1:]:
                flat.extend((v.real, v.imag) if isinstance(v, complex) else (v,))
            writer.writerow([repr(x) for x in flat])
    print(f"wrote {args.out} ({len(rows)} rows)")
    if not args.no_plot:
        fig_path = args.plot or os.path.splitext(args.out)[0] + ".png"
        plotter(rows, fig_path)
        print(f"wrote {fig_path}")
    return 0


def _cmd_orbits(args) -> int:
    orbs = find_periodic_orbits(args.A, args.period)
    doc = [
        {
            "A": cval(args.A),
            "period": o.period,
            "points": [cval(p) for p in o.points],
            "multiplier_modulus": fval(o.multiplier_modulus),
            "class": o.classification,
        }
        for o in orbs
    ]
    _print_json(doc, args.out)
    return 0


def _auto_attractors(A: complex) -> list[complex]:
    pts = []
    for rep in fixed_points(A):
        if rep.label in ("Z1", "Z2", "Z3") and rep.classification in (
            SUPERATTRACTOR,
            ATTRACTOR,
        ):
            pts.append(rep.point)
    for orb in find_periodic_orbits(A, 2):
        if orb.classification in (SUPERATTRACTOR, ATTRACTOR):
            pts.extend(orb.points)
    return pts


def _emit_plane(grid, palette, args) -> int:
    write_ppm(grid, palette, args.out)
    print(f"wrote {args.out}")
    if args.labels:
        write_pgm(grid, args.labels)
        print(f"wrote {args.labels}")
    if args.report:
        _print_json(render_report(grid), args.report)
    return 0


def _cmd_dyn_plane(args) -> int:
    window = Window(*args.window, *args.mesh)
    cfg = IterConfig(args.max_iter, args.tol)
    attractors = _auto_attractors(args.A) if args.attractors == "auto" else []
    grid = dyn_plane(args.A, window, cfg, tuple(attractors))
    palette = dict(DYN_BASE_PALETTE)
    for k in range(len(attractors)):
        palette[3 + k] = ATTRACTOR_COLORS[k % len(ATTRACTOR_COLORS)]
    return _emit_plane(grid, palette, args)


def _cmd_param_plane(args) -> int:
    window = Window(*args.window, *args.mesh)
    cfg = IterConfig(args.max_iter, args.tol)
    grid = param_plane(window, cfg, args.critic)
    return _emit_plane(grid, PARAM_PALETTE, args)


def _cmd_verify(args) -> int:
    results = run_all(args.seed)
    pad = max(len(r.name) for r in results)
    for r in results:
        status = "ok" if r.ok else "FAIL"
        print(f"{r.name:<{pad}}  max deviation {r.deviation:.3e}  threshold {r.threshold:.0e}  {status}")
    return 0 if all(r.ok for r in results) else 1


def _add_window_flags(sp, window_default: str) -> None:
    sp.add_argument(
        "--window",
        type=parse_window,
        default=parse_window(window_default),
        help=f"re_min,re_max,im_min,im_max (default {window_default}; use --window=... for negative bounds)",
    )
    sp.add_argument("--mesh", type=parse_mesh, default=(200, 200), help="WxH, default 200x200")
    sp.add_argument("--max-iter", type=int, default=50, help="iteration cap, default 50")
    sp.add_argument("--tol", type=float, default=1e-2, help="convergence tolerance, default 1e-2")
    sp.add_argument("--out", required=True, help="output PPM path")
    sp.add_argument("--labels", help="also write the raw basin ids as a PGM")
    sp.add_argument("--report", help="also write a JSON basin-count report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quaddyn",
        description="Dynamics of the one-parameter operator family on quadratics:"
        " stability reports, periodic orbits, and plane rasters.",
        epilog='Complex values accept "0.75", "0.75+0.1i" or "0.75,0.1";'
        " prefer --A=-4+1i (equals form) when the value starts with a minus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("fixed-points", help="stability reports for all fixed points")
    sp.add_argument("--A", type=parse_complex, required=True, help="family parameter")
    sp.set_defaults(func=_cmd_fixed_points)

    sp = sub.add_parser("critical-points", help="critical points with free/non-free flags")
    sp.add_argument("--A", type=parse_complex, required=True, help="family parameter")
    sp.set_defaults(func=_cmd_critical_points)

    sp = sub.add_parser("stability", help="closed-form multiplier moduli and disk tests")
    sp.add_argument("--A", type=parse_complex, required=True, help="family parameter")
    sp.set_defaults(func=_cmd_stability)

    sp = sub.add_parser("sweep", help="tabulate fixed/critical points or the stability profile over real A")
    sp.add_argument("kind", choices=("fixed", "critical", "profile"))
    sp.add_argument("--min", type=float, default=-1.0, help="sweep start, default -1")
    sp.add_argument("--max", type=float, default=3.0, help="sweep end, default 3")
    sp.add_argument("--n", type=int, default=201, help="sample count, default 201")
    sp.add_argument("--out", required=True, help="output CSV path")
    sp.add_argument("--plot", help="figure path (default: CSV path with .png)")
    sp.add_argument("--no-plot", action="store_true", help="skip the figure")
    sp.set_defaults(func=_cmd_sweep)

    sp = sub.add_parser("orbits", help="periodic orbits of a given period")
    sp.add_argument("--A", type=parse_complex, required=True, help="family parameter")
    sp.add_argument("--period", type=int, required=True, choices=(1, 2, 3))
    sp.add_argument("--out", help="write JSON here instead of stdout")
    sp.set_defaults(func=_cmd_orbits)

    sp = sub.add_parser("dyn-plane", help="basin raster over starting points for fixed A")
    sp.add_argument("--A", type=parse_complex, required=True, help="family parameter")
    _add_window_flags(sp, "-3,3,-3,3")
    sp.add_argument(
        "--attractors",
        choices=("auto", "none"),
        default="none",
        help="auto: track attracting strange fixed points and 2-cycles",
    )
    sp.set_defaults(func=_cmd_dyn_plane)

    sp = sub.add_parser("param-plane", help="fate of the free critical orbit over a grid of A")
    _add_window_flags(sp, "-1,3,-2,2")
    sp.add_argument("--critic", choices=("zc1", "zc2"), default="zc1")
    sp.set_defaults(func=_cmd_param_plane)

    sp = sub.add_parser("verify", help="run the seeded property suites")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (
        NonConvergence,
        GroupingFailure,
        DomainExcluded,
        PoleHit,
        DerivativeZero,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
