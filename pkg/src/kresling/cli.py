"""Command-line front end.

Every subcommand writes one comma-delimited table (header row with units)
to ``--out`` or stdout.  Angles are reported in degrees.  Errors are printed
as a single line ``error: <kind>: <message>`` with a nonzero exit status.
"""
from __future__ import annotations

import argparse
import math
import sys
import warnings

import numpy as np

from . import __version__, checks, comparison, kinematics, materials, quasistatics
from .config import load_config
from .errors import KreslingError
from .geometry import chamber_volume, height_from_rotation
from .report import Column, angle, emit_report, length, pressure

EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(KreslingError):
    kind = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_grid(text: str):
    """``start:stop:count`` with an optional ``name=`` prefix."""
    name, _, body = text.rpartition("=")
    parts = body.split(":")
    if len(parts) != 3:
        raise UsageError(f"--grid {text!r}: expected start:stop:count")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"--grid {text!r}: start/stop must be numbers and count an integer") from None
    if count < 1:
        raise UsageError(f"--grid {text!r}: count must be >= 1")
    return name, np.linspace(start, stop, count)


def _grids(args, names):
    """Map repeated ``--grid`` values onto named axes, in order unless named."""
    grids = [parse_grid(g) for g in args.grid or []]
    if len(grids) > len(names):
        raise UsageError(f"{args.command}: at most {len(names)} --grid axes ({', '.join(names)})")
    out = {}
    for i, (name, values) in enumerate(grids):
        key = name or names[i]
        if key not in names:
            raise UsageError(f"--grid axis {key!r} unknown; expected one of {', '.join(names)}")
        out[key] = values
    return out


def _named_spec(args):
    cfg = load_config(args.config)
    spec = cfg.actuator(args.actuator)
    name = args.actuator or next(iter(cfg.actuators))
    return name, spec


def _spec(args):
    return _named_spec(args)[1]


def _meta(args, **extra):
    if args.no_meta:
        return None
    items = [f"kresling {__version__}", args.command]
    for key in ("config", "actuator", "data", "model"):
        value = getattr(args, key, None)
        if value is not None:
            items.append(f"{key}={value}")
    items += [f"{k}={v}" for k, v in extra.items()]
    return " ".join(items)


def _emit(args, rows, columns, **meta):
    emit_report(rows, args.out, columns, _meta(args, **meta))


def cmd_analyze(args):
    name, spec = _named_spec(args)
    p = spec.pattern
    n = len(spec)
    theta0 = p.rest_rotation
    delta0 = math.radians(p.delta0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        rest = kinematics.chain_pose(spec, kinematics.shared_angles(spec, theta0), args.model)
        folded = kinematics.chain_pose(spec, kinematics.shared_angles(spec, spec.theta_limit), args.model)
    for note in rest.warnings[:1]:
        print(f"warning: {note}", file=sys.stderr)
    row = dict(
        actuator=name,
        type=spec.type_label.value, modules=n, b_over_a=p.ratio, delta0=p.delta0,
        theta_u0=math.degrees(theta0),
        theta_f=math.degrees(kinematics.folding_rotation(delta0, p.ratio)),
        theta_max=math.degrees(p.theta_max),
        theta_limit=math.degrees(spec.theta_limit),
        h0=p.rest_height,
        rest_length=float(rest.translation[1]),
        folded_length=float(folded.translation[1]),
        volume0=chamber_volume(p, theta0),
        net_rotation_gain=math.degrees(folded.angle - rest.angle),
    )
    columns = [
        Column("actuator", "text"), Column("type", "text"), Column("modules", "int"),
        Column("b_over_a", "number"), angle("delta0"), angle("theta_u0"), angle("theta_f"),
        angle("theta_max"), angle("theta_limit"), length("h0"), length("rest_length"),
        length("folded_length"), Column("volume0", "volume", "mm3"), angle("net_rotation_gain"),
    ]
    _emit(args, [row], columns)


def cmd_sweep(args):
    grids = _grids(args, ("delta", "ratio"))
    deltas = grids.get("delta", np.array([45.0]))
    ratios = grids.get("ratio", np.array([1.0]))
    table = kinematics.parametric_sweep(args.quantity, np.radians(deltas), ratios, args.k)
    q = args.quantity
    rows = [{"delta": d, "b_over_a": r, q: math.degrees(table[i, j])}
            for i, d in enumerate(deltas) for j, r in enumerate(ratios)]
    columns = [angle("delta"), Column("b_over_a", "number"), angle(q)]
    _emit(args, rows, columns, quantity=args.quantity, k=args.k)


def cmd_curve(args):
    spec = _spec(args)
    grids = _grids(args, ("pressure",))
    if "pressure" in grids:
        ps = grids["pressure"]
    else:
        lo, hi = quasistatics.pressure_range(spec)
        ps = np.linspace(lo, hi, args.points)
    curve = quasistatics.pressure_angle_curve(spec, ps)
    n = len(spec)
    theta0 = spec.pattern.rest_rotation
    rows = []
    for p, t, v, tau in zip(curve.pressure, curve.theta_u, curve.volume, curve.torque):
        rows.append(dict(
            pressure=p, theta_u=math.degrees(t),
            rotation=n * math.degrees(t - theta0),
            length=n * height_from_rotation(spec.pattern, t) if math.isfinite(t) else math.nan,
            volume=v, torque_residual=tau,
        ))
    columns = [pressure("pressure"), angle("theta_u"), angle("rotation"), length("length"),
               Column("volume", "volume", "mm3"), Column("torque_residual", "stress", "N mm")]
    _emit(args, rows, columns)


def cmd_torque(args):
    spec = _spec(args)
    grids = _grids(args, ("length",))
    lengths = grids["length"] if "length" in grids else quasistatics.branch_lengths(spec, args.points)
    samples = quasistatics.torque_vs_operating_length(spec, args.pressure, lengths)
    rows = [dict(length=s.length, theta_u=math.degrees(s.theta_u), torque=s.torque, rigidity=s.rigidity)
            for s in samples]
    columns = [length("length"), angle("theta_u"), Column("torque", "torque", "N mm"),
               Column("rigidity", "rigidity", "N mm2/deg")]
    _emit(args, rows, columns, pressure=args.pressure)


def cmd_chain(args):
    spec = _spec(args)
    if args.thetas is not None and args.pressure is not None:
        raise UsageError("chain: give either --thetas or --pressure, not both")
    if args.thetas is not None:
        try:
            thetas = [math.radians(float(t)) for t in args.thetas.split(",")]
        except ValueError:
            raise UsageError(f"--thetas {args.thetas!r}: expected comma-separated degrees") from None
        extra = {}
    else:
        p = 0.0 if args.pressure is None else args.pressure
        thetas = kinematics.shared_angles(spec, quasistatics.equilibrium_rotation(spec, p))
        extra = {"pressure": p}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        poses = kinematics.chain_poses(spec, thetas, args.model)
    for note in poses[-1].warnings[:1]:
        print(f"warning: {note}", file=sys.stderr)
    rows = []
    for i, (m, t, pose) in enumerate(zip(spec.modules, thetas, poses), start=1):
        rows.append(dict(module=i, handedness=m.handedness.value, theta=math.degrees(t),
                         net_rotation=math.degrees(pose.angle),
                         wrapped_rotation=math.degrees(pose.wrapped_angle),
                         axial_position=float(pose.translation[1])))
    columns = [Column("module", "int"), Column("handedness", "text"), angle("theta"),
               angle("net_rotation"), angle("wrapped_rotation"), length("axial_position")]
    _emit(args, rows, columns, **extra)


def cmd_fit_material(args):
    if (args.data is None) == (args.material is None):
        raise UsageError("fit-material: give exactly one of --data or --material")
    if args.data is not None:
        curve = materials.load_curve(args.data)
        source = args.data
    else:
        if args.material not in materials.TABLE_S1:
            raise UsageError(f"--material {args.material!r}: known materials are "
                             f"{', '.join(materials.TABLE_S1)}")
        curve = materials.synthetic_curve(materials.TABLE_S1[args.material])
        source = args.material
    fit = materials.fit_yeoh(curve, args.order)
    c = fit.coefficients
    row = dict(source=source, samples=curve.stretch.size, C10=c.C10, C20=c.C20, C30=c.C30,
               residual_norm=fit.residual_norm)
    columns = [Column("source", "text"), Column("samples", "int"),
               Column("C10", "coefficient", "MPa"), Column("C20", "coefficient", "MPa"),
               Column("C30", "coefficient", "MPa"), Column("residual_norm", "stress", "MPa")]
    _emit(args, [row], columns, material=source if args.material else None, order=args.order)


def cmd_compare(args):
    rows = []
    for r in comparison.load_comparison(args.data):
        rows.append(dict(name=r.name, rotation=r.rotation_deg, aspect_ratio=r.aspect_ratio,
                         aspect_bound=r.aspect_bound, pressure_change=r.pressure_change_kpa,
                         approx=int(r.approx), E_r_bound=r.E_r_bound, E_r=r.E_r,
                         printed_E_r=r.printed_E_r))
    columns = [Column("name", "text"), angle("rotation"), Column("aspect_ratio", "number"),
               Column("aspect_bound", "text"), pressure("pressure_change"), Column("approx", "int"),
               Column("E_r_bound", "text"), Column("E_r", "ratio", "deg"),
               Column("printed_E_r", "ratio", "deg")]
    _emit(args, rows, columns)


def cmd_check(args):
    spec = _spec(args) if args.config else None
    results = checks.run_checks(spec, mc_samples=args.samples)
    rows = [dict(check=r.name, status="PASS" if r.passed else "FAIL", detail=r.detail) for r in results]
    _emit(args, rows, [Column("check", "text"), Column("status", "text"), Column("detail", "text")],
          samples=args.samples)
    return 0 if all(r.passed for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kresling", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"kresling {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, func, help, config=True, grid=False, model=False):
        p = sub.add_parser(name, help=help, description=help)
        p.set_defaults(func=func)
        if config:
            p.add_argument("--config", required=(config == "required"),
                           help="config file or bundled name (IA, II, III, IB)")
            p.add_argument("--actuator", help="actuator name when the config defines several")
        if grid:
            p.add_argument("--grid", action="append", metavar="[AXIS=]START:STOP:COUNT",
                           help="grid axis, repeatable")
        if model:
            p.add_argument("--model", choices=[m.value for m in kinematics.HeightModel],
                           default=kinematics.HeightModel.Exact.value, help="module height model")
        p.add_argument("--out", default="-", help="output file (default stdout)")
        p.add_argument("--no-meta", action="store_true", help="omit the leading '#' metadata line")
        return p

    add("analyze", cmd_analyze, "single-module kinematics summary", config="required", model=True)
    p = add("sweep", cmd_sweep, "rotation quantity over delta (deg) x b/a grids", config=False, grid=True)
    p.add_argument("--quantity", choices=kinematics.QUANTITIES, default="theta_u")
    p.add_argument("--k", type=float, default=0.0, help="skeleton thickness ratio for theta_ts")
    p = add("curve", cmd_curve, "equilibrium pressure-angle curve", config="required", grid=True)
    p.add_argument("--points", type=int, default=41, help="samples over the default branch")
    p = add("torque", cmd_torque, "torque and rigidity over operating lengths (mm)",
            config="required", grid=True)
    p.add_argument("--pressure", type=float, default=-5.0, help="pressure in kPa (default -5)")
    p.add_argument("--points", type=int, default=41, help="lengths over the default branch")
    p = add("chain", cmd_chain, "cumulative module poses", config="required", model=True)
    p.add_argument("--thetas", help="comma-separated signed module angles in degrees")
    p.add_argument("--pressure", type=float, help="shared pressure in kPa")
    p = add("fit-material", cmd_fit_material, "Yeoh fit of a uniaxial stress-stretch curve", config=False)
    p.add_argument("--data", help="CSV with header 'lambda,stress_mpa'")
    p.add_argument("--material", help="fit synthetic data from a tabulated coefficient set")
    p.add_argument("--order", type=int, default=3)
    p = add("compare", cmd_compare, "rotation-ratio comparison table", config=False)
    p.add_argument("--data", help="comparison CSV (default: bundled table)")
    p = add("check", cmd_check, "run the internal oracle suite")
    p.add_argument("--samples", type=int, default=200_000, help="Monte-Carlo samples per volume")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        status = args.func(args)
    except KreslingError as exc:
        msg = " ".join(str(exc).split())
        print(f"error: {exc.kind}: {msg}", file=sys.stderr)
        return EXIT_USAGE if isinstance(exc, UsageError) else EXIT_FAIL
    except (ZeroDivisionError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {' '.join(str(exc).split())}", file=sys.stderr)
        return EXIT_FAIL
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
