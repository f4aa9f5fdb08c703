"""``nvactuator`` command line: frames, synthesis, sweeps, baselines and table statistics.

Results go to CSV (``--out``, default stdout) with a ``#`` header echoing the
effective configuration; a short human summary goes to stderr.
Exit codes: 0 success, 2 usage error, 3 no solution found, 4 data error.
"""

from __future__ import annotations

import argparse
import ast
import io
import json
import math
import operator
import os
import re
import sys
from dataclasses import replace
from typing import List, Optional

from . import __version__
from .baseline import equal_time_best
from .errors import ActuatorError, DegenerateFrame, NoSolutionFound, ResonanceError, SpinDataError
from .physics import (
    PRESETS,
    ControlFrame,
    FieldConfig,
    HyperfineSpin,
    control_frame,
    enhancement_factors,
    rwa_check,
)
from .spindata import SpinTable, builtin_table, load_table, table_stats
from .su2 import TWO_PI, Axis, Unitary, goal as make_goal
from .svg import line_plot, plot_rows
from .sweeps import (
    ZETA_NAMES,
    crossover_rabi,
    frames_for,
    ordered_map,
    sweep_grid,
    sweep_theta,
    synthesize_for_spin,
    synthetic_frame,
)
from .synthesis import max_switches, regime

TABLE_ENV = "NVACTUATOR_TABLE"
DEFAULT_SPIN = "paper-2.92A"

EXIT_OK, EXIT_USAGE, EXIT_NO_SOLUTION, EXIT_DATA = 0, 2, 3, 4


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# value parsing

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def _eval_expr(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.Name) and node.id == "pi":
        return math.pi
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_expr(node.left), _eval_expr(node.right))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_expr(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    raise ValueError("unsupported expression")


def parse_angle(text: str) -> float:
    """Radians from ``1.2``, ``pi/2``, ``3pi/4``, ``2*pi`` or ``90deg``."""
    s = text.strip().lower().replace(" ", "")
    scale = 1.0
    if s.endswith("deg"):
        s, scale = s[:-3], math.pi / 180.0
    # implicit multiplication: 3pi -> 3*pi
    s = re.sub(r"(\d|\))pi", r"\1*pi", s)
    try:
        return _eval_expr(ast.parse(s, mode="eval").body) * scale
    except (SyntaxError, ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse angle {text!r}") from None


def parse_grid(text: str, angle: bool = False) -> List[float]:
    """Comma-separated values with two range forms.

    ``a:b:N`` gives ``N`` evenly spaced points on ``[a, b)``; ``a..b`` (or
    ``a..b..step``) is the inclusive range stepping by ``step`` (default
    ``a``, or 1 when ``a`` is 0).
    """
    conv = parse_angle if angle else _parse_number
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if ":" in item:
            parts = item.split(":")
            if len(parts) != 3:
                raise UsageError(f"range {item!r} must look like start:stop:count")
            a, b = conv(parts[0]), conv(parts[1])
            try:
                n = int(parts[2])
            except ValueError:
                raise UsageError(f"count in {item!r} must be an integer") from None
            if n < 1:
                raise UsageError(f"count in {item!r} must be >= 1")
            out.extend(a + (b - a) * k / n for k in range(n))
        elif ".." in item:
            parts = item.split("..")
            if len(parts) not in (2, 3):
                raise UsageError(f"range {item!r} must look like start..stop[..step]")
            a, b = conv(parts[0]), conv(parts[1])
            step = conv(parts[2]) if len(parts) == 3 else (a if a > 0 else 1.0)
            if not step > 0:
                raise UsageError(f"step in {item!r} must be positive")
            count = int(math.floor((b - a) / step + 1e-9)) + 1
            out.extend(a + k * step for k in range(max(count, 0)))
        else:
            out.append(conv(item))
    if not out:
        raise UsageError(f"empty grid {text!r}")
    return out


def _parse_number(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        return parse_angle(text)


def parse_goal(text: str) -> Unitary:
    """``X:angle``, ``Y:angle``, ``Z:angle`` or ``axis:x,y,z:angle``."""
    parts = text.split(":")
    kind = parts[0].strip().upper()
    try:
        if kind in ("X", "Y", "Z") and len(parts) == 2:
            return make_goal(kind, parse_angle(parts[1]) % TWO_PI)
        if kind == "AXIS" and len(parts) == 3:
            vec = [float(v) for v in parts[1].split(",")]
            if len(vec) != 3:
                raise UsageError("axis needs three components")
            return make_goal("axis-angle", parse_angle(parts[2]) % TWO_PI, Axis.from_vector(vec))
    except ValueError as exc:
        raise UsageError(f"bad goal {text!r}: {exc}") from None
    raise UsageError(f"bad goal {text!r}; expected X|Y|Z:angle or axis:x,y,z:angle")


# ---------------------------------------------------------------------------
# config

def _manifold(text: str) -> str:
    t = text.strip().lower()
    if t in ("best", "+1", "1", "-1"):
        return {"1": "+1"}.get(t, t)
    raise argparse.ArgumentTypeError("manifold must be best, +1 or -1")


def _common(suppress: bool = False) -> argparse.ArgumentParser:
    # subcommands repeat the global flags with suppressed defaults so that a
    # flag given before the subcommand is not overwritten by its default
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("physics")
    g.add_argument("--B0", type=float, default=500.0, help="static field in gauss (default 500)")
    g.add_argument("--manifold", type=_manifold, default="+1",
                   help="actuator frame: +1 (default), -1, or best (fastest of both per goal)")
    g.add_argument("--preset", choices=sorted(PRESETS), default="default",
                   help="constant set; 'rounded' (alias 'paper') sets gamma_C to 1 kHz/G")
    g.add_argument("--gamma-c", type=float, default=None, help="13C gyromagnetic ratio, kHz/G")
    g.add_argument("--gamma-e", type=float, default=None, help="electron gyromagnetic ratio, MHz/G")
    g.add_argument("--delta", type=float, default=None, help="zero-field splitting, MHz")
    g.add_argument("--rabi", default="20,100", help="bare Rabi frequencies, kHz (comma list)")
    s = p.add_argument_group("spin selection")
    s.add_argument("--spin", default=None, help="spin label from the table")
    s.add_argument("--A", type=float, default=None, help="longitudinal hyperfine, MHz")
    s.add_argument("--B", type=float, default=None, help="transverse hyperfine, MHz")
    s.add_argument("--table", default=None, help=f"spin table (CSV/JSON); default ${TABLE_ENV} or built-in")
    o = p.add_argument_group("search")
    o.add_argument("--eps", type=float, default=1e-10, help="infidelity tolerance")
    o.add_argument("--n-cap", type=int, default=None, help="longest sequence searched")
    o.add_argument("--starts", type=int, default=512, help="scan points per sequence family")
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--overhead-ns", type=float, default=0.0, help="time per actuator switch, ns")
    o.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    w = p.add_argument_group("output")
    w.add_argument("--out", default=None, help="CSV path (default stdout)")
    w.add_argument("--svg", default=None, help="also write an SVG plot here")
    if suppress:
        for action in p._actions:
            action.default = argparse.SUPPRESS
    return p


def build_parser() -> argparse.ArgumentParser:
    common, sub_common = _common(), _common(suppress=True)
    parser = argparse.ArgumentParser(prog="nvactuator", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[sub_common])

    add("frame", "control frame and enhancement factors of a spin")
    p = add("synth", "time-optimal sequence for one goal")
    p.add_argument("goal", help="X|Y|Z:angle or axis:x,y,z:angle")
    p = add("sweep", "actuator vs direct time over a rotation-angle grid")
    p.add_argument("--goal", choices=["X", "Y", "Z"], default="Y")
    p.add_argument("--theta", default="0:2pi:48", help="angle grid (default 0:2pi:48)")
    p = add("grid", "actuator time over a synthetic (alpha, kappa) grid")
    p.add_argument("--alpha", default="1deg:pi:36", help="alpha grid")
    p.add_argument("--kappa", default="0.001,0.1..1", help="kappa grid")
    p.add_argument("--goal", default="Y:pi")
    p = add("crossover", "bare Rabi frequency where direct driving starts to win")
    p.add_argument("--goal", default="Y:pi")
    p.add_argument("--no-inversion", action="store_true", help="direct drive cannot invert its phase")
    p = add("baseline", "equal-period alternating scheme vs the optimal sequence")
    p.add_argument("--goal", default="Y:pi")
    p.add_argument("--alpha", default=None, help="synthetic frame angle (with --kappa) instead of a spin")
    p.add_argument("--kappa", type=float, default=None)
    p.add_argument("--n-max", type=int, default=200)
    p.add_argument("--tau-max", type=float, default=None, help="longest period, us")
    p = add("stats", "per-spin statistics and histograms of a spin table")
    p.add_argument("--goal", default="Y:pi")
    p.add_argument("--bin-width", type=float, default=0.25, help="zeta histogram bin width")
    p.add_argument("--hist-out", default=None, help="write histograms to this CSV")
    return parser


def _constants(args):
    c = PRESETS[args.preset]
    over = {k: getattr(args, a) for k, a in (("gamma_c", "gamma_c"), ("gamma_e", "gamma_e"), ("delta", "delta"))
            if getattr(args, a) is not None}
    try:
        return replace(c, **over)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _table(args) -> SpinTable:
    path = args.table or os.environ.get(TABLE_ENV)
    return load_table(path) if path else builtin_table()


def _spin(args, required=True) -> Optional[HyperfineSpin]:
    if args.A is not None or args.B is not None:
        if args.A is None or args.B is None:
            raise UsageError("--A and --B must be given together")
        b = abs(args.B)
        return HyperfineSpin(args.spin or "custom", args.A, b)
    label = args.spin or (DEFAULT_SPIN if required else None)
    if label is None:
        return None
    try:
        return _table(args).get(label)
    except KeyError as exc:
        raise SpinDataError(exc.args[0]) from None


def _synth_opts(args) -> dict:
    if not args.eps > 0:
        raise UsageError("--eps must be positive")
    if args.n_cap is not None and args.n_cap < 0:
        raise UsageError("--n-cap must be >= 0")
    if args.starts < 1:
        raise UsageError("--starts must be >= 1")
    if args.overhead_ns < 0:
        raise UsageError("--overhead-ns must be >= 0")
    return dict(eps_tol=args.eps, n_cap=args.n_cap, starts=args.starts, seed=args.seed, overhead_ns=args.overhead_ns)


def _rabi(args) -> List[float]:
    vals = parse_grid(args.rabi)
    if any(not v > 0 for v in vals):
        raise UsageError("--rabi values must be positive")
    return vals


def _policy(args):
    return "best" if args.manifold == "best" else int(args.manifold)


# ---------------------------------------------------------------------------
# output

def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else ("inf" if v > 0 else ("-inf" if v < 0 else "nan"))
    return str(v)


def write_csv(rows: List[dict], args, command: str, extra: Optional[dict] = None, columns=None) -> str:
    """CSV text with a ``#`` header carrying the effective configuration."""
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "svg", "threads", "func")}
    consts = _constants(args)
    cfg["constants"] = {"delta_MHz": consts.delta, "gamma_e_MHz_per_G": consts.gamma_e, "gamma_c_kHz_per_G": consts.gamma_c}
    if extra:
        cfg.update(extra)
    buf = io.StringIO()
    buf.write(f"# nvactuator {__version__} {command}\n")
    buf.write(f"# seed: {args.seed}\n")
    buf.write("# config: " + json.dumps(cfg, sort_keys=True, default=str) + "\n")
    if columns is None:
        columns = []
        for r in rows:
            for k in r:
                if k not in columns:
                    columns.append(k)
    buf.write(",".join(columns) + "\n")
    for r in rows:
        buf.write(",".join(_cell(r.get(c)) for c in columns) + "\n")
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text


def _write_svg(args, svg_text: str):
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg_text)


def _say(msg: str = ""):
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------------------
# commands

def cmd_frame(args) -> int:
    spin = _spin(args)
    consts = _constants(args)
    factors = enhancement_factors(spin, FieldConfig(args.B0, 1), consts)
    rows = []
    for m, fr in frames_for(spin, args.B0, consts, _policy(args)):
        bound = max_switches(fr)
        rows.append({
            "label": spin.label, "manifold": f"{m:+d}", "A_MHz": spin.A, "B_MHz": spin.B,
            "omega0_MHz": fr.omega0, "omega1_MHz": fr.omega1,
            "alpha_rad": fr.alpha, "alpha_deg": math.degrees(fr.alpha), "kappa": fr.kappa,
            "regime": regime(fr).value, "n_max": bound.n_max, "infinite_allowed": int(bound.infinite_allowed),
            "zeta0": factors.zeta0, "zeta_plus1": factors.zeta_plus, "zeta_minus1": factors.zeta_minus,
        })
        _say(f"{spin.label} (A={spin.A} MHz, B={spin.B} MHz) manifold {m:+d}: "
             f"omega0={fr.omega0:.6g} MHz omega1={fr.omega1:.6g} MHz "
             f"alpha={math.degrees(fr.alpha):.3f} deg kappa={fr.kappa:.4f} [{regime(fr).value}, n<={bound.n_max}"
             f"{' or infinite' if bound.infinite_allowed else ''}]")
    _say(f"zeta0={factors.zeta0:.4f} zeta+1={factors.zeta_plus:.4f} zeta-1={factors.zeta_minus:.4f}")
    write_csv(rows, args, "frame")
    return EXIT_OK


def cmd_synth(args) -> int:
    g = parse_goal(args.goal)
    spin = _spin(args)
    consts = _constants(args)
    choice = synthesize_for_spin(g, spin, args.B0, consts, _policy(args), **_synth_opts(args))
    res, fr = choice.result, choice.frame
    seq = res.sequence
    rows, t = [], 0.0
    for k, (ax, rot) in enumerate(zip(seq.axes, seq.rotations(fr))):
        ang = rot.angle
        dur = ang / (TWO_PI * fr.frequency(ax))
        rows.append({"k": k, "axis": f"v{ax}", "angle_rad": ang, "angle_deg": math.degrees(ang),
                     "t_start_us": t, "duration_us": dur})
        t += dur + seq.overhead_ns * 1e-3
    extra = {"result": {"manifold": choice.manifold, "n": res.n, "T_us": res.time, "eps": res.infidelity,
                        "at_cap": res.at_cap, "branch": res.branch, "regime": res.regime.value}}
    _say(f"{spin.label} manifold {choice.manifold:+d}: n={res.n} T={res.time:.6g} us eps={res.infidelity:.3g}"
         f"{' (at cap: infinite-length optimum likely)' if res.at_cap else ''}")
    for r in rows:
        _say(f"  {r['axis']}  {r['angle_rad']:.9f} rad  ({r['duration_us']:.6g} us)")
    write_csv(rows, args, "synth", extra, columns=["k", "axis", "angle_rad", "angle_deg", "t_start_us", "duration_us"])
    return EXIT_OK


def _merge_best(per_manifold: List[tuple]) -> List[dict]:
    """Row-wise fastest manifold (ties keep the earlier, i.e. +1)."""
    out = []
    for rows in zip(*(r for _, r in per_manifold)):
        best, bm = None, None
        for (m, _), r in zip(per_manifold, rows):
            t = r.get("T_actuator_us")
            if best is None or (t is not None and (best.get("T_actuator_us") is None
                                                   or round(t, 12) < round(best["T_actuator_us"], 12))):
                best, bm = r, m
        row = {"manifold": f"{bm:+d}"}
        row.update(best)
        out.append(row)
    return out


def cmd_sweep(args) -> int:
    spin = _spin(args)
    consts = _constants(args)
    thetas = parse_grid(args.theta, angle=True)
    bad = [t for t in thetas if not 0.0 <= t < TWO_PI]
    if bad:
        raise UsageError(f"theta values must lie in [0, 2pi): {bad[:3]}")
    rabi = _rabi(args)
    factors = enhancement_factors(spin, FieldConfig(args.B0, 1), consts)
    per = [(m, sweep_theta(args.goal, thetas, fr, factors, rabi, threads=args.threads, **_synth_opts(args)))
           for m, fr in frames_for(spin, args.B0, consts, _policy(args))]
    rows = _merge_best(per)
    write_csv(rows, args, "sweep", {"spin": spin.label})
    failed = sum(r["status"] != "ok" for r in rows)
    _say(f"{len(rows)} rows, {failed} flagged")
    best_z = max(ZETA_NAMES, key=lambda z: abs(dict(zip(ZETA_NAMES, factors.as_tuple()))[z]))
    _write_svg(args, plot_rows(rows, "theta_rad", ["T_actuator_us"] + [f"T_direct_us@{best_z}_{r:g}kHz_inv" for r in rabi],
                               ylabel="time (us)", title=f"{args.goal}(theta), {spin.label}"))
    return EXIT_OK


def cmd_grid(args) -> int:
    consts = _constants(args)
    alphas = parse_grid(args.alpha, angle=True)
    kappas = parse_grid(args.kappa)
    if any(not (0.0 <= a <= math.pi) for a in alphas):
        raise UsageError("alpha values must lie in [0, pi]")
    if any(not k > 0 for k in kappas):
        raise UsageError("kappa values must be positive")
    g = parse_goal(args.goal)
    rows = sweep_grid(alphas, kappas, g, args.B0, _rabi(args), consts, threads=args.threads, **_synth_opts(args))
    write_csv(rows, args, "grid")
    _say(f"{len(rows)} rows ({len(alphas)} alpha x {len(kappas)} kappa), "
         f"{sum(r['status'] != 'ok' for r in rows)} flagged")
    series = {}
    for k in kappas:
        sel = [r for r in rows if r["kappa"] == k]
        series[f"kappa={k:g}"] = ([r["alpha_deg"] for r in sel], [r["T_norm"] for r in sel])
    _write_svg(args, line_plot(series, xlabel="alpha (deg)", ylabel="T * 2pi * omega1", title=args.goal))
    return EXIT_OK


def cmd_crossover(args) -> int:
    consts = _constants(args)
    g = parse_goal(args.goal)
    single = _spin(args, required=False)
    spins = [single] if single is not None else list(_table(args))
    opts = _synth_opts(args)

    def row(spin):
        out = {"label": spin.label, "distance_angstrom": spin.distance}
        try:
            factors = enhancement_factors(spin, FieldConfig(args.B0, 1), consts)
            choice = synthesize_for_spin(g, spin, args.B0, consts, _policy(args), **opts)
            c = crossover_rabi(g, choice.frame, factors, not args.no_inversion, result=choice.result)
            out.update(manifold=f"{choice.manifold:+d}", T_actuator_us=c.T_actuator_us, n=choice.result.n,
                       zeta_best=c.zeta_best, theta_eff_rad=c.theta_eff, rabi_star_kHz=c.rabi_khz, status="ok")
        except ActuatorError as exc:
            out.update(manifold=None, T_actuator_us=None, n=None, zeta_best=None, theta_eff_rad=None,
                       rabi_star_kHz=None, status=type(exc).__name__)
        return out

    rows = ordered_map(row, spins, args.threads)
    write_csv(rows, args, "crossover")
    for r in rows:
        _say(f"{r['label']}: Rabi* = {_cell(r['rabi_star_kHz']) or 'n/a'} kHz ({r['status']})")
    _write_svg(args, plot_rows(rows, "distance_angstrom", ["rabi_star_kHz"], xlabel="distance (A)",
                               ylabel="bare Rabi (kHz)", title=args.goal))
    if len(rows) == 1 and rows[0]["status"] == "NoSolutionFound":
        return EXIT_NO_SOLUTION
    return EXIT_OK


def cmd_baseline(args) -> int:
    consts = _constants(args)
    g = parse_goal(args.goal)
    opts = _synth_opts(args)
    if args.alpha is not None or args.kappa is not None:
        if args.alpha is None or args.kappa is None:
            raise UsageError("--alpha and --kappa must be given together")
        fr = synthetic_frame(parse_angle(args.alpha), args.kappa, args.B0, consts)
        label, m = "synthetic", None
        from .synthesis import synthesize
        res = synthesize(g, fr, **opts)
    else:
        spin = _spin(args)
        choice = synthesize_for_spin(g, spin, args.B0, consts, _policy(args), **opts)
        fr, res, label, m = choice.frame, choice.result, spin.label, choice.manifold
    eq = equal_time_best(g, fr, n_max=args.n_max, tau_max=args.tau_max, overhead_ns=args.overhead_ns)
    rows = [{
        "label": label, "manifold": None if m is None else f"{m:+d}",
        "alpha_deg": math.degrees(fr.alpha), "kappa": fr.kappa,
        "tau_us": eq.tau, "n_periods": eq.n, "eps_equal": eq.infidelity, "T_equal_us": eq.total_time,
        "T_optimal_us": res.time, "n_optimal": res.n, "eps_optimal": res.infidelity,
    }]
    write_csv(rows, args, "baseline")
    _say(f"equal-time: n={eq.n} tau={eq.tau:.6g} us T={eq.total_time:.6g} us eps={eq.infidelity:.3g}; "
         f"optimal: n={res.n} T={res.time:.6g} us")
    return EXIT_OK


def cmd_stats(args) -> int:
    consts = _constants(args)
    table = _table(args)
    if table.row_count == 0:
        raise SpinDataError("spin table is empty")
    m = 1 if args.manifold in ("best", "+1") else -1
    g = parse_goal(args.goal)
    st = table_stats(table, FieldConfig(args.B0, m), g, consts, zeta_bin=args.bin_width,
                     threads=args.threads, **_synth_opts(args))
    rows = []
    for r in st.rows:
        z = r.zeta or (None, None, None)
        rows.append({
            "label": r.label, "distance_angstrom": r.distance, "zeta0": z[0], "zeta_plus1": z[1], "zeta_minus1": z[2],
            "alpha_rad": r.alpha, "alpha_deg": None if r.alpha is None else math.degrees(r.alpha),
            "kappa": r.kappa, "n_bound": r.n_bound, "n": r.n, "T_actuator_us": r.time_us,
            "at_cap": int(r.at_cap), "status": r.status,
        })
    write_csv(rows, args, "stats", {"stats_manifold": m})
    hist_rows = []
    for name, h in st.histograms.items():
        for lo, hi, c in zip(h.edges[:-1], h.edges[1:], h.counts):
            hist_rows.append({"quantity": name, "bin_lo": lo, "bin_hi": hi, "count": c})
        _say(f"{name}: " + " ".join(f"[{lo:g},{hi:g}):{c}" for lo, hi, c in zip(h.edges[:-1], h.edges[1:], h.counts)))
    if args.hist_out:
        sub = argparse.Namespace(**{**vars(args), "out": args.hist_out})
        write_csv(hist_rows, sub, "stats-histograms", {"stats_manifold": m})
    nh = st.histograms["n"]
    _write_svg(args, line_plot({"count": ([0.5 * (a + b) for a, b in zip(nh.edges[:-1], nh.edges[1:])], list(nh.counts))},
                               xlabel="n", ylabel="spins", title="optimal sequence length"))
    return EXIT_OK


COMMANDS = {
    "frame": cmd_frame, "synth": cmd_synth, "sweep": cmd_sweep, "grid": cmd_grid,
    "crossover": cmd_crossover, "baseline": cmd_baseline, "stats": cmd_stats,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        _say(f"nvactuator: error: {exc}")
        return EXIT_USAGE
    except NoSolutionFound as exc:
        _say(f"nvactuator: no solution: {exc}")
        return EXIT_NO_SOLUTION
    except (SpinDataError, DegenerateFrame, ResonanceError) as exc:
        _say(f"nvactuator: {type(exc).__name__}: {exc}")
        return EXIT_DATA
    except OSError as exc:
        _say(f"nvactuator: {exc}")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
