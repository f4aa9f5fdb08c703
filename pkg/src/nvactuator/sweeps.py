"""Parameter sweeps comparing actuator control with direct rf driving.

Every sweep returns a list of plain ``dict`` rows in a fixed column order.
Rows are computed independently (optionally on a thread pool) and merged in
input order, so the output does not depend on the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence

from .errors import ActuatorError, DegenerateFrame, NoSolutionFound
from .physics import (
    DEFAULT_CONSTANTS,
    ControlFrame,
    EnhancementFactors,
    FieldConfig,
    HyperfineSpin,
    PhysicalConstants,
    control_frame,
    direct_drive_time,
    effective_angle,
    enhancement_factors_alpha_kappa,
)
from .su2 import TWO_PI, Unitary, goal as make_goal
from .synthesis import SynthesisResult, synthesize

ZETA_NAMES = ("z0", "zp1", "zm1")


def ordered_map(fn: Callable, items: Sequence, threads: int = 1) -> list:
    """``[fn(x) for x in items]``, on ``threads`` workers when > 1."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _status(exc: Exception) -> str:
    if isinstance(exc, DegenerateFrame):
        return "NoSolutionFound:degenerate-frame"
    if isinstance(exc, NoSolutionFound):
        return f"NoSolutionFound:best_eps={exc.best_infidelity:.3g}"
    return type(exc).__name__


# ---------------------------------------------------------------------------
# manifold choice

@dataclass(frozen=True)
class ManifoldChoice:
    manifold: int
    frame: ControlFrame
    result: Optional[SynthesisResult]


def frames_for(spin: HyperfineSpin, B0: float, consts: PhysicalConstants, policy="best") -> List[tuple]:
    """``[(manifold, frame), ...]`` allowed by ``policy`` (``"best"``, ``+1`` or ``-1``)."""
    if policy in ("best", None):
        manifolds = (1, -1)
    else:
        manifolds = (int(policy),)
    out = []
    for m in manifolds:
        try:
            out.append((m, control_frame(spin, FieldConfig(B0, m), consts)))
        except DegenerateFrame:
            if len(manifolds) == 1:
                raise
    if not out:
        raise DegenerateFrame(f"spin {spin.label!r}: both manifold frames are degenerate")
    return out


def synthesize_for_spin(
    g: Unitary, spin: HyperfineSpin, B0: float, consts=DEFAULT_CONSTANTS, policy="best", **opts
) -> ManifoldChoice:
    """Synthesize in every allowed manifold frame and keep the fastest (ties: +1 first)."""
    best, err = None, None
    for m, frame in frames_for(spin, B0, consts, policy):
        try:
            res = synthesize(g, frame, **opts)
        except ActuatorError as exc:
            err = exc
            continue
        if best is None or round(res.time, 12) < round(best.result.time, 12):
            best = ManifoldChoice(m, frame, res)
    if best is None:
        raise err
    return best


# ---------------------------------------------------------------------------
# direct driving columns

def direct_columns(theta: float, factors: EnhancementFactors, rabi_khz: Iterable[float]) -> dict:
    """Direct-drive times for each zeta, bare Rabi frequency and phase-inversion setting."""
    cols = {}
    for name, z in zip(ZETA_NAMES, factors.as_tuple()):
        for r in rabi_khz:
            for inv in (False, True):
                key = f"T_direct_us@{name}_{_num(r)}kHz_{'inv' if inv else 'noinv'}"
                cols[key] = direct_drive_time(theta, r, z, inv) if z != 0 else math.inf
    return cols


def _num(x: float) -> str:
    return f"{x:g}"


# ---------------------------------------------------------------------------
# sweeps

def sweep_theta(
    goal_kind: str,
    thetas: Sequence[float],
    frame: ControlFrame,
    factors: EnhancementFactors,
    rabi_khz: Sequence[float],
    threads: int = 1,
    **opts,
) -> List[dict]:
    """Actuator time and sequence length for ``goal_kind(theta)`` over ``thetas``.

    A failed synthesis leaves the actuator columns empty and records the
    reason in ``status``; direct-drive columns are always filled.
    """
    if len(thetas) == 0:
        raise ValueError("theta grid is empty")

    def row(theta):
        out = {"theta_rad": theta, "theta_deg": math.degrees(theta)}
        try:
            res = synthesize(make_goal(goal_kind, theta), frame, **opts)
            out.update(T_actuator_us=res.time, n=res.n, eps=res.infidelity, at_cap=int(res.at_cap), status="ok")
        except ActuatorError as exc:
            out.update(T_actuator_us=None, n=None, eps=None, at_cap=None, status=_status(exc))
        out.update(direct_columns(theta, factors, rabi_khz))
        # keep status last
        out["status"] = out.pop("status")
        return out

    return ordered_map(row, thetas, threads)


def synthetic_frame(alpha: float, kappa: float, B0: float, consts=DEFAULT_CONSTANTS) -> ControlFrame:
    """Frame with ``omega0 = gamma_C B0`` and the given ``(alpha, kappa)``."""
    return ControlFrame.from_alpha_kappa(alpha, kappa, consts.gamma_n_mhz * B0)


def sweep_grid(
    alphas: Sequence[float],
    kappas: Sequence[float],
    g: Unitary,
    B0: float,
    rabi_khz: Sequence[float],
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
    threads: int = 1,
    **opts,
) -> List[dict]:
    """Actuator time of ``g`` over a synthetic ``(alpha, kappa)`` grid, alpha-major.

    ``T_norm`` is the time in units of the ``v1`` period over ``2 pi``
    (``T * 2 pi * omega1``) and is independent of the overall frequency scale.
    Direct times use the largest ``|zeta|`` of the frame.
    """
    _, theta = g.axis_angle()
    points = [(a, k) for a in alphas for k in kappas]

    def row(p):
        a, k = p
        out = {"alpha_rad": a, "alpha_deg": math.degrees(a), "kappa": k}
        status = []
        try:
            frame = synthetic_frame(a, k, B0, consts)
            res = synthesize(g, frame, **opts)
            out.update(T_norm=res.time * TWO_PI * frame.omega1, T_actuator_us=res.time, n=res.n)
        except (ActuatorError, ValueError) as exc:
            out.update(T_norm=None, T_actuator_us=None, n=None)
            status.append(_status(exc))
        try:
            zb = enhancement_factors_alpha_kappa(a, k, B0, consts).best
            out["zeta_best"] = zb
            for r in rabi_khz:
                out[f"T_direct_us@best_{_num(r)}kHz_inv"] = direct_drive_time(theta, r, zb, True)
        except ActuatorError as exc:
            out["zeta_best"] = None
            for r in rabi_khz:
                out[f"T_direct_us@best_{_num(r)}kHz_inv"] = None
            status.append(_status(exc))
        out["status"] = "; ".join(status) or "ok"
        return out

    return ordered_map(row, points, threads)


@dataclass(frozen=True)
class Crossover:
    rabi_khz: float
    T_actuator_us: float
    zeta_best: float
    theta_eff: float


def crossover_from_time(theta: float, T_actuator_us: float, zeta_best: float, phase_inversion: bool = True) -> float:
    """Bare Rabi frequency (kHz) above which direct driving beats an actuator time."""
    if not T_actuator_us > 0:
        raise ValueError("actuator time must be positive")
    if zeta_best == 0:
        raise ValueError("zeta = 0: direct driving never wins")
    theta_eff = effective_angle(theta, phase_inversion)
    return theta_eff / (TWO_PI * abs(zeta_best) * T_actuator_us) * 1e3


def crossover_rabi(
    g: Unitary,
    frame: ControlFrame,
    factors: EnhancementFactors,
    phase_inversion: bool = True,
    result: Optional[SynthesisResult] = None,
    **opts,
) -> Crossover:
    """Minimal bare Rabi frequency for which direct driving of ``g`` is faster than the actuator."""
    if result is None:
        result = synthesize(g, frame, **opts)
    _, theta = g.axis_angle()
    zb = factors.best
    return Crossover(
        crossover_from_time(theta, result.time, zb, phase_inversion),
        result.time,
        zb,
        effective_angle(theta, phase_inversion),
    )
