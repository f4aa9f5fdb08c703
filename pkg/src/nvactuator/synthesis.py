"""Time-optimal synthesis of SU(2) goals from alternating rotations about two axes.

A switching sequence applies rotations about ``v0`` and ``v1`` in turn. Time
optimal sequences of length ``n >= 4`` have equal internal angles on each
axis, with the ``v1`` angle fixed by the ``v0`` angle (:func:`phi1_from_phi0`),
so a candidate is described by ``(n, start_axis, phi_i, phi0, phi_f)``.

For fixed ``n``, start axis and internal angle the goal fixes the two outer
angles up to a single solvability condition: writing the goal as
``R_u(phi_f) M R_w(phi_i)`` requires ``M^dag R_u(-phi_f) G`` to be a rotation
about ``w``. That quaternion is linear in ``(cos(phi_f/2), sin(phi_f/2))``;
its two components perpendicular to ``w`` vanish together only where a 2x2
determinant does. The engine therefore scans the internal angle over its
admissible interval, brackets every zero of the determinant, refines them,
and reads the outer angles off the null vector. Every family is searched
exhaustively up to the grid resolution, and the fastest exact hit wins.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional

import numpy as np

from .errors import DegenerateFrame, NoSolutionFound
from .physics import ControlFrame
from .su2 import (
    TWO_PI,
    Rotation,
    Unitary,
    compose,
    infidelity,
    qconj,
    qdot,
    qmul,
    qpow,
    qrot,
)

#: below this inter-axis angle (or above pi minus it) a frame is treated as degenerate
ALPHA_FLOOR = 1e-3
#: tolerance on kappa - cos(alpha) for the boundary regime
DEGENERATE_ATOL = 1e-12
#: outer angles closer than this to 0 (mod 2 pi) are dropped from a sequence
ZERO_ANGLE = 1e-9
#: default length cap when infinite sequences are admissible
DEFAULT_N_CAP = 64


class Regime(enum.Enum):
    FINITE_ONLY = "finite-only"  # kappa < cos(alpha)
    MIXED = "mixed"  # kappa > cos(alpha)
    DEGENERATE = "degenerate"  # kappa == cos(alpha)


class LengthBound(NamedTuple):
    n_max: int
    infinite_allowed: bool


def regime(frame: ControlFrame) -> Regime:
    d = frame.kappa - math.cos(frame.alpha)
    if abs(d) <= DEGENERATE_ATOL:
        return Regime.DEGENERATE
    return Regime.FINITE_ONLY if d < 0 else Regime.MIXED


def max_switches(frame: ControlFrame) -> LengthBound:
    """Upper bound on the length of a finite time-optimal sequence."""
    a = frame.alpha
    if not a > 0:
        raise ValueError("alpha must be positive")
    reg = regime(frame)
    if reg is Regime.FINITE_ONLY:
        return LengthBound(math.floor(TWO_PI / a) + 1, False)
    if reg is Regime.MIXED:
        if a > TWO_PI / 3:
            return LengthBound(3, True)
        return LengthBound(math.floor(math.pi / a) + 3, True)
    # boundary: take the looser of the two neighbouring bounds
    return LengthBound(max(math.floor(TWO_PI / a) + 1, math.floor(math.pi / a) + 3), False)


def _phi1(phi0, kappa: float, cos_a: float):
    # tan(phi1/2) = tan(phi0/2) (kappa - cos a)/(1 - kappa cos a), phi1/2 taken in [0, pi)
    phi0 = np.asarray(phi0, dtype=float)
    half = np.arctan2((kappa - cos_a) * np.sin(0.5 * phi0), (1.0 - kappa * cos_a) * np.cos(0.5 * phi0))
    return 2.0 * np.mod(half, math.pi)


def phi1_from_phi0(phi0: float, frame: ControlFrame) -> float:
    """Internal ``v1`` angle paired with the internal ``v0`` angle ``phi0``.

    The half-angle branch is the unique one in ``[0, pi)``, which for
    ``kappa < cos(alpha)`` puts ``phi1`` in ``[pi, 2pi)`` whenever
    ``phi0 <= pi``, and is continuous in ``phi0`` on each regime's interval.
    """
    if not (0.0 < phi0 < TWO_PI):
        raise ValueError("phi0 must lie in (0, 2pi)")
    return float(_phi1(phi0, frame.kappa, math.cos(frame.alpha)))


def phi0_interval(n: int, reg: Regime, chattering: bool = False) -> tuple:
    """Admissible internal ``v0`` angle interval ``(lo, hi)`` for length ``n >= 4``."""
    if reg is Regime.FINITE_ONLY:
        return (math.pi / 3, math.pi) if n >= 6 else (0.0, math.pi)
    if reg is Regime.MIXED:
        if chattering:
            return (0.0, math.pi)
        # optima with phi0 above (n-1)pi/(n-2) do occur when kappa cos(alpha) > 1,
        # so only the lower end pi is enforced
        return (math.pi, TWO_PI)
    return (0.0, TWO_PI)


# ---------------------------------------------------------------------------
# sequences

def sequence_axes(n: int, start_axis: int) -> List[int]:
    return [(start_axis + k) % 2 for k in range(n)]


def family_angles(n, start_axis, phi_i, phi0, phi_f, frame: ControlFrame) -> List[float]:
    """Angles of the alternating sequence, first-applied first.

    For ``n >= 4`` the internal rotations alternate ``phi0`` (on ``v0``) and
    ``phi1(phi0)`` (on ``v1``). For ``n == 3`` ``phi0`` is the free middle
    angle whatever its axis; for ``n <= 2`` it is ignored.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return []
    if n == 1:
        return [phi_i]
    if n == 2:
        return [phi_i, phi_f]
    if n == 3:
        return [phi_i, phi0, phi_f]
    phi1 = phi1_from_phi0(phi0, frame)
    inner = [phi0 if ax == 0 else phi1 for ax in sequence_axes(n, start_axis)[1:-1]]
    return [phi_i] + inner + [phi_f]


def family_unitary(n, start_axis, phi_i, phi0, phi_f, frame: ControlFrame) -> Unitary:
    angles = family_angles(n, start_axis, phi_i, phi0, phi_f, frame)
    axes = sequence_axes(n, start_axis)
    return compose((frame.axis(k), a) for k, a in zip(axes, angles))


def sequence_time(angles, axes, frame: ControlFrame, overhead_ns: float = 0.0) -> float:
    t = sum(a / (TWO_PI * frame.frequency(k)) for a, k in zip(angles, axes))
    if len(angles) > 1:
        t += (len(angles) - 1) * overhead_ns * 1e-3
    return t


def family_time(n, start_axis, phi_i, phi0, phi_f, frame: ControlFrame, overhead_ns: float = 0.0) -> float:
    """Duration in microseconds; the overhead is charged once per switch."""
    angles = family_angles(n, start_axis, phi_i, phi0, phi_f, frame)
    return sequence_time(angles, sequence_axes(n, start_axis), frame, overhead_ns)


@dataclass(frozen=True)
class SwitchingSequence:
    """Alternating program ``angles`` starting on axis ``start_axis`` (0 or 1)."""

    start_axis: int
    angles: tuple
    total_time: float
    overhead_ns: float = 0.0

    @property
    def n(self) -> int:
        return len(self.angles)

    @property
    def axes(self) -> List[int]:
        return sequence_axes(self.n, self.start_axis)

    def rotations(self, frame: ControlFrame) -> List[Rotation]:
        return [Rotation(frame.axis(k), a) for k, a in zip(self.axes, self.angles)]

    def unitary(self, frame: ControlFrame) -> Unitary:
        return compose(self.rotations(frame))

    def switch_times(self, frame: ControlFrame) -> List[float]:
        """Cumulative times (us) at which the actuator is flipped."""
        out, t = [], 0.0
        for k, a in zip(self.axes[:-1], self.angles[:-1]):
            t += a / (TWO_PI * frame.frequency(k)) + self.overhead_ns * 1e-3
            out.append(t)
        return out

    @classmethod
    def canonical(cls, start_axis, angles, frame, overhead_ns=0.0) -> "SwitchingSequence":
        """Wrap angles into ``[0, 2pi)`` and drop zero outer angles."""
        angles = [a % TWO_PI for a in angles]
        angles = [0.0 if (a < ZERO_ANGLE or TWO_PI - a < ZERO_ANGLE) else a for a in angles]
        while angles and angles[0] == 0.0:
            angles.pop(0)
            start_axis = 1 - start_axis
        while angles and angles[-1] == 0.0:
            angles.pop()
        if not angles:
            start_axis = 0
        axes = sequence_axes(len(angles), start_axis)
        return cls(start_axis, tuple(angles), sequence_time(angles, axes, frame, overhead_ns), overhead_ns)


@dataclass(frozen=True)
class SynthesisResult:
    sequence: SwitchingSequence
    fidelity: float
    infidelity: float
    n: int
    at_cap: bool
    regime: Regime
    bound: LengthBound
    branch: str = "finite"  # "finite" or "chattering" (finite stand-in for an infinite sequence)
    starts: int = 0
    converged: int = 0

    @property
    def time(self) -> float:
        return self.sequence.total_time


@dataclass
class _Candidate:
    time: float
    n: int
    phi_i: float
    start_axis: int
    angles: list
    branch: str
    eps: Optional[float] = None

    def key(self):
        return (round(self.time, 12), self.n, round(self.phi_i, 12))


def _fast_quat(angles, axes, frame: ControlFrame) -> tuple:
    # scalar Hamilton products; avoids building Unitary objects in the inner loop
    vecs = frame.axis_vectors
    w, x, y, z = 1.0, 0.0, 0.0, 0.0
    for a, k in zip(angles, axes):
        h = 0.5 * a
        c, s = math.cos(h), math.sin(h)
        bx, by, bz = s * vecs[k][0], s * vecs[k][1], s * vecs[k][2]
        w, x, y, z = (
            c * w - bx * x - by * y - bz * z,
            c * x + bx * w + by * z - bz * y,
            c * y - bx * z + by * w + bz * x,
            c * z + bx * y - by * x + bz * w,
        )
    return w, x, y, z


# ---------------------------------------------------------------------------
# vectorised family machinery

class _Family:
    """Vectorised middle block and outer-angle solve for fixed ``(n, start_axis)``."""

    def __init__(self, frame: ControlFrame, n: int, start_axis: int, goal_q: np.ndarray, reg: Regime):
        self.frame = frame
        self.n = n
        self.s = start_axis
        self.g = goal_q
        self.reg = reg
        ax = frame.axis_vectors
        self.ax = ax
        self.kappa = frame.kappa
        self.cos_a = math.cos(frame.alpha)
        first = start_axis
        last = start_axis if n % 2 == 1 else 1 - start_axis
        self.w = ax[first]
        self.u = ax[last]
        # two unit vectors spanning the plane perpendicular to w
        e2 = np.array([0.0, 1.0, 0.0])
        self.e1 = np.cross(e2, self.w)
        self.e2 = e2
        self.minus_u = np.concatenate([[0.0], -self.u])

    def internal(self, t):
        """Internal angles ``(phi_on_v0, phi_on_v1)`` for scan variable ``t``."""
        if self.n == 3:
            return t, t
        if self.reg is Regime.DEGENERATE:
            return np.full_like(t, math.pi), t
        return t, _phi1(t, self.kappa, self.cos_a)

    def middle(self, t):
        t = np.asarray(t, dtype=float)
        n, s = self.n, self.s
        if n <= 2:
            return np.broadcast_to(np.array([1.0, 0.0, 0.0, 0.0]), t.shape + (4,))
        if n == 3:
            return qrot(self.ax[1 - s], t)
        p0, p1 = self.internal(t)
        ang = (p0, p1)
        r_s = qrot(self.ax[s], ang[s])
        r_o = qrot(self.ax[1 - s], ang[1 - s])
        pair = qmul(r_s, r_o)
        m = n - 2
        if m % 2 == 0:
            return qpow(pair, m // 2)
        return qmul(r_o, qpow(pair, (m - 1) // 2))

    def _pq(self, t):
        mc = qconj(self.middle(t))
        p = qmul(mc, self.g)
        q = qmul(qmul(mc, self.minus_u), self.g)
        return p, q

    def det(self, t):
        p, q = self._pq(t)
        a1 = p[..., 1:] @ self.e1
        b1 = q[..., 1:] @ self.e1
        a2 = p[..., 1:] @ self.e2
        b2 = q[..., 1:] @ self.e2
        return a1 * b2 - a2 * b1

    def solve(self, t):
        """Outer angles ``(phi_i, phi_f)`` at scan points ``t`` (exact where ``det == 0``)."""
        p, q = self._pq(t)
        mat = np.stack(
            [
                np.stack([p[..., 1:] @ self.e1, q[..., 1:] @ self.e1], axis=-1),
                np.stack([p[..., 1:] @ self.e2, q[..., 1:] @ self.e2], axis=-1),
            ],
            axis=-2,
        )
        _, _, vh = np.linalg.svd(mat)
        cs = vh[..., -1, :]
        c, s = cs[..., 0], cs[..., 1]
        phi_f = np.mod(2.0 * np.arctan2(s, c), TWO_PI)
        r = c[..., None] * p + s[..., None] * q
        phi_i = np.mod(2.0 * np.arctan2(r[..., 1:] @ self.w, r[..., 0]), TWO_PI)
        return phi_i, phi_f

    def angles(self, t, phi_i, phi_f) -> list:
        n = self.n
        if n == 2:
            return [phi_i, phi_f]
        if n == 3:
            return [phi_i, t, phi_f]
        p0, p1 = self.internal(np.asarray(t))
        p0, p1 = float(p0), float(p1)
        inner = [p0 if k == 0 else p1 for k in sequence_axes(n, self.s)[1:-1]]
        return [phi_i] + inner + [phi_f]


def _refine_roots(fam: _Family, a, b, fa, iters: int = 40):
    """Vectorised Illinois regula falsi on all sign-change brackets at once."""
    a = a.copy()
    b = b.copy()
    fa = fa.copy()
    fb = fam.det(b)
    side = np.zeros(a.shape, dtype=int)
    for _ in range(iters):
        denom = fb - fa
        c = np.where(denom != 0.0, b - fb * (b - a) / np.where(denom != 0.0, denom, 1.0), 0.5 * (a + b))
        c = np.clip(c, np.minimum(a, b), np.maximum(a, b))
        fc = fam.det(c)
        same_b = np.sign(fc) == np.sign(fb)
        # c replaces the endpoint on its own side; the retained endpoint is halved on repeats
        a_new = np.where(same_b, a, b)
        fa_new = np.where(same_b, fa, fb)
        fa_new = np.where(same_b & (side == -1), 0.5 * fa_new, fa_new)
        side = np.where(same_b, -1, 1)
        a, fa = a_new, fa_new
        b, fb = c, fc
        if np.all((np.abs(fb) < 1e-15) | (np.abs(b - a) < 1e-14)):
            break
    return b


def _refine_minima(fam: _Family, a, b, iters: int = 45):
    """Vectorised golden-section minimisation of ``det**2`` on ``[a, b]``."""
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    a = a.copy()
    b = b.copy()
    for _ in range(iters):
        c = b - gr * (b - a)
        d = a + gr * (b - a)
        left = fam.det(c) ** 2 < fam.det(d) ** 2
        b = np.where(left, d, b)
        a = np.where(left, a, c)
    return 0.5 * (a + b)


def _scan_points(lo: float, hi: float, count: int, rng: np.random.Generator) -> np.ndarray:
    inset = 1e-9 * (hi - lo)
    grid = np.linspace(lo + inset, hi - inset, count)
    if count > 2:
        h = grid[1] - grid[0]
        grid[1:-1] += (rng.random() - 0.5) * 0.5 * h
    return grid


def _phi0_from_phi1(phi1, kappa: float, cos_a: float):
    # inverse of _phi1 on the same half-angle branch
    half = np.arctan2((1.0 - kappa * cos_a) * np.sin(0.5 * phi1), (kappa - cos_a) * np.cos(0.5 * phi1))
    return 2.0 * np.mod(half, math.pi)


def _family_candidates(fam: _Family, lo, hi, count, rng, branch):
    """All points of the family (scan interval ``[lo, hi]``) hitting the goal."""
    t = _scan_points(lo, hi, count, rng)
    if fam.n >= 4 and fam.reg is not Regime.DEGENERATE:
        # near kappa = cos(alpha) phi1 sweeps its whole range in a sliver of
        # phi0; sampling uniformly in phi1 as well keeps that sliver resolved
        extra = _phi0_from_phi1(_scan_points(0.0, TWO_PI, count, rng), fam.kappa, fam.cos_a)
        extra = extra[(extra > t[0]) & (extra < t[-1])]
        t = np.unique(np.concatenate([t, extra]))
    f = fam.det(t)
    sign = np.sign(f)
    idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    pts = [t[np.nonzero(f == 0.0)[0]]]
    if idx.size:
        pts.append(_refine_roots(fam, t[idx], t[idx + 1], f[idx]))
    # touching zeros: interior local minima of |f| without a sign change nearby
    af = np.abs(f)
    if af.size >= 3:
        k = np.nonzero((af[1:-1] < af[:-2]) & (af[1:-1] < af[2:]))[0] + 1
        k = k[(sign[k - 1] == sign[k]) & (sign[k] == sign[k + 1])]
        scale = af.max() if af.size else 1.0
        k = k[af[k] < 1e-2 * max(scale, 1e-300)]
        if k.size:
            pts.append(_refine_minima(fam, t[k - 1], t[k + 1]))
    # interval ends and phi0 = pi (all-pi sequences) are checked directly;
    # a zero sitting exactly there is invisible to the scan
    ends = [x for x in (lo, hi, math.pi) if lo <= x <= hi and 0.0 < x < TWO_PI]
    if fam.reg is Regime.MIXED and branch == "finite" and fam.n >= 4:
        ends = [x for x in ends if x > math.pi]  # open at pi
    pts.append(np.array(ends, dtype=float))
    roots = np.concatenate(pts)
    if roots.size == 0:
        return []
    phi_i, phi_f = fam.solve(roots)
    out = []
    for r, pi_, pf in zip(roots, phi_i, phi_f):
        out.append((float(r), float(pi_), float(pf)))
    return out


def _candidate(frame, start_axis, angles, overhead_ns, branch) -> _Candidate:
    seq = SwitchingSequence.canonical(start_axis, angles, frame, overhead_ns)
    phi_i = seq.angles[0] if seq.angles else 0.0
    return _Candidate(seq.total_time, seq.n, phi_i, seq.start_axis, list(seq.angles), branch)


def _score(c: _Candidate, frame: ControlFrame, g: np.ndarray) -> float:
    if c.eps is None:
        q = _fast_quat(c.angles, sequence_axes(c.n, c.start_axis), frame)
        c.eps = max(0.0, 1.0 - abs(float(np.dot(q, g))))
    return c.eps


def _single_axis_candidates(frame, goal: Unitary, overhead_ns):
    out = [_candidate(frame, 0, [], overhead_ns, "finite")]
    g = np.array(goal.quat)
    for s in (0, 1):
        a = frame.axis_vectors[s]
        phi = (2.0 * math.atan2(float(g[1:] @ a), float(g[0]))) % TWO_PI
        out.append(_candidate(frame, s, [phi], overhead_ns, "finite"))
    return out


def synthesize(
    goal: Unitary,
    frame: ControlFrame,
    eps_tol: float = 1e-10,
    n_cap: Optional[int] = None,
    starts: int = 512,
    seed: int = 0,
    overhead_ns: float = 0.0,
) -> SynthesisResult:
    """Minimum-time alternating sequence reaching ``goal`` within ``eps_tol`` infidelity.

    Parameters
    ----------
    goal : Unitary
        Target gate.
    frame : ControlFrame
        Rotation axes and frequencies.
    eps_tol : float
        Success threshold on ``1 - |tr(U G^dag)|/2``.
    n_cap : int, optional
        Largest sequence length searched. Defaults to the regime's length
        bound, or 64 when infinite sequences are admissible; beyond the finite
        bound the engine searches the small-angle (chattering) branch which
        approximates infinite sequences.
    starts : int
        Minimum number of scan points per family.
    seed : int
        Seeds the scan-grid jitter; results are a pure function of the inputs.
    overhead_ns : float
        Time charged per actuator switch.

    Raises
    ------
    DegenerateFrame
        ``alpha`` within ``ALPHA_FLOOR`` of 0 or pi and the goal is not a
        rotation about ``z``.
    NoSolutionFound
        No admissible sequence reached ``eps_tol``.
    """
    if not eps_tol > 0:
        raise ValueError("eps_tol must be positive")
    rng = np.random.default_rng(seed)
    reg = regime(frame)
    degenerate = frame.alpha < ALPHA_FLOOR or math.pi - frame.alpha < ALPHA_FLOOR
    cands = _single_axis_candidates(frame, goal, overhead_ns)
    g = np.array(goal.quat)
    if degenerate:
        cands.sort(key=_Candidate.key)
        best = next((c for c in cands if _score(c, frame, g) <= eps_tol), None)
        if best is None:
            raise DegenerateFrame(
                f"alpha = {frame.alpha:.3g} rad is below the {ALPHA_FLOOR:g} rad floor; "
                "only rotations about z are reachable"
            )
        return _result(best, frame, reg, LengthBound(1, False), 1, 0, overhead_ns, at_cap=False)

    bound = max_switches(frame)
    if n_cap is None:
        n_cap = DEFAULT_N_CAP if bound.infinite_allowed else bound.n_max
    if n_cap < 0:
        raise ValueError("n_cap must be >= 0")
    cands = [c for c in cands if c.n <= n_cap]

    tried = 0
    n_finite = min(bound.n_max, n_cap)
    plans = []
    for n in range(2, n_finite + 1):
        if n == 2:
            plans.append((n, None, "finite"))
        elif n == 3:
            plans.append((n, (0.0, TWO_PI), "finite"))
        else:
            plans.append((n, phi0_interval(n, reg), "finite"))
    if bound.infinite_allowed:
        for n in range(max(4, bound.n_max + 1), n_cap + 1):
            plans.append((n, phi0_interval(n, reg, chattering=True), "chattering"))

    for n, interval, branch in plans:
        for s in (0, 1):
            fam = _Family(frame, n, s, g, reg)
            if interval is None:
                pts = []
                t0 = np.zeros(1)
                pi_, pf = fam.solve(t0)
                pts.append((0.0, float(pi_[0]), float(pf[0])))
                tried += 1
            else:
                count = max(starts, 32 * n)
                tried += count
                pts = _family_candidates(fam, interval[0], interval[1], count, rng, branch)
            for t, pi_, pf in pts:
                angles = fam.angles(t, pi_, pf)
                cands.append(_candidate(frame, s, angles, overhead_ns, branch))

    # cheapest first: the first candidate within tolerance is the minimum-time one
    cands = sorted((c for c in cands if c.n <= n_cap), key=_Candidate.key)
    best = next((c for c in cands if _score(c, frame, g) <= eps_tol), None)
    if best is None:
        best_eps = min((c.eps for c in cands), default=float("nan"))
        raise NoSolutionFound(
            f"no sequence with n <= {n_cap} reached infidelity {eps_tol:g} (best {best_eps:.3g})",
            best_infidelity=best_eps,
        )
    converged = sum(1 for c in cands if c.eps is not None and c.eps <= eps_tol)
    at_cap = bound.infinite_allowed and (best.n == n_cap or best.branch == "chattering")
    return _result(best, frame, reg, bound, tried, converged, overhead_ns, at_cap)


def _result(best: _Candidate, frame, reg, bound, tried, converged, overhead_ns, at_cap) -> SynthesisResult:
    seq = SwitchingSequence(
        best.start_axis,
        tuple(best.angles),
        sequence_time(best.angles, sequence_axes(len(best.angles), best.start_axis), frame, overhead_ns),
        overhead_ns,
    )
    return SynthesisResult(
        sequence=seq,
        fidelity=1.0 - best.eps,
        infidelity=best.eps,
        n=seq.n,
        at_cap=at_cap,
        regime=reg,
        bound=bound,
        branch=best.branch,
        starts=tried,
        converged=converged,
    )
