"""Independent reference solvers used only by the test-suite.

Nothing here uses the structure of time-optimal sequences: the brute-force
oracle grids every angle of every alternating sequence up to a given length
and polishes the best grid points with a generic constrained optimiser.
"""

import itertools
import math

import numpy as np
from scipy.optimize import minimize

from nvactuator.su2 import qconj, qmul, qrot

TWO_PI = 2 * math.pi
GRID_SIZES = {1: 2048, 2: 181, 3: 40, 4: 16, 5: 9, 6: 7}


def _sequence_quats(angles, axes, frame):
    """Quaternions of sequences; ``angles`` has shape (..., n)."""
    vecs = frame.axis_vectors
    q = np.zeros(angles.shape[:-1] + (4,))
    q[..., 0] = 1.0
    for j, k in enumerate(axes):
        q = qmul(qrot(vecs[k], angles[..., j]), q)
    return q


def _scalar_quat(x, axes, vecs):
    w, a, b, c = 1.0, 0.0, 0.0, 0.0
    for phi, k in zip(x, axes):
        h = 0.5 * phi
        cw, sn = math.cos(h), math.sin(h)
        bx, by, bz = sn * vecs[k][0], sn * vecs[k][1], sn * vecs[k][2]
        w, a, b, c = (
            cw * w - bx * a - by * b - bz * c,
            cw * a + bx * w + by * c - bz * b,
            cw * b - bx * c + by * w + bz * a,
            cw * c + bx * b - by * a + bz * w,
        )
    return np.array([w, a, b, c])


def brute_force_min_time(goal, frame, n_max=6, eps_tol=1e-10, n_starts=16, seed=0):
    """Minimum time over all alternating sequences with ``n <= n_max``.

    Returns ``(time, angles, start_axis)`` or ``(inf, None, None)``.
    """
    g = np.array(goal.quat)
    gc = qconj(g)
    rates = TWO_PI * frame.frequencies
    rng = np.random.default_rng(seed)
    best = (math.inf, None, None)
    if abs(g[0]) >= 1 - eps_tol:
        return 0.0, [], 0
    for n in range(1, n_max + 1):
        for s in (0, 1):
            axes = [(s + j) % 2 for j in range(n)]
            inv_rate = np.array([1.0 / rates[k] for k in axes])
            m = GRID_SIZES[n]
            ticks = (np.arange(m) + 0.5) * TWO_PI / m
            grid = np.array(list(itertools.product(ticks, repeat=n))) if n > 1 else ticks[:, None]
            q = _sequence_quats(grid, axes, frame)
            eps = 1 - np.abs(q @ g)
            t = grid @ inv_rate
            order_eps = np.argsort(eps)[:n_starts]
            score = t + 4 * t.max() * np.sqrt(eps)
            order_mix = np.argsort(score)[:n_starts]
            picks = np.unique(np.concatenate([order_eps, order_mix]))
            starts = list(grid[picks]) + [rng.uniform(0, TWO_PI, n) for _ in range(n_starts // 2)]

            vecs = [tuple(v) for v in frame.axis_vectors]

            def residual(x):
                return qmul(gc, _scalar_quat(x, axes, vecs))[1:]

            for x0 in starts:
                res = minimize(
                    lambda x: float(x @ inv_rate),
                    x0,
                    jac=lambda x: inv_rate,
                    method="SLSQP",
                    bounds=[(0.0, TWO_PI)] * n,
                    constraints=[{"type": "eq", "fun": residual}],
                    options={"maxiter": 200, "ftol": 1e-14},
                )
                x = np.clip(res.x, 0.0, TWO_PI)
                e = 1 - abs(float(_scalar_quat(x, axes, vecs) @ g))
                if e <= eps_tol:
                    tt = float(x @ inv_rate)
                    if tt < best[0]:
                        best = (tt, list(x), s)
    return best
