"""Walk through one gate: a pi rotation about y on the 2.92 A carbon.

Run with ``python3 demos/y_pi_on_the_near_spin.py``.
"""
import math

import numpy as np

from nvactuator import (
    FieldConfig,
    builtin_table,
    control_frame,
    direct_drive_time,
    enhancement_factors,
    goal,
    max_switches,
    synthesize,
)

spin = builtin_table().get("paper-2.92A")
field = FieldConfig(B0=500.0, manifold=1)

# The electron state fixes two precession axes for the nuclear spin.
frame = control_frame(spin, field)
print(f"omega0={frame.omega0:.4f} MHz  omega1={frame.omega1:.4f} MHz")
print(f"angle between axes {math.degrees(frame.alpha):.2f} deg, kappa={frame.kappa:.4f}")
print("longest sequence worth searching:", max_switches(frame).n_max)

target = goal("Y", math.pi)
res = synthesize(target, frame)
print(f"\n{res.n} segments, {res.time:.4f} us, infidelity {res.infidelity:.1e}")
for ax, rot in zip(res.sequence.axes, res.sequence.rotations(frame)):
    dur = rot.angle / (2 * np.pi * frame.frequency(ax))
    print(f"  precess about v{ax} by {rot.angle:7.4f} rad  ({dur:.4f} us)")

# Compare with driving the nucleus directly at a few Rabi frequencies.
zeta = enhancement_factors(spin, field)
print("\nenhancement factors:", np.round(zeta.as_tuple(), 3))
for rabi in (10.0, 20.0, 50.0):
    t = direct_drive_time(math.pi, rabi, zeta.best, phase_inversion=True)
    verdict = "actuator wins" if res.time < t else "direct wins"
    print(f"  direct drive at {rabi:4.0f} kHz: {t:.3f} us -> {verdict}")
