"""Sweep Y(theta) over a full turn and chart it against direct driving.

Writes ``angle_sweep.svg`` next to the current directory.
"""
import math

from nvactuator import FieldConfig, builtin_table, control_frame, enhancement_factors
from nvactuator.svg import plot_rows
from nvactuator.sweeps import sweep_theta

spin = builtin_table().get("paper-2.92A")
field = FieldConfig(500.0, 1)
frame = control_frame(spin, field)
zeta = enhancement_factors(spin, field)

thetas = [2 * math.pi * k / 48 for k in range(1, 48)]
rows = sweep_theta("Y", thetas, frame, zeta, [20.0, 50.0], threads=4)

worst = max(rows, key=lambda r: r["T_actuator_us"])
print(f"slowest angle {worst['theta_deg']:.1f} deg takes {worst['T_actuator_us']:.3f} us with n={worst['n']}")
lost = [r["theta_deg"] for r in rows if r["T_actuator_us"] >= r["T_direct_us@zm1_20kHz_inv"]]
print("angles where 20 kHz direct driving is faster:", [round(x, 1) for x in lost] or "none")

svg = plot_rows(rows, "theta_deg", ["T_actuator_us", "T_direct_us@zm1_20kHz_inv", "T_direct_us@zm1_50kHz_inv"],
                xlabel="rotation angle (deg)", ylabel="time (us)", title="Y(theta) on the 2.92 A carbon")
with open("angle_sweep.svg", "w") as fh:
    fh.write(svg)
print("wrote angle_sweep.svg")
