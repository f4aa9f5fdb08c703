"""How much an equal-period pulse train gives up against the optimal sequence."""
import math

from nvactuator import ControlFrame, equal_time_best, goal, synthesize

target = goal("Y", math.pi)
for deg in (11.6, 30.0, 60.0):
    frame = ControlFrame.from_alpha_kappa(math.radians(deg), 0.2, 0.5)
    opt = synthesize(target, frame)
    eq = equal_time_best(target, frame)
    print(f"alpha={deg:5.1f} deg  optimal {opt.time:7.3f} us (n={opt.n:2d})   "
          f"equal-time {eq.total_time:7.3f} us (n={eq.n:3d}, infidelity {eq.infidelity:.1e})")
