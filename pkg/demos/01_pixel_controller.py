#!/usr/bin/env python3
"""Feel for the proportional pixel controller.

The vehicle's own position is always the image center; steering means
handing the controller a pixel error toward some target.  This script
walks the error space: the hover deadband, linear scaling, the axis
mapping (up in the image = forward), and saturation far out.
"""

import math

from visnav import ControllerGains, PixelError, PixelPoint, compute_command, pixel_error

gains = ControllerGains()
print(f"gains: k={gains.k} (m/s per px), hover_threshold={gains.hover_threshold} px, "
      f"max_speed={gains.max_speed} m/s\n")

center = PixelPoint(320, 180)
targets = {
    "forward imagined marker": PixelPoint(320, 80),
    "backward imagined marker": PixelPoint(320, 280),
    "right imagined marker": PixelPoint(420, 180),
    "blob slightly off-center": PixelPoint(350, 200),
    "blob dead ahead and close": PixelPoint(320, 150),
    "far out-of-frame target": PixelPoint(320, -5000),
}

print(f"{'target':>28} {'error':>14} {'|e| px':>8} {'vel_fwd':>9} {'vel_right':>10} {'mode':>8}")
for name, target in targets.items():
    err = pixel_error(target, center)
    cmd = compute_command(err, gains)
    mode = "hover" if cmd.hovering else ("sat" if cmd.speed() >= gains.max_speed else "servo")
    print(f"{name:>28} ({err.error_x:+6.0f},{err.error_y:+6.0f}) {err.norm():8.1f} "
          f"{cmd.vel_forward:+9.4f} {cmd.vel_right:+10.4f} {mode:>8}")

print("\nscaling along one ray (error straight ahead):")
for off in (10, 40, 50, 51, 100, 200, 400):
    err = PixelError(0, -off)
    cmd = compute_command(err, gains)
    bar = "#" * round(cmd.vel_forward * 400)
    state = "hover" if cmd.hovering else f"{cmd.vel_forward:+.4f} m/s"
    print(f"  |e| = {off:4d} px -> {state:>12} {bar}")

print("\nthe deadband is Euclidean: (30,30) has norm "
      f"{math.hypot(30, 30):.1f} <= 50, so it hovers:",
      compute_command(PixelError(30, 30), gains).hovering)
