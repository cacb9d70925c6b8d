#!/usr/bin/env python3
"""Imagined targets: flying a square and retracing an L-shaped path.

An imagined target sits at a fixed pixel offset from the image center, so
its error never shrinks and the vehicle cruises at constant velocity.
Four such targets trace a square.  Reversing a motion log reflects every
logged target about the image center, which retraces the path backwards.
"""

import math

from visnav import (Duration, ImaginedSegment, ImaginedTrajectory, NoiseModel,
                    PixelPoint, Pose, SimConfig, fly_trajectory, make_world, reverse,
                    square_trajectory)

cfg = SimConfig(noise=NoiseModel.zero())

print("square search pattern (2 s sides):")
square = square_trajectory(cfg.frame, side_duration=2.0)
for i, seg in enumerate(square.segments):
    print(f"  side {i}: imagined target ({seg.target.x:.0f},{seg.target.y:.0f}) "
          f"for {seg.terminate_on.seconds} s")

world = make_world(0, drone=Pose(0, 0, cfg.altitude, 0.0))
corners = [(0.0, 0.0)]
for seg in square.segments:
    fly_trajectory(ImaginedTrajectory((seg,)), world, cfg)
    corners.append((world.drone.x, world.drone.y))
print("corners visited:", " -> ".join(f"({x:+.2f},{y:+.2f})" for x, y in corners))
print(f"closure error: {math.hypot(*corners[-1]):.2e} m\n")

print("L-shaped outbound flight, then log reversal:")
l_path = ImaginedTrajectory((
    ImaginedSegment(PixelPoint(320, 80), Duration(4.0)),    # ahead 4 s
    ImaginedSegment(PixelPoint(420, 180), Duration(3.0)),   # right 3 s
))
world = make_world(0, drone=Pose(0, 0, cfg.altitude, 0.0))
log = fly_trajectory(l_path, world, cfg)
print(f"  after outbound: ({world.drone.x:+.3f},{world.drone.y:+.3f}) m")
for e in log.entries:
    print(f"    logged t={e.timestamp:4.1f}s cmd=({e.command.vel_forward:+.2f},"
          f"{e.command.vel_right:+.2f}) for {e.duration}s toward "
          f"({e.target.x:.0f},{e.target.y:.0f})")

homing = reverse(log, cfg.frame)
print("  reversal (order flipped, targets reflected about center):")
for seg in homing.segments:
    print(f"    target ({seg.target.x:.0f},{seg.target.y:.0f}) for {seg.terminate_on.seconds}s")
fly_trajectory(homing, world, cfg)
print(f"  after homing: ({world.drone.x:+.2e},{world.drone.y:+.2e}) m from start")
