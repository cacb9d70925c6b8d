#!/usr/bin/env python3
"""The bottom camera: projection, synthetic frames, blob detection.

Puts a few colored discs on the ground, renders what the nadir camera
sees from 1 m up, runs the color-blob detector, and compares detected
centroids against the pinhole projection.  Also dumps the frame as a PPM
image you can open with any viewer.
"""

from pathlib import Path

from visnav import (Color, FrameSpec, Marker, Pose, detect, frame_filename,
                    ground_footprint, in_frame, project, render, write_ppm)

frame_spec = FrameSpec()
drone = Pose(x=0.0, y=0.0, z=1.0, yaw=0.0)
half_w, half_h = ground_footprint(frame_spec, drone.z)
print(f"camera: {frame_spec.width}x{frame_spec.height}, focal {frame_spec.focal_length} px")
print(f"ground footprint from {drone.z} m: +/-{half_w} m sideways, +/-{half_h} m ahead\n")

markers = [
    Marker(position=(0.30, 0.10), radius=0.06, color=Color.PINK),
    Marker(position=(-0.20, -0.40), radius=0.10, color=Color.BLUE),
    Marker(position=(0.40, -0.80), radius=0.05, color=Color.YELLOW),
    Marker(position=(2.00, 0.00), radius=0.06, color=Color.RED),   # beyond the footprint
]

print("projections (world -> pixel):")
for m in markers:
    px = project(drone, m.position, frame_spec)
    visible = "visible" if in_frame(px, frame_spec) else "out of frame"
    print(f"  {m.color.name.lower():>6} at {m.position} -> ({px.x:7.1f},{px.y:7.1f})  {visible}")

frame = render(drone, markers, frame_spec)
print("\ndetections (centroid of labeled pixels):")
for color in (Color.PINK, Color.BLUE, Color.YELLOW, Color.RED):
    det = detect(frame, color)
    if det is None:
        print(f"  {color.name.lower():>6}: not seen")
        continue
    expected = project(drone, next(m.position for m in markers if m.color is color), frame_spec)
    dx = det.center.x - expected.x
    dy = det.center.y - expected.y
    print(f"  {color.name.lower():>6}: {det.pixel_count:5d} px at "
          f"({det.center.x:7.2f},{det.center.y:7.2f})  off by ({dx:+.3f},{dy:+.3f}) px")

out = Path.cwd() / frame_filename(0)
write_ppm(frame, out)
print(f"\nwrote {out}")
