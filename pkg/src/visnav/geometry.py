"""Camera and world geometry for a downward-looking quadrotor camera.

Conventions used throughout the library:

Image frame (raster convention):
  - Origin at the top-left corner, x to the right, y downward, units pixels.
  - The vehicle's own position in the image is always the frame center.

World frame:
  - x/y ground plane, z up (altitude), yaw counterclockwise about z.
  - At yaw 0 the body-forward axis is world +x and body-right is world -y.

Body-to-image mapping:
  - forward -> -y, right -> +x.  A target drawn above the image center
    therefore pulls the vehicle forward.

The camera is nadir-pointing and markers lie on the flat ground plane, so
projection is a similarity transform: pixel offset from the image center
equals focal_length * (body offset / altitude).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class GroundedError(ValueError):
    """Camera operation requested while the vehicle is on the ground (z <= 0)."""


def _require_finite(name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class PixelPoint:
    """A point in image coordinates.  May lie outside the frame bounds."""

    x: float
    y: float

    def __post_init__(self) -> None:
        _require_finite("PixelPoint coordinates", self.x, self.y)


@dataclass(frozen=True)
class FrameSpec:
    """Camera frame geometry: image size plus focal length, all in pixels.

    The default 640x360 frame with a 320 px focal length gives roughly a
    90 degree horizontal field of view: a 2 m wide ground footprint when
    flying at 1 m.
    """

    width: int = 640
    height: int = 360
    focal_length: float = 320.0

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("frame dimensions must be positive integers")
        if not self.focal_length > 0:
            raise ValueError("focal_length must be positive")

    @property
    def center(self) -> PixelPoint:
        return PixelPoint(self.width / 2.0, self.height / 2.0)


@dataclass(frozen=True)
class Pose:
    """World-frame pose: planar position, altitude and heading."""

    x: float
    y: float
    z: float
    yaw: float = 0.0

    def __post_init__(self) -> None:
        _require_finite("Pose fields", self.x, self.y, self.z, self.yaw)
        if self.z < 0:
            raise ValueError("altitude z must be >= 0")


def image_center(frame: FrameSpec) -> PixelPoint:
    """The vehicle's own position in image coordinates."""
    return frame.center


def body_offset(drone: Pose, world_point: tuple[float, float]) -> tuple[float, float]:
    """Ground-plane offset of ``world_point`` in the drone's body frame.

    Returns (forward, right) in meters; right is 90 degrees clockwise from
    the heading when viewed from above.
    """
    dx = world_point[0] - drone.x
    dy = world_point[1] - drone.y
    c = math.cos(drone.yaw)
    s = math.sin(drone.yaw)
    return c * dx + s * dy, s * dx - c * dy


def project(drone: Pose, world_point: tuple[float, float], frame: FrameSpec) -> PixelPoint:
    """Pinhole projection of a ground-plane point into the bottom camera.

    The result is a valid PixelPoint even when it falls outside the frame
    bounds; use :func:`in_frame` to test visibility.

    Raises GroundedError when the vehicle is not airborne.
    """
    if drone.z <= 0:
        raise GroundedError("projection undefined with the camera on the ground")
    forward, right = body_offset(drone, world_point)
    scale = frame.focal_length / drone.z
    center = frame.center
    return PixelPoint(center.x + scale * right, center.y - scale * forward)


def in_frame(p: PixelPoint, frame: FrameSpec) -> bool:
    """True iff the point lies inside the image bounds (upper bounds exclusive)."""
    return 0 <= p.x < frame.width and 0 <= p.y < frame.height


def ground_footprint(frame: FrameSpec, altitude: float) -> tuple[float, float]:
    """Half-extents (x, y) in meters of the ground patch seen from ``altitude``."""
    if altitude <= 0:
        raise GroundedError("footprint undefined with the camera on the ground")
    half_w = altitude * (frame.width / 2.0) / frame.focal_length
    half_h = altitude * (frame.height / 2.0) / frame.focal_length
    return half_w, half_h
