"""Mission state machines: take off, search, servo, hover, reverse, land.

Every mission kind runs the same loop once per tick: capture a frame,
detect the color the current phase cares about, choose a target (the
detected blob centroid, the current imagined segment target, or the home
pad), run the proportional controller, and fire at most one state
transition when its condition is met.

The four kinds:

  TRACK_VISIBLE         servo onto a marker already in view and hover.
  FORWARD_SEARCH_HOVER  fly an imagined trajectory until the search color
                        appears, then servo and hover.
  SEARCH_RETURN_LAND    as above, then retrace the outbound motion log,
                        servo onto the home color and land on it.
  CARRIER_COORDINATION  same chain, with the home pad provided by the
                        carrier robot the vehicle took off from.

While searching and servoing outbound, every nonzero command is appended
to a motion log together with the target that produced it; the return leg
replays that log reflected about the image center (see imagination).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Callable, Optional

from .control import (ZERO_COMMAND, ControllerGains, VelocityCommand,
                      compute_command, pixel_error)
from .geometry import FrameSpec, PixelPoint, Pose
from .imagination import (Distance, Duration, EmptyLogError, ImaginedSegment,
                          ImaginedTrajectory, MarkerDetected, MotionLog,
                          forward_target, reverse)
from .perception import Color, Detection, Frame, Marker, detect
from .sim import (NoiseModel, SimConfig, TrajectoryRow, WorldState, capture,
                  make_world, step)

HOVER_DWELL_S = 1.0          # time to sit on the found marker before returning
LAND_THRESHOLD_PX = 20.0     # centering tolerance that arms the descent
LAND_DWELL_TICKS = 5         # consecutive in-tolerance ticks required to land
LOST_PATIENCE_TICKS = 10     # detection dropouts tolerated while servoing
DEFAULT_TIMEOUT_S = 120.0

_ALTITUDE_EPS = 1e-9


class MissionKind(Enum):
    TRACK_VISIBLE = "track"
    FORWARD_SEARCH_HOVER = "forward"
    SEARCH_RETURN_LAND = "return"
    CARRIER_COORDINATION = "coordination"


_RETURNING_KINDS = (MissionKind.SEARCH_RETURN_LAND, MissionKind.CARRIER_COORDINATION)


class Phase(Enum):
    ON_CARRIER = "on_carrier"
    TAKING_OFF = "taking_off"
    SEARCHING = "searching"
    SERVOING = "servoing"
    HOVERING_ON_TARGET = "hovering_on_target"
    REVERSING = "reversing"
    SERVOING_HOME = "servoing_home"
    LANDING = "landing"
    LANDED = "landed"
    FAILED = "failed"


#: Legal phase changes.  Self-loops are implicit and any phase may fail.
TRANSITIONS = frozenset({
    (Phase.ON_CARRIER, Phase.TAKING_OFF),
    (Phase.TAKING_OFF, Phase.SEARCHING),
    (Phase.SEARCHING, Phase.SERVOING),
    (Phase.SERVOING, Phase.SEARCHING),        # detection lost too long
    (Phase.SERVOING, Phase.HOVERING_ON_TARGET),
    (Phase.HOVERING_ON_TARGET, Phase.REVERSING),
    (Phase.REVERSING, Phase.SERVOING_HOME),
    (Phase.SERVOING_HOME, Phase.LANDING),
    (Phase.LANDING, Phase.LANDED),
})


class AbsorbingStateError(RuntimeError):
    """tick() called on a mission that already Landed or Failed."""


class ScenarioError(ValueError):
    """A mission/scenario configuration is malformed."""


@dataclass(frozen=True)
class MissionSpec:
    """What a mission is asked to do; world-independent."""

    kind: MissionKind
    search_color: Color = Color.PINK
    home_color: Optional[Color] = Color.BLUE
    trajectory: Optional[ImaginedTrajectory] = None
    timeout: float = DEFAULT_TIMEOUT_S

    def __post_init__(self) -> None:
        if not self.timeout > 0 or not math.isfinite(self.timeout):
            raise ScenarioError("timeout must be positive and finite")
        if self.kind in _RETURNING_KINDS and self.home_color is None:
            raise ScenarioError(f"{self.kind.value} missions need a home_color")
        if self.kind is not MissionKind.TRACK_VISIBLE and self.trajectory is None:
            raise ScenarioError(f"{self.kind.value} missions need a search trajectory")


@dataclass
class MissionState:
    """Mutable FSM state plus per-phase bookkeeping; owned by one loop."""

    phase: Phase
    segment_index: int = 0
    servo_color: Optional[Color] = None
    fail_reason: Optional[str] = None
    log: MotionLog = field(default_factory=MotionLog)
    elapsed: float = 0.0
    ticks: int = 0
    succeeded: bool = False
    # bookkeeping
    segment_elapsed: float = 0.0
    segment_start_xy: tuple[float, float] = (0.0, 0.0)
    hover_elapsed: float = 0.0
    land_streak: int = 0
    lost_ticks: int = 0
    reversal: Optional[ImaginedTrajectory] = None
    jitter_applied: bool = False
    # outputs of the latest tick, consumed by run()
    climb_rate: float = 0.0
    last_detected: Optional[Color] = None
    last_err: Optional[float] = None
    last_frame: Optional[Frame] = None

    @property
    def done(self) -> bool:
        return self.succeeded or self.phase in (Phase.LANDED, Phase.FAILED)

    def label(self) -> str:
        """Canonical state string used in trajectory logs."""
        if self.phase is Phase.SEARCHING or self.phase is Phase.REVERSING:
            return f"{self.phase.value}:{self.segment_index}"
        if self.phase is Phase.SERVOING and self.servo_color is not None:
            return f"{self.phase.value}:{self.servo_color.name.lower()}"
        if self.phase is Phase.FAILED and self.fail_reason:
            return f"{self.phase.value}:{self.fail_reason}"
        return self.phase.value


def initial_state(spec: MissionSpec) -> MissionState:
    """TRACK_VISIBLE starts airborne and servoing; the rest start on the
    carrier and take off first."""
    if spec.kind is MissionKind.TRACK_VISIBLE:
        return MissionState(phase=Phase.SERVOING, servo_color=spec.search_color)
    return MissionState(phase=Phase.ON_CARRIER)


def _fail(state: MissionState, reason: str) -> VelocityCommand:
    state.phase = Phase.FAILED
    state.fail_reason = reason
    state.climb_rate = 0.0
    return ZERO_COMMAND


def _enter_segment(state: MissionState, index: int, world: WorldState) -> None:
    state.segment_index = index
    state.segment_elapsed = 0.0
    state.segment_start_xy = (world.drone.x, world.drone.y)


def _segment_command(state: MissionState, seg: ImaginedSegment,
                     cfg: SimConfig) -> VelocityCommand:
    err = pixel_error(seg.target, cfg.frame.center)
    cmd = compute_command(err, cfg.gains)
    state.last_err = err.norm()
    return cmd


def _servo_command(state: MissionState, det: Detection, cfg: SimConfig,
                   gains: Optional[ControllerGains] = None) -> VelocityCommand:
    err = pixel_error(det.center, cfg.frame.center)
    cmd = compute_command(err, gains or cfg.gains)
    state.last_err = err.norm()
    state.last_detected = det.color
    return cmd


def _log_if_moving(state: MissionState, cmd: VelocityCommand, dt: float,
                   target: PixelPoint) -> None:
    if not cmd.hovering and (cmd.vel_forward != 0.0 or cmd.vel_right != 0.0):
        state.log.append(state.elapsed, cmd, dt, target)


def _segment_expired(state: MissionState, seg: ImaginedSegment,
                     world: WorldState, frame: Optional[Frame],
                     cfg: SimConfig, absent_color: Optional[Color] = None) -> bool:
    """Evaluate the segment's own termination rule.  Marker terminations
    are checked before time/distance ones.  ``absent_color`` names a color
    already searched in this frame and not found, so it needs no re-scan."""
    rule = seg.terminate_on
    if isinstance(rule, MarkerDetected):
        if frame is None or rule.color is absent_color:
            return False
        return detect(frame, rule.color, cfg.min_blob_size) is not None
    if isinstance(rule, Duration):
        return state.segment_elapsed >= rule.seconds - 1e-9
    if isinstance(rule, Distance):
        sx, sy = state.segment_start_xy
        moved = math.hypot(world.drone.x - sx, world.drone.y - sy)
        return moved >= rule.meters - 1e-12
    raise TypeError(f"unknown termination rule {rule!r}")


def tick(state: MissionState, spec: MissionSpec, world: WorldState,
         cfg: SimConfig) -> tuple[MissionState, VelocityCommand]:
    """One FSM evaluation.  Mutates and returns ``state``.

    The drone pose in ``world`` is touched only at liftoff (takeoff
    jitter) and when snapping altitude at the top of the climb and at
    touchdown; all other motion goes through sim.step, driven by the
    returned command and state.climb_rate.

    Raises AbsorbingStateError when called after Landed or Failed.
    """
    if state.phase in (Phase.LANDED, Phase.FAILED):
        raise AbsorbingStateError(f"mission already {state.phase.value}")

    state.climb_rate = 0.0
    state.last_detected = None
    state.last_err = None
    state.last_frame = None

    if not state.jitter_applied:
        state.jitter_applied = True
        sigma = cfg.noise.takeoff_jitter_std
        if sigma > 0:
            jx, jy = world.rng.normal(0.0, sigma, 2)
            world.drone = replace(world.drone, x=world.drone.x + jx,
                                  y=world.drone.y + jy)

    if state.elapsed >= spec.timeout:
        cmd = _fail(state, "timeout")
    else:
        cmd = _HANDLERS[state.phase](state, spec, world, cfg)

    state.ticks += 1
    state.elapsed = state.ticks * cfg.dt
    return state, cmd


def _tick_on_carrier(state: MissionState, spec: MissionSpec, world: WorldState,
                     cfg: SimConfig) -> VelocityCommand:
    state.phase = Phase.TAKING_OFF
    state.climb_rate = cfg.climb_rate
    return ZERO_COMMAND


def _tick_taking_off(state: MissionState, spec: MissionSpec, world: WorldState,
                     cfg: SimConfig) -> VelocityCommand:
    if world.drone.z >= cfg.altitude - _ALTITUDE_EPS:
        world.drone = replace(world.drone, z=cfg.altitude)  # hold altitude exactly
        state.phase = Phase.SEARCHING
        _enter_segment(state, 0, world)
        seg = spec.trajectory.segments[0]
        cmd = _segment_command(state, seg, cfg)
        _log_if_moving(state, cmd, cfg.dt, seg.target)
        state.segment_elapsed += cfg.dt
        return cmd
    state.climb_rate = cfg.climb_rate
    return ZERO_COMMAND


def _tick_searching(state: MissionState, spec: MissionSpec, world: WorldState,
                    cfg: SimConfig) -> VelocityCommand:
    frame = capture(world, cfg)
    state.last_frame = frame
    det = detect(frame, spec.search_color, cfg.min_blob_size)
    if det is not None:
        state.phase = Phase.SERVOING
        state.servo_color = spec.search_color
        state.lost_ticks = 0
        cmd = _servo_command(state, det, cfg)
        _log_if_moving(state, cmd, cfg.dt, det.center)
        return cmd

    seg = spec.trajectory.segments[state.segment_index]
    if _segment_expired(state, seg, world, frame, cfg, absent_color=spec.search_color):
        if state.segment_index + 1 >= len(spec.trajectory.segments):
            return _fail(state, "search_exhausted")
        _enter_segment(state, state.segment_index + 1, world)
        seg = spec.trajectory.segments[state.segment_index]
    cmd = _segment_command(state, seg, cfg)
    _log_if_moving(state, cmd, cfg.dt, seg.target)
    state.segment_elapsed += cfg.dt
    return cmd


def _tick_servoing(state: MissionState, spec: MissionSpec, world: WorldState,
                   cfg: SimConfig) -> VelocityCommand:
    frame = capture(world, cfg)
    state.last_frame = frame
    det = detect(frame, state.servo_color, cfg.min_blob_size)
    if det is None:
        state.lost_ticks += 1
        if spec.trajectory is not None and state.lost_ticks > LOST_PATIENCE_TICKS:
            # resume the interrupted search segment from the current pose
            state.phase = Phase.SEARCHING
            state.lost_ticks = 0
            _enter_segment(state, state.segment_index, world)
        return ZERO_COMMAND
    state.lost_ticks = 0
    cmd = _servo_command(state, det, cfg)
    if cmd.hovering:
        state.phase = Phase.HOVERING_ON_TARGET
        state.hover_elapsed = 0.0
        return cmd
    _log_if_moving(state, cmd, cfg.dt, det.center)
    return cmd


def _tick_hovering(state: MissionState, spec: MissionSpec, world: WorldState,
                   cfg: SimConfig) -> VelocityCommand:
    if state.hover_elapsed >= HOVER_DWELL_S - 1e-9:
        if spec.kind in _RETURNING_KINDS:
            try:
                state.reversal = reverse(state.log, cfg.frame)
            except EmptyLogError:
                return _fail(state, "reversal_unavailable")
            state.phase = Phase.REVERSING
            _enter_segment(state, 0, world)
            seg = state.reversal.segments[0]
            cmd = _segment_command(state, seg, cfg)
            state.segment_elapsed += cfg.dt
            return cmd
        state.succeeded = True
    frame = capture(world, cfg)
    state.last_frame = frame
    det = detect(frame, state.servo_color, cfg.min_blob_size)
    state.hover_elapsed += cfg.dt
    if det is None:
        return ZERO_COMMAND
    cmd = _servo_command(state, det, cfg)
    # drift corrections while hovering are part of the outbound motion
    _log_if_moving(state, cmd, cfg.dt, det.center)
    return cmd


def _tick_reversing(state: MissionState, spec: MissionSpec, world: WorldState,
                    cfg: SimConfig) -> VelocityCommand:
    frame = capture(world, cfg)
    state.last_frame = frame
    det = detect(frame, spec.home_color, cfg.min_blob_size)
    if det is not None:
        state.phase = Phase.SERVOING_HOME
        state.land_streak = 0
        return _servo_command(state, det, cfg)

    if state.segment_index >= len(state.reversal.segments):
        return ZERO_COMMAND  # replay exhausted: hold and keep scanning
    seg = state.reversal.segments[state.segment_index]
    if _segment_expired(state, seg, world, None, cfg):
        if state.segment_index + 1 >= len(state.reversal.segments):
            state.segment_index += 1
            return ZERO_COMMAND
        _enter_segment(state, state.segment_index + 1, world)
        seg = state.reversal.segments[state.segment_index]
    cmd = _segment_command(state, seg, cfg)
    state.segment_elapsed += cfg.dt
    return cmd


def _land_gains(cfg: SimConfig) -> ControllerGains:
    return replace(cfg.gains, hover_threshold=LAND_THRESHOLD_PX)


def _tick_servoing_home(state: MissionState, spec: MissionSpec, world: WorldState,
                        cfg: SimConfig) -> VelocityCommand:
    frame = capture(world, cfg)
    state.last_frame = frame
    det = detect(frame, spec.home_color, cfg.min_blob_size)
    if det is None:
        state.land_streak = 0
        return ZERO_COMMAND
    cmd = _servo_command(state, det, cfg, _land_gains(cfg))
    if cmd.hovering:
        state.land_streak += 1
        if state.land_streak >= LAND_DWELL_TICKS:
            state.phase = Phase.LANDING
            state.climb_rate = -cfg.descent_rate
    else:
        state.land_streak = 0
    return cmd


def _tick_landing(state: MissionState, spec: MissionSpec, world: WorldState,
                  cfg: SimConfig) -> VelocityCommand:
    if world.drone.z <= cfg.carrier_height + _ALTITUDE_EPS:
        world.drone = replace(world.drone, z=cfg.carrier_height)
        state.phase = Phase.LANDED
        state.succeeded = True
        return ZERO_COMMAND
    state.climb_rate = -cfg.descent_rate
    frame = capture(world, cfg)
    state.last_frame = frame
    det = detect(frame, spec.home_color, cfg.min_blob_size)
    if det is None:
        return ZERO_COMMAND
    return _servo_command(state, det, cfg, _land_gains(cfg))


_HANDLERS: dict[Phase, Callable[..., VelocityCommand]] = {
    Phase.ON_CARRIER: _tick_on_carrier,
    Phase.TAKING_OFF: _tick_taking_off,
    Phase.SEARCHING: _tick_searching,
    Phase.SERVOING: _tick_servoing,
    Phase.HOVERING_ON_TARGET: _tick_hovering,
    Phase.REVERSING: _tick_reversing,
    Phase.SERVOING_HOME: _tick_servoing_home,
    Phase.LANDING: _tick_landing,
}


@dataclass(frozen=True)
class MissionResult:
    success: bool
    outcome: str                 # "success" or "failed:<reason>"
    elapsed_s: float
    ticks: int
    final_pose: Pose
    rows: tuple[TrajectoryRow, ...]


def run(spec: MissionSpec, world: WorldState, cfg: SimConfig,
        frame_sink: Optional[Callable[[int, Frame], None]] = None) -> MissionResult:
    """Tick the mission until it succeeds, lands, fails or times out.

    Advances ``world`` in place.  One TrajectoryRow is recorded per tick
    (pose before the integration step, post-transition state label).
    frame_sink, when given, receives every captured frame as
    (step_index, frame).
    """
    state = initial_state(spec)
    rows: list[TrajectoryRow] = []
    while True:
        state, cmd = tick(state, spec, world, cfg)
        rows.append(TrajectoryRow(
            step=world.steps,
            time_s=world.time,
            drone_x=world.drone.x,
            drone_y=world.drone.y,
            drone_z=world.drone.z,
            vel_fwd=cmd.vel_forward,
            vel_right=cmd.vel_right,
            fsm_state=state.label(),
            detected_color=state.last_detected.name.lower() if state.last_detected else "",
            err_px=state.last_err,
        ))
        if frame_sink is not None and state.last_frame is not None:
            frame_sink(world.steps, state.last_frame)
        if state.done:
            break
        step(world, cmd, cfg, vz=state.climb_rate)
    outcome = "success" if state.succeeded else f"failed:{state.fail_reason}"
    return MissionResult(
        success=state.succeeded,
        outcome=outcome,
        elapsed_s=state.elapsed,
        ticks=state.ticks,
        final_pose=world.drone,
        rows=tuple(rows),
    )


def fly_trajectory(traj: ImaginedTrajectory, world: WorldState,
                   cfg: SimConfig) -> MotionLog:
    """Fly Duration-terminated segments open loop (no perception).

    Each segment becomes one motion-log entry; durations execute to the
    nearest whole step since the world is dt-quantized.  Useful for
    pattern flights and reversal studies; closed-loop missions use run().
    """
    log = MotionLog()
    for seg in traj.segments:
        if not isinstance(seg.terminate_on, Duration):
            raise ValueError("fly_trajectory handles Duration-terminated segments only")
        err = pixel_error(seg.target, cfg.frame.center)
        cmd = compute_command(err, cfg.gains)
        n_steps = max(1, round(seg.terminate_on.seconds / cfg.dt))
        start_time = world.time
        for _ in range(n_steps):
            step(world, cmd, cfg)
        log.append(start_time, cmd, n_steps * cfg.dt, seg.target)
    return log


def audit_transitions(labels: list[str]) -> list[str]:
    """Check a logged fsm_state sequence against the documented edge set.

    Returns a list of violation descriptions; empty means every observed
    transition is legal (self-loops and failures from any phase allowed).
    """
    violations = []
    phases = []
    for lab in labels:
        name = lab.split(":", 1)[0]
        try:
            phases.append(Phase(name))
        except ValueError:
            violations.append(f"unknown state label {lab!r}")
            phases.append(None)
    for i in range(1, len(phases)):
        a, b = phases[i - 1], phases[i]
        if a is None or b is None or a is b or b is Phase.FAILED:
            continue
        if (a, b) not in TRANSITIONS:
            violations.append(f"illegal transition {a.value} -> {b.value} at row {i}")
    return violations


# --- scenarios and their config files ---------------------------------------


@dataclass(frozen=True)
class Scenario:
    """A mission spec plus the world it runs in; seeds make worlds.

    trials and base_seed are optional campaign defaults carried from a
    config file; explicit CLI flags take precedence over them.
    """

    spec: MissionSpec
    cfg: SimConfig
    markers: tuple[Marker, ...] = ()
    drone_start: tuple[float, float] = (0.0, 0.0)
    carrier_start: Optional[tuple[float, float]] = None
    trials: Optional[int] = None
    base_seed: Optional[int] = None

    def make_world(self, seed: int) -> WorldState:
        x, y = self.drone_start
        z = self.cfg.altitude if self.spec.kind is MissionKind.TRACK_VISIBLE \
            else self.cfg.carrier_height
        cx, cy = self.carrier_start if self.carrier_start is not None else self.drone_start
        return make_world(seed, self.markers,
                          drone=Pose(x, y, z, 0.0),
                          carrier=Pose(cx, cy, 0.0, 0.0))


def forward_search_trajectory(frame: FrameSpec, search_color: Color) -> ImaginedTrajectory:
    """A single forward imagined segment that ends when the color appears."""
    return ImaginedTrajectory((
        ImaginedSegment(forward_target(frame), MarkerDetected(search_color)),
    ))


def default_scenario(task: str, noise: Optional[NoiseModel] = None) -> Scenario:
    """Built-in scenario for a CLI task name.

    track:        pink marker in view 0.3 m ahead, 0.2 m left of the start.
    forward:      pink marker 2.0 m ahead; forward search, hover on it.
    return:       as forward, then retrace and land on the home pad.
    coordination: as return, taking off from and landing on the carrier.
    """
    cfg = SimConfig() if noise is None else SimConfig(noise=noise)
    pink_ahead = Marker((2.0, 0.0), 0.06, Color.PINK)
    if task == "track":
        spec = MissionSpec(MissionKind.TRACK_VISIBLE)
        return Scenario(spec, cfg, markers=(Marker((0.3, 0.2), 0.06, Color.PINK),))
    if task == "forward":
        spec = MissionSpec(MissionKind.FORWARD_SEARCH_HOVER,
                           trajectory=forward_search_trajectory(cfg.frame, Color.PINK))
        return Scenario(spec, cfg, markers=(pink_ahead,))
    if task == "return":
        spec = MissionSpec(MissionKind.SEARCH_RETURN_LAND,
                           trajectory=forward_search_trajectory(cfg.frame, Color.PINK))
        return Scenario(spec, cfg, markers=(pink_ahead,))
    if task == "coordination":
        spec = MissionSpec(MissionKind.CARRIER_COORDINATION,
                           trajectory=forward_search_trajectory(cfg.frame, Color.PINK))
        return Scenario(spec, cfg, markers=(pink_ahead,))
    raise ScenarioError(f"unknown task {task!r} (expected track|forward|return|coordination)")


def _parse_color(name: str) -> Color:
    try:
        return Color[name.upper()]
    except KeyError:
        raise ScenarioError(f"unknown color {name!r}; known: "
                            + ", ".join(c.name.lower() for c in Color)) from None


def _parse_termination(node: dict):
    kind = node.get("type")
    if kind == "marker":
        return MarkerDetected(_parse_color(node["color"]))
    if kind == "duration":
        return Duration(float(node["seconds"]))
    if kind == "distance":
        return Distance(float(node["meters"]))
    raise ScenarioError(f"unknown termination type {kind!r}")


def _parse_trajectory(node: dict, frame: FrameSpec, search_color: Color) -> ImaginedTrajectory:
    kind = node.get("type", "forward")
    if kind == "forward":
        return forward_search_trajectory(frame, search_color)
    if kind == "square":
        from .imagination import square_trajectory
        return square_trajectory(frame, float(node["side_duration_s"]),
                                 float(node.get("offset_px", 100.0)))
    if kind == "segments":
        segs = []
        for s in node["segments"]:
            tx, ty = s["target"]
            segs.append(ImaginedSegment(PixelPoint(float(tx), float(ty)),
                                        _parse_termination(s["until"])))
        return ImaginedTrajectory(tuple(segs))
    raise ScenarioError(f"unknown trajectory type {kind!r}")


def load_scenario(path: str | Path) -> Scenario:
    """Read a scenario from a JSON config file; see build_scenario for the
    schema.  Raises ScenarioError on any malformed content."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ScenarioError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ScenarioError("config root must be a JSON object")
    return build_scenario(data)


def build_scenario(data: dict) -> Scenario:
    """Build a Scenario from a config tree.

    Schema (all keys optional except "task")::

        {
          "task": "track" | "forward" | "return" | "coordination",
          "search_color": "pink",
          "home_color": "blue",
          "timeout_s": 120.0,
          "trials": 20,
          "base_seed": 0,
          "markers": [{"x": 2.0, "y": 0.0, "radius": 0.06, "color": "pink"}],
          "drone_start": [0.0, 0.0],
          "carrier_start": [0.0, 0.0],
          "trajectory": {"type": "forward"}
                        | {"type": "square", "side_duration_s": 4.0, "offset_px": 100}
                        | {"type": "segments", "segments": [
                             {"target": [320, 80],
                              "until": {"type": "marker", "color": "pink"}
                                       | {"type": "duration", "seconds": 5.0}
                                       | {"type": "distance", "meters": 1.0}}]},
          "sim": {
            "dt": 0.1, "altitude": 1.0, "min_blob_size": 10,
            "frame": {"width": 640, "height": 360, "focal_length": 320.0},
            "gains": {"k": 0.0005, "hover_threshold": 50.0, "max_speed": 1.0,
                      "literal_axes": false},
            "noise": {"drift_std": 0.01, "takeoff_jitter_std": 0.05},
            "carrier_height": 0.0, "carrier_marker_radius": 0.1,
            "carrier_speed": 0.3, "carrier_waypoints": [[1.0, 0.0]],
            "climb_rate": 0.5, "descent_rate": 0.3
          }
        }
    """
    try:
        task = data["task"]
    except KeyError:
        raise ScenarioError('config is missing the "task" key') from None
    base = default_scenario(task)

    try:
        sim_node = dict(data.get("sim", {}))
        frame_node = sim_node.pop("frame", None)
        gains_node = sim_node.pop("gains", None)
        noise_node = sim_node.pop("noise", None)
        frame = FrameSpec(**frame_node) if frame_node else base.cfg.frame
        gains = ControllerGains(**gains_node) if gains_node else base.cfg.gains
        noise = NoiseModel(**noise_node) if noise_node else base.cfg.noise
        if "carrier_waypoints" in sim_node:
            sim_node["carrier_waypoints"] = tuple(
                tuple(wp) for wp in sim_node["carrier_waypoints"])
        cfg = replace(base.cfg, frame=frame, gains=gains, noise=noise, **sim_node)

        search_color = _parse_color(data.get("search_color", base.spec.search_color.name))
        home_color = _parse_color(data["home_color"]) if "home_color" in data \
            else base.spec.home_color
        if base.spec.kind is MissionKind.TRACK_VISIBLE:
            trajectory = None
        else:
            trajectory = _parse_trajectory(data.get("trajectory", {"type": "forward"}),
                                           cfg.frame, search_color)
        spec = MissionSpec(kind=base.spec.kind,
                           search_color=search_color,
                           home_color=home_color,
                           trajectory=trajectory,
                           timeout=float(data.get("timeout_s", DEFAULT_TIMEOUT_S)))

        markers = base.markers
        if "markers" in data:
            markers = tuple(
                Marker((float(m["x"]), float(m["y"])), float(m["radius"]),
                       _parse_color(m["color"]))
                for m in data["markers"])
        drone_start = tuple(data.get("drone_start", base.drone_start))
        carrier_start = tuple(data["carrier_start"]) if "carrier_start" in data else None
        trials = int(data["trials"]) if "trials" in data else None
        base_seed = int(data["base_seed"]) if "base_seed" in data else None
        if trials is not None and trials < 1:
            raise ScenarioError("trials must be >= 1")
    except ScenarioError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"bad config value: {exc}") from exc

    return Scenario(spec=spec, cfg=cfg, markers=markers,
                    drone_start=drone_start, carrier_start=carrier_start,
                    trials=trials, base_seed=base_seed)
