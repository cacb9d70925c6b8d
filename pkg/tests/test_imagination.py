"""Imagined targets, trajectories, motion logs and reversal."""

import math

import numpy as np
import pytest

from visnav import (Color, Duration, EmptyLogError, FrameSpec, ImaginedSegment,
                    ImaginedTrajectory, MarkerDetected, MissionKind, MissionSpec,
                    MotionLog, NoiseModel, PixelPoint, Pose, Scenario, SimConfig,
                    VelocityCommand, fly_trajectory, forward_target, make_world,
                    offset_target, random_trajectory, reflect_about_center, reverse,
                    reverse_trajectory, run, square_trajectory)

DEFAULT = FrameSpec()
ZERO_NOISE = SimConfig(noise=NoiseModel.zero())


def test_forward_target_default_frame():
    t = forward_target(DEFAULT)
    assert (t.x, t.y) == (320.0, 80.0)


def test_backward_analogue_mirrors_forward():
    t = offset_target(DEFAULT, 0.0, 100.0)
    assert (t.x, t.y) == (320.0, 280.0)


def test_forward_target_small_frame_leaves_bounds():
    # legal for imagined targets: (50, -50) on a 100x100 frame
    t = forward_target(FrameSpec(100, 100, 50.0))
    assert (t.x, t.y) == (50.0, -50.0)


def test_square_trajectory_targets():
    traj = square_trajectory(DEFAULT, 2.0)
    assert [(s.target.x, s.target.y) for s in traj.segments] == [
        (320.0, 80.0), (420.0, 180.0), (320.0, 280.0), (220.0, 180.0)]
    assert all(s.terminate_on == Duration(2.0) for s in traj.segments)


def test_square_trajectory_rejects_zero_duration():
    with pytest.raises(ValueError):
        square_trajectory(DEFAULT, 0.0)


def test_square_flight_returns_to_start():
    world = make_world(0, drone=Pose(0, 0, 1.0, 0.0))
    fly_trajectory(square_trajectory(DEFAULT, 2.0), world, ZERO_NOISE)
    assert math.hypot(world.drone.x, world.drone.y) <= 1e-6


def test_reverse_single_entry_reflects_target():
    log = MotionLog()
    log.append(0.0, VelocityCommand(0.05, 0.0), 5.0, PixelPoint(320, 80))
    traj = reverse(log, DEFAULT)
    assert len(traj.segments) == 1
    seg = traj.segments[0]
    assert (seg.target.x, seg.target.y) == (320.0, 280.0)
    assert seg.terminate_on == Duration(5.0)


def test_reverse_empty_log_raises():
    with pytest.raises(EmptyLogError):
        reverse(MotionLog(), DEFAULT)


def test_l_path_execute_then_reverse_returns_home():
    traj = ImaginedTrajectory((
        ImaginedSegment(PixelPoint(320, 80), Duration(3.0)),    # ahead
        ImaginedSegment(PixelPoint(420, 180), Duration(2.0)),   # right
    ))
    world = make_world(0, drone=Pose(0, 0, 1.0, 0.0))
    log = fly_trajectory(traj, world, ZERO_NOISE)
    away = math.hypot(world.drone.x, world.drone.y)
    assert away > 0.1
    fly_trajectory(reverse(log, DEFAULT), world, ZERO_NOISE)
    assert math.hypot(world.drone.x, world.drone.y) <= 1e-6


def test_reversal_involution_on_trajectories():
    rng = np.random.default_rng(41)
    for _ in range(50):
        segs = tuple(
            ImaginedSegment(
                PixelPoint(float(rng.integers(-500, 1200)), float(rng.integers(-500, 900))),
                Duration(float(rng.integers(1, 8)) * 0.1))
            for _ in range(rng.integers(1, 6)))
        traj = ImaginedTrajectory(segs)
        back = reverse_trajectory(reverse_trajectory(traj, DEFAULT), DEFAULT)
        assert back.targets() == traj.targets()


def test_reverse_of_reverse_log_reproduces_targets():
    traj = ImaginedTrajectory((
        ImaginedSegment(PixelPoint(320, 80), Duration(2.0)),
        ImaginedSegment(PixelPoint(420, 180), Duration(1.5)),
        ImaginedSegment(PixelPoint(250, 300), Duration(0.8)),
    ))
    w1 = make_world(0, drone=Pose(0, 0, 1.0, 0.0))
    log1 = fly_trajectory(traj, w1, ZERO_NOISE)
    rev = reverse(log1, DEFAULT)
    w2 = make_world(0, drone=Pose(0, 0, 1.0, 0.0))
    log2 = fly_trajectory(rev, w2, ZERO_NOISE)
    again = reverse(log2, DEFAULT)
    assert again.targets() == traj.targets()


def test_constant_command_within_mission_segments():
    # an imagined target keeps a constant offset from the image center, so
    # the commanded velocity is bit-identical across a segment's ticks
    traj = square_trajectory(DEFAULT, 2.0)
    spec = MissionSpec(MissionKind.FORWARD_SEARCH_HOVER, search_color=Color.RED,
                       trajectory=traj, timeout=30.0)
    scenario = Scenario(spec, ZERO_NOISE)  # no red marker anywhere
    result = run(spec, scenario.make_world(0), ZERO_NOISE)
    assert result.outcome == "failed:search_exhausted"
    by_segment = {}
    for row in result.rows:
        if row.fsm_state.startswith("searching"):
            by_segment.setdefault(row.fsm_state, set()).add((row.vel_fwd, row.vel_right))
    assert len(by_segment) == 4
    assert all(len(cmds) == 1 for cmds in by_segment.values())


def test_out_of_frame_targets_are_not_clamped():
    traj = square_trajectory(FrameSpec(100, 100, 50.0), 1.0, offset_px=300.0)
    xs = [s.target.x for s in traj.segments]
    ys = [s.target.y for s in traj.segments]
    assert min(xs + ys) == -250.0 and max(xs + ys) == 350.0


def test_random_trajectory_is_seeded_and_fixed_offset():
    t1 = random_trajectory(DEFAULT, np.random.default_rng(7), 5, 1.0)
    t2 = random_trajectory(DEFAULT, np.random.default_rng(7), 5, 1.0)
    assert t1.targets() == t2.targets()
    for s in t1.segments:
        off = math.hypot(s.target.x - 320.0, s.target.y - 180.0)
        assert off == pytest.approx(100.0)


def test_reflect_about_center():
    p = reflect_about_center(PixelPoint(420.0, 180.0), DEFAULT)
    assert (p.x, p.y) == (220.0, 180.0)


def test_motion_log_validation():
    log = MotionLog()
    log.append(0.0, VelocityCommand(0.1, 0.0), 1.0, PixelPoint(320, 80))
    with pytest.raises(ValueError):
        log.append(0.0, VelocityCommand(0.1, 0.0), 1.0, PixelPoint(320, 80))
    with pytest.raises(ValueError):
        log.append(1.0, VelocityCommand(0.1, 0.0), 0.0, PixelPoint(320, 80))
    assert len(log) == 1


def test_termination_validation():
    with pytest.raises(ValueError):
        Duration(0.0)
    with pytest.raises(ValueError):
        ImaginedTrajectory(())
    assert MarkerDetected(Color.PINK).color is Color.PINK


def test_fly_trajectory_rejects_non_duration_segments():
    traj = ImaginedTrajectory((
        ImaginedSegment(PixelPoint(320, 80), MarkerDetected(Color.PINK)),
    ))
    world = make_world(0, drone=Pose(0, 0, 1.0, 0.0))
    with pytest.raises(ValueError):
        fly_trajectory(traj, world, ZERO_NOISE)
