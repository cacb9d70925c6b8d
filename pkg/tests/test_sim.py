"""World stepping: kinematics, noise, carrier motion, capture, CSV logs."""

import copy
import math

import pytest

from visnav import (Color, ControllerGains, GroundedError, Marker,
                    NoiseModel, Pose, SimConfig, TrajectoryRow, VelocityCommand,
                    capture, detect, make_world, read_trajectory_csv, step,
                    write_trajectory_csv)

ZERO_NOISE = SimConfig(noise=NoiseModel.zero())


def airborne_world(seed=0, markers=(), x=0.0, y=0.0, yaw=0.0):
    return make_world(seed, markers, drone=Pose(x, y, 1.0, yaw))


def test_step_euler_integration():
    world = airborne_world()
    step(world, VelocityCommand(0.05, 0.0), ZERO_NOISE)
    assert world.drone.x == pytest.approx(0.005, abs=1e-15)
    assert world.drone.y == 0.0
    assert world.steps == 1
    assert world.time == 0.1


def test_hovering_command_freezes_pose():
    world = airborne_world(x=1.25, y=-0.5)
    before = world.drone
    for _ in range(50):
        step(world, VelocityCommand(0.0, 0.0, hovering=True), ZERO_NOISE)
    assert world.drone == before
    assert world.steps == 50


def test_body_to_world_rotation():
    world = airborne_world(yaw=math.pi / 2)
    step(world, VelocityCommand(0.1, 0.0), ZERO_NOISE)   # forward is world +y
    assert world.drone.x == pytest.approx(0.0, abs=1e-15)
    assert world.drone.y == pytest.approx(0.01)
    world2 = airborne_world(yaw=0.0)
    step(world2, VelocityCommand(0.0, 0.1), ZERO_NOISE)  # right is world -y
    assert world2.drone.y == pytest.approx(-0.01)


def test_fixed_seed_drift_replays_bit_exactly():
    cfg = SimConfig(noise=NoiseModel(drift_std=0.02, takeoff_jitter_std=0.0))
    w1 = airborne_world(seed=123)
    w2 = airborne_world(seed=123)
    xs1, xs2 = [], []
    for _ in range(200):
        step(w1, VelocityCommand(0.05, 0.0), cfg)
        step(w2, VelocityCommand(0.05, 0.0), cfg)
        xs1.append((w1.drone.x, w1.drone.y))
        xs2.append((w2.drone.x, w2.drone.y))
    assert xs1 == xs2


def test_deepcopy_snapshot_replays():
    cfg = SimConfig(noise=NoiseModel(drift_std=0.02, takeoff_jitter_std=0.0))
    world = airborne_world(seed=5)
    for _ in range(10):
        step(world, VelocityCommand(0.05, 0.0), cfg)
    snap = copy.deepcopy(world)
    a = [step(world, VelocityCommand(0.0, 0.05), cfg).drone for _ in range(20)]
    b = [step(snap, VelocityCommand(0.0, 0.05), cfg).drone for _ in range(20)]
    assert [(p.x, p.y) for p in a] == [(p.x, p.y) for p in b]


def test_zero_noise_exactness_over_thousand_steps():
    world = airborne_world()
    for _ in range(1000):
        step(world, VelocityCommand(0.05, 0.02), ZERO_NOISE)
    assert abs(world.drone.x - 0.05 * 100.0) <= 1e-9
    assert abs(world.drone.y - (-0.02 * 100.0)) <= 1e-9
    assert world.time == 1000 * 0.1   # computed as n*dt, not accumulated


def test_time_accounting_is_exact():
    world = airborne_world()
    for n in range(1, 1001):
        step(world, VelocityCommand(0.0, 0.0, True), ZERO_NOISE)
        assert world.time == n * ZERO_NOISE.dt


def test_stability_guard_rejects_divergent_loop():
    with pytest.raises(ValueError):
        SimConfig(dt=10.0)   # 10 * 0.0005 * 320 / 1.0 = 1.6 >= 1
    with pytest.raises(ValueError):
        SimConfig(gains=ControllerGains(k=0.05))  # 0.1 * 0.05 * 320 = 1.6
    SimConfig(dt=0.1)  # default loop gain 0.016 is fine


def test_sim_config_validation():
    with pytest.raises(ValueError):
        SimConfig(dt=0.0)
    with pytest.raises(ValueError):
        SimConfig(altitude=0.0)
    with pytest.raises(ValueError):
        SimConfig(carrier_height=1.0, altitude=1.0)
    with pytest.raises(ValueError):
        NoiseModel(drift_std=-0.1)


def test_vertical_rate_and_ground_clamp():
    world = make_world(0, drone=Pose(0, 0, 0.0, 0))
    step(world, VelocityCommand(0, 0), ZERO_NOISE, vz=0.5)
    assert world.drone.z == pytest.approx(0.05)
    step(world, VelocityCommand(0, 0), ZERO_NOISE, vz=-2.0)
    assert world.drone.z == 0.0   # clamped


def test_capture_marker_below_is_centered_blob():
    world = airborne_world(markers=[Marker((0.0, 0.0), 0.0625, Color.PINK)])
    det = detect(capture(world, ZERO_NOISE), Color.PINK)
    assert det is not None
    assert (det.center.x, det.center.y) == (320.0, 180.0)


def test_capture_marker_beyond_footprint_invisible():
    # forward footprint is altitude*height/(2*focal) = 0.5625 m at 1 m
    world = airborne_world(markers=[Marker((2.0, 0.0), 0.06, Color.PINK)])
    frame = capture(world, ZERO_NOISE)
    assert detect(frame, Color.PINK) is None


def test_capture_includes_carrier_pad():
    world = airborne_world()   # carrier defaults to the drone's start
    det = detect(capture(world, ZERO_NOISE), Color.BLUE)
    assert det is not None
    assert (det.center.x, det.center.y) == (320.0, 180.0)


def test_capture_requires_airborne():
    world = make_world(0)
    with pytest.raises(GroundedError):
        capture(world, ZERO_NOISE)


def test_carrier_walks_its_waypoints():
    # speed 0.625 m/s at dt 0.1 gives a binary-exact 0.0625 m per step
    cfg = SimConfig(noise=NoiseModel.zero(), carrier_waypoints=((1.0, 0.0), (1.0, 0.5)),
                    carrier_speed=0.625)
    world = airborne_world()
    hover = VelocityCommand(0.0, 0.0, True)
    for _ in range(15):
        step(world, hover, cfg)
    assert world.carrier.x == pytest.approx(0.9375)
    step(world, hover, cfg)
    assert (world.carrier.x, world.carrier.y) == (1.0, 0.0)
    assert world.carrier_wp_index == 1
    for _ in range(8):
        step(world, hover, cfg)
    assert (world.carrier.x, world.carrier.y) == (1.0, 0.5)
    assert world.carrier_wp_index == 2
    step(world, hover, cfg)
    assert (world.carrier.x, world.carrier.y) == (1.0, 0.5)  # path done


def test_trajectory_csv_round_trip(tmp_path):
    rows = [
        TrajectoryRow(0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, "taking_off", "", None),
        TrajectoryRow(1, 0.1, 0.005, -0.002, 1.0, 0.05, -0.02, "searching:0", "", 100.0),
        TrajectoryRow(2, 0.2, 0.0100000001, 0.1 / 3, 1.0, 0.01, 0.0, "servoing:pink",
                      "pink", 82.46211251235321),
    ]
    path = tmp_path / "traj.csv"
    write_trajectory_csv(rows, path)
    header, raw = read_trajectory_csv(path)
    assert header == list(("step", "time_s", "drone_x", "drone_y", "drone_z",
                           "vel_fwd", "vel_right", "fsm_state", "detected_color", "err_px"))
    assert len(raw) == 3
    # repr round-trips floats exactly
    assert float(raw[2]["drone_y"]) == 0.1 / 3
    assert float(raw[2]["err_px"]) == 82.46211251235321
    assert raw[0]["err_px"] == ""
