#!/usr/bin/env python3
"""How drift widens the return path: a seeded Monte-Carlo sweep.

Runs the search-and-return mission across several drift levels, many
seeds each, and measures the spread of the homing leg around the straight
out line.  With no drift the path back lies on the out path; the more the
vehicle drifts after finding the marker, the wider the bundle of return
paths gets.
"""

import numpy as np

from visnav import NoiseModel, default_scenario, path_spread, run

SEEDS = range(30)
LEVELS = (0.0, 0.005, 0.01, 0.02)

print(f"{'drift m/s':>10} {'runs':>5} {'mean spread m':>14} {'max spread m':>13} {'mean time s':>12}")
for drift in LEVELS:
    scenario = default_scenario(
        "return", noise=NoiseModel(drift_std=drift, takeoff_jitter_std=0.0))
    spreads = []
    times = []
    for seed in SEEDS:
        result = run(scenario.spec, scenario.make_world(seed), scenario.cfg)
        if result.success:
            spreads.append(path_spread(result.rows))
            times.append(result.elapsed_s)
    print(f"{drift:>10} {len(spreads):>5} {np.mean(spreads):>14.5f} "
          f"{np.max(spreads):>13.5f} {np.mean(times):>12.1f}")

print("\nspread grows with drift while the success rate stays put: the")
print("reversal only has to bring the home pad back into view, after which")
print("direct servoing absorbs the accumulated error.")
