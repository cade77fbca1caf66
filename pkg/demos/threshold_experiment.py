"""
Measuring the displacement threshold with a simulated subject
=============================================================

The forced-choice design: a reference line, a constant flanker at 10 px,
and a comparison flanker at 5..15 px (never 10, so there is no tie).  The
subject picks the closer side on every trial.  Analysis pools left/right
presentations into one curve of "comparison chosen" proportions, and the
threshold is half the distance between the 25% and 75% points.
"""

import numpy as np

from jndbem import (
    analyze,
    build_schedule,
    estimate_jnd,
    perfect_observer,
    sigma_for_jnd,
    simulate_observer,
)

schedule = build_schedule(trials_per_condition=10, seed=0)
print(f"schedule: {len(schedule)} trials, 20 conditions x {schedule.trials_per_condition}")

# a noisy observer whose true threshold is 2 px, with a 2% lapse rate
sigma = sigma_for_jnd(2.0, lapse=0.02)
records = simulate_observer(schedule, sigma=sigma, lapse=0.02, seed=7)
curve = analyze(schedule, records)

print()
print("distance   chosen/n   proportion")
for p in curve.points:
    bar = "#" * int(round(p.proportion * 30))
    print(f"{p.distance:>8}   {p.chose_comparison:>3}/{p.n_trials:<4}  {p.proportion:6.2f}  {bar}")

est = estimate_jnd(curve)
print()
print(f"75% point M = {est.m:.2f} px, 25% point L = {est.l:.2f} px")
print(f"estimated threshold (L - M) / 2 = {est.jnd:.2f} px")

# averaging across many simulated sessions tightens the estimate
estimates = [
    estimate_jnd(analyze(schedule, simulate_observer(schedule, sigma, 0.02, seed=s))).jnd
    for s in range(60)
]
print(f"mean over 60 sessions: {np.mean(estimates):.3f} px (sd {np.std(estimates):.3f})")

# an error-free subject bottoms out at the design's resolution floor
floor = estimate_jnd(analyze(schedule, perfect_observer(schedule)))
print(f"perfect observer: {floor.jnd} px (the tightest value this design can report)")
