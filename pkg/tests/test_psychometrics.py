import numpy as np
import pytest

from jndbem.psychometrics import (
    COMPARISON_DISTANCES,
    CurvePoint,
    PsychometricCurve,
    ResponseRecord,
    TrialSchedule,
    TrialSpec,
    analyze,
    build_schedule,
    estimate_jnd,
    isotonic_proportions,
    perfect_observer,
    responses_from_jsonl,
    responses_to_jsonl,
    schedule_from_json,
    schedule_to_json,
    sigma_for_jnd,
    simulate_observer,
)

from oracles import tally_oracle


def curve_from(proportions, n=20):
    points = tuple(
        CurvePoint(distance=d, n_trials=n, chose_comparison=round(p * n))
        for d, p in proportions.items()
    )
    return PsychometricCurve(points=points, by_side={})


class TestSchedule:
    def test_default_design_has_200_trials(self):
        sched = build_schedule(trials_per_condition=10, seed=0)
        assert len(sched) == 200
        counts = {}
        for t in sched.trials:
            key = (t.comparison_distance, t.comparison_side)
            counts[key] = counts.get(key, 0) + 1
        assert len(counts) == 20
        assert set(counts.values()) == {10}

    def test_single_repeat_gives_20_distinct_conditions(self):
        sched = build_schedule(trials_per_condition=1, seed=5)
        conds = {(t.comparison_distance, t.comparison_side) for t in sched.trials}
        assert len(sched) == 20 and len(conds) == 20

    def test_seed_determinism(self):
        a = build_schedule(10, seed=3)
        b = build_schedule(10, seed=3)
        c = build_schedule(10, seed=4)
        assert a.trials == b.trials
        assert a.trials != c.trials
        # different seeds still present the same multiset of conditions
        key = lambda s: sorted((t.comparison_distance, t.comparison_side) for t in s.trials)
        assert key(a) == key(c)

    def test_standard_distance_never_scheduled(self):
        sched = build_schedule(10, seed=0)
        assert all(t.comparison_distance != 10 for t in sched.trials)
        with pytest.raises(ValueError):
            TrialSpec(0, 10, "left")

    def test_requires_positive_repeats(self):
        with pytest.raises(ValueError):
            build_schedule(0, seed=0)

    def test_json_roundtrip(self):
        sched = build_schedule(3, seed=11)
        again = schedule_from_json(schedule_to_json(sched))
        assert again == sched


class TestAnalyze:
    def test_always_comparison_chooser(self):
        sched = build_schedule(2, seed=0)
        records = [ResponseRecord(t.trial_id, t.comparison_side) for t in sched.trials]
        curve = analyze(sched, records)
        assert all(p.proportion == 1.0 for p in curve.points)

    def test_perfect_observer_proportions(self):
        sched = build_schedule(5, seed=1)
        curve = analyze(sched, perfect_observer(sched))
        for p in curve.points:
            assert p.proportion == (1.0 if p.distance < 10 else 0.0)

    def test_matches_tally_oracle(self):
        sched = build_schedule(10, seed=2)
        records = simulate_observer(sched, sigma=2.0, lapse=0.05, seed=3)
        curve = analyze(sched, records)
        expected = tally_oracle(sched, records)
        for p in curve.points:
            chosen, n = expected[p.distance]
            assert (p.chose_comparison, p.n_trials) == (chosen, n)

    def test_sides_pool_and_report_separately(self):
        sched = build_schedule(4, seed=9)
        records = simulate_observer(sched, sigma=2.0, seed=1)
        curve = analyze(sched, records)
        for p in curve.points:
            lc, ln = curve.by_side["left"][p.distance]
            rc, rn = curve.by_side["right"][p.distance]
            assert (lc + rc, ln + rn) == (p.chose_comparison, p.n_trials)

    def test_unknown_trial_rejected(self):
        sched = build_schedule(1, seed=0)
        with pytest.raises(ValueError, match="unknown trial_id 999"):
            analyze(sched, [ResponseRecord(999, "left")])

    def test_duplicate_response_rejected(self):
        sched = build_schedule(1, seed=0)
        t = sched.trials[0].trial_id
        with pytest.raises(ValueError, match="duplicate"):
            analyze(sched, [ResponseRecord(t, "left"), ResponseRecord(t, "right")])

    def test_missing_distance_rejected(self):
        sched = build_schedule(2, seed=0)
        partial = [
            ResponseRecord(t.trial_id, t.comparison_side)
            for t in sched.trials
            if t.comparison_distance != 12
        ]
        with pytest.raises(ValueError, match="zero responses: 12"):
            analyze(sched, partial)

    def test_side_relabeling_leaves_curve_unchanged(self):
        sched = build_schedule(6, seed=4)
        records = simulate_observer(sched, sigma=2.0, seed=5)
        flip = lambda s: "left" if s == "right" else "right"
        flipped_sched = TrialSchedule(
            sched.trials_per_condition,
            sched.seed,
            tuple(
                TrialSpec(t.trial_id, t.comparison_distance, flip(t.comparison_side))
                for t in sched.trials
            ),
        )
        flipped_records = [
            ResponseRecord(r.trial_id, flip(r.chosen_side), r.timestamp_ms) for r in records
        ]
        a = analyze(sched, records)
        b = analyze(flipped_sched, flipped_records)
        assert [(p.distance, p.chose_comparison, p.n_trials) for p in a.points] == [
            (p.distance, p.chose_comparison, p.n_trials) for p in b.points
        ]
        assert estimate_jnd(a) == estimate_jnd(b)


class TestEstimate:
    def test_textbook_curve(self):
        curve = curve_from(
            {5: 1.0, 6: 1.0, 7: 0.95, 8: 0.75, 9: 0.55,
             11: 0.45, 12: 0.25, 13: 0.05, 14: 0.0, 15: 0.0}
        )
        est = estimate_jnd(curve)
        assert est.m == 8.0
        assert est.l == 12.0
        assert est.jnd == 2.0

    def test_perfect_observer_hits_design_resolution_floor(self):
        sched = build_schedule(10, seed=0)
        est = estimate_jnd(analyze(sched, perfect_observer(sched)))
        assert est.m == 9.5
        assert est.l == 10.5
        assert est.jnd == 0.5

    def test_interpolated_crossing(self):
        curve = curve_from(
            {5: 1.0, 6: 1.0, 7: 0.9, 8: 0.6, 9: 0.55,
             11: 0.45, 12: 0.3, 13: 0.1, 14: 0.0, 15: 0.0}
        )
        est = estimate_jnd(curve)
        assert est.m == pytest.approx(7 + (0.9 - 0.75) / (0.9 - 0.6))

    def test_flat_run_at_threshold_takes_midpoint(self):
        curve = curve_from(
            {5: 1.0, 6: 1.0, 7: 0.75, 8: 0.75, 9: 0.75,
             11: 0.45, 12: 0.25, 13: 0.05, 14: 0.0, 15: 0.0}
        )
        assert estimate_jnd(curve).m == 8.0

    def test_isotonic_cleanup_preserves_monotone_curves(self):
        props = {5: 1.0, 6: 0.9, 7: 0.9, 8: 0.7, 9: 0.6,
                 11: 0.4, 12: 0.3, 13: 0.1, 14: 0.05, 15: 0.0}
        curve = curve_from(props)
        assert isotonic_proportions(curve) == list(props.values())

    def test_isotonic_cleanup_pools_violations(self):
        curve = curve_from({5: 1.0, 6: 0.8, 7: 0.9, 8: 0.7, 9: 0.6,
                            11: 0.4, 12: 0.3, 13: 0.1, 14: 0.0, 15: 0.0})
        cleaned = isotonic_proportions(curve)
        assert all(a >= b for a, b in zip(cleaned, cleaned[1:]))
        assert cleaned[1] == cleaned[2] == pytest.approx(0.85)

    def test_unbracketed_curve_rejected(self):
        flat = curve_from({d: 0.5 for d in COMPARISON_DISTANCES})
        with pytest.raises(ValueError, match="bracket"):
            estimate_jnd(flat)


class TestSimulatedObserver:
    def test_deterministic_per_seed(self):
        sched = build_schedule(10, seed=0)
        a = simulate_observer(sched, sigma=2.0, lapse=0.02, seed=6)
        b = simulate_observer(sched, sigma=2.0, lapse=0.02, seed=6)
        assert a == b

    def test_tiny_sigma_acts_perfectly(self):
        sched = build_schedule(3, seed=0)
        assert simulate_observer(sched, sigma=0.01, lapse=0.0, seed=1) == perfect_observer(sched)

    def test_sigma_for_jnd_places_quartile_points(self):
        from scipy.stats import norm

        for lapse in (0.0, 0.02, 0.1):
            sigma = sigma_for_jnd(2.0, lapse)
            p75 = lapse / 2 + (1 - lapse) * norm.cdf((10 - 8) / (sigma * np.sqrt(2)))
            p25 = lapse / 2 + (1 - lapse) * norm.cdf((10 - 12) / (sigma * np.sqrt(2)))
            assert p75 == pytest.approx(0.75, abs=1e-12)
            assert p25 == pytest.approx(0.25, abs=1e-12)

    def test_recovers_target_threshold_on_average(self):
        sigma = sigma_for_jnd(2.0, lapse=0.02)
        estimates = []
        for seed in range(30):
            sched = build_schedule(10, seed=seed)
            records = simulate_observer(sched, sigma, lapse=0.02, seed=seed + 10_000)
            estimates.append(estimate_jnd(analyze(sched, records)).jnd)
        assert 1.6 <= float(np.mean(estimates)) <= 2.4

    def test_parameter_validation(self):
        sched = build_schedule(1, seed=0)
        with pytest.raises(ValueError):
            simulate_observer(sched, sigma=0.0)
        with pytest.raises(ValueError):
            simulate_observer(sched, sigma=1.0, lapse=0.5)


class TestLogFormats:
    def test_jsonl_roundtrip(self):
        sched = build_schedule(2, seed=0)
        records = perfect_observer(sched)
        text = responses_to_jsonl(records)
        assert responses_from_jsonl(text) == records

    def test_line_shape(self):
        text = responses_to_jsonl([ResponseRecord(17, "left", 1234)])
        assert text == '{"chosen_side": "left", "timestamp_ms": 1234, "trial_id": 17}\n'

    def test_meta_first_line_skipped(self):
        text = (
            '{"meta": {"schedule_seed": 0, "display": {"device_pixel_ratio": 1}}}\n'
            '{"trial_id": 2, "chosen_side": "right", "timestamp_ms": 5}\n'
        )
        records = responses_from_jsonl(text)
        assert records == [ResponseRecord(2, "right", 5)]

    def test_bad_json_line_reported_with_number(self):
        with pytest.raises(ValueError, match="line 2"):
            responses_from_jsonl('{"trial_id": 1, "chosen_side": "left"}\n{oops\n')
