import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from jndbem.matching import MatchConfig, partition
from jndbem.measures import (
    MeasureParams,
    MosTable,
    Score,
    get_measure,
    jndbem,
    normalize_mos,
    pearson,
    pratt_fom,
    register_measure,
    spearman,
)
from jndbem.raster import EdgeMap

from conftest import random_edge_map
from oracles import pearson_oracle, score_from_naive_partition

ALPHA = 1.0 / 9.0


def edge_map(w, h, pts):
    return EdgeMap(w, h, frozenset(pts))


class TestJndbem:
    def test_perfect_match_is_exactly_one(self, rng):
        for _ in range(20):
            m = random_edge_map(rng, 12, 12, 30, nonempty=True)
            assert jndbem(m, m).value == 1.0

    def test_sub_threshold_displacement_unpenalized(self):
        score = jndbem(edge_map(20, 20, {(5, 5)}), edge_map(20, 20, {(6, 5)}))
        assert score.value == 1.0
        assert score.breakdown["under_jnd"] == 1

    def test_displacement_three_scores_half(self):
        score = jndbem(edge_map(20, 20, {(5, 5)}), edge_map(20, 20, {(8, 5)}))
        assert abs(score.value - 0.5) < 1e-12

    def test_spurious_pixel_dilutes_denominator(self):
        score = jndbem(edge_map(10, 20, {(5, 5)}), edge_map(10, 20, {(5, 5), (5, 15)}))
        assert score.value == 0.5
        assert score.breakdown["spurious"] == 1

    def test_both_empty_is_vacuous_match(self):
        assert jndbem(edge_map(4, 4, set()), edge_map(4, 4, set())).value == 1.0

    def test_one_empty_is_total_failure(self):
        full = edge_map(4, 4, {(1, 1)})
        empty = edge_map(4, 4, set())
        assert jndbem(full, empty).value == 0.0
        assert jndbem(empty, full).value == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            jndbem(edge_map(4, 4, set()), edge_map(5, 4, set()))

    def test_matches_from_scratch_evaluation_on_200_seeded_maps(self):
        rng = np.random.default_rng(99)
        params = MeasureParams()
        for _ in range(200):
            w = int(rng.integers(1, 13))
            h = int(rng.integers(1, 13))
            gt = random_edge_map(rng, w, h, 8)
            dc = random_edge_map(rng, w, h, 8)
            expected = score_from_naive_partition(gt, dc, params.alpha)
            assert jndbem(gt, dc, params).value == expected

    @pytest.mark.parametrize("d", [0, 1, 2, 3, 4, 5, 6, 7, 8, 9])
    def test_single_pixel_distance_response(self, d):
        gt = edge_map(40, 40, {(15, 20)})
        dc = edge_map(40, 40, {(15 + d, 20)})
        value = jndbem(gt, dc).value
        if d < 2:
            assert value == 1.0
        else:
            assert abs(value - 1.0 / (1.0 + ALPHA * d * d)) < 1e-12

    def test_distance_monotonic(self):
        values = []
        for d in range(0, 10):
            gt = edge_map(40, 40, {(15, 20)})
            dc = edge_map(40, 40, {(15 + d, 20)})
            values.append(jndbem(gt, dc).value)
        assert all(a >= b for a, b in zip(values, values[1:]))

    def test_far_spurious_never_helps(self, rng):
        for _ in range(20):
            gt = random_edge_map(rng, 24, 24, 10, nonempty=True)
            gt = EdgeMap(24, 24, frozenset({(x % 10, y % 10) for (x, y) in gt.edges}))
            dc0 = random_edge_map(rng, 24, 24, 10)
            dc0 = EdgeMap(24, 24, frozenset({(x % 12, y % 12) for (x, y) in dc0.edges}))
            before = jndbem(gt, dc0).value
            dc1 = EdgeMap(24, 24, dc0.edges | {(23, 23)})
            assert jndbem(gt, dc1).value <= before

    def test_under_jnd_contribution_dominates_distance_weight(self, rng):
        params = MeasureParams()
        for _ in range(20):
            gt = random_edge_map(rng, 12, 12, 8)
            dc = random_edge_map(rng, 12, 12, 8)
            part = partition(gt, dc, params.match)
            for pair in part.under_jnd:
                assert 1.0 >= 1.0 / (1.0 + params.alpha * pair.distance ** 2)

    @given(seed=st.integers(0, 2**31))
    @settings(max_examples=60, deadline=None)
    def test_score_stays_in_unit_interval(self, seed):
        rng = np.random.default_rng(seed)
        gt = random_edge_map(rng, 10, 10, 12)
        dc = random_edge_map(rng, 10, 10, 12)
        assert 0.0 <= jndbem(gt, dc).value <= 1.0
        assert 0.0 <= pratt_fom(gt, dc).value <= 1.0


class TestPrattFom:
    def test_perfect_match(self, rng):
        for _ in range(10):
            m = random_edge_map(rng, 10, 10, 20, nonempty=True)
            assert pratt_fom(m, m).value == 1.0

    def test_displacement_three(self):
        score = pratt_fom(edge_map(20, 20, {(5, 5)}), edge_map(20, 20, {(8, 5)}))
        assert abs(score.value - 0.5) < 1e-12

    def test_penalizes_sub_threshold_displacement(self):
        # the contrast with the perceptual measure: d=1 already costs 10%
        gt = edge_map(20, 20, {(5, 5)})
        dc = edge_map(20, 20, {(6, 5)})
        assert abs(pratt_fom(gt, dc).value - 0.9) < 1e-12
        assert jndbem(gt, dc).value == 1.0

    def test_empty_map_rules(self):
        full = edge_map(4, 4, {(2, 2)})
        empty = edge_map(4, 4, set())
        assert pratt_fom(empty, empty).value == 1.0
        assert pratt_fom(full, empty).value == 0.0
        assert pratt_fom(empty, full).value == 0.0

    def test_one_only_when_counts_match(self):
        # every detected pixel on gt but a pixel short: score < 1
        gt = edge_map(10, 10, {(1, 1), (2, 1)})
        dc = edge_map(10, 10, {(1, 1)})
        assert pratt_fom(gt, dc).value == 0.5


class TestMos:
    def test_all_tens(self):
        assert normalize_mos(MosTable((("a", 10), ("b", 10)))) == 1.0

    def test_all_ones(self):
        assert normalize_mos(MosTable((("a", 1), ("b", 1)))) == 0.0

    def test_mixed(self):
        assert normalize_mos(MosTable((("a", 4), ("a", 7)))) == pytest.approx(0.5, abs=1e-12)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            normalize_mos(MosTable(()))

    def test_rating_range_enforced(self):
        with pytest.raises(ValueError):
            MosTable((("a", 11),))
        with pytest.raises(ValueError):
            MosTable((("a", 0.5),))

    def test_csv_parsing(self):
        table = MosTable.from_csv("id,rating\nsobel,7\ncanny,9.5\nsobel,5\n")
        assert table.ids() == ["canny", "sobel"]
        assert normalize_mos(table.for_id("canny")) == pytest.approx((9.5 - 1) / 9)
        assert len(table.for_id("sobel").rows) == 2

    def test_csv_header_enforced(self):
        with pytest.raises(ValueError, match="header"):
            MosTable.from_csv("name,score\na,5\n")

    def test_missing_id(self):
        with pytest.raises(ValueError, match="prewitt"):
            MosTable.from_csv("id,rating\nsobel,7\n").for_id("prewitt")


class TestCorrelation:
    def test_pearson_identity(self):
        assert pearson((1, 2, 3), (1, 2, 3)) == pytest.approx(1.0)

    def test_pearson_reversal(self):
        assert pearson((1, 2, 3), (3, 2, 1)) == pytest.approx(-1.0)

    def test_pearson_fixture(self):
        xs, ys = (1, 2, 3, 4), (2, 4, 5, 4)
        expected = 0.7181848464596078  # frozen from the covariance/sigma oracle
        assert pearson(xs, ys) == pytest.approx(expected, abs=1e-12)
        assert pearson(xs, ys) == pytest.approx(pearson_oracle(xs, ys), abs=1e-12)

    def test_pearson_zero_variance(self):
        with pytest.raises(ValueError, match="undefined"):
            pearson((1, 1, 1), (1, 2, 3))

    def test_pearson_needs_two_points(self):
        with pytest.raises(ValueError):
            pearson((1,), (2,))

    def test_spearman_monotone(self):
        assert spearman((1, 2, 3, 10), (2, 20, 30, 31)) == pytest.approx(1.0)

    def test_spearman_reversed(self):
        assert spearman((1, 2, 3), (9, 5, 1)) == pytest.approx(-1.0)

    def test_spearman_with_tie(self):
        # xs has one tie; average ranks (1, 2.5, 2.5, 4, 5) vs (1..5),
        # frozen from the rank-then-pearson oracle
        assert spearman((1, 2, 2, 3, 4), (1, 2, 3, 4, 5)) == pytest.approx(
            0.9746794344808964, abs=1e-12
        )


class TestExtensionPoint:
    def test_register_and_lookup(self):
        def always_half(gt, dc, params):
            return Score(0.5, {})

        register_measure("half", always_half)
        try:
            m = edge_map(4, 4, {(1, 1)})
            assert get_measure("half")(m, m, MeasureParams()).value == 0.5
        finally:
            from jndbem.measures import MEASURES
            del MEASURES["half"]

    def test_unknown_measure(self):
        with pytest.raises(ValueError, match="unknown measure"):
            get_measure("nope")

    def test_builtins_present(self):
        assert get_measure("jndbem") is not None
        assert get_measure("fom") is not None
