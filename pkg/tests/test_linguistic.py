"""Unit and property tests for the 2-tuple linguistic core."""

import math

import pytest
from hypothesis import given, strategies as st

from fuzzydelphi.linguistic import (
    DEFAULT_HIERARCHY,
    ExtendedHierarchy,
    S3,
    S5,
    S7,
    S13,
    TermSet,
    TwoTuple,
    delta_inv,
    delta_of,
    from_label,
    transform,
    unified_level,
    weighted_extended_mean,
)

ATOL = 5e-4


class TestTermSet:
    def test_delta(self):
        assert S3.delta == 2
        assert S13.delta == 12

    @pytest.mark.parametrize("bad", [1, 0, -3])
    def test_rejects_degenerate_granularity(self, bad):
        with pytest.raises(ValueError):
            TermSet(bad)


class TestTwoTuple:
    def test_beta(self):
        assert TwoTuple(8, 0.2, 13).beta == pytest.approx(8.2)

    def test_rejects_out_of_range_index(self):
        with pytest.raises(ValueError):
            TwoTuple(13, 0.0, 13)
        with pytest.raises(ValueError):
            TwoTuple(-1, 0.0, 13)

    def test_rejects_alpha_outside_half_open_interval(self):
        with pytest.raises(ValueError):
            TwoTuple(4, 0.5, 13)
        with pytest.raises(ValueError):
            TwoTuple(4, -0.51, 13)

    def test_rejects_beta_overflow_at_boundary_labels(self):
        with pytest.raises(ValueError):
            TwoTuple(12, 0.3, 13)
        with pytest.raises(ValueError):
            TwoTuple(0, -0.3, 13)


class TestDeltaOf:
    def test_collective_opinion_of_case_study_item(self):
        # Mean of the four published per-criterion collectives.
        t = delta_of(9.2615, S13)
        assert t.index == 9
        assert t.alpha == pytest.approx(0.2615, abs=1e-12)

    def test_zero_is_identity(self):
        assert delta_of(0.0, S5) == TwoTuple(0, 0.0, 5)

    def test_reporting_scale_value(self):
        t = delta_of(5.893, S7)
        assert t.index == 6
        assert t.alpha == pytest.approx(-0.107, abs=1e-12)

    def test_tie_rounds_up(self):
        t = delta_of(2.5, S13)
        assert (t.index, t.alpha) == (3, -0.5)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError, match="beta"):
            delta_of(12.5, S13)
        with pytest.raises(ValueError, match="beta"):
            delta_of(-0.2, S13)

    def test_top_of_scale(self):
        assert delta_of(12.0, S13) == TwoTuple(12, 0.0, 13)


class TestDeltaInv:
    def test_worked_value(self):
        assert delta_inv(TwoTuple(8, 0.2, 13)) == pytest.approx(8.2)

    def test_zero(self):
        assert delta_inv(TwoTuple(0, 0.0, 13)) == 0.0

    def test_inverse_of_delta_of(self):
        assert delta_inv(delta_of(5.893, S7)) == pytest.approx(5.893, abs=1e-12)


class TestFromLabel:
    @pytest.mark.parametrize(
        "index,termset", [(1, S3), (0, S5), (6, S7)]
    )
    def test_label_promotion(self, index, termset):
        t = from_label(index, termset)
        assert (t.index, t.alpha, t.granularity) == (index, 0.0, termset.granularity)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            from_label(3, S3)


class TestTransform:
    # The three-scale unification worked example.
    @pytest.mark.parametrize(
        "index,source,expected",
        [(1, S3, 6), (3, S5, 9), (4, S7, 8)],
    )
    def test_unification_of_pure_labels(self, index, source, expected):
        t = transform(from_label(index, source), source, S13)
        assert (t.index, t.alpha) == (expected, 0.0)

    def test_retranslation_of_collective(self):
        z = TwoTuple(9, 0.2615, 13)
        score = transform(z, S13, S7)
        assert score.index == 5
        assert score.alpha == pytest.approx(-0.36925, abs=1e-12)

    def test_granularity_mismatch_rejected(self):
        with pytest.raises(ValueError, match="granularity"):
            transform(from_label(1, S3), S5, S13)


class TestWeightedExtendedMean:
    def test_single_criterion_worked_example(self):
        values = [TwoTuple(6, 0.0, 13), TwoTuple(9, 0.0, 13), TwoTuple(8, 0.0, 13)]
        t = weighted_extended_mean(values, [0.2, 0.6, 0.2])
        assert t.index == 8
        assert t.alpha == pytest.approx(0.2, abs=1e-9)

    def test_idempotent_on_equal_values(self):
        values = [TwoTuple(4, 0.0, 13)] * 5
        t = weighted_extended_mean(values, [0.3, 0.1, 0.25, 0.15, 0.2])
        assert t.index == 4
        assert t.alpha == pytest.approx(0.0, abs=1e-12)

    def test_clarity_column_of_case_study(self):
        betas = [12, 12, 12, 10, 8, 12, 12, 8, 12]
        weights = [0.121, 0.096, 0.089, 0.127, 0.115, 0.127, 0.115, 0.102, 0.108]
        t = weighted_extended_mean(
            [TwoTuple(b, 0.0, 13) for b in betas], weights
        )
        assert delta_inv(t) == pytest.approx(10.878, abs=ATOL)
        assert (t.index, round(t.alpha, 3)) == (11, -0.122)

    def test_rejects_empty_and_zero_weights(self):
        with pytest.raises(ValueError):
            weighted_extended_mean([], [])
        with pytest.raises(ValueError):
            weighted_extended_mean([TwoTuple(1, 0.0, 13)], [0.0])

    def test_rejects_mixed_granularities(self):
        with pytest.raises(ValueError):
            weighted_extended_mean(
                [TwoTuple(1, 0.0, 13), TwoTuple(1, 0.0, 7)], [1, 1]
            )


class TestUnifiedLevel:
    def test_default_family(self):
        assert unified_level({3, 5, 7}).granularity == 13

    def test_single_level(self):
        assert unified_level({3}).granularity == 3

    def test_two_levels(self):
        assert unified_level({3, 5}).granularity == 5

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            unified_level(set())


class TestExtendedHierarchy:
    def test_default(self):
        assert DEFAULT_HIERARCHY.unified == S13
        assert DEFAULT_HIERARCHY.reporting == S7

    def test_unify_knows_levels(self):
        h = ExtendedHierarchy.of((3, 5, 7))
        assert h.unify(from_label(2, S3)) == TwoTuple(12, 0.0, 13)
        with pytest.raises(ValueError):
            h.unify(TwoTuple(1, 0.0, 9))


# Property tests.  The bulk randomized suites required by the acceptance
# gate live in test_acceptance.py; these hypothesis runs catch edge cases
# through shrinking.

granularities = st.sampled_from([3, 5, 7, 13])


@given(g=granularities, data=st.data())
def test_round_trip_beta(g, data):
    beta = data.draw(
        st.floats(min_value=0.0, max_value=g - 1, allow_nan=False, allow_infinity=False)
    )
    ts = TermSet(g)
    t = delta_of(beta, ts)
    assert -0.5 <= t.alpha < 0.5
    assert abs(delta_inv(t) - beta) < 1e-12


@given(g=st.sampled_from([3, 5, 7]), data=st.data())
def test_modal_points_preserved(g, data):
    ts = TermSet(g)
    index = data.draw(st.integers(min_value=0, max_value=ts.delta))
    up = transform(from_label(index, ts), ts, S13)
    assert up.alpha == 0.0
    back = transform(up, S13, ts)
    assert back == from_label(index, ts)


@given(
    data=st.data(),
    n=st.integers(min_value=1, max_value=9),
)
def test_mean_is_convex_and_scale_invariant(data, n):
    betas = [
        data.draw(st.floats(min_value=0.0, max_value=12.0)) for _ in range(n)
    ]
    weights = [
        data.draw(st.floats(min_value=1e-6, max_value=10.0)) for _ in range(n)
    ]
    values = [delta_of(b, S13) for b in betas]
    t = weighted_extended_mean(values, weights)
    assert min(betas) - 1e-9 <= delta_inv(t) <= max(betas) + 1e-9
    scaled = weighted_extended_mean(values, [w * 37.5 for w in weights])
    assert abs(delta_inv(scaled) - delta_inv(t)) < 1e-12


@given(data=st.data(), n=st.integers(min_value=1, max_value=6))
def test_mean_monotone_in_any_input(data, n):
    betas = [data.draw(st.floats(min_value=0.0, max_value=11.0)) for _ in range(n)]
    weights = [data.draw(st.floats(min_value=0.01, max_value=1.0)) for _ in range(n)]
    base = delta_inv(
        weighted_extended_mean([delta_of(b, S13) for b in betas], weights)
    )
    k = data.draw(st.integers(min_value=0, max_value=n - 1))
    bump = data.draw(st.floats(min_value=0.0, max_value=12.0 - betas[k]))
    betas[k] += bump
    bumped = delta_inv(
        weighted_extended_mean([delta_of(b, S13) for b in betas], weights)
    )
    assert bumped >= base - 1e-9
