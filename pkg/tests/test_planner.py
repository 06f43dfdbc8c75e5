import math

import pytest
from hypothesis import given, settings, strategies as st

from aoisim.aging import AgingKind
from aoisim.channel import ChannelModel, outage_probability
from aoisim.planner import TransmissionPlan, compositions, plan_message


def expected_slots_of(splits, model):
    return sum(1.0 / (1.0 - outage_probability(model, 0, r)) for r in splits)


def test_compositions_enumerate_ordered_splits():
    got = sorted(compositions(3, 3))
    assert got == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert list(compositions(0, 5)) == [()]
    assert sorted(compositions(4, 2)) == [(1, 1, 1, 1), (1, 1, 2), (1, 2, 1),
                                          (2, 1, 1), (2, 2)]


def test_single_rb_plan_is_trivial():
    model = ChannelModel(mean_snr=100.0, epsilon=1.0)
    plan = plan_message(1, AgingKind.LINEAR, model, 0, 50, 10, 4)
    assert plan.splits == (1,)
    assert plan.expected_slots == pytest.approx(1.0 / (1.0 - 0.00995), abs=1e-6)
    assert plan.expected_aoi == pytest.approx(10 + plan.expected_slots - 4)


def test_low_outage_plans_send_everything_at_once():
    model = ChannelModel(mean_snr=100.0, epsilon=1.0)
    for n in range(1, 7):
        assert plan_message(n, AgingKind.LINEAR, model, 0, 50, 1, 0).splits == (n,)


def test_high_outage_plans_spread_out():
    # with epsilon comparable to the SNR, bundling RBs is expensive
    model = ChannelModel(mean_snr=2.0, epsilon=1.0)
    plan = plan_message(6, AgingKind.LINEAR, model, 0, 50, 1, 0)
    assert len(plan.splits) > 1
    assert sum(plan.splits) == 6


def test_split_is_kind_independent():
    model = ChannelModel(mean_snr=10.0, epsilon=2.0)
    for n in range(1, 7):
        lin = plan_message(n, AgingKind.LINEAR, model, 0, 50, 5, 0)
        exp = plan_message(n, AgingKind.EXPONENTIAL, model, 0, 50, 5, 0)
        assert lin.splits == exp.splits
        assert lin.expected_slots == exp.expected_slots


def test_exponential_expected_aoi_saturates():
    model = ChannelModel(mean_snr=100.0, epsilon=1.0)
    plan = plan_message(1, AgingKind.EXPONENTIAL, model, 0, 50, 2000, 0)
    assert plan.expected_aoi == math.inf


def test_demand_out_of_range_rejected():
    model = ChannelModel(mean_snr=100.0, epsilon=1.0)
    with pytest.raises(ValueError):
        plan_message(0, AgingKind.LINEAR, model, 0, 50, 1, 0)
    with pytest.raises(ValueError):
        plan_message(51, AgingKind.LINEAR, model, 0, 50, 1, 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=6),
       st.sampled_from([0.1, 1.0, 5.0, 20.0]),
       st.sampled_from([10.0, 100.0]))
def test_plan_beats_every_other_composition(n, epsilon, snr):
    """The chosen split must minimize expected completion over the full space."""
    model = ChannelModel(mean_snr=snr, epsilon=epsilon)
    plan = plan_message(n, AgingKind.LINEAR, model, 0, 50, 1, 0)
    assert sum(plan.splits) == n
    best = min(expected_slots_of(s, model) for s in compositions(n, 50))
    assert plan.expected_slots == pytest.approx(best, rel=1e-12)
