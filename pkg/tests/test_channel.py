import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from aoisim.channel import (ChannelModel, Outcome, RbAssignment,
                            epsilon_for_outage, outage_probability, resolve_slot,
                            sample_heterogeneous_snr, snr_db_to_linear)


def test_snr_conversion():
    assert snr_db_to_linear(20.0) == pytest.approx(100.0)
    assert snr_db_to_linear(0.0) == pytest.approx(1.0)


def test_single_rb_outage_at_reference_point():
    # 20 dB mean SNR and unit threshold: 1 - exp(-1/100)
    model = ChannelModel(mean_snr=100.0, epsilon=1.0)
    assert outage_probability(model, 0, 1) == pytest.approx(0.00995, abs=5e-6)


def test_outage_grows_with_simultaneous_rbs():
    model = ChannelModel(mean_snr=100.0, epsilon=1.0)
    probs = [outage_probability(model, 0, r) for r in (1, 2, 4, 8)]
    assert probs == sorted(probs)
    with pytest.raises(ValueError):
        outage_probability(model, 0, 0)


def test_epsilon_for_outage_round_trip():
    eps = epsilon_for_outage(0.05, 20.0)
    model = ChannelModel(mean_snr=100.0, epsilon=eps)
    assert outage_probability(model, 0, 1) == pytest.approx(0.05)
    with pytest.raises(ValueError):
        epsilon_for_outage(1.0, 20.0)


def test_per_device_snr_override():
    model = ChannelModel(mean_snr=100.0, epsilon=1.0,
                         per_device_mean_snr={3: 50.0})
    assert model.snr_for(3) == 50.0
    assert model.snr_for(4) == 100.0
    assert outage_probability(model, 3, 1) > outage_probability(model, 4, 1)


def test_duplicate_rb_fails_every_claimant():
    model = ChannelModel(mean_snr=100.0, epsilon=0.0)
    assignment = RbAssignment(1, ((0, frozenset({5})), (1, frozenset({5})),
                                  (2, frozenset({6}))))
    u = np.full(3, 0.99)
    outcomes = resolve_slot(assignment, model, u)
    assert outcomes[0] is Outcome.DUPLICATE_FAILURE
    assert outcomes[1] is Outcome.DUPLICATE_FAILURE
    assert outcomes[2] is Outcome.SUCCESS


def test_partial_overlap_fails_the_whole_transmission():
    # multi-RB transmissions succeed or fail as a unit
    model = ChannelModel(mean_snr=100.0, epsilon=0.0)
    assignment = RbAssignment(1, ((0, frozenset({1, 2})), (1, frozenset({2, 3}))))
    outcomes = resolve_slot(assignment, model, np.ones(2) * 0.5)
    assert outcomes[0] is Outcome.DUPLICATE_FAILURE
    assert outcomes[1] is Outcome.DUPLICATE_FAILURE


def test_outage_uses_own_uniform():
    model = ChannelModel(mean_snr=100.0, epsilon=1.0)
    p = outage_probability(model, 0, 1)
    assignment = RbAssignment(1, ((0, frozenset({1})), (1, frozenset({2}))))
    u = np.array([p * 0.5, p * 2.0])
    outcomes = resolve_slot(assignment, model, u)
    assert outcomes[0] is Outcome.OUTAGE_FAILURE
    assert outcomes[1] is Outcome.SUCCESS


def test_assignment_validation():
    with pytest.raises(ValueError):
        RbAssignment(1, ((0, frozenset({1})), (0, frozenset({2}))))
    with pytest.raises(ValueError):
        RbAssignment(1, ((0, frozenset()),))


def test_heterogeneous_snr_range():
    rng = np.random.default_rng(0)
    snrs = sample_heterogeneous_snr(list(range(1000)), 17.0, 21.8, rng)
    low, high = snr_db_to_linear(17.0), snr_db_to_linear(21.8)
    assert all(low <= v <= high for v in snrs.values())
    assert len(snrs) == 1000


@given(st.lists(st.tuples(st.integers(0, 19), st.sets(st.integers(1, 10),
                                                      min_size=1, max_size=3)),
                min_size=1, max_size=12, unique_by=lambda e: e[0]),
       st.integers(0, 2**32 - 1))
def test_every_transmitter_gets_exactly_one_outcome(entries, seed):
    model = ChannelModel(mean_snr=100.0, epsilon=1.0)
    assignment = RbAssignment(1, tuple((i, frozenset(rbs)) for i, rbs in entries))
    u = np.random.default_rng(seed).random(20)
    outcomes = resolve_slot(assignment, model, u)
    assert set(outcomes) == {i for i, _ in entries}
    claimed = {}
    for i, rbs in entries:
        for rb in rbs:
            claimed.setdefault(rb, []).append(i)
    for i, rbs in entries:
        shared = any(len(claimed[rb]) > 1 for rb in rbs)
        if shared:
            assert outcomes[i] is Outcome.DUPLICATE_FAILURE
        else:
            assert outcomes[i] in (Outcome.SUCCESS, Outcome.OUTAGE_FAILURE)
            expected_fail = u[i] < outage_probability(model, i, len(rbs))
            assert (outcomes[i] is Outcome.OUTAGE_FAILURE) == expected_fail


def test_model_rejects_bad_parameters():
    with pytest.raises(ValueError):
        ChannelModel(mean_snr=0.0)
    with pytest.raises(ValueError):
        ChannelModel(mean_snr=1.0, epsilon=-0.1)
