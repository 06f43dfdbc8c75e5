"""Optimal split of a multi-RB message across slots.

A message needing n RBs can send them all at once (one slot, higher outage),
one per slot (n slots, lower outage per slot), or any mix. Each segment of r
simultaneous RBs lasts 1/(1-p(r)) slots in expectation, so a candidate split
is a composition of n and its cost is the message age at the expected finish
time. Both aging kinds are strictly increasing in time, so the minimizer of
expected finish time minimizes the age regardless of kind; plans therefore
cache on (n, snr, epsilon) only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .aging import AgingKind
from .channel import ChannelModel, outage_probability


@dataclass(frozen=True)
class TransmissionPlan:
    splits: tuple[int, ...]
    expected_slots: float
    expected_aoi: float


def compositions(n: int, max_part: int):
    """All ordered sequences of parts in 1..max_part summing to n."""
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in compositions(n - first, max_part):
            yield (first,) + rest


@lru_cache(maxsize=4096)
def _best_split(n: int, snr: float, epsilon: float, max_part: int) -> tuple[tuple[int, ...], float]:
    model = ChannelModel(mean_snr=snr, epsilon=epsilon)
    best = None
    best_key = None
    for splits in compositions(n, max_part):
        expected = 0.0
        for r in splits:
            p = outage_probability(model, -1, r)
            if p >= 1.0:
                expected = float("inf")
                break
            expected += 1.0 / (1.0 - p)
        # ties: fewer slots first, then lexicographically largest first split
        key = (expected, len(splits), tuple(-r for r in splits))
        if best_key is None or key < best_key:
            best_key = key
            best = (splits, expected)
    return best


def plan_message(n_i: int, aging: AgingKind, model: ChannelModel, device_id: int,
                 R: int, tau: int, delta: int) -> TransmissionPlan:
    """Pick the composition of n_i minimizing the message age at expected completion.

    Enumerates every composition of n_i into parts of at most R (the split
    space is small for the n_i <= R regimes simulated here). Zero-RB slots
    only postpone completion under a strictly increasing aging function, so
    they are never candidates.
    """
    if n_i < 1 or n_i > R:
        raise ValueError(f"n_i must be in 1..R, got {n_i} with R={R}")
    splits, expected_slots = _best_split(n_i, model.snr_for(device_id), model.epsilon, R)
    # age at the (generally fractional) expected finish time
    exponent = (tau + expected_slots) - delta
    if aging is AgingKind.LINEAR:
        expected_aoi = exponent
    elif exponent - 1 > 1023:
        expected_aoi = float("inf")
    else:
        expected_aoi = 2.0 ** (exponent - 1)
    return TransmissionPlan(splits=splits, expected_slots=expected_slots,
                            expected_aoi=expected_aoi)
