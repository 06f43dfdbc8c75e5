"""Time-slotted simulation loop binding devices, channel, and an allocation stack.

Slot structure: devices active at the start of a slot contend for RBs, the
channel resolves, completed messages are delivered and recorded, and only
then do idle devices draw fresh activations (generation slot = current
slot). A new message is therefore first transmitted one slot after its
generation and every delivery age is at least 1. Activation draws also run
once before the first slot (generation slot 0), so with v_a = 1 the cell is
busy from slot 1 on.

Static draws (positions, latent types, per-device SNR) come from one
generator seeded with the scenario seed. Every in-loop draw instead comes
from a uniform vector keyed by (seed, slot, phase) and indexed by device id,
so equal configs give byte-identical results and runs that share a seed but
differ in mode see identical device-level randomness (common random
numbers); mode comparisons on matched seeds then differ only where the
allocation decisions actually differ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from enum import Enum

import numpy as np

from .aging import AgingKind
from .centralized import (RachConfig, TypeLearner, UplinkRequest, Variant,
                          identify_aging, learn_type, rach_phase, schedule)
from .channel import (ChannelModel, Outcome, RbAssignment, resolve_slot,
                      sample_heterogeneous_snr, snr_db_to_linear)
from .devices import (AoiClock, Device, activate, current_aoi, deliver_success,
                      future_aoi, make_devices)
from .distributed import (GameParams, NeighborhoodView, delegate_target,
                          kth_largest, predetermined_actions, sca_step)
from .planner import plan_message


# draw phases within a slot; the (seed, slot, phase) triple seeds one vector
_PH_ACTIVATE = 0
_PH_KIND = 1
_PH_SIZE = 2
_PH_RACH = 3
_PH_OUTAGE = 4
_PH_DECIDE = 5
_PH_FRESH = 6
_PH_DELEGATE = 7


class SlotDraws:
    """Per-slot uniform vectors, one entry per device.

    vec(slot, phase) is a pure function of (seed, slot, phase), so a device
    keeps its draw across modes run with the same seed even when the modes
    consume different phases or diverge in state.
    """

    __slots__ = ("_seed", "_n")

    def __init__(self, seed: int, n_devices: int):
        self._seed = seed
        self._n = n_devices

    def vec(self, slot: int, phase: int) -> np.ndarray:
        ss = np.random.SeedSequence([self._seed, slot, phase])
        return np.random.default_rng(ss).random(self._n)


class Mode(Enum):
    CENTRALIZED_NO_LEARNING = "centralized_no_learning"
    CENTRALIZED_LEARNING = "centralized_learning"
    CENTRALIZED_FULL_INFO = "centralized_full_info"
    DISTRIBUTED_SCA = "distributed_sca"
    DISTRIBUTED_RANDOM = "distributed_random"
    DISTRIBUTED_PREDETERMINED = "distributed_predetermined"

    @property
    def centralized(self) -> bool:
        return self in (Mode.CENTRALIZED_NO_LEARNING, Mode.CENTRALIZED_LEARNING,
                        Mode.CENTRALIZED_FULL_INFO)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    n_devices: int = 50
    n_rbs: int = 50
    slots: int = 1000
    mode: Mode = Mode.DISTRIBUTED_SCA
    seed: int = 0
    v_a: float = 0.35
    m1: float = 0.75
    m2: float = 0.75
    type1_fraction: float = 0.6
    mean_snr_db: float = 20.0
    heterogeneous_power: bool = False
    hetero_snr_low_db: float = 17.0
    hetero_snr_high_db: float = 21.8
    epsilon: float = 1.0
    beta: int = 1
    preambles: int = 64
    rach_exact: bool = False
    n_rbs_max: int = 1            # per-message RB demand uniform on {n_rbs_min..n_rbs_max}
    n_rbs_min: int = 1
    rho: float = 2.0
    gamma: float = 1.0
    eta: float = 0.5
    zeta: float = 1.2
    r_c: float = 15.0
    width: float = 10.0
    length: float = 10.0
    warmup_fraction: float = 0.1
    trace: bool = False

    def validate(self) -> None:
        checks = [
            (self.n_devices >= 1, "n_devices must be >= 1"),
            (self.n_rbs >= 1, "n_rbs must be >= 1"),
            (self.slots >= 1, "slots must be >= 1"),
            (self.seed >= 0, "seed must be >= 0"),
            (0.0 <= self.v_a <= 1.0, "v_a must be in [0,1]"),
            (0.5 < self.m1 < 1.0, "m1 must be in (0.5, 1)"),
            (0.5 < self.m2 < 1.0, "m2 must be in (0.5, 1)"),
            (0.0 <= self.type1_fraction <= 1.0, "type1_fraction must be in [0,1]"),
            (self.epsilon >= 0.0, "epsilon must be >= 0"),
            (self.beta >= 1, "beta must be >= 1"),
            (self.preambles >= 1, "preambles must be >= 1"),
            (self.n_rbs_max >= 1, "n_rbs_max must be >= 1"),
            (self.n_rbs_max <= self.n_rbs, "n_rbs_max cannot exceed n_rbs"),
            (1 <= self.n_rbs_min <= self.n_rbs_max,
             "need 1 <= n_rbs_min <= n_rbs_max"),
            (self.rho > self.gamma > 0, "need rho > gamma > 0"),
            (0.0 < self.eta < 1.0, "eta must be in (0,1)"),
            (self.zeta > 0, "zeta must be positive"),
            (self.r_c >= 0, "r_c must be >= 0"),
            (self.width > 0 and self.length > 0, "cell dimensions must be positive"),
            (0.0 <= self.warmup_fraction < 1.0, "warmup_fraction must be in [0,1)"),
            (isinstance(self.mode, Mode), "mode must be a Mode"),
        ]
        for ok, message in checks:
            if not ok:
                raise ConfigError(message)
        if not self.mode.centralized and self.n_rbs_max != 1:
            raise ConfigError("multi-RB messages are a centralized-only feature")

    def game_params(self) -> GameParams:
        return GameParams(rho=self.rho, gamma=self.gamma, eta=self.eta,
                          zeta=self.zeta, r_c=self.r_c)


@dataclass(frozen=True)
class SlotRecord:
    slot: int
    avg_inst_aoi_slot: float | None
    avg_inst_aoi_cum: float | None
    service_rate: float
    n_active: int
    n_transmitting: int
    rach_failures: int
    duplicate_failures: int
    outage_failures: int


@dataclass(frozen=True)
class RunSummary:
    slots: int
    warmup_slots: int
    deliveries: int
    deliveries_postwarmup: int
    mean_delivery_aoi: float | None
    mean_delivery_aoi_postwarmup: float | None
    mean_service_rate: float
    mean_service_rate_postwarmup: float
    rach_failures: int
    duplicate_failures: int
    outage_failures: int


@dataclass
class RunResult:
    config: ScenarioConfig
    records: list[SlotRecord]
    summary: RunSummary
    trace: dict | None = None


def _safe_mean(total, count) -> float | None:
    """Mean of exact integer/float ages; huge exponential sums degrade to inf."""
    if count == 0:
        return None
    try:
        return total / count
    except OverflowError:
        return math.inf


def _build_channel(config: ScenarioConfig, rng: np.random.Generator) -> ChannelModel:
    per_device = None
    if config.heterogeneous_power:
        per_device = sample_heterogeneous_snr(
            list(range(config.n_devices)),
            config.hetero_snr_low_db, config.hetero_snr_high_db, rng)
    return ChannelModel(mean_snr=snr_db_to_linear(config.mean_snr_db),
                        epsilon=config.epsilon, per_device_mean_snr=per_device)


def _activation_sweep(devices: list[Device], t: int, config: ScenarioConfig,
                      draws: SlotDraws) -> None:
    idle = [d for d in devices if not d.active]
    if not idle or config.v_a == 0.0:
        return
    u_act = draws.vec(t, _PH_ACTIVATE)
    hits = [d for d in idle if u_act[d.id] < config.v_a]
    if not hits:
        return
    u_kind = draws.vec(t, _PH_KIND)
    sized = config.n_rbs_max > config.n_rbs_min
    u_size = draws.vec(t, _PH_SIZE) if sized else None
    for device in hits:
        size_u = 0.0 if u_size is None else u_size[device.id]
        activate(device, t, u_kind[device.id], config.n_rbs_max, size_u,
                 config.n_rbs_min)


class _MetricAccumulator:
    def __init__(self, slots: int, warmup_fraction: float):
        self.warmup_slots = int(slots * warmup_fraction)
        self.cum_aoi_total = 0
        self.cum_deliveries = 0
        self.post_aoi_total = 0
        self.post_deliveries = 0
        self.sr_total = 0.0
        self.sr_post = 0.0
        self.sr_slots = 0
        self.sr_post_slots = 0
        self.rach = 0
        self.dup = 0
        self.outage = 0

    def slot(self, t: int, delivered, service_rate: float,
             rach: int, dup: int, outage: int):
        slot_total = sum(delivered) if delivered else 0
        self.cum_aoi_total += slot_total
        self.cum_deliveries += len(delivered)
        self.sr_total += service_rate
        self.sr_slots += 1
        self.rach += rach
        self.dup += dup
        self.outage += outage
        if t > self.warmup_slots:
            self.post_aoi_total += slot_total
            self.post_deliveries += len(delivered)
            self.sr_post += service_rate
            self.sr_post_slots += 1
        return (_safe_mean(slot_total, len(delivered)),
                _safe_mean(self.cum_aoi_total, self.cum_deliveries))

    def summary(self, slots: int) -> RunSummary:
        return RunSummary(
            slots=slots,
            warmup_slots=self.warmup_slots,
            deliveries=self.cum_deliveries,
            deliveries_postwarmup=self.post_deliveries,
            mean_delivery_aoi=_safe_mean(self.cum_aoi_total, self.cum_deliveries),
            mean_delivery_aoi_postwarmup=_safe_mean(self.post_aoi_total,
                                                    self.post_deliveries),
            mean_service_rate=self.sr_total / max(1, self.sr_slots),
            mean_service_rate_postwarmup=self.sr_post / max(1, self.sr_post_slots),
            rach_failures=self.rach,
            duplicate_failures=self.dup,
            outage_failures=self.outage,
        )


def run(config: ScenarioConfig) -> RunResult:
    """Simulate one scenario; deterministic in (config, seed)."""
    config.validate()
    rng = np.random.default_rng(config.seed)
    devices = make_devices(config.n_devices, config.type1_fraction, config.m1,
                           config.m2, config.width, config.length, rng)
    channel = _build_channel(config, rng)
    draws = SlotDraws(config.seed, config.n_devices)
    if config.mode.centralized:
        return _run_centralized(config, devices, channel, draws)
    return _run_distributed(config, devices, channel, draws)


# ---------------------------------------------------------------------------
# Centralized stack
# ---------------------------------------------------------------------------

_VARIANTS = {
    Mode.CENTRALIZED_NO_LEARNING: Variant.NO_LEARNING,
    Mode.CENTRALIZED_LEARNING: Variant.LEARNING,
    Mode.CENTRALIZED_FULL_INFO: Variant.FULL_INFO,
}


def _run_centralized(config: ScenarioConfig, devices: list[Device],
                     channel: ChannelModel, draws: SlotDraws) -> RunResult:
    variant = _VARIANTS[config.mode]
    rach_config = RachConfig(config.preambles, config.rach_exact)
    learner = TypeLearner(m1=config.m1, m2=config.m2, p_type1=config.type1_fraction)
    # scheduler-side memory for the learning variant, reset on delivery
    last_report: dict[int, tuple[int, object]] = {}
    known_kind: dict[int, AgingKind | None] = {}
    metrics = _MetricAccumulator(config.slots, config.warmup_fraction)
    records: list[SlotRecord] = []

    _activation_sweep(devices, 0, config, draws)
    for t in range(1, config.slots + 1):
        active = [d for d in devices if d.active]
        n_active = len(active)
        survivor_ids = rach_phase([d.id for d in active], rach_config,
                                  draws.vec(t, _PH_RACH))
        rach_failures = n_active - len(survivor_ids)

        requests = []
        for device_id in survivor_ids:
            device = devices[device_id]
            aoi = current_aoi(device, t)
            plan = plan_message(device.n_remaining, device.aging, channel,
                                device.id, config.n_rbs, t, device.gen_slot)
            request = UplinkRequest(device_id=device_id, current_aoi=aoi,
                                    rbs_needed=plan.splits[0])
            if variant is Variant.FULL_INFO:
                request.true_kind = device.aging
                request.est_type = device.dtype.type_id
            elif variant is Variant.LEARNING:
                kind = known_kind.get(device_id)
                if kind is None:
                    kind = identify_aging(aoi, last_report.get(device_id), t)
                    if kind is not None:
                        known_kind[device_id] = kind
                        learner.observe(device_id, kind)
                last_report[device_id] = (t, aoi)
                request.known_kind = kind
                request.est_type = learn_type(learner, device_id)
            requests.append(request)

        allocation = schedule(requests, learner, config.n_rbs, variant, config.beta)
        assignment = RbAssignment(t, tuple((device_id, frozenset(rbs))
                                           for device_id, rbs in allocation))
        outcomes = resolve_slot(assignment, channel, draws.vec(t, _PH_OUTAGE))

        delivered = []
        outage_failures = 0
        rbs_used = 0
        for device_id, rbs in allocation:
            rbs_used += len(rbs)
            device = devices[device_id]
            if outcomes[device_id] is Outcome.SUCCESS:
                device.n_remaining -= len(rbs)
                if device.n_remaining <= 0:
                    delivered.append(deliver_success(device, t))
                    last_report.pop(device_id, None)
                    known_kind.pop(device_id, None)
            else:
                outage_failures += 1

        service_rate = rbs_used / config.n_rbs
        slot_mean, cum_mean = metrics.slot(t, delivered, service_rate,
                                           rach_failures, 0, outage_failures)
        records.append(SlotRecord(
            slot=t, avg_inst_aoi_slot=slot_mean, avg_inst_aoi_cum=cum_mean,
            service_rate=service_rate, n_active=n_active,
            n_transmitting=len(allocation), rach_failures=rach_failures,
            duplicate_failures=0, outage_failures=outage_failures))
        _activation_sweep(devices, t, config, draws)

    trace = None
    if config.trace:
        trace = {"learner_counts": {k: tuple(v) for k, v in learner.counts.items()},
                 "latent_types": {d.id: d.dtype.type_id for d in devices}}
    return RunResult(config=config, records=records,
                     summary=metrics.summary(config.slots), trace=trace)


# ---------------------------------------------------------------------------
# Distributed stack
# ---------------------------------------------------------------------------

def _neighbor_matrix(devices: list[Device], r_c: float) -> np.ndarray | None:
    """Boolean adjacency (self included) or None when the range covers the cell."""
    xy = np.array([d.position for d in devices])
    if len(devices) == 1:
        return np.ones((1, 1), dtype=bool)
    span = xy.max(axis=0) - xy.min(axis=0)
    if r_c >= math.hypot(span[0], span[1]):
        return None
    d2 = ((xy[:, None, :] - xy[None, :, :]) ** 2).sum(axis=2)
    return d2 <= r_c * r_c


def _clipped_float(value) -> float:
    """Exact ages beyond float range saturate to inf; ordering is preserved."""
    try:
        return float(value)
    except OverflowError:
        return math.inf


def _run_distributed(config: ScenarioConfig, devices: list[Device],
                     channel: ChannelModel, draws: SlotDraws) -> RunResult:
    mode = config.mode
    params = config.game_params()
    R = config.n_rbs
    n = config.n_devices
    # the rank-to-RB baseline is defined only under full information
    neighbors = None if mode is Mode.DISTRIBUTED_PREDETERMINED \
        else _neighbor_matrix(devices, config.r_c)
    all_rbs = frozenset(range(1, R + 1))

    last_action = [0] * n          # 0 = did not transmit
    last_failed = [False] * n
    prev_rb_claimants: dict[int, list[int]] = {}
    prev_unused: frozenset = all_rbs

    metrics = _MetricAccumulator(config.slots, config.warmup_fraction)
    records: list[SlotRecord] = []
    trace_unused: list[int] = []
    final_state = None

    _activation_sweep(devices, 0, config, draws)
    for t in range(1, config.slots + 1):
        clock = AoiClock(t, config.beta)
        active_ids = [d.id for d in devices if d.active]
        n_active = len(active_ids)
        is_active = [d.active for d in devices]
        f_value: dict[int, object] = {i: future_aoi(devices[i], clock)
                                      for i in active_ids}

        actions: dict[int, int] = {}
        if n_active:
            if mode is Mode.DISTRIBUTED_PREDETERMINED:
                f_list = [f_value.get(i, 0) for i in range(n)]
                ranked = predetermined_actions(f_list, is_active, R, full_info=True)
                actions = {i: ranked[i] for i in active_ids if ranked[i] >= 1}
            else:
                actions = _game_actions(
                    config, devices, params, draws, t, neighbors, active_ids,
                    is_active, f_value, last_action, last_failed,
                    prev_rb_claimants, prev_unused, all_rbs)

        claimants: dict[int, list[int]] = {}
        for device_id in sorted(actions):
            claimants.setdefault(actions[device_id], []).append(device_id)
        assignment = RbAssignment(t, tuple(
            (device_id, frozenset((rb,)))
            for rb, ids in claimants.items() for device_id in ids))
        outcomes = resolve_slot(assignment, channel, draws.vec(t, _PH_OUTAGE))

        delivered = []
        duplicate_failures = 0
        outage_failures = 0
        for device_id in sorted(actions):
            outcome = outcomes[device_id]
            if outcome is Outcome.SUCCESS:
                delivered.append(deliver_success(devices[device_id], t))
                last_failed[device_id] = False
            elif outcome is Outcome.DUPLICATE_FAILURE:
                duplicate_failures += 1
                last_failed[device_id] = True
            else:
                outage_failures += 1
                last_failed[device_id] = True

        for i in range(n):
            last_action[i] = actions.get(i, 0)
            if i not in actions:
                last_failed[i] = False

        service_rate = sum(1 for ids in claimants.values() if len(ids) == 1) / R
        slot_mean, cum_mean = metrics.slot(t, delivered, service_rate,
                                           0, duplicate_failures, outage_failures)
        records.append(SlotRecord(
            slot=t, avg_inst_aoi_slot=slot_mean, avg_inst_aoi_cum=cum_mean,
            service_rate=service_rate, n_active=n_active,
            n_transmitting=len(actions), rach_failures=0,
            duplicate_failures=duplicate_failures,
            outage_failures=outage_failures))

        prev_rb_claimants = claimants
        prev_unused = frozenset(all_rbs - claimants.keys())
        if config.trace:
            trace_unused.append(len(prev_unused))
            if t == config.slots:
                final_state = {
                    "actions": [actions.get(i, 0) for i in range(n)],
                    "future_aoi": [f_value.get(i, 0) for i in range(n)],
                    "active": list(is_active),
                }
        _activation_sweep(devices, t, config, draws)

    trace = None
    if config.trace:
        trace = {"unused_rbs": trace_unused, "final": final_state}
    return RunResult(config=config, records=records,
                     summary=metrics.summary(config.slots), trace=trace)


# ---------------------------------------------------------------------------
# Parameter sweeps
# ---------------------------------------------------------------------------

_FIELD_NAMES = {f.name for f in fields(ScenarioConfig)}


@dataclass(frozen=True)
class SweepPoint:
    parameter: str
    value: object
    replicate: int
    seed: int
    summary: RunSummary


def replicate_seed(base_seed: int, replicate: int) -> int:
    """Per-replicate seed, shared by every sweep value (matched-seed design).

    Replicate 0 keeps the base seed, so a one-value one-replicate sweep is
    the plain run.
    """
    if replicate == 0:
        return base_seed
    ss = np.random.SeedSequence([base_seed, replicate])
    return int(ss.generate_state(1)[0])


def sweep_iter(base: ScenarioConfig, parameter: str, values, replicates: int = 1):
    """Yield (value, replicate, RunResult) in (value, replicate) order."""
    if parameter not in _FIELD_NAMES:
        raise ConfigError(f"unknown sweep parameter: {parameter}")
    if replicates < 1:
        raise ConfigError("replicates must be >= 1")
    for value in values:
        for rep in range(replicates):
            config = replace(base, **{parameter: value},
                             seed=replicate_seed(base.seed, rep))
            yield value, rep, run(config)


def sweep(base: ScenarioConfig, parameter: str, values,
          replicates: int = 1) -> list[SweepPoint]:
    """Materialized sweep keeping summaries only (records are dropped)."""
    return [SweepPoint(parameter=parameter, value=value, replicate=rep,
                       seed=result.config.seed, summary=result.summary)
            for value, rep, result in sweep_iter(base, parameter, values, replicates)]


def _game_actions(config, devices, params, draws, t, neighbors, active_ids,
                  is_active, f_value, last_action, last_failed,
                  prev_rb_claimants, prev_unused, all_rbs) -> dict[int, int]:
    """Minority-game transmit decisions plus SCA/random RB choices for one slot."""
    mode = config.mode
    R, N = config.n_rbs, config.n_devices
    n_active = len(active_ids)

    shared_view = None
    thresholds: dict[int, object] = {}
    if neighbors is None:
        a_global = tuple(f_value[i] for i in active_ids)
        shared_view = NeighborhoodView(
            a_values=a_global,
            x_counts={rb: len(ids) for rb, ids in prev_rb_claimants.items()},
            unused_last=prev_unused, full_info=True)
        shared_threshold = kth_largest(a_global, R)
    else:
        # per-device k-th order statistics over the in-range active ages,
        # done with numpy selection; exact huge ages saturate to inf, which
        # keeps the (ties transmit) rule intact
        active_mask = np.array(is_active)
        f_arr = np.full(N, -math.inf)
        for i in active_ids:
            f_arr[i] = _clipped_float(f_value[i])
        estimate = N * config.v_a * params.zeta
        for i in active_ids:
            vals = f_arr[neighbors[i] & active_mask]
            n_known = vals.size
            if n_known == n_active:
                k = R
            else:
                k = math.ceil(R * n_known / estimate)
            k = max(1, min(n_known, k))
            thresholds[i] = vals[np.argpartition(vals, n_known - k)[n_known - k]] \
                if n_known > 1 else vals[0]

    # freed-RB delegation: a device that delivered last slot and went idle hands
    # its RB to an active neighbor, weighted by future age; lowest delegator id
    # wins when two target the same neighbor
    delegated: dict[int, int] = {}
    if mode is Mode.DISTRIBUTED_SCA:
        u_del = None
        for i in range(N):
            if (last_action[i] >= 1 and not last_failed[i]
                    and not is_active[i]):
                if neighbors is None:
                    candidate_ids = [j for j in active_ids if j != i]
                else:
                    candidate_ids = [int(j) for j in np.flatnonzero(neighbors[i])
                                     if j != i and is_active[j]]
                if u_del is None:
                    u_del = draws.vec(t, _PH_DELEGATE)
                target = delegate_target(candidate_ids,
                                         [f_value[j] for j in candidate_ids],
                                         u_del[i])
                if target is not None and target not in delegated:
                    delegated[target] = last_action[i]

    actions: dict[int, int] = {}
    if mode is Mode.DISTRIBUTED_RANDOM:
        if shared_view is not None:
            deciders = [i for i in active_ids if f_value[i] >= shared_threshold]
        else:
            deciders = [i for i in active_ids if f_arr[i] >= thresholds[i]]
        if deciders:
            u_dec = draws.vec(t, _PH_DECIDE)
            actions = {i: 1 + int(u_dec[i] * R) for i in deciders}
        return actions

    u_keep = None
    u_fresh = None
    for i in active_ids:
        if i in delegated:
            actions[i] = delegated[i]
            continue
        if shared_view is not None:
            if f_value[i] < shared_threshold:
                continue
            view = shared_view
        else:
            if f_arr[i] < thresholds[i]:
                continue
            view = None
        prev = last_action[i]
        if prev >= 1 and not last_failed[i]:
            actions[i] = prev
            continue
        if view is None:
            row = neighbors[i]
            x_counts = {}
            if prev >= 1:
                seen = sum(1 for j in prev_rb_claimants.get(prev, ())
                           if row[j])
                x_counts = {prev: max(1, seen)}
            # a device only knows an RB was taken if it sensed an in-range
            # transmission on it; everything else looks free to it
            seen_used = {rb for rb, ids in prev_rb_claimants.items()
                         if any(row[j] for j in ids)}
            view = NeighborhoodView(a_values=(f_value[i],), x_counts=x_counts,
                                    unused_last=frozenset(all_rbs - seen_used),
                                    full_info=False)
        if u_keep is None:
            u_keep = draws.vec(t, _PH_DECIDE)
            u_fresh = draws.vec(t, _PH_FRESH)
        actions[i] = sca_step(prev, last_failed[i], view, u_keep[i], u_fresh[i], R)
    return actions
