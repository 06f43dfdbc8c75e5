"""Slotted simulator of age-aware uplink resource-block allocation."""

from .aging import AgingKind, age_forward, aoi_value, linear_only
from .centralized import (RachConfig, TypeLearner, UplinkRequest, Variant,
                          expected_future_aoi, identify_aging, learn_type,
                          marginal_expected_future_aoi, priority_key,
                          rach_collision_probability, rach_phase, schedule)
from .channel import (ChannelModel, Outcome, RbAssignment, epsilon_for_outage,
                      outage_probability, resolve_slot)
from .devices import (AoiClock, Device, DeviceType, TypeId, activate,
                      activation_step, current_aoi, deliver_success,
                      future_aoi, make_devices, type1, type2)
from .distributed import (FullInfoGame, GameParams, NashResult,
                          NeighborhoodView, delegate_target, is_nash_equilibrium,
                          kappa, kth_largest, predetermined_actions,
                          random_selection, sca_step, service_rate_closed_form,
                          service_rate_large_n, silent_payoff, transmit_decision)
from .engine import (ConfigError, Mode, RunResult, RunSummary, ScenarioConfig,
                     SlotRecord, SweepPoint, replicate_seed, run, sweep,
                     sweep_iter)
from .planner import TransmissionPlan, compositions, plan_message
from .presets import expand_preset, preset_description, preset_names

__version__ = "0.1.0"

__all__ = [
    "AgingKind", "age_forward", "aoi_value", "linear_only",
    "RachConfig", "TypeLearner", "UplinkRequest", "Variant",
    "expected_future_aoi", "identify_aging", "learn_type",
    "marginal_expected_future_aoi", "priority_key",
    "rach_collision_probability", "rach_phase", "schedule",
    "ChannelModel", "Outcome", "RbAssignment", "epsilon_for_outage",
    "outage_probability", "resolve_slot",
    "AoiClock", "Device", "DeviceType", "TypeId", "activate",
    "activation_step", "current_aoi", "deliver_success", "future_aoi",
    "make_devices", "type1", "type2",
    "FullInfoGame", "GameParams", "NashResult", "NeighborhoodView",
    "delegate_target", "is_nash_equilibrium", "kappa", "kth_largest",
    "predetermined_actions", "random_selection", "sca_step",
    "service_rate_closed_form", "service_rate_large_n", "silent_payoff",
    "transmit_decision",
    "ConfigError", "Mode", "RunResult", "RunSummary", "ScenarioConfig",
    "SlotRecord", "SweepPoint", "replicate_seed", "run", "sweep", "sweep_iter",
    "TransmissionPlan", "compositions", "plan_message",
    "expand_preset", "preset_description", "preset_names",
]
