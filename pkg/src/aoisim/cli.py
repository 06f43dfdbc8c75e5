"""Command-line front end: single runs, sweeps, canned presets, verification.

Output rows go to --out (or stdout); progress notes go to stderr so the data
stream stays clean. Files carry a commented config echo sufficient to rerun
them and contain nothing volatile, so equal seeds give byte-identical files.

Exit codes: 0 success, 1 configuration or usage error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import fields, replace
from pathlib import Path

from .checks import run_all
from .engine import (ConfigError, Mode, RunResult, ScenarioConfig, run,
                     sweep_iter)
from .presets import expand_preset, preset_description, preset_names

OUT_DIR_ENV = "AOISIM_OUT_DIR"

RECORD_COLUMNS = ("slot", "avg_inst_aoi_slot", "avg_inst_aoi_cum",
                  "service_rate", "n_active", "n_transmitting",
                  "rach_failures", "duplicate_failures", "outage_failures")

SUMMARY_COLUMNS = ("slots", "warmup_slots", "deliveries",
                   "deliveries_postwarmup", "mean_delivery_aoi",
                   "mean_delivery_aoi_postwarmup", "mean_service_rate",
                   "mean_service_rate_postwarmup", "rach_failures",
                   "duplicate_failures", "outage_failures")

_BOOL_WORDS = {"true": True, "yes": True, "on": True, "1": True,
               "false": False, "no": False, "off": False, "0": False}


class _Parser(argparse.ArgumentParser):
    """argparse flavor whose usage failures exit 1 instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


# ---------------------------------------------------------------------------
# Config ingestion
# ---------------------------------------------------------------------------

def _coerce(name: str, annotation: str, raw: str):
    try:
        if annotation == "int":
            return int(raw)
        if annotation == "float":
            return float(raw)
        if annotation == "bool":
            word = raw.lower()
            if word not in _BOOL_WORDS:
                raise ValueError(f"not a boolean: {raw}")
            return _BOOL_WORDS[word]
        if annotation == "Mode":
            return Mode(raw)
        return raw
    except ValueError as exc:
        raise ConfigError(f"bad value for {name}: {exc}") from exc


def parse_config_file(path: str) -> dict[str, str]:
    """Flat key=value lines; blank lines and # comments are skipped."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, _, value = stripped.partition("=")
        raw[key.strip()] = value.strip()
    return raw


def build_config(raw: dict[str, str]) -> ScenarioConfig:
    annotations = {f.name: f.type for f in fields(ScenarioConfig)}
    values = {}
    for key, text in raw.items():
        if key not in annotations:
            raise ConfigError(f"unknown config key: {key}")
        values[key] = _coerce(key, annotations[key], text)
    config = ScenarioConfig(**values)
    config.validate()
    return config


def _config_from_args(args) -> ScenarioConfig:
    raw = parse_config_file(args.config) if args.config else {}
    for item in args.set or []:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got: {item}")
        key, _, value = item.partition("=")
        raw[key.strip()] = value.strip()
    config = build_config(raw)
    if getattr(args, "mode", None):
        config = replace(config, mode=Mode(args.mode))
    if args.seed is not None:
        config = replace(config, seed=args.seed)
    if args.slots is not None:
        config = replace(config, slots=args.slots)
    config.validate()
    return config


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _config_pairs(config: ScenarioConfig):
    for f in fields(ScenarioConfig):
        value = getattr(config, f.name)
        yield f.name, value.value if isinstance(value, Mode) else value


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_run_csv(fh, result: RunResult) -> None:
    for key, value in _config_pairs(result.config):
        fh.write(f"# {key}={_cell(value)}\n")
    fh.write(",".join(RECORD_COLUMNS) + "\n")
    for rec in result.records:
        fh.write(",".join(_cell(getattr(rec, col)) for col in RECORD_COLUMNS)
                 + "\n")


def write_run_jsonl(fh, result: RunResult) -> None:
    config = {key: value for key, value in _config_pairs(result.config)}
    fh.write(json.dumps({"config": config}, sort_keys=True) + "\n")
    for rec in result.records:
        row = {col: getattr(rec, col) for col in RECORD_COLUMNS}
        fh.write(json.dumps(row, sort_keys=True) + "\n")


def _write_run(result: RunResult, out: str | None, fmt: str) -> None:
    if out is None:
        writer = write_run_csv if fmt == "csv" else write_run_jsonl
        writer(sys.stdout, result)
        return
    with open(out, "w", newline="") as fh:
        (write_run_csv if fmt == "csv" else write_run_jsonl)(fh, result)


def _sweep_row(parameter, value, rep, result: RunResult) -> dict:
    row = {"parameter": parameter, "value": value, "replicate": rep,
           "seed": result.config.seed}
    for col in SUMMARY_COLUMNS:
        row[col] = getattr(result.summary, col)
    return row


def _write_sweep(rows, base: ScenarioConfig, out: str | None, fmt: str) -> None:
    columns = ("parameter", "value", "replicate", "seed") + SUMMARY_COLUMNS
    fh = open(out, "w", newline="") if out else sys.stdout
    try:
        if fmt == "csv":
            for key, value in _config_pairs(base):
                fh.write(f"# {key}={_cell(value)}\n")
            fh.write(",".join(columns) + "\n")
            for row in rows:
                fh.write(",".join(_cell(row[col]) for col in columns) + "\n")
        else:
            config = {key: value for key, value in _config_pairs(base)}
            fh.write(json.dumps({"config": config}, sort_keys=True) + "\n")
            for row in rows:
                fh.write(json.dumps(row, sort_keys=True) + "\n")
    finally:
        if out:
            fh.close()


def _say(args, message: str) -> None:
    if not args.quiet:
        print(message, file=sys.stderr)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_run(args) -> int:
    config = _config_from_args(args)
    result = run(config)
    _write_run(result, args.out, args.format)
    s = result.summary
    aoi = "n/a" if s.mean_delivery_aoi is None else f"{s.mean_delivery_aoi:.4g}"
    _say(args, f"{config.mode.value}: {s.deliveries} deliveries, "
               f"mean delivery age {aoi}, "
               f"mean service rate {s.mean_service_rate:.4f}")
    return 0


def _parse_values(parameter: str, text: str) -> list:
    annotation = {f.name: f.type for f in fields(ScenarioConfig)}.get(parameter)
    if annotation is None:
        raise ConfigError(f"unknown sweep parameter: {parameter}")
    return [_coerce(parameter, annotation, part.strip())
            for part in text.split(",") if part.strip()]


def _cmd_sweep(args) -> int:
    base = _config_from_args(args)
    values = _parse_values(args.parameter, args.values)
    if not values:
        raise ConfigError("sweep needs at least one value")
    rows = []
    for value, rep, result in sweep_iter(base, args.parameter, values,
                                         args.replicates):
        rows.append(_sweep_row(args.parameter, value, rep, result))
        _say(args, f"{args.parameter}={value} replicate {rep}: "
                   f"mean service rate "
                   f"{result.summary.mean_service_rate:.4f}")
    _write_sweep(rows, base, args.out, args.format)
    if not args.quiet and args.replicates > 1:
        for value in values:
            group = [r["mean_delivery_aoi"] for r in rows
                     if r["value"] == value and r["mean_delivery_aoi"] is not None]
            if group:
                mean = sum(group) / len(group)
                var = (sum((g - mean) ** 2 for g in group)
                       / (len(group) - 1)) if len(group) > 1 else 0.0
                se = math.sqrt(var / len(group)) if len(group) > 1 else 0.0
                _say(args, f"{args.parameter}={value}: mean delivery age "
                           f"{mean:.4g} +- {se:.2g} (se, n={len(group)})")
    return 0


def _cmd_preset(args) -> int:
    try:
        jobs = expand_preset(args.name)
    except KeyError:
        print(f"unknown preset: {args.name}", file=sys.stderr)
        print("available: " + " ".join(preset_names()), file=sys.stderr)
        return 1
    out_dir = Path(args.out or os.environ.get(OUT_DIR_ENV) or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    ext = "csv" if args.format == "csv" else "jsonl"
    _say(args, f"{args.name}: {preset_description(args.name)} "
               f"({len(jobs)} runs)")
    for label, config in jobs:
        if args.seed is not None:
            config = replace(config, seed=args.seed)
        if args.slots is not None:
            config = replace(config, slots=args.slots)
        result = run(config)
        path = out_dir / f"{args.name}__{label}.{ext}"
        with open(path, "w", newline="") as fh:
            (write_run_csv if args.format == "csv" else write_run_jsonl)(fh, result)
        s = result.summary
        aoi = "n/a" if s.mean_delivery_aoi is None else f"{s.mean_delivery_aoi:.4g}"
        _say(args, f"  {path} mean delivery age {aoi} "
                   f"service rate {s.mean_service_rate:.4f}")
    return 0


def _cmd_verify(args) -> int:
    results = run_all(slots=args.slots or 10_000, runs=args.runs, seed=args.seed
                      if args.seed is not None else 2026)
    failed = False
    for res in results:
        print(f"{'PASS' if res.passed else 'FAIL'} {res.name}")
        if not args.quiet:
            for line in res.lines:
                print(f"    {line}")
        failed |= not res.passed
    return 2 if failed else 0


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser, with_config: bool = True):
    if with_config:
        parser.add_argument("--config", help="flat key=value config file")
        parser.add_argument("--set", action="append", metavar="KEY=VALUE",
                            help="override one config key (repeatable)")
        parser.add_argument("--mode", choices=[m.value for m in Mode],
                            help="allocation mode")
    parser.add_argument("--seed", type=int, help="base RNG seed")
    parser.add_argument("--slots", type=int, help="slot-count override")
    parser.add_argument("--out", help="output path (preset: directory)")
    parser.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    parser.add_argument("--quiet", action="store_true",
                        help="suppress progress notes")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="aoisim",
                     description="slotted uplink RB-allocation simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate one scenario")
    _add_common(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="vary one config field")
    _add_common(p_sweep)
    p_sweep.add_argument("--parameter", required=True,
                         help="ScenarioConfig field to vary")
    p_sweep.add_argument("--values", required=True,
                         help="comma-separated values")
    p_sweep.add_argument("--replicates", type=int, default=1)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_preset = sub.add_parser("preset", help="run a canned scenario bundle")
    p_preset.add_argument("name", help="one of: " + " ".join(preset_names()))
    _add_common(p_preset, with_config=False)
    p_preset.set_defaults(func=_cmd_preset)

    p_verify = sub.add_parser("verify", help="closed-form and convergence checks")
    p_verify.add_argument("--runs", type=int, default=100,
                          help="convergence sample size")
    p_verify.add_argument("--slots", type=int,
                          help="Monte Carlo slots for rate comparisons")
    p_verify.add_argument("--seed", type=int, help="base RNG seed")
    p_verify.add_argument("--quiet", action="store_true",
                          help="one line per check")
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"aoisim: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"aoisim: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
