"""Command-line runner: load a config, run every sweep cell, export CSVs.

Per cell the runner writes the full policy table and one survival curve per
replacement rule; a single summary CSV collects the per-gamma optima of all
cells.  All CSVs use 6-significant-digit, locale-independent formatting, so
identical configs and seeds reproduce byte-identical files.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from pathlib import Path

from .config import ExperimentConfig, SweepCell, load_config
from .errors import ConfigError, InsufficientDataError, OptimizationError, ParameterError
from .policy import GridSearchResult, optimize_d, residual_percentile
from .reliability import ReplacementRule, empirical_survival, scenario_replacement_times
from .simulate import RngStream, run_profiles, simulate_profile

SUMMARY_HEADER = (
    "cell,variant,kappa,tau,p,boundary_a,boundary_b,boundary_c,gamma,d,t_star,ecput"
)
POLICY_HEADER = "gamma,d,t_star,mean_cycle,failure_fraction,ecput"
TRACE_HEADER = "epoch,damage,effective_boundary"
SURVIVAL_HEADER = "t,S"


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".6g")
    return str(value)


def _write_csv(path: Path, header: str, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(header + "\n")
        for row in rows:
            handle.write(",".join(_fmt(value) for value in row) + "\n")


def _policy_rows(result: GridSearchResult):
    for row in result.rows:
        yield (row.gamma, row.d, row.t_star, row.mean_cycle, row.failure_fraction, row.ecput)


def _survival_rows(curve):
    yield (0.0, 1.0)
    for t, s in zip(curve.times, curve.survival):
        yield (float(t), float(s))


def _run_cell(cell: SweepCell, config: ExperimentConfig, out_dir: Path, rules, written):
    profiles = run_profiles(cell.scenario, config.reps, cell.seed)
    result = optimize_d(
        cell.scenario,
        config.grid,
        config.gammas,
        config.costs,
        config.reps,
        cell.seed,
        profiles=profiles,
    )

    tag = f"cell{cell.index:03d}"
    policy_path = out_dir / f"policy_{tag}.csv"
    _write_csv(policy_path, POLICY_HEADER, _policy_rows(result))
    written.append(policy_path)

    outcomes = [p.outcome(config.curves_d) for p in profiles]
    usable = [o for o in outcomes if not o.censored]
    if usable:
        residuals = [o.residual for o in usable]
        t_stars = {g: residual_percentile(residuals, g) for g in (0.90, 0.85, 0.80)}
        for rule in rules:
            times = scenario_replacement_times(usable, rule, t_stars)
            curve = empirical_survival(times)
            curve_path = out_dir / f"survival_{tag}_{rule.value}.csv"
            _write_csv(curve_path, SURVIVAL_HEADER, _survival_rows(curve))
            written.append(curve_path)
    else:
        print(f"{tag}: every replication censored; no survival curves", file=sys.stderr)

    if config.emit_traces:
        for rep in range(min(config.trace_reps, config.reps)):
            _, damage, boundary = simulate_profile(
                cell.scenario, RngStream(cell.seed, rep), trace=True
            )
            rows = ((j + 1, damage[j], boundary[j]) for j in range(len(damage)))
            trace_path = out_dir / f"trace_{tag}_rep{rep:04d}.csv"
            _write_csv(trace_path, TRACE_HEADER, rows)
            written.append(trace_path)

    return result


def run_experiment(config: ExperimentConfig, rules=None) -> int:
    """Run every sweep cell and write all outputs; 0 when everything was written."""
    rules = list(ReplacementRule) if rules is None else [ReplacementRule(r) for r in rules]
    out_dir = Path(config.output_dir)
    written: list[Path] = []
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        summary_rows = []
        for cell in config.cells():
            result = _run_cell(cell, config, out_dir, rules, written)
            for gamma in config.gammas:
                best = result.optima[gamma]
                summary_rows.append(
                    (
                        cell.index,
                        cell.scenario.variant.value,
                        cell.kappa,
                        cell.tau,
                        cell.p,
                        config.boundary_a,
                        config.boundary_b,
                        cell.boundary_c,
                        gamma,
                        best.d,
                        best.t_star,
                        best.ecput,
                    )
                )
        summary_path = out_dir / "summary.csv"
        _write_csv(summary_path, SUMMARY_HEADER, summary_rows)
        written.append(summary_path)
    except (ParameterError, InsufficientDataError, OptimizationError, ConfigError, OSError) as exc:
        for path in written:
            try:
                path.unlink()
            except OSError:
                pass
        print(f"error: {exc}", file=sys.stderr)
        return 1

    print(SUMMARY_HEADER)
    for row in summary_rows:
        print(",".join(_fmt(value) for value in row))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="shocksim",
        description="Simulate shock-degraded self-healing systems and optimize the replacement margin.",
    )
    parser.add_argument("config", help="experiment config file")
    parser.add_argument("--seed", type=int, default=None, help="override run.master_seed")
    parser.add_argument("--reps", type=int, default=None, help="override run.reps")
    parser.add_argument("--output-dir", default=None, help="override run.output_dir")
    parser.add_argument(
        "--emit-traces", action="store_true", help="write per-replication trajectory traces"
    )
    parser.add_argument(
        "--scenario-filter",
        default=None,
        help="comma list of replacement rules to emit survival curves for "
        "(failure_100, risk_20, risk_15, risk_10, risk_0)",
    )
    args = parser.parse_args(argv)

    try:
        config = load_config(args.config)
        overrides = {}
        if args.seed is not None:
            overrides["master_seed"] = args.seed
        if args.reps is not None:
            if args.reps < 1:
                raise ConfigError(f"--reps must be at least 1, got {args.reps}")
            overrides["reps"] = args.reps
        if args.output_dir is not None:
            overrides["output_dir"] = args.output_dir
        if args.emit_traces:
            overrides["emit_traces"] = True
        if overrides:
            config = dataclasses.replace(config, **overrides)
        rules = None
        if args.scenario_filter is not None:
            names = [name.strip() for name in args.scenario_filter.split(",") if name.strip()]
            try:
                rules = [ReplacementRule(name) for name in names]
            except ValueError as exc:
                raise ConfigError(f"--scenario-filter: {exc}") from exc
            if not rules:
                raise ConfigError("--scenario-filter named no rules")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    return run_experiment(config, rules)


if __name__ == "__main__":
    sys.exit(main())
