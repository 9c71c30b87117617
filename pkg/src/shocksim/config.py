"""Experiment configuration: a flat INI file with one section per concern.

Sections and keys (all optional unless noted; defaults in parentheses):

  [scenario]   variant (required: base | finite_healing | mixed_nonhealable
               | two_stream), horizon (100), delta (0.05), shock_count (200),
               kappa (0.02; list), tau (inf; list), p (list; mixed only),
               boundary_a (500), boundary_b (0), boundary_c (1/50; list)
  [inter_arrival]            family (weibull), shape (2), mean (1) or scale
  [magnitude]                family (weibull), shape (10), mean (10) or scale
  [nonhealable_inter_arrival] / [nonhealable_magnitude]
               required for two_stream, forbidden otherwise
  [costs]      install (5000), inspection_rate (50), operating_rate (100),
               revenue_rate (200), failure_surcharge (1000)
  [grid]       d_min (8), d_max (16), step (0.1)
  [run]        gammas (0.90, 0.85, 0.80), reps (10000), master_seed (12345),
               output_dir (results), emit_traces (false), trace_reps (5),
               curves_d (12)

Numeric values accept fractions ("1/50").  The list-valued keys kappa,
boundary_c, tau and p define a sweep: one cell per point of their cartesian
product (kappa-major, then boundary_c, tau, p), each cell seeded from
(master_seed, cell_index).  Unknown sections or keys are rejected.
"""

from __future__ import annotations

import configparser
import itertools
import math
from dataclasses import dataclass
from pathlib import Path

from .distributions import DistributionSpec, Family, derive_seed
from .dynamics import BoundaryCoeffs, HealingParams
from .errors import ConfigError
from .policy import CostParams, GridSpec
from .simulate import ScenarioConfig, Variant

_DIST_SECTIONS = (
    "inter_arrival",
    "magnitude",
    "nonhealable_inter_arrival",
    "nonhealable_magnitude",
)

_KNOWN_KEYS = {
    "scenario": {
        "variant", "horizon", "delta", "shock_count", "kappa", "tau", "p",
        "boundary_a", "boundary_b", "boundary_c",
    },
    "inter_arrival": {"family", "shape", "mean", "scale"},
    "magnitude": {"family", "shape", "mean", "scale"},
    "nonhealable_inter_arrival": {"family", "shape", "mean", "scale"},
    "nonhealable_magnitude": {"family", "shape", "mean", "scale"},
    "costs": {"install", "inspection_rate", "operating_rate", "revenue_rate", "failure_surcharge"},
    "grid": {"d_min", "d_max", "step"},
    "run": {
        "gammas", "reps", "master_seed", "output_dir", "emit_traces", "trace_reps", "curves_d",
    },
}

_DEFAULT_INTER_ARRIVAL = DistributionSpec(Family.WEIBULL, shape=2.0, mean=1.0)
_DEFAULT_MAGNITUDE = DistributionSpec(Family.WEIBULL, shape=10.0, mean=10.0)


def _number(section: str, key: str, raw: str) -> float:
    raw = raw.strip()
    try:
        if "/" in raw:
            num, den = raw.split("/")
            return float(num) / float(den)
        return float(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{section}.{key}: not a number: {raw!r}") from exc


def _number_list(section: str, key: str, raw: str) -> tuple[float, ...]:
    items = [piece for piece in (s.strip() for s in raw.split(",")) if piece]
    if not items:
        raise ConfigError(f"{section}.{key}: empty list")
    return tuple(_number(section, key, piece) for piece in items)


def _int(section: str, key: str, raw: str) -> int:
    try:
        return int(raw.strip())
    except ValueError as exc:
        raise ConfigError(f"{section}.{key}: not an integer: {raw!r}") from exc


def _bool(section: str, key: str, raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ConfigError(f"{section}.{key}: not a boolean: {raw!r}")


@dataclass(frozen=True)
class SweepCell:
    """One point of the sweep with its derived seed and concrete scenario."""

    index: int
    seed: int
    kappa: float
    boundary_c: float
    tau: float
    p: float | None
    scenario: ScenarioConfig


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated experiment description covering every sweep cell."""

    variant: Variant
    inter_arrival: DistributionSpec
    magnitude: DistributionSpec
    nonhealable_inter_arrival: DistributionSpec | None
    nonhealable_magnitude: DistributionSpec | None
    kappas: tuple[float, ...]
    taus: tuple[float, ...]
    ps: tuple[float, ...] | None
    boundary_a: float
    boundary_b: float
    boundary_cs: tuple[float, ...]
    horizon: float
    delta: float
    shock_count: int
    costs: CostParams
    grid: GridSpec
    gammas: tuple[float, ...]
    reps: int
    master_seed: int
    output_dir: str
    emit_traces: bool
    trace_reps: int
    curves_d: float

    def cells(self) -> list[SweepCell]:
        """Materialize every sweep cell; construction validates each scenario."""
        p_axis = self.ps if self.ps is not None else (None,)
        cells = []
        combos = itertools.product(self.kappas, self.boundary_cs, self.taus, p_axis)
        for index, (kappa, c, tau, p) in enumerate(combos):
            scenario = ScenarioConfig(
                variant=self.variant,
                inter_arrival=self.inter_arrival,
                magnitude=self.magnitude,
                healing=HealingParams(kappa=kappa, tau=tau),
                boundary=BoundaryCoeffs(self.boundary_a, self.boundary_b, c),
                horizon=self.horizon,
                delta=self.delta,
                shock_count=self.shock_count,
                p=p,
                nonhealable_inter_arrival=self.nonhealable_inter_arrival,
                nonhealable_magnitude=self.nonhealable_magnitude,
            )
            cells.append(
                SweepCell(index, derive_seed(self.master_seed, index), kappa, c, tau, p, scenario)
            )
        return cells


def _distribution(parser, section: str, default: DistributionSpec | None) -> DistributionSpec | None:
    if not parser.has_section(section):
        return default
    family = parser.get(section, "family", fallback=None)
    if family is None:
        raise ConfigError(f"{section}.family is required when the section is present")
    try:
        family = Family(family.strip().lower())
    except ValueError as exc:
        raise ConfigError(f"{section}.family: unknown family {family!r}") from exc
    shape = parser.get(section, "shape", fallback=None)
    mean = parser.get(section, "mean", fallback=None)
    scale = parser.get(section, "scale", fallback=None)
    if mean is not None and scale is not None:
        raise ConfigError(f"{section}: give mean or scale, not both")
    if mean is None and scale is None:
        raise ConfigError(f"{section}: one of mean or scale is required")
    try:
        return DistributionSpec(
            family,
            shape=None if shape is None else _number(section, "shape", shape),
            mean=None if mean is None else _number(section, "mean", mean),
            scale=None if scale is None else _number(section, "scale", scale),
        )
    except ValueError as exc:
        raise ConfigError(f"{section}: {exc}") from exc


def load_config(path) -> ExperimentConfig:
    """Parse and fully validate an experiment file; defaults fill what is absent."""
    path = Path(path)
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, "r", encoding="utf-8") as handle:
            parser.read_file(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config file {path}: {exc}") from exc

    for section in parser.sections():
        if section not in _KNOWN_KEYS:
            raise ConfigError(f"unknown section [{section}]")
        for key in parser.options(section):
            if key not in _KNOWN_KEYS[section]:
                raise ConfigError(f"unknown key {section}.{key}")

    if not parser.has_option("scenario", "variant"):
        raise ConfigError("scenario.variant is required")
    raw_variant = parser.get("scenario", "variant").strip().lower()
    try:
        variant = Variant(raw_variant)
    except ValueError as exc:
        raise ConfigError(f"scenario.variant: unknown variant {raw_variant!r}") from exc

    def scenario_value(key, default, convert):
        raw = parser.get("scenario", key, fallback=None)
        return default if raw is None else convert("scenario", key, raw)

    horizon = scenario_value("horizon", 100.0, _number)
    delta = scenario_value("delta", 0.05, _number)
    shock_count = scenario_value("shock_count", 200, _int)
    kappas = scenario_value("kappa", (0.02,), _number_list)
    default_tau = (math.inf,) if variant is not Variant.FINITE_HEALING else None
    taus = scenario_value("tau", default_tau, _number_list)
    if taus is None:
        raise ConfigError("scenario.tau is required for the finite_healing variant")
    raw_p = parser.get("scenario", "p", fallback=None)
    if variant is Variant.MIXED_NONHEALABLE:
        if raw_p is None:
            raise ConfigError("scenario.p is required for the mixed_nonhealable variant")
        ps = _number_list("scenario", "p", raw_p)
    elif raw_p is not None:
        raise ConfigError(f"scenario.p is only valid for mixed_nonhealable, not {variant.value}")
    else:
        ps = None
    boundary_a = scenario_value("boundary_a", 500.0, _number)
    boundary_b = scenario_value("boundary_b", 0.0, _number)
    boundary_cs = scenario_value("boundary_c", (1.0 / 50.0,), _number_list)

    inter_arrival = _distribution(parser, "inter_arrival", _DEFAULT_INTER_ARRIVAL)
    magnitude = _distribution(parser, "magnitude", _DEFAULT_MAGNITUDE)
    nonhealable_ia = _distribution(parser, "nonhealable_inter_arrival", None)
    nonhealable_mag = _distribution(parser, "nonhealable_magnitude", None)
    if variant is Variant.TWO_STREAM and (nonhealable_ia is None or nonhealable_mag is None):
        raise ConfigError(
            "two_stream requires [nonhealable_inter_arrival] and [nonhealable_magnitude]"
        )

    def section_value(section, key, default, convert):
        raw = parser.get(section, key, fallback=None)
        return default if raw is None else convert(section, key, raw)

    try:
        costs = CostParams(
            install=section_value("costs", "install", 5000.0, _number),
            inspection_rate=section_value("costs", "inspection_rate", 50.0, _number),
            operating_rate=section_value("costs", "operating_rate", 100.0, _number),
            revenue_rate=section_value("costs", "revenue_rate", 200.0, _number),
            failure_surcharge=section_value("costs", "failure_surcharge", 1000.0, _number),
        )
        grid = GridSpec(
            d_min=section_value("grid", "d_min", 8.0, _number),
            d_max=section_value("grid", "d_max", 16.0, _number),
            step=section_value("grid", "step", 0.1, _number),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    gammas = section_value("run", "gammas", (0.90, 0.85, 0.80), _number_list)
    for gamma in gammas:
        if not 0.0 < gamma < 1.0:
            raise ConfigError(f"run.gammas: gamma must lie in (0, 1), got {gamma}")
    reps = section_value("run", "reps", 10_000, _int)
    if reps < 1:
        raise ConfigError(f"run.reps must be at least 1, got {reps}")
    master_seed = section_value("run", "master_seed", 12345, _int)
    output_dir = parser.get("run", "output_dir", fallback="results").strip()
    emit_traces = section_value("run", "emit_traces", False, _bool)
    trace_reps = section_value("run", "trace_reps", 5, _int)
    if trace_reps < 1:
        raise ConfigError(f"run.trace_reps must be at least 1, got {trace_reps}")
    curves_d = section_value("run", "curves_d", 12.0, _number)
    if curves_d <= 0:
        raise ConfigError(f"run.curves_d must be positive, got {curves_d}")

    config = ExperimentConfig(
        variant=variant,
        inter_arrival=inter_arrival,
        magnitude=magnitude,
        nonhealable_inter_arrival=nonhealable_ia,
        nonhealable_magnitude=nonhealable_mag,
        kappas=kappas,
        taus=taus,
        ps=ps,
        boundary_a=boundary_a,
        boundary_b=boundary_b,
        boundary_cs=boundary_cs,
        horizon=horizon,
        delta=delta,
        shock_count=shock_count,
        costs=costs,
        grid=grid,
        gammas=tuple(gammas),
        reps=reps,
        master_seed=master_seed,
        output_dir=output_dir,
        emit_traces=emit_traces,
        trace_reps=trace_reps,
        curves_d=curves_d,
    )
    try:
        config.cells()
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return config


def _fmt(value: float) -> str:
    if value == math.inf:
        return "inf"
    return repr(float(value))


def _dist_lines(name: str, spec: DistributionSpec) -> list[str]:
    lines = [f"[{name}]", f"family = {spec.family.value}"]
    if spec.family is not Family.EXPONENTIAL:
        lines.append(f"shape = {_fmt(spec.shape)}")
    lines.append(f"mean = {_fmt(spec.mean)}")
    lines.append("")
    return lines


def dump_config(config: ExperimentConfig) -> str:
    """Render a config back to its file format; load(dump(c)) == c."""
    lines = [
        "[scenario]",
        f"variant = {config.variant.value}",
        f"horizon = {_fmt(config.horizon)}",
        f"delta = {_fmt(config.delta)}",
        f"shock_count = {config.shock_count}",
        f"kappa = {', '.join(_fmt(k) for k in config.kappas)}",
        f"tau = {', '.join(_fmt(t) for t in config.taus)}",
    ]
    if config.ps is not None:
        lines.append(f"p = {', '.join(_fmt(p) for p in config.ps)}")
    lines += [
        f"boundary_a = {_fmt(config.boundary_a)}",
        f"boundary_b = {_fmt(config.boundary_b)}",
        f"boundary_c = {', '.join(_fmt(c) for c in config.boundary_cs)}",
        "",
    ]
    lines += _dist_lines("inter_arrival", config.inter_arrival)
    lines += _dist_lines("magnitude", config.magnitude)
    if config.nonhealable_inter_arrival is not None:
        lines += _dist_lines("nonhealable_inter_arrival", config.nonhealable_inter_arrival)
        lines += _dist_lines("nonhealable_magnitude", config.nonhealable_magnitude)
    lines += [
        "[costs]",
        f"install = {_fmt(config.costs.install)}",
        f"inspection_rate = {_fmt(config.costs.inspection_rate)}",
        f"operating_rate = {_fmt(config.costs.operating_rate)}",
        f"revenue_rate = {_fmt(config.costs.revenue_rate)}",
        f"failure_surcharge = {_fmt(config.costs.failure_surcharge)}",
        "",
        "[grid]",
        f"d_min = {_fmt(config.grid.d_min)}",
        f"d_max = {_fmt(config.grid.d_max)}",
        f"step = {_fmt(config.grid.step)}",
        "",
        "[run]",
        f"gammas = {', '.join(_fmt(g) for g in config.gammas)}",
        f"reps = {config.reps}",
        f"master_seed = {config.master_seed}",
        f"output_dir = {config.output_dir}",
        f"emit_traces = {'true' if config.emit_traces else 'false'}",
        f"trace_reps = {config.trace_reps}",
        f"curves_d = {_fmt(config.curves_d)}",
        "",
    ]
    return "\n".join(lines)
