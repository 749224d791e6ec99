"""Parameter sweeps, engine audits, sum-rule checks, figure-data emission
and sudden-death boundary finding.

All outputs are deterministic for a fixed configuration: grid order defines
row order, floats are serialized with 17 significant digits, random sampling
is driven by an explicit seed, and reports carry no timestamps. Worker-pool
evaluation merges results by grid index, so the worker count never changes
the output bytes.
"""
from __future__ import annotations

import json
import math
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .closedform import CATALOG, SUM_RULES, cf_eval, cf_sum_rules
from .engine import MEASURES, is_x_structured, numeric_measures
from .unruh import BETA_MAX, SCENARIOS, scenario

ENGINES = ("numeric", "closedform", "both")
DEFAULT_ALPHA = 1.0 / math.sqrt(2.0)
DEFAULT_SEED = 20260823


class ConfigError(ValueError):
    """A sweep/audit configuration value is invalid."""


@dataclass(frozen=True)
class SweepConfig:
    alpha: float = DEFAULT_ALPHA
    beta_range: tuple[float, float, int] = (0.0, BETA_MAX, 101)
    p_range: tuple[float, float, int] = (0.0, 1.0, 101)
    scenario: str = "ABC_I"
    measures: tuple[str, ...] = MEASURES
    engine: str = "both"
    output_path: str | None = None
    fmt: str = "csv"
    workers: int = 1
    tol: float = 1e-8
    seed: int = DEFAULT_SEED
    samples: int = 1000

    def validate(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError(f"alpha={self.alpha} outside [0, 1]")
        for name, (lo, hi, steps), limit in (
            ("beta", self.beta_range, BETA_MAX),
            ("p", self.p_range, 1.0),
        ):
            if steps < 2:
                raise ConfigError(f"{name} steps must be >= 2, got {steps}")
            if not (0.0 <= lo <= hi <= limit + 1e-12):
                raise ConfigError(f"{name} range ({lo}, {hi}) outside [0, {limit}]")
        if self.scenario not in SCENARIOS:
            raise ConfigError(
                f"unknown scenario {self.scenario!r}; expected one of {sorted(SCENARIOS)}"
            )
        bad = set(self.measures) - set(MEASURES)
        if bad or not self.measures:
            raise ConfigError(f"measures must be a nonempty subset of {MEASURES}")
        if self.engine not in ENGINES:
            raise ConfigError(f"engine must be one of {ENGINES}, got {self.engine!r}")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.fmt!r}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.samples < 1:
            raise ConfigError(f"samples must be >= 1, got {self.samples}")


@dataclass(frozen=True)
class SweepRecord:
    """One (grid point, measure, engine) evaluation."""

    scenario: str
    measure: str
    engine: str
    alpha: float
    beta: float
    p: float
    value: float


def _axis(rng: tuple[float, float, int]) -> list[float]:
    lo, hi, steps = rng
    return [float(v) for v in np.linspace(lo, hi, steps)]


def _numeric_point(args: tuple[str, float, float, float, tuple[str, ...]]) -> dict[str, float]:
    name, alpha, beta, p, measures = args
    return dict(numeric_measures(name, alpha, beta, p, measures))


def _numeric_grid(
    name: str,
    alpha: float,
    betas: Sequence[float],
    ps: Sequence[float],
    measures: tuple[str, ...],
    workers: int,
) -> list[dict[str, float]]:
    """Numeric measures at every grid point, in (beta, p) row-major order."""
    points = [(name, alpha, b, p, measures) for b in betas for p in ps]
    if workers > 1:
        chunk = max(1, len(points) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_numeric_point, points, chunksize=chunk))
    return [_numeric_point(pt) for pt in points]


def run_sweep(config: SweepConfig) -> list[SweepRecord]:
    """Evaluate the configured grid; rows ordered by (beta index, p index),
    then measure (config order), then engine (numeric before closedform)."""
    config.validate()
    betas, ps = _axis(config.beta_range), _axis(config.p_range)
    engines = ("numeric", "closedform") if config.engine == "both" else (config.engine,)

    numeric = None
    if "numeric" in engines:
        numeric = _numeric_grid(
            config.scenario, config.alpha, betas, ps, config.measures, config.workers
        )

    rows: list[SweepRecord] = []
    idx = 0
    for beta in betas:
        for p in ps:
            for measure in config.measures:
                for eng in engines:
                    if eng == "numeric":
                        value = numeric[idx][measure]  # type: ignore[index]
                    else:
                        value = cf_eval(config.scenario, measure, config.alpha, beta, p)
                    rows.append(
                        SweepRecord(
                            config.scenario, measure, eng, config.alpha, beta, p, value
                        )
                    )
            idx += 1
    return rows


# --- serialization -----------------------------------------------------------

def _fmt(x: float) -> str:
    if math.isnan(x):
        return "nan"
    return format(x, ".17g")


def write_text_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def records_to_csv(rows: Iterable[SweepRecord]) -> str:
    lines = ["scenario,measure,engine,alpha,beta,p,value"]
    for r in rows:
        lines.append(
            f"{r.scenario},{r.measure},{r.engine},"
            f"{_fmt(r.alpha)},{_fmt(r.beta)},{_fmt(r.p)},{_fmt(r.value)}"
        )
    return "\n".join(lines) + "\n"


def records_to_json(rows: Iterable[SweepRecord]) -> str:
    payload = [
        {
            "scenario": r.scenario,
            "measure": r.measure,
            "engine": r.engine,
            "alpha": r.alpha,
            "beta": r.beta,
            "p": r.p,
            "value": None if math.isnan(r.value) else r.value,
        }
        for r in rows
    ]
    return json.dumps(payload, indent=2) + "\n"


def write_records(rows: Sequence[SweepRecord], path: str, fmt: str) -> None:
    text = records_to_csv(rows) if fmt == "csv" else records_to_json(rows)
    write_text_atomic(path, text)


# --- sudden-death boundary ----------------------------------------------------

S_THRESHOLD = 4.0
ZERO_TOL = 1e-12


@dataclass(frozen=True)
class BoundaryPoint:
    beta: float
    p_star: float | None
    status: str  # "crossing" or "no_crossing"


@dataclass(frozen=True)
class BoundaryResult:
    scenario: str
    measure: str
    alpha: float
    threshold: float
    curve: tuple[BoundaryPoint, ...]
    bisect_tol: float
    scan_step: float


def _bisect(predicate, lo: float, hi: float, tol: float) -> float:
    """First p where `predicate` (true at lo, false at hi) flips."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            lo = mid
        else:
            hi = mid
    return hi


def find_boundary(
    scenario_name: str,
    measure: str,
    alpha: float,
    beta_samples: int,
    bisect_tol: float = 1e-6,
    scan_step: float = 1e-3,
) -> BoundaryResult:
    """Sudden-death curve p*(beta) from the numeric engine.

    For S the crossing is where the Svetlichny value falls to 4 from above;
    for E it is where the entanglement first reaches 0. A coarse scan locates
    the first crossing bracket (the surfaces are not globally monotonic in p),
    then bisection refines it. Absence of a crossing is data, not an error; a
    zero reached only at the p = 1 endpoint counts as no crossing in [0, 1).
    """
    if measure not in ("S", "E"):
        raise ConfigError(f"boundary measure must be S or E, got {measure!r}")
    scen = scenario(scenario_name)
    threshold = S_THRESHOLD if measure == "S" else 0.0

    def value(beta: float, p: float) -> float:
        v = numeric_measures(scen, alpha, beta, p, (measure,))[measure]
        if math.isnan(v):
            raise ConfigError(
                f"numeric {measure} undefined for scenario {scenario_name}: "
                "its reduced state is not X-structured"
            )
        return v

    betas = _axis((0.0, BETA_MAX, beta_samples))
    n_scan = int(round(1.0 / scan_step))
    scan_ps = [k / n_scan for k in range(n_scan + 1)]

    curve: list[BoundaryPoint] = []
    for beta in betas:
        values = [value(beta, p) for p in scan_ps]
        if measure == "S":
            above = [v > S_THRESHOLD + 1e-12 for v in values]
            if not above[0]:
                # Starts at/below the classical bound: p* = 0 only if it
                # starts exactly on it, otherwise there is nothing to cross.
                if abs(values[0] - S_THRESHOLD) <= 1e-9:
                    curve.append(BoundaryPoint(beta, 0.0, "crossing"))
                else:
                    curve.append(BoundaryPoint(beta, None, "no_crossing"))
                continue
            first_cross = next((k for k, a in enumerate(above) if not a), None)
            if first_cross is None:
                curve.append(BoundaryPoint(beta, None, "no_crossing"))
                continue
            lo, hi = scan_ps[first_cross - 1], scan_ps[first_cross]
            p_star = _bisect(
                lambda p: value(beta, p) > S_THRESHOLD, lo, hi, bisect_tol
            )
            curve.append(BoundaryPoint(beta, p_star, "crossing"))
        else:
            positive = [v > ZERO_TOL for v in values]
            if not positive[0]:
                curve.append(BoundaryPoint(beta, 0.0, "crossing"))
                continue
            first_zero = next((k for k, pos in enumerate(positive) if not pos), None)
            if first_zero is None or scan_ps[first_zero] >= 1.0 - 1e-12:
                curve.append(BoundaryPoint(beta, None, "no_crossing"))
                continue
            lo, hi = scan_ps[first_zero - 1], scan_ps[first_zero]
            p_star = _bisect(lambda p: value(beta, p) > ZERO_TOL, lo, hi, bisect_tol)
            curve.append(BoundaryPoint(beta, p_star, "crossing"))

    return BoundaryResult(
        scenario=scenario_name,
        measure=measure,
        alpha=alpha,
        threshold=threshold,
        curve=tuple(curve),
        bisect_tol=bisect_tol,
        scan_step=scan_step,
    )


def boundary_to_csv(result: BoundaryResult) -> str:
    lines = ["beta,p_star,status"]
    for pt in result.curve:
        p_star = "" if pt.p_star is None else _fmt(pt.p_star)
        lines.append(f"{_fmt(pt.beta)},{p_star},{pt.status}")
    return "\n".join(lines) + "\n"


def boundary_to_json(result: BoundaryResult) -> str:
    payload = {
        "scenario": result.scenario,
        "measure": result.measure,
        "alpha": result.alpha,
        "threshold": result.threshold,
        "bisect_tol": result.bisect_tol,
        "scan_step": result.scan_step,
        "curve": [
            {"beta": pt.beta, "p_star": pt.p_star, "status": pt.status}
            for pt in result.curve
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


# --- figure data ---------------------------------------------------------------

#: figure id -> (scenario, measures). All panels are drawn at alpha = 1/sqrt(2).
FIGURES: dict[int, tuple[str, tuple[str, ...]]] = {
    1: ("ABC_I", ("S",)),
    2: ("ABC_I", ("E", "C")),
    3: ("ABC_II", ("S", "E")),
    4: ("AB_I_C_I", ("S", "E")),
    5: ("AB_I_C_II", ("S", "E")),
    6: ("AB_II_C_II", ("S", "E")),
    7: ("AB_I_B_II", ("S", "E")),
}


def emit_figure_data(
    figure_id: int, alpha: float, resolution: int, out_path: str
) -> list[str]:
    """Write beta/p/value surfaces for one figure, one file per measure.

    Single-measure figures write exactly `out_path`; multi-measure figures
    suffix the measure before the extension. Figure 7's S and E surfaces come
    from the closed-form catalog because its reduced state is not
    X-structured and the numeric pipeline leaves those measures undefined.
    """
    if figure_id not in FIGURES:
        raise ConfigError(f"figure id must be in {sorted(FIGURES)}, got {figure_id}")
    if resolution < 16:
        raise ConfigError(f"resolution must be >= 16, got {resolution}")
    scenario_name, measures = FIGURES[figure_id]
    betas = _axis((0.0, BETA_MAX, resolution))
    ps = _axis((0.0, 1.0, resolution))

    use_catalog = scenario_name == "AB_I_B_II"
    numeric = None
    if not use_catalog:
        numeric = _numeric_grid(scenario_name, alpha, betas, ps, measures, workers=1)

    stem, ext = os.path.splitext(out_path)
    written = []
    for measure in measures:
        path = out_path if len(measures) == 1 else f"{stem}_{measure}{ext or '.csv'}"
        lines = ["beta,p,value"]
        idx = 0
        for beta in betas:
            for p in ps:
                if use_catalog:
                    v = cf_eval(scenario_name, measure, alpha, beta, p)
                else:
                    v = numeric[idx][measure]  # type: ignore[index]
                lines.append(f"{_fmt(beta)},{_fmt(p)},{_fmt(v)}")
                idx += 1
        write_text_atomic(path, "\n".join(lines) + "\n")
        written.append(path)
    return written


# --- sum rules -----------------------------------------------------------------

def sum_rule_samples(
    alpha: float | None, samples: int, seed: int
) -> dict:
    """Max residual of each coherence relation over random parameter points.

    When `alpha` is None it is sampled uniformly on [0, 1] together with
    (beta, p); otherwise it is held fixed. The relation marked `asserted=False`
    is reported with its alpha-dependence instead of being gated: its residual
    scales as alpha^2 (1 - alpha^2)^2, vanishing only at alpha in {0, 1}.
    """
    rng = np.random.default_rng(seed)
    alphas = rng.uniform(0.0, 1.0, samples) if alpha is None else np.full(samples, alpha)
    betas = rng.uniform(0.0, BETA_MAX, samples)
    ps = rng.uniform(0.0, 1.0, samples)

    worst = {rule.name: {"numeric": 0.0, "closedform": 0.0} for rule in SUM_RULES}
    for a, b, p in zip(alphas, betas, ps):
        for res in cf_sum_rules(float(a), float(b), float(p)):
            worst[res.name]["numeric"] = max(worst[res.name]["numeric"], res.numeric_residual)
            worst[res.name]["closedform"] = max(
                worst[res.name]["closedform"], res.closedform_residual
            )

    # alpha-dependence of the reported-only relation at a fixed (beta, p).
    beta0, p0 = math.pi / 6.0, 0.3
    alpha_dependence = []
    for a in [0.1 * k for k in range(1, 10)]:
        res = next(r for r in cf_sum_rules(a, beta0, p0) if not r.asserted)
        scale = a * a * (1.0 - a * a) ** 2
        alpha_dependence.append(
            {
                "alpha": a,
                "numeric_residual": res.numeric_residual,
                "residual_over_alpha2_times_1_minus_alpha2_sq": res.numeric_residual / scale,
            }
        )

    return {
        "samples": samples,
        "seed": seed,
        "alpha": alpha,
        "rules": [
            {
                "name": rule.name,
                "asserted": rule.asserted,
                "max_numeric_residual": worst[rule.name]["numeric"],
                "max_closedform_residual": worst[rule.name]["closedform"],
            }
            for rule in SUM_RULES
        ],
        "reported_rule_alpha_dependence": {
            "beta": beta0,
            "p": p0,
            "points": alpha_dependence,
            "note": (
                "residual of same_observer_weighted_sq scales as "
                "alpha^2*(1-alpha^2)^2 at fixed (beta, p); it vanishes only "
                "at alpha in {0, 1}"
            ),
        },
    }


# --- audit ---------------------------------------------------------------------

@dataclass(frozen=True)
class AuditReport:
    payload: dict
    flags: tuple[str, ...] = field(default=())

    def to_json(self) -> str:
        return json.dumps(_jsonify(self.payload), indent=2) + "\n"

    @property
    def has_flags(self) -> bool:
        return bool(self.flags)


def _jsonify(obj):
    if isinstance(obj, float):
        return None if math.isnan(obj) else obj
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    return obj


def run_audit(config: SweepConfig, scenarios: Sequence[str] | None = None) -> AuditReport:
    """Compare the closed-form catalog against the numeric engine.

    The numeric engine is authoritative. Every (scenario, measure) with a
    maximum grid deviation above `config.tol` is flagged with both engine
    values at the worst point; scenarios whose reduced state is not
    X-structured are flagged as such for S/E (no numeric value exists to
    compare). The asserted sum rules are gated at 1e-10 over random points.
    """
    config.validate()
    if config.engine != "both":
        raise ConfigError("audit requires engine=both")
    names = list(scenarios) if scenarios is not None else sorted(SCENARIOS)
    betas, ps = _axis(config.beta_range), _axis(config.p_range)

    entries = []
    flags: list[str] = []
    for name in names:
        numeric = _numeric_grid(
            name, config.alpha, betas, ps, tuple(MEASURES), config.workers
        )
        x_structured = is_x_structured(name)
        for measure in MEASURES:
            if (name, measure) not in CATALOG:
                continue
            if measure in ("S", "E") and not x_structured:
                entries.append(
                    {
                        "scenario": name,
                        "measure": measure,
                        "status": "not_x_structured",
                        "detail": (
                            "reduced state is not X-structured; numeric "
                            f"{measure} is undefined and the closed form "
                            "cannot be checked against first principles"
                        ),
                    }
                )
                flags.append(f"{name}/{measure}: reduced state not X-structured")
                continue
            worst_dev, worst_idx = -1.0, 0
            idx = 0
            for bi in range(len(betas)):
                for pi in range(len(ps)):
                    cf = cf_eval(name, measure, config.alpha, betas[bi], ps[pi])
                    dev = abs(numeric[idx][measure] - cf)
                    if dev > worst_dev:
                        worst_dev, worst_idx = dev, idx
                    idx += 1
            bi, pi = divmod(worst_idx, len(ps))
            cf_at = cf_eval(name, measure, config.alpha, betas[bi], ps[pi])
            ok = worst_dev <= config.tol
            entries.append(
                {
                    "scenario": name,
                    "measure": measure,
                    "status": "compared",
                    "max_abs_deviation": worst_dev,
                    "beta_at_max": betas[bi],
                    "p_at_max": ps[pi],
                    "numeric_at_max": numeric[worst_idx][measure],
                    "closedform_at_max": cf_at,
                    "pass": ok,
                }
            )
            if not ok:
                flags.append(
                    f"{name}/{measure}: max deviation {_fmt(worst_dev)} at "
                    f"beta={_fmt(betas[bi])}, p={_fmt(ps[pi])} "
                    f"(numeric={_fmt(numeric[worst_idx][measure])}, "
                    f"closedform={_fmt(cf_at)})"
                )

    rules = sum_rule_samples(None, config.samples, config.seed)
    for rule in rules["rules"]:
        if rule["asserted"] and rule["max_numeric_residual"] > 1e-10:
            flags.append(
                f"sum rule {rule['name']}: numeric residual "
                f"{_fmt(rule['max_numeric_residual'])} exceeds 1e-10"
            )

    payload = {
        "config": {
            "alpha": config.alpha,
            "beta_range": list(config.beta_range),
            "p_range": list(config.p_range),
            "tolerance": config.tol,
            "samples": config.samples,
            "seed": config.seed,
            "scenarios": names,
        },
        "entries": entries,
        "sum_rules": rules,
        "flags": flags,
    }
    return AuditReport(payload=payload, flags=tuple(flags))
