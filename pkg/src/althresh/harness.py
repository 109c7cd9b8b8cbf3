"""Benchmark harness: the day-by-day querying protocol over folds and seeds.

One run walks the configured round days in order.  At each round day the
pool of sequences that have arrived so far splits by arrival order into
training data and a validation tail, the scorer refits on the training part,
the chosen strategy queries the not-yet-queried validation sequences, the
simulated oracle answers, and the accumulated labels fit a threshold.  Each
round records the test F1 of the fitted threshold next to the unsupervised
and test-optimal baselines.  Runs repeat over every (fold, seed) pair; a
fold fixes the dataset, a seed fixes the strategy and oracle streams.
"""

from __future__ import annotations

import csv
import json
import platform
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence as SequenceType, Tuple, Union

import numpy as np
import yaml

from . import __version__
from .core import (
    CandidateEntry,
    Label,
    LabelSource,
    QueriedEntry,
    QueryState,
    Rng,
    Sequence,
    AnomalyScore,
    move_to_query_set,
)
from .evaluation import aggregate, classify, prf1
from .io import DataFormatError, load_scores, read_sequences
from .oracle import OracleConfig, simulated_label
from .strategies import BudgetClampWarning, RoundRequest, StrategyKind, run_round
from .synthetic import (
    SECONDS_PER_DAY,
    GeneratedDataset,
    GeneratorConfig,
    ScorerConfig,
    generate_dataset,
    reference_score,
)
from .thresholding import Threshold, best_threshold, fit_threshold, unsupervised_threshold

__all__ = [
    "ConfigError",
    "GeneratedSource",
    "ExternalSource",
    "ExperimentConfig",
    "RunRecord",
    "RunFailure",
    "SummaryRow",
    "ExperimentReport",
    "ScoreCache",
    "run_experiment",
    "merge_reports",
    "summarize",
    "emit_report",
    "report_from_dump",
    "load_config",
    "config_from_mapping",
    "config_to_mapping",
]


class ConfigError(ValueError):
    """An experiment config file or mapping failed validation."""


@dataclass(frozen=True)
class GeneratedSource:
    """Synthetic data source; fold numbers seed the generator."""

    sequences_per_day: int = 6
    channels: int = 2
    length_range: Tuple[int, int] = (60, 120)
    anomaly_rate: float = 0.15
    window_w: int = 8

    def __post_init__(self) -> None:
        if self.window_w < 1:
            raise ConfigError("window_w must be >= 1")


@dataclass(frozen=True)
class ExternalSource:
    """Pre-scored data source read from JSONL files.

    `scores` and `test_scores` may contain a `{day}` placeholder resolved per
    round day; without one the same file serves every round.  Pool sequences
    need ground truth so the simulated oracle can answer.
    """

    sequences: str
    test_sequences: str
    scores: str
    test_scores: str


DataSource = Union[GeneratedSource, ExternalSource]


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one benchmark run needs."""

    strategy: StrategyKind
    budget: int = 10
    p_m: float = 0.0
    round_days: Tuple[int, ...] = (1, 7, 14, 21, 28)
    folds: Tuple[int, ...] = (1, 2, 3)
    seeds: Tuple[int, ...] = (1, 2, 3)
    validation_fraction: float = 0.2
    data_source: DataSource = field(default_factory=GeneratedSource)

    def __post_init__(self) -> None:
        object.__setattr__(self, "round_days", tuple(int(d) for d in self.round_days))
        object.__setattr__(self, "folds", tuple(int(f) for f in self.folds))
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
        if self.budget < 1:
            raise ConfigError("budget must be >= 1")
        if not 0.0 <= self.p_m <= 1.0:
            raise ConfigError("p_m must lie in [0, 1]")
        if not self.round_days:
            raise ConfigError("round_days must not be empty")
        if any(d < 1 for d in self.round_days):
            raise ConfigError("round_days must be >= 1")
        if any(a >= b for a, b in zip(self.round_days, self.round_days[1:])):
            raise ConfigError("round_days must be strictly increasing")
        if not self.folds or not self.seeds:
            raise ConfigError("folds and seeds must not be empty")
        if not 0.0 < self.validation_fraction < 1.0:
            raise ConfigError("validation_fraction must lie in (0, 1)")


@dataclass(frozen=True)
class RunRecord:
    """Result of one (fold, seed, round day) step."""

    strategy: str
    budget: int
    p_m: float
    fold: int
    seed: int
    day: int
    f1_fitted: float
    f1_us: float
    f1_best: float
    tau_fitted: float
    tau_us: float
    tau_best: float
    n_labels: int
    pool_size: int
    n_selected: int
    clamped: bool


@dataclass(frozen=True)
class RunFailure:
    """A (fold, seed) run that aborted, with the round day it failed on."""

    strategy: str
    budget: int
    p_m: float
    fold: int
    seed: int
    day: Optional[int]
    message: str


@dataclass(frozen=True)
class SummaryRow:
    """One aggregated report line; baselines carry no budget or p_m."""

    strategy: str
    budget: Optional[int]
    p_m: Optional[float]
    day: int
    f1_mean: float
    f1_std: float
    n_runs: int


@dataclass(frozen=True)
class ExperimentReport:
    """Per-run records plus context needed to rebuild every report artifact."""

    runs: Tuple[RunRecord, ...]
    failures: Tuple[RunFailure, ...]
    configs: Tuple[dict, ...]
    versions: Tuple[Tuple[str, str], ...]


class ScoreCache:
    """Memoises datasets and per-(fold, day) scores across runs.

    Keys include the data-source settings, so one cache can serve several
    experiment configs that share a data source (for example four strategies
    benchmarked on the same folds).
    """

    def __init__(self) -> None:
        self.datasets: Dict[tuple, "_FoldData"] = {}
        self.scores: Dict[tuple, Tuple[Tuple[AnomalyScore, ...], Tuple[AnomalyScore, ...]]] = {}


@dataclass
class _FoldData:
    pool: List[Sequence]
    pool_days: List[int]
    test: List[Sequence]
    source: DataSource

    def through_day(self, day: int) -> List[Sequence]:
        return [seq for seq, d in zip(self.pool, self.pool_days) if d <= day]


def _assign_days(sequences: SequenceType[Sequence]) -> List[int]:
    """Day index per sequence from cumulative duration, starting at day 1."""
    days = []
    cum = 0.0
    for seq in sequences:
        days.append(int(cum // SECONDS_PER_DAY) + 1)
        cum += seq.duration_s
    return days


def _fold_data(config: ExperimentConfig, fold: int, cache: ScoreCache) -> _FoldData:
    source = config.data_source
    key = (repr(source), max(config.round_days), fold)
    if key in cache.datasets:
        return cache.datasets[key]
    if isinstance(source, GeneratedSource):
        generated = generate_dataset(
            GeneratorConfig(
                n_days=max(config.round_days),
                sequences_per_day=source.sequences_per_day,
                channels=source.channels,
                length_range=source.length_range,
                anomaly_rate=source.anomaly_rate,
                seed=fold,
            )
        )
        pool: List[Sequence] = []
        pool_days: List[int] = []
        for day_index, group in enumerate(generated.days, start=1):
            pool.extend(group)
            pool_days.extend([day_index] * len(group))
        data = _FoldData(pool=pool, pool_days=pool_days, test=list(generated.test), source=source)
    else:
        pool = read_sequences(source.sequences)
        test = read_sequences(source.test_sequences)
        data = _FoldData(pool=pool, pool_days=_assign_days(pool), test=test, source=source)
    cache.datasets[key] = data
    return data


def _resolve_pattern(pattern: str, day: int) -> str:
    return pattern.replace("{day}", str(day)) if "{day}" in pattern else pattern


def _external_scores(
    path: str,
    day: int,
    universe: SequenceType[Sequence],
    wanted: SequenceType[Sequence],
) -> List[AnomalyScore]:
    """Scores for `wanted`, from a file that may cover all of `universe`."""
    resolved = _resolve_pattern(path, day)
    by_id = {score.sequence_id: score for score in load_scores(resolved, universe)}
    missing = [seq.id for seq in wanted if seq.id not in by_id]
    if missing:
        raise DataFormatError(
            f"{resolved}: missing scores for {len(missing)} sequences, "
            f"first {missing[0]!r}"
        )
    return [by_id[seq.id] for seq in wanted]


def _split_sizes(n_pool: int, validation_fraction: float) -> Tuple[int, int]:
    """(train, validation) sizes: the validation tail is the rounded fraction,
    at least one sequence, rounded half up."""
    n_val = max(1, int(n_pool * validation_fraction + 0.5))
    return n_pool - n_val, n_val


def _day_scores(
    config: ExperimentConfig,
    fold: int,
    day: int,
    data: _FoldData,
    cache: ScoreCache,
) -> Tuple[List[Sequence], List[AnomalyScore], List[AnomalyScore]]:
    """Validation sequences plus validation and test scores for one round day."""
    split = data.through_day(day)
    if not split:
        raise ValueError(f"no sequences through day {day}")
    n_train, n_val = _split_sizes(len(split), config.validation_fraction)
    if n_train < 1:
        raise ValueError(f"day {day} leaves no training data before the validation tail")
    train, val = split[:n_train], split[n_train:]
    key = (repr(data.source), config.validation_fraction, fold, day)
    if key in cache.scores:
        val_scores, test_scores = cache.scores[key]
        return val, list(val_scores), list(test_scores)
    if isinstance(data.source, GeneratedSource):
        scorer = ScorerConfig(window_w=data.source.window_w, training=tuple(train))
        val_scores = [reference_score(seq, scorer) for seq in val]
        test_scores = [reference_score(seq, scorer) for seq in data.test]
    else:
        val_scores = _external_scores(data.source.scores, day, data.pool, val)
        test_scores = _external_scores(data.source.test_scores, day, data.test, data.test)
    cache.scores[key] = (tuple(val_scores), tuple(test_scores))
    return val, list(val_scores), list(test_scores)


def _truth_label(seq: Sequence) -> Label:
    if seq.truth is None:
        raise ValueError(f"sequence {seq.id!r} lacks the ground truth the oracle needs")
    return Label(value=seq.truth, source=LabelSource.GROUND_TRUTH)


def _test_f1(tau: Threshold, test_scores: SequenceType[AnomalyScore], truths: SequenceType[Label]) -> float:
    predictions = [classify(score, tau) for score in test_scores]
    _, _, f1 = prf1(predictions, truths)
    return f1


def _run_protocol(
    config: ExperimentConfig, fold: int, seed: int, cache: ScoreCache
) -> Tuple[List[RunRecord], Optional[RunFailure]]:
    strategy_rng = Rng.from_seed(seed).child(fold, "strategy")
    oracle = OracleConfig(
        mislabel_probability=config.p_m, rng=Rng.from_seed(seed).child(fold, "oracle")
    )
    records: List[RunRecord] = []
    queried: Tuple[QueriedEntry, ...] = ()
    previous_fitted: Optional[float] = None
    current_day: Optional[int] = None
    try:
        data = _fold_data(config, fold, cache)
        test_truths = [_truth_label(seq) for seq in data.test]
        for round_index, day in enumerate(config.round_days):
            current_day = day
            val, val_scores, test_scores = _day_scores(config, fold, day, data, cache)
            tau_us = unsupervised_threshold(val_scores)
            queried_ids = {entry.sequence.id for entry in queried}
            candidates = tuple(
                CandidateEntry(sequence=seq, score=score)
                for seq, score in zip(val, val_scores)
                if seq.id not in queried_ids
            )
            state = QueryState(candidates=candidates, queried=queried, round=round_index)
            hint = previous_fitted if config.strategy is StrategyKind.UQS and queried else None
            request = RoundRequest(
                budget=config.budget,
                strategy=config.strategy,
                rng=strategy_rng,
                threshold_hint=hint,
            )
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                selected = run_round(state, request)
            clamped = any(issubclass(w.category, BudgetClampWarning) for w in caught)
            for seq_id in selected:
                index = state.candidate_ids().index(seq_id)
                truth = _truth_label(state.candidates[index].sequence)
                answer = simulated_label(truth, oracle)
                state = move_to_query_set(state, index, answer)
            queried = state.queried
            if not queried:
                raise ValueError(f"no labelled sequences after the day {day} round")
            fitted = fit_threshold([(entry.score, entry.label) for entry in queried])
            previous_fitted = fitted.value
            tau_best = best_threshold(list(zip(test_scores, test_truths)))
            records.append(
                RunRecord(
                    strategy=config.strategy.value,
                    budget=config.budget,
                    p_m=config.p_m,
                    fold=fold,
                    seed=seed,
                    day=day,
                    f1_fitted=_test_f1(fitted, test_scores, test_truths),
                    f1_us=_test_f1(tau_us, test_scores, test_truths),
                    f1_best=_test_f1(tau_best, test_scores, test_truths),
                    tau_fitted=fitted.value,
                    tau_us=tau_us.value,
                    tau_best=tau_best.value,
                    n_labels=len(queried),
                    pool_size=len(candidates),
                    n_selected=len(selected),
                    clamped=clamped,
                )
            )
    except (ValueError, DataFormatError, OSError) as exc:
        return records, RunFailure(
            strategy=config.strategy.value,
            budget=config.budget,
            p_m=config.p_m,
            fold=fold,
            seed=seed,
            day=current_day,
            message=str(exc),
        )
    return records, None


def run_experiment(
    config: ExperimentConfig, cache: Optional[ScoreCache] = None
) -> ExperimentReport:
    """Run the full protocol over every (fold, seed) pair.

    A failed (fold, seed) run is recorded and skipped; the remaining runs
    still contribute.  Passing a shared ScoreCache lets several configs on
    the same data source reuse datasets and scores.
    """
    cache = cache if cache is not None else ScoreCache()
    runs: List[RunRecord] = []
    failures: List[RunFailure] = []
    for fold in config.folds:
        for seed in config.seeds:
            records, failure = _run_protocol(config, fold, seed, cache)
            runs.extend(records)
            if failure is not None:
                failures.append(failure)
    report = ExperimentReport(
        runs=tuple(runs),
        failures=tuple(failures),
        configs=(config_to_mapping(config),),
        versions=_versions(),
    )
    return _sorted_report(report)


def _versions() -> Tuple[Tuple[str, str], ...]:
    return (
        ("althresh", __version__),
        ("numpy", np.__version__),
        ("python", platform.python_version()),
    )


def _run_key(record: RunRecord) -> tuple:
    return (
        record.strategy,
        record.budget,
        record.p_m,
        record.day,
        record.fold,
        record.seed,
    )


def _sorted_report(report: ExperimentReport) -> ExperimentReport:
    runs = tuple(sorted(report.runs, key=_run_key))
    failures = tuple(
        sorted(
            report.failures,
            key=lambda f: (f.strategy, f.budget, f.p_m, f.fold, f.seed, f.day or 0),
        )
    )
    return ExperimentReport(
        runs=runs, failures=failures, configs=report.configs, versions=report.versions
    )


def merge_reports(reports: SequenceType[ExperimentReport]) -> ExperimentReport:
    """Merge reports by run key; order of the inputs never changes the result.

    Raises:
        ValueError: If nothing is given, versions disagree, or two reports
            carry conflicting records for the same run.
    """
    if not reports:
        raise ValueError("cannot merge zero reports")
    versions = reports[0].versions
    for report in reports[1:]:
        if report.versions != versions:
            raise ValueError("cannot merge reports produced by different versions")
    by_key: Dict[tuple, RunRecord] = {}
    for report in reports:
        for record in report.runs:
            key = _run_key(record)
            if key in by_key and by_key[key] != record:
                raise ValueError(f"conflicting records for run {key}")
            by_key[key] = record
    failures: List[RunFailure] = []
    seen_failures = set()
    configs: Dict[str, dict] = {}
    for report in reports:
        for failure in report.failures:
            marker = repr(failure)
            if marker not in seen_failures:
                seen_failures.add(marker)
                failures.append(failure)
        for config in report.configs:
            configs.setdefault(json.dumps(config, sort_keys=True), config)
    merged = ExperimentReport(
        runs=tuple(by_key.values()),
        failures=tuple(failures),
        # canonical config order keeps the merge independent of input order
        configs=tuple(configs[marker] for marker in sorted(configs)),
        versions=versions,
    )
    return _sorted_report(merged)


BASELINE_US = "tau_us"
BASELINE_BEST = "tau_best"


def summarize(report: ExperimentReport) -> List[SummaryRow]:
    """Aggregate F1 per (strategy, budget, p_m, day), then per-day baselines.

    Baseline rows pool the unsupervised and test-optimal F1 over distinct
    (fold, seed, day) runs; those values do not depend on the strategy, so
    duplicates across merged strategy cells collapse first.
    """
    cells: Dict[tuple, List[float]] = {}
    baselines: Dict[Tuple[int, int, int], Tuple[float, float]] = {}
    for record in report.runs:
        cell = (record.strategy, record.budget, record.p_m, record.day)
        cells.setdefault(cell, []).append(record.f1_fitted)
        baselines.setdefault((record.day, record.fold, record.seed), (record.f1_us, record.f1_best))
    rows: List[SummaryRow] = []
    for (strategy, budget, p_m, day), values in sorted(cells.items()):
        summary = aggregate(values)
        rows.append(
            SummaryRow(
                strategy=strategy,
                budget=budget,
                p_m=p_m,
                day=day,
                f1_mean=summary.mean,
                f1_std=summary.std,
                n_runs=summary.n_runs,
            )
        )
    per_day: Dict[int, Tuple[List[float], List[float]]] = {}
    for (day, _fold, _seed), (f1_us, f1_best) in sorted(baselines.items()):
        per_day.setdefault(day, ([], []))
        per_day[day][0].append(f1_us)
        per_day[day][1].append(f1_best)
    for name, slot in ((BASELINE_US, 0), (BASELINE_BEST, 1)):
        for day in sorted(per_day):
            summary = aggregate(per_day[day][slot])
            rows.append(
                SummaryRow(
                    strategy=name,
                    budget=None,
                    p_m=None,
                    day=day,
                    f1_mean=summary.mean,
                    f1_std=summary.std,
                    n_runs=summary.n_runs,
                )
            )
    return rows


def _write_table(rows: SequenceType[SummaryRow], path: Path) -> None:
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["strategy", "budget", "p_m", "day", "f1_mean", "f1_std", "n_runs"])
        for row in rows:
            writer.writerow(
                [
                    row.strategy,
                    "" if row.budget is None else row.budget,
                    "" if row.p_m is None else row.p_m,
                    row.day,
                    f"{row.f1_mean:.6f}",
                    f"{row.f1_std:.6f}",
                    row.n_runs,
                ]
            )


def _write_dump(report: ExperimentReport, rows: SequenceType[SummaryRow], path: Path) -> None:
    payload = {
        "configs": list(report.configs),
        "runs": [vars(record) for record in report.runs],
        "failures": [vars(failure) for failure in report.failures],
        "summaries": [vars(row) for row in rows],
        "versions": dict(report.versions),
    }
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def _write_chart(rows: SequenceType[SummaryRow], path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "althresh"
    # keep text as text so the chart stays small and font independent
    plt.rcParams["svg.fonttype"] = "none"
    days = sorted({row.day for row in rows})
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    series: Dict[str, List[SummaryRow]] = {}
    for row in rows:
        if row.strategy in (BASELINE_US, BASELINE_BEST):
            label = row.strategy
        else:
            label = f"{row.strategy} B={row.budget} p_m={row.p_m}"
        series.setdefault(label, []).append(row)
    for label, entries in series.items():
        entries = sorted(entries, key=lambda r: r.day)
        xs = [e.day for e in entries]
        means = np.array([e.f1_mean for e in entries])
        stds = np.array([e.f1_std for e in entries])
        if label in (BASELINE_US, BASELINE_BEST):
            ax.plot(xs, means, linestyle="--", linewidth=1.2, label=label)
            ax.fill_between(xs, means - stds, means + stds, alpha=0.15)
        else:
            ax.errorbar(xs, means, yerr=stds, marker="o", capsize=3, label=label)
    ax.set_xticks(days)
    if len(days) > 1:
        ax.set_xlim(min(days), max(days))
    else:
        ax.set_xlim(days[0] - 0.5, days[0] + 0.5)
    ax.set_xlabel("day")
    ax.set_ylabel("test F1")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def emit_report(report: ExperimentReport, out_dir) -> List[Path]:
    """Write report.csv, report.json, and report.svg under `out_dir`.

    The table and dump are deterministic byte for byte for a given report.

    Raises:
        ValueError: If the report holds no runs; an empty report never
            produces files.
    """
    if not report.runs:
        raise ValueError("refusing to emit an empty report")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = summarize(report)
    table_path = out / "report.csv"
    dump_path = out / "report.json"
    chart_path = out / "report.svg"
    _write_table(rows, table_path)
    _write_dump(report, rows, dump_path)
    _write_chart(rows, chart_path)
    return [table_path, dump_path, chart_path]


def report_from_dump(path) -> ExperimentReport:
    """Rebuild an ExperimentReport from a report.json dump."""
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    runs = tuple(RunRecord(**record) for record in payload["runs"])
    failures = tuple(RunFailure(**failure) for failure in payload["failures"])
    versions = tuple(sorted(payload["versions"].items()))
    report = ExperimentReport(
        runs=runs,
        failures=failures,
        configs=tuple(payload["configs"]),
        versions=versions,
    )
    return _sorted_report(report)


def config_to_mapping(config: ExperimentConfig) -> dict:
    """Plain mapping mirror of a config, as written in YAML files."""
    source = config.data_source
    if isinstance(source, GeneratedSource):
        source_map = {
            "kind": "generated",
            "sequences_per_day": source.sequences_per_day,
            "channels": source.channels,
            "length_range": list(source.length_range),
            "anomaly_rate": source.anomaly_rate,
            "window_w": source.window_w,
        }
    else:
        source_map = {
            "kind": "external",
            "sequences": source.sequences,
            "test_sequences": source.test_sequences,
            "scores": source.scores,
            "test_scores": source.test_scores,
        }
    return {
        "strategy": config.strategy.value,
        "budget": config.budget,
        "p_m": config.p_m,
        "round_days": list(config.round_days),
        "folds": list(config.folds),
        "seeds": list(config.seeds),
        "validation_fraction": config.validation_fraction,
        "data_source": source_map,
    }


def config_from_mapping(mapping: dict) -> ExperimentConfig:
    """Build a validated config from a plain mapping.

    Raises:
        ConfigError: Naming the offending key on any validation failure.
    """
    if not isinstance(mapping, dict):
        raise ConfigError("config must be a mapping")
    known = {
        "strategy",
        "budget",
        "p_m",
        "round_days",
        "folds",
        "seeds",
        "validation_fraction",
        "data_source",
    }
    unknown = set(mapping) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "strategy" not in mapping:
        raise ConfigError("config needs a strategy")
    try:
        strategy = StrategyKind(str(mapping["strategy"]).lower())
    except ValueError as exc:
        raise ConfigError(
            f"unknown strategy {mapping['strategy']!r}; "
            f"expected one of {[k.value for k in StrategyKind]}"
        ) from exc
    source_map = mapping.get("data_source", {"kind": "generated"})
    if not isinstance(source_map, dict):
        raise ConfigError("data_source must be a mapping")
    kind = source_map.get("kind", "generated")
    source_fields = {k: v for k, v in source_map.items() if k != "kind"}
    try:
        if kind == "generated":
            if "length_range" in source_fields:
                source_fields["length_range"] = tuple(source_fields["length_range"])
            source: DataSource = GeneratedSource(**source_fields)
        elif kind == "external":
            source = ExternalSource(**source_fields)
        else:
            raise ConfigError(f"unknown data_source kind {kind!r}")
        return ExperimentConfig(
            strategy=strategy,
            budget=int(mapping.get("budget", 10)),
            p_m=float(mapping.get("p_m", 0.0)),
            round_days=tuple(mapping.get("round_days", (1, 7, 14, 21, 28))),
            folds=tuple(mapping.get("folds", (1, 2, 3))),
            seeds=tuple(mapping.get("seeds", (1, 2, 3))),
            validation_fraction=float(mapping.get("validation_fraction", 0.2)),
            data_source=source,
        )
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path) -> ExperimentConfig:
    """Load an experiment config from a YAML (or JSON) file."""
    try:
        payload = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return config_from_mapping(payload)
