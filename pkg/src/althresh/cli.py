"""Command line interface.

Subcommands: `generate` synthetic data, `score` sequences against training
data, `query` one strategy round, `fit-threshold` from labelled scores,
`run` a full benchmark, `report` artifacts from a dump, and `serve` the
labelling service.  Exit codes: 0 on success, 1 for usage or config
problems, 2 for unreadable or invalid data files.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from .core import Label, LabelSource, LabelValue, CandidateEntry, QueriedEntry, QueryState, Rng, Sequence
from .harness import (
    ConfigError,
    ScoreCache,
    emit_report,
    load_config,
    report_from_dump,
    run_experiment,
)
from .io import (
    DataFormatError,
    load_scores,
    read_labels,
    read_scores,
    read_sequences,
    write_scores,
    write_sequences,
)
from .strategies import RoundRequest, StrategyKind, run_round
from .synthetic import GeneratorConfig, ScorerConfig, generate_dataset, reference_score
from .thresholding import best_threshold, fit_threshold

__all__ = ["main"]

USAGE_EXIT = 1
DATA_EXIT = 2


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures remapped from exit 2 to exit 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="althresh", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write a synthetic dataset")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--days", type=int, default=28)
    p.add_argument("--per-day", type=int, default=6)
    p.add_argument("--channels", type=int, default=2)
    p.add_argument("--min-length", type=int, default=60)
    p.add_argument("--max-length", type=int, default=120)
    p.add_argument("--anomaly-rate", type=float, default=0.15)
    p.add_argument("--seed", type=int, default=1)

    p = sub.add_parser("score", help="score sequences against training data")
    p.add_argument("--train", required=True, help="training sequences (JSONL)")
    p.add_argument("--input", required=True, help="sequences to score (JSONL)")
    p.add_argument("--out", required=True, help="output scores file (JSONL)")
    p.add_argument("--window", type=int, default=8)

    p = sub.add_parser("query", help="run one strategy round and print the selected ids")
    p.add_argument("--sequences", required=True, help="candidate sequences (JSONL)")
    p.add_argument("--scores", required=True, help="candidate scores (JSONL)")
    p.add_argument("--strategy", required=True, choices=[k.value for k in StrategyKind])
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threshold", type=float, default=None, help="current threshold (uqs)")
    p.add_argument(
        "--queried-scores",
        default=None,
        help="scores of already-queried sequences (JSONL), the dqs context",
    )

    p = sub.add_parser("fit-threshold", help="fit a threshold from labelled scores")
    p.add_argument("--scores", required=True, help="scores file (JSONL)")
    p.add_argument("--labels", required=True, help="labels file (JSONL: sequence_id, value)")
    p.add_argument(
        "--best",
        action="store_true",
        help="treat the labels as ground truth and report the oracle-best threshold",
    )

    p = sub.add_parser("run", help="run a benchmark config end to end")
    p.add_argument("--config", required=True, help="experiment config (YAML)")
    p.add_argument("--out", required=True, help="output directory for report files")

    p = sub.add_parser("report", help="rebuild report files from a report.json dump")
    p.add_argument("--dump", required=True, help="report.json from a previous run")
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("serve", help="serve the labelling API over one candidate pool")
    p.add_argument("--sequences", required=True, help="candidate sequences (JSONL)")
    p.add_argument("--scores", required=True, help="candidate scores (JSONL)")
    p.add_argument("--log", required=True, help="session event log (JSONL, appended)")
    p.add_argument("--session-id", default="session-1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _cmd_generate(args) -> int:
    config = GeneratorConfig(
        n_days=args.days,
        sequences_per_day=args.per_day,
        channels=args.channels,
        length_range=(args.min_length, args.max_length),
        anomaly_rate=args.anomaly_rate,
        seed=args.seed,
    )
    dataset = generate_dataset(config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    pool = [seq for group in dataset.days for seq in group]
    write_sequences(pool, out / "sequences.jsonl")
    write_sequences(dataset.test, out / "test_sequences.jsonl")
    print(f"wrote {len(pool)} pool sequences and {len(dataset.test)} test sequences to {out}")
    return 0


def _cmd_score(args) -> int:
    train = read_sequences(args.train)
    inputs = read_sequences(args.input)
    scorer = ScorerConfig(window_w=args.window, training=tuple(train))
    scores = [reference_score(seq, scorer) for seq in inputs]
    write_scores(scores, args.out)
    print(f"wrote {len(scores)} score traces to {args.out}")
    return 0


def _stub_sequence(seq_id: str, n_steps: int) -> Sequence:
    """Placeholder carrier for queried-score context; only the scores matter."""
    import numpy as np

    return Sequence(id=seq_id, channels=np.zeros((n_steps, 1)), duration_s=1.0)


def _cmd_query(args) -> int:
    sequences = read_sequences(args.sequences)
    scores = load_scores(args.scores, sequences)
    by_id = {seq.id: seq for seq in sequences}
    candidates = tuple(
        CandidateEntry(sequence=by_id[score.sequence_id], score=score) for score in scores
    )
    queried = ()
    if args.queried_scores:
        placeholder = Label(value=LabelValue.NOMINAL, source=LabelSource.HUMAN_ORACLE)
        queried = tuple(
            QueriedEntry(
                sequence=_stub_sequence(score.sequence_id, score.values.size),
                score=score,
                label=placeholder,
            )
            for score in read_scores(args.queried_scores)
        )
    state = QueryState(candidates=candidates, queried=queried)
    request = RoundRequest(
        budget=args.budget,
        strategy=StrategyKind(args.strategy),
        rng=Rng.from_seed(args.seed),
        threshold_hint=args.threshold,
    )
    for seq_id in run_round(state, request):
        print(seq_id)
    return 0


def _cmd_fit_threshold(args) -> int:
    scores = read_scores(args.scores)
    labels = read_labels(args.labels)
    missing = [score.sequence_id for score in scores if score.sequence_id not in labels]
    if missing:
        raise DataFormatError(
            f"{args.labels}: missing labels for {len(missing)} scores, first {missing[0]!r}"
        )
    source = LabelSource.GROUND_TRUTH if args.best else LabelSource.HUMAN_ORACLE
    labelled = [
        (score, Label(value=labels[score.sequence_id], source=source)) for score in scores
    ]
    tau = best_threshold(labelled) if args.best else fit_threshold(labelled)
    print(
        json.dumps(
            {"value": tau.value, "provenance": tau.provenance.value, "fitted_on": tau.fitted_on}
        )
    )
    return 0


def _cmd_run(args) -> int:
    config = load_config(args.config)
    report = run_experiment(config, ScoreCache())
    paths = emit_report(report, args.out)
    for path in paths:
        print(path)
    if report.failures:
        print(f"{len(report.failures)} run(s) failed; see report.json", file=sys.stderr)
    return 0


def _cmd_report(args) -> int:
    report = report_from_dump(args.dump)
    for path in emit_report(report, args.out):
        print(path)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import LabelSession, create_app

    sequences = read_sequences(args.sequences)
    scores = load_scores(args.scores, sequences)
    by_id = {seq.id: seq for seq in sequences}
    candidates = [(by_id[score.sequence_id], score) for score in scores]
    log_path = Path(args.log)
    if log_path.exists() and log_path.stat().st_size > 0:
        session = LabelSession.restore(candidates, log_path)
        print(f"restored session {session.session_id!r} from {log_path}")
    else:
        session = LabelSession(
            session_id=args.session_id,
            candidates=candidates,
            log_path=log_path,
            seed=args.seed,
        )
    uvicorn.run(create_app(session), host=args.host, port=args.port, log_level="info")
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "score": _cmd_score,
    "query": _cmd_query,
    "fit-threshold": _cmd_fit_threshold,
    "run": _cmd_run,
    "report": _cmd_report,
    "serve": _cmd_serve,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"althresh: config error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except (DataFormatError, FileNotFoundError, ValueError) as exc:
        print(f"althresh: data error: {exc}", file=sys.stderr)
        return DATA_EXIT


if __name__ == "__main__":
    sys.exit(main())
