"""Command-line front end.

Subcommands:
  play     one game, transcript to stdout or a file
  batch    config file (JSON key-value) -> records.csv
  sweep    bias threshold search -> sweep_records.csv, sweep_summary.csv
  audit    directory of transcript .jsonl files -> violation summary
  boxgame  threshold table (k, a, lower, f, upper, oracle_check) as CSV

Any config key can be overridden with --set key=value; the output
directory alone can also be overridden with $WALKERBREAKER_OUTDIR.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from fractions import Fraction
from pathlib import Path

from .board import Player
from .engine import Goal, play_game
from .experiments import (
    ExperimentConfig, audit_report_from_dir, bias_sweep, boxgame_tables,
    resolve_outdir, run_batch, write_boxgame_csv,
)
from .strategies import make_strategy, strategy_names


def _coerce(value: str):
    try:
        return json.loads(value)
    except json.JSONDecodeError:
        return value


def _apply_overrides(cfg_data: dict, pairs: list[str]) -> dict:
    for pair in pairs or []:
        if "=" not in pair:
            raise SystemExit(f"--set expects key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        cfg_data[key] = _coerce(value)
    return cfg_data


def _cmd_play(args) -> int:
    p = Fraction(args.p) if args.p else None
    eps = Fraction(args.epsilon) if args.epsilon else None
    walker = make_strategy(args.walker, p=p, eps=eps)
    breaker = make_strategy(args.breaker, p=p, eps=eps)
    result = play_game(
        args.n, args.b, Goal(args.goal), walker, breaker, seed=args.seed,
        first_player=Player(args.first_player),
        hamilton_check=args.hamilton_check,
    )
    text = result.transcript.to_jsonl()
    if args.transcript:
        Path(args.transcript).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"outcome: {result.outcome.value} after {result.rounds} rounds",
          file=sys.stderr)
    if result.isolated_vertex is not None:
        print(f"isolated vertex: {result.isolated_vertex}", file=sys.stderr)
    return 0


def _load_config(args) -> ExperimentConfig:
    data = {}
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
    _apply_overrides(data, args.set)
    cfg = ExperimentConfig.from_dict(data)
    resolve_outdir(cfg)
    return cfg


def _cmd_batch(args) -> int:
    cfg = _load_config(args)
    rows, summary = run_batch(cfg)
    print(json.dumps(summary, indent=2))
    print(f"{len(rows)} records -> {Path(cfg.outdir) / 'records.csv'}",
          file=sys.stderr)
    return 0


def _cmd_sweep(args) -> int:
    cfg = _load_config(args)
    summaries, rows = bias_sweep(cfg, args.b_min, args.b_max)
    print(json.dumps(summaries, indent=2))
    print(f"{len(rows)} probe records -> {Path(cfg.outdir) / 'sweep_records.csv'}",
          file=sys.stderr)
    return 0


def _cmd_audit(args) -> int:
    report = audit_report_from_dir(args.transcripts)
    print(json.dumps(report, indent=2))
    return 0


def _cmd_boxgame(args) -> int:
    rows = boxgame_tables(args.k_max, args.a_max, oracle=not args.no_oracle)
    if args.out:
        write_boxgame_csv(args.out, rows)
        print(f"{len(rows)} rows -> {args.out}", file=sys.stderr)
    else:
        import csv as _csv

        writer = _csv.DictWriter(sys.stdout, fieldnames=list(rows[0]),
                                 lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walkerbreaker",
        description="Biased Walker-Breaker games on complete graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    play = sub.add_parser("play", help="play one game and print the transcript")
    play.add_argument("--n", type=int, required=True)
    play.add_argument("--b", type=int, required=True)
    play.add_argument("--goal", choices=[g.value for g in Goal],
                      default="connectivity")
    play.add_argument("--walker", choices=strategy_names(),
                      default="walker.random")
    play.add_argument("--breaker", choices=strategy_names(),
                      default="breaker.random")
    play.add_argument("--seed", type=int, default=0)
    play.add_argument("--first-player", choices=["breaker", "walker"],
                      default="breaker")
    play.add_argument("--p", help="exposure probability (e.g. 2/5)")
    play.add_argument("--epsilon", help="degree-loss tolerance (e.g. 1/5)")
    play.add_argument("--hamilton-check", choices=["per_move", "end_only"],
                      default="per_move")
    play.add_argument("--transcript", help="write transcript to this file")
    play.set_defaults(func=_cmd_play)

    batch = sub.add_parser("batch", help="run a config file of trials")
    batch.add_argument("--config", help="JSON config file")
    batch.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override a config key")
    batch.set_defaults(func=_cmd_batch)

    sweep = sub.add_parser("sweep", help="bracket the empirical threshold bias")
    sweep.add_argument("--config", help="JSON config file")
    sweep.add_argument("--set", action="append", metavar="KEY=VALUE")
    sweep.add_argument("--b-min", type=int, required=True)
    sweep.add_argument("--b-max", type=int, required=True)
    sweep.set_defaults(func=_cmd_sweep)

    audit = sub.add_parser("audit", help="summarize transcript audit events")
    audit.add_argument("--transcripts", required=True,
                       help="directory of .jsonl transcripts")
    audit.set_defaults(func=_cmd_audit)

    box = sub.add_parser("boxgame", help="emit the threshold table as CSV")
    box.add_argument("--k-max", type=int, default=10)
    box.add_argument("--a-max", type=int, default=5)
    box.add_argument("--no-oracle", action="store_true",
                     help="skip the minimax cross-check column")
    box.add_argument("--out", help="write CSV here instead of stdout")
    box.set_defaults(func=_cmd_boxgame)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
