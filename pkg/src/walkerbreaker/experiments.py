"""Seeded batch runner, bias sweeps, audit reports, and table emitters.

Every trial's generator is seeded by SeedSequence([master_seed, cell_index,
trial_index]), so a batch is reproducible record-for-record no matter how
many workers execute it; records are merged in trial order before writing.
CSV files are written with LF line endings and a fixed header so reruns
with the same configuration and master seed are byte-identical (the
wallclock column is left empty unless timings are explicitly requested).
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from math import log
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .audits import VIOLATION_TAGS
from .board import Outcome, Player, StrategyFault
from .boxgames import (
    BOXMAKER, ORACLE_ELEMENT_LIMIT, boxmaker_threshold, boxmaker_wins,
    exact_box_game_winner, near_equal_sizes, threshold_bounds,
)
from .engine import Goal, play_game
from .graphs import has_hamilton_cycle, min_degree_ratio
from .strategies import make_strategy, strategy_names
from .transcript import Transcript

TRIAL_FIELDS = [
    "trial_id", "goal", "n", "b", "p", "epsilon", "walker_strategy",
    "breaker_strategy", "seed", "winner", "rounds", "walker_edge_count",
    "breaker_edge_count", "f1_total", "f2_max", "min_degree_ratio",
    "hamiltonian", "audit_violations", "wallclock_ms",
]

BOXGAME_FIELDS = ["k", "a", "lower", "f", "upper", "oracle_check"]

SWEEP_SUMMARY_FIELDS = [
    "n", "b_lower", "b_upper", "rate_at_lower", "rate_at_upper",
    "monotone", "ref_quarter_n_over_ln_n", "ref_n_over_ln_n",
]


class InvalidConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    """One batch: a goal, board sizes, biases, strategies, and trial count."""

    goal: str = "connectivity"
    n: Sequence[int] = (50,)
    b: Sequence[int] = (3,)
    p: Optional[str] = None
    epsilon: Optional[str] = None
    walker: str = "walker.random"
    breaker: str = "breaker.random"
    trials: int = 10
    master_seed: int = 0
    first_player: str = "breaker"
    audit_mode: str = "auto"
    hamilton_check: str = "end_only"
    workers: int = 1
    timings: bool = False
    outdir: str = "out"
    transcripts: bool = False

    def validate(self) -> None:
        if self.trials < 1:
            raise InvalidConfigError("trials must be >= 1")
        if not self.n or not self.b:
            raise InvalidConfigError("n and b lists must be non-empty")
        if self.goal not in ("connectivity", "hamilton_cycle"):
            raise InvalidConfigError(f"unknown goal {self.goal!r}")
        for name in (self.walker, self.breaker):
            if name not in strategy_names():
                raise InvalidConfigError(f"unknown strategy {name!r}")
        if self.first_player not in ("breaker", "walker"):
            raise InvalidConfigError("first_player must be breaker or walker")
        if self.workers < 1:
            raise InvalidConfigError("workers must be >= 1")

    @classmethod
    def from_file(cls, path: str | Path) -> "ExperimentConfig":
        """Load a JSON object of config keys (all optional)."""
        with open(path) as fh:
            data = json.load(fh)
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise InvalidConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**data)
        if isinstance(cfg.n, int):
            cfg.n = [cfg.n]
        if isinstance(cfg.b, int):
            cfg.b = [cfg.b]
        cfg.n = [int(x) for x in cfg.n]
        cfg.b = [int(x) for x in cfg.b]
        return cfg


def trial_seed(master_seed: int, cell_index: int, trial_index: int) -> np.random.SeedSequence:
    """The documented per-trial seed derivation."""
    return np.random.SeedSequence([int(master_seed), int(cell_index), int(trial_index)])


def _trial_spec_list(cfg: ExperimentConfig) -> list[dict]:
    specs = []
    trial_id = 0
    for cell_index, (n, b) in enumerate(
        (n, b) for n in cfg.n for b in cfg.b
    ):
        for t in range(cfg.trials):
            specs.append({
                "trial_id": trial_id,
                "cell_index": cell_index,
                "trial_index": t,
                "n": n,
                "b": b,
                "goal": cfg.goal,
                "p": cfg.p,
                "epsilon": cfg.epsilon,
                "walker": cfg.walker,
                "breaker": cfg.breaker,
                "master_seed": cfg.master_seed,
                "first_player": cfg.first_player,
                "audit_mode": cfg.audit_mode,
                "hamilton_check": cfg.hamilton_check,
                "timings": cfg.timings,
            })
            trial_id += 1
    return specs


def run_trial(spec: dict) -> tuple[dict, Optional[Transcript]]:
    """Play one configured game; returns (TrialRecord row, transcript)."""
    p = Fraction(spec["p"]) if spec["p"] is not None else None
    eps = Fraction(spec["epsilon"]) if spec["epsilon"] is not None else None
    goal = Goal(spec["goal"])
    seed = trial_seed(spec["master_seed"], spec["cell_index"], spec["trial_index"])
    walker = make_strategy(spec["walker"], p=p, eps=eps)
    breaker = make_strategy(spec["breaker"], p=p, eps=eps)
    record = {
        "trial_id": spec["trial_id"],
        "goal": spec["goal"],
        "n": spec["n"],
        "b": spec["b"],
        "p": spec["p"] or "",
        "epsilon": spec["epsilon"] or "",
        "walker_strategy": spec["walker"],
        "breaker_strategy": spec["breaker"],
        "seed": f"{spec['master_seed']}/{spec['cell_index']}/{spec['trial_index']}",
        "winner": "", "rounds": "", "walker_edge_count": "",
        "breaker_edge_count": "", "f1_total": "", "f2_max": "",
        "min_degree_ratio": "", "hamiltonian": "", "audit_violations": "",
        "wallclock_ms": "",
    }
    started = time.perf_counter()
    try:
        result = play_game(
            spec["n"], spec["b"], goal, walker, breaker, seed=seed,
            first_player=Player(spec["first_player"]),
            hamilton_check=spec["hamilton_check"],
            audit_mode=spec["audit_mode"],
        )
    except StrategyFault as fault:
        record["winner"] = f"strategy_fault:{fault.strategy_name}"
        return record, None
    record["winner"] = result.outcome.value
    record["rounds"] = result.rounds
    record["walker_edge_count"] = result.state.walker_edge_count
    record["breaker_edge_count"] = result.state.breaker_edge_count
    record["audit_violations"] = result.audit.violation_count()
    if hasattr(walker, "secured_graph"):
        sample = walker.sample_graph()
        secured = walker.secured_graph()
        record["f1_total"] = int(walker.failures_type1.sum())
        record["f2_max"] = int(walker.failures_type2.max())
        ratio = min_degree_ratio(secured, sample)
        record["min_degree_ratio"] = float(ratio)
        verdict = has_hamilton_cycle(secured)
        record["hamiltonian"] = "" if verdict is None else verdict
    elif goal is Goal.HAMILTON_CYCLE:
        record["hamiltonian"] = result.goal_achieved
    if spec["timings"]:
        record["wallclock_ms"] = round((time.perf_counter() - started) * 1000, 3)
    return record, result.transcript


def _run_trial_row(spec: dict) -> tuple[dict, Optional[str]]:
    record, transcript = run_trial(spec)
    return record, transcript.to_jsonl() if transcript is not None else None


def run_batch(cfg: ExperimentConfig, write_files: bool = True):
    """Run every (cell, trial) game; returns (records, summary).

    With write_files, records go to <outdir>/records.csv and, if requested,
    transcripts to <outdir>/transcripts/trial_<id>.jsonl.
    """
    cfg.validate()
    specs = _trial_spec_list(cfg)
    rows: list[Optional[dict]] = [None] * len(specs)
    transcripts: list[Optional[str]] = [None] * len(specs)
    if cfg.workers == 1:
        for spec in specs:
            row, text = _run_trial_row(spec)
            rows[spec["trial_id"]] = row
            transcripts[spec["trial_id"]] = text
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            for spec, (row, text) in zip(specs, pool.map(_run_trial_row, specs)):
                rows[spec["trial_id"]] = row
                transcripts[spec["trial_id"]] = text
    summary = summarize_records(rows)
    if write_files:
        outdir = Path(cfg.outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        write_records_csv(outdir / "records.csv", rows)
        if cfg.transcripts:
            tdir = outdir / "transcripts"
            tdir.mkdir(exist_ok=True)
            for row, text in zip(rows, transcripts):
                if text is not None:
                    path = tdir / f"trial_{row['trial_id']:06d}.jsonl"
                    path.write_text(text)
    return rows, summary


def summarize_records(rows: Iterable[dict]) -> dict:
    """Per-(n, b) walker win rates; resignations count as Breaker wins."""
    cells: dict = {}
    for row in rows:
        key = (row["n"], row["b"])
        cell = cells.setdefault(key, {"trials": 0, "walker_wins": 0, "faults": 0})
        cell["trials"] += 1
        if row["winner"] == Outcome.WALKER_WIN.value:
            cell["walker_wins"] += 1
        if str(row["winner"]).startswith("strategy_fault"):
            cell["faults"] += 1
    for cell in cells.values():
        cell["win_rate"] = cell["walker_wins"] / cell["trials"]
    return {f"n={n},b={b}": cell for (n, b), cell in sorted(cells.items())}


def write_records_csv(path, rows: Iterable[dict]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=TRIAL_FIELDS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def records_csv_text(rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=TRIAL_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Bias sweep
# ---------------------------------------------------------------------------

def _win_rate(cfg: ExperimentConfig, n: int, b: int, cell_index: int) -> tuple[float, list[dict]]:
    probe_cfg = ExperimentConfig(**{**asdict(cfg), "n": [n], "b": [b]})
    specs = _trial_spec_list(probe_cfg)
    for s in specs:
        s["cell_index"] = cell_index
    rows = []
    for spec in specs:
        row, _ = _run_trial_row(spec)
        rows.append(row)
    wins = sum(r["winner"] == Outcome.WALKER_WIN.value for r in rows)
    return wins / len(rows), rows


def bias_sweep(cfg: ExperimentConfig, b_min: int, b_max: int,
               write_files: bool = True):
    """Bracket the bias where the walker win rate crosses one half.

    Probes by bisection under an assumed monotone decline of win rate in b
    (true for the game value, empirical for fixed strategies; when probes
    come out non-monotone the reported bracket is widened to span every
    observed crossing and the summary says so).
    """
    cfg.validate()
    if b_min < 1 or b_max < b_min:
        raise InvalidConfigError("need 1 <= b_min <= b_max")
    results: dict[int, float] = {}
    all_rows: list[dict] = []
    summaries = []
    for n in cfg.n:
        results.clear()
        cell = 0

        def probe(b: int) -> float:
            nonlocal cell
            if b not in results:
                rate, rows = _win_rate(cfg, n, b, cell)
                cell += 1
                results[b] = rate
                all_rows.extend(rows)
            return results[b]

        lo, hi = b_min, b_max
        if probe(lo) <= 0.5:
            hi = lo
        elif probe(hi) > 0.5:
            lo = hi
        else:
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if probe(mid) > 0.5:
                    lo = mid
                else:
                    hi = mid
        probed = sorted(results)
        crossings = [
            (probed[i], probed[i + 1])
            for i in range(len(probed) - 1)
            if (results[probed[i]] > 0.5) != (results[probed[i + 1]] > 0.5)
        ]
        monotone = len(crossings) <= 1
        if not monotone:
            lo = crossings[0][0]
            hi = crossings[-1][1]
        summaries.append({
            "n": n,
            "b_lower": lo,
            "b_upper": hi,
            "rate_at_lower": results.get(lo, ""),
            "rate_at_upper": results.get(hi, ""),
            "monotone": monotone,
            "ref_quarter_n_over_ln_n": round(0.25 * n / log(n), 3),
            "ref_n_over_ln_n": round(n / log(n), 3),
        })
    for i, row in enumerate(all_rows):
        row["trial_id"] = i
    if write_files:
        outdir = Path(cfg.outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        write_records_csv(outdir / "sweep_records.csv", all_rows)
        with open(outdir / "sweep_summary.csv", "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=SWEEP_SUMMARY_FIELDS,
                                    lineterminator="\n")
            writer.writeheader()
            writer.writerows(summaries)
    return summaries, all_rows


# ---------------------------------------------------------------------------
# Audit report
# ---------------------------------------------------------------------------

def audit_report(transcript_texts: Iterable[str]) -> dict:
    """Aggregate audit annotations from transcripts: per-tag counts,
    split into hard violations and flags."""
    report: dict[str, dict[str, int]] = {}
    games = 0
    for text in transcript_texts:
        games += 1
        t = Transcript.from_jsonl(text)
        for rec in t.rounds:
            for ann in rec.annotations:
                tag = ann.get("tag", "unknown")
                bucket = report.setdefault(tag, {"hard": 0, "flag": 0})
                bucket["hard" if ann.get("hard") else "flag"] += 1
    return {
        "games": games,
        "tags": {
            tag: {
                **counts,
                "violation": tag in VIOLATION_TAGS,
            }
            for tag, counts in sorted(report.items())
        },
    }


def audit_report_from_dir(path: str | Path) -> dict:
    texts = []
    for file in sorted(Path(path).glob("*.jsonl")):
        texts.append(file.read_text())
    return audit_report(texts)


# ---------------------------------------------------------------------------
# Box game tables
# ---------------------------------------------------------------------------

def boxgame_tables(k_max: int, a_max: int, oracle: bool = True) -> list[dict]:
    """Rows (k, a, lower, f, upper, oracle_check) for the threshold table.

    oracle_check is filled only where the boundary instances fit the exact
    minimax: "ok" when the oracle confirms a win at t = f and a loss at
    t = f + 1, otherwise the disagreement is spelled out.
    """
    if k_max < 1 or a_max < 1:
        raise InvalidConfigError("k_max and a_max must be >= 1")
    rows = []
    for k in range(1, k_max + 1):
        for a in range(1, a_max + 1):
            f_value = boxmaker_threshold(k, a)
            if k >= 2:
                lower, upper = threshold_bounds(k, a)
                lower_s, upper_s = float(lower), float(upper)
            else:
                lower_s = upper_s = 0.0
            check = ""
            if oracle and f_value + 1 <= ORACLE_ELEMENT_LIMIT:
                at = exact_box_game_winner(near_equal_sizes(k, f_value), a)
                above = exact_box_game_winner(near_equal_sizes(k, f_value + 1), a)
                ok = at == BOXMAKER and above != BOXMAKER
                check = "ok" if ok else f"mismatch:{at}/{above}"
            rows.append({
                "k": k, "a": a, "lower": lower_s, "f": f_value,
                "upper": upper_s, "oracle_check": check,
            })
    return rows


def write_boxgame_csv(path, rows: Iterable[dict]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=BOXGAME_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def resolve_outdir(cfg: ExperimentConfig) -> None:
    """Environment override for the output directory (the only env knob)."""
    override = os.environ.get("WALKERBREAKER_OUTDIR")
    if override:
        cfg.outdir = override
