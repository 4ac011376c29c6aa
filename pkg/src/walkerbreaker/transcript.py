"""Replayable game transcripts: line-delimited JSON records.

A transcript file holds one JSON object per line: a header, one record
per round, and an outcome footer. Replaying the moves through the board
operations reproduces the recorded final state exactly; the footer keeps
a digest of that state so replays can verify themselves.

Schema (version 1), field names stable:
  header: {"type": "header", "version": 1, "n", "walker_bias",
           "breaker_bias", "goal", "seed", "first_player",
           "walker_strategy", "breaker_strategy"}
  round:  {"type": "round", "round", "breaker_edges": [[u, v], ...],
           "walker_steps": [[u, v], ...], "annotations": [...]}
  footer: {"type": "outcome", "winner", "rounds", "resigned",
           "state_digest"}

In a round record the moves are listed in the order they were played
(Breaker's first unless the header says first_player is "walker"). A
round missing one side's move (resignation, game already over) stores
null for it.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .board import (
    BreakerMove, GameState, Outcome, Player, WalkerMove,
    apply_breaker_move, apply_walker_move, new_game,
)

TRANSCRIPT_VERSION = 1


def state_digest(state: GameState) -> str:
    h = hashlib.sha256()
    for part in state.digest_tuple():
        if isinstance(part, bytes):
            h.update(part)
        else:
            h.update(repr(part).encode())
    return h.hexdigest()


@dataclass
class RoundRecord:
    round_no: int
    breaker_edges: Optional[list[tuple[int, int]]] = None
    walker_steps: Optional[list[tuple[int, int]]] = None
    annotations: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "type": "round",
            "round": self.round_no,
            "breaker_edges": self.breaker_edges,
            "walker_steps": self.walker_steps,
            "annotations": self.annotations,
        }


@dataclass
class Transcript:
    header: dict
    rounds: list[RoundRecord] = field(default_factory=list)
    footer: dict = field(default_factory=dict)

    @classmethod
    def start(cls, n: int, walker_bias: int, breaker_bias: int, goal: str,
              seed, first_player: Player, walker_strategy: str,
              breaker_strategy: str) -> "Transcript":
        return cls(header={
            "type": "header",
            "version": TRANSCRIPT_VERSION,
            "n": n,
            "walker_bias": walker_bias,
            "breaker_bias": breaker_bias,
            "goal": goal,
            "seed": seed,
            "first_player": first_player.value,
            "walker_strategy": walker_strategy,
            "breaker_strategy": breaker_strategy,
        })

    def finish(self, outcome: Outcome, final_state: GameState) -> None:
        self.footer = {
            "type": "outcome",
            "winner": outcome.value,
            "rounds": final_state.round_no,
            "resigned": outcome is Outcome.WALKER_RESIGN,
            "state_digest": state_digest(final_state),
        }

    def to_jsonl(self) -> str:
        lines = [json.dumps(self.header, sort_keys=True)]
        for rec in self.rounds:
            lines.append(json.dumps(rec.to_json(), sort_keys=True))
        if self.footer:
            lines.append(json.dumps(self.footer, sort_keys=True))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str | Iterable[str]) -> "Transcript":
        if isinstance(text, str):
            lines = text.splitlines()
        else:
            lines = list(text)
        header = None
        rounds: list[RoundRecord] = []
        footer: dict = {}
        for line in lines:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            kind = obj.get("type")
            if kind == "header":
                header = obj
            elif kind == "round":
                rounds.append(RoundRecord(
                    round_no=obj["round"],
                    breaker_edges=_pairs(obj["breaker_edges"]),
                    walker_steps=_pairs(obj["walker_steps"]),
                    annotations=obj.get("annotations", []),
                ))
            elif kind == "outcome":
                footer = obj
        if header is None:
            raise ValueError("transcript has no header record")
        return cls(header=header, rounds=rounds, footer=footer)


def _pairs(items) -> Optional[list[tuple[int, int]]]:
    if items is None:
        return None
    return [(int(u), int(v)) for u, v in items]


def replay(transcript: Transcript) -> GameState:
    """Re-apply every recorded move; returns the reconstructed final state.

    Raises if any recorded move is illegal, and ValueError if the footer
    digest does not match the reconstruction.
    """
    h = transcript.header
    first = Player(h["first_player"])
    state = new_game(h["n"], h["breaker_bias"], first, h["walker_bias"])
    for rec in transcript.rounds:
        moves = [("breaker", rec.breaker_edges), ("walker", rec.walker_steps)]
        if first is Player.WALKER:
            moves.reverse()
        for side, payload in moves:
            if payload is None:
                continue
            if side == "breaker":
                apply_breaker_move(state, BreakerMove(tuple(payload)))
            else:
                apply_walker_move(state, WalkerMove(tuple(payload)))
        state.round_no = rec.round_no
    if transcript.footer:
        state.over = Outcome(transcript.footer["winner"])
        want = transcript.footer.get("state_digest")
        if want is not None and state_digest(state) != want:
            raise ValueError("replayed state does not match recorded digest")
    return state
