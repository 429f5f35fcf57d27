"""Maker-Breaker play on a finite board.

Maker moves first and wins by fully occupying some window; Breaker, driven by
a pairing certificate, answers each Maker move at its partner (or at the
lexicographically smallest empty cell when no live partner exists). A game
that fills the board is a draw; with a valid certificate the post-game audit
additionally confirms a strong draw: no window ever becomes fully Maker's.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from enum import Enum
from typing import IO, Callable

from .lattice import Vector, Window, enumerate_windows
from .pairing import GameSpec, PairingCertificate, PartnerStatus, partner


class Player(Enum):
    MAKER = "maker"
    BREAKER = "breaker"


class GameStatus(Enum):
    IN_PROGRESS = "in_progress"
    MAKER_WIN = "maker_win"
    DRAW = "draw"


@dataclass(frozen=True)
class Move:
    ply: int
    player: Player
    point: Vector
    rule: str | None = None  # "partner" | "fallback" on Breaker moves


class GameState:
    """Mutable single-game state: occupancy, alternating history, status."""

    def __init__(self, spec: GameSpec):
        self.spec = spec
        self.occupancy: dict[Vector, Player] = {}
        self.history: list[Move] = []
        self.status = GameStatus.IN_PROGRESS
        self.winning_window: Window | None = None
        self.strong_draw: bool | None = None
        self._cells = tuple(spec.board.points())
        self._fallback_cursor = 0

    @property
    def next_player(self) -> Player:
        return Player.MAKER if len(self.history) % 2 == 0 else Player.BREAKER

    @property
    def board_full(self) -> bool:
        return len(self.occupancy) == self.spec.board.cell_count

    def is_empty(self, point: Vector) -> bool:
        return self.spec.board.contains(point) and point not in self.occupancy

    def empty_cells(self) -> list[Vector]:
        return [c for c in self._cells if c not in self.occupancy]

    def smallest_empty(self) -> Vector:
        # Cells only ever fill up, so a monotone cursor suffices.
        while self._cells[self._fallback_cursor] in self.occupancy:
            self._fallback_cursor += 1
        return self._cells[self._fallback_cursor]

    def place(self, player: Player, point: Vector, rule: str | None = None) -> None:
        if self.status is not GameStatus.IN_PROGRESS:
            raise ValueError("game is over")
        if player is not self.next_player:
            raise ValueError(f"not {player.value}'s turn")
        if not self.spec.board.contains(point):
            raise ValueError(f"point {point} off board")
        if point in self.occupancy:
            raise ValueError(f"cell {point} already occupied")
        self.occupancy[point] = player
        self.history.append(Move(len(self.history) + 1, player, point, rule))


def detect_maker_win(state: GameState, last_move: Vector, spec: GameSpec) -> Window | None:
    """Window of m Maker cells through last_move, or None.

    Only lines through the last move are scanned; any window newly completed
    must contain the new mark, so this agrees with a full-board scan when
    called after every Maker move.
    """
    m = spec.win_length
    occ = state.occupancy
    for direction in spec.directions:
        v = direction.vector
        back = 0
        pt = tuple(c - dc for c, dc in zip(last_move, v))
        while occ.get(pt) is Player.MAKER:
            back += 1
            pt = tuple(c - dc for c, dc in zip(pt, v))
        forward = 0
        pt = tuple(c + dc for c, dc in zip(last_move, v))
        while occ.get(pt) is Player.MAKER:
            forward += 1
            pt = tuple(c + dc for c, dc in zip(pt, v))
        if back + forward + 1 >= m:
            offset = min(back, m - 1)
            start = tuple(c - offset * dc for c, dc in zip(last_move, v))
            return Window(start, direction, m)
    return None


def breaker_move(state: GameState, cert: PairingCertificate) -> tuple[Vector, str]:
    """Breaker's reply: the partner of Maker's last move if it is live, else fallback.

    Returns (point, rule) with rule "partner" or "fallback"; the fallback is
    the lexicographically smallest empty cell (also used when the partner is
    off board, occupied, or the move was unmatched).
    """
    last = state.history[-1]
    assert last.player is Player.MAKER
    result = partner(last.point, cert)
    if result.status is PartnerStatus.MATCHED and state.is_empty(result.partner):
        return result.partner, "partner"
    return state.smallest_empty(), "fallback"


# --- strategies ---------------------------------------------------------------


class RandomMaker:
    """Plays a seeded uniformly random permutation of the board."""

    def __init__(self, seed: int):
        self._rng = random.Random(seed)
        self._order: list[Vector] | None = None

    def next_move(self, state: GameState) -> Vector:
        if self._order is None:
            self._order = list(state.spec.board.points())
            self._rng.shuffle(self._order)
        while True:
            point = self._order.pop()
            if point not in state.occupancy:
                return point


class GreedyMaker:
    """Maximizes the longest own run through the candidate cell.

    Ties break by a seeded random choice; a deterministic tie-break would
    collapse every seeded game into one and can never beat even a naive
    Breaker in one dimension.
    """

    def __init__(self, seed: int = 0):
        self._rng = random.Random(seed)

    def next_move(self, state: GameState) -> Vector:
        occ = state.occupancy
        best: list[Vector] = []
        best_run = -1
        for cell in state.empty_cells():
            run = 0
            for direction in state.spec.directions:
                v = direction.vector
                length = 1
                for step in (1, -1):
                    pt = tuple(c + step * dc for c, dc in zip(cell, v))
                    while occ.get(pt) is Player.MAKER:
                        length += 1
                        pt = tuple(c + step * dc for c, dc in zip(pt, v))
                run = max(run, length)
            if run > best_run:
                best_run = run
                best = [cell]
            elif run == best_run:
                best.append(cell)
        return self._rng.choice(best)


class ScriptedMaker:
    """Replays a fixed move list."""

    def __init__(self, moves):
        self._moves = [tuple(m) for m in moves]
        self._index = 0

    def next_move(self, state: GameState) -> Vector:
        point = self._moves[self._index]
        self._index += 1
        return point


def make_maker(kind: str, seed: int = 0, moves=None):
    if kind == "random":
        return RandomMaker(seed)
    if kind == "greedy":
        return GreedyMaker(seed)
    if kind == "scripted":
        return ScriptedMaker(moves or [])
    raise ValueError(f"unknown maker strategy {kind!r}")


class PairingBreaker:
    """The certificate-driven Breaker."""

    def __init__(self, cert: PairingCertificate):
        self.cert = cert

    def next_move(self, state: GameState) -> tuple[Vector, str]:
        return breaker_move(state, self.cert)


class NaiveBreaker:
    """Certificate-ignoring control: always the smallest empty cell."""

    def next_move(self, state: GameState) -> tuple[Vector, str]:
        return state.smallest_empty(), "fallback"


# --- game loop ----------------------------------------------------------------


def strong_draw_audit(state: GameState) -> bool:
    """True iff no window of the spec is fully Maker-occupied."""
    occ = state.occupancy
    for direction in state.spec.directions:
        for window in enumerate_windows(state.spec.board, direction, state.spec.win_length):
            if all(occ.get(p) is Player.MAKER for p in window.points()):
                return False
    return True


def play_game(
    spec: GameSpec,
    cert: PairingCertificate | None,
    maker,
    breaker=None,
    on_ply: Callable[[GameState], None] | None = None,
) -> GameState:
    """Play one game to MakerWin or a full board.

    The Breaker defaults to the certificate pairing; pass a breaker to
    override (the certificate may then be None). At a draw the strong-draw
    audit runs and its outcome lands on the returned state.
    """
    if breaker is None:
        breaker = PairingBreaker(cert)
    state = GameState(spec)
    while True:
        point = maker.next_move(state)
        state.place(Player.MAKER, point)
        if on_ply:
            on_ply(state)
        win = detect_maker_win(state, point, spec)
        if win is not None:
            state.status = GameStatus.MAKER_WIN
            state.winning_window = win
            return state
        if state.board_full:
            break
        point, rule = breaker.next_move(state)
        state.place(Player.BREAKER, point, rule)
        if on_ply:
            on_ply(state)
        if state.board_full:
            break
    state.status = GameStatus.DRAW
    state.strong_draw = strong_draw_audit(state)
    return state


@dataclass
class SimulationStats:
    games: int
    draws: int
    maker_wins: int
    mean_fallback_moves: float
    strong_draw_failures: int

    def to_json_dict(self) -> dict:
        return {
            "version": "1",
            "games": self.games,
            "draws": self.draws,
            "maker_wins": self.maker_wins,
            "mean_fallback_moves": self.mean_fallback_moves,
            "strong_draw_failures": self.strong_draw_failures,
        }


def simulate_batch(
    spec: GameSpec,
    cert: PairingCertificate | None,
    maker_kind: str,
    games: int,
    seed: int,
    breaker_factory=None,
) -> SimulationStats:
    """Aggregate seeded games; per-game seeds derive from the master seed."""
    master = random.Random(seed)
    draws = 0
    maker_wins = 0
    fallbacks = 0
    audit_failures = 0
    for _ in range(games):
        game_seed = master.getrandbits(64)
        maker = make_maker(maker_kind, game_seed)
        breaker = breaker_factory() if breaker_factory is not None else None
        state = play_game(spec, cert, maker, breaker)
        if state.status is GameStatus.MAKER_WIN:
            maker_wins += 1
        else:
            draws += 1
            if state.strong_draw is False:
                audit_failures += 1
        fallbacks += sum(1 for mv in state.history if mv.rule == "fallback")
    mean_fallback = fallbacks / games if games else 0.0
    return SimulationStats(games, draws, maker_wins, mean_fallback, audit_failures)


def write_transcript(state: GameState, fh: IO[str]) -> None:
    """JSON lines, one move per line, with a final outcome record."""
    for move in state.history:
        entry = {"ply": move.ply, "player": move.player.value, "point": list(move.point)}
        if move.rule is not None:
            entry["rule"] = move.rule
        fh.write(json.dumps(entry) + "\n")
    final = {"version": "1", "outcome": state.status.value, "strong_draw": state.strong_draw}
    if state.winning_window is not None:
        final["winning_window"] = {
            "start": list(state.winning_window.start),
            "direction": list(state.winning_window.direction.vector),
            "length": state.winning_window.length,
        }
    fh.write(json.dumps(final) + "\n")
