"""Exact decision of the k-cop pursuit game and optimal positional play.

Convention (placement and capture): the cop player places k cops (a multiset,
stacking allowed), the robber places after seeing them, and cops move first.
On a turn each piece moves within its closed neighborhood. The robber is
captured exactly when a cop occupies the robber's vertex after either side's
move.

The solved table stores, per side, a cop-win bit and a breadth-first layer
("rank") that strictly decreases along optimal cop play, so extracted
strategies terminate within the initial rank.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations
from math import comb
from typing import Optional

import numpy as np

from ._kernels import BACKEND, solve_game
from .errors import (
    CapacityError,
    InternalContradictionError,
    NoStrategyError,
    ParameterError,
    PreconditionError,
    StrategyFaultError,
)
from .graphs import Graph, bits
from .invariants import is_dismantlable

MAX_STATES = 50_000_000

__all__ = [
    "GameState",
    "WinTable",
    "Transcript",
    "cops_win",
    "cop_number",
    "optimal_cop_strategy",
    "optimal_robber_strategy",
    "play",
    "verify_transcript",
    "multiset_rank",
    "multiset_unrank",
    "state_index",
    "state_count",
    "BACKEND",
]


# -- combinatorial ranking --------------------------------------------------


def multiset_rank(cops: tuple[int, ...]) -> int:
    """Colex rank of a sorted cop multiset."""
    r = 0
    for t, c in enumerate(cops):
        r += comb(c + t, t + 1)
    return r


def multiset_unrank(m: int, n: int, k: int) -> tuple[int, ...]:
    out = [0] * k
    rem = m
    d = n + k - 1
    for t in range(k - 1, -1, -1):
        while comb(d, t + 1) > rem:
            d -= 1
        rem -= comb(d, t + 1)
        out[t] = d - t
    return tuple(out)


def state_count(n: int, k: int) -> int:
    return comb(n + k - 1, k) * n * 2


@dataclass(frozen=True)
class GameState:
    """Canonical game position: sorted cop multiset, robber vertex, side."""

    cops: tuple[int, ...]
    robber: int
    cop_to_move: bool

    def canonical(self) -> "GameState":
        return GameState(tuple(sorted(self.cops)), self.robber, self.cop_to_move)


def state_index(state: GameState, n: int) -> int:
    """Bijection onto [0, C(n+k-1,k) * n * 2)."""
    cops = tuple(sorted(state.cops))
    return (multiset_rank(cops) * n + state.robber) * 2 + (0 if state.cop_to_move else 1)


def state_unindex(idx: int, n: int, k: int) -> GameState:
    side = idx & 1
    idx >>= 1
    m, r = divmod(idx, n)
    return GameState(multiset_unrank(m, n, k), r, side == 0)


# -- solved table -------------------------------------------------------------


class WinTable:
    """Cop-win region with BFS-layer ranks for both sides.

    copMove / robberEscape back-pointers are deterministic lookups derived
    from the rank layers (least-index successor among rank-decreasing moves,
    least-index surviving escape).
    """

    def __init__(self, g: Graph, k: int, arrays: dict):
        self.g = g
        self.n = g.n
        self.k = k
        self.M = arrays["M"]
        self.win_c = arrays["win_c"]
        self.win_r = arrays["win_r"]
        self.rank_c = arrays["rank_c"]
        self.rank_r = arrays["rank_r"]
        self.closed = [sorted(bits(g.closed(v))) for v in range(g.n)]
        self._placement: Optional[tuple[int, ...]] = None

    def index(self, cops, robber: int) -> int:
        return multiset_rank(tuple(sorted(cops))) * self.n + robber

    def winning(self, cops, robber: int, cop_to_move: bool = True) -> bool:
        arr = self.win_c if cop_to_move else self.win_r
        return bool(arr[self.index(cops, robber)])

    def rank(self, cops, robber: int, cop_to_move: bool = True) -> int:
        arr = self.rank_c if cop_to_move else self.rank_r
        return int(arr[self.index(cops, robber)])

    def all_winning(self) -> bool:
        return bool(self.win_c.all())

    def cops_win(self) -> bool:
        return bool(np.asarray(self.win_c).reshape(self.M, self.n).all(axis=1).any())

    def best_placement(self) -> tuple[int, ...]:
        """Winning placement minimizing the worst-case capture rank
        (ties: least multiset rank). Raises if no placement wins."""
        if self._placement is not None:
            return self._placement
        wc = np.asarray(self.win_c).reshape(self.M, self.n)
        rc = np.asarray(self.rank_c).reshape(self.M, self.n)
        ok = wc.all(axis=1)
        if not ok.any():
            raise NoStrategyError("no winning cop placement")
        worst = np.where(ok, rc.max(axis=1), np.iinfo(np.int32).max)
        m = int(worst.argmin())
        self._placement = multiset_unrank(m, self.n, self.k)
        return self._placement

    def successor_multisets(self, cops) -> list[tuple[int, ...]]:
        """All distinct sorted multisets reachable by one simultaneous move."""
        canon = tuple(sorted(cops))
        out = {canon}
        def rec(t, acc):
            if t == len(canon):
                out.add(tuple(sorted(acc)))
                return
            for w in self.closed[canon[t]]:
                rec(t + 1, acc + [w])
        rec(0, [])
        return sorted(out, key=multiset_rank)

    def cop_move(self, cops, robber: int) -> tuple[int, ...]:
        """Rank-decreasing successor multiset of least rank from a winning
        cop-to-move state."""
        idx = self.index(cops, robber)
        if not self.win_c[idx]:
            raise ParameterError("cop_move is defined on winning cop-to-move states")
        cur = int(self.rank_c[idx])
        for succ in self.successor_multisets(cops):
            j = self.index(succ, robber)
            if self.win_r[j] and int(self.rank_r[j]) < cur:
                return succ
        raise InternalContradictionError("winning state has no rank-decreasing move")

    def robber_escape(self, cops, robber: int) -> int:
        """Least surviving robber move from a non-winning robber-to-move state."""
        m = multiset_rank(tuple(sorted(cops)))
        if self.win_r[m * self.n + robber]:
            raise ParameterError("robber_escape is defined on non-winning states")
        for r2 in self.closed[robber]:
            if not self.win_c[m * self.n + r2]:
                return r2
        raise InternalContradictionError("non-winning state has no escape")

    def recurrence_violations(self, sample_limit: Optional[int] = None) -> int:
        """Re-evaluate the fixed-point recurrence on every state; returns the
        number of states whose stored value disagrees (0 for a sound table)."""
        n = self.n
        bad = 0
        limit = self.M if sample_limit is None else min(self.M, sample_limit)
        for m in range(limit):
            cops = multiset_unrank(m, n, self.k)
            cop_set = set(cops)
            succs = [multiset_rank(s) for s in self.successor_multisets(cops)]
            for r in range(n):
                idx = m * n + r
                if r in cop_set:
                    if not (self.win_c[idx] and self.win_r[idx]):
                        bad += 1
                    continue
                cop_val = any(self.win_r[m2 * n + r] for m2 in succs)
                if bool(self.win_c[idx]) != cop_val:
                    bad += 1
                rob_val = all(self.win_c[m * n + r2] for r2 in self.closed[r])
                if bool(self.win_r[idx]) != rob_val:
                    bad += 1
        return bad


def _check_capacity(n: int, k: int, max_states: int) -> None:
    per_side = comb(n + k - 1, k) * n
    if per_side > max_states:
        raise CapacityError(
            f"{per_side} states per side for n={n}, k={k} exceeds the gate {max_states}"
        )


def cops_win(g: Graph, k: int, max_states: int = MAX_STATES) -> tuple[bool, WinTable]:
    """Do k cops win on g? Returns the verdict and the solved table.

    Work is proportional to the total transition count: each simultaneous cop
    move enumerates the full product of closed neighborhoods (exactness over
    speed), so runtime grows with (max degree + 1)^k even when the state
    count stays within the gate.
    """
    if k < 1:
        raise ParameterError("need at least one cop")
    if not g.is_connected():
        raise PreconditionError("the pursuit game is solved on connected graphs")
    _check_capacity(g.n, k, max_states)
    closed = [sorted(bits(g.closed(v))) for v in range(g.n)]
    table = WinTable(g, k, solve_game(g.n, k, closed))
    return table.cops_win(), table


def cop_number(g: Graph, max_states: int = MAX_STATES) -> int:
    """Least k such that k cops win; k=1 is answered by corner elimination."""
    if not g.is_connected():
        raise PreconditionError("cop number is defined for connected graphs")
    if is_dismantlable(g)[0]:
        return 1
    for k in range(2, g.n + 1):
        try:
            _check_capacity(g.n, k, max_states)
        except CapacityError as exc:
            raise CapacityError(f"least undecided cop count is {k}: {exc}") from None
        if cops_win(g, k, max_states)[0]:
            return k
    raise InternalContradictionError("n cops always win")  # pragma: no cover


# -- positional strategies -----------------------------------------------------


def _legal_assignment(g: Graph, sources: tuple[int, ...], target_multiset: tuple[int, ...]) -> tuple[int, ...]:
    """Order the target multiset so each cop moves within its closed
    neighborhood; one legal pairing always exists for solver successors."""
    for perm in permutations(target_multiset):
        if all(g.closed(s) >> t & 1 for s, t in zip(sources, perm)):
            return tuple(perm)
    raise InternalContradictionError("no legal pairing onto successor multiset")


class OptimalCops:
    """Positional cop strategy read from a solved table: from winning states
    it plays the least rank-decreasing successor; from losing states it
    passes."""

    side = "cop"

    def __init__(self, g: Graph, k: int, table: Optional[WinTable] = None,
                 max_states: int = MAX_STATES):
        self.g = g
        self.k = k
        self.table = table if table is not None else cops_win(g, k, max_states)[1]

    def place(self) -> tuple[int, ...]:
        try:
            return self.table.best_placement()
        except NoStrategyError:
            return (0,) * self.k

    def move(self, cops: tuple[int, ...], robber: int) -> tuple[int, ...]:
        if not self.table.winning(cops, robber, cop_to_move=True):
            return tuple(cops)
        target = self.table.cop_move(cops, robber)
        return _legal_assignment(self.g, tuple(cops), target)


class OptimalRobber:
    """Positional robber strategy: place outside the cop-win region and
    forever escape within it; when losing, stall by maximizing the
    capture rank (total only with allow_losing)."""

    side = "robber"

    def __init__(self, g: Graph, k: int, table: Optional[WinTable] = None,
                 allow_losing: bool = False, max_states: int = MAX_STATES):
        self.g = g
        self.k = k
        self.table = table if table is not None else cops_win(g, k, max_states)[1]
        if not allow_losing and self.table.all_winning():
            raise NoStrategyError("every placement loses; pass allow_losing=True for a stalling robber")

    def place(self, cops: tuple[int, ...]) -> int:
        t = self.table
        m = multiset_rank(tuple(sorted(cops)))
        for r in range(t.n):
            if not t.win_c[m * t.n + r]:
                return r
        ranks = [int(t.rank_c[m * t.n + r]) for r in range(t.n)]
        return max(range(t.n), key=lambda r: (ranks[r], -r))

    def move(self, cops: tuple[int, ...], robber: int) -> int:
        t = self.table
        m = multiset_rank(tuple(sorted(cops)))
        if not t.win_r[m * t.n + robber]:
            return t.robber_escape(cops, robber)
        best = None
        best_key = None
        for r2 in t.closed[robber]:
            key = int(t.rank_c[m * t.n + r2])
            if best_key is None or key > best_key:
                best, best_key = r2, key
        return best


def optimal_cop_strategy(g: Graph, k: int, table: Optional[WinTable] = None,
                         max_states: int = MAX_STATES) -> OptimalCops:
    return OptimalCops(g, k, table, max_states)


def optimal_robber_strategy(g: Graph, k: int, table: Optional[WinTable] = None,
                            allow_losing: bool = False,
                            max_states: int = MAX_STATES) -> OptimalRobber:
    return OptimalRobber(g, k, table, allow_losing, max_states)


# -- game simulation -----------------------------------------------------------


@dataclass(frozen=True)
class Transcript:
    """Replayable record of one played game."""

    cop_start: tuple[int, ...]
    robber_start: int
    moves: tuple[tuple[str, tuple[int, ...], tuple[int, ...]], ...]
    outcome: str  # "capture" | "evasion"
    capture_round: Optional[int]
    round_limit: int

    @property
    def rounds(self) -> int:
        return self.capture_round if self.outcome == "capture" else self.round_limit

    def to_json(self) -> str:
        return json.dumps(
            {
                "placements": {"cops": list(self.cop_start), "robber": self.robber_start},
                "moves": [
                    {"side": side, "from": list(src), "to": list(dst)}
                    for side, src, dst in self.moves
                ],
                "outcome": self.outcome,
                "rounds": self.rounds,
                "round_limit": self.round_limit,
            }
        )

    @staticmethod
    def from_json(text: str) -> "Transcript":
        obj = json.loads(text)
        outcome = obj["outcome"]
        return Transcript(
            cop_start=tuple(obj["placements"]["cops"]),
            robber_start=obj["placements"]["robber"],
            moves=tuple(
                (mv["side"], tuple(mv["from"]), tuple(mv["to"])) for mv in obj["moves"]
            ),
            outcome=outcome,
            capture_round=obj["rounds"] if outcome == "capture" else None,
            round_limit=obj["round_limit"],
        )


def verify_transcript(g: Graph, tr: Transcript) -> bool:
    """Every move within a closed neighborhood, sides alternating cop-first,
    and a capture outcome ending with the robber on a cop vertex."""
    cops = tr.cop_start
    robber = tr.robber_start
    expect = "cop"
    for side, src, dst in tr.moves:
        if side != expect:
            return False
        if side == "cop":
            if src != cops or len(dst) != len(src):
                return False
            if not all(g.closed(s) >> t & 1 for s, t in zip(src, dst)):
                return False
            cops = dst
            expect = "robber"
        else:
            if src != (robber,) or len(dst) != 1:
                return False
            if not g.closed(robber) >> dst[0] & 1:
                return False
            robber = dst[0]
            expect = "cop"
    if tr.outcome == "capture":
        return robber in cops
    return robber not in cops


def _validate_vertex(n: int, v, side: str, context: str) -> None:
    if not isinstance(v, int) or not 0 <= v < n:
        raise StrategyFaultError(f"{side} strategy produced vertex {v!r} {context}")


def play(g: Graph, cop_strategy, robber_strategy, max_rounds: int) -> Transcript:
    """Faithful simulation: placements, then alternating moves with the cops
    first; stops at capture or the round limit. Illegal strategy output
    raises StrategyFaultError naming the offender and the state."""
    if max_rounds < 0:
        raise ParameterError("max_rounds must be nonnegative")
    cops = tuple(cop_strategy.place())
    if not cops:
        raise StrategyFaultError("cop strategy placed no cops")
    for v in cops:
        _validate_vertex(g.n, v, "cop", "at placement")
    robber = robber_strategy.place(cops)
    _validate_vertex(g.n, robber, "robber", "at placement")
    cop_start = cops
    robber_start = robber

    moves: list[tuple[str, tuple[int, ...], tuple[int, ...]]] = []
    if robber in cops:
        return Transcript(cop_start, robber_start, (), "capture", 0, max_rounds)

    for rnd in range(1, max_rounds + 1):
        new_cops = tuple(cop_strategy.move(cops, robber))
        if len(new_cops) != len(cops):
            raise StrategyFaultError(f"cop strategy changed team size at {cops}, robber {robber}")
        for s, t in zip(cops, new_cops):
            _validate_vertex(g.n, t, "cop", f"moving from {s}")
            if not g.closed(s) >> t & 1:
                raise StrategyFaultError(
                    f"cop move {s}->{t} is illegal at cops {cops}, robber {robber}"
                )
        moves.append(("cop", cops, new_cops))
        cops = new_cops
        if robber in cops:
            return Transcript(cop_start, robber_start, tuple(moves), "capture", rnd, max_rounds)
        new_r = robber_strategy.move(cops, robber)
        _validate_vertex(g.n, new_r, "robber", f"moving from {robber}")
        if not g.closed(robber) >> new_r & 1:
            raise StrategyFaultError(
                f"robber move {robber}->{new_r} is illegal at cops {cops}"
            )
        moves.append(("robber", (robber,), (new_r,)))
        robber = new_r
        if robber in cops:
            return Transcript(cop_start, robber_start, tuple(moves), "capture", rnd, max_rounds)
    return Transcript(cop_start, robber_start, tuple(moves), "evasion", None, max_rounds)
