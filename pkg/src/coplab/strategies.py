"""Executable scripted strategies and their certificate extraction.

Contents:

* ``partition_evader``: the robber strategy defined on clique-partitioned
  graphs whose max degree is below k*ell/(k-1) - 1 and which have no
  blockable vertex; against at most k-1 cops it always has a safe reply.
* ``clique_guard_strategy``: k-1 cops exploiting an edgeless part pair
  (i, j): one guard stationed in every other part, one walker that herds the
  robber into part j and captures inside it.
* ``robber_safe_set``: the vertices of the last part a surviving robber must
  occupy when the other parts' cops all see into it.
* ``extract_induced_c4`` / ``extract_induced_cycle``: cop scripts that force
  a surviving robber to trace an induced 4-cycle, respectively a (k+1)-cycle,
  and return either the cycle or a legal capture transcript.
* seeded ``RandomCops`` / ``GreedyCops`` / ``RandomRobber`` adversaries.

Every scripted choice breaks ties by least vertex index, so runs are
reproducible; greedy captures take priority over scripted moves, which is
what turns a blundering robber into a capture certificate instead of an
error.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    InternalContradictionError,
    ParameterError,
    PreconditionError,
    StrategyFaultError,
)
from .graphs import Graph, bits
from .invariants import CliquePartition, clique_pairs_connected, induces_cycle
from .randgraphs import blockable_vertices
from .solver import Transcript


def _least(mask: int) -> int:
    if mask == 0:
        raise InternalContradictionError("expected a nonempty vertex set")
    return (mask & -mask).bit_length() - 1


# -- adversaries ---------------------------------------------------------------


class RandomCops:
    """Uniform legal cop play from a seeded generator."""

    side = "cop"

    def __init__(self, g: Graph, k: int, seed: int):
        self.g = g
        self.k = k
        self.rng = random.Random(seed)
        self._closed = [sorted(bits(g.closed(v))) for v in range(g.n)]

    def place(self) -> tuple[int, ...]:
        return tuple(sorted(self.rng.randrange(self.g.n) for _ in range(self.k)))

    def move(self, cops: tuple[int, ...], robber: int) -> tuple[int, ...]:
        return tuple(self.rng.choice(self._closed[c]) for c in cops)


class GreedyCops:
    """Each cop steps to a closest-to-robber vertex of its closed
    neighborhood; ties are broken by the seeded generator."""

    side = "cop"

    def __init__(self, g: Graph, k: int, seed: int):
        self.g = g
        self.k = k
        self.rng = random.Random(seed)
        self._closed = [sorted(bits(g.closed(v))) for v in range(g.n)]
        self._dist = [g.bfs_dist(v) for v in range(g.n)]

    def place(self) -> tuple[int, ...]:
        return tuple(sorted(self.rng.randrange(self.g.n) for _ in range(self.k)))

    def move(self, cops: tuple[int, ...], robber: int) -> tuple[int, ...]:
        out = []
        for c in cops:
            options = self._closed[c]
            best = min(self._dist[v][robber] for v in options)
            out.append(self.rng.choice([v for v in options if self._dist[v][robber] == best]))
        return tuple(out)


class RandomRobber:
    """Uniform legal robber play from a seeded generator; never places on a
    cop when any other vertex exists."""

    side = "robber"

    def __init__(self, g: Graph, seed: int):
        self.g = g
        self.rng = random.Random(seed)
        self._closed = [sorted(bits(g.closed(v))) for v in range(g.n)]

    def place(self, cops: tuple[int, ...]) -> int:
        free = [v for v in range(self.g.n) if v not in cops]
        return self.rng.choice(free) if free else self.rng.randrange(self.g.n)

    def move(self, cops: tuple[int, ...], robber: int) -> int:
        return self.rng.choice(self._closed[robber])


# -- evading robber on checked partition instances ------------------------------


class PartitionEvader:
    """Robber strategy for a clique partition with the degree and
    escape-window guarantees; sound against at most k-1 cops.

    Placement: least vertex outside every cop's closed neighborhood. Moves:
    pass while no cop is adjacent; otherwise pick a cop-free part, preferring
    the robber's own (move inside it to a vertex no cop sees), else the least
    cop-free part j (move along an edge into part j to a vertex no cop sees).
    """

    side = "robber"

    def __init__(self, g: Graph, parts: CliquePartition):
        parts.validate(g)
        sizes = {p.bit_count() for p in parts.parts}
        if len(sizes) != 1:
            raise PreconditionError("parts must all have equal size")
        self.g = g
        self.parts = parts
        self.k = len(parts.parts)
        if self.k < 2:
            raise PreconditionError("need at least two parts")
        ell = sizes.pop()
        threshold = Fraction(self.k * ell, self.k - 1) - 1
        delta = g.max_degree()
        if not Fraction(delta) < threshold:
            raise PreconditionError(
                f"max degree {delta} not below threshold {threshold}; evasion not guaranteed"
            )
        blocked = blockable_vertices(g, parts)
        if blocked:
            raise PreconditionError(
                f"escape windows of vertices {blocked[:8]} can be sealed; evasion not guaranteed"
            )

    def _check_cop_count(self, cops) -> None:
        if len(cops) > self.k - 1:
            raise ParameterError(
                f"evader is sound against at most {self.k - 1} cops, got {len(cops)}"
            )

    def place(self, cops: tuple[int, ...]) -> int:
        self._check_cop_count(cops)
        dominated = 0
        for c in cops:
            dominated |= self.g.closed(c)
        free = self.g.vertex_mask() & ~dominated
        if free == 0:
            raise InternalContradictionError("no undominated placement; degree check violated")
        return _least(free)

    def move(self, cops: tuple[int, ...], robber: int) -> int:
        self._check_cop_count(cops)
        g = self.g
        adjacent = any(g.adj[c] >> robber & 1 for c in cops)
        if not adjacent:
            return robber
        cop_mask = 0
        seen = 0
        for c in cops:
            cop_mask |= 1 << c
            seen |= g.closed(c)
        i = self.parts.part_of(robber)
        free_parts = [j for j, pm in enumerate(self.parts.parts) if pm & cop_mask == 0]
        if not free_parts:
            raise InternalContradictionError("fewer cops than parts must leave a part free")
        if i in free_parts:
            cand = self.parts.parts[i] & ~seen
        else:
            j = free_parts[0]
            cand = g.adj[robber] & self.parts.parts[j] & ~seen
        if cand == 0:
            raise InternalContradictionError(
                "guaranteed safe vertex missing; property checks are unsound"
            )
        return _least(cand)


def partition_evader(g: Graph, parts: CliquePartition) -> PartitionEvader:
    return PartitionEvader(g, parts)


# -- guard-and-walk cops over an edgeless part pair ------------------------------


class CliqueGuardCops:
    """k-1 cops for a cover whose parts i and j share no edge: a stationed
    guard inside every part other than i and j captures anything entering its
    clique, while the walker (last cop, starting in part i) walks a shortest
    path to the robber's part and captures inside it."""

    side = "cop"

    def __init__(self, g: Graph, cover: CliquePartition, i: int, j: int):
        cover.validate(g)
        if not g.is_connected():
            raise PreconditionError("guard strategy needs a connected graph")
        k = len(cover.parts)
        if i == j or not 0 <= i < k or not 0 <= j < k:
            raise PreconditionError("i and j must be distinct part indices")
        for v in bits(cover.parts[i]):
            if g.adj[v] & cover.parts[j]:
                raise PreconditionError(f"parts {i} and {j} share an edge at vertex {v}")
        self.g = g
        self.cover = cover
        self.i = i
        self.j = j
        self.guard_parts = [t for t in range(k) if t not in (i, j)]
        # distance of every vertex to each part (multi-source BFS)
        self._part_dist = [self._dist_to(pm) for pm in cover.parts]

    def _dist_to(self, target_mask: int) -> list[int]:
        g = self.g
        dist = [-1] * g.n
        frontier = target_mask
        for v in bits(target_mask):
            dist[v] = 0
        seen = target_mask
        d = 0
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
            d += 1
            for v in bits(frontier):
                dist[v] = d
        return dist

    def place(self) -> tuple[int, ...]:
        spots = [_least(self.cover.parts[t]) for t in self.guard_parts]
        spots.append(_least(self.cover.parts[self.i]))
        return tuple(spots)

    def move(self, cops: tuple[int, ...], robber: int) -> tuple[int, ...]:
        g = self.g
        out = list(cops)
        for idx, t in enumerate(self.guard_parts):
            if self.cover.parts[t] >> robber & 1:
                out[idx] = robber  # same clique, legal capture step
        walker = cops[-1]
        if g.closed(walker) >> robber & 1:
            out[-1] = robber
        else:
            dist = self._part_dist[self.cover.part_of(robber)]
            options = sorted(bits(g.closed(walker)))
            out[-1] = min(options, key=lambda v: (dist[v], v))
        return tuple(out)


def clique_guard_strategy(g: Graph, cover: CliquePartition, i: int, j: int) -> CliqueGuardCops:
    return CliqueGuardCops(g, cover, i, j)


# -- forced robber location -------------------------------------------------------


def robber_safe_set(
    g: Graph,
    cover: CliquePartition,
    cop_vertices: list[int],
    include_last_part: bool = False,
) -> int:
    """Vertices of the last part where a robber can survive the coming cop
    turn when cop t sits in part t with a neighbor in the last part.

    Returns {u in last part : every cop part meets N(u)} minus the closed
    neighborhoods of the cops. ``include_last_part`` additionally requires a
    neighbor inside the last part itself (the stricter quantifier reading).
    """
    cover.validate(g)
    k = len(cover.parts)
    if len(cop_vertices) != k - 1:
        raise PreconditionError(f"expected {k - 1} cops, got {len(cop_vertices)}")
    last = cover.parts[k - 1]
    for t, c in enumerate(cop_vertices):
        if not cover.parts[t] >> c & 1:
            raise PreconditionError(f"cop {t} at {c} is outside part {t}")
        if g.adj[c] & last == 0:
            raise PreconditionError(f"cop {t} at {c} has no neighbor in the last part")
    safe = 0
    for u in bits(last):
        if any(g.adj[u] & cover.parts[t] == 0 for t in range(k - 1)):
            continue
        if include_last_part and g.adj[u] & last == 0:
            continue
        safe |= 1 << u
    for c in cop_vertices:
        safe &= ~g.closed(c)
    return safe


# -- extraction scripts ------------------------------------------------------------


@dataclass(frozen=True)
class ExtractionResult:
    """Either a vertex set inducing a cycle of the stated length, or a legal
    capture transcript that witnesses the supplied robber losing."""

    kind: str  # "cycle" | "capture"
    cycle: Optional[int] = None
    length: Optional[int] = None
    transcript: Optional[Transcript] = None


class _ScriptGame:
    """Bookkeeping for a scripted cop side driving a supplied robber."""

    def __init__(self, g: Graph, cops: tuple[int, ...], robber_strategy):
        self.g = g
        self.cops = cops
        self.strategy = robber_strategy
        self.robber = robber_strategy.place(cops)
        self.cop_start = cops
        self.robber_start = self.robber
        self.moves: list[tuple[str, tuple[int, ...], tuple[int, ...]]] = []
        self.round = 0

    def captured_at_placement(self) -> bool:
        return self.robber in self.cops

    def cop_turn(self, new_cops: tuple[int, ...]) -> bool:
        """Apply a cop move; True when it captures."""
        self.round += 1
        self.moves.append(("cop", self.cops, new_cops))
        self.cops = new_cops
        return self.robber in new_cops

    def capture_move(self) -> Optional[tuple[int, ...]]:
        """Greedy capture move when some cop sees the robber, else None."""
        for idx, c in enumerate(self.cops):
            if self.g.closed(c) >> self.robber & 1:
                out = list(self.cops)
                out[idx] = self.robber
                return tuple(out)
        return None

    def robber_turn(self) -> bool:
        """Ask the strategy for the robber move; True when it is suicide."""
        nxt = self.strategy.move(self.cops, self.robber)
        if not self.g.closed(self.robber) >> nxt & 1:
            raise StrategyFaultError(
                f"robber strategy proposed illegal move {self.robber}->{nxt}"
            )
        self.moves.append(("robber", (self.robber,), (nxt,)))
        self.robber = nxt
        return self.robber in self.cops

    def transcript(self, outcome: str) -> Transcript:
        return Transcript(
            self.cop_start,
            self.robber_start,
            tuple(self.moves),
            outcome,
            self.round if outcome == "capture" else None,
            self.round,
        )

    def capture_result(self) -> ExtractionResult:
        return ExtractionResult(kind="capture", transcript=self.transcript("capture"))


def extract_induced_c4(g: Graph, cover: CliquePartition, robber_strategy) -> ExtractionResult:
    """Two scripted plies forcing a surviving robber to expose an induced
    4-cycle {v1, w, u, u'}: cops fill all parts but the last, the first cop
    steps onto its neighbor w in the last part, and the robber's escape must
    land in the first part away from N(w)."""
    cover.validate(g)
    if not g.is_connected():
        raise PreconditionError("extraction needs a connected graph")
    k = len(cover.parts)
    if k < 3:
        raise PreconditionError("extraction needs a cover with at least 3 parts")
    ok, pair = clique_pairs_connected(g, cover)
    if not ok:
        raise PreconditionError(f"cover parts {pair} share no edge")
    last = cover.parts[k - 1]
    v1_cand = [v for v in bits(cover.parts[0]) if g.adj[v] & last]
    v1 = v1_cand[0]
    w = _least(g.adj[v1] & last)
    cops = (v1,) + tuple(_least(cover.parts[t]) for t in range(1, k - 1))
    game = _ScriptGame(g, cops, robber_strategy)
    if game.captured_at_placement():
        return game.capture_result()
    cap = game.capture_move()
    if cap is not None:
        game.cop_turn(cap)
        return game.capture_result()
    u = game.robber
    # scripted ply: first cop steps to w, the rest pass (w != u, since an
    # uncaptured robber avoids N[v1])
    if game.cop_turn((w,) + cops[1:]):
        return game.capture_result()
    if game.robber_turn():
        return game.capture_result()
    u2 = game.robber
    cap = game.capture_move()
    if cap is not None:
        game.cop_turn(cap)
        return game.capture_result()
    if not cover.parts[0] >> u2 & 1 or g.adj[w] >> u2 & 1:
        raise InternalContradictionError(
            "uncaptured robber escaped outside the first part; cover is not a clique cover"
        )
    cycle = (1 << v1) | (1 << w) | (1 << u) | (1 << u2)
    if cycle.bit_count() != 4 or not induces_cycle(g, cycle):
        raise InternalContradictionError("extracted quadruple does not induce a 4-cycle")
    return ExtractionResult(kind="cycle", cycle=cycle, length=4)


def _anchors(g: Graph, cover: CliquePartition) -> list[int]:
    """Least vertex of each part adjacent to every other part; raises with
    the offending parts listed."""
    k = len(cover.parts)
    anchors = []
    missing = []
    for a, pm in enumerate(cover.parts):
        found = -1
        for v in bits(pm):
            if all(b == a or g.adj[v] & cover.parts[b] for b in range(k)):
                found = v
                break
        if found < 0:
            missing.append(a)
        anchors.append(found)
    if missing:
        raise PreconditionError(f"parts {missing} have no vertex adjacent to all other parts")
    return anchors


def extract_induced_cycle(g: Graph, cover: CliquePartition, robber_strategy) -> ExtractionResult:
    """Round-based script forcing a surviving robber around all k parts,
    yielding an induced (k+1)-cycle {u_1..u_k, w}, or a capture transcript.

    Cops start on the anchors of parts 2..k (round 1 is the placement round),
    which forces the robber into part 1. In round t the cop behind the robber
    advances onto the robber's previous vertex inside its clique while the
    next cop steps from its anchor into the robber's part, evicting it into
    the part just vacated; in the final round the first cop abandons part 1
    for the last part, and the robber's only refuge is part 1, closing the
    cycle. Greedy captures preempt the script whenever the robber blunders.
    """
    cover.validate(g)
    if not g.is_connected():
        raise PreconditionError("extraction needs a connected graph")
    k = len(cover.parts)
    if k < 3:
        raise PreconditionError("extraction needs a cover with at least 3 parts")
    anchors = _anchors(g, cover)
    parts = cover.parts

    # cop t (0-based) guards part t+1 from its anchor; part 0 starts free
    cops = tuple(anchors[t + 1] for t in range(k - 1))
    game = _ScriptGame(g, cops, robber_strategy)
    if game.captured_at_placement():
        return game.capture_result()

    def punish(deficient_part: int, cop_idx: int, target_part: int) -> ExtractionResult:
        """The robber cannot reach ``deficient_part``: its cop enters the
        robber's part; every reply is then capturable."""
        entry = g.adj[game.cops[cop_idx]] & parts[target_part]
        if entry == 0:
            raise InternalContradictionError(
                "robber violated its forced location and no punishing entry exists"
            )
        new = list(game.cops)
        new[cop_idx] = _least(entry)
        if game.cop_turn(tuple(new)):
            return game.capture_result()
        if game.robber_turn():
            return game.capture_result()
        cap = game.capture_move()
        if cap is None:
            raise InternalContradictionError("punished robber found an impossible refuge")
        game.cop_turn(cap)
        return game.capture_result()

    def verify_location(expected_part: int) -> Optional[ExtractionResult]:
        """Greedy capture, forced-part check, reachability punishment."""
        cap = game.capture_move()
        if cap is not None:
            game.cop_turn(cap)
            return game.capture_result()
        if not parts[expected_part] >> game.robber & 1:
            raise InternalContradictionError(
                f"uncaptured robber sits outside its forced part {expected_part}"
            )
        occupied = [cover.part_of(c) for c in game.cops]
        for idx, b in enumerate(occupied):
            if g.adj[game.robber] & parts[b] == 0:
                return punish(b, idx, expected_part)
        return None

    trail: list[int] = []  # u_1 .. u_k
    res = verify_location(0)
    if res is not None:
        return res
    trail.append(game.robber)

    for t in range(1, k + 1):
        # round t < k: the cop behind the robber advances onto the robber's
        # previous vertex, and the next cop steps from its anchor into the
        # robber's part; round k: the rear cop advances and the first cop
        # abandons part 0 for the last part
        new = list(game.cops)
        if t < k:
            if t >= 2:
                new[t - 2] = trail[t - 2]
            new[t - 1] = _least(g.adj[anchors[t]] & parts[t - 1])
        else:
            new[k - 2] = trail[k - 2]
            new[0] = _least(g.adj[trail[0]] & parts[k - 1])
        if game.cop_turn(tuple(new)):
            return game.capture_result()
        if game.robber_turn():
            return game.capture_result()
        if t < k:
            res = verify_location(t)
            if res is not None:
                return res
            trail.append(game.robber)
        else:
            cap = game.capture_move()
            if cap is not None:
                game.cop_turn(cap)
                return game.capture_result()
            w = game.robber
            if not parts[0] >> w & 1:
                raise InternalContradictionError("uncaptured robber closed outside part 1")
            cycle = 1 << w
            for u in trail:
                cycle |= 1 << u
            if cycle.bit_count() != k + 1 or not induces_cycle(g, cycle):
                raise InternalContradictionError("trail does not induce the expected cycle")
            return ExtractionResult(kind="cycle", cycle=cycle, length=k + 1)
    raise InternalContradictionError("script ended without an outcome")  # pragma: no cover
