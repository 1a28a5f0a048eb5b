"""Exact graph invariants: independence, clique, chromatic and clique cover
numbers, induced-cycle detection, and the corner-elimination cop-win test.

All solvers are exact branch-and-bound over bitmask candidate sets; there are
capacity gates instead of timeouts. The clique cover number is always
computed as the chromatic number of the complement (single exact-coloring
code path), and the clique number as the independence number of the
complement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import CapacityError, ParameterError, PreconditionError
from .graphs import Graph, bits, complement

ALPHA_MAX_VERTICES = 128
CHI_MAX_VERTICES = 64


# -- maximum independent set ------------------------------------------------


def independence_number(g: Graph) -> tuple[int, int]:
    """Exact maximum independent set size and one witness bitmask.

    Branch and bound on candidate bitmasks: branch on a maximum-degree
    candidate vertex, bound by a greedy clique partition of the candidates
    (each clique contributes at most one vertex).
    """
    if g.n > ALPHA_MAX_VERTICES:
        raise CapacityError(f"independence_number gated at n <= {ALPHA_MAX_VERTICES}")
    adj = g.adj
    best_size = 0
    best_set = 0

    def clique_bound(cand: int) -> int:
        # greedy partition of cand into cliques of g
        count = 0
        rest = cand
        while rest:
            v = (rest & -rest).bit_length() - 1
            clique = 1 << v
            rest ^= 1 << v
            grow = rest & adj[v]
            while grow:
                u = (grow & -grow).bit_length() - 1
                clique |= 1 << u
                rest ^= 1 << u
                grow &= adj[u]
            count += 1
        return count

    def expand(cand: int, size: int, chosen: int) -> None:
        nonlocal best_size, best_set
        if not cand:
            if size > best_size:
                best_size = size
                best_set = chosen
            return
        if size + clique_bound(cand) <= best_size:
            return
        # pivot: max degree within candidates
        pivot = -1
        pivot_deg = -1
        for v in bits(cand):
            d = (adj[v] & cand).bit_count()
            if d > pivot_deg:
                pivot, pivot_deg = v, d
        bit = 1 << pivot
        expand(cand & ~adj[pivot] & ~bit, size + 1, chosen | bit)
        expand(cand & ~bit, size, chosen)

    expand(g.vertex_mask(), 0, 0)
    return best_size, best_set


def is_independent_set(g: Graph, s: int) -> bool:
    return all(not (g.adj[v] & s) for v in bits(s))


def clique_number(g: Graph) -> tuple[int, int]:
    """omega(g) as the independence number of the complement; the witness
    bitmask induces a clique in g."""
    return independence_number(complement(g))


def is_clique(g: Graph, s: int) -> bool:
    return all((g.adj[v] & s).bit_count() == s.bit_count() - 1 for v in bits(s))


# -- exact coloring ---------------------------------------------------------


def _dsatur_upper(g: Graph) -> tuple[int, list[int]]:
    n = g.n
    colors = [-1] * n
    sat = [0] * n  # bitmask of neighbor colors
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] == -1),
            key=lambda u: (sat[u].bit_count(), g.degree(u), -u),
        )
        c = 0
        while sat[v] >> c & 1:
            c += 1
        colors[v] = c
        for u in bits(g.adj[v]):
            if colors[u] == -1:
                sat[u] |= 1 << c
    return (max(colors) + 1 if n else 0), colors


def chromatic_number(g: Graph) -> tuple[int, list[int]]:
    """Exact chromatic number with a witness coloring.

    DSATUR greedy supplies the upper bound, a maximum clique the lower bound
    and a precoloring; branch and bound closes the gap.
    """
    if g.n > CHI_MAX_VERTICES:
        raise CapacityError(f"chromatic_number gated at n <= {CHI_MAX_VERTICES}")
    n = g.n
    if n == 0:
        return 0, []
    if g.edge_count() == 0:
        return 1, [0] * n
    upper, greedy_colors = _dsatur_upper(g)
    lower, clique_mask = clique_number(g)
    if lower == upper:
        return upper, greedy_colors

    adj = g.adj
    best_k = upper
    best_colors = greedy_colors[:]
    colors = [-1] * n
    clique = list(bits(clique_mask))
    for c, v in enumerate(clique):
        colors[v] = c

    def pick_vertex() -> int:
        best_v = -1
        key = (-1, -1)
        for u in range(n):
            if colors[u] != -1:
                continue
            s = 0
            for w in bits(adj[u]):
                if colors[w] != -1:
                    s |= 1 << colors[w]
            cand = (s.bit_count(), adj[u].bit_count())
            if cand > key:
                key = cand
                best_v = u
        return best_v

    def backtrack(used: int, colored: int) -> None:
        nonlocal best_k, best_colors
        if used >= best_k:
            return
        if colored == n:
            best_k = used
            best_colors = colors[:]
            return
        v = pick_vertex()
        forbidden = 0
        for w in bits(adj[v]):
            if colors[w] != -1:
                forbidden |= 1 << colors[w]
        limit = min(used + 1, best_k - 1)
        for c in range(limit):
            if forbidden >> c & 1:
                continue
            colors[v] = c
            backtrack(max(used, c + 1), colored + 1)
            colors[v] = -1

    backtrack(len(clique), len(clique))
    return best_k, best_colors


def is_proper_coloring(g: Graph, colors: list[int]) -> bool:
    return len(colors) == g.n and all(
        colors[u] != colors[v] for u, v in g.edges()
    ) and all(c >= 0 for c in colors)


# -- clique covers ----------------------------------------------------------


@dataclass(frozen=True)
class CliquePartition:
    """Ordered partition of the vertex set into cliques (bitmask parts)."""

    parts: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.parts)

    def part_of(self, v: int) -> int:
        for idx, p in enumerate(self.parts):
            if p >> v & 1:
                return idx
        raise ParameterError(f"vertex {v} not covered")

    def validate(self, g: Graph) -> None:
        union = 0
        for p in self.parts:
            if p == 0:
                raise PreconditionError("clique partition has an empty part")
            if p & union:
                raise PreconditionError("clique partition parts overlap")
            union |= p
            if not is_clique(g, p):
                raise PreconditionError(f"part {p:#x} does not induce a clique")
        if union != g.vertex_mask():
            raise PreconditionError("clique partition does not cover all vertices")


def clique_cover_number(g: Graph) -> tuple[int, CliquePartition]:
    """theta(g) via the chromatic number of the complement; the witness
    partition's color classes are cliques of g."""
    k, colors = chromatic_number(complement(g))
    parts = [0] * k
    for v, c in enumerate(colors):
        parts[c] |= 1 << v
    cover = CliquePartition(tuple(parts))
    cover.validate(g)
    return k, cover


def clique_pairs_connected(g: Graph, cover: CliquePartition) -> tuple[bool, Optional[tuple[int, int]]]:
    """True when every pair of distinct cover parts has a crossing edge;
    otherwise returns the first failing pair (by index)."""
    cover.validate(g)
    k = len(cover)
    for i in range(k):
        for j in range(i + 1, k):
            if not any(g.adj[v] & cover.parts[j] for v in bits(cover.parts[i])):
                return False, (i, j)
    return True, None


# -- induced cycles ---------------------------------------------------------


def induces_cycle(g: Graph, s: int) -> bool:
    """Does bitmask ``s`` induce a cycle (2-regular and connected)?"""
    t = s.bit_count()
    if t < 3:
        return False
    for v in bits(s):
        if (g.adj[v] & s).bit_count() != 2:
            return False
    start = (s & -s).bit_length() - 1
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v] & s
        frontier = nxt & ~seen
        seen |= frontier
    return seen == s


def has_induced_cycle(g: Graph, t: int) -> Optional[int]:
    """Bitmask of an induced t-cycle, or None.

    Extends induced paths with chord pruning: the start is the least cycle
    vertex, interior vertices are adjacent to the path tail only, and the
    closing vertex is adjacent to exactly the tail and the start. The first
    witness under this fixed DFS order (ascending starts, ascending
    extensions) is returned, so results are deterministic.
    """
    if t < 3 or t > g.n:
        return None
    adj = g.adj

    def extend(v0: int, last: int, path_mask: int, blocked_mid: int, depth: int, low: int) -> Optional[int]:
        # blocked_mid = union of N(v_i) over interior path vertices before last
        if depth == t - 1:
            closing = adj[last] & adj[v0] & ~blocked_mid & ~path_mask & ~low
            if closing:
                return path_mask | (closing & -closing)
            return None
        cand = adj[last] & ~adj[v0] & ~blocked_mid & ~path_mask & ~low
        for v in bits(cand):
            r = extend(v0, v, path_mask | (1 << v), blocked_mid | adj[last], depth + 1, low)
            if r is not None:
                return r
        return None

    for v0 in range(g.n):
        low = (1 << (v0 + 1)) - 1  # v0 must be the least cycle vertex
        for v1 in bits(adj[v0] & ~low):
            r = extend(v0, v1, (1 << v0) | (1 << v1), 0, 2, low)
            if r is not None:
                return r
    return None


def induced_cycle_spectrum(g: Graph, tmax: int) -> set[int]:
    """{t <= tmax : g contains an induced t-cycle}."""
    if tmax < 3 or tmax > g.n:
        raise ParameterError("spectrum bound must satisfy 3 <= tmax <= n")
    return {t for t in range(3, tmax + 1) if has_induced_cycle(g, t) is not None}


# -- corners and dismantlability ---------------------------------------------


def is_dismantlable(g: Graph) -> tuple[bool, list[int]]:
    """Repeated corner deletion; a corner is u with N[u] subseteq N[v] in the
    current induced subgraph (least u, then least v). Returns the deletion
    order when the graph collapses to one vertex.

    Requires a connected input.
    """
    if not g.is_connected():
        raise PreconditionError("dismantlability is defined for connected graphs")
    live = g.vertex_mask()
    order: list[int] = []
    while live.bit_count() > 1:
        corner = -1
        for u in bits(live):
            nu = (g.adj[u] & live) | (1 << u)
            for v in bits(live & ~(1 << u)):
                nv = (g.adj[v] & live) | (1 << v)
                if nu & ~nv == 0:
                    corner = u
                    break
            if corner != -1:
                break
        if corner == -1:
            return False, order
        live ^= 1 << corner
        order.append(corner)
    return True, order


# -- summary report -----------------------------------------------------------


@dataclass
class InvariantReport:
    alpha: Optional[int] = None
    omega: Optional[int] = None
    chi: Optional[int] = None
    theta: Optional[int] = None

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "omega": self.omega, "chi": self.chi, "theta": self.theta}


def invariant_report(g: Graph) -> InvariantReport:
    """alpha/omega always (n <= 128); chi/theta when n <= 64."""
    rep = InvariantReport()
    if g.n <= ALPHA_MAX_VERTICES:
        rep.alpha = independence_number(g)[0]
        rep.omega = clique_number(g)[0]
    if g.n <= CHI_MAX_VERTICES:
        rep.chi = chromatic_number(g)[0]
        rep.theta = clique_cover_number(g)[0]
    return rep
