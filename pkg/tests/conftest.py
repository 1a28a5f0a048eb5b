import random

import pytest

from coplab.graphs import Graph, bits, from_edges, graph_from_edge_mask, mask_of
from coplab.invariants import CliquePartition


def random_graph(rng: random.Random, n: int) -> Graph:
    return graph_from_edge_mask(n, rng.getrandbits(n * (n - 1) // 2))


def random_gnp(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return from_edges(n, edges)


def clique_chain(sizes, seed, density=0.5):
    """Chain of cliques with random cross edges between consecutive parts
    only (at least one per junction, so the graph is connected)."""
    rng = random.Random(seed)
    offs = []
    o = 0
    for s in sizes:
        offs.append(o)
        o += s
    edges = []
    for pi, s in enumerate(sizes):
        for a in range(s):
            for b in range(a + 1, s):
                edges.append((offs[pi] + a, offs[pi] + b))
    for pi in range(len(sizes) - 1):
        cross = [
            (offs[pi] + a, offs[pi + 1] + b)
            for a in range(sizes[pi])
            for b in range(sizes[pi + 1])
            if rng.random() < density
        ]
        if not cross:
            cross = [(offs[pi], offs[pi + 1])]
        edges.extend(cross)
    g = from_edges(sum(sizes), edges)
    parts = CliquePartition(
        tuple(mask_of(range(offs[i], offs[i] + sizes[i])) for i in range(len(sizes)))
    )
    return g, parts


class CoverAwareEvader:
    """Unchecked test robber that follows the cover structure: prefer a
    cop-free own part, else cross into the least cop-free part, favoring
    vertices adjacent to every other part."""

    side = "robber"

    def __init__(self, g, parts):
        self.g = g
        self.parts = parts

    def _anchorish(self, cand):
        for v in bits(cand):
            if all(self.g.adj[v] & pm or pm >> v & 1 for pm in self.parts.parts):
                return v
        return (cand & -cand).bit_length() - 1 if cand else None

    def place(self, cops):
        dom = 0
        for c in cops:
            dom |= self.g.closed(c)
        free = self.g.vertex_mask() & ~dom
        v = self._anchorish(free)
        return v if v is not None else 0

    def move(self, cops, robber):
        g = self.g
        if not any(g.adj[c] >> robber & 1 for c in cops):
            return robber
        cop_mask = 0
        seen = 0
        for c in cops:
            cop_mask |= 1 << c
            seen |= g.closed(c)
        i = self.parts.part_of(robber)
        free = [j for j, pm in enumerate(self.parts.parts) if pm & cop_mask == 0]
        cands = []
        if i in free:
            cands.append(self.parts.parts[i] & ~seen)
        cands.extend(
            g.adj[robber] & self.parts.parts[j] & ~seen for j in free if j != i
        )
        for cand in cands:
            if cand:
                return self._anchorish(cand)
        safe = g.closed(robber) & ~seen
        if safe:
            return (safe & -safe).bit_length() - 1
        return robber


@pytest.fixture
def rng():
    return random.Random(0xC0B)
