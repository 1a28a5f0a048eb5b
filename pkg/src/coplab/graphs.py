"""Immutable simple graphs over integer bitset adjacency rows.

Vertices are 0..n-1. Each adjacency row is a Python int used as a bitset,
which keeps set algebra (unions, intersections, differences, popcounts)
exact and fast without any dependency. Vertex sets everywhere in this
package are such int bitmasks.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Optional

from .errors import CapacityError, Graph6Error, ParameterError

MAX_VERTICES = 4096
ENUM_MAX_VERTICES = 7  # 2^21 labeled graphs


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


class Graph:
    """Simple undirected graph, immutable after construction.

    ``adj[v]`` is the open-neighborhood bitmask of v. Rows are validated to
    be symmetric and loop-free unless the caller vouches for them.
    """

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, adj: Iterable[int], validate: bool = True):
        if n < 0 or n > MAX_VERTICES:
            raise CapacityError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        rows = tuple(adj)
        if len(rows) != n:
            raise ParameterError(f"expected {n} adjacency rows, got {len(rows)}")
        if validate:
            full = (1 << n) - 1
            for v, row in enumerate(rows):
                if row & ~full:
                    raise ParameterError(f"row {v} has bits outside 0..{n-1}")
                if row >> v & 1:
                    raise ParameterError(f"vertex {v} is its own neighbor")
                for u in bits(row):
                    if not rows[u] >> v & 1:
                        raise ParameterError(f"adjacency not symmetric at ({v},{u})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", rows)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.n, self.adj))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count()})"

    # -- basic queries ----------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.adj), default=0)

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for v in range(self.n):
            higher = self.adj[v] >> (v + 1) << (v + 1)
            for u in bits(higher):
                yield (v, u)

    def closed(self, v: int) -> int:
        """Closed-neighborhood bitmask N[v]."""
        return self.adj[v] | (1 << v)

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == self.vertex_mask()

    def bfs_dist(self, source: int) -> list[int]:
        """BFS distances from ``source``; unreachable vertices get -1."""
        dist = [-1] * self.n
        dist[source] = 0
        seen = 1 << source
        frontier = seen
        d = 0
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
            d += 1
            for v in bits(frontier):
                dist[v] = d
        return dist

    def diameter(self) -> int:
        best = 0
        for v in range(self.n):
            dv = self.bfs_dist(v)
            m = max(dv)
            if -1 in dv:
                raise ParameterError("diameter of a disconnected graph")
            best = max(best, m)
        return best


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    rows = [0] * n
    for u, v in edges:
        if u == v:
            raise ParameterError(f"loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, rows, validate=False)


def edges_between(g: Graph, s: int, t: int) -> int:
    """Count edges with one end in bitmask ``s`` and the other in ``t``.

    ``s`` and ``t`` must be disjoint vertex sets.
    """
    if s & t:
        raise ParameterError("edges_between requires disjoint sets")
    return sum((g.adj[v] & t).bit_count() for v in bits(s))


# -- named families -------------------------------------------------------


def make_family(kind: str, t: int) -> Graph:
    """Path, cycle, complete, or edgeless graph on vertices 0..t-1.

    Path/cycle edges join consecutive indices; the cycle closes {t-1, 0}.
    """
    if t < 1:
        raise ParameterError(f"family size must be positive, got {t}")
    if kind == "path":
        return from_edges(t, [(i, i + 1) for i in range(t - 1)])
    if kind == "cycle":
        if t < 3:
            raise ParameterError("cycle needs at least 3 vertices")
        return from_edges(t, [(i, (i + 1) % t) for i in range(t)])
    if kind == "complete":
        full = (1 << t) - 1
        return Graph(t, [full ^ (1 << v) for v in range(t)], validate=False)
    if kind == "empty":
        return Graph(t, [0] * t, validate=False)
    raise ParameterError(f"unknown family kind {kind!r}")


def shrikhande() -> Graph:
    """The 16-vertex Shrikhande graph as the Cayley graph on Z4 x Z4 with
    connection set {±(1,0), ±(0,1), ±(1,1)}; 6-regular, srg(16,6,2,2)."""
    conn = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)]
    edges = []
    for a in range(4):
        for b in range(4):
            v = 4 * a + b
            for da, db in conn:
                u = 4 * ((a + da) % 4) + ((b + db) % 4)
                if v < u:
                    edges.append((v, u))
    return from_edges(16, edges)


def petersen() -> Graph:
    """Petersen graph: 2-subsets of {0..4} in lexicographic order, adjacent
    when disjoint."""
    pairs = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    edges = []
    for a, pa in enumerate(pairs):
        for b in range(a + 1, len(pairs)):
            pb = pairs[b]
            if not set(pa) & set(pb):
                edges.append((a, b))
    return from_edges(10, edges)


# -- operators ------------------------------------------------------------


def complement(g: Graph) -> Graph:
    full = g.vertex_mask()
    return Graph(g.n, [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)], validate=False)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    n = g.n + h.n
    if n > MAX_VERTICES:
        raise CapacityError(f"union has {n} > {MAX_VERTICES} vertices")
    rows = list(g.adj) + [row << g.n for row in h.adj]
    return Graph(n, rows, validate=False)


def induced_subgraph(g: Graph, s: int) -> Graph:
    """Subgraph induced by bitmask ``s``, vertices relabeled in ascending order."""
    if s & ~g.vertex_mask():
        raise ParameterError("vertex set outside the graph")
    verts = list(bits(s))
    index = {v: i for i, v in enumerate(verts)}
    rows = [0] * len(verts)
    for v in verts:
        for u in bits(g.adj[v] & s):
            rows[index[v]] |= 1 << index[u]
    return Graph(len(verts), rows, validate=False)


# -- graph6 ---------------------------------------------------------------


def to_graph6(g: Graph) -> bytes:
    """Canonical graph6 bytes (no header, no trailing whitespace)."""
    n = g.n
    if n <= 62:
        head = bytes([n + 63])
    elif n <= 258047:
        head = bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    else:
        raise CapacityError(f"graph6 serialization beyond {MAX_VERTICES} vertices")
    out = bytearray(head)
    acc = 0
    nbits = 0
    for j in range(1, n):
        col = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = 0
                nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def parse_graph6(data: bytes | str) -> Graph:
    """Parse one graph6 value; raises Graph6Error with a byte offset."""
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.rstrip(b"\r\n")
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    if not data:
        raise Graph6Error("empty graph6 input", 0)
    pos = 0
    b0 = data[0]
    if b0 == 126:
        if len(data) >= 2 and data[1] == 126:
            raise Graph6Error("graphs beyond 258047 vertices unsupported", 1)
        if len(data) < 4:
            raise Graph6Error("truncated vertex-count block", len(data))
        vals = []
        for pos in range(1, 4):
            b = data[pos]
            if not 63 <= b <= 126:
                raise Graph6Error(f"byte {b} outside graph6 range", pos)
            vals.append(b - 63)
        n = (vals[0] << 12) | (vals[1] << 6) | vals[2]
        pos = 4
    else:
        if not 63 <= b0 <= 126:
            raise Graph6Error(f"byte {b0} outside graph6 range", 0)
        n = b0 - 63
        pos = 1
    if n > MAX_VERTICES:
        raise CapacityError(f"graph6 value has {n} > {MAX_VERTICES} vertices")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos < nbytes:
        raise Graph6Error(f"need {nbytes} adjacency bytes, found {len(data) - pos}", len(data))
    if len(data) - pos > nbytes:
        raise Graph6Error("trailing bytes after adjacency block", pos + nbytes)
    rows = [0] * n
    bit = 0
    i, j = 0, 1
    for off in range(nbytes):
        b = data[pos + off]
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b} outside graph6 range", pos + off)
        v = b - 63
        for shift in range(5, -1, -1):
            if bit >= nbits:
                if v >> shift & 1:
                    raise Graph6Error("nonzero padding bits", pos + off)
                continue
            if v >> shift & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            bit += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, rows, validate=False)


def read_graph6_stream(lines: Iterable[str | bytes]) -> Iterator[Graph]:
    """Parse a newline-delimited stream of graph6 values, skipping blanks."""
    for line in lines:
        if isinstance(line, bytes):
            line = line.decode("ascii")
        line = line.strip()
        if line:
            yield parse_graph6(line)


# -- labeled enumeration --------------------------------------------------


def _edge_positions(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def graph_from_edge_mask(n: int, mask: int, positions: Optional[list[tuple[int, int]]] = None) -> Graph:
    pos = positions if positions is not None else _edge_positions(n)
    rows = [0] * n
    m = mask
    while m:
        low = m & -m
        i, j = pos[low.bit_length() - 1]
        rows[i] |= 1 << j
        rows[j] |= 1 << i
        m ^= low
    return Graph(n, rows, validate=False)


def enumerate_labeled_graphs(n: int, filter: Optional[Callable[[Graph], bool]] = None) -> Iterator[Graph]:
    """All 2^(n(n-1)/2) labeled graphs on 0..n-1, optionally filtered."""
    if n < 0 or n > ENUM_MAX_VERTICES:
        raise CapacityError(f"labeled enumeration gated at n <= {ENUM_MAX_VERTICES}")
    positions = _edge_positions(n)
    for mask in range(1 << (n * (n - 1) // 2)):
        g = graph_from_edge_mask(n, mask, positions)
        if filter is None or filter(g):
            yield g
