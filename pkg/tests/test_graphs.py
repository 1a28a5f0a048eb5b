import random

import pytest

from coplab.errors import CapacityError, Graph6Error, ParameterError
from coplab.graphs import (
    Graph,
    bits,
    complement,
    disjoint_union,
    edges_between,
    enumerate_labeled_graphs,
    from_edges,
    induced_subgraph,
    make_family,
    mask_of,
    parse_graph6,
    petersen,
    read_graph6_stream,
    shrikhande,
    to_graph6,
)
from conftest import random_graph


def test_families():
    c4 = make_family("cycle", 4)
    assert c4.n == 4 and c4.edge_count() == 4
    assert all(c4.degree(v) == 2 for v in range(4))
    assert c4.has_edge(3, 0)
    k1 = make_family("complete", 1)
    assert k1.n == 1 and k1.edge_count() == 0
    assert make_family("path", 2).edge_count() == 1
    p5 = make_family("path", 5)
    assert [p5.degree(v) for v in range(5)] == [1, 2, 2, 2, 1]
    assert make_family("empty", 4).edge_count() == 0
    with pytest.raises(ParameterError):
        make_family("cycle", 2)
    with pytest.raises(ParameterError):
        make_family("path", 0)
    with pytest.raises(ParameterError):
        make_family("wheel", 5)


def test_graph_validation():
    with pytest.raises(ParameterError):
        Graph(2, [0b10, 0b00])  # asymmetric
    with pytest.raises(ParameterError):
        Graph(1, [0b1])  # loop
    with pytest.raises(CapacityError):
        Graph(5000, [0] * 5000)
    with pytest.raises(ParameterError):
        from_edges(3, [(0, 0)])


def test_graph_immutable_and_hashable():
    g = make_family("cycle", 4)
    with pytest.raises(AttributeError):
        g.n = 5
    assert hash(g) == hash(make_family("cycle", 4))
    assert len({g, make_family("cycle", 4), make_family("path", 4)}) == 2


def test_complement_involution_and_degrees(rng):
    for _ in range(50):
        g = random_graph(rng, rng.randint(0, 12))
        cg = complement(g)
        assert complement(cg) == g
        for v in range(g.n):
            assert cg.degree(v) == g.n - 1 - g.degree(v)
    assert complement(make_family("complete", 6)) == make_family("empty", 6)
    # the 4-cycle's complement is a perfect matching
    cc4 = complement(make_family("cycle", 4))
    assert cc4.edge_count() == 2 and all(cc4.degree(v) == 1 for v in range(4))


def test_disjoint_union():
    u = disjoint_union(make_family("complete", 1), make_family("complete", 1))
    assert u.n == 2 and u.edge_count() == 0
    u = disjoint_union(make_family("complete", 2), make_family("complete", 2))
    assert u.n == 4 and u.edge_count() == 2 and not u.is_connected()
    g = make_family("cycle", 5)
    assert disjoint_union(g, Graph(0, [])) == g


def test_induced_subgraph(rng):
    g = make_family("cycle", 5)
    assert induced_subgraph(g, g.vertex_mask()) == g
    p4 = induced_subgraph(g, mask_of([0, 1, 2, 3]))
    assert p4 == make_family("path", 4)
    for _ in range(30):
        g = random_graph(rng, rng.randint(1, 10))
        s = rng.getrandbits(g.n)
        sub = induced_subgraph(g, s)
        verts = list(bits(s))
        assert sub.n == len(verts)
        for a, va in enumerate(verts):
            for b, vb in enumerate(verts):
                assert sub.has_edge(a, b) == g.has_edge(va, vb) if a != b else True


def test_edges_between(rng):
    for _ in range(40):
        g = random_graph(rng, rng.randint(2, 12))
        s = rng.getrandbits(g.n)
        t = rng.getrandbits(g.n) & ~s
        naive = sum(
            1 for u in bits(s) for v in bits(t) if g.has_edge(u, v)
        )
        assert edges_between(g, s, t) == naive
    with pytest.raises(ParameterError):
        edges_between(make_family("complete", 3), 0b11, 0b110)


def test_shrikhande_structure():
    s = shrikhande()
    assert s.n == 16 and s.edge_count() == 48
    assert all(s.degree(v) == 6 for v in range(16))
    for u in range(16):
        for v in range(u + 1, 16):
            assert (s.adj[u] & s.adj[v]).bit_count() == 2


def test_petersen_structure():
    p = petersen()
    assert p.n == 10 and p.edge_count() == 15
    assert all(p.degree(v) == 3 for v in range(10))
    # girth 5: no triangles, no 4-cycles
    for u in range(10):
        for v in range(u + 1, 10):
            common = (p.adj[u] & p.adj[v]).bit_count()
            assert common <= 1


def test_graph6_basics():
    assert to_graph6(make_family("complete", 1)) == b"@"
    assert parse_graph6(b"@").n == 1
    c4 = make_family("cycle", 4)
    assert parse_graph6(to_graph6(c4)) == c4
    # optional header accepted
    assert parse_graph6(b">>graph6<<@") == make_family("complete", 1)


def test_graph6_roundtrip_random(rng):
    for _ in range(1000):
        g = random_graph(rng, rng.randint(0, 32))
        assert parse_graph6(to_graph6(g)) == g


def test_graph6_long_form(rng):
    for n in (63, 100, 200):
        g = random_graph(rng, n)
        data = to_graph6(g)
        assert data[0] == 126
        assert parse_graph6(data) == g


def test_graph6_errors():
    with pytest.raises(Graph6Error):
        parse_graph6(b"")
    with pytest.raises(Graph6Error) as ei:
        parse_graph6(to_graph6(make_family("cycle", 10))[:-1])  # truncated
    assert ei.value.offset is not None
    with pytest.raises(Graph6Error):
        parse_graph6(b"\x1f")  # out of range byte
    # nonzero padding bits: P3 uses 3 of the last byte's 6 bits
    good = bytearray(to_graph6(make_family("path", 3)))
    good[-1] = ((good[-1] - 63) | 1) + 63
    with pytest.raises(Graph6Error):
        parse_graph6(bytes(good))
    with pytest.raises(Graph6Error):
        parse_graph6(to_graph6(make_family("path", 3)) + b"!")


def test_graph6_stream():
    gs = [make_family("cycle", 4), make_family("path", 3)]
    text = b"\n".join(to_graph6(g) for g in gs) + b"\n\n"
    assert list(read_graph6_stream(text.splitlines())) == gs


def test_enumeration_counts():
    assert sum(1 for _ in enumerate_labeled_graphs(3)) == 8
    assert sum(1 for _ in enumerate_labeled_graphs(6, lambda g: False)) == 0
    assert sum(1 for _ in enumerate_labeled_graphs(4, lambda g: g.is_connected())) == 38
    with pytest.raises(CapacityError):
        next(enumerate_labeled_graphs(8))


def test_enumeration_n6_count():
    assert sum(1 for _ in enumerate_labeled_graphs(6)) == 32768


def test_connectivity_and_bfs():
    g = disjoint_union(make_family("complete", 2), make_family("complete", 3))
    assert not g.is_connected()
    p = make_family("path", 6)
    assert p.bfs_dist(0) == [0, 1, 2, 3, 4, 5]
    assert p.diameter() == 5
