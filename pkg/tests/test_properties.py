"""Hypothesis property tests for the algebraic contracts."""

from hypothesis import given, settings
from hypothesis import strategies as st

from coplab.graphs import (
    bits,
    complement,
    disjoint_union,
    graph_from_edge_mask,
    induced_subgraph,
    parse_graph6,
    to_graph6,
)


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(min_value=0, max_value=max_n))
    mask = draw(st.integers(min_value=0, max_value=(1 << (n * (n - 1) // 2)) - 1))
    return graph_from_edge_mask(n, mask)


@given(graphs(max_n=20))
def test_graph6_roundtrip(g):
    assert parse_graph6(to_graph6(g)) == g


@given(graphs())
def test_complement_involution(g):
    assert complement(complement(g)) == g


@given(graphs())
def test_complement_degree(g):
    cg = complement(g)
    for v in range(g.n):
        assert g.degree(v) + cg.degree(v) == g.n - 1


@given(graphs(max_n=10), graphs(max_n=10))
def test_union_counts(g, h):
    u = disjoint_union(g, h)
    assert u.n == g.n + h.n
    assert u.edge_count() == g.edge_count() + h.edge_count()


@given(graphs())
def test_induced_full_is_identity(g):
    assert induced_subgraph(g, g.vertex_mask()) == g


@given(graphs(max_n=10), st.integers(min_value=0))
def test_induced_subgraph_edges(g, seed):
    s = seed % (1 << g.n) if g.n else 0
    sub = induced_subgraph(g, s)
    verts = list(bits(s))
    for a in range(sub.n):
        for b in range(a + 1, sub.n):
            assert sub.has_edge(a, b) == g.has_edge(verts[a], verts[b])


@settings(max_examples=40)
@given(graphs(max_n=8))
def test_alpha_omega_duality(g):
    from coplab.invariants import clique_number, independence_number

    assert independence_number(g)[0] == clique_number(complement(g))[0]


@settings(max_examples=25)
@given(graphs(max_n=7))
def test_witnesses_check_out(g):
    from coplab.invariants import (
        chromatic_number,
        independence_number,
        is_independent_set,
        is_proper_coloring,
    )

    a, wit = independence_number(g)
    assert is_independent_set(g, wit) and wit.bit_count() == a
    if g.n:
        k, cols = chromatic_number(g)
        assert is_proper_coloring(g, cols)
