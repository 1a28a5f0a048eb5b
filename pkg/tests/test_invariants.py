import random
from itertools import combinations

import pytest

from coplab.errors import CapacityError, PreconditionError
from coplab.graphs import (
    bits,
    complement,
    make_family,
    mask_of,
    petersen,
    shrikhande,
)
from coplab.invariants import (
    CliquePartition,
    chromatic_number,
    clique_cover_number,
    clique_number,
    clique_pairs_connected,
    has_induced_cycle,
    independence_number,
    induced_cycle_spectrum,
    induces_cycle,
    invariant_report,
    is_clique,
    is_dismantlable,
    is_independent_set,
    is_proper_coloring,
)
from conftest import random_graph


def alpha_brute(g):
    for r in range(g.n, 0, -1):
        for sub in combinations(range(g.n), r):
            if all(not g.has_edge(u, v) for u, v in combinations(sub, 2)):
                return r
    return 0


def chi_brute(g):
    if g.n == 0:
        return 0

    def colorable(k):
        cols = [-1] * g.n

        def rec(i):
            if i == g.n:
                return True
            for c in range(k):
                if all(cols[u] != c for u in bits(g.adj[i] & ((1 << i) - 1))):
                    cols[i] = c
                    if rec(i + 1):
                        return True
            cols[i] = -1
            return False

        return rec(0)

    for k in range(1, g.n + 1):
        if colorable(k):
            return k
    return g.n


def test_alpha_against_brute(rng):
    for _ in range(120):
        g = random_graph(rng, rng.randint(0, 8))
        a, wit = independence_number(g)
        assert a == alpha_brute(g)
        assert wit.bit_count() == a and is_independent_set(g, wit)


def test_alpha_examples():
    assert independence_number(complement(shrikhande()))[0] == 3
    for t in range(1, 8):
        assert independence_number(make_family("complete", t))[0] == 1
    assert independence_number(make_family("cycle", 4))[0] == 2
    assert independence_number(petersen())[0] == 4


def test_clique_number(rng):
    assert clique_number(shrikhande())[0] == 3
    assert clique_number(make_family("cycle", 5))[0] == 2
    assert clique_number(make_family("complete", 6))[0] == 6
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 8))
        w, wit = clique_number(g)
        assert w == alpha_brute(complement(g))
        assert is_clique(g, wit)


def test_chromatic_against_brute(rng):
    for _ in range(80):
        g = random_graph(rng, rng.randint(0, 8))
        k, cols = chromatic_number(g)
        assert k == chi_brute(g)
        if g.n:
            assert is_proper_coloring(g, cols) and max(cols) + 1 == k


def test_chromatic_examples():
    assert chromatic_number(shrikhande())[0] == 4
    assert chromatic_number(make_family("cycle", 4))[0] == 2
    assert chromatic_number(make_family("complete", 5))[0] == 5
    assert chromatic_number(make_family("cycle", 7))[0] == 3


def test_clique_cover(rng):
    assert clique_cover_number(complement(shrikhande()))[0] == 4
    assert clique_cover_number(make_family("cycle", 4))[0] == 2
    for t in range(1, 7):
        assert clique_cover_number(make_family("empty", t))[0] == t
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 8))
        th, cover = clique_cover_number(g)
        assert th == chi_brute(complement(g))
        cover.validate(g)


def test_duality_sweep(rng):
    for _ in range(500):
        g = random_graph(rng, rng.randint(1, 14))
        a = independence_number(g)[0]
        assert a == clique_number(complement(g))[0]
        th = clique_cover_number(g)[0]
        assert th == chromatic_number(complement(g))[0]
        assert a <= th
        assert clique_number(g)[0] <= chromatic_number(g)[0]


def test_deletion_monotonicity(rng):
    from coplab.graphs import induced_subgraph

    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 9))
        rep = invariant_report(g)
        v = rng.randrange(g.n)
        h = induced_subgraph(g, g.vertex_mask() ^ (1 << v))
        rep2 = invariant_report(h)
        assert rep2.alpha <= rep.alpha and rep2.omega <= rep.omega
        assert rep2.chi <= rep.chi and rep2.theta <= rep.theta
        assert rep2.chi >= rep.chi - 1


def test_capacity_gates():
    big = make_family("empty", 129)
    with pytest.raises(CapacityError):
        independence_number(big)
    with pytest.raises(CapacityError):
        chromatic_number(make_family("empty", 65))


def test_induced_cycle_examples():
    c7 = make_family("cycle", 7)
    assert has_induced_cycle(c7, 7) == (1 << 7) - 1
    for t in range(3, 7):
        assert has_induced_cycle(c7, t) is None
    k4 = make_family("complete", 4)
    assert has_induced_cycle(k4, 3) is not None
    assert has_induced_cycle(k4, 4) is None
    assert induced_cycle_spectrum(make_family("cycle", 4), 4) == {4}
    assert induced_cycle_spectrum(make_family("path", 5), 5) == set()
    assert induced_cycle_spectrum(petersen(), 10) == {5, 6}


def test_induced_cycle_against_subsets(rng):
    for _ in range(150):
        g = random_graph(rng, rng.randint(3, 7))
        for t in range(3, g.n + 1):
            wit = has_induced_cycle(g, t)
            brute = any(
                induces_cycle(g, mask_of(sub)) for sub in combinations(range(g.n), t)
            )
            assert (wit is not None) == brute
            if wit is not None:
                assert wit.bit_count() == t and induces_cycle(g, wit)


def test_induced_cycle_deterministic(rng):
    for _ in range(20):
        g = random_graph(rng, 8)
        assert has_induced_cycle(g, 4) == has_induced_cycle(g, 4)


def test_shrikhande_complement_c4_agrees_with_subsets():
    g = complement(shrikhande())
    wit = has_induced_cycle(g, 4)
    brute = any(induces_cycle(g, mask_of(s)) for s in combinations(range(16), 4))
    assert (wit is not None) == brute
    if wit is not None:
        from coplab.graphs import induced_subgraph

        assert induced_subgraph(g, wit) == make_family("cycle", 4)


def test_shrikhande_complement_spectrum_agrees_with_subsets():
    g = complement(shrikhande())
    brute = {
        t
        for t in range(3, 6)
        if any(induces_cycle(g, mask_of(s)) for s in combinations(range(16), t))
    }
    assert induced_cycle_spectrum(g, 5) == brute


def test_dismantlable():
    for t in range(1, 33):
        ok, order = is_dismantlable(make_family("path", t))
        assert ok and len(order) == t - 1
    assert not is_dismantlable(make_family("cycle", 4))[0]
    assert not is_dismantlable(make_family("cycle", 5))[0]
    for t in range(1, 8):
        assert is_dismantlable(make_family("complete", t))[0]
    with pytest.raises(PreconditionError):
        is_dismantlable(make_family("empty", 3))
    # no corner in C4: check all ordered pairs directly
    c4 = make_family("cycle", 4)
    for u in range(4):
        for v in range(4):
            if u != v:
                assert c4.closed(u) & ~c4.closed(v)


def test_clique_pairs_connected():
    c4 = make_family("cycle", 4)
    cover = CliquePartition((mask_of([0, 1]), mask_of([2, 3])))
    assert clique_pairs_connected(c4, cover) == (True, None)
    from coplab.graphs import disjoint_union

    g = disjoint_union(make_family("complete", 2), make_family("complete", 2))
    cover2 = CliquePartition((mask_of([0, 1]), mask_of([2, 3])))
    ok, pair = clique_pairs_connected(g, cover2)
    assert not ok and pair == (0, 1)
    with pytest.raises(PreconditionError):
        clique_pairs_connected(c4, CliquePartition((mask_of([0, 2]), mask_of([1, 3]))))


def test_ramsey_finite_form():
    from coplab.graphs import enumerate_labeled_graphs

    bad = 0
    for g in enumerate_labeled_graphs(6):
        if has_induced_cycle(g, 3) is None and independence_number(g)[0] <= 2:
            bad += 1
    assert bad == 0
    c5 = make_family("cycle", 5)
    assert has_induced_cycle(c5, 3) is None and independence_number(c5)[0] == 2
