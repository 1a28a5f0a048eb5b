import random
from itertools import combinations_with_replacement, product
from math import comb

import pytest

from coplab.errors import (
    CapacityError,
    NoStrategyError,
    PreconditionError,
    StrategyFaultError,
)
from coplab.graphs import bits, complement, make_family, petersen, shrikhande
from coplab.solver import (
    GameState,
    Transcript,
    cop_number,
    cops_win,
    multiset_rank,
    multiset_unrank,
    optimal_cop_strategy,
    optimal_robber_strategy,
    play,
    state_count,
    state_index,
    state_unindex,
    verify_transcript,
)
from conftest import random_graph


def naive_solve(g, k):
    """Independent oracle: iterate the win recurrence to a fixed point over
    explicit dictionaries."""
    closed = [sorted(bits(g.closed(v))) for v in range(g.n)]
    csets = list(combinations_with_replacement(range(g.n), k))
    win_c = {(C, r): r in C for C in csets for r in range(g.n)}
    win_r = dict(win_c)
    changed = True
    while changed:
        changed = False
        for C in csets:
            succs = {tuple(sorted(t)) for t in product(*[closed[c] for c in C])}
            for r in range(g.n):
                if not win_c[(C, r)] and any(win_r[(C2, r)] for C2 in succs):
                    win_c[(C, r)] = True
                    changed = True
                if not win_r[(C, r)] and all(win_c[(C, r2)] for r2 in closed[r]):
                    win_r[(C, r)] = True
                    changed = True
    return win_c, win_r


def test_ranking_bijection(rng):
    for n, k in [(1, 1), (4, 2), (5, 3), (7, 2)]:
        M = comb(n + k - 1, k)
        seen = set()
        for cops in combinations_with_replacement(range(n), k):
            m = multiset_rank(cops)
            assert 0 <= m < M
            assert multiset_unrank(m, n, k) == cops
            seen.add(m)
        assert len(seen) == M
        # full state index bijection
        idxs = {
            state_index(GameState(c, r, t), n)
            for c in combinations_with_replacement(range(n), k)
            for r in range(n)
            for t in (True, False)
        }
        assert idxs == set(range(state_count(n, k)))
        gs = GameState((2 % n, 0), 0, False)
        assert state_unindex(state_index(gs, n), n, 2) == gs.canonical()


def test_against_naive_oracle(rng):
    done = 0
    for _ in range(80):
        g = random_graph(rng, rng.randint(1, 5))
        if not g.is_connected():
            continue
        for k in (1, 2):
            won, table = cops_win(g, k)
            wc, wr = naive_solve(g, k)
            assert won == any(
                all(wc[(C, r)] for r in range(g.n)) for C in {c for c, _ in wc}
            )
            for (C, r), v in wc.items():
                assert table.winning(C, r, cop_to_move=True) == v
            for (C, r), v in wr.items():
                assert table.winning(C, r, cop_to_move=False) == v
            done += 1
    assert done >= 60


def test_base_examples():
    c4 = make_family("cycle", 4)
    assert cops_win(c4, 1)[0] is False
    assert cops_win(c4, 2)[0] is True
    assert cop_number(c4) == 2
    assert cop_number(make_family("complete", 1)) == 1
    for t in range(1, 21):
        assert cop_number(make_family("path", t)) == 1
    assert cop_number(make_family("cycle", 5)) == 2


def test_all_cops_win():
    for t in (1, 2, 4):
        g = make_family("cycle", max(t, 3)) if t >= 3 else make_family("complete", t)
        assert cops_win(g, g.n)[0] is True


def test_petersen():
    p = petersen()
    assert cops_win(p, 2)[0] is False
    assert cops_win(p, 3)[0] is True
    assert cop_number(p) == 3


def test_shrikhande_complement_cop_number():
    g = complement(shrikhande())
    assert cop_number(g) == 3


def test_preconditions_and_capacity():
    from coplab.graphs import disjoint_union

    g = disjoint_union(make_family("complete", 2), make_family("complete", 2))
    with pytest.raises(PreconditionError):
        cops_win(g, 1)
    with pytest.raises(CapacityError):
        cops_win(make_family("cycle", 20), 2, max_states=100)
    with pytest.raises(CapacityError) as ei:
        cop_number(make_family("cycle", 20), max_states=500)
    assert "undecided" in str(ei.value)


def test_monotonicity_in_k(rng):
    for _ in range(25):
        g = random_graph(rng, rng.randint(2, 6))
        if not g.is_connected():
            continue
        prev = False
        for k in (1, 2, 3):
            won = cops_win(g, k)[0]
            assert won or not prev
            prev = won


def test_k1_equals_dismantlable(rng):
    from coplab.invariants import is_dismantlable

    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 6))
        if not g.is_connected():
            continue
        assert cops_win(g, 1)[0] == is_dismantlable(g)[0]


def test_fixed_point_idempotence(rng):
    seen = 0
    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 7))
        if not g.is_connected():
            continue
        for k in (1, 2, 3):
            if comb(g.n + k - 1, k) * g.n > 20000:
                continue
            _, table = cops_win(g, k)
            assert table.recurrence_violations() == 0
            seen += 1
    assert seen >= 20


def test_sandwich(rng):
    from coplab.invariants import clique_cover_number, independence_number

    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 8))
        if not g.is_connected():
            continue
        c = cop_number(g)
        a = independence_number(g)[0]
        th = clique_cover_number(g)[0]
        assert c <= a <= th


class FixedStartRobber:
    side = "robber"

    def __init__(self, inner, start):
        self.inner = inner
        self.start = start

    def place(self, cops):
        return self.start

    def move(self, cops, robber):
        return self.inner.move(cops, robber)


def test_c4_capture_within_three_rounds():
    c4 = make_family("cycle", 4)
    won, table = cops_win(c4, 2)
    assert won
    cops = optimal_cop_strategy(c4, 2, table=table)
    inner = optimal_robber_strategy(c4, 2, table=table, allow_losing=True)
    for r0 in range(4):
        if r0 in cops.place():
            continue
        tr = play(c4, cops, FixedStartRobber(inner, r0), 50)
        assert tr.outcome == "capture" and tr.rounds <= 3
        assert verify_transcript(c4, tr)


def test_c4_one_cop_evasion():
    c4 = make_family("cycle", 4)
    _, table = cops_win(c4, 1)
    rob = optimal_robber_strategy(c4, 1, table=table)

    class Chaser:
        side = "cop"

        def __init__(self, seed):
            self.rng = random.Random(seed)

        def place(self):
            return (self.rng.randrange(4),)

        def move(self, cops, robber):
            options = sorted(bits(c4.closed(cops[0])))
            if robber in options:
                return (robber,)
            return (self.rng.choice(options),)

    for seed in range(10):
        tr = play(c4, Chaser(seed), rob, 1000)
        assert tr.outcome == "evasion"


def test_optimal_vs_optimal():
    c4 = make_family("cycle", 4)
    _, t2 = cops_win(c4, 2)
    tr = play(
        c4,
        optimal_cop_strategy(c4, 2, table=t2),
        optimal_robber_strategy(c4, 2, table=t2, allow_losing=True),
        50,
    )
    assert tr.outcome == "capture"
    _, t1 = cops_win(c4, 1)
    tr = play(
        c4,
        optimal_cop_strategy(c4, 1, table=t1),
        optimal_robber_strategy(c4, 1, table=t1),
        1000,
    )
    assert tr.outcome == "evasion"
    k1 = make_family("complete", 1)
    _, tk = cops_win(k1, 1)
    tr = play(
        k1,
        optimal_cop_strategy(k1, 1, table=tk),
        optimal_robber_strategy(k1, 1, table=tk, allow_losing=True),
        5,
    )
    assert tr.outcome == "capture" and tr.rounds == 0


def test_complete_graph_round_one():
    for t in range(2, 7):
        kt = make_family("complete", t)
        _, table = cops_win(kt, 1)
        tr = play(
            kt,
            optimal_cop_strategy(kt, 1, table=table),
            optimal_robber_strategy(kt, 1, table=table, allow_losing=True),
            5,
        )
        assert tr.outcome == "capture" and tr.rounds <= 1


def test_no_strategy_error():
    with pytest.raises(NoStrategyError):
        optimal_robber_strategy(make_family("complete", 4), 1)
    optimal_robber_strategy(make_family("complete", 4), 1, allow_losing=True)


def test_strategy_capture_bound(rng):
    done = 0
    for _ in range(40):
        g = random_graph(rng, rng.randint(2, 7))
        if not g.is_connected():
            continue
        for k in (1, 2):
            won, table = cops_win(g, k)
            bound = comb(g.n + k - 1, k) * g.n
            cops = optimal_cop_strategy(g, k, table=table)
            rob = optimal_robber_strategy(g, k, table=table, allow_losing=True)
            tr = play(g, cops, rob, bound + 1)
            assert verify_transcript(g, tr)
            assert (tr.outcome == "capture") == won
            done += 1
    assert done >= 30


def test_strategy_fault():
    c4 = make_family("cycle", 4)

    class Teleporter:
        side = "cop"

        def place(self):
            return (0,)

        def move(self, cops, robber):
            return (2,)  # 0 -> 2 is not an edge of the 4-cycle

    _, t1 = cops_win(c4, 1)
    rob = optimal_robber_strategy(c4, 1, table=t1)
    with pytest.raises(StrategyFaultError) as ei:
        play(c4, Teleporter(), rob, 5)
    assert "cop" in str(ei.value)


def test_transcript_json_roundtrip():
    c4 = make_family("cycle", 4)
    _, t2 = cops_win(c4, 2)
    tr = play(
        c4,
        optimal_cop_strategy(c4, 2, table=t2),
        optimal_robber_strategy(c4, 2, table=t2, allow_losing=True),
        50,
    )
    tr2 = Transcript.from_json(tr.to_json())
    assert tr2 == tr
    assert verify_transcript(c4, tr2)
    bad = Transcript(tr.cop_start, tr.robber_start, tr.moves, "evasion", None, tr.round_limit)
    assert not verify_transcript(c4, bad)
