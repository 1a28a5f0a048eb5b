"""Pure-Python retrograde solver kernel.

Semantics are identical to the compiled kernel in ``_core.pyx``; this module
is the import-time fallback and the reference for parity tests.

State layout: cop positions form a sorted multiset ranked in colexicographic
order (rank(c) = sum_t C(c_t + t, t + 1)); a side-local state index is
``mrank * n + robber``. The kernel runs a backward attractor with per-state
escape counters and FIFO (breadth-first) marking, so the recorded layer of a
state is its distance-to-capture rank.
"""

from __future__ import annotations

from math import comb

import numpy as np

BACKEND = "python"


def _binom_table(n: int, k: int) -> list[list[int]]:
    # binom[d][t] = C(d, t) for 0 <= d <= n + k, 0 <= t <= k
    table = [[0] * (k + 1) for _ in range(n + k + 1)]
    for d in range(n + k + 1):
        table[d][0] = 1
        for t in range(1, min(d, k) + 1):
            table[d][t] = comb(d, t)
    return table


def solve_game(n: int, k: int, closed_nbrs: list[list[int]]) -> dict:
    """Solve the k-cop pursuit game on an n-vertex graph.

    ``closed_nbrs[v]`` must be the sorted closed neighborhood of v. Returns
    win/rank arrays for both sides, indexed by ``mrank * n + robber``.
    A state with the robber on a cop vertex is winning at rank 0; a
    cop-to-move state is winning when some simultaneous cop move reaches a
    winning robber-to-move state; a robber-to-move state is winning when
    every robber move reaches a winning cop-to-move state.
    """
    binom = _binom_table(n, k)
    M = binom[n + k - 1][k]
    S = M * n
    win_c = bytearray(S)
    win_r = bytearray(S)
    rank_c = np.full(S, -1, dtype=np.int32)
    rank_r = np.full(S, -1, dtype=np.int32)
    esc = np.zeros(S, dtype=np.int32)
    queue: list[int] = []  # entries: idx * 2 + side, side 0 = cop to move

    deg1 = [len(closed_nbrs[v]) for v in range(n)]

    # enumerate multisets in colex order with an odometer
    cops = [0] * k
    for m in range(M):
        base = m * n
        prev = -1
        for c in cops:
            if c != prev:
                idx = base + c
                win_c[idx] = 1
                win_r[idx] = 1
                rank_c[idx] = 0
                rank_r[idx] = 0
                queue.append(idx * 2)
                queue.append(idx * 2 + 1)
                prev = c
        cop_mask = 0
        for c in cops:
            cop_mask |= 1 << c
        for r in range(n):
            if not cop_mask >> r & 1:
                esc[base + r] = deg1[r]
        # next multiset
        t = 0
        while t < k - 1 and cops[t] == cops[t + 1]:
            t += 1
        if m + 1 < M:
            cops[t] += 1
            for i in range(t):
                cops[i] = 0

    def unrank(m: int) -> list[int]:
        out = [0] * k
        rem = m
        d = n + k - 1
        for t in range(k - 1, -1, -1):
            while binom[d][t + 1] > rem:
                d -= 1
            rem -= binom[d][t + 1]
            out[t] = d - t
        return out

    def rank_of(sorted_cops: list[int]) -> int:
        r = 0
        for t, c in enumerate(sorted_cops):
            r += binom[c + t][t + 1]
        return r

    head = 0
    while head < len(queue):
        entry = queue[head]
        head += 1
        idx = entry >> 1
        m, r = divmod(idx, n)
        if entry & 1:
            # robber-to-move state became winning: mark all cop-to-move
            # predecessors (every multiset that can move onto this one)
            layer = int(rank_r[idx]) + 1
            cur = unrank(m)
            nbrs = [closed_nbrs[c] for c in cur]
            pos = [0] * k
            targets = [nb[0] for nb in nbrs]
            while True:
                srt = sorted(targets)
                j = rank_of(srt) * n + r
                if not win_c[j]:
                    win_c[j] = 1
                    rank_c[j] = layer
                    queue.append(j * 2)
                t = 0
                while t < k:
                    pos[t] += 1
                    if pos[t] < len(nbrs[t]):
                        targets[t] = nbrs[t][pos[t]]
                        break
                    pos[t] = 0
                    targets[t] = nbrs[t][0]
                    t += 1
                if t == k:
                    break
        else:
            # cop-to-move state became winning: one fewer escape for each
            # robber-to-move state that can move onto it
            base = m * n
            layer = int(rank_c[idx]) + 1
            for r2 in closed_nbrs[r]:
                j = base + r2
                if win_r[j]:
                    continue
                esc[j] -= 1
                if esc[j] == 0:
                    win_r[j] = 1
                    rank_r[j] = layer
                    queue.append(j * 2 + 1)

    return {
        "M": M,
        "win_c": np.frombuffer(bytes(win_c), dtype=np.uint8),
        "win_r": np.frombuffer(bytes(win_r), dtype=np.uint8),
        "rank_c": rank_c,
        "rank_r": rank_r,
    }
