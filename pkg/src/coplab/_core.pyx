# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled retrograde solver kernel.

Mirrors coplab._core_py.solve_game exactly (see that module for the state
layout and marking rules); parity between the two backends is enforced by
tests/test_kernel_parity.py.
"""

import numpy as np

cimport numpy as cnp
from libc.stdlib cimport free, malloc

cnp.import_array()

BACKEND = "cython"


DEF BINOM_SAT = 4000000000000000000  # entries above any usable rank saturate

def solve_game(int n, int k, closed_nbrs):
    cdef long long i, d, t, M, S, acc
    # binom[d * (k + 1) + t] = C(d, t), saturated at BINOM_SAT: every entry a
    # rank computation can use is at most the state gate, while mid-table
    # values scanned during unranking may exceed int64 for extreme k; the
    # saturation keeps those comparisons correct without overflow
    cdef long long nbk = n + k + 1
    cdef long long *binom = <long long *> malloc(nbk * (k + 1) * sizeof(long long))
    if binom == NULL:
        raise MemoryError()
    for d in range(nbk):
        binom[d * (k + 1)] = 1
        for t in range(1, k + 1):
            if t > d:
                binom[d * (k + 1) + t] = 0
            elif t == d:
                binom[d * (k + 1) + t] = 1
            else:
                acc = binom[(d - 1) * (k + 1) + t - 1] + binom[(d - 1) * (k + 1) + t]
                if acc > BINOM_SAT:
                    acc = BINOM_SAT
                binom[d * (k + 1) + t] = acc

    M = binom[(n + k - 1) * (k + 1) + k]
    S = M * n

    # flatten closed neighborhoods
    cdef cnp.ndarray[cnp.int32_t, ndim=1] off_arr = np.zeros(n + 1, dtype=np.int32)
    total = 0
    for v in range(n):
        total += len(closed_nbrs[v])
        off_arr[v + 1] = total
    cdef cnp.ndarray[cnp.int32_t, ndim=1] flat_arr = np.empty(total, dtype=np.int32)
    pos0 = 0
    for v in range(n):
        for u in closed_nbrs[v]:
            flat_arr[pos0] = u
            pos0 += 1
    cdef cnp.int32_t *flat = <cnp.int32_t *> flat_arr.data
    cdef cnp.int32_t *off = <cnp.int32_t *> off_arr.data

    cdef cnp.ndarray[cnp.uint8_t, ndim=1] win_c_arr = np.zeros(S, dtype=np.uint8)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] win_r_arr = np.zeros(S, dtype=np.uint8)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] rank_c_arr = np.full(S, -1, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] rank_r_arr = np.full(S, -1, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] esc_arr = np.zeros(S, dtype=np.int32)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] queue_arr = np.empty(2 * S, dtype=np.int64)
    cdef cnp.uint8_t *win_c = <cnp.uint8_t *> win_c_arr.data
    cdef cnp.uint8_t *win_r = <cnp.uint8_t *> win_r_arr.data
    cdef cnp.int32_t *rank_c = <cnp.int32_t *> rank_c_arr.data
    cdef cnp.int32_t *rank_r = <cnp.int32_t *> rank_r_arr.data
    cdef cnp.int32_t *esc = <cnp.int32_t *> esc_arr.data
    cdef cnp.int64_t *queue = <cnp.int64_t *> queue_arr.data

    cdef long long head = 0, tail = 0
    cdef long long m, base, idx, j, entry, layer, m2
    cdef int r, r2, c, prev, v2, q, hi
    cdef int *cops = <int *> malloc(k * sizeof(int))
    cdef int *cur = <int *> malloc(k * sizeof(int))
    cdef int *tpos = <int *> malloc(k * sizeof(int))
    cdef int *targets = <int *> malloc(k * sizeof(int))
    cdef int *srt = <int *> malloc(k * sizeof(int))
    cdef cnp.uint8_t *on_cop = <cnp.uint8_t *> malloc(n * sizeof(cnp.uint8_t))
    if cops == NULL or cur == NULL or tpos == NULL or targets == NULL or srt == NULL or on_cop == NULL:
        free(binom); free(cops); free(cur); free(tpos); free(targets); free(srt); free(on_cop)
        raise MemoryError()

    # initialization: terminal states and escape counters, colex odometer
    for i in range(k):
        cops[i] = 0
    for v in range(n):
        on_cop[v] = 0
    for m in range(M):
        base = m * n
        prev = -1
        for i in range(k):
            c = cops[i]
            on_cop[c] = 1
            if c != prev:
                idx = base + c
                win_c[idx] = 1
                win_r[idx] = 1
                rank_c[idx] = 0
                rank_r[idx] = 0
                queue[tail] = idx * 2; tail += 1
                queue[tail] = idx * 2 + 1; tail += 1
                prev = c
        for r in range(n):
            if not on_cop[r]:
                esc[base + r] = off[r + 1] - off[r]
        for i in range(k):
            on_cop[cops[i]] = 0
        t = 0
        while t < k - 1 and cops[t] == cops[t + 1]:
            t += 1
        if m + 1 < M:
            cops[t] += 1
            for i in range(t):
                cops[i] = 0

    cdef long long rem
    while head < tail:
        entry = queue[head]
        head += 1
        idx = entry >> 1
        m = idx / n
        r = <int> (idx - m * n)
        if entry & 1:
            layer = rank_r[idx] + 1
            # unrank multiset m into cur[]
            rem = m
            d = n + k - 1
            for t in range(k - 1, -1, -1):
                while binom[d * (k + 1) + t + 1] > rem:
                    d -= 1
                rem -= binom[d * (k + 1) + t + 1]
                cur[t] = <int> (d - t)
            # product over closed neighborhoods of cur
            for t in range(k):
                tpos[t] = 0
                targets[t] = flat[off[cur[t]]]
            while True:
                for t in range(k):
                    srt[t] = targets[t]
                # insertion sort, k is small
                for t in range(1, k):
                    v2 = srt[t]
                    q = t - 1
                    while q >= 0 and srt[q] > v2:
                        srt[q + 1] = srt[q]
                        q -= 1
                    srt[q + 1] = v2
                m2 = 0
                for t in range(k):
                    m2 += binom[(srt[t] + t) * (k + 1) + t + 1]
                j = m2 * n + r
                if not win_c[j]:
                    win_c[j] = 1
                    rank_c[j] = <cnp.int32_t> layer
                    queue[tail] = j * 2; tail += 1
                t = 0
                while t < k:
                    tpos[t] += 1
                    if off[cur[t]] + tpos[t] < off[cur[t] + 1]:
                        targets[t] = flat[off[cur[t]] + tpos[t]]
                        break
                    tpos[t] = 0
                    targets[t] = flat[off[cur[t]]]
                    t += 1
                if t == k:
                    break
        else:
            base = m * n
            layer = rank_c[idx] + 1
            for hi in range(off[r], off[r + 1]):
                r2 = flat[hi]
                j = base + r2
                if win_r[j]:
                    continue
                esc[j] -= 1
                if esc[j] == 0:
                    win_r[j] = 1
                    rank_r[j] = <cnp.int32_t> layer
                    queue[tail] = j * 2 + 1; tail += 1

    free(binom); free(cops); free(cur); free(tpos); free(targets); free(srt); free(on_cop)
    return {
        "M": int(M),
        "win_c": win_c_arr,
        "win_r": win_r_arr,
        "rank_c": rank_c_arr,
        "rank_r": rank_r_arr,
    }
