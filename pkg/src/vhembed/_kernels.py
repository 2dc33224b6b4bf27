"""Compiled inner loops: greedy bipartite restarts and exchange scoring.

Hot loops are written out by hand rather than split into helpers taking
arrays: every such call pays reference-count traffic on each array
argument, which costs more than the loop body itself.
"""

import numpy as np
from numba import njit

_BIG = 1 << 30


@njit(cache=True)
def fast_score(vslot, hslot, eu, ew, L, lo_v, hi_v, lo_h, hi_h):
    """Qubit score of the fast (lexicographic) evaluation; -1 if unrepresentable.

    Slots are 0-based, -1 meaning "no qubit on that side".  Occupied
    qubits without any kept edge count one qubit each.
    """
    lo_v[:] = _BIG
    hi_v[:] = -1
    lo_h[:] = _BIG
    hi_h[:] = -1
    n = vslot.shape[0]
    m = eu.shape[0]
    for t in range(n + m):
        if t < n:
            a = vslot[t]
            b = hslot[t]
            if a < 0 or b < 0:
                continue
        else:
            x = eu[t - n]
            y = ew[t - n]
            a1 = vslot[x]
            b1 = hslot[y]
            a2 = vslot[y]
            b2 = hslot[x]
            ok1 = a1 >= 0 and b1 >= 0
            ok2 = a2 >= 0 and b2 >= 0
            if ok1 and ok2:
                p1 = a1 <= b1
                p2 = a2 <= b2
                if p1 != p2:
                    first = p1
                else:
                    first = a1 < a2 or (a1 == a2 and b1 <= b2)
                if first:
                    a = a1
                    b = b1
                else:
                    a = a2
                    b = b2
            elif ok1:
                a = a1
                b = b1
            elif ok2:
                a = a2
                b = b2
            else:
                return -1
        cv = b // L
        ch = a // L
        if cv < lo_v[a]:
            lo_v[a] = cv
        if cv > hi_v[a]:
            hi_v[a] = cv
        if ch < lo_h[b]:
            lo_h[b] = ch
        if ch > hi_h[b]:
            hi_h[b] = ch
    total = 0
    for u in range(n):
        a = vslot[u]
        if a >= 0:
            total += hi_v[a] - lo_v[a] + 1 if hi_v[a] >= 0 else 1
        b = hslot[u]
        if b >= 0:
            total += hi_h[b] - lo_h[b] + 1 if hi_h[b] >= 0 else 1
    return total


@njit(cache=True)
def best_two_exchange(vslot, hslot, eu, ew, L, nv, nh):
    """Scan every swap of two slot positions on one side.

    Positions run over all ``nv`` (``nh``) slots, occupied or not, so a
    swap may also move a vertex onto a free slot.  Returns (score, side,
    a, b) of the strictly best swap with a < b 0-based slot indices; ties
    keep the first in (side, a, b) order.  side == -1 means no swap is
    representable.
    """
    lo_v = np.empty(nv, np.int64)
    hi_v = np.empty(nv, np.int64)
    lo_h = np.empty(nh, np.int64)
    hi_h = np.empty(nh, np.int64)
    n = vslot.shape[0]
    best = _BIG
    bs = -1
    ba = -1
    bb = -1
    for side in range(2):
        slots = vslot if side == 0 else hslot
        size = nv if side == 0 else nh
        owner = np.full(size, -1, np.int64)
        for u in range(n):
            if slots[u] >= 0:
                owner[slots[u]] = u
        for a in range(size):
            for b in range(a + 1, size):
                oa = owner[a]
                ob = owner[b]
                if oa < 0 and ob < 0:
                    continue
                if oa >= 0:
                    slots[oa] = b
                if ob >= 0:
                    slots[ob] = a
                s = fast_score(vslot, hslot, eu, ew, L, lo_v, hi_v, lo_h, hi_h)
                if oa >= 0:
                    slots[oa] = a
                if ob >= 0:
                    slots[ob] = b
                if s >= 0 and s < best:
                    best = s
                    bs = side
                    ba = a
                    bb = b
    return best, bs, ba, bb


@njit(cache=True)
def _greedy_ind_set(indptr, indices, alive, draws, k, chosen, victims):
    """Min-degree greedy independent set over ``alive`` vertices.

    Bucket structure after Batagelj-Zaversnik: ``vert`` sorted by key,
    ``start[key]`` the first slot of each bucket, key = live degree + 1
    and key 0 for deleted vertices.  A vertex drops one bucket per step,
    so the whole run is O(n + m).  Ties pick uniformly via ``draws[k]``.
    Marks picks in ``chosen`` and clears ``alive`` for picks and their
    neighbours.  Returns the next unused draw index.
    """
    n = alive.shape[0]
    key = np.zeros(n, np.int64)
    maxk = 1
    remaining = 0
    for u in range(n):
        if alive[u]:
            remaining += 1
            d = 0
            for p in range(indptr[u], indptr[u + 1]):
                if alive[indices[p]]:
                    d += 1
            key[u] = d + 1
            if d + 1 > maxk:
                maxk = d + 1
    start = np.zeros(maxk + 2, np.int64)
    for u in range(n):
        start[key[u] + 1] += 1
    for b in range(1, maxk + 2):
        start[b] += start[b - 1]
    vert = np.empty(n, np.int64)
    pos = np.empty(n, np.int64)
    fill = start.copy()
    for u in range(n):
        pos[u] = fill[key[u]]
        vert[pos[u]] = u
        fill[key[u]] += 1

    lo = 1
    while remaining > 0:
        while start[lo + 1] == start[lo]:
            lo += 1
        size = start[lo + 1] - start[lo]
        r = int(draws[k] * size)
        if r >= size:
            r = size - 1
        k += 1
        v = vert[start[lo] + r]
        chosen[v] = True
        # v and its live neighbours die together
        nvic = 0
        victims[nvic] = v
        nvic += 1
        alive[v] = False
        for p in range(indptr[v], indptr[v + 1]):
            w = indices[p]
            if alive[w]:
                alive[w] = False
                victims[nvic] = w
                nvic += 1
        remaining -= nvic
        # the minimum live key can only drop to the smallest key touched
        m = _BIG
        for t in range(nvic):
            x = victims[t]
            while key[x] > 0:
                b = key[x]
                first = start[b]
                y = vert[first]
                if y != x:
                    px = pos[x]
                    vert[first] = x
                    pos[x] = first
                    vert[px] = y
                    pos[y] = px
                start[b] += 1
                key[x] = b - 1
            for p in range(indptr[x], indptr[x + 1]):
                w = indices[p]
                if alive[w]:
                    b = key[w]
                    first = start[b]
                    y = vert[first]
                    if y != w:
                        pw = pos[w]
                        vert[first] = w
                        pos[w] = first
                        vert[pw] = y
                        pos[y] = pw
                    start[b] += 1
                    key[w] = b - 1
                    if b - 1 < m:
                        m = b - 1
        if m < lo:
            lo = max(m, 1)
    return k


@njit(cache=True)
def greedy_bipartite_run(indptr, indices, draws, side):
    """One GreedyBipartite run; fills ``side`` with 0 (left), 1 (right), 2 (OCT)."""
    n = side.shape[0]
    victims = np.empty(n, np.int64)
    alive = np.ones(n, np.bool_)
    left = np.zeros(n, np.bool_)
    k = _greedy_ind_set(indptr, indices, alive, draws, 0, left, victims)
    for u in range(n):
        alive[u] = not left[u]
    right = np.zeros(n, np.bool_)
    _greedy_ind_set(indptr, indices, alive, draws, k, right, victims)
    oct_size = 0
    for u in range(n):
        if left[u]:
            side[u] = 0
        elif right[u]:
            side[u] = 1
        else:
            side[u] = 2
            oct_size += 1
    return oct_size


@njit(cache=True)
def best_greedy_bipartite(indptr, indices, draws):
    """Run one restart per row of ``draws``; keep the first smallest OCT."""
    n = draws.shape[1]
    best = np.empty(n, np.int64)
    side = np.empty(n, np.int64)
    best_size = n + 1
    best_run = -1
    for r in range(draws.shape[0]):
        s = greedy_bipartite_run(indptr, indices, draws[r], side)
        if s < best_size:
            best_size = s
            best_run = r
            best[:] = side
    return best, best_run
