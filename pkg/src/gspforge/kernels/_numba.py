"""Numba kernel backend.  Mirrors _numpy exactly; hits are re-verified upstream."""
from __future__ import annotations

import numpy as np
from numba import njit, prange

_GOLD = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_SEVEN = np.uint64(7)


@njit(cache=True)
def _mix(z):
    z = z + _GOLD
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


@njit(cache=True)
def char_sum_fq(c, q, chi):
    s = np.int64(0)
    for x in range(q):
        acc = c[0]
        for j in range(1, 7):
            acc = (acc * x + c[j]) % q
        s += chi[acc]
    return s


@njit(cache=True)
def char_sum_fq2(c, q, ns, chi2):
    s = np.int64(0)
    for x0 in range(q):
        for x1 in range(q):
            a0 = c[0]
            a1 = 0
            for j in range(1, 7):
                n0 = (a0 * x0 + ns * a1 * x1 + c[j]) % q
                a1 = (a0 * x1 + a1 * x0) % q
                a0 = n0
            s += chi2[a0 * q + a1]
    return s


@njit(cache=True)
def _decode_one(q, mode_flag, seed, k, fixed, out):
    if mode_flag == 0:
        for j in range(7):
            if fixed[j] >= 0:
                out[j] = fixed[j]
            else:
                h = _mix(seed + k * _SEVEN + np.uint64(j))
                if j == 0:
                    out[j] = 1 + np.int64(h % np.uint64(q - 1))
                else:
                    out[j] = np.int64(h % np.uint64(q))
    else:
        work = k
        for j in range(6, -1, -1):
            if fixed[j] >= 0:
                out[j] = fixed[j]
            else:
                r = np.uint64(q - 1) if j == 0 else np.uint64(q)
                d = np.int64(work % r)
                work //= r
                out[j] = d + 1 if j == 0 else d


@njit(cache=True)
def decode_candidate(q, mode_flag, seed, k, fixed):
    out = np.empty(7, dtype=np.int64)
    _decode_one(q, mode_flag, seed, np.uint64(k), fixed, out)
    return out


@njit(cache=True, parallel=True)
def scan_block(q, n1, n2, mode_flag, seed, start, count, fixed, chi, ns, chi2):
    sentinel = np.int64(start + count)
    best = sentinel
    for i in prange(count):
        k = np.uint64(start + i)
        c = np.empty(7, dtype=np.int64)
        _decode_one(q, mode_flag, seed, k, fixed, c)
        s = np.int64(0)
        for x in range(q):
            acc = c[0]
            for j in range(1, 7):
                acc = (acc * x + c[j]) % q
            s += chi[acc]
        hit = sentinel
        if q + 1 + s + chi[c[0]] == n1:
            s2 = char_sum_fq2(c, q, ns, chi2)
            if q * q + 1 + s2 + chi2[c[0] * q] == n2:
                hit = np.int64(start + i)
        best = min(best, hit)
    if best == sentinel:
        return np.int64(-1)
    return best


# ---------------------------------------------------------------------------
# subgroup closure: open-addressing set of packed matrices, plain BFS

@njit(cache=True)
def _probe_insert(table, mask, shift, key):
    # table slots hold key+1 so 0 means empty; returns True when key is new
    h = (np.uint64(key) * _GOLD) >> shift  # high product bits spread best
    idx = np.int64(h)
    while True:
        v = table[idx]
        if v == 0:
            table[idx] = key + 1
            return True
        if v == key + 1:
            return False
        idx += 1
        if idx > mask:
            idx = 0


@njit(cache=True)
def closure_bfs(gens, ell, cap):
    ngens = len(gens)
    if ngens == 0:
        return np.int64(1), True
    bits = 5
    while (np.int64(1) << bits) < 2 * (cap + 16):
        bits += 1
    size = np.int64(1) << bits
    mask = size - 1
    shift = np.uint64(64 - bits)
    table = np.zeros(size, dtype=np.int64)

    gm = np.empty((ngens, 4, 4), dtype=np.int64)
    for gi in range(ngens):
        w = gens[gi]
        for r in range(4):
            for col in range(4):
                gm[gi, r, col] = w % ell
                w //= ell

    cur = np.empty(cap + 1, dtype=np.int64)
    nxt = np.empty(cap + 1, dtype=np.int64)
    ident = np.int64(0)
    p = np.int64(1)
    for i in range(16):
        if i % 5 == 0:  # diagonal positions in row-major order: 0, 5, 10, 15
            ident += p
        p *= ell
    _probe_insert(table, mask, shift, ident)
    cur[0] = ident
    cur_n = 1
    total = np.int64(1)

    a = np.empty((4, 4), dtype=np.int64)
    while cur_n > 0:
        nxt_n = 0
        for i in range(cur_n):
            w = cur[i]
            for r in range(4):
                for col in range(4):
                    a[r, col] = w % ell
                    w //= ell
            for gi in range(ngens):
                key = np.int64(0)
                p = np.int64(1)
                for r in range(4):
                    for col in range(4):
                        acc = 0
                        for t in range(4):
                            acc += a[r, t] * gm[gi, t, col]
                        key += (acc % ell) * p
                        p *= ell
                if _probe_insert(table, mask, shift, key):
                    total += 1
                    if total > cap:
                        return total, False
                    nxt[nxt_n] = key
                    nxt_n += 1
        cur, nxt = nxt, cur
        cur_n = nxt_n
    return total, True
