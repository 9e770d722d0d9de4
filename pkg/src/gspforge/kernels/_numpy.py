"""Pure-numpy kernel backend.  Same contracts as _numba, no compilation."""
from __future__ import annotations

import numpy as np

_MASK = np.uint64(0xFFFFFFFFFFFFFFFF)
_GOLD = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_CHUNK = 1 << 16


def _mix(z):
    # splitmix64 finalizer; z is a uint64 scalar or array
    z = (z + _GOLD) & _MASK
    z = ((z ^ (z >> np.uint64(30))) * _M1) & _MASK
    z = ((z ^ (z >> np.uint64(27))) * _M2) & _MASK
    return z ^ (z >> np.uint64(31))


def char_sum_fq(c, q, chi):
    x = np.arange(q, dtype=np.int64)
    acc = np.full(q, c[0] % q, dtype=np.int64)
    for j in range(1, 7):
        acc = (acc * x + c[j]) % q
    return np.int64(chi[acc].sum(dtype=np.int64))


def char_sum_fq2(c, q, ns, chi2):
    x0 = np.repeat(np.arange(q, dtype=np.int64), q)
    x1 = np.tile(np.arange(q, dtype=np.int64), q)
    a0 = np.full(q * q, c[0] % q, dtype=np.int64)
    a1 = np.zeros(q * q, dtype=np.int64)
    for j in range(1, 7):
        n0 = (a0 * x0 + ns * a1 * x1 + c[j]) % q
        a1 = (a0 * x1 + a1 * x0) % q
        a0 = n0
    return np.int64(chi2[a0 * q + a1].sum(dtype=np.int64))


def _decode_batch(q, mode_flag, seed, ks, fixed):
    """ks: uint64 array of candidate indices -> (len(ks), 7) int64 coefficients."""
    n = len(ks)
    cols = np.empty((n, 7), dtype=np.int64)
    if mode_flag == 0:  # keyed-hash stream
        seven = np.uint64(7)
        for j in range(7):
            if fixed[j] >= 0:
                cols[:, j] = fixed[j]
            else:
                h = _mix((seed + ks * seven + np.uint64(j)) & _MASK)
                if j == 0:
                    cols[:, j] = 1 + (h % np.uint64(q - 1)).astype(np.int64)
                else:
                    cols[:, j] = (h % np.uint64(q)).astype(np.int64)
    else:  # mixed-radix lex word, most significant digit at f6
        work = ks.astype(np.uint64).copy()
        for j in range(6, -1, -1):
            if fixed[j] >= 0:
                cols[:, j] = fixed[j]
            else:
                r = np.uint64(q - 1 if j == 0 else q)
                d = (work % r).astype(np.int64)
                work //= r
                cols[:, j] = d + 1 if j == 0 else d
    return cols


def decode_candidate(q, mode_flag, seed, k, fixed):
    return _decode_batch(q, mode_flag, seed, np.array([k], dtype=np.uint64), fixed)[0]


def scan_block(q, n1, n2, mode_flag, seed, start, count, fixed, chi, ns, chi2):
    x = np.arange(q, dtype=np.int64)
    done = 0
    while done < count:
        m = min(_CHUNK, count - done)
        ks = np.arange(start + done, start + done + m, dtype=np.uint64)
        cols = _decode_batch(q, mode_flag, seed, ks, fixed)
        acc = np.broadcast_to(cols[:, 0:1] % q, (m, q)).copy()
        for j in range(1, 7):
            acc = (acc * x + cols[:, j:j + 1]) % q
        s1 = chi[acc].sum(axis=1, dtype=np.int64)
        n1_all = q + 1 + s1 + chi[cols[:, 0] % q]
        for idx in np.nonzero(n1_all == n1)[0]:
            c = cols[idx]
            s2 = char_sum_fq2(c, q, ns, chi2)
            if q * q + 1 + s2 + chi2[(c[0] % q) * q] == n2:
                return np.int64(start + done + int(idx))
        done += m
    return np.int64(-1)


# ---------------------------------------------------------------------------
# subgroup closure

def _unpack(keys, ell):
    n = len(keys)
    out = np.empty((n, 16), dtype=np.int64)
    work = keys.astype(np.int64).copy()
    for i in range(16):
        out[:, i] = work % ell
        work //= ell
    return out.reshape(n, 4, 4)


def _pack(mats, ell):
    powers = np.array([ell ** i for i in range(16)], dtype=np.int64)
    return mats.reshape(len(mats), 16) @ powers


def closure_bfs(gens, ell, cap):
    if len(gens) == 0:
        return np.int64(1), True
    gmats = _unpack(gens.astype(np.int64), ell)
    seen = _pack(np.eye(4, dtype=np.int64).reshape(1, 4, 4), ell)
    frontier = seen.copy()
    while len(frontier):
        prods = []
        for lo in range(0, len(frontier), _CHUNK):
            block = _unpack(frontier[lo:lo + _CHUNK], ell)
            for g in gmats:
                prods.append(_pack(np.matmul(block, g) % ell, ell))
        cand = np.unique(np.concatenate(prods))
        pos = np.searchsorted(seen, cand)
        pos_c = np.minimum(pos, len(seen) - 1)
        novel = cand[(pos >= len(seen)) | (seen[pos_c] != cand)]
        if len(novel) == 0:
            break
        if len(seen) + len(novel) > cap:
            return np.int64(len(seen) + len(novel)), False
        seen = np.concatenate([seen, novel])
        seen.sort()
        frontier = novel
    return np.int64(len(seen)), True
