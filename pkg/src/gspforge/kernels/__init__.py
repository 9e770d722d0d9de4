"""Hot loops: character sums for point counting, candidate scans, subgroup BFS.

Two interchangeable backends ship with identical semantics:

  _numba  - @njit kernels (used when numba imports cleanly)
  _numpy  - vectorized fallback with no compiled dependency

Selection: the GSPFORGE_KERNELS environment variable ("numba", "numpy" or
"auto"/unset) decides at import time.  benchmarks/bench_kernels.py times the
two against each other.

Everything heavier sits above this layer in plain exact Python; only these
inner loops ever touch machine integers, and every hit they report is
re-verified by the exact layer before anything trusts it.
"""
from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

_CHOICE = os.environ.get("GSPFORGE_KERNELS", "auto").lower()

if _CHOICE not in ("auto", "numba", "numpy"):
    raise ValueError(f"GSPFORGE_KERNELS must be auto, numba or numpy, not {_CHOICE!r}")

if _CHOICE == "numpy":
    from . import _numpy as _backend
    _BACKEND_NAME = "numpy"
elif _CHOICE == "numba":
    from . import _numba as _backend
    _BACKEND_NAME = "numba"
else:
    try:
        from . import _numba as _backend
        _BACKEND_NAME = "numba"
    except ImportError:
        from . import _numpy as _backend
        _BACKEND_NAME = "numpy"


def backend_name() -> str:
    return _BACKEND_NAME


def set_threads(n: int | None) -> int:
    """Clamp and apply a worker count; returns what was actually set."""
    if _BACKEND_NAME != "numba":
        return 1
    import numba
    limit = numba.config.NUMBA_NUM_THREADS
    n = limit if n is None else max(1, min(int(n), limit))
    numba.set_num_threads(n)
    return n


@lru_cache(maxsize=64)
def char_tables(q: int) -> tuple[np.ndarray, int, np.ndarray]:
    """(chi over F_q, nonresidue ns, chi2 over F_{q^2} indexed c0*q+c1).

    chi[v] is 1 / -1 / 0; built by marking squares directly, so it is
    independent of any exponentiation code it might later be checked against.
    """
    chi = np.full(q, -1, dtype=np.int8)
    chi[0] = 0
    for y in range(1, q):
        chi[y * y % q] = 1
    ns = 2
    while chi[ns] != -1:
        ns += 1
    chi2 = np.full(q * q, -1, dtype=np.int8)
    chi2[0] = 0
    for a0 in range(q):
        for a1 in range(q):
            if a0 == 0 and a1 == 0:
                continue
            s0 = (a0 * a0 + ns * a1 * a1) % q
            s1 = 2 * a0 * a1 % q
            chi2[s0 * q + s1] = 1
    return chi, ns, chi2


def char_sum_fq(coeffs_desc, q: int) -> int:
    """sum over x in F_q of chi(f(x)) for the sextic with the given coefficients."""
    chi, _, _ = char_tables(q)
    c = np.asarray([v % q for v in coeffs_desc], dtype=np.int64)
    return int(_backend.char_sum_fq(c, q, chi))


def char_sum_fq2(coeffs_desc, q: int) -> int:
    """Same sum over the quadratic extension F_{q^2}."""
    chi, ns, chi2 = char_tables(q)
    c = np.asarray([v % q for v in coeffs_desc], dtype=np.int64)
    return int(_backend.char_sum_fq2(c, q, ns, chi2))


def scan_block(q: int, n1: int, n2: int, mode: str, seed: int,
               start: int, count: int, fixed) -> int:
    """Scan candidate indices [start, start+count) for a sextic hitting the
    (n1, n2) point-count targets over F_q; return the smallest matching index
    or -1.

    mode "random": coefficients are a keyed hash of the index (seeded stream).
    mode "lex": the index is a mixed-radix word over the free coefficient
    slots, most significant at f6.  fixed holds 7 entries, -1 marking a free
    slot, anything else pinning that coefficient.
    """
    chi, ns, chi2 = char_tables(q)
    fixed_arr = np.asarray(fixed, dtype=np.int64)
    if len(fixed_arr) != 7:
        raise ValueError("fixed must have 7 entries")
    fixed_arr = np.where(fixed_arr >= 0, fixed_arr % q, -1)
    mode_flag = 0 if mode == "random" else 1
    return int(_backend.scan_block(
        q, int(n1), int(n2), mode_flag, np.uint64(seed & (2**64 - 1)),
        int(start), int(count), fixed_arr, chi, ns, chi2))


def decode_candidate(q: int, mode: str, seed: int, k: int, fixed) -> tuple[int, ...]:
    """Reproduce the coefficient vector scan_block inspected at index k."""
    fixed_arr = np.asarray(fixed, dtype=np.int64)
    fixed_arr = np.where(fixed_arr >= 0, fixed_arr % q, -1)
    mode_flag = 0 if mode == "random" else 1
    out = _backend.decode_candidate(
        q, mode_flag, np.uint64(seed & (2**64 - 1)), int(k), fixed_arr)
    return tuple(int(v) for v in out)


def lex_space_size(q: int, fixed) -> int:
    """Number of candidate indices in lex mode for the given pinned slots."""
    size = 1
    for j, v in enumerate(fixed):
        if v == -1:
            size *= (q - 1) if j == 0 else q
    return size


def closure_size(gens_packed, ell: int, cap: int) -> tuple[int, bool]:
    """BFS size of the subgroup generated by the packed 4x4 matrices.

    Returns (size, complete); complete=False means the cap was hit first.
    """
    gens = np.asarray(sorted(set(int(g) for g in gens_packed)), dtype=np.int64)
    size, complete = _backend.closure_bfs(gens, int(ell), int(cap))
    return int(size), bool(complete)
