"""Choice of auxiliary primes, admissibility of Frobenius data, curve search.

The pipeline needs two primes q1, q2 = 1 (mod ell) carrying prescribed
Frobenius traces: over F_q1 a characteristic polynomial whose eigenvalue-pair
sums fall outside F_ell, over F_q2 one whose pair sums are distinct elements
of F_ell while an eigenvalue itself stays outside.  Everything is chosen
smallest-first so a given ell always selects the same data.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .arith import is_perfect_square, is_prime, no_square_triple
from .errors import (BudgetExceeded, InconsistentTarget, NotFound, ParityViolation,
                     SelectionExhausted)
from .finitefield import FpPoly, PrimeField
from .hypercurve import (WeilAdmissibility, count_points, frobenius_data,
                         trace_disc, weil_admissible)

__all__ = ["DEFAULT_SEED", "AuxiliarySelection", "WeilAdmissibility", "trace_disc",
           "weil_admissible", "select_aux", "search_curve"]

DEFAULT_SEED = 271828


@dataclass(frozen=True)
class AuxiliarySelection:
    """The auxiliary data for one ell: primes, traces and the z parameter."""
    ell: int
    q1: int
    q2: int
    b1: int
    b2: int
    z: int

    # both target polynomials carry trace coefficient a = 1
    @property
    def targets1(self) -> tuple[int, int]:
        return self.q1 + 2, self.q1 * self.q1 + 2 * self.b1

    @property
    def targets2(self) -> tuple[int, int]:
        return self.q2 + 2, self.q2 * self.q2 + 2 * self.b2


def _next_split_prime(ell: int, excluded, start: int, minimum: int = 0) -> int:
    n = max(start, minimum + 1)
    n += (1 - n) % ell  # smallest candidate >= n that is 1 mod ell
    for _ in range(100000):
        if is_prime(n) and n not in excluded:
            return n
        n += ell
    raise SelectionExhausted(f"no prime = 1 mod {ell} found below {n}")


def select_aux(ell: int, pset: frozenset | set) -> AuxiliarySelection:
    """Deterministic smallest-first choice of (q1, q2, b1, b2, z).

    q1: least prime = 1 (mod ell) outside pset; q2: the next one that also
    exceeds 3*ell.  b1 makes a^2-4b+8q1 (a=1) a nonresidue mod ell; z and b2
    make a^2-4b2+8q2 a nonzero residue mod ell, not a perfect square in Z.
    """
    if ell < 7:
        raise ValueError("auxiliary selection is defined for ell >= 7")
    field = PrimeField(ell)
    q1 = _next_split_prime(ell, pset, ell + 1)
    q2 = _next_split_prime(ell, pset | {q1}, q1 + 1, minimum=3 * ell)

    b1 = next((b for b in range(1, q1) if field.char(trace_disc(1, b, q1)) == -1), None)
    if b1 is None:
        raise SelectionExhausted(f"no b1 in (0, {q1}) gives a nonresidue")

    z = next((v for v in range(1, ell) if field.char(v * v - 16 * q2) == -1), None)
    if z is None:
        raise SelectionExhausted(f"no z in (0, {ell}) gives a nonresidue")
    if z * z % ell == 1:
        z = 1

    # 1 - 4*b2 + 8*q2 = (z+1)^2 (mod ell); walk the lifts smallest-first.
    target = (z + 1) ** 2 % ell
    b0 = (1 + 8 * q2 - target) * pow(4, -1, ell) % ell
    if b0 == 0:
        b0 = ell
    b2 = None
    for b in range(b0, q2, ell):
        if is_perfect_square(trace_disc(1, b, q2)) is None and b % q2 != 0:
            b2 = b
            break
    if b2 is None:
        raise SelectionExhausted(f"no admissible lift of b2 = {b0} mod {ell} below {q2}")
    # the three-squares gap guarantees success within the first three lifts
    assert b2 < b0 + 3 * ell and no_square_triple(trace_disc(1, b0, q2), ell)

    sel = AuxiliarySelection(ell=ell, q1=q1, q2=q2, b1=b1, b2=b2, z=z)
    _assert_selection(sel, field, pset)
    return sel


def _assert_selection(sel, field, pset):
    ell = sel.ell
    assert sel.q1 % ell == 1 and sel.q2 % ell == 1
    assert sel.q1 != sel.q2 and sel.q2 > 3 * ell
    assert sel.q1 not in pset and sel.q2 not in pset
    d1 = trace_disc(1, sel.b1, sel.q1)
    d2 = trace_disc(1, sel.b2, sel.q2)
    assert field.char(d1) == -1
    assert field.char(d2) == 1
    assert is_perfect_square(d2) is None
    assert weil_admissible(sel.q1, 1, sel.b1).all_pass
    assert weil_admissible(sel.q2, 1, sel.b2).all_pass


_BLOCK = 1 << 14


def search_curve(q: int, n1: int, n2: int, strategy: str = "random",
                 seed: int = DEFAULT_SEED, fixed=None, threads: int | None = None,
                 max_candidates: int = 10**8) -> FpPoly:
    """Find a squarefree sextic over F_q whose curve has the given counts.

    strategy "random" walks a keyed-hash candidate stream derived from seed;
    "lex" scans coefficient words in lexicographic order, f6 most significant,
    starting from the monic block.  fixed, when given, pins chosen
    coefficients: a 7-entry sequence (f6..f0) with None marking free slots.

    Every kernel hit is re-verified with an exact recount before it is
    returned; candidates failing the squarefree precondition are skipped.
    The scan order (and hence the result) does not depend on thread count.
    """
    if strategy not in ("random", "lex"):
        raise ValueError(f"unknown strategy {strategy!r}")
    try:
        w = frobenius_data(q, n1, n2)
    except ParityViolation as e:
        raise InconsistentTarget(str(e)) from None
    adm = weil_admissible(q, w.a, w.b)
    if not (adm.bound_a and adm.bound_b_lower and adm.bound_b_upper):
        raise InconsistentTarget(
            f"(a, b) = ({w.a}, {w.b}) violates the Weil bounds for q = {q}")

    fixed_arr = [-1 if v is None else int(v) % q for v in (fixed or [None] * 7)]
    if len(fixed_arr) != 7:
        raise ValueError("fixed must pin exactly 7 slots (use None for free ones)")
    if fixed_arr[0] == 0:
        raise InconsistentTarget("pinned leading coefficient is 0 mod q")

    kernels.set_threads(threads)
    space = kernels.lex_space_size(q, fixed_arr) if strategy == "lex" else max_candidates
    start = 0
    while start < space:
        count = min(_BLOCK, space - start)
        k = kernels.scan_block(q, n1, n2, strategy, seed, start, count, fixed_arr)
        if k < 0:
            start += count
            continue
        cand = kernels.decode_candidate(q, strategy, seed, k, fixed_arr)
        poly = FpPoly(list(reversed(cand)), q)
        if poly.degree == 6 and poly.is_squarefree() and count_points(poly) == (n1, n2):
            return poly
        start = k + 1  # rare: counts matched a non-squarefree sextic; move past it
    if strategy == "lex":
        raise NotFound(f"no curve over F_{q} with counts ({n1}, {n2}) in the "
                       f"scanned space of {space} candidates")
    raise BudgetExceeded(f"no hit within {max_candidates} randomized candidates")
