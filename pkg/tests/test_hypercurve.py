import random

import pytest

from gspforge.errors import (BadReduction, DegenerateLeading, ParityViolation,
                             SingularCurve)
from gspforge.finitefield import FpPoly
from gspforge.hypercurve import (HyperCurve, count_points, frobenius_data,
                                 reduce_curve, trace_disc, weil_admissible)

W29 = FpPoly([5, 17, 0, 0, 0, 1, 1], 29)    # x^6+x^5+17x+5
W43 = FpPoly([21, 13, 3, 0, 0, 1, 1], 43)   # x^6+x^5+3x^2+13x+21
ELL5 = HyperCurve((1, 0, 391300, 1170, 1300, 0, 1))


def test_counts_published_witnesses():
    assert count_points(W29) == (31, 843)
    assert count_points(W43) == (45, 1855)
    assert count_points(reduce_curve(ELL5, 19)) == (22, 410)


def _legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _brute_counts(coeffs_asc, p):
    # independent recount: affine chi sums plus smooth-model infinity points,
    # quadratic extension realized as pairs (u + v*s with s^2 a nonresidue)
    lead = coeffs_asc[-1]
    n1 = 1 + _legendre(lead, p)
    for x in range(p):
        v = 0
        for c in reversed(coeffs_asc):
            v = (v * x + c) % p
        n1 += 1 + _legendre(v, p)
    ns = next(n for n in range(2, p) if _legendre(n, p) == -1)
    sq = {(0, 0)}
    for u in range(p):
        for w in range(p):
            if (u, w) != (0, 0):
                sq.add(((u * u + ns * w * w) % p, 2 * u * w % p))
    n2 = 1 + (1 if (lead % p, 0) in sq else -1)
    for x0 in range(p):
        for x1 in range(p):
            a0, a1 = 0, 0
            for c in reversed(coeffs_asc):
                a0, a1 = (a0 * x0 + ns * a1 * x1 + c) % p, (a0 * x1 + a1 * x0) % p
            if (a0, a1) == (0, 0):
                n2 += 1
            else:
                n2 += 1 + (1 if (a0, a1) in sq else -1)
    return n1, n2


def test_counts_against_brute_force():
    rng = random.Random(6)
    done = 0
    while done < 30:
        p = rng.choice((3, 5, 7, 11, 13))
        cs = [rng.randrange(p) for _ in range(6)] + [rng.randrange(1, p)]
        poly = FpPoly(cs, p)
        if poly.degree != 6 or not poly.is_squarefree():
            continue
        assert count_points(poly) == _brute_counts(list(poly.coeffs), p)
        done += 1


def test_count_rejects_bad_input():
    with pytest.raises(SingularCurve):
        count_points(FpPoly([1, 0, 0, 0, 0, 0, 1], 3))  # (x^2+1)^3 mod 3
    with pytest.raises(SingularCurve):
        count_points(FpPoly([1, 1, 0, 0, 0, 1], 7))     # degree 5


def test_frobenius_golden():
    w = frobenius_data(19, 22, 410)
    assert (w.q, w.a, w.b) == (19, 2, 26)
    w29 = frobenius_data(29, 31, 843)
    assert (w29.a, w29.b) == (1, 1)
    assert frobenius_data(43, 45, 1855).b == 3


def test_frobenius_parity_guard():
    with pytest.raises(ParityViolation):
        frobenius_data(29, 31, 844)


def test_weil_bounds_on_random_curves():
    rng = random.Random(7)
    qs = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
    done = 0
    while done < 50:
        q = rng.choice(qs)
        cs = [rng.randrange(q) for _ in range(6)] + [rng.randrange(1, q)]
        poly = FpPoly(cs, q)
        if poly.degree != 6 or not poly.is_squarefree():
            continue
        n1, n2 = count_points(poly)
        w = frobenius_data(q, n1, n2)
        adm = weil_admissible(q, w.a, w.b)
        assert adm.bound_a and adm.bound_b_lower and adm.bound_b_upper
        done += 1


def test_trace_disc_and_admissibility():
    assert trace_disc(1, 1, 29) == 229
    assert trace_disc(1, 3, 43) == 333
    assert weil_admissible(29, 1, 1).all_pass
    assert weil_admissible(43, 1, 3).all_pass
    assert not weil_admissible(29, 0, 1).a2_excluded
    assert not weil_admissible(29, 1, 29).b_coprime
    assert not weil_admissible(29, 22, 243).bound_b_upper


def test_curve_text_roundtrip():
    c = HyperCurve((1, -2, 3, 0, 5, 0, -7))
    assert c.to_text() == "g2:v1:[1,-2,3,0,5,0,-7]"
    assert HyperCurve.from_text(c.to_text()) == c
    assert HyperCurve.from_text(" g2:v1:[1,0,0,0,0,0,1] ") == HyperCurve((1, 0, 0, 0, 0, 0, 1))
    for bad in ("g2:v2:[1,2,3,4,5,6,7]", "g2:v1:[1,2,3]", "y^2 = x^6+1"):
        with pytest.raises(ValueError):
            HyperCurve.from_text(bad)


def test_curve_construction_guards():
    with pytest.raises(ValueError):
        HyperCurve((1, 2, 3))
    with pytest.raises(ValueError):
        HyperCurve((0, 1, 1, 1, 1, 1, 1))
    assert not HyperCurve((1, 0, 0, 0, 0, 0, 0)).is_smooth()
    assert HyperCurve((1, 0, 0, 0, 0, 0, 1)).is_smooth()


def test_reduce_curve_guards():
    assert reduce_curve(ELL5, 5) == FpPoly([1, 0, 0, 0, 0, 0, 1], 5)
    with pytest.raises(BadReduction):
        reduce_curve(ELL5, 27792683)
    with pytest.raises(DegenerateLeading):
        reduce_curve(HyperCurve((7, 0, 0, 0, 0, 0, 1)), 7)


def test_discriminant_property():
    # 4096 * J10 with the sign conventions of the invariant layer
    assert HyperCurve((1, 1, 0, 1, 0, 1, 1)).discriminant == 109520
