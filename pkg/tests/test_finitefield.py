import itertools
import random

import pytest

from conftest import oracle_factor_pattern
from gspforge.errors import DegreeMismatch
from gspforge.finitefield import (FpPoly, PrimeField, QuadExt, deuring_poly,
                                  factor_small, quadratic_character,
                                  quartic_factor_pattern, supersingular_param)


def test_character_matches_square_table():
    for p in (3, 5, 7, 29, 43):
        field = PrimeField(p)
        squares = {x * x % p for x in range(1, p)}
        for x in range(p):
            want = 0 if x == 0 else (1 if x in squares else -1)
            assert field.char(x) == want
            assert quadratic_character(x, field) == want


def test_least_nonresidue():
    assert PrimeField(7).least_nonresidue() == 3  # 2 = 4^2 is a residue mod 7
    assert PrimeField(29).least_nonresidue() == 2
    assert PrimeField(43).least_nonresidue() == 2


def test_quadext_character_counts():
    for p in (3, 5, 7):
        ext = QuadExt(p)
        vals = [ext.char((a, b)) for a in range(p) for b in range(p)]
        assert vals.count(1) == (p * p - 1) // 2
        assert vals.count(-1) == (p * p - 1) // 2
        assert vals.count(0) == 1
        # base field elements are norms, hence squares upstairs
        assert all(ext.char((x, 0)) == 1 for x in range(1, p))


def test_quadext_mul_is_commutative_and_associative():
    ext = QuadExt(7)
    rng = random.Random(14)
    for _ in range(50):
        a, b, c = [(rng.randrange(7), rng.randrange(7)) for _ in range(3)]
        assert ext.mul(a, b) == ext.mul(b, a)
        assert ext.mul(ext.mul(a, b), c) == ext.mul(a, ext.mul(b, c))


def test_poly_divmod_roundtrip_random():
    rng = random.Random(3)
    for _ in range(300):
        p = rng.choice((3, 5, 7, 29))
        a = FpPoly([rng.randrange(p) for _ in range(rng.randint(0, 8))], p)
        b = FpPoly([rng.randrange(p) for _ in range(rng.randint(1, 5))], p)
        if b.is_zero():
            continue
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.is_zero() or r.degree < b.degree


def test_poly_str_eval_degree():
    f = FpPoly([5, 17, 0, 0, 0, 1, 1], 29)
    assert str(f) == "x^6+x^5+17x+5"
    assert f.degree == 6
    assert f.eval(1) == 24
    assert f.eval(0) == 5


def test_gcd_squarefree_roots():
    p = 7
    f = FpPoly([1, 1], p) * FpPoly([1, 1], p) * FpPoly([3, 0, 1], p)
    assert not f.is_squarefree()
    assert f.gcd(f.derivative()) == FpPoly([1, 1], p)
    assert FpPoly([5, 17, 0, 0, 0, 1, 1], 29).is_squarefree()
    # (x-1)^2 (x^2-4x+1) mod 7: the quadratic part has nonresidue discriminant
    assert FpPoly([1, 1, 3, 1, 1], 7).roots() == [1]


def test_deuring_poly_goldens():
    h7 = deuring_poly(7)
    assert h7 == FpPoly([1, 2, 2, 1], 7)
    assert [(str(g), m) for g, m in factor_small(h7)] == [
        ("x+1", 1), ("x+3", 1), ("x+5", 1)]
    assert deuring_poly(5) == FpPoly([1, 4, 1], 5)
    with pytest.raises(ValueError):
        deuring_poly(4)


def test_supersingular_param_goldens():
    assert supersingular_param(5) == 1
    assert supersingular_param(7) == 5
    assert supersingular_param(11) == 1
    assert supersingular_param(13) == 3
    with pytest.raises(ValueError):
        supersingular_param(3)


def test_supersingular_param_divides_deuring():
    for ell in (5, 7, 11, 13, 17, 19, 23, 29):
        a = supersingular_param(ell)
        assert FpPoly([a, ell - 1, 1], ell).divides(deuring_poly(ell))


def test_quartic_pattern_exhaustive_f3_f5():
    # every monic quartic, against the independent oracle in conftest
    for p in (3, 5):
        for tail in itertools.product(range(p), repeat=4):
            f = list(tail) + [1]
            assert quartic_factor_pattern(FpPoly(f, p)) == oracle_factor_pattern(f, p)


def test_quartic_pattern_handles_nonmonic_and_rejects_wrong_degree():
    assert quartic_factor_pattern(FpPoly([2, 2, 6, 2, 2], 7)) == [1, 1, 2]
    with pytest.raises(DegreeMismatch):
        quartic_factor_pattern(FpPoly([1, 1], 7))


def test_factor_small_multiplicity_and_order():
    f = FpPoly([1, 1], 3) * FpPoly([1, 1], 3) * FpPoly([1, 0, 1], 3)
    assert [(str(g), m) for g, m in factor_small(f)] == [("x+1", 2), ("x^2+1", 1)]
