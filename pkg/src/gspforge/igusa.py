"""Igusa invariants of genus-2 sextics and reduction-type classification.

Sextics are passed leading-coefficient first, [f6, f5, ..., f0], matching the
curve text format used everywhere else in the package.  All arithmetic is
exact (int / Fraction).

The invariants come from classical covariant algebra: transvectants of the
binary sextic give the Clebsch covariants A, B, C, D, which convert to the
Igusa-Clebsch quadruple and then to the J-invariants.  The conversion
constants below were calibrated exactly against the root-difference-product
definitions evaluated at high precision, then frozen; the known rational
tuple for x^6+x^5+x^3+x+1 pins the whole chain.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import padic_valuation
from .errors import DegreeMismatch, MultipleRoot, NonIntegralExponent

# congruence patterns (f6, f5, f4, f3, f2, f1, f0) forcing tame behaviour at
# the small primes: semistable at 2, good at 3, type-II stable at 5
MOD16_PATTERN = (1, 0, 4, 2, 4, 0, 1)
MOD3_PATTERN = (1, 0, 1, 0, 1, 0, 1)
MOD25_PATTERN = (1, 1, 0, 1, 0, 1, 1)


# ---------------------------------------------------------------------------
# transvectants of binary forms; a form of order m is a list c[0..m] with
# f = sum c[s] x^s y^(m-s)

def _diff(form, m, i, j):
    out = [Fraction(0)] * (m - i - j + 1)
    for s, c in enumerate(form):
        if c == 0 or s < i or m - s < j:
            continue
        k = 1
        for t in range(i):
            k *= s - t
        for t in range(j):
            k *= m - s - t
        out[s - i] += c * k
    return out


def _form_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _transvectant(f, m, g, n, r):
    pre = Fraction(math.factorial(m - r) * math.factorial(n - r),
                   math.factorial(m) * math.factorial(n))
    out = [Fraction(0)] * (m + n - 2 * r + 1)
    for k in range(r + 1):
        prod = _form_mul(_diff(f, m, r - k, k), _diff(g, n, k, r - k))
        c = (-1) ** k * math.comb(r, k)
        for idx, v in enumerate(prod):
            out[idx] += c * v
    return [pre * v for v in out]


def _clebsch_covariants(ascending):
    f = [Fraction(c) for c in ascending]
    i_cov = _transvectant(f, 6, f, 6, 4)
    delta = _transvectant(i_cov, 4, i_cov, 4, 2)
    y1 = _transvectant(f, 6, i_cov, 4, 4)
    y2 = _transvectant(i_cov, 4, y1, 2, 2)
    y3 = _transvectant(i_cov, 4, y2, 2, 2)
    a = _transvectant(f, 6, f, 6, 6)[0]
    b = _transvectant(i_cov, 4, i_cov, 4, 4)[0]
    c = _transvectant(i_cov, 4, delta, 4, 4)[0]
    d = _transvectant(y3, 2, y1, 2, 2)[0]
    return a, b, c, d


def _check_sextic(f) -> list:
    if len(f) != 7:
        raise DegreeMismatch(f"expected 7 coefficients [f6..f0], got {len(f)}")
    if f[0] == 0:
        raise DegreeMismatch("leading coefficient is zero; not a sextic")
    return list(f)


def igusa_clebsch_invariants(f) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """(I2, I4, I6, I10) of the sextic f = [f6..f0]."""
    asc = list(reversed(_check_sextic(f)))
    a, b, c, d = _clebsch_covariants(asc)
    i2 = -120 * a
    i4 = -720 * a ** 2 + 6750 * b
    i6 = 8640 * a ** 3 - 108000 * a * b + 202500 * c
    i10 = (-62208 * a ** 5 + 972000 * a ** 3 * b + 1620000 * a ** 2 * c
           - 3037500 * a * b ** 2 - 6075000 * b * c - 4556250 * d)
    return i2, i4, i6, i10


@dataclass(frozen=True)
class IgusaTuple:
    j2: Fraction
    j4: Fraction
    j6: Fraction
    j8: Fraction
    j10: Fraction

    @property
    def i4(self) -> Fraction:
        return self.j2 ** 2 - 24 * self.j4

    @property
    def i12(self) -> Fraction:
        return (-8 * self.j4 ** 3 + 9 * self.j2 * self.j4 * self.j6
                - 27 * self.j6 ** 2 - self.j2 ** 2 * self.j8)

    def as_tuple(self):
        return (self.j2, self.j4, self.j6, self.j8, self.j10)


def igusa_invariants(f) -> IgusaTuple:
    """J2, J4, J6, J8, J10 of the sextic f = [f6..f0] (int or Fraction entries)."""
    i2, i4, i6, i10 = igusa_clebsch_invariants(f)
    j2 = i2 / 8
    j4 = (4 * j2 ** 2 - i4) / 96
    j6 = (8 * j2 ** 3 - 160 * j2 * j4 - i6) / 576
    j8 = (j2 * j6 - j4 ** 2) / 4
    j10 = i10 / 4096
    return IgusaTuple(j2, j4, j6, j8, j10)


# ---------------------------------------------------------------------------
# discriminants

def _bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(m)
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _resultant(a: list[int], b: list[int]) -> int:
    """Resultant of integer polynomials given leading-first, via Sylvester."""
    da, db = len(a) - 1, len(b) - 1
    n = da + db
    rows = []
    for i in range(db):
        rows.append([0] * i + a + [0] * (n - da - i))
    for i in range(da):
        rows.append([0] * i + b + [0] * (n - db - i))
    return _bareiss_det(rows)


def poly_discriminant(f) -> int | Fraction:
    """Standard discriminant of the sextic f = [f6..f0].

    disc = (-1)^15 Res(f, f') / f6; exact.  Integer input gives an int.
    Only the odd-prime content is meaningful to the reduction machinery; the
    power of 2 depends on which classical normalization of the genus-2
    equation discriminant one adopts.
    """
    fs = _check_sextic(f)
    if all(isinstance(c, int) for c in fs):
        fprime = [c * (6 - i) for i, c in enumerate(fs[:-1])]
        res = _resultant(fs, fprime)
        val = -res  # (-1)^(6*5/2) = -1
        q, r = divmod(val, fs[0])
        assert r == 0  # Res(f, f') is always divisible by the leading coefficient
        return q
    fr = [Fraction(c) for c in fs]
    lcm = 1
    for c in fr:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in fr]
    return Fraction(poly_discriminant(ints), lcm ** 10)


# ---------------------------------------------------------------------------
# reduction type at an odd prime, from valuations of the invariants

@dataclass(frozen=True)
class ReductionType:
    kind: str            # "good" | "typeII" | "other"
    e: int | None = None  # component order of the special fibre torus, type II only


def _val(x: Fraction, p: int) -> Fraction | None:
    # None plays the role of +infinity (invariant vanishes)
    if x == 0:
        return None
    return padic_valuation(x, p)


def classify_reduction(f, p: int) -> ReductionType:
    """Classify the reduction at odd p of y^2 = f(x): good, type II, or other.

    Good requires v_p(J_{2i}^5 / J10^i) >= 0 for i = 1..5; type II requires
    v_p(J_{2i}^6 / I12^i) >= 0 for i = 1..5 together with
    v_p(J10^6 / I12^5) > 0, in which case e = v_p(J10^6 / I12^5) / 6.
    """
    if p < 3:
        raise ValueError("classification applies at odd primes only")
    inv = igusa_invariants(f)
    if inv.j10 == 0:
        raise MultipleRoot("sextic has a repeated root; no smooth model")
    js = (inv.j2, inv.j4, inv.j6, inv.j8, inv.j10)
    v10 = padic_valuation(inv.j10, p)
    if all(v is None or 5 * v - i * v10 >= 0
           for i, v in ((i, _val(js[i - 1], p)) for i in range(1, 6))):
        return ReductionType("good")
    i12 = inv.i12
    if i12 != 0:
        v12 = padic_valuation(i12, p)
        ok = all(v is None or 6 * v - i * v12 >= 0
                 for i, v in ((i, _val(js[i - 1], p)) for i in range(1, 6)))
        t = 6 * v10 - 5 * v12
        if ok and t > 0:
            if t % 6 != 0:
                raise NonIntegralExponent(
                    f"v_p(J10^6/I12^5) = {t} is not a multiple of 6 at p={p}")
            return ReductionType("typeII", e=t // 6)
    return ReductionType("other")


# ---------------------------------------------------------------------------
# congruence guards: each named check is one row of the certificate

@dataclass(frozen=True)
class GuardReport:
    rows: tuple[tuple[str, bool], ...]

    @property
    def all_pass(self) -> bool:
        return all(ok for _, ok in self.rows)

    def failed(self) -> list[str]:
        return [name for name, ok in self.rows if not ok]

    def passed(self) -> list[str]:
        return [name for name, ok in self.rows if ok]


_NAMES = ("f6", "f5", "f4", "f3", "f2", "f1", "f0")


def _pattern_rows(f, modulus: int, pattern) -> list[tuple[str, bool]]:
    return [(f"mod{modulus}:{name}", c % modulus == want)
            for name, c, want in zip(_NAMES, f, pattern)]


def reduction_guards(f, ell: int, a: int) -> GuardReport:
    """Check the congruences that force tame ramification for the sextic f.

    Rows: the mod-16, mod-3, mod-25 patterns, the paired coefficients mod
    ell^4 (f6=f0, f5=f1, f4=f2), and the mod-ell values f6=1, f5=0,
    f4=(1-a)/a, f3=0 with a the supersingular parameter.
    """
    fs = _check_sextic(f)
    rows = []
    rows += _pattern_rows(fs, 16, MOD16_PATTERN)
    rows += _pattern_rows(fs, 3, MOD3_PATTERN)
    rows += _pattern_rows(fs, 25, MOD25_PATTERN)
    e4 = ell ** 4
    rows.append((f"mod{e4}:f6=f0", (fs[0] - fs[6]) % e4 == 0))
    rows.append((f"mod{e4}:f5=f1", (fs[1] - fs[5]) % e4 == 0))
    rows.append((f"mod{e4}:f4=f2", (fs[2] - fs[4]) % e4 == 0))
    lam = (1 - a) * pow(a, -1, ell) % ell
    rows.append((f"mod{ell}:f6", fs[0] % ell == 1))
    rows.append((f"mod{ell}:f5", fs[1] % ell == 0))
    rows.append((f"mod{ell}:f4", fs[2] % ell == lam))
    rows.append((f"mod{ell}:f3", fs[3] % ell == 0))
    return GuardReport(tuple(rows))
