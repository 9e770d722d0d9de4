"""Integer models y^2 = f(x) of genus-2 curves, reduction and point counting.

Coefficients are ordered leading-first, (f6, ..., f0), with the wire format
"g2:v1:[f6,f5,f4,f3,f2,f1,f0]".  Counts over F_q and F_{q^2} go through the
kernels layer; the Frobenius data (a, b) comes back out exactly.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from . import kernels
from .arith import is_perfect_square
from .errors import BadReduction, DegenerateLeading, ParityViolation, SingularCurve
from .finitefield import FpPoly, PrimeField
from .igusa import poly_discriminant

_G2_RE = re.compile(r"^g2:v1:\[(-?\d+(?:,-?\d+){6})\]$")


@dataclass(frozen=True)
class HyperCurve:
    """y^2 = f6 x^6 + ... + f0 over Q, integer coefficients, f6 != 0."""
    coeffs: tuple[int, int, int, int, int, int, int]

    def __post_init__(self):
        if len(self.coeffs) != 7:
            raise ValueError("need 7 coefficients (f6..f0)")
        if self.coeffs[0] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @cached_property
    def discriminant(self) -> int:
        return poly_discriminant(self.coeffs)

    def is_smooth(self) -> bool:
        return self.discriminant != 0

    def to_text(self) -> str:
        return "g2:v1:[" + ",".join(str(c) for c in self.coeffs) + "]"

    @classmethod
    def from_text(cls, text: str) -> "HyperCurve":
        m = _G2_RE.match(text.strip())
        if not m:
            raise ValueError(f"not a g2:v1 curve string: {text!r}")
        return cls(tuple(int(v) for v in m.group(1).split(",")))

    def __str__(self):
        names = ("x^6", "x^5", "x^4", "x^3", "x^2", "x", "")
        parts = []
        for c, n in zip(self.coeffs, names):
            if c == 0:
                continue
            mag = f"{abs(c)}{n}" if (abs(c) != 1 or not n) else (n or "1")
            parts.append(("-" if c < 0 else "+") + mag)
        body = "".join(parts).lstrip("+") or "0"
        return f"y^2 = {body}"


def reduce_curve(curve: HyperCurve, p: int) -> FpPoly:
    """Reduce the sextic mod p; the result must still define a genus-2 curve.

    DegenerateLeading when p divides f6 (degree drops), BadReduction when the
    reduced sextic has a repeated root.
    """
    if p < 3:
        raise ValueError("reduction implemented at odd primes only")
    if curve.coeffs[0] % p == 0:
        raise DegenerateLeading(f"f6 = {curve.coeffs[0]} vanishes mod {p}")
    poly = FpPoly(list(reversed([c % p for c in curve.coeffs])), p)
    if not poly.is_squarefree():
        raise BadReduction(f"repeated root mod {p}")
    return poly


def count_points(poly: FpPoly) -> tuple[int, int]:
    """(#C(F_q), #C(F_{q^2})) for the smooth model of y^2 = f(x), deg f = 6.

    Affine points plus two points at infinity when the leading coefficient is
    a square in the relevant field (it always is over F_{q^2}).
    """
    q = poly.p
    if q < 3:
        raise ValueError("odd characteristic only")
    if poly.degree != 6:
        raise SingularCurve(f"degree {poly.degree} != 6; not in sextic form")
    if not poly.is_squarefree():
        raise SingularCurve("sextic has a repeated root; curve is singular")
    desc = list(reversed(poly.coeffs))
    field = PrimeField(q)
    s1 = kernels.char_sum_fq(desc, q)
    n1 = q + 1 + s1 + field.char(desc[0])
    s2 = kernels.char_sum_fq2(desc, q)
    n2 = q * q + 1 + s2 + 1  # f6 != 0 is always a square in F_{q^2}
    return n1, n2


@dataclass(frozen=True)
class WeilData:
    """Frobenius data of a genus-2 curve over F_q.

    The characteristic polynomial of Frobenius is
    X^4 + a X^3 + b X^2 + a q X + q^2.
    """
    q: int
    n1: int
    n2: int
    a: int
    b: int

    def charpoly(self) -> tuple[int, int, int, int, int]:
        return (1, self.a, self.b, self.a * self.q, self.q * self.q)

    def charpoly_mod(self, ell: int) -> FpPoly:
        one, a, b, aq, q2 = self.charpoly()
        return FpPoly([q2, aq, b, a, one], ell)


def frobenius_data(q: int, n1: int, n2: int) -> WeilData:
    """Recover (a, b) from the two point counts.

    a = N1 - q - 1 and N2 = q^2 + 1 + 2b - a^2; a parity obstruction in the
    second equation means the counts cannot come from one curve.
    """
    a = n1 - q - 1
    num = n2 - q * q - 1 + a * a
    if num % 2 != 0:
        raise ParityViolation(f"counts ({n1}, {n2}) over F_{q} have no integral b")
    return WeilData(q=q, n1=n1, n2=n2, a=a, b=num // 2)


def trace_disc(a: int, b: int, m: int) -> int:
    """Discriminant a^2 - 4b + 8m of X^2 + aX + (b - 2m).

    The roots of that quadratic are the two sums alpha + m/alpha of paired
    Frobenius eigenvalues, so its splitting controls how the quartic factors.
    """
    return a * a - 4 * b + 8 * m


@dataclass(frozen=True)
class WeilAdmissibility:
    """Per-condition report on (q, a, b) as genus-2 Frobenius data."""
    q: int
    a: int
    b: int
    bound_a: bool           # a^2 <= 16q
    bound_b_lower: bool     # 2|a|sqrt(q) - 2q <= b
    bound_b_upper: bool     # b <= a^2/4 + 2q
    delta_not_square: bool  # a^2 - 4b + 8q is not a square in Z
    b_coprime: bool         # q does not divide b
    a2_excluded: bool       # a^2 not in {0, q+b, 2b, 3(b-q)}

    @property
    def all_pass(self) -> bool:
        return (self.bound_a and self.bound_b_lower and self.bound_b_upper
                and self.delta_not_square and self.b_coprime and self.a2_excluded)


def weil_admissible(q: int, a: int, b: int) -> WeilAdmissibility:
    """Exact-integer checks that X^4+aX^3+bX^2+aqX+q^2 belongs to a simple
    abelian surface with a genus-2 curve behind it."""
    lower = b + 2 * q >= 0 and (b + 2 * q) ** 2 >= 4 * a * a * q
    return WeilAdmissibility(
        q=q, a=a, b=b,
        bound_a=a * a <= 16 * q,
        bound_b_lower=lower,
        bound_b_upper=4 * b <= a * a + 8 * q,
        delta_not_square=is_perfect_square(trace_disc(a, b, q)) is None,
        b_coprime=b % q != 0,
        a2_excluded=a * a not in (0, q + b, 2 * b, 3 * (b - q)),
    )
