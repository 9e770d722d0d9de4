"""Prime fields F_p, their quadratic extensions, and small-degree polynomial work.

Elements of F_p are plain ints in [0, p); elements of F_{p^2} are (c0, c1)
pairs meaning c0 + c1*t with t^2 = ns for the least positive nonresidue ns.
Polynomials carry their coefficients lowest-degree first with no trailing
zeros, mirroring how the rest of the package orders things.
"""
from __future__ import annotations

import math
from functools import lru_cache

from .errors import DegreeMismatch, NoSupersingularParam


class PrimeField:
    """Context object for F_p, p an odd prime (p = 2 is allowed for basics)."""

    def __init__(self, p: int):
        if p < 2:
            raise ValueError(f"field characteristic must be prime, got {p}")
        self.p = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def char(self, x: int) -> int:
        """Quadratic character: 1 for nonzero squares, -1 for nonsquares, 0 for 0."""
        x %= self.p
        if x == 0:
            return 0
        if self.p == 2:
            return 1
        r = pow(x, (self.p - 1) // 2, self.p)
        return 1 if r == 1 else -1

    def least_nonresidue(self) -> int:
        if self.p == 2:
            raise ValueError("F_2 has no quadratic nonresidue")
        n = 2
        while self.char(n) != -1:
            n += 1
        return n

    def inv(self, x: int) -> int:
        return pow(x % self.p, -1, self.p)


class QuadExt:
    """F_{p^2} = F_p[t] / (t^2 - ns) with ns the least positive nonresidue."""

    def __init__(self, p: int):
        self.p = p
        self.base = PrimeField(p)
        self.ns = self.base.least_nonresidue()

    def __repr__(self):
        return f"QuadExt({self.p}; t^2={self.ns})"

    def mul(self, a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        p, ns = self.p, self.ns
        return ((a[0] * b[0] + ns * a[1] * b[1]) % p,
                (a[0] * b[1] + a[1] * b[0]) % p)

    def pow(self, a: tuple[int, int], e: int) -> tuple[int, int]:
        r = (1, 0)
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def char(self, x: tuple[int, int]) -> int:
        if x == (0, 0):
            return 0
        r = self.pow(x, (self.p * self.p - 1) // 2)
        return 1 if r == (1, 0) else -1


def quadratic_character(x, field) -> int:
    """Dispatch to the field's character; x is an int in F_p or a pair in F_{p^2}."""
    return field.char(x)


class FpPoly:
    """Polynomial over F_p, coefficients lowest-degree first, trailing zeros stripped."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs, p: int):
        self.p = p
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, FpPoly) and self.p == other.p
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"FpPoly({list(self.coeffs)}, p={self.p})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                x = "x" if i == 1 else f"x^{i}"
                parts.append(x if c == 1 else f"{c}{x}")
        return "+".join(parts)

    def __add__(self, other):
        self._match(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return FpPoly([x + y for x, y in zip(a, b)], self.p)

    def __sub__(self, other):
        self._match(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return FpPoly([x - y for x, y in zip(a, b)], self.p)

    def __mul__(self, other):
        if isinstance(other, int):
            return FpPoly([c * other for c in self.coeffs], self.p)
        self._match(other)
        if self.is_zero() or other.is_zero():
            return FpPoly([], self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = (out[i + j] + a * b) % self.p
        return FpPoly(out, self.p)

    __rmul__ = __mul__

    def _match(self, other):
        if not isinstance(other, FpPoly) or other.p != self.p:
            raise ValueError("operands live over different fields")

    def divmod(self, other: "FpPoly") -> tuple["FpPoly", "FpPoly"]:
        self._match(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        dv = other.coeffs
        dd = other.degree
        inv_lead = pow(dv[-1], -1, p)
        q = [0] * max(len(rem) - dd, 0)
        for i in range(len(rem) - dd - 1, -1, -1):
            c = rem[i + dd] * inv_lead % p
            if c:
                q[i] = c
                for j, d in enumerate(dv):
                    rem[i + j] = (rem[i + j] - c * d) % p
        return FpPoly(q, p), FpPoly(rem[:dd], p)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def divides(self, other: "FpPoly") -> bool:
        return (other % self).is_zero()

    def monic(self) -> "FpPoly":
        if self.is_zero():
            return self
        return self * pow(self.coeffs[-1], -1, self.p)

    def gcd(self, other: "FpPoly") -> "FpPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def derivative(self) -> "FpPoly":
        return FpPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.p)

    def eval(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def is_squarefree(self) -> bool:
        if self.degree < 1:
            return not self.is_zero()
        return self.gcd(self.derivative()).degree == 0

    def roots(self) -> list[int]:
        """Distinct roots in F_p by direct scan (fields here are small)."""
        return [x for x in range(self.p) if self.eval(x) == 0]


def deuring_poly(ell: int) -> FpPoly:
    """sum_{j<=m} C(m,j)^2 x^j over F_ell, m = (ell-1)/2.

    The roots in characteristic ell are exactly the Legendre-form parameters
    of supersingular elliptic curves, which is what supersingular_param mines.
    """
    if ell < 3 or ell % 2 == 0:
        raise ValueError(f"need an odd prime, got {ell}")
    m = (ell - 1) // 2
    coeffs = [pow(math.comb(m, j), 2, ell) for j in range(m + 1)]
    return FpPoly(coeffs, ell)


@lru_cache(maxsize=None)
def supersingular_param(ell: int) -> int:
    """Least a in F_ell with x^2 - x + a dividing the Deuring polynomial.

    Cross-validated by an actual point count: y^2 = x^3 + c*x^2 + c*x + 1
    with c = (1-a)/a must have exactly ell + 1 points over F_ell.
    """
    if ell < 5:
        raise ValueError(f"need a prime >= 5, got {ell}")
    h = deuring_poly(ell)
    field = PrimeField(ell)
    for a in range(ell):
        probe = FpPoly([a, ell - 1, 1], ell)  # x^2 - x + a
        if not probe.divides(h):
            continue
        if a != 0:
            c = (1 - a) * field.inv(a) % ell
            cubic = FpPoly([1, c, c, 1], ell)
            count = 1 + sum(1 + field.char(cubic.eval(x)) for x in range(ell))
            if count != ell + 1:
                raise NoSupersingularParam(
                    f"a={a} divides the Deuring polynomial but the curve count "
                    f"is {count}, not {ell + 1}")
        return a
    raise NoSupersingularParam(f"no parameter found for ell={ell}")


def quartic_factor_pattern(poly: FpPoly) -> list[int]:
    """Degrees of irreducible factors of a quartic over F_p, with multiplicity.

    Returned ascending, e.g. [1, 1, 2] or [4].  Raises DegreeMismatch unless
    deg = 4.  Scan-based: the fields in play stay small.
    """
    if poly.degree != 4:
        raise DegreeMismatch(f"expected a quartic, got degree {poly.degree}")
    return sorted(_factor_degrees(poly.monic()))


def _factor_degrees(poly: FpPoly) -> list[int]:
    p = poly.p
    out = []
    # strip linear factors with multiplicity
    for r in range(p):
        while poly.degree >= 1 and poly.eval(r) == 0:
            poly = poly // FpPoly([-r, 1], p)
            out.append(1)
    # strip irreducible quadratics (any quadratic factor of a root-free poly
    # is irreducible)
    b = 0
    while poly.degree >= 2 and b < p:
        c = 0
        while poly.degree >= 2 and c < p:
            q = FpPoly([c, b, 1], p)
            _, rem = poly.divmod(q)
            if rem.is_zero():
                poly = poly // q
                out.append(2)
            else:
                c += 1
        b += 1
    if poly.degree > 0:
        out.append(poly.degree)  # root-free, quadratic-free: irreducible here
    return out


def factor_small(poly: FpPoly) -> list[tuple[FpPoly, int]]:
    """Factor into monic irreducibles, for polynomials whose factors have
    degree at most 2 plus at most one bigger irreducible cofactor.

    Covers the Deuring polynomial (linear and quadratic factors only) and the
    quartics this package inspects.  Returns (factor, multiplicity) pairs
    ordered by degree then coefficients.
    """
    p = poly.p
    work = poly.monic()
    found: dict[FpPoly, int] = {}
    for r in range(p):
        lin = FpPoly([-r, 1], p)
        while work.degree >= 1 and work.eval(r) == 0:
            work = work // lin
            found[lin] = found.get(lin, 0) + 1
    b = 0
    while work.degree >= 2 and b < p:
        c = 0
        while work.degree >= 2 and c < p:
            q = FpPoly([c, b, 1], p)
            quo, rem = work.divmod(q)
            if rem.is_zero():
                work = quo
                found[q] = found.get(q, 0) + 1
            else:
                c += 1
        b += 1
    if work.degree > 0:
        found[work] = found.get(work, 0) + 1
    return sorted(found.items(), key=lambda kv: (kv[0].degree, kv[0].coeffs))
