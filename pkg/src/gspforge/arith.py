"""Exact integer and rational arithmetic primitives.

Everything here works on Python ints and fractions.Fraction; no floats enter
any code path.  These are the base routines the rest of the package trusts
for certificates, so correctness beats speed throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import FactorizationTimeout, NonCoprimeModuli, ZeroInput

# Deterministic Miller-Rabin with the first 13 primes is a proof of primality
# for n < 3317044064679887385961981 (~3.3e24).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981


def bezout(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y == g == gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def crt_solve(congruences: list[tuple[int, int]]) -> tuple[int, int]:
    """Solve x = r_i (mod m_i) for pairwise coprime m_i > 0.

    Returns (x, M) with 0 <= x < M = prod(m_i).  Raises NonCoprimeModuli
    naming an offending pair when the moduli share a factor.
    """
    if not congruences:
        return 0, 1
    for m in (m for _, m in congruences):
        if m <= 0:
            raise ValueError(f"modulus must be positive, got {m}")
    moduli = [m for _, m in congruences]
    for i in range(len(moduli)):
        for j in range(i + 1, len(moduli)):
            if math.gcd(moduli[i], moduli[j]) != 1:
                raise NonCoprimeModuli(moduli[i], moduli[j])
    x, m = congruences[0]
    x %= m
    for r, n in congruences[1:]:
        # x + m*t = r (mod n)  =>  t = (r - x) * m^{-1} (mod n)
        g, inv, _ = bezout(m, n)
        t = ((r - x) * inv) % n
        x += m * t
        m *= n
    return x % m, m


def is_perfect_square(n: int) -> int | None:
    """Return the nonnegative square root when n is a perfect square, else None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def padic_valuation(x: int | Fraction, p: int) -> int:
    """p-adic valuation of a nonzero integer or rational; negative for denominators."""
    if p < 2:
        raise ValueError(f"p must be at least 2, got {p}")
    if x == 0:
        raise ZeroInput("valuation of zero is undefined")
    if isinstance(x, Fraction):
        return _int_val(x.numerator, p) - _int_val(x.denominator, p)
    return _int_val(int(x), p)


def _int_val(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, certified for n below 3.3e24."""
    if n >= _MR_LIMIT:
        raise ValueError(f"{n} exceeds the certified Miller-Rabin range")
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of a nonzero integer: value = sign * prod(p^e)."""
    value: int
    sign: int
    factors: tuple[tuple[int, int], ...]  # (prime, exponent), primes ascending

    def __str__(self) -> str:
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        body = " * ".join(parts) if parts else "1"
        return ("-" if self.sign < 0 else "") + body

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def check(self) -> bool:
        acc = self.sign
        for p, e in self.factors:
            acc *= p ** e
        return acc == self.value


def _rho_brent(n: int, budget: list[int]) -> int:
    """Find a nontrivial factor of composite odd n, charging iterations to budget."""
    if n % 2 == 0:
        return 2
    seed = 1
    while True:
        y, c, m = 2 + seed, 1 + seed * 2654435761 % (n - 1), 128
        g, r, q = 1, 1, 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                budget[0] -= min(m, r - k)
                if budget[0] < 0:
                    raise FactorizationTimeout(n, budget[1])
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                budget[0] -= 1
                if budget[0] < 0:
                    raise FactorizationTimeout(n, budget[1])
        if g != n:
            return g
        seed += 1  # rare cycle degeneracy: retry with a new constant


def factorize(n: int, budget: int = 10**8, hint_primes: tuple[int, ...] = ()) -> Factorization:
    """Full prime factorization by trial division plus Pollard rho.

    budget caps the total basic operations (trial divisions and rho steps);
    FactorizationTimeout reports the unfactored part when it runs out.
    hint_primes are tried first, useful when the caller already knows likely
    large factors.
    """
    if n == 0:
        raise ZeroInput("cannot factor zero")
    sign = -1 if n < 0 else 1
    m = abs(n)
    value = n
    found: dict[int, int] = {}
    spent = [budget, budget]  # [remaining, original] shared with rho

    for p in hint_primes:
        if p > 1 and is_prime(p):
            while m % p == 0:
                found[p] = found.get(p, 0) + 1
                m //= p

    # trial division by 2, 3 then a 2-3 wheel
    for p in (2, 3):
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    p, step = 5, 2
    while p * p <= m and p < 100000:
        spent[0] -= 1
        if spent[0] < 0:
            raise FactorizationTimeout(m, budget)
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
        p += step
        step = 6 - step
    # rho on whatever composite part is left
    stack = [m] if m > 1 else []
    while stack:
        c = stack.pop()
        if c == 1:
            continue
        if is_prime(c):
            found[c] = found.get(c, 0) + 1
            continue
        d = _rho_brent(c, spent)
        stack.append(d)
        stack.append(c // d)

    factors = tuple(sorted(found.items()))
    result = Factorization(value=value, sign=sign, factors=factors)
    assert result.check()
    return result


def no_square_triple(a: int, ell: int) -> bool:
    """True unless a, a - 4*ell and a - 8*ell are all perfect squares.

    For an odd prime ell this always holds (three squares cannot sit in
    arithmetic progression with common difference 4*ell); the selector in
    weilselect leans on it to guarantee an admissible lift within three tries.
    """
    return not (is_perfect_square(a) is not None
                and is_perfect_square(a - 4 * ell) is not None
                and is_perfect_square(a - 8 * ell) is not None)
