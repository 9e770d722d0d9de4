"""Independent re-verification of certificates and curves.

Everything here recomputes from first principles using only the arithmetic
layers (arith, finitefield, igusa, hypercurve, sympgroup); nothing is taken
from the selection or synthesis code, so a verified certificate does not
depend on how it was produced.  Certificates are accepted by attribute shape,
not by type.
"""
from __future__ import annotations

from dataclasses import dataclass

from .arith import factorize, is_prime
from .errors import GspForgeError, MultiplierNotOne
from .finitefield import FpPoly, deuring_poly, quartic_factor_pattern, supersingular_param
from .hypercurve import (HyperCurve, count_points, frobenius_data, reduce_curve,
                         weil_admissible)
from .igusa import (MOD3_PATTERN, MOD16_PATTERN, MOD25_PATTERN, classify_reduction,
                    reduction_guards)
from .sympgroup import CharPolyQuartic, gsp_order, pair_conditions

_X6_PLUS_1 = (1, 0, 0, 0, 0, 0, 1)

# fixed ell = 5 instance: model, its symmetric 5-adic approximation, the two
# large conductor primes, and Frobenius data at 19
ELL5_CURVE = HyperCurve((1, 0, 391300, 1170, 1300, 0, 1))
ELL5_SYMMETRIC = (1, 0, 1300, 1170, 1300, 0, 1)
ELL5_BIG_PRIMES = (27792683, 195476205803858674906021)
_ELL5_Q = 19
_ELL5_COUNTS = (22, 410)


@dataclass(frozen=True)
class CheckRow:
    name: str
    status: str  # "pass" | "fail" | "skip"
    detail: str = ""


@dataclass(frozen=True)
class CheckReport:
    rows: tuple[CheckRow, ...]

    @property
    def overall(self) -> bool:
        return all(r.status != "fail" for r in self.rows)

    def failed(self) -> list[CheckRow]:
        return [r for r in self.rows if r.status == "fail"]

    def row(self, name: str) -> CheckRow:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)


class _Rows:
    """Collector that turns exceptions in a check into a fail row."""

    def __init__(self):
        self.rows: list[CheckRow] = []

    def add(self, name: str, ok: bool, detail: str = ""):
        self.rows.append(CheckRow(name, "pass" if ok else "fail", detail))

    def skip(self, name: str, detail: str = ""):
        self.rows.append(CheckRow(name, "skip", detail))

    def run(self, name: str, fn):
        try:
            out = fn()
        except (GspForgeError, ValueError, ZeroDivisionError) as e:
            self.add(name, False, f"{type(e).__name__}: {e}")
            return None
        ok, detail = out if isinstance(out, tuple) else (out, "")
        self.add(name, bool(ok), detail)
        return ok

    def report(self) -> CheckReport:
        return CheckReport(tuple(self.rows))


def _family_poly(ell: int, lift: int) -> FpPoly:
    return FpPoly([1, 0, lift % ell, 0, lift % ell, 0, 1], ell)


def verify_certificate(cert) -> CheckReport:
    """Re-check every claim of a certificate (shape: synth.Certificate)."""
    rows = _Rows()
    ell = cert.ell
    rows.add("ell-prime", ell >= 7 and is_prime(ell), f"ell = {ell}")
    if not (ell >= 7 and is_prime(ell)):
        return rows.report()

    quad = FpPoly([cert.a % ell, ell - 1, 1], ell)  # x^2 - x + a
    rows.run("supersingular-divisor",
             lambda: (0 < cert.a < ell and quad.divides(deuring_poly(ell)),
                      f"x^2-x+{cert.a} | H_{ell}"))
    lift = (1 - cert.a) * pow(cert.a, -1, ell) % ell
    rows.add("supersingular-lift", cert.lift == lift, f"lift = {lift}")

    order = gsp_order(2, ell)
    fact = factorize(order)
    rows.add("group-order",
             cert.group_order == order
             and cert.group_order_factorization == str(fact)
             and tuple(cert.prime_set) == fact.primes,
             str(fact))

    rows.add("aux-primes",
             is_prime(cert.q1) and is_prime(cert.q2) and cert.q1 != cert.q2
             and cert.q1 % ell == 1 and cert.q2 % ell == 1
             and cert.q1 not in fact.primes and cert.q2 not in fact.primes,
             f"q1 = {cert.q1}, q2 = {cert.q2}")

    weils = []
    for i, (w, q, b) in enumerate(zip(cert.witnesses, (cert.q1, cert.q2),
                                      (cert.b1, cert.b2)), start=1):
        def counts_check(w=w, q=q, b=b):
            poly = FpPoly(list(reversed(w.coeffs)), q)
            if w.q != q or poly.degree != 6 or not poly.is_squarefree():
                return False, "not a squarefree sextic over the stated field"
            n1, n2 = count_points(poly)
            if (n1, n2) != (w.n1, w.n2):
                return False, f"recount gives ({n1}, {n2})"
            wd = frobenius_data(q, n1, n2)
            weils.append(wd)
            return (wd.a, wd.b) == (1, b), f"(a, b) = ({wd.a}, {wd.b})"

        before = len(weils)
        rows.run(f"witness-{i}-counts", counts_check)
        wd = weils[before] if len(weils) > before else None
        if wd is None:
            weils.append(None)
            rows.add(f"witness-{i}-admissible", False, "no Frobenius data")
        else:
            adm = weil_admissible(q, wd.a, wd.b)
            rows.add(f"witness-{i}-admissible", adm.all_pass, repr(adm))

    def charpoly_check():
        if None in weils[:2]:
            raise MultiplierNotOne("missing witness Frobenius data")
        p1 = CharPolyQuartic.from_weil(weils[0], ell)
        p2 = CharPolyQuartic.from_weil(weils[1], ell)
        return pair_conditions(p1, p2)

    try:
        pc = charpoly_check()
        rows.add("charpoly-mixed-condition", pc.cond_mixed,
                 "trace disc is a nonresidue and the trace is nonzero mod ell")
        rows.add("charpoly-split-condition", pc.cond_split,
                 "trace disc is a nonzero square and some eigenvalue of P2 "
                 "lies outside F_ell")
    except GspForgeError as e:
        rows.add("charpoly-mixed-condition", False, str(e))
        rows.add("charpoly-split-condition", False, str(e))

    residual = tuple(sorted(set(fact.primes) - {2, 3, 5, ell}))
    expected_moduli = (16, 3, 25, ell ** 4, cert.q1, cert.q2) + residual
    moduli = tuple(m for m, _ in cert.rows)
    prod = 1
    for m in moduli:
        prod *= m
    rows.add("congruence-moduli",
             moduli == expected_moduli and cert.modulus_product == prod,
             f"moduli = {moduli}")

    def rows_check():
        got = dict(cert.rows)
        want = {16: MOD16_PATTERN, 3: MOD3_PATTERN, 25: MOD25_PATTERN,
                ell ** 4: (1, 0, cert.lift, 0, cert.lift, 0, 1),
                cert.q1: cert.witnesses[0].coeffs,
                cert.q2: cert.witnesses[1].coeffs}
        want.update({p: _X6_PLUS_1 for p in residual})
        return got == want
    rows.run("congruence-rows", rows_check)

    coeffs = cert.curve.coeffs
    rows.add("curve-congruences",
             all(tuple(c % m for c in coeffs) == tuple(r % m for r in row)
                 for m, row in cert.rows))
    rows.run("curve-smooth", lambda: cert.curve.discriminant != 0)

    def guards_check():
        g = reduction_guards(coeffs, ell, cert.a)
        return g.all_pass, "; ".join(g.failed()) or "all rows hold"
    rows.run("tame-guards", guards_check)

    rows.run("reduction-at-ell",
             lambda: (reduce_curve(cert.curve, ell) == _family_poly(ell, cert.lift),
                      "good reduction onto the supersingular family member"))

    def type5_check():
        r = classify_reduction(coeffs, 5)
        return r.kind == "typeII" and r.e == 1, f"classified {r.kind}, e = {r.e}"
    rows.run("type-ii-at-5", type5_check)

    if residual:
        def residual_check():
            for p in residual:
                if reduce_curve(cert.curve, p) != FpPoly([1, 0, 0, 0, 0, 0, 1], p):
                    return False, f"reduction mod {p} is not x^6 + 1"
            return True, f"x^6 + 1 at {', '.join(map(str, residual))}"
        rows.run("residual-reduction", residual_check)
    else:
        rows.skip("residual-reduction", "no residual primes for this ell")

    return rows.report()


def diagnose_curve(curve: HyperCurve, ell: int, a: int | None = None,
                   q1: int | None = None, q2: int | None = None) -> CheckReport:
    """Granular congruence diagnostics for a bare curve, one row per check.

    q1 and q2, when supplied, add the reduction, admissibility and charpoly
    blocks at those primes.
    """
    rows = _Rows()
    if a is None:
        a = supersingular_param(ell)
    rows.run("curve-smooth", lambda: curve.discriminant != 0)
    for name, ok in reduction_guards(curve.coeffs, ell, a).rows:
        rows.add(name, ok)

    weils = {}
    for q in (q1, q2):
        if q is None:
            continue

        def reduction_check(q=q):
            poly = reduce_curve(curve, q)
            n1, n2 = count_points(poly)
            weils[q] = frobenius_data(q, n1, n2)
            return True, f"counts ({n1}, {n2})"

        rows.run(f"mod{q}:reduction", reduction_check)
        if q in weils:
            w = weils[q]
            adm = weil_admissible(q, w.a, w.b)
            rows.add(f"mod{q}:admissible", adm.all_pass,
                     f"(a, b) = ({w.a}, {w.b})")
        else:
            rows.skip(f"mod{q}:admissible", "no reduction data")

    if q1 in weils and q2 in weils:
        def pair_check():
            pc = pair_conditions(CharPolyQuartic.from_weil(weils[q1], ell),
                                 CharPolyQuartic.from_weil(weils[q2], ell))
            return pc
        try:
            pc = pair_check()
            rows.add("charpoly-mixed-condition", pc.cond_mixed)
            rows.add("charpoly-split-condition", pc.cond_split)
        except GspForgeError as e:
            rows.add("charpoly-mixed-condition", False, str(e))
            rows.add("charpoly-split-condition", False, str(e))
    elif q1 is not None and q2 is not None:
        rows.skip("charpoly-mixed-condition", "missing reduction data")
        rows.skip("charpoly-split-condition", "missing reduction data")

    return rows.report()


def verify_ell5(curve: HyperCurve | None = None) -> CheckReport:
    """Check the fixed ell = 5 witness model (or a candidate replacement).

    The published model has good supersingular reduction at 5, is 5-adically
    congruent to a symmetric equation mod 5^4, is semistable at 2, has exactly
    two odd primes of bad reduction (both type II with e = 1), and its
    Frobenius at 19 has an irreducible characteristic polynomial mod 5.
    """
    if curve is None:
        curve = ELL5_CURVE
    rows = _Rows()
    rows.add("matches-published-model", curve.coeffs == ELL5_CURVE.coeffs,
             ELL5_CURVE.to_text())
    rows.run("curve-smooth", lambda: curve.discriminant != 0)

    coeffs = curve.coeffs
    rows.add("mod16-pattern",
             all(c % 16 == want for c, want in zip(coeffs, MOD16_PATTERN)),
             "semistable shape at 2")
    rows.add("mod625-symmetric",
             all((c - s) % 625 == 0 for c, s in zip(coeffs, ELL5_SYMMETRIC)),
             "congruent to the symmetric model mod 5^4")

    def ss_check():
        ok = supersingular_param(5) == 1
        red = reduce_curve(curve, 5)
        return ok and red == FpPoly([1, 0, 0, 0, 0, 0, 1], 5), str(red)
    rows.run("supersingular-at-5", ss_check)

    def odd_part_check():
        disc = curve.discriminant
        if disc == 0:
            return False, "discriminant vanishes"
        odd = abs(disc)
        while odd % 2 == 0:
            odd //= 2
        p1, p2 = ELL5_BIG_PRIMES
        return (odd == p1 * p2 and is_prime(p1) and is_prime(p2),
                "odd part is the product of the two conductor primes")
    rows.run("odd-part-of-discriminant", odd_part_check)

    for p in ELL5_BIG_PRIMES:
        def type2_check(p=p):
            r = classify_reduction(coeffs, p)
            return r.kind == "typeII" and r.e == 1, f"classified {r.kind}, e = {r.e}"
        rows.run(f"type-ii-at-{p}", type2_check)

    def frob_check():
        poly = reduce_curve(curve, _ELL5_Q)
        n1, n2 = count_points(poly)
        if (n1, n2) != _ELL5_COUNTS:
            return False, f"counts ({n1}, {n2}) over F_{_ELL5_Q}"
        w = frobenius_data(_ELL5_Q, n1, n2)
        pattern = quartic_factor_pattern(w.charpoly_mod(5))
        return pattern == [4], f"charpoly factor pattern {pattern} mod 5"
    rows.run("frobenius-at-19", frob_check)

    return rows.report()
