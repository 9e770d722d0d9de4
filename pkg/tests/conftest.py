"""Shared fixtures and independent oracles used by several test modules."""
import itertools

import pytest

from gspforge.synth import synthesize


@pytest.fixture(scope="session")
def cert7():
    # one full pipeline run shared by everything that inspects certificates
    return synthesize(7)


# --- independent quartic factorizer, used to cross-check the library's ---
# pattern code.  Polynomials are plain ascending coefficient lists; nothing
# here touches gspforge.

def _oracle_divmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1] * inv % p
        out[i] = c
        for j, bc in enumerate(b):
            a[i + j] = (a[i + j] - c * bc) % p
    return out, a[:len(b) - 1]


def _oracle_smallest_factor(f, p):
    # a smallest-degree monic factor is automatically irreducible
    d = len(f) - 1
    for deg in range(1, d):
        for tail in itertools.product(range(p), repeat=deg):
            g = list(tail) + [1]
            _, rem = _oracle_divmod(f, g, p)
            if not any(rem):
                return g
    return list(f)


def oracle_factor_pattern(f, p):
    """Irreducible factor degrees of f over F_p, ascending, with multiplicity."""
    f = [c % p for c in f]
    out = []
    while len(f) - 1 > 0:
        g = _oracle_smallest_factor(f, p)
        if len(g) == len(f):
            out.append(len(f) - 1)
            break
        out.append(len(g) - 1)
        f, _ = _oracle_divmod(f, g, p)
    return sorted(out)
