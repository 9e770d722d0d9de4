"""Symplectic 4x4 matrix arithmetic mod ell.

Matrices are tuples of 4 row tuples with entries reduced mod ell, acting on
column vectors.  The form is the block matrix J = [[0, I2], [-I2, 0]] in the
basis (e1, e2, f1, f2), so <e1, f1> = <e2, f2> = 1.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .errors import CapExceeded, MultiplierNotOne, NotSymplectic
from .finitefield import FpPoly, PrimeField, quartic_factor_pattern
from .hypercurve import WeilData

Matrix = tuple[tuple[int, ...], ...]

J_FORM: Matrix = ((0, 0, 1, 0),
                  (0, 0, 0, 1),
                  (-1, 0, 0, 0),
                  (0, -1, 0, 0))

DEFAULT_CLOSURE_CAP = 12_000_000


def mat_mod(m, ell: int) -> Matrix:
    return tuple(tuple(x % ell for x in row) for row in m)


def mat_identity() -> Matrix:
    return tuple(tuple(int(i == j) for j in range(4)) for i in range(4))


def mat_mul(a, b, ell: int) -> Matrix:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(4)) % ell
                       for j in range(4)) for i in range(4))


def mat_transpose(m) -> Matrix:
    return tuple(tuple(m[j][i] for j in range(4)) for i in range(4))


def mat_rank(m, ell: int) -> int:
    rows = [list(r) for r in mat_mod(m, ell)]
    rank = 0
    for col in range(4):
        piv = next((r for r in range(rank, 4) if rows[r][col] % ell), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, ell)
        rows[rank] = [x * inv % ell for x in rows[rank]]
        for r in range(4):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % ell for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def mat_inv(m, ell: int) -> Matrix:
    aug = [list(r) + [int(i == j) for j in range(4)]
           for i, r in enumerate(mat_mod(m, ell))]
    for col in range(4):
        piv = next((r for r in range(col, 4) if aug[r][col] % ell), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular mod ell")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, ell)
        aug[col] = [x * inv % ell for x in aug[col]]
        for r in range(4):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % ell for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[4:]) for row in aug)


def pack_matrix(m, ell: int) -> int:
    """Row-major base-ell packing, entry (r, c) at digit 4r + c."""
    key = 0
    for r in range(3, -1, -1):
        for c in range(3, -1, -1):
            key = key * ell + m[r][c] % ell
    return key


def unpack_matrix(key: int, ell: int) -> Matrix:
    rows = []
    for _ in range(4):
        row = []
        for _ in range(4):
            key, d = divmod(key, ell)
            row.append(d)
        rows.append(tuple(row))
    return tuple(rows)


def multiplier(m, ell: int) -> int:
    """The similitude factor c with M^T J M = c J; NotSymplectic otherwise."""
    m = mat_mod(m, ell)
    s = mat_mul(mat_mul(mat_transpose(m), mat_mod(J_FORM, ell), ell), m, ell)
    c = s[0][2]
    if c == 0 or s != mat_mod(tuple(tuple(c * x for x in row) for row in J_FORM), ell):
        raise NotSymplectic(f"M^T J M is not a nonzero multiple of J (got {s})")
    return c


def is_transvection(m, ell: int) -> bool:
    """True for M != I with (M - I)^2 = 0 and rank(M - I) = 1.

    M must lie in Sp4 proper: multiplier 1, else NotSymplectic.
    """
    if multiplier(m, ell) != 1:
        raise NotSymplectic("transvections require similitude factor 1")
    m = mat_mod(m, ell)
    ident = mat_identity()
    if m == ident:
        return False
    d = tuple(tuple((m[i][j] - ident[i][j]) % ell for j in range(4)) for i in range(4))
    if any(x % ell for row in mat_mul(d, d, ell) for x in row):
        return False
    return mat_rank(d, ell) == 1


def transvection(v, lam: int, ell: int) -> Matrix:
    """T(x) = x + lam * <x, v> v as a matrix: I + lam * outer(v, Jv)."""
    jv = [sum(J_FORM[i][k] * v[k] for k in range(4)) % ell for i in range(4)]
    return tuple(tuple((int(i == j) + lam * v[i] * jv[j]) % ell
                       for j in range(4)) for i in range(4))


def standard_generators(ell: int) -> list[Matrix]:
    """Transvections along a spanning family whose pairing graph is connected;
    their closure is all of Sp4(F_ell)."""
    family = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (0, 0, 1, 1))
    return [transvection(v, 1, ell) for v in family]


def closure(gens, ell: int, cap: int = DEFAULT_CLOSURE_CAP) -> int:
    """Size of the subgroup generated by gens, by breadth-first products.

    Raises CapExceeded as soon as the enumeration is known to pass cap.
    """
    if ell ** 16 >= 2 ** 63:
        raise ValueError(f"ell = {ell} exceeds the packed-key range (ell <= 13)")
    if not gens:
        return 1
    packed = [pack_matrix(g, ell) for g in gens]
    size, complete = kernels.closure_size(packed, ell, cap)
    if not complete:
        raise CapExceeded(f"subgroup has more than {cap} elements "
                          f"(reached {size} before stopping)")
    return size


def gsp_order(n: int, q: int) -> int:
    """Order of the symplectic similitude group of rank n over F_q."""
    order = (q - 1) * q ** (n * n)
    for j in range(1, n + 1):
        order *= q ** (2 * j) - 1
    return order


def sp_order(n: int, q: int) -> int:
    return gsp_order(n, q) // (q - 1)


def is_full_sp4(size: int, ell: int) -> bool:
    return size == sp_order(2, ell)


def mat_charpoly(m, ell: int) -> FpPoly:
    """Characteristic polynomial det(xI - M) over F_ell, monic quartic."""
    x_minus = [[FpPoly([-m[i][j] % ell, 1] if i == j else [-m[i][j] % ell], ell)
                for j in range(4)] for i in range(4)]

    def det(rows, cols):
        if len(cols) == 1:
            return x_minus[rows[0]][cols[0]]
        total = FpPoly([0], ell)
        for k, c in enumerate(cols):
            minor = det(rows[1:], cols[:k] + cols[k + 1:])
            term = x_minus[rows[0]][c] * minor
            total = total - term if k % 2 else total + term
        return total

    return det((0, 1, 2, 3), (0, 1, 2, 3))


@dataclass(frozen=True)
class CharPolyQuartic:
    """Frobenius charpoly X^4 + aX^3 + bX^2 + amX + m^2 reduced mod ell."""
    ell: int
    a: int
    b: int
    m: int

    @classmethod
    def from_weil(cls, w: WeilData, ell: int) -> "CharPolyQuartic":
        return cls(ell=ell, a=w.a % ell, b=w.b % ell, m=w.q % ell)

    def poly(self) -> FpPoly:
        return FpPoly([self.m * self.m, self.a * self.m, self.b, self.a, 1], self.ell)

    def trace_disc(self) -> int:
        return (self.a * self.a - 4 * self.b + 8 * self.m) % self.ell


@dataclass(frozen=True)
class PairConditions:
    """The two charpoly conditions that force a full symplectic image.

    Writing P(X) = X^4 + aX^3 + bX^2 + aX + 1 with eigenvalue pairs
    (alpha, 1/alpha), (beta, 1/beta): the mixed condition asks that the
    sums alpha + 1/alpha, beta + 1/beta lie outside F_ell (trace disc a
    nonresidue) with nonzero total trace; the split condition asks that
    those sums lie in F_ell and are distinct (trace disc a nonzero square)
    while some eigenvalue itself stays outside F_ell.
    """
    mixed_nonresidue: bool   # a1^2 - 4b1 + 8 is a nonresidue mod ell
    mixed_trace_nonzero: bool
    split_residue: bool      # a2^2 - 4b2 + 8 is a nonzero square mod ell
    split_eigen_outside: bool  # some root of P2 is not in F_ell

    @property
    def cond_mixed(self) -> bool:
        return self.mixed_nonresidue and self.mixed_trace_nonzero

    @property
    def cond_split(self) -> bool:
        return self.split_residue and self.split_eigen_outside

    @property
    def all_pass(self) -> bool:
        return self.cond_mixed and self.cond_split


def pair_conditions(p1: CharPolyQuartic, p2: CharPolyQuartic) -> PairConditions:
    """Evaluate the mixed condition on p1 and the split condition on p2.

    Both inputs must have multiplier 1 mod ell (Frobenius of a prime that
    splits completely in the ell-th cyclotomic field).
    """
    if p1.ell != p2.ell:
        raise ValueError("characteristic polynomials live over different ell")
    for p in (p1, p2):
        if p.m != 1:
            raise MultiplierNotOne(f"multiplier {p.m} != 1 mod {p.ell}")
    field = PrimeField(p1.ell)
    pattern = quartic_factor_pattern(p2.poly())
    return PairConditions(
        mixed_nonresidue=field.char(p1.trace_disc()) == -1,
        mixed_trace_nonzero=p1.a % p1.ell != 0,
        split_residue=field.char(p2.trace_disc()) == 1,
        split_eigen_outside=pattern[-1] >= 2,
    )
