"""The six-dimensional pullback model on divisor classes and its spectrum.

The pullback action on the symmetric slice of the divisor lattice, in the
ordered basis (H, R1, A, B, C, D), is an integer 6x6 matrix whose columns
are closed forms in q.  Its characteristic polynomial is divisible by
x^2 - (q^2-4q+2) x + 1, and the dominant-root claim is certified by exact
root isolation: Sturm counts for the real roots of the quotient factor and
rational modulus bounds (Cauchy, then a composed-product resultant refined
by bisection) for any complex ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UnsupportedQ
from .roots import (
    cauchy_bound,
    isolate_largest_real_root,
    isolate_real_roots,
    refine_interval,
    squarefree_part,
)
from .unipoly import UniPoly, QQ, q_divmod, q_trim

PIC_BASIS = ("H", "R1", "A", "B", "C", "D")

ISOLATION_WIDTH = Fraction(1, 10 ** 12)


@dataclass(frozen=True)
class PicVector:
    """Integer coordinates over the ordered basis (H, R1, A, B, C, D)."""
    h: int
    r1: int
    a: int
    b: int
    c: int
    d: int

    def as_tuple(self) -> tuple:
        return (self.h, self.r1, self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class L1Matrix:
    q: int
    rows: tuple                  # 6 rows of 6 ints; columns are images of basis vectors

    def column(self, j: int) -> tuple:
        return tuple(self.rows[i][j] for i in range(6))

    def apply(self, v: tuple) -> tuple:
        return tuple(sum(self.rows[i][j] * v[j] for j in range(6))
                     for i in range(6))


def l1_matrix(q: int) -> L1Matrix:
    """Pullback matrix on the symmetric divisor slice; closed form in q."""
    if q < 5:
        raise UnsupportedQ("the pullback model assumes q >= 5")
    cols = [
        (q * q - q + 1, -(q - 2), -(2 * q - 3), -(2 * q - 2), -(2 * q - 3), -(2 * q - 2)),
        (q * q - q, -(q - 1), -(2 * q - 3), -(2 * q - 2), -(2 * q - 3), -(2 * q - 2)),
        (q, 0, -1, -2, -2, -2),
        (0, 0, 1, 1, 0, 0),
        (q * q - q, 0, -(2 * q - 2), -(2 * q - 2), -(2 * q - 3), -(2 * q - 2)),
        (0, 0, 0, 0, 1, 1),
    ]
    rows = tuple(tuple(cols[j][i] for j in range(6)) for i in range(6))
    return L1Matrix(q, rows)


def char_poly(m: L1Matrix | tuple) -> list:
    """Monic characteristic polynomial, integer coefficients lowest first.

    Faddeev-LeVerrier over exact rationals; the cofactor-expansion oracle in
    the tests recomputes det(xI - M) independently.
    """
    rows = m.rows if isinstance(m, L1Matrix) else m
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    mk = [[Fraction(0)] * n for _ in range(n)]
    coeffs = [Fraction(1)]            # leading coefficient of x^n
    for k in range(1, n + 1):
        # M_k = A * (M_{k-1} + c_{n-k+1} I)
        work = [row[:] for row in mk]
        if k > 1:
            for i in range(n):
                work[i][i] += coeffs[-1]
            mk = [[sum(a[i][t] * work[t][j] for t in range(n)) for j in range(n)]
                  for i in range(n)]
        else:
            mk = [row[:] for row in a]
        c = -sum(mk[i][i] for i in range(n)) / k
        coeffs.append(c)
    out = []
    for c in reversed(coeffs):
        if c.denominator != 1:
            raise AssertionError("characteristic polynomial not integral")
        out.append(int(c))
    return out


def quadratic_factor(q: int) -> list:
    """x^2 - (q^2 - 4q + 2) x + 1, lowest first."""
    return [1, -(q * q - 4 * q + 2), 1]


def divides_exactly(num: list, den: list) -> tuple:
    """(divides, quotient) over the integers."""
    qq, r = q_divmod([Fraction(c) for c in num], [Fraction(c) for c in den])
    if q_trim(list(r)):
        return False, None
    if any(c.denominator != 1 for c in qq):
        return False, None
    return True, [int(c) for c in qq]


@dataclass
class FactorCheck:
    q: int
    char_coeffs: list
    quadratic: list
    divides: bool
    quotient: list | None
    dominant_match: bool
    dominant_lo: Fraction
    dominant_hi: Fraction
    method: str


def check_factor(q: int, matrix: L1Matrix | None = None) -> FactorCheck:
    """Divisibility of the characteristic polynomial by the growth quadratic,
    and exact certification that the quadratic's largest root dominates the
    full spectrum."""
    if q < 5:
        raise UnsupportedQ("q >= 5 required")
    m = matrix if matrix is not None else l1_matrix(q)
    cp = char_poly(m)
    quad = quadratic_factor(q)
    ok, quotient = divides_exactly(cp, quad)
    lo, hi = isolate_largest_real_root([Fraction(c) for c in quad],
                                       ISOLATION_WIDTH)
    if not ok:
        return FactorCheck(q, cp, quad, False, None, False, lo, hi,
                           "no divisibility; dominance not certified")
    rest = [Fraction(c) for c in quotient]
    # strip any further copies of the quadratic (their roots are the
    # dominant pair itself, so they cannot break dominance)
    while True:
        more, qq = divides_exactly([int(c) for c in rest], quad)
        if not more:
            break
        rest = [Fraction(c) for c in qq]
    dom, method = _all_roots_bounded(rest, lo)
    return FactorCheck(q, cp, quad, True, quotient, dom, lo, hi, method)


def _all_roots_bounded(p: list, bound_lo: Fraction) -> tuple:
    """Certify that every root of p has modulus strictly below bound_lo
    (a rational lower bound for the dominant root)."""
    p = q_trim([Fraction(c) for c in p])
    if len(p) <= 1:
        return True, "quotient is constant"
    sf = squarefree_part(p)
    # real roots: isolate and shrink until each interval sits inside (-b, b)
    for a, b in isolate_real_roots(sf):
        for _ in range(200):
            if -bound_lo < a and b < bound_lo:
                break
            if b <= -bound_lo or a >= bound_lo:
                return False, f"real root beyond the dominant root in [{a}, {b}]"
            a, b = refine_interval(sf, a, b, (b - a) / 4)
        else:
            return False, "real-root refinement did not separate"
    n_real = len(isolate_real_roots(sf))
    if n_real == len(sf) - 1:
        return True, "all quotient roots real, Sturm-bounded"
    # complex roots: Cauchy bound first
    if cauchy_bound(sf) < bound_lo:
        return True, "complex moduli below the Cauchy bound"
    # composed-product fallback: roots of R(y) include every pairwise
    # product of roots of sf, in particular each complex |root|^2
    r = _pairwise_product_poly(sf)
    for a, b in isolate_real_roots(r):
        for _ in range(200):
            if b < bound_lo * bound_lo:
                break
            if a >= bound_lo * bound_lo:
                return False, "resultant root at or beyond the dominant modulus"
            a, b = refine_interval(squarefree_part(r), a, b, (b - a) / 4)
        else:
            return False, "resultant refinement inconclusive"
    return True, "complex moduli bounded via composed-product resultant"


def _pairwise_product_poly(p: list) -> list:
    """Resultant_x(p(x), x^deg(p) * p(y/x)) as a polynomial in y; its roots
    are the pairwise products of roots of p."""
    n = len(p) - 1
    # rows of the Sylvester matrix over Q[y], entries as UniPoly in y
    f = [UniPoly([c], QQ) for c in p]                    # p(x): coeff of x^i
    g = [UniPoly([0] * (n - i) + [p[i]], QQ) for i in range(n + 1)]
    g.reverse()                                          # x^n p(y/x) in x
    size = 2 * n
    zero = UniPoly([], QQ)
    rows = []
    for k in range(n):
        row = [zero] * size
        for i, c in enumerate(reversed(f)):
            row[k + i] = c
        rows.append(row)
    for k in range(n):
        row = [zero] * size
        for i, c in enumerate(reversed(g)):
            row[k + i] = c
        rows.append(row)
    det = _poly_det(rows)
    return q_trim([Fraction(c) for c in det.coeffs])


def _poly_det(rows: list) -> UniPoly:
    """Determinant by fraction-free expansion (small sizes only)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = None
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _poly_det(sub)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        return UniPoly([], QQ)
    return acc


def model_sequence(q: int, n_max: int) -> list:
    """H-coefficient of the n-th pullback power applied to a hyperplane.

    A model prediction only (exploratory): nothing guarantees these match
    the measured iterate degrees, which is exactly why the comparison is
    reported side by side rather than asserted.
    """
    if q < 5:
        raise UnsupportedQ("q >= 5 required")
    m = l1_matrix(q)
    v = (1, 0, 0, 0, 0, 0)
    out = []
    for _ in range(n_max):
        v = m.apply(v)
        out.append(v[0])
    return out
