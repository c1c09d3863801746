"""Homogeneous binary forms over a prime field.

A form of degree d is stored as the dense list of d+1 coefficients, entry k
holding the coefficient of u^k v^(d-k).  The zero form keeps its nominal
degree so that sums inside determinant expansions stay degree-consistent.
Degrees reach ~10^4 inside the degree-sequence engine, so products and exact
divisions delegate to the packed kernels in `unipoly`.
"""

from __future__ import annotations

from .errors import AllZero, ExactDivisionFailure
from .fields import PrimeField
from .unipoly import (
    gf_add,
    gf_exact_div,
    gf_gcd,
    gf_inv_series,
    gf_mul,
    gf_trim,
)


class BinaryForm:
    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field: PrimeField, degree: int, coeffs):
        if degree < 0:
            raise ValueError("negative degree")
        c = [int(x) % field.p for x in coeffs]
        if len(c) != degree + 1:
            raise ValueError(f"need {degree + 1} coefficients, got {len(c)}")
        self.field = field
        self.degree = degree
        self.coeffs = c

    @classmethod
    def zero(cls, field: PrimeField, degree: int) -> "BinaryForm":
        return cls(field, degree, [0] * (degree + 1))

    @classmethod
    def constant(cls, field: PrimeField, value: int) -> "BinaryForm":
        return cls(field, 0, [value])

    @classmethod
    def linear(cls, field: PrimeField, u_coef: int, v_coef: int) -> "BinaryForm":
        """u_coef * u + v_coef * v."""
        return cls(field, 1, [v_coef, u_coef])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def u_order(self) -> int:
        """Largest a with u^a dividing the form (form must be nonzero)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        raise ValueError("zero form has no u-order")

    def v_order(self) -> int:
        for k in range(self.degree, -1, -1):
            if self.coeffs[k]:
                return self.degree - k
        raise ValueError("zero form has no v-order")

    def unipoly_coeffs(self) -> list:
        """Dehomogenized coefficients (v=1), trailing zeros removed."""
        return gf_trim(self.coeffs[:])

    def __eq__(self, other):
        return (isinstance(other, BinaryForm) and self.field == other.field
                and self.degree == other.degree and self.coeffs == other.coeffs)

    def __add__(self, other):
        self._align(other)
        p = self.field.p
        return BinaryForm(self.field, self.degree,
                          [(a + b) % p for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._align(other)
        p = self.field.p
        return BinaryForm(self.field, self.degree,
                          [(a - b) % p for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        p = self.field.p
        return BinaryForm(self.field, self.degree, [-c % p for c in self.coeffs])

    def __mul__(self, other):
        d = self.degree + other.degree
        r = gf_mul(self.coeffs, other.coeffs, self.field.p)
        r += [0] * (d + 1 - len(r))
        return BinaryForm(self.field, d, r)

    def scale(self, c: int) -> "BinaryForm":
        p = self.field.p
        c %= p
        return BinaryForm(self.field, self.degree, [(c * x) % p for x in self.coeffs])

    def exact_div(self, other: "BinaryForm") -> "BinaryForm":
        """Exact quotient as a form of degree self.degree - other.degree."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero form")
        if self.is_zero():
            if other.degree > self.degree:
                raise ExactDivisionFailure("degree of divisor exceeds dividend")
            return BinaryForm.zero(self.field, self.degree - other.degree)
        d = self.degree - other.degree
        if d < 0:
            raise ExactDivisionFailure("degree of divisor exceeds dividend")
        a = gf_trim(self.coeffs[:])
        b = gf_trim(other.coeffs[:])
        q = gf_exact_div(a, b, self.field.p)
        if len(q) - 1 > d:
            raise ExactDivisionFailure("quotient degree too large")
        q += [0] * (d + 1 - len(q))
        return BinaryForm(self.field, d, q)

    def divisible_by(self, other: "BinaryForm") -> bool:
        try:
            self.exact_div(other)
            return True
        except ExactDivisionFailure:
            return False

    def eval_uv(self, u: int, v: int) -> int:
        p = self.field.p
        acc = 0
        upow = 1
        vpows = [1] * (self.degree + 1)
        for k in range(1, self.degree + 1):
            vpows[k] = (vpows[k - 1] * v) % p
        for k, c in enumerate(self.coeffs):
            if c:
                acc = (acc + c * upow * vpows[self.degree - k]) % p
            upow = (upow * u) % p
        return acc

    def _align(self, other):
        if self.field != other.field:
            raise ValueError("forms over different fields")
        if self.degree != other.degree:
            raise ValueError(
                f"degree mismatch: {self.degree} vs {other.degree}")

    def __repr__(self):
        return f"BinaryForm(deg={self.degree}, p={self.field.p})"


def form_gcd(a: BinaryForm, b: BinaryForm) -> BinaryForm:
    """Monic gcd as a form, including shared powers of u and of v."""
    if a.is_zero() and b.is_zero():
        raise AllZero("gcd of two zero forms")
    if a.is_zero():
        return _monic_form(b)
    if b.is_zero():
        return _monic_form(a)
    pa, pb = a.unipoly_coeffs(), b.unipoly_coeffs()
    g = gf_gcd(pa, pb, a.field.p)
    vpow = min(a.v_order(), b.v_order())
    d = len(g) - 1 + vpow
    g += [0] * (d + 1 - len(g))
    return BinaryForm(a.field, d, g)


def _monic_form(f: BinaryForm) -> BinaryForm:
    lc = next(c for c in reversed(f.coeffs) if c)
    return f.scale(pow(lc, f.field.p - 2, f.field.p))


def tuple_content_clear(forms) -> tuple:
    """Split a tuple of forms into (content, reduced forms).

    The content is the monic gcd of all forms, including any shared u- and
    v-power factors; each reduced form is the exact quotient by it.  A fixed
    linear combination reduces the many-form gcd to a single Euclidean run;
    the candidate is verified by division against every form and the
    pairwise fallback keeps the result correct regardless of the combination.
    """
    forms = list(forms)
    if not forms:
        raise AllZero("empty tuple")
    nonzero = [f for f in forms if not f.is_zero()]
    if not nonzero:
        raise AllZero("all forms are zero")
    field = nonzero[0].field
    p = field.p
    if len(nonzero) == 1:
        content = _monic_form(nonzero[0])
    else:
        content = _combined_gcd(nonzero, p, field)
    reduced = divide_forms(forms, content)
    return content, reduced


def divide_forms(forms, divisor: BinaryForm, check="eval") -> list:
    """Exact quotients of many forms by one divisor, sharing the reversed
    Newton inverse across the divisions.  The spot-check mode suffices here:
    the degree-consensus protocol absorbs the ~deg/p error class, and a
    detected mismatch still raises ExactDivisionFailure."""
    forms = list(forms)
    if divisor.is_zero():
        raise ZeroDivisionError("division by the zero form")
    p = divisor.field.p
    g = divisor.unipoly_coeffs()
    lens = [len(f.unipoly_coeffs()) for f in forms if not f.is_zero()]
    inv_rev = None
    if lens:
        max_lq = max(lens) - len(g) + 1
        if max_lq > 64 and len(g) > 64:
            inv_rev = gf_inv_series(g[::-1], max_lq, p)
    out = []
    for f in forms:
        if f.is_zero():
            d = f.degree - divisor.degree
            if d < 0:
                raise ExactDivisionFailure("degree of divisor exceeds dividend")
            out.append(BinaryForm.zero(f.field, d))
            continue
        d = f.degree - divisor.degree
        if d < 0:
            raise ExactDivisionFailure("degree of divisor exceeds dividend")
        a = f.unipoly_coeffs()
        lq = len(a) - len(g) + 1
        if lq <= 0:
            raise ExactDivisionFailure("u-degree of divisor exceeds dividend")
        iv = inv_rev[:lq] if inv_rev is not None else None
        qq = gf_exact_div(a, g, p, inv_rev_b=iv, check=check)
        if len(qq) - 1 > d:
            raise ExactDivisionFailure("quotient degree too large")
        qq = qq + [0] * (d + 1 - len(qq))
        out.append(BinaryForm(f.field, d, qq))
    return out


def _combined_gcd(nonzero, p, field) -> BinaryForm:
    polys = [f.unipoly_coeffs() for f in nonzero]
    combo: list = []
    for t, c in enumerate(polys[1:], start=2):
        combo = gf_add(combo, [(t * x) % p for x in c], p)
    g = gf_gcd(polys[0], combo, p)
    if _divides_all(g, polys, p):
        gd = len(g) - 1
    else:
        g = polys[0]
        for c in polys[1:]:
            g = gf_gcd(g, c, p)
            if len(g) == 1:
                break
        gd = len(g) - 1
    vpow = min(f.v_order() for f in nonzero)
    d = gd + vpow
    g = g + [0] * (d + 1 - len(g))
    return BinaryForm(field, d, g)


def _divides_all(g, polys, p) -> bool:
    if len(g) == 1:
        return True
    inv_rev = None
    for c in polys:
        lq = len(c) - len(g) + 1
        if lq < 0:
            return False
        if lq > 64 and len(g) > 64:
            if inv_rev is None:
                max_lq = max(len(x) for x in polys) - len(g) + 1
                inv_rev = gf_inv_series(g[::-1], max_lq, p)
            try:
                gf_exact_div(c, g, p, inv_rev_b=inv_rev[:lq])
            except ExactDivisionFailure:
                return False
        else:
            try:
                gf_exact_div(c, g, p)
            except ExactDivisionFailure:
                return False
    return True
