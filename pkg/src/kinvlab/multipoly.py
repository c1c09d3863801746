"""Sparse multivariate polynomials over the integers.

Terms are stored as a dict mapping exponent tuples to nonzero integer
coefficients.  This carries the symbolic coordinate-map computations for
small matrix sizes: the polynomials there are sums of at most (q-1)! signed
monomials, so simple algorithms suffice.  The gcd follows the primitive
pseudo-remainder scheme: recursive content extraction one variable at a
time, with primitive-part reduction between pseudo-division steps.
"""

from __future__ import annotations

from math import gcd as int_gcd

from .errors import ExactDivisionFailure


class MultiPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, c: int) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, idx: int) -> "MultiPoly":
        e = [0] * nvars
        e[idx] = 1
        return cls(nvars, {tuple(e): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(x == 0 for x in e) for e in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, v: int) -> int:
        if not self.terms:
            return -1
        return max(e[v] for e in self.terms)

    def uses_var(self, v: int) -> bool:
        return any(e[v] for e in self.terms)

    def __add__(self, other):
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return MultiPoly(self.nvars, t)

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, t)

    def scale(self, c: int) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: c * x for e, x in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Exact quotient; raises ExactDivisionFailure on a remainder."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return MultiPoly.zero(self.nvars)
        if other.is_monomial():
            (de, dc), = other.terms.items()
            out = {}
            for e, c in self.terms.items():
                q, r = divmod(c, dc)
                ne = tuple(a - b for a, b in zip(e, de))
                if r != 0 or any(x < 0 for x in ne):
                    raise ExactDivisionFailure("monomial does not divide term")
                out[ne] = q
            return MultiPoly(self.nvars, out)
        rem = MultiPoly(self.nvars, dict(self.terms))
        quo: dict = {}
        dlt, dlc = _lex_leading(other)
        while not rem.is_zero():
            rlt, rlc = _lex_leading(rem)
            q, r = divmod(rlc, dlc)
            ne = tuple(a - b for a, b in zip(rlt, dlt))
            if r != 0 or any(x < 0 for x in ne):
                raise ExactDivisionFailure("leading term not divisible")
            qt = MultiPoly(self.nvars, {ne: q})
            quo[ne] = quo.get(ne, 0) + q
            rem = rem - qt * other
        return MultiPoly(self.nvars, quo)

    def divisible_by(self, other: "MultiPoly") -> bool:
        try:
            self.exact_div(other)
            return True
        except ExactDivisionFailure:
            return False

    def int_content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = int_gcd(g, abs(c))
            if g == 1:
                break
        return g or 1

    def normalized(self) -> "MultiPoly":
        """Integer-primitive with a positive lex-leading coefficient."""
        if self.is_zero():
            return self
        g = self.int_content()
        _, lc = _lex_leading(self)
        if lc < 0:
            g = -g
        return MultiPoly(self.nvars, {e: c // g for e, c in self.terms.items()})

    def __repr__(self):
        if self.is_zero():
            return "MultiPoly(0)"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True)[:6]:
            mono = "*".join(f"y{i}^{k}" if k > 1 else f"y{i}"
                            for i, k in enumerate(e) if k)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        more = "" if len(self.terms) <= 6 else f" (+{len(self.terms) - 6} terms)"
        return "MultiPoly(" + " + ".join(parts) + more + ")"


def _lex_leading(f: MultiPoly) -> tuple:
    e = max(f.terms)
    return e, f.terms[e]


def _coeffs_in_var(f: MultiPoly, v: int) -> dict:
    """f as a polynomial in variable v: degree -> MultiPoly coefficient."""
    out: dict = {}
    for e, c in f.terms.items():
        d = e[v]
        ne = e[:v] + (0,) + e[v + 1:]
        bucket = out.setdefault(d, {})
        bucket[ne] = bucket.get(ne, 0) + c
    return {d: MultiPoly(f.nvars, t) for d, t in out.items()}


def _pseudo_rem(a: MultiPoly, b: MultiPoly, v: int) -> MultiPoly:
    da, db = a.degree_in(v), b.degree_in(v)
    bc = _coeffs_in_var(b, v)
    lb = bc[db]
    vmono = MultiPoly.var(a.nvars, v)
    while not a.is_zero() and a.degree_in(v) >= db:
        da = a.degree_in(v)
        la = _coeffs_in_var(a, v)[da]
        shift = MultiPoly.const(a.nvars, 1)
        for _ in range(da - db):
            shift = shift * vmono
        a = lb * a - la * shift * b
    return a


def mp_content(f: MultiPoly, v: int) -> MultiPoly:
    """Content of f with respect to v: gcd of its v-coefficients."""
    coeffs = list(_coeffs_in_var(f, v).values())
    g = coeffs[0]
    for c in coeffs[1:]:
        g = mp_gcd(g, c)
        if g.is_constant():
            break
    return g.normalized()


def mp_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Gcd up to sign, integer-primitive (constants collapse to 1)."""
    if f.is_zero():
        return g.normalized()
    if g.is_zero():
        return f.normalized()
    if f.is_constant() or g.is_constant():
        # nonzero rational constants are units
        return MultiPoly.const(f.nvars, 1)
    v = next(i for i in range(f.nvars) if f.uses_var(i) or g.uses_var(i))
    if not f.uses_var(v):
        return mp_gcd(mp_content(g, v), f)
    if not g.uses_var(v):
        return mp_gcd(mp_content(f, v), g)
    cf, cg = mp_content(f, v), mp_content(g, v)
    a, b = f.exact_div(cf), g.exact_div(cg)
    c = mp_gcd(cf, cg)
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    while True:
        r = _pseudo_rem(a, b, v)
        if r.is_zero():
            h = b.exact_div(mp_content(b, v)).normalized()
            break
        if r.degree_in(v) == 0:
            h = MultiPoly.const(f.nvars, 1)
            break
        r = r.exact_div(mp_content(r, v)).normalized()
        a, b = b, r
    return (c * h).normalized()


def mp_gcd_list(polys) -> MultiPoly:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("gcd of an empty or all-zero list")
    g = polys[0].normalized()
    for f in polys[1:]:
        if g.is_constant():
            break
        g = mp_gcd(g, f)
    return g if not g.is_constant() else MultiPoly.const(polys[0].nvars, 1)
