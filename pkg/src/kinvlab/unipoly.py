"""Dense univariate polynomial arithmetic.

Coefficient lists are stored lowest degree first with no trailing zeros; the
zero polynomial is the empty list.  The GF(p) kernel functions below operate
on raw int lists for speed.  Multiplication packs both operands into big
integers (Kronecker substitution) above a small size cutoff, so products of
degree ~10^4 run at CPython's subquadratic big-int speed; division by large
divisors goes through Newton inversion of the reversed divisor.

`UniPoly` wraps a coefficient list with a field context (a `PrimeField` or
the rational field) and is the public carrier for `uni_gcd`.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction

from .errors import ExactDivisionFailure
from .fields import PrimeField

try:
    from gmpy2 import mpz as _mpz
    _HAVE_GMPY2 = hasattr(_mpz, "from_bytes")
except ImportError:  # pragma: no cover
    _HAVE_GMPY2 = False

# Below this many coefficients schoolbook beats packing overhead.
_KRONECKER_CUTOFF = 24


def gf_trim(a: list) -> list:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    del a[n:]
    return a


def gf_add(a: list, b: list, p: int) -> list:
    if len(a) < len(b):
        a, b = b, a
    r = a[:]
    for i, c in enumerate(b):
        r[i] = (r[i] + c) % p
    return gf_trim(r)


def gf_sub(a: list, b: list, p: int) -> list:
    r = a + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        r[i] = (r[i] - c) % p
    return gf_trim(r)


def gf_neg(a: list, p: int) -> list:
    return [-c % p for c in a]


def gf_scale(a: list, c: int, p: int) -> list:
    c %= p
    if c == 0:
        return []
    return [(c * x) % p for x in a]


def gf_mul(a: list, b: list, p: int) -> list:
    if not a or not b:
        return []
    la, lb = len(a), len(b)
    if la > lb:
        a, b, la, lb = b, a, lb, la
    if la <= _KRONECKER_CUTOFF:
        r = [0] * (la + lb - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    r[i + j] += x * y
        return gf_trim([c % p for c in r])
    return _kronecker_mul(a, b, p)


def _pack(a: list, sb: int) -> bytearray:
    buf = bytearray(sb * len(a))
    for i, c in enumerate(a):
        off = i * sb
        buf[off:off + 8] = c.to_bytes(8, "little")
    return buf


def _kronecker_mul(a: list, b: list, p: int) -> list:
    # Pack coefficients at a byte-aligned stride wide enough that no column
    # sum of the product can overflow its slot (coefficients are < 2^64,
    # hence 8 bytes each at packing time).
    bound = min(len(a), len(b)) * (p - 1) * (p - 1)
    sb = (bound.bit_length() + 8) // 8
    n = len(a) + len(b) - 1
    ba, bb = _pack(a, sb), _pack(b, sb)
    if _HAVE_GMPY2:
        pc = _mpz.from_bytes(ba, "little") * _mpz.from_bytes(bb, "little")
    else:  # pragma: no cover
        pc = int.from_bytes(ba, "little") * int.from_bytes(bb, "little")
    raw = pc.to_bytes(sb * n + 8, "little")
    out = [int.from_bytes(raw[k * sb:(k + 1) * sb], "little") % p for k in range(n)]
    return gf_trim(out)


def gf_mul_trunc(a: list, b: list, n: int, p: int) -> list:
    """First n coefficients of a*b."""
    r = gf_mul(a[:n], b[:n], p)
    del r[n:]
    return gf_trim(r)


def gf_monic(a: list, p: int) -> list:
    if not a:
        return []
    lc = a[-1]
    if lc == 1:
        return a[:]
    return gf_scale(a, pow(lc, p - 2, p), p)


def gf_divmod(a: list, b: list, p: int) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    la, lb = len(a), len(b)
    if la < lb:
        return [], a[:]
    lq = la - lb + 1
    if lq <= 64 or lb <= 64:
        return _divmod_schoolbook(a, b, p)
    q = _quotient_newton(a, b, p)
    r = gf_sub(a, gf_mul(q, b, p), p)
    return q, r


def _divmod_schoolbook(a: list, b: list, p: int) -> tuple[list, list]:
    r = a[:]
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    q = [0] * (len(a) - db)
    bt = b[:-1]
    for k in range(len(q) - 1, -1, -1):
        c = (r[k + db] * inv) % p
        if c:
            q[k] = c
            for i, bc in enumerate(bt):
                if bc:
                    r[k + i] = (r[k + i] - c * bc) % p
        r[k + db] = 0
    del r[db:]
    return gf_trim(q), gf_trim(r)


def gf_inv_series(b: list, n: int, p: int) -> list:
    """Inverse of b modulo u^n (b must have a nonzero constant term)."""
    if not b or b[0] == 0:
        raise ZeroDivisionError("series inverse needs a unit constant term")
    x = [pow(b[0], p - 2, p)]
    k = 1
    while k < n:
        k = min(2 * k, n)
        bx = gf_mul_trunc(b[:k], x, k, p)
        # x <- x*(2 - b*x) mod u^k
        two_minus = [(-c) % p for c in bx]
        two_minus[0] = (two_minus[0] + 2) % p
        x = gf_mul_trunc(x, two_minus, k, p)
    return x


def _quotient_newton(a: list, b: list, p: int, inv_rev_b: list | None = None) -> list:
    lq = len(a) - len(b) + 1
    ra = a[::-1]
    if inv_rev_b is None:
        inv_rev_b = gf_inv_series(b[::-1], lq, p)
    rq = gf_mul_trunc(ra[:lq], inv_rev_b, lq, p)
    rq = rq + [0] * (lq - len(rq))
    return gf_trim(rq[::-1])


def _eval_points(a: list, b: list, p: int) -> tuple:
    """Two deterministic pseudorandom field points derived from the inputs."""
    h = hashlib.blake2b(digest_size=16)
    h.update(len(a).to_bytes(4, "little") + len(b).to_bytes(4, "little"))
    for c in (a[0], a[-1], b[0], b[-1]):
        h.update(c.to_bytes(8, "little"))
    d = int.from_bytes(h.digest(), "little")
    return 2 + d % (p - 4), 2 + (d >> 64) % (p - 4)


def gf_exact_div(a: list, b: list, p: int, inv_rev_b: list | None = None,
                 check="full") -> list:
    """Quotient a/b, where b is known (or required) to divide a exactly.

    check="full" verifies the remainder is identically zero; check="eval"
    spot-checks a*1 = q*b at two derived points (cheap, error probability
    about deg/p, suited to pipelines whose consensus layer already absorbs
    that failure class); check=False trusts the caller.
    """
    if not a:
        return []
    lq = len(a) - len(b) + 1
    if lq <= 0:
        raise ExactDivisionFailure("divisor degree exceeds dividend degree")
    if inv_rev_b is None and (lq <= 64 or len(b) <= 64):
        q, r = _divmod_schoolbook(a, b, p)
        if check and r:
            raise ExactDivisionFailure("nonzero remainder")
        return q
    q = _quotient_newton(a, b, p, inv_rev_b)
    if check == "full" or check is True:
        if gf_sub(a, gf_mul(q, b, p), p):
            raise ExactDivisionFailure("nonzero remainder")
    elif check == "eval":
        for tau in _eval_points(a, b, p):
            if gf_eval(a, tau, p) != (gf_eval(q, tau, p) * gf_eval(b, tau, p)) % p:
                raise ExactDivisionFailure("division spot-check failed")
    return q


def gf_gcd(a: list, b: list, p: int) -> list:
    """Monic gcd via the Euclidean remainder sequence."""
    a, b = a[:], b[:]
    while b:
        if len(a) < len(b):
            a, b = b, a
            continue
        db = len(b) - 1
        inv = pow(b[-1], p - 2, p)
        bt = b[:-1]
        # in-place remainder of a by b
        for k in range(len(a) - db - 1, -1, -1):
            c = (a[k + db] * inv) % p
            if c:
                a[k:k + db] = [(x - c * y) % p
                               for x, y in zip(a[k:k + db], bt)]
            a[k + db] = 0
        gf_trim(a)
        a, b = b, a
    return gf_monic(a, p)


def gf_eval(a: list, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


# ---------------------------------------------------------------------------
# rational-coefficient helpers (small degrees: Sturm chains, char polys)

def q_trim(a: list) -> list:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    del a[n:]
    return a


def q_add(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    r = a[:]
    for i, c in enumerate(b):
        r[i] = r[i] + c
    return q_trim(r)


def q_neg(a: list) -> list:
    return [-c for c in a]


def q_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    r = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] += x * y
    return q_trim(r)


def q_divmod(a: list, b: list) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in a]
    db = len(b) - 1
    if len(r) <= db:
        return [], q_trim(r)
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(q) - 1, -1, -1):
        c = r[k + db] / b[-1]
        if c:
            q[k] = c
            for i, bc in enumerate(b):
                if bc:
                    r[k + i] -= c * bc
    return q_trim(q), q_trim(r)


def q_eval(a: list, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------

class RationalField:
    """Marker context: coefficients are `fractions.Fraction`."""

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")


QQ = RationalField()


class UniPoly:
    """A dense univariate polynomial over GF(p) or over the rationals."""

    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs, field):
        self.field = field
        if isinstance(field, PrimeField):
            c = [int(x) % field.p for x in coeffs]
            gf_trim(c)
        else:
            c = [Fraction(x) for x in coeffs]
            q_trim(c)
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        """Degree, with the convention deg 0 = -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, UniPoly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other):
        if isinstance(self.field, PrimeField):
            return UniPoly(gf_add(list(self.coeffs), list(other.coeffs), self.field.p), self.field)
        return UniPoly(q_add(list(self.coeffs), list(other.coeffs)), self.field)

    def __neg__(self):
        if isinstance(self.field, PrimeField):
            return UniPoly(gf_neg(list(self.coeffs), self.field.p), self.field)
        return UniPoly(q_neg(list(self.coeffs)), self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(self.field, PrimeField):
            return UniPoly(gf_mul(list(self.coeffs), list(other.coeffs), self.field.p), self.field)
        return UniPoly(q_mul(list(self.coeffs), list(other.coeffs)), self.field)

    def __divmod__(self, other):
        if isinstance(self.field, PrimeField):
            q, r = gf_divmod(list(self.coeffs), list(other.coeffs), self.field.p)
        else:
            q, r = q_divmod(list(self.coeffs), list(other.coeffs))
        return UniPoly(q, self.field), UniPoly(r, self.field)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        if isinstance(self.field, PrimeField):
            return UniPoly(gf_monic(list(self.coeffs), self.field.p), self.field)
        lc = self.coeffs[-1]
        return UniPoly([c / lc for c in self.coeffs], self.field)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)}, {self.field})"


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor; uni_gcd(x, 0) is monic(x)."""
    if a.field != b.field:
        raise ValueError("gcd operands over different fields")
    if isinstance(a.field, PrimeField):
        return UniPoly(gf_gcd(list(a.coeffs), list(b.coeffs), a.field.p), a.field)
    x, y = list(a.coeffs), list(b.coeffs)
    while y:
        _, r = q_divmod(x, y)
        x, y = y, r
    return UniPoly(x, a.field).monic()
