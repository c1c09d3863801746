"""Truncated Laurent series with exact rational coefficients.

A nonzero series is (val, coeffs) with coeffs[0] != 0, representing

    sum_i coeffs[i] * s^(val+i)  +  O(s^(val+len(coeffs))).

A series that is zero to its working precision is stored with an empty
coefficient tuple; `val` then records the order bound, i.e. the series is
O(s^val).  Every stored coefficient is exact; arithmetic narrows the known
window as truncated operands mix, so a coefficient is never reported unless
it is certain.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ZeroSeries


class LaurentSeries:
    __slots__ = ("val", "coeffs")

    def __init__(self, val: int, coeffs):
        cs = [Fraction(c) for c in coeffs]
        # normalize: leading coefficient nonzero
        k = 0
        while k < len(cs) and cs[k] == 0:
            k += 1
        self.val = val + k
        self.coeffs = tuple(cs[k:])

    @classmethod
    def zero(cls, order_bound: int) -> "LaurentSeries":
        """The zero-to-precision series O(s^order_bound)."""
        z = cls.__new__(cls)
        z.val = order_bound
        z.coeffs = ()
        return z

    @classmethod
    def from_poly(cls, coeffs, prec: int) -> "LaurentSeries":
        """Exact polynomial in s, carried with a window of `prec` terms."""
        cs = [Fraction(c) for c in coeffs]
        k = 0
        while k < len(cs) and cs[k] == 0:
            k += 1
        if k == len(cs):
            return cls.zero(prec)
        cs = cs[k:]
        cs += [Fraction(0)] * (prec - len(cs))
        return cls(k, cs[:prec])

    @classmethod
    def constant(cls, c, prec: int) -> "LaurentSeries":
        return cls.from_poly([c], prec)

    def is_zero(self) -> bool:
        """True when zero to the known precision."""
        return not self.coeffs

    @property
    def end(self) -> int:
        """First order beyond the known window."""
        return self.val + len(self.coeffs)

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def coeff(self, order: int) -> Fraction:
        """Exact coefficient of s^order (must lie in the known window)."""
        if order >= self.end:
            raise ValueError(f"order {order} beyond known window (<{self.end})")
        if order < self.val:
            return Fraction(0)
        return self.coeffs[order - self.val]

    def leading(self) -> tuple[int, Fraction]:
        if self.is_zero():
            raise ZeroSeries("zero series has no leading term")
        return self.val, self.coeffs[0]

    def shift(self, m: int) -> "LaurentSeries":
        """Multiply by s^m."""
        out = LaurentSeries.__new__(LaurentSeries)
        out.val = self.val + m
        out.coeffs = self.coeffs
        return out

    def truncate(self, prec: int) -> "LaurentSeries":
        if self.is_zero():
            return self
        return LaurentSeries(self.val, self.coeffs[:prec])

    def __add__(self, other):
        if self.is_zero() and other.is_zero():
            return LaurentSeries.zero(min(self.val, other.val))
        if self.is_zero():
            return other._window_capped(self.val)
        if other.is_zero():
            return self._window_capped(other.val)
        lo = min(self.val, other.val)
        end = min(self.end, other.end)
        if end <= lo:
            return LaurentSeries.zero(end)
        n = end - lo
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            k = self.val + i - lo
            if k < n:
                out[k] += c
        for i, c in enumerate(other.coeffs):
            k = other.val + i - lo
            if k < n:
                out[k] += c
        r = LaurentSeries(lo, out)
        if not r.coeffs:
            return LaurentSeries.zero(end)
        return r

    def _window_capped(self, end_bound: int) -> "LaurentSeries":
        """This series with its window cut off at end_bound (for x + 0)."""
        if self.end <= end_bound:
            return self
        n = end_bound - self.val
        if n <= 0:
            return LaurentSeries.zero(end_bound)
        return LaurentSeries(self.val, self.coeffs[:n])

    def __neg__(self):
        if self.is_zero():
            return self
        out = LaurentSeries.__new__(LaurentSeries)
        out.val = self.val
        out.coeffs = tuple(-c for c in self.coeffs)
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return LaurentSeries.zero(self.val + other.val)
        n = min(len(self.coeffs), len(other.coeffs))
        out = [Fraction(0)] * n
        a, b = self.coeffs, other.coeffs
        for i in range(n):
            ai = a[i]
            if ai:
                for j in range(n - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return LaurentSeries(self.val + other.val, out)

    def scale(self, c) -> "LaurentSeries":
        c = Fraction(c)
        if self.is_zero():
            return self
        if c == 0:
            return LaurentSeries.zero(self.end)
        out = LaurentSeries.__new__(LaurentSeries)
        out.val = self.val
        out.coeffs = tuple(c * x for x in self.coeffs)
        return out

    def invert(self) -> "LaurentSeries":
        """Reciprocal series; raises ZeroSeries on a zero-to-precision input."""
        if self.is_zero():
            raise ZeroSeries("cannot invert a series that is zero to precision")
        n = len(self.coeffs)
        a = self.coeffs
        inv0 = 1 / a[0]
        out = [inv0] + [Fraction(0)] * (n - 1)
        for k in range(1, n):
            acc = Fraction(0)
            for i in range(1, k + 1):
                if a[i]:
                    acc += a[i] * out[k - i]
            out[k] = -inv0 * acc
        return LaurentSeries(-self.val, out)

    def eq_to_shared_precision(self, other) -> bool:
        d = self - other
        return d.is_zero()

    def __eq__(self, other):
        return (isinstance(other, LaurentSeries) and self.val == other.val
                and self.coeffs == other.coeffs)

    def __repr__(self):
        if self.is_zero():
            return f"LaurentSeries(O(s^{self.val}))"
        terms = ", ".join(f"{c}*s^{self.val + i}" for i, c in enumerate(self.coeffs[:4]))
        return f"LaurentSeries({terms}, ... + O(s^{self.end}))"


def series_invert(a: LaurentSeries, prec: int | None = None) -> LaurentSeries:
    r = a.invert()
    if prec is not None:
        r = r.truncate(prec)
    return r
