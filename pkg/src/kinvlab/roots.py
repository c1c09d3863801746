"""Exact real-root isolation for rational polynomials.

Sturm chains give exact root counts on rational intervals; bisection then
shrinks isolating intervals to any requested width.  All verdict-level
comparisons stay in rational arithmetic; floats appear only when a caller
renders a value for humans.
"""

from __future__ import annotations

from fractions import Fraction

from .unipoly import q_divmod, q_eval, q_trim


def derivative(p: list) -> list:
    return q_trim([p[i] * i for i in range(1, len(p))])


def sturm_chain(p: list) -> list:
    chain = [q_trim([Fraction(c) for c in p])]
    d = derivative(chain[0])
    if d:
        chain.append(d)
    while len(chain[-1]) > 1:
        _, r = q_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _sign_variations(chain: list, x: Fraction) -> int:
    signs = []
    for p in chain:
        v = q_eval(p, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(chain: list, a: Fraction, b: Fraction) -> int:
    """Distinct real roots in the half-open interval (a, b]."""
    return _sign_variations(chain, a) - _sign_variations(chain, b)


def cauchy_bound(p: list) -> Fraction:
    """All roots have modulus strictly below this rational bound."""
    p = q_trim([Fraction(c) for c in p])
    lead = abs(p[-1])
    if len(p) == 1:
        return Fraction(1)
    return 1 + max(abs(c) for c in p[:-1]) / lead


def squarefree_part(p: list) -> list:
    p = q_trim([Fraction(c) for c in p])
    d = derivative(p)
    if not d:
        return p
    g = _poly_gcd(p, d)
    if len(g) == 1:
        return p
    q, _ = q_divmod(p, g)
    return q


def _poly_gcd(a: list, b: list) -> list:
    a, b = q_trim(list(a)), q_trim(list(b))
    while b:
        _, r = q_divmod(a, b)
        a, b = b, r
    if a:
        lc = a[-1]
        a = [c / lc for c in a]
    return a


def isolate_real_roots(p: list) -> list:
    """Disjoint rational intervals (a, b], one distinct real root in each."""
    p = squarefree_part(p)
    if len(p) <= 1:
        return []
    chain = sturm_chain(p)
    bound = cauchy_bound(p)
    total = count_roots(chain, -bound, bound)
    out = []

    def split(a, b, n):
        if n == 0:
            return
        if n == 1:
            out.append((a, b))
            return
        mid = (a + b) / 2
        # nudge off an exact root so interval endpoints stay regular
        while q_eval(p, mid) == 0:
            mid = (a + mid) / 2
        left = count_roots(chain, a, mid)
        split(a, mid, left)
        split(mid, b, n - left)

    split(-bound, bound, total)
    out.sort()
    return out


def refine_interval(p: list, a: Fraction, b: Fraction,
                    width: Fraction) -> tuple:
    """Shrink an isolating interval (a, b] below `width` by bisection."""
    p = q_trim([Fraction(c) for c in p])
    fa = q_eval(p, a)
    while b - a > width:
        mid = (a + b) / 2
        fm = q_eval(p, mid)
        if fm == 0:
            return (mid, mid)
        if (fa > 0) != (fm > 0):
            b = mid
        else:
            a, fa = mid, fm
    return (a, b)


def isolate_largest_real_root(p: list, width: Fraction) -> tuple:
    roots = isolate_real_roots(p)
    if not roots:
        raise ValueError("polynomial has no real roots")
    a, b = roots[-1]
    sf = squarefree_part(p)
    return refine_interval(sf, a, b, width)
