"""Prime fields with word-sized moduli.

Residues are plain Python ints in [0, p); the `PrimeField` object carries the
modulus and the scalar operations.  `Fp` wraps a residue together with its
field so that generic ring code (matrices, polynomials) can use operator
syntax.  Hot loops elsewhere work on raw ints and call the field methods
directly.
"""

from __future__ import annotations

import random

# Witness set making Miller-Rabin deterministic for all n < 3.3 * 10^24,
# which covers every modulus this package draws (~2^61).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

PRIME_BITS = 61


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = (x * x) % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng: random.Random, bits: int = PRIME_BITS) -> int:
    """Uniform prime among the odd integers in [2^(bits-1), 2^bits)."""
    lo, hi = 1 << (bits - 1), 1 << bits
    while True:
        n = rng.randrange(lo | 1, hi, 2)
        if is_probable_prime(n):
            return n


class PrimeField:
    """Arithmetic context for GF(p)."""

    __slots__ = ("p",)

    def __init__(self, p: int, check: bool = True):
        if check and not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in GF(p)")
        return pow(a, self.p - 2, self.p)

    def elem(self, v: int) -> "Fp":
        return Fp(v % self.p, self)

    @property
    def zero(self) -> "Fp":
        return Fp(0, self)

    @property
    def one(self) -> "Fp":
        return Fp(1, self)


class Fp:
    """A residue bound to its field, for generic ring code."""

    __slots__ = ("v", "field")

    def __init__(self, v: int, field: PrimeField):
        self.v = v
        self.field = field

    def __add__(self, other):
        return Fp((self.v + other.v) % self.field.p, self.field)

    def __sub__(self, other):
        return Fp((self.v - other.v) % self.field.p, self.field)

    def __mul__(self, other):
        return Fp((self.v * other.v) % self.field.p, self.field)

    def __neg__(self):
        return Fp(-self.v % self.field.p, self.field)

    def __truediv__(self, other):
        return Fp((self.v * self.field.inv(other.v)) % self.field.p, self.field)

    def exact_div(self, other):
        return self / other

    def __eq__(self, other):
        return isinstance(other, Fp) and self.v == other.v and self.field == other.field

    def __hash__(self):
        return hash((self.v, self.field.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Fp({self.v} mod {self.field.p})"
