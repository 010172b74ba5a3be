"""Exact scalar arithmetic over Q and over finite sums of square roots.

Every scalar that appears in the code constructions and verification sums is
a finite Q-linear combination of square roots of positive rationals.  Such a
number is stored canonically as ``sum_k coeff_k * sqrt(kernel_k)`` with the
kernels square-free positive integers.  Because square roots of distinct
square-free integers are linearly independent over Q, equality with zero is
decidable by inspecting the canonical form.

All values here are immutable and all operations are pure, so they can be
shared freely between threads or tasks.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

import mpmath

Rational = Fraction

RationalLike = Union[Fraction, int]

_TRIAL_PRIME_LIMIT = 1_000_000


def normalize(num: int, den: int) -> Fraction:
    """Canonical reduced fraction with positive denominator."""
    if den == 0:
        raise ZeroDivisionError("denominator must be nonzero")
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# Integer factorization: trial division over a prime table, Pollard rho for
# the (rare) large cofactors.  Every number met in practice is smooth, since
# it arises from binomial coefficients and factorials.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1)
def _prime_table() -> tuple[int, ...]:
    limit = _TRIAL_PRIME_LIMIT
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # Deterministic for n < 3.3e24 with these witnesses.
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    seed = 1
    while True:
        seed += 1
        y, c, m = seed, seed + 1, 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer as {prime: exponent}."""
    if n <= 0:
        raise ValueError("factorize expects a positive integer")
    factors: dict[int, int] = {}
    for p in _prime_table():
        if p * p > n:
            break
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return factors


@lru_cache(maxsize=1 << 16)
def _squarefree_int(n: int) -> tuple[int, int]:
    """Write positive n as s**2 * k with k square-free; returns (s, k)."""
    s = k = 1
    for p, e in factorize(n).items():
        s *= p ** (e // 2)
        if e % 2:
            k *= p
    return s, k


def squarefree_decompose(r: Fraction) -> tuple[Fraction, Fraction]:
    """Write positive r as scale**2 * kernel with a square-free kernel.

    The kernel is always an integer: p/q = (s/q)**2 * k where p*q = s**2 * k.
    """
    r = Fraction(r)
    if r <= 0:
        raise ValueError("squarefree_decompose expects a positive rational")
    s, k = _squarefree_int(r.numerator * r.denominator)
    return Fraction(s, r.denominator), Fraction(k)


# ---------------------------------------------------------------------------
# Signed square roots of rationals
# ---------------------------------------------------------------------------


class SqrtRational:
    """A value sign * sqrt(radicand), radicand a nonnegative rational.

    Canonical storage is ``coeff * sqrt(kernel)`` with ``kernel`` a
    square-free positive integer, which makes products cheap (a single gcd)
    and makes equality structural.
    """

    __slots__ = ("coeff", "kernel")

    def __init__(self, coeff: RationalLike, kernel: int):
        coeff = Fraction(coeff)
        if coeff == 0:
            kernel = 1
        self.coeff = coeff
        self.kernel = kernel

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "SqrtRational":
        return SqrtRational(0, 1)

    @staticmethod
    def one() -> "SqrtRational":
        return SqrtRational(1, 1)

    @staticmethod
    def from_rational(q: RationalLike) -> "SqrtRational":
        return SqrtRational(Fraction(q), 1)

    @staticmethod
    def sqrt(q: RationalLike) -> "SqrtRational":
        """The nonnegative square root of a nonnegative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError(f"square root of negative rational {q}")
        if q == 0:
            return SqrtRational.zero()
        scale, kernel = squarefree_decompose(q)
        return SqrtRational(scale, int(kernel))

    @staticmethod
    def of_sign_radicand(sign: int, radicand: RationalLike) -> "SqrtRational":
        radicand = Fraction(radicand)
        if sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0, or +1, got {sign}")
        if radicand < 0:
            raise ValueError("radicand must be nonnegative")
        if (sign == 0) != (radicand == 0):
            raise ValueError("sign is 0 exactly when the radicand is 0")
        if sign == 0:
            return SqrtRational.zero()
        root = SqrtRational.sqrt(radicand)
        return root if sign > 0 else -root

    # -- views --------------------------------------------------------------

    @property
    def sign(self) -> int:
        return (self.coeff > 0) - (self.coeff < 0)

    @property
    def radicand(self) -> Fraction:
        """The represented value squared (value == sign * sqrt(radicand))."""
        return self.coeff * self.coeff * self.kernel

    def is_zero(self) -> bool:
        return self.coeff == 0

    def is_rational(self) -> bool:
        return self.kernel == 1

    def as_rational(self) -> Fraction:
        if self.kernel != 1:
            raise ValueError(f"{self} is irrational")
        return self.coeff

    # -- arithmetic ----------------------------------------------------------

    def __mul__(self, other: "SqrtRational") -> "SqrtRational":
        if not isinstance(other, SqrtRational):
            return NotImplemented
        # Product of coprime square-free parts stays square-free.
        g = math.gcd(self.kernel, other.kernel)
        coeff = self.coeff * other.coeff * g
        return SqrtRational(coeff, (self.kernel // g) * (other.kernel // g))

    def __neg__(self) -> "SqrtRational":
        return SqrtRational(-self.coeff, self.kernel)

    def scaled(self, q: RationalLike) -> "SqrtRational":
        """This value multiplied by a rational (possibly negative)."""
        return SqrtRational(self.coeff * Fraction(q), self.kernel)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SqrtRational)
            and self.coeff == other.coeff
            and self.kernel == other.kernel
        )

    def __hash__(self) -> int:
        return hash((self.coeff, self.kernel))

    def to_mpf(self, precision_bits: int = 200) -> mpmath.mpf:
        with mpmath.workprec(precision_bits + 10):
            val = mpmath.mpf(self.coeff.numerator) / self.coeff.denominator
            return val * mpmath.sqrt(mpmath.mpf(self.kernel))

    def __repr__(self) -> str:
        if self.kernel == 1:
            return f"{self.coeff}"
        if self.coeff == 1:
            return f"sqrt({self.kernel})"
        return f"{self.coeff}*sqrt({self.kernel})"


def sqrt_mul(a: SqrtRational, b: SqrtRational) -> SqrtRational:
    """Product of two signed square roots (sign and radicand multiply)."""
    return a * b


# ---------------------------------------------------------------------------
# Finite sums of square roots
# ---------------------------------------------------------------------------


class RadicalSum:
    """A finite sum of rational multiples of sqrt(square-free integer).

    The zero test is exact and complete for this class: the represented real
    number is zero iff every stored coefficient is zero, by the linear
    independence over Q of square roots of distinct square-free integers.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        self._terms = {k: c for k, c in (terms or {}).items() if c != 0}

    @staticmethod
    def zero() -> "RadicalSum":
        return RadicalSum()

    @staticmethod
    def from_rational(q: RationalLike) -> "RadicalSum":
        return RadicalSum({1: Fraction(q)})

    @staticmethod
    def from_sqrt(s: SqrtRational) -> "RadicalSum":
        return RadicalSum({s.kernel: s.coeff})

    @staticmethod
    def total(values: Iterable[SqrtRational]) -> "RadicalSum":
        """Sum of signed square roots, accumulated in place."""
        terms: dict[int, Fraction] = {}
        for v in values:
            if v.coeff:
                terms[v.kernel] = terms.get(v.kernel, Fraction(0)) + v.coeff
        return RadicalSum(terms)

    def terms(self) -> list[tuple[int, Fraction]]:
        """Canonically ordered (kernel, coefficient) pairs."""
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return set(self._terms) <= {1}

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._terms.get(1, Fraction(0))

    def __add__(self, other: "RadicalSum") -> "RadicalSum":
        if not isinstance(other, RadicalSum):
            return NotImplemented
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms.get(k, Fraction(0)) + c
        return RadicalSum(terms)

    def __sub__(self, other: "RadicalSum") -> "RadicalSum":
        return self + (-other)

    def __neg__(self) -> "RadicalSum":
        return RadicalSum({k: -c for k, c in self._terms.items()})

    def __mul__(self, other: "RadicalSum") -> "RadicalSum":
        if not isinstance(other, RadicalSum):
            return NotImplemented
        terms: dict[int, Fraction] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                g = math.gcd(k1, k2)
                k = (k1 // g) * (k2 // g)
                terms[k] = terms.get(k, Fraction(0)) + c1 * c2 * g
        return RadicalSum(terms)

    def add_sqrt(self, s: SqrtRational) -> "RadicalSum":
        if s.coeff == 0:
            return self
        terms = dict(self._terms)
        terms[s.kernel] = terms.get(s.kernel, Fraction(0)) + s.coeff
        return RadicalSum(terms)

    def scaled(self, q: RationalLike) -> "RadicalSum":
        q = Fraction(q)
        return RadicalSum({k: c * q for k, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RadicalSum) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms()))

    def to_mpf(self, precision_bits: int = 200) -> mpmath.mpf:
        """Float rendering; terms are summed in ascending magnitude."""
        if precision_bits < 53:
            raise ValueError("precision_bits must be at least 53")
        with mpmath.workprec(precision_bits + 20):
            vals = [
                mpmath.mpf(c.numerator) / c.denominator * mpmath.sqrt(mpmath.mpf(k))
                for k, c in self._terms.items()
            ]
            vals.sort(key=abs)
            acc = mpmath.mpf(0)
            for v in vals:
                acc += v
        with mpmath.workprec(precision_bits):
            return +acc

    def to_decimal(self, precision_bits: int = 200) -> str:
        with mpmath.workprec(precision_bits):
            return mpmath.nstr(
                self.to_mpf(precision_bits), int(precision_bits / 3.32) + 2
            )

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(repr(SqrtRational(c, k)) for k, c in self.terms())


def radsum_add(a: RadicalSum, b: RadicalSum) -> RadicalSum:
    return a + b


def radsum_is_zero(a: RadicalSum) -> bool:
    return a.is_zero()


def to_float(a: RadicalSum, precision_bits: int) -> mpmath.mpf:
    """High-precision float value of a radical sum."""
    return a.to_mpf(precision_bits)


# ---------------------------------------------------------------------------
# Serialization of scalars (shared by the code file format and reports)
# ---------------------------------------------------------------------------


def sqrt_rational_to_json(s: SqrtRational) -> dict:
    r = s.radicand
    return {
        "sign": s.sign,
        "radicand_num": str(r.numerator),
        "radicand_den": str(r.denominator),
    }


def sqrt_rational_from_json(d: dict) -> SqrtRational:
    radicand = Fraction(int(d["radicand_num"]), int(d["radicand_den"]))
    return SqrtRational.of_sign_radicand(int(d["sign"]), radicand)


def radical_sum_to_json(v: RadicalSum, precision_bits: int = 200) -> dict:
    return {
        "terms": [
            {
                "kernel": str(k),
                "coeff_num": str(c.numerator),
                "coeff_den": str(c.denominator),
            }
            for k, c in v.terms()
        ],
        "decimal": v.to_decimal(precision_bits),
    }
