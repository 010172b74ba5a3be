"""Exact scalar arithmetic: canonical forms, zero test, float rendering."""

import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aecodes.exactnum import (
    RadicalSum,
    SqrtRational,
    normalize,
    radsum_add,
    radsum_is_zero,
    sqrt_mul,
    sqrt_rational_from_json,
    sqrt_rational_to_json,
    squarefree_decompose,
    to_float,
)


def brute_squarefree(n: int) -> bool:
    """Oracle: n has no square divisor > 1 (trial division)."""
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


class TestNormalize:
    def test_gcd_reduction(self):
        assert normalize(2, 4) == Fraction(1, 2)

    def test_sign_normalization(self):
        q = normalize(-3, -6)
        assert q == Fraction(1, 2) and q.denominator == 2

    def test_zero(self):
        q = normalize(0, 5)
        assert q == 0 and q.denominator == 1

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            normalize(1, 0)


class TestSquarefreeDecompose:
    def test_eight(self):
        assert squarefree_decompose(Fraction(8)) == (Fraction(2), Fraction(2))

    def test_three_tenths(self):
        # oracle: 3/10 = (1/10)^2 * 30 and 30 is square-free by trial division
        scale, kernel = squarefree_decompose(Fraction(3, 10))
        assert (scale, kernel) == (Fraction(1, 10), Fraction(30))
        assert brute_squarefree(30)

    def test_one(self):
        assert squarefree_decompose(Fraction(1)) == (Fraction(1), Fraction(1))

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError):
            squarefree_decompose(Fraction(0))
        with pytest.raises(ValueError):
            squarefree_decompose(Fraction(-3, 7))

    @given(
        num=st.integers(min_value=1, max_value=10**6),
        den=st.integers(min_value=1, max_value=10**6),
    )
    @settings(max_examples=200, deadline=None)
    def test_roundtrip_and_squarefree(self, num, den):
        r = Fraction(num, den)
        scale, kernel = squarefree_decompose(r)
        assert scale * scale * kernel == r
        assert kernel.denominator == 1 and brute_squarefree(kernel.numerator)


def _sq(sign, num, den):
    return SqrtRational.of_sign_radicand(sign, Fraction(num, den))


class TestSqrtRational:
    def test_mul_radicands(self):
        assert sqrt_mul(_sq(1, 3, 10), _sq(1, 7, 10)) == _sq(1, 21, 100)

    def test_mul_signs(self):
        v = sqrt_mul(_sq(-1, 1, 2), _sq(1, 1, 2))
        assert v == _sq(-1, 1, 4)
        assert v.as_rational() == Fraction(-1, 2)

    def test_absorbing_zero(self):
        assert sqrt_mul(_sq(1, 5, 3), SqrtRational.zero()).is_zero()

    def test_sign_radicand_consistency_enforced(self):
        with pytest.raises(ValueError):
            SqrtRational.of_sign_radicand(0, Fraction(1, 2))
        with pytest.raises(ValueError):
            SqrtRational.of_sign_radicand(1, Fraction(0))
        with pytest.raises(ValueError):
            SqrtRational.of_sign_radicand(2, Fraction(1))

    def test_sign_and_radicand_views(self):
        v = _sq(-1, 9, 4)
        assert v.sign == -1 and v.radicand == Fraction(9, 4)
        assert v.as_rational() == Fraction(-3, 2)

    @given(
        a=st.fractions(min_value=0, max_value=50),
        b=st.fractions(min_value=0, max_value=50),
        c=st.fractions(min_value=0, max_value=50),
    )
    @settings(max_examples=150, deadline=None)
    def test_mul_associative_commutative(self, a, b, c):
        x, y, z = SqrtRational.sqrt(a), SqrtRational.sqrt(b), SqrtRational.sqrt(c)
        assert x * y == y * x
        assert (x * y) * z == x * (y * z)

    @given(
        a=st.fractions(min_value=-100, max_value=100),
        b=st.fractions(min_value=-100, max_value=100),
        c=st.fractions(min_value=-100, max_value=100),
    )
    @settings(max_examples=150, deadline=None)
    def test_rational_field_axioms(self, a, b, c):
        assert a + b == b + a and a * b == b * a
        assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if a != 0:
            assert a * (1 / a) == 1
        assert a + (-a) == 0


class TestRadicalSum:
    def test_cancellation(self):
        s = RadicalSum.from_sqrt(SqrtRational.sqrt(2)) + RadicalSum.from_sqrt(
            -SqrtRational.sqrt(2)
        )
        assert radsum_is_zero(s)

    def test_perfect_square_collapses(self):
        prod = SqrtRational.sqrt(Fraction(3, 10)) * SqrtRational.sqrt(Fraction(3, 10))
        s = radsum_add(
            RadicalSum.from_sqrt(prod), RadicalSum.from_rational(Fraction(-3, 10))
        )
        assert s.is_zero()

    def test_distinct_kernels_nonzero(self):
        s = RadicalSum.from_sqrt(SqrtRational.sqrt(2)) + RadicalSum.from_sqrt(
            SqrtRational.sqrt(3)
        )
        assert not s.is_zero()

    def test_product_expansion(self):
        root2 = RadicalSum.from_sqrt(SqrtRational.sqrt(2))
        root3 = RadicalSum.from_sqrt(SqrtRational.sqrt(3))
        square = (root2 + root3) * (root2 + root3)
        # (sqrt2 + sqrt3)^2 = 5 + 2 sqrt6
        assert square.terms() == [(1, Fraction(5)), (6, Fraction(2))]

    def test_canonical_term_order(self):
        s = RadicalSum.from_sqrt(SqrtRational.sqrt(30)) + RadicalSum.from_rational(2)
        assert [k for k, _ in s.terms()] == [1, 30]


class TestToFloat:
    def test_against_integer_isqrt_oracle(self):
        # independent oracle: floor(sqrt(3/10 * 4^k)) / 2^k underestimates
        # sqrt(3/10) by < 2^-k
        bits = 200
        val = to_float(RadicalSum.from_sqrt(SqrtRational.sqrt(Fraction(3, 10))), bits)
        k = 220
        low = math.isqrt(3 * 4**k // 10)
        with mpmath.workprec(bits + 40):
            oracle = mpmath.mpf(low) / mpmath.mpf(2) ** k
            assert abs(val - oracle) < mpmath.mpf(2) ** (-(bits - 5))

    def test_zero(self):
        assert to_float(RadicalSum.zero(), 100) == 0

    def test_rational_collapse(self):
        half_root4 = SqrtRational.sqrt(4).scaled(Fraction(1, 2))
        assert to_float(RadicalSum.from_sqrt(half_root4), 100) == 1

    def test_precision_floor(self):
        with pytest.raises(ValueError):
            to_float(RadicalSum.from_rational(1), 52)

    def test_zero_test_matches_float_rendering(self):
        rng = random.Random(20260811)
        threshold = mpmath.mpf(2) ** -200
        for _ in range(120):
            terms = []
            for _ in range(rng.randint(1, 20)):
                radicand = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6))
                coeff = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
                terms.append(SqrtRational.sqrt(radicand).scaled(coeff))
            s = RadicalSum.total(terms)
            # nonzero sums are detectably nonzero; exact negations vanish
            assert radsum_is_zero(s) == (abs(to_float(s, 256)) < threshold)
            cancelled = s - s
            assert radsum_is_zero(cancelled)
            assert abs(to_float(cancelled, 256)) < threshold


class TestSerialization:
    def test_roundtrip(self):
        for v in (_sq(1, 3, 10), _sq(-1, 7, 2), SqrtRational.zero()):
            assert sqrt_rational_from_json(sqrt_rational_to_json(v)) == v

    def test_decimal_strings(self):
        d = sqrt_rational_to_json(_sq(-1, 3, 10))
        assert d == {"sign": -1, "radicand_num": "3", "radicand_den": "10"}
