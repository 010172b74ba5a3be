"""Generalized binomial coefficients and executable combinatorial identities.

The binomial convention used throughout: for real (here rational) x and
integer k,

    binom(x, k) = x(x-1)...(x-k+1)/k!   for k > 0,
                  1                     for k = 0,
                  0                     for k < 0.

The ``check_*`` functions evaluate both sides of an identity exactly and are
used as oracles by the test suite and the ``identities`` CLI subcommand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactnum import RationalLike


def binom(x: RationalLike, k: int) -> Fraction:
    """Generalized binomial coefficient with rational upper argument."""
    if k < 0:
        return Fraction(0)
    if k == 0:
        return Fraction(1)
    x = Fraction(x)
    num = Fraction(1)
    for i in range(k):
        num *= x - i
        if num == 0:
            return Fraction(0)
    return num / _factorial(k)


@lru_cache(maxsize=None)
def _factorial(k: int) -> int:
    result = 1
    for i in range(2, k + 1):
        result *= i
    return result


def check_lemma_B1(n: int, k: int, r: int, a: int) -> bool:
    """binom(n-r,k-a)/binom(n,k) == binom(n-k,r-a)*binom(k,a)/(binom(n,r)*binom(r,a))."""
    if not (0 <= a <= r <= n and a <= k <= n):
        raise ValueError("requires n >= r >= a and n >= k >= a, all nonnegative")
    lhs = binom(n - r, k - a) / binom(n, k)
    rhs = binom(n - k, r - a) * binom(k, a) / (binom(n, r) * binom(r, a))
    return lhs == rhs


def check_identity_B2(a: int, b: int, c: int, d: int, e: int) -> bool:
    """Convolution identity on five nonnegative integers.

    binom(a+c+d+e, a+c) * binom(b+c+d+e, c+e)
        == sum_i binom(a+b+c+d+e-i, a+b+c+d) * binom(a+d, i+d) * binom(b+c, i+c)

    The index i runs over the finite window where both binom(a+d, i+d) and
    binom(b+c, i+c) are nonzero, i.e. max(-c, -d) <= i <= min(a, b).
    """
    lhs = binom(a + c + d + e, a + c) * binom(b + c + d + e, c + e)
    rhs = Fraction(0)
    for i in range(max(-c, -d), min(a, b) + 1):
        rhs += (
            binom(a + b + c + d + e - i, a + b + c + d)
            * binom(a + d, i + d)
            * binom(b + c, i + c)
        )
    return lhs == rhs


def check_corollary_B3(n: int, l: int, m: int, r: int) -> bool:
    """binom(n+m+r, n+r)*binom(l+m, r) == sum_{i=0}^{m} binom(n+l+m+i, i)*binom(n+m, n+i)*binom(l, r-i)."""
    lhs = binom(n + m + r, n + r) * binom(l + m, r)
    rhs = sum(
        (binom(n + l + m + i, i) * binom(n + m, n + i) * binom(l, r - i)
         for i in range(m + 1)),
        Fraction(0),
    )
    return lhs == rhs


@dataclass(frozen=True)
class FCoeffArgs:
    """Index bundle for the j-independent expansion coefficient f_{z1,z2}(u,v,w)."""

    z1: int
    z2: int
    u: int
    v: int
    w: int
    q: int
    t: int
    n: int

    def __post_init__(self):
        ok = (
            0 <= self.z2 <= self.z1 <= self.q <= 2 * self.t
            and self.n >= 2 * self.t
            and 0 <= self.u <= self.z2
            and 0 <= self.v <= self.q - self.z1
            and 0 <= self.w <= self.z2 - self.u
        )
        if not ok:
            raise ValueError(f"index bundle out of range: {self}")


def f_coeff(args: FCoeffArgs) -> Fraction:
    """Expansion coefficient f_{z1,z2}(u,v,w), independent of the running index.

    The variable switch q -> q - z2 made during the derivation is already
    applied here, so that ``check_lemma_B4`` is a literal transcription of
    the expansion it certifies.  nbar = n - 2t + q.
    """
    z1, z2, u, v, w = args.z1, args.z2, args.u, args.v, args.w
    nbar = args.n - 2 * args.t + args.q
    qs = args.q - z2
    num = (
        binom(z2, u)
        * binom(nbar, u + (z1 - z2))
        * binom(nbar - u + v, v)
        * binom(qs, (z1 - z2) + v)
        * binom(z2 - u, w)
    )
    den = binom(qs + z2, z1) * binom(nbar + qs + z2, qs + z2)
    return num / den


def check_lemma_B4(n: int, q: int, z1: int, z2: int, t: int, j: int) -> bool:
    """Binomial-ratio expansion into shifted binom(n-2t, .) terms, at one j.

    binom(nbar, j+z1)*binom(nbar, j+z2)/binom(nbar+q, j+q)
        == sum_{u,v,w} f_{z1,z2}(u,v,w) * binom(n-2t, j-v-w+z2)
    """
    if not (0 <= z2 <= z1 <= q <= 2 * t and n >= 2 * t):
        raise ValueError("requires 0 <= z2 <= z1 <= q <= 2t and n >= 2t")
    nbar = n - 2 * t + q
    num = binom(nbar, j + z1) * binom(nbar, j + z2)
    # Whenever the numerator is nonzero the denominator is too; treat 0/0 as 0.
    lhs = num / binom(nbar + q, j + q) if num != 0 else Fraction(0)
    rhs = Fraction(0)
    for u in range(z2 + 1):
        for v in range(q - z1 + 1):
            for w in range(z2 - u + 1):
                coeff = f_coeff(FCoeffArgs(z1, z2, u, v, w, q, t, n))
                rhs += coeff * binom(n - 2 * t, j - v - w + z2)
    return lhs == rhs


# ---------------------------------------------------------------------------
# Exhaustive sweeps (used by tests and the `identities` CLI subcommand)
# ---------------------------------------------------------------------------


def sweep_lemma_B1(n_max: int = 20) -> bool:
    return all(
        check_lemma_B1(n, k, r, a)
        for n in range(n_max + 1)
        for r in range(n + 1)
        for k in range(n + 1)
        for a in range(min(r, k) + 1)
    )


def sweep_identity_B2(arg_max: int = 6) -> bool:
    rng = range(arg_max + 1)
    return all(
        check_identity_B2(a, b, c, d, e)
        for a in rng for b in rng for c in rng for d in rng for e in rng
    )


def sweep_corollary_B3(nlm_max: int = 8, r_min: int = -2, r_max: int = 10) -> bool:
    return all(
        check_corollary_B3(n, l, m, r)
        for n in range(1, nlm_max + 1)
        for l in range(1, nlm_max + 1)
        for m in range(1, nlm_max + 1)
        for r in range(r_min, r_max + 1)
    )


def sweep_lemma_B4(n_max: int = 8, t_max: int = 2) -> bool:
    for n in range(n_max + 1):
        for t in range(t_max + 1):
            if n < 2 * t:
                continue
            for q in range(2 * t + 1):
                for z1 in range(q + 1):
                    for z2 in range(z1 + 1):
                        nbar = n - 2 * t + q
                        for j in range(-q - 2 * t - 2, nbar + 3):
                            if not check_lemma_B4(n, q, z1, z2, t, j):
                                return False
    return True


def run_identity_sweeps() -> dict:
    """All four identity sweeps at their documented ranges."""
    results = {
        "lemma_B1": {"params": {"n_max": 20}, "passed": sweep_lemma_B1(20)},
        "identity_B2": {"params": {"arg_max": 6}, "passed": sweep_identity_B2(6)},
        "corollary_B3": {
            "params": {"nlm_max": 8, "r_min": -2, "r_max": 10},
            "passed": sweep_corollary_B3(8, -2, 10),
        },
        "lemma_B4": {"params": {"n_max": 8, "t_max": 2}, "passed": sweep_lemma_B4(8, 2)},
    }
    results["all_passed"] = all(v["passed"] for v in results.values() if isinstance(v, dict))
    return results
