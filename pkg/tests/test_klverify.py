"""Verification logic: direct KL checks, simplified conditions, cross-checks.

Includes an independent qubit-space oracle: permutation-invariant codes are
materialized as full 2^n state vectors and checked against explicit Pauli
errors, so the condition verifier is validated in both directions against a
computation that shares none of its machinery.
"""

import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from aecodes.codes import (
    CodeBasis,
    CodeKind,
    GmdeParams,
    construct_ae_gmde,
    construct_pi_gmde,
    fixtures,
)
from aecodes.errors import build_ae_error_set
from aecodes.exactnum import SqrtRational
from aecodes.klverify import (
    check_conditions,
    check_kl_correct,
    check_kl_detect,
    cross_validate,
)


class TestDirectKL:
    def test_j7half_corrects_order_one(self):
        report = check_kl_correct(fixtures()["J7half"], build_ae_error_set(7, 1))
        assert report.passed and not report.violations

    def test_j21half_corrects_order_two(self):
        report = check_kl_correct(fixtures()["J21half"], build_ae_error_set(21, 2))
        assert report.passed

    def test_j27half_detects_order_two(self):
        report = check_kl_detect(fixtures()["J27half"], build_ae_error_set(27, 2))
        assert report.passed

    def test_j11half_detects_order_two(self):
        report = check_kl_detect(fixtures()["J11half"], build_ae_error_set(11, 2))
        assert report.passed

    def test_duplicated_basis_fails_on_identity_operator(self):
        base = fixtures()["J7half"]
        dup = CodeBasis(base.kind, base.two_J, (base.basis[0], base.basis[0]))
        report = check_kl_correct(dup, build_ae_error_set(7, 1))
        assert not report.passed
        identity = "E[r=0,dJ=+0,dm=+0]"
        assert any(
            v.op_a == identity and v.op_b == identity and (v.i, v.j) == (0, 1)
            for v in report.violations
        )

    def test_random_subspace_fails_detection(self):
        rng = random.Random(99)
        n = 7
        v = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n + 1)]
        w = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n + 1)]
        nv = sum(x * x for x in v)
        ip = sum(a * b for a, b in zip(v, w))
        w = [wi - (ip / nv) * vi for wi, vi in zip(w, v)]
        nw = sum(x * x for x in w)
        code = CodeBasis(
            CodeKind.AE,
            n,
            (
                tuple(SqrtRational.from_rational(x) * SqrtRational.sqrt(1 / nv) for x in v),
                tuple(SqrtRational.from_rational(x) * SqrtRational.sqrt(1 / nw) for x in w),
            ),
        )
        assert code.is_orthonormal()
        report = check_kl_detect(code, build_ae_error_set(n, 1))
        assert not report.passed and report.violations
        # confirm one violation numerically
        viol = report.violations[0]
        op = next(o for o in build_ae_error_set(n, 1).ops if o.label == viol.op_a)
        vi = [float(c.to_mpf(80)) for c in code.basis[viol.i]]
        vj = [float(c.to_mpf(80)) for c in code.basis[viol.j]]
        amp = {j: float(a.to_mpf(80)) for j, a in op.entries.items()}
        direct = sum(
            vi[j + op.delta_m] * amp.get(j, 0.0) * vj[j]
            for j in range(n + 1)
            if 0 <= j + op.delta_m <= n
        )
        if viol.i == viol.j:
            direct -= sum(
                (
                    [float(c.to_mpf(80)) for c in code.basis[0]][j + op.delta_m]
                    * amp.get(j, 0.0)
                    * [float(c.to_mpf(80)) for c in code.basis[0]][j]
                )
                for j in range(n + 1)
                if 0 <= j + op.delta_m <= n
            )
        assert abs(direct - float(viol.residual.to_mpf(80))) < 1e-9
        assert abs(direct) > 1e-8

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            check_kl_correct(fixtures()["J7half"], build_ae_error_set(9, 1))

    def test_cross_sector_debug_mode(self):
        report = check_kl_correct(
            fixtures()["J7half"], build_ae_error_set(7, 1), include_cross_sector=True
        )
        assert report.passed
        cross = [k for k in report.gram if len(k) == 2]
        assert len(cross) > 22  # includes the structurally zero pairs

    def test_gram_contains_identity_norm(self):
        report = check_kl_correct(fixtures()["J7half"], build_ae_error_set(7, 1))
        identity = "E[r=0,dJ=+0,dm=+0]"
        assert report.gram[(identity, identity)].as_rational() == 1


class TestConditions:
    def test_construction_passes(self):
        code = construct_ae_gmde(GmdeParams(2, 1, 2, -1))
        assert check_conditions(code, 1, 2).all_pass

    def test_bd_code_passes(self):
        code = construct_ae_gmde(GmdeParams(3, 1, 4, 1))
        assert check_conditions(code, 1, 2).all_pass

    def test_duplicate_breaks_c1_not_c2(self):
        base = fixtures()["J7half"]
        dup = CodeBasis(base.kind, base.two_J, (base.basis[0], base.basis[0]))
        report = check_conditions(dup, 1, 2)
        assert not report.c1 and report.c2

    def test_invalid_t_prime_rejected(self):
        with pytest.raises(ValueError):
            check_conditions(fixtures()["J7half"], 1, 3)

    def test_index_overflow_convention(self):
        # a support point at the very top exercises the j + a > n cutoff
        code = construct_ae_gmde(GmdeParams(3, 1, 4, 1))  # support includes j = 11
        report = check_conditions(code, 1, 2)
        assert report.all_pass

    def test_verdicts_invariant_under_global_sign_flip(self):
        base = fixtures()["J7half"]
        flipped = CodeBasis(
            base.kind,
            base.two_J,
            (base.basis[0], tuple(-c for c in base.basis[1])),
        )
        eset = build_ae_error_set(7, 1)
        assert check_kl_correct(flipped, eset).passed
        assert check_kl_detect(flipped, eset).passed
        assert check_conditions(flipped, 1, 2).all_pass


class TestCrossValidation:
    def test_fixtures(self):
        for code in fixtures().values():
            assert cross_validate(code, 1)

    def test_small_construction_sweep(self):
        for g in (2, 3):
            for m in (1, 2):
                for delta in (2, 3):
                    for eps in (-1, 1):
                        if eps == 1 and g < 3:
                            continue
                        code = construct_ae_gmde(GmdeParams(g, m, delta, eps))
                        assert cross_validate(code, 1)

    def test_detection_monotonicity(self):
        # correcting at order t implies detecting at order t
        for params in (GmdeParams(2, 1, 2, -1), GmdeParams(3, 1, 4, 1), GmdeParams(4, 2, 4, -1)):
            code = construct_ae_gmde(params)
            t = 2 if params.g == 4 else 1
            eset = build_ae_error_set(code.two_J, t)
            assert check_kl_correct(code, eset).passed
            assert check_kl_detect(code, eset).passed


# ---------------------------------------------------------------------------
# Qubit-space oracle for permutation-invariant codes
# ---------------------------------------------------------------------------


def dicke_vector(n: int, w: int) -> np.ndarray:
    v = np.zeros(2**n)
    idxs = [sum(1 << i for i in pos) for pos in itertools.combinations(range(n), w)]
    v[idxs] = 1.0 / np.sqrt(len(idxs))
    return v


def qubit_vectors(code: CodeBasis) -> list[np.ndarray]:
    n = code.two_J
    out = []
    for vec in code.basis:
        acc = np.zeros(2**n)
        for w, c in enumerate(vec):
            if not c.is_zero():
                acc += float(c.to_mpf(80)) * dicke_vector(n, w)
        out.append(acc)
    return out


def apply_pauli(state: np.ndarray, site: int, which: str) -> np.ndarray:
    idx = np.arange(state.size)
    mask = 1 << site
    if which == "Z":
        return state * (1 - 2 * ((idx >> site) & 1))
    source = idx ^ mask
    if which == "X":
        return state[source]
    phase = 1j * (1 - 2 * ((source >> site) & 1))
    return (state[source] * phase).astype(complex)


def weight_one_error_images(states, n):
    images = [[s.astype(complex) for s in states]]
    for site in range(n):
        for which in ("X", "Y", "Z"):
            images.append([apply_pauli(s, site, which).astype(complex) for s in states])
    return images


def qubit_kl_max_violation(code: CodeBasis) -> float:
    """Largest KL defect of a PI code against all weight-<=1 Pauli errors."""
    n = code.two_J
    states = qubit_vectors(code)
    images = weight_one_error_images(states, n)
    worst = 0.0
    for img_a in images:
        for img_b in images:
            g = np.vdot(img_a[0], img_b[0])
            for i in range(len(states)):
                for j in range(len(states)):
                    val = np.vdot(img_a[i], img_b[j])
                    expected = g if i == j else 0.0
                    worst = max(worst, abs(val - expected))
    return worst


def perturb(code: CodeBasis, vec_idx: int, coeff_idx: int) -> CodeBasis:
    vec = list(code.basis[vec_idx])
    vec[coeff_idx] = vec[coeff_idx].scaled(Fraction(1001, 1000))
    norm_sq = sum((c.radicand for c in vec), Fraction(0))
    rescale = SqrtRational.sqrt(1 / norm_sq)
    basis = list(code.basis)
    basis[vec_idx] = tuple(c * rescale for c in vec)
    return CodeBasis(code.kind, code.two_J, tuple(basis), code.label)


class TestPermutationInvariantEquivalence:
    """Conditions at t' = 2t match genuine single-error correctability."""

    def test_good_code_passes_both(self):
        pi = construct_pi_gmde(GmdeParams(2, 1, 2, -1))
        assert check_conditions(pi, 1, 2).all_pass
        assert qubit_kl_max_violation(pi) < 1e-9

    def test_perturbed_code_fails_both(self):
        pi = construct_pi_gmde(GmdeParams(2, 1, 2, -1))
        bent = perturb(pi, 0, 0)
        assert not check_conditions(bent, 1, 2).all_pass
        assert qubit_kl_max_violation(bent) > 1e-6

    def test_second_family_member(self):
        pi = construct_pi_gmde(GmdeParams(3, 1, 2, -1))
        assert check_conditions(pi, 1, 2).all_pass
        assert qubit_kl_max_violation(pi) < 1e-9
        bent = perturb(pi, 1, pi.support(1)[0])
        assert not check_conditions(bent, 1, 2).all_pass
        assert qubit_kl_max_violation(bent) > 1e-6
