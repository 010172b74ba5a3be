"""Exact verification: Knill-Laflamme conditions and the simplified (C1)-(C4).

Everything here is decided with exact arithmetic: an inner product is a
finite sum of signed square roots of rationals, and a condition holds when
the canonical form of the sum is literally zero.

Operator pairs whose sector shifts differ act into different total-momentum
sectors and are skipped as identically zero; a debug flag records them in
the Gram data to make the structural vanishing visible in reports.

Verification over (operator pair x basis pair) tuples is embarrassingly
parallel in principle; the implementation is sequential and deterministic,
which also fixes the report ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .codes import CodeBasis
from .combinatorics import binom
from .errors import ErrorOp, ErrorSet, build_ae_error_set
from .exactnum import RadicalSum, SqrtRational, radical_sum_to_json


@dataclass(frozen=True)
class KLViolation:
    i: int
    j: int
    op_a: str
    op_b: str
    residual: RadicalSum

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "op_a": self.op_a,
            "op_b": self.op_b,
            "residual": radical_sum_to_json(self.residual),
        }


@dataclass(frozen=True)
class KLReport:
    mode: str
    passed: bool
    violations: tuple[KLViolation, ...]
    gram: dict[tuple[str, ...], RadicalSum]

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "pass": self.passed,
            "violations": [v.to_dict() for v in self.violations],
            "gram": [
                {"ops": list(key), "value": radical_sum_to_json(val)}
                for key, val in sorted(self.gram.items())
            ],
        }


@dataclass(frozen=True)
class ConditionFailure:
    a: int
    b: int
    pair: tuple[int, int]
    residual: RadicalSum

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "pair": list(self.pair),
            "residual": radical_sum_to_json(self.residual),
        }


@dataclass(frozen=True)
class ConditionReport:
    t: int
    t_prime: int
    c1: bool
    c2: bool
    c3_failures: tuple[ConditionFailure, ...]
    c4_failures: tuple[ConditionFailure, ...]

    @property
    def all_pass(self) -> bool:
        return self.c1 and self.c2 and not self.c3_failures and not self.c4_failures

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "t_prime": self.t_prime,
            "c1": self.c1,
            "c2": self.c2,
            "c3_failures": [f.to_dict() for f in self.c3_failures],
            "c4_failures": [f.to_dict() for f in self.c4_failures],
            "pass": self.all_pass,
        }


def _check_dims(code: CodeBasis, eset: ErrorSet) -> None:
    for op in eset.ops:
        if op.source_two_J != code.two_J:
            raise ValueError(
                f"operator built for two_J={op.source_two_J} applied to a "
                f"two_J={code.two_J} code"
            )


def _pair_value(
    code: CodeBasis,
    supports: list[tuple[int, ...]],
    i: int,
    j: int,
    op_a: ErrorOp,
    op_b: ErrorOp,
) -> RadicalSum:
    """<c_i| op_a^dagger op_b |c_j> for operators sharing a target sector."""
    vi, vj = code.basis[i], code.basis[j]
    shift = op_b.delta_m - op_a.delta_m
    terms = []
    for j2 in supports[j]:
        amp_b = op_b.entries.get(j2)
        if amp_b is None:
            continue
        j1 = j2 + shift
        if not 0 <= j1 <= code.two_J:
            continue
        amp_a = op_a.entries.get(j1)
        if amp_a is None or vi[j1].is_zero():
            continue
        terms.append(amp_a * vi[j1] * amp_b * vj[j2])
    return RadicalSum.total(terms)


def check_kl_correct(
    code: CodeBasis, eset: ErrorSet, include_cross_sector: bool = False
) -> KLReport:
    """<c_i| E_a^dagger E_b |c_j> = delta_ij g_ab for all operator pairs.

    Pairs with different sector shifts map into orthogonal total-momentum
    sectors and vanish structurally; they are evaluated only when
    ``include_cross_sector`` is set, and then contribute zero Gram entries.
    """
    _check_dims(code, eset)
    supports = [code.support(i) for i in range(code.dim)]
    violations: list[KLViolation] = []
    gram: dict[tuple[str, ...], RadicalSum] = {}
    sectors = eset.by_sector()
    for _, ops in sorted(sectors.items()):
        for ai in range(len(ops)):
            for bi in range(ai, len(ops)):
                op_a, op_b = ops[ai], ops[bi]
                diag0 = None
                for i in range(code.dim):
                    for j in range(code.dim):
                        val = _pair_value(code, supports, i, j, op_a, op_b)
                        if i != j:
                            if not val.is_zero():
                                violations.append(
                                    KLViolation(i, j, op_a.label, op_b.label, val)
                                )
                        elif diag0 is None:
                            diag0 = val
                        else:
                            residual = val - diag0
                            if not residual.is_zero():
                                violations.append(
                                    KLViolation(i, j, op_a.label, op_b.label, residual)
                                )
                gram[(op_a.label, op_b.label)] = diag0
    if include_cross_sector:
        # Different delta_J means disjoint target sectors, hence exact zeros.
        for op_a, op_b in combinations(eset.ops, 2):
            if op_a.delta_J != op_b.delta_J:
                gram[(op_a.label, op_b.label)] = RadicalSum.zero()
    return KLReport("correct", not violations, tuple(violations), gram)


def check_kl_detect(code: CodeBasis, eset: ErrorSet) -> KLReport:
    """<c_i| E_a |c_j> = delta_ij g_a for every operator in the set."""
    _check_dims(code, eset)
    supports = [code.support(i) for i in range(code.dim)]
    violations: list[KLViolation] = []
    gram: dict[tuple[str, ...], RadicalSum] = {}
    for op in eset.ops:
        if op.delta_J != 0:
            # Image lies in a different momentum sector: matrix element is 0.
            gram[(op.label,)] = RadicalSum.zero()
            continue
        diag0 = None
        for i in range(code.dim):
            vi = code.basis[i]
            for j in range(code.dim):
                vj = code.basis[j]
                terms = []
                for j2 in supports[j]:
                    amp = op.entries.get(j2)
                    if amp is None:
                        continue
                    tgt = j2 + op.delta_m
                    if 0 <= tgt <= code.two_J and not vi[tgt].is_zero():
                        terms.append(vi[tgt] * amp * vj[j2])
                val = RadicalSum.total(terms)
                if i != j:
                    if not val.is_zero():
                        violations.append(KLViolation(i, j, op.label, "", val))
                elif diag0 is None:
                    diag0 = val
                else:
                    residual = val - diag0
                    if not residual.is_zero():
                        violations.append(KLViolation(i, j, op.label, "", residual))
        gram[(op.label,)] = diag0
    return KLReport("detect", not violations, tuple(violations), gram)


def _weighted_sum(
    code: CodeBasis,
    supports: list[tuple[int, ...]],
    t: int,
    i: int,
    k: int,
    a: int,
    b: int,
) -> RadicalSum:
    """sum_j binom(n-2t, j) * v_i[j+a] * v_k[j+b] / sqrt(binom(n,j+a) binom(n,j+b)).

    Coefficients with index beyond n count as zero, matching the convention
    that pads the vectors on the right.
    """
    n = code.two_J
    vi, vk = code.basis[i], code.basis[k]
    terms = []
    for idx in supports[i]:
        j = idx - a
        if not 0 <= j <= n - 2 * t:
            continue
        if j + b > n or vk[j + b].is_zero():
            continue
        weight = binom(n - 2 * t, j) / binom(n, j + a)
        kernel = SqrtRational.sqrt(binom(n, j + a) / binom(n, j + b))
        terms.append((vi[idx] * vk[j + b] * kernel).scaled(weight))
    return RadicalSum.total(terms)


def check_conditions(code: CodeBasis, t: int, t_prime: int) -> ConditionReport:
    """Evaluate the simplified error-correction conditions (C1)-(C4).

    For codes with more than two basis vectors every unordered pair is
    checked, matching the k-dimensional statement.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t_prime not in (t, 2 * t):
        raise ValueError(f"t_prime must be t or 2t, got {t_prime}")
    supports = [code.support(i) for i in range(code.dim)]
    one = RadicalSum.from_rational(1)
    c2 = all(code.inner(i, i) == one for i in range(code.dim))
    c1 = all(
        code.inner(i, k).is_zero() for i, k in combinations(range(code.dim), 2)
    )
    c3_failures: list[ConditionFailure] = []
    c4_failures: list[ConditionFailure] = []
    for i, k in combinations(range(code.dim), 2):
        for a in range(t_prime + 1):
            for b in range(t_prime + 1):
                s3 = _weighted_sum(code, supports, t, i, k, a, b)
                if not s3.is_zero():
                    c3_failures.append(ConditionFailure(a, b, (i, k), s3))
                s4 = _weighted_sum(code, supports, t, i, i, a, b) - _weighted_sum(
                    code, supports, t, k, k, a, b
                )
                if not s4.is_zero():
                    c4_failures.append(ConditionFailure(a, b, (i, k), s4))
    return ConditionReport(t, t_prime, c1, c2, tuple(c3_failures), tuple(c4_failures))


def cross_validate(code: CodeBasis, t: int) -> bool:
    """Check both implications between the simplified conditions and direct KL.

    Conditions at t' = 2t all passing must imply direct correction of every
    order <= t, and conditions at t' = t all passing must imply detection at
    order t.  Vacuously true when the conditions fail.
    """
    eset = build_ae_error_set(code.two_J, t)
    if check_conditions(code, t, 2 * t).all_pass:
        if not check_kl_correct(code, eset).passed:
            return False
    if check_conditions(code, t, t).all_pass:
        if not check_kl_detect(code, eset).passed:
            return False
    return True
