"""Group covariance checks for codes hosted in a single spin.

A code is covariant under a finite subgroup of SU(2) when the spin-J
representation of every group element preserves the codespace.  Checking the
generators suffices, since conjugation by a product factors; a full-group
mode re-checks every element of the closure for the suspicious.

Verification is floating-point at a configurable precision (default 200
bits) with tolerances around 1e-10: a truly covariant code has residual
exactly zero, so any verdict that flips when the precision is doubled
signals a bug rather than a borderline case.

Generator conventions
---------------------
* Binary dihedral: the bit-flip and phase-flip generators are lifted into
  SU(2) as i*X and i*Z (the bare Pauli matrices have determinant -1; the
  projective action on the codespace is unchanged).
* Binary octahedral (order 48): quarter-turn about z and a three-fold
  rotation about (1,1,1).
* Binary icosahedral (order 120): the orientation is fixed with a five-fold
  axis along z and a two-fold axis tilted by arccos(phi/sqrt(phi+2)) at
  azimuth pi/5, which is the orientation in which the printed codes are
  covariant.  Closure orders are validated before use.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mpc, workprec

from .angular import HalfInt, wigner_D
from .codes import CodeBasis, CodeKind


def _mat2(rows) -> mpmath.matrix:
    m = mpmath.matrix(2, 2)
    for i in range(2):
        for j in range(2):
            m[i, j] = mpmath.mpc(rows[i][j])
    return m


@dataclass(frozen=True)
class GroupSpec:
    family: str  # "2O" | "2I" | "BD"
    order_param: int
    generators: tuple[mpmath.matrix, ...]
    labels: tuple[str, ...]

    @property
    def name(self) -> str:
        if self.family == "BD":
            return f"BD_{2 * self.order_param}"
        return self.family


def binary_dihedral_group(b: int, precision_bits: int = 200) -> GroupSpec:
    """Generators i*X, i*Z and the diagonal rotation diag(e^{-i pi/2b}, e^{i pi/2b})."""
    if b <= 0:
        raise ValueError("b must be positive")
    with workprec(precision_bits):
        ix = _mat2([[0, mpc(0, 1)], [mpc(0, 1), 0]])
        iz = _mat2([[mpc(0, 1), 0], [0, mpc(0, -1)]])
        phase = mpmath.exp(mpc(0, -1) * mpmath.pi / (2 * b))
        rot = _mat2([[phase, 0], [0, mpmath.conj(phase)]])
    return GroupSpec("BD", b, (ix, iz, rot), ("iX", "iZ", f"Rz(pi/{b})"))


def binary_octahedral_group(precision_bits: int = 200) -> GroupSpec:
    with workprec(precision_bits):
        phase = mpmath.exp(mpc(0, -1) * mpmath.pi / 4)
        r4 = _mat2([[phase, 0], [0, mpmath.conj(phase)]])
        half = mpmath.mpf(1) / 2
        r3 = _mat2(
            [
                [half * (1 - 1j), half * (-1 - 1j)],
                [half * (1 - 1j), half * (1 + 1j)],
            ]
        )
    group = GroupSpec("2O", 0, (r4, r3), ("Rz(pi/2)", "R3(111)"))
    _validate_order(group, 48, precision_bits)
    return group


def binary_icosahedral_group(precision_bits: int = 200) -> GroupSpec:
    with workprec(precision_bits):
        phase = mpmath.exp(mpc(0, -1) * mpmath.pi / 5)
        r5 = _mat2([[phase, 0], [0, mpmath.conj(phase)]])
        phi = (1 + mpmath.sqrt(5)) / 2
        ct = phi / mpmath.sqrt(phi + 2)
        st = 1 / mpmath.sqrt(phi + 2)
        azim = mpmath.exp(mpc(0, 1) * mpmath.pi / 5)
        # pi rotation about (st*cos(pi/5), st*sin(pi/5), ct): -i (n . sigma)
        r2 = _mat2(
            [
                [mpc(0, -1) * ct, mpc(0, -1) * st * mpmath.conj(azim)],
                [mpc(0, -1) * st * azim, mpc(0, 1) * ct],
            ]
        )
    group = GroupSpec("2I", 0, (r5, r2), ("Rz(2pi/5)", "R2(tilted)"))
    _validate_order(group, 120, precision_bits)
    return group


def group_closure(
    generators, precision_bits: int = 200, max_order: int = 4096
) -> list[mpmath.matrix]:
    """Multiplicative closure of the generators; raises if it exceeds max_order."""

    def key(u):
        return tuple(
            (round(float(u[i, j].real), 9), round(float(u[i, j].imag), 9))
            for i in range(2)
            for j in range(2)
        )

    with workprec(precision_bits):
        elements = {key(g): g for g in generators}
        frontier = list(elements.values())
        while frontier:
            fresh = []
            for u in frontier:
                for g in generators:
                    w = u * g
                    k = key(w)
                    if k not in elements:
                        elements[k] = w
                        fresh.append(w)
                        if len(elements) > max_order:
                            raise ValueError(
                                f"group closure exceeded {max_order} elements"
                            )
            frontier = fresh
        return list(elements.values())


def _validate_order(group: GroupSpec, expected: int, precision_bits: int) -> None:
    size = len(group_closure(group.generators, min(precision_bits, 80)))
    if size != expected:
        raise AssertionError(
            f"{group.name} generators produced a group of order {size}, expected {expected}"
        )


@dataclass(frozen=True)
class CovarianceReport:
    group: str
    tolerance: float
    precision_bits: int
    per_generator: dict[str, mpmath.mpf]
    max_residual: mpmath.mpf
    passed: bool

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "tolerance": float(self.tolerance),
            "precision_bits": self.precision_bits,
            "per_generator": {
                k: mpmath.nstr(v, 12) for k, v in self.per_generator.items()
            },
            "max_residual": mpmath.nstr(self.max_residual, 12),
            "pass": self.passed,
        }


def code_columns(code: CodeBasis, precision_bits: int = 200) -> list[mpmath.matrix]:
    """Orthonormal float columns spanning the codespace.

    Column entries are ordered by decreasing projection m (matching the
    Wigner matrix ordering), so the coefficient at index j lands in row
    n - j.  Exact orthonormal bases pass through essentially unchanged;
    other spanning sets are orthonormalized so the projector is genuine.
    """
    n = code.two_J
    with workprec(precision_bits):
        cols = []
        for vec in code.basis:
            col = mpmath.matrix(n + 1, 1)
            for j, c in enumerate(vec):
                col[n - j, 0] = c.to_mpf(precision_bits)
            for prev in cols:
                overlap = (prev.transpose_conj() * col)[0, 0]
                col = col - prev * overlap
            norm = mpmath.sqrt((col.transpose_conj() * col)[0, 0].real)
            if norm < mpmath.mpf(2) ** (-precision_bits // 2):
                raise ValueError("basis vectors are numerically dependent")
            cols.append(col / norm)
        return cols


def _projector(cols, dim: int) -> mpmath.matrix:
    proj = mpmath.matrix(dim, dim)
    for col in cols:
        proj += col * col.transpose_conj()
    return proj


def operator_norm(m: mpmath.matrix) -> mpmath.mpf:
    _, s, _ = mpmath.svd(m)
    return max(s[i] for i in range(s.rows))


def covariance_residual(
    proj: mpmath.matrix, two_J: int, u, precision_bits: int = 200
) -> mpmath.mpf:
    """Operator 2-norm of D P D^dagger - P for one group element."""
    with workprec(precision_bits):
        d = wigner_D(HalfInt(two_J), u, precision_bits)
        return operator_norm(d * proj * d.transpose_conj() - proj)


def check_covariance(
    code: CodeBasis,
    group: GroupSpec,
    tolerance: float = 1e-10,
    precision_bits: int = 200,
    full_group: bool = False,
) -> CovarianceReport:
    """Residuals of the codespace projector under each generator (or element).

    Invariance under the generators implies invariance under the whole
    group; ``full_group`` enumerates the closure instead.
    """
    if code.kind is CodeKind.PI:
        raise ValueError("covariance applies to AE or SPIN codes, not PI")
    if mpmath.mpf(tolerance) < mpmath.mpf(2) ** (20 - precision_bits):
        raise ValueError("tolerance is below the precision floor")
    with workprec(precision_bits):
        cols = code_columns(code, precision_bits)
        proj = _projector(cols, code.two_J + 1)
        if full_group:
            members = group_closure(group.generators, precision_bits)
            labeled = [(f"element{i}", u) for i, u in enumerate(members)]
        else:
            labeled = list(zip(group.labels, group.generators))
        residuals = {
            label: covariance_residual(proj, code.two_J, u, precision_bits)
            for label, u in labeled
        }
        worst = max(residuals.values())
    return CovarianceReport(
        group=group.name,
        tolerance=tolerance,
        precision_bits=precision_bits,
        per_generator=residuals,
        max_residual=worst,
        passed=bool(worst <= mpmath.mpf(tolerance)),
    )


def logical_action(
    code: CodeBasis,
    u,
    precision_bits: int = 200,
    tolerance: float = 1e-10,
) -> mpmath.matrix:
    """The k x k matrix <c_i| D(u) |c_j> induced on the codespace.

    Only meaningful when u preserves the codespace; the residual is
    re-checked and a violation is rejected.
    """
    with workprec(precision_bits):
        cols = code_columns(code, precision_bits)
        proj = _projector(cols, code.two_J + 1)
        residual = covariance_residual(proj, code.two_J, u, precision_bits)
        if residual > mpmath.mpf(tolerance):
            raise ValueError(
                f"element does not preserve the codespace (residual {mpmath.nstr(residual, 6)})"
            )
        d = wigner_D(HalfInt(code.two_J), u, precision_bits)
        k = len(cols)
        action = mpmath.matrix(k, k)
        for i in range(k):
            for j in range(k):
                action[i, j] = (cols[i].transpose_conj() * (d * cols[j]))[0, 0]
        return action
