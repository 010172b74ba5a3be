"""Transition and rotation error operators as exact sparse diagonal shifts.

An operator indexed (r, delta_J, delta_m) maps |J, m> to an amplitude times
|J + delta_J, m + delta_m>; the amplitude is the Clebsch-Gordan coefficient
coupling rank r.  Each operator therefore has at most one source index per
target index and is stored as a sparse map from the source index
j = m + J to its amplitude.

Proportionality constants are fixed to 1: correctability depends only on
the span of the error set, and the diagonal comparisons in verification pair
an operator with itself or with another fixed operator on both logical
states, so per-operator scaling cancels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .angular import clebsch_gordan_t
from .exactnum import SqrtRational


@dataclass(frozen=True)
class ErrorOp:
    """One operator: indices (r, delta_J, delta_m) over a spin-(two_J/2) source.

    ``entries`` maps source index j (projection m = j - J) to the amplitude
    attached to the target |J + delta_J, m + delta_m>.  Zero amplitudes and
    out-of-range targets are absent.
    """

    r: int
    delta_J: int
    delta_m: int
    source_two_J: int
    entries: dict[int, SqrtRational]

    @property
    def label(self) -> str:
        return f"E[r={self.r},dJ={self.delta_J:+d},dm={self.delta_m:+d}]"

    @property
    def target_two_J(self) -> int:
        return self.source_two_J + 2 * self.delta_J

    def target_index(self, j: int) -> int:
        """Target-sector index hit by source index j."""
        return j + self.delta_m + self.delta_J

    def __repr__(self) -> str:
        return self.label


@dataclass(frozen=True)
class ErrorSet:
    t: int
    ops: tuple[ErrorOp, ...]

    def by_sector(self) -> dict[int, list[ErrorOp]]:
        sectors: dict[int, list[ErrorOp]] = {}
        for op in self.ops:
            sectors.setdefault(op.delta_J, []).append(op)
        return sectors


def _build_op(two_J: int, r: int, delta_J: int, delta_m: int) -> ErrorOp:
    entries: dict[int, SqrtRational] = {}
    for j in range(two_J + 1):
        tm = 2 * j - two_J
        amp = clebsch_gordan_t(
            two_J,
            tm,
            2 * r,
            2 * delta_m,
            two_J + 2 * delta_J,
            tm + 2 * delta_m,
        )
        if not amp.is_zero():
            entries[j] = amp
    return ErrorOp(r, delta_J, delta_m, two_J, entries)


@lru_cache(maxsize=256)
def build_ae_error_set(two_J: int, t: int) -> ErrorSet:
    """All transition operators with |delta_J|, |delta_m| <= r <= t.

    The operator count is sum_{r=0}^{t} (2r+1)^2.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if two_J < 2 * t:
        raise ValueError(f"two_J={two_J} too small for order t={t} (need two_J >= 2t)")
    ops = [
        _build_op(two_J, r, dJ, dm)
        for r in range(t + 1)
        for dJ in range(-r, r + 1)
        for dm in range(-r, r + 1)
    ]
    return ErrorSet(t, tuple(ops))


@lru_cache(maxsize=256)
def build_spin_error_set(two_J: int, t: int) -> ErrorSet:
    """Rotation operators: the delta_J = 0 slice, sum_{r=0}^{t} (2r+1) of them."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if two_J < 2 * t:
        raise ValueError(f"two_J={two_J} too small for order t={t} (need two_J >= 2t)")
    ops = [
        _build_op(two_J, r, 0, dm)
        for r in range(t + 1)
        for dm in range(-r, r + 1)
    ]
    return ErrorSet(t, tuple(ops))


def apply(op: ErrorOp, v) -> list[SqrtRational]:
    """Apply an operator to a coefficient vector; result lives in the target sector.

    The output has length source_two_J + 2*delta_J + 1.  Each target index
    receives at most one contribution because the operator is a diagonal
    shift.
    """
    if len(v) != op.source_two_J + 1:
        raise ValueError(
            f"vector length {len(v)} does not match source dimension {op.source_two_J + 1}"
        )
    out = [SqrtRational.zero()] * (op.target_two_J + 1)
    for j, amp in op.entries.items():
        tgt = op.target_index(j)
        if 0 <= tgt <= op.target_two_J and not v[j].is_zero():
            out[tgt] = amp * v[j]
    return out


def op_to_json(op: ErrorOp) -> dict:
    from .exactnum import sqrt_rational_to_json

    return {
        "r": op.r,
        "delta_J": op.delta_J,
        "delta_m": op.delta_m,
        "source_two_J": op.source_two_J,
        "entries": [
            {
                "j": j,
                "two_m": 2 * j - op.source_two_J,
                "amplitude": sqrt_rational_to_json(amp),
            }
            for j, amp in sorted(op.entries.items())
        ],
    }
