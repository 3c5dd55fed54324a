"""Score-ballot versions of the entry-wise reweighting methods.

Representation becomes ``sum x**2 / |x|`` (a half-score is worth half of the
voter's share of the seat).  The *linear* variants keep ``y / (2 w |y| + 1)``;
the *cubic* variants use ``y**3 / (2 w |y| + y**2)``, which treats a score
``t`` as ``t`` of a vote at ``t`` of the representational cost.  Both collapse
to the approval formulas on 0/1 entries.
"""

from __future__ import annotations

from typing import Sequence

from .numerics import ZERO, BallotError, BallotMatrix, l1_norm
from .pointwise import _engine, r, r_delta

VARIANTS = ("linear", "cubic")


def omega_sq(rows: Sequence[Sequence], n: int, weights: Sequence[int] | None = None) -> tuple:
    acc = [ZERO] * n
    for row in rows:
        size = l1_norm(row, weights)
        if size == 0:
            raise BallotError("cannot normalise a row with zero total score")
        for j, x in enumerate(row):
            if x:
                acc[j] += x * x / size
    return tuple(acc)


def r2(y: Sequence, w: Sequence, weights: Sequence[int] | None = None) -> tuple:
    size = l1_norm(y, weights)
    return tuple(yk ** 3 / (2 * wk * size + yk * yk) if yk else ZERO for yk, wk in zip(y, w))


def r2_delta(y: Sequence, z: Sequence, w: Sequence, weights: Sequence[int] | None = None) -> tuple:
    size = l1_norm(y, weights)
    return tuple((yk - zk) * yk * yk / (2 * wk * size + yk * yk) if yk > zk else ZERO
                 for yk, zk, wk in zip(y, z, w))


def run_score_reweight(matrix: BallotMatrix, variant: str = "linear", pareto: bool = False):
    if variant == "linear":
        rew, rew_delta = r, r_delta
    elif variant == "cubic":
        rew, rew_delta = r2, r2_delta
    else:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    name = f"{'pareto-' if pareto else ''}score-{variant}"
    return _engine(matrix, name, omega_sq, rew, rew_delta, pareto)
