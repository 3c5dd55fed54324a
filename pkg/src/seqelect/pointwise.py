"""Entry-wise reweighting: every approval is discounted by the voter's own
load scaled by the candidate's popularity, ``y_k / (2 w_k |y| + 1)``.

On party-list ballots this divides a party's votes by 1, 3, 5, ... exactly
like Sainte-Laguë, while a small group that only partly overlaps a large one
is not punished for the large group's seats.
"""

from __future__ import annotations

from typing import Sequence

from .numerics import ZERO, BallotMatrix, l1_norm, omega
from .sequential import MethodError, run_sequential


def r(y: Sequence, w: Sequence, weights: Sequence[int] | None = None) -> tuple:
    """Reweight the row ``y`` against the load vector ``w``."""
    size = l1_norm(y, weights)
    return tuple(yk / (2 * wk * size + 1) if yk else ZERO for yk, wk in zip(y, w))


def r_delta(y: Sequence, z: Sequence, w: Sequence, weights: Sequence[int] | None = None) -> tuple:
    """Like :func:`r` on the positive part of ``y - z``; denominators still use ``|y|``."""
    size = l1_norm(y, weights)
    return tuple((yk - zk) / (2 * wk * size + 1) if yk > zk else ZERO
                 for yk, zk, wk in zip(y, z, w))


def norm(v: Sequence, weights: Sequence[int] | None = None):
    return l1_norm(v, weights)


def _engine(matrix: BallotMatrix, name: str, load_fn, rew, rew_delta, pareto: bool):
    rows, wts = matrix.rows, matrix.voter_weights

    def score(load, i):
        return l1_norm(rew(rows[i], load, wts), wts)

    def pair(load, z, x):
        return l1_norm(rew_delta(rows[z], rows[x], load, wts), wts)

    return run_sequential(
        matrix, name, "norm",
        prepare=lambda elected: load_fn([rows[i] for i in elected], matrix.n, wts),
        score=score,
        pair=pair if pareto else None,
        gain=(lambda load, y, x, fy, fx: fy - fx) if pareto else None,
    )


def _require_approval(matrix: BallotMatrix):
    if not matrix.approval:
        raise MethodError("this method needs approval (0/1) ballots; use the score variants")


def run_pointwise(matrix: BallotMatrix):
    """Elect, seat by seat, the candidate with the largest ``|r(x, load)|``."""
    _require_approval(matrix)
    return _engine(matrix, "pointwise", omega, r, r_delta, pareto=False)


def run_pareto_pointwise(matrix: BallotMatrix):
    _require_approval(matrix)
    return _engine(matrix, "pareto-pointwise", omega, r, r_delta, pareto=True)
