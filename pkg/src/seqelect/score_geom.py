"""Score ballots through geometry: approval conversion and the bias vector.

Each candidate ``x`` is mapped to ``mu(x)``, its L1-normalisation moved so the
ideal point ``u = (1/n, ..., 1/n)`` sits at the origin and rescaled so that
the squared length is ``1/|x| - 1/n`` (which is exactly the approval case).
The sum of ``mu`` over the elected set is a bias vector, and the methods here
keep it short.

``mu`` involves square roots, so this module works in double precision with a
relative tie tolerance of ``1e-12``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .numerics import ONE, BallotError, BallotMatrix, delta
from .sequential import REL_TOL, MethodError, run_sequential, tolerant_cmp


class DegenerateDenominator(MethodError):
    """An improvement term divides by a (numerically) non-positive quantity."""


class Gain(float):
    """Improvement value that remembers whether a degenerate term was replaced."""

    degenerate = False

    def __new__(cls, value, degenerate=False):
        obj = super().__new__(cls, value)
        obj.degenerate = degenerate
        return obj


def convert_scores(matrix: BallotMatrix, N: int) -> BallotMatrix:
    """Split each score voter into ``N`` approval voters: ``k/N -> k ones, N-k zeros``.

    Expanded columns stay adjacent and in voter order.
    """
    if N < 1:
        raise BallotError("N must be a positive integer")
    rows = []
    for i, row in enumerate(matrix.rows):
        out = []
        for j, x in enumerate(row):
            k = x * N
            if k.denominator != 1:
                raise BallotError(f"entry ({i}, {j}) = {x} is not a multiple of 1/{N}")
            out.extend([1] * int(k) + [0] * (N - int(k)))
        rows.append(out)
    weights = [w for w in matrix.voter_weights for _ in range(N)]
    phantoms = [p for p in matrix.phantom_voters for _ in range(N)]
    return BallotMatrix(rows, matrix.candidate_names, weights, matrix.eligible, phantoms)


def add_phantoms(matrix: BallotMatrix) -> BallotMatrix:
    """Append one phantom voter per candidate, scoring that candidate 1 and the rest 0."""
    m = matrix.m
    columns = [[1 if i == c else 0 for i in range(m)] for c in range(m)]
    return matrix.with_voters(columns, phantom=True)


def mu(x: Sequence, weights: Sequence[int] | None = None) -> tuple:
    """The rescaled direction of ``x`` away from the ideal representation.

    ``x`` must have a coordinate equal to 1; the all-ones vector maps to 0.
    """
    x = [Fraction(v) for v in x]
    weights = (1,) * len(x) if weights is None else weights
    if not x or max(x) != ONE:
        raise MethodError("mu needs a vector with at least one coordinate equal to 1")
    if all(v == ONE for v in x):
        return (0.0,) * len(x)
    n = sum(weights)
    size = sum(w * v for w, v in zip(weights, x))
    direction = [v / size - Fraction(1, n) for v in x]
    dir_sq = sum(w * d * d for w, d in zip(weights, direction))
    scale = math.sqrt((1 / size - Fraction(1, n)) / dir_sq)
    return tuple(float(d) * scale for d in direction)


def _norm_sq(v: Sequence[float], weights: Sequence[int]) -> float:
    return math.fsum(w * c * c for w, c in zip(weights, v))


def _plus(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _bias(matrix: BallotMatrix, elected, mus):
    psi = (0.0,) * matrix.n
    for i in elected:
        psi = _plus(psi, mus[i])
    return psi


def _mus(matrix: BallotMatrix):
    bad = [matrix.candidate_names[i] for i, row in enumerate(matrix.rows) if max(row) != ONE]
    if bad:
        raise MethodError(f"candidates without a coordinate equal to 1: {', '.join(bad)}")
    return [mu(row, matrix.voter_weights) for row in matrix.rows]


def run_geom(matrix: BallotMatrix):
    """Greedily keep the bias vector as short as possible."""
    mus = _mus(matrix)
    w = matrix.voter_weights
    return run_sequential(
        matrix, "geom", "negated squared bias norm",
        prepare=lambda elected: _bias(matrix, elected, mus),
        score=lambda psi, i: -_norm_sq(_plus(psi, mus[i]), w),
        cmp=tolerant_cmp,
    )


def unit_delta_violations(matrix: BallotMatrix) -> list[tuple[str, str]]:
    """Ordered pairs ``(x, y)`` for which ``delta(x, y)`` has no coordinate equal to 1."""
    names, rows = matrix.candidate_names, matrix.rows
    return [(names[a], names[b]) for a in range(matrix.m) for b in range(matrix.m)
            if a != b and ONE not in delta(rows[a], rows[b])]


def run_pareto_geom(matrix: BallotMatrix, strict: bool = False):
    """Bias-vector step 1, then improvement by differences of pairwise bias norms.

    A degenerate improvement term (denominator within tolerance of zero or
    negative) counts as infinitely large in its own direction and is flagged
    in the trace; with ``strict=True`` it raises instead.
    """
    mus = _mus(matrix)
    violations = unit_delta_violations(matrix)
    if violations:
        shown = ", ".join(f"({a}, {b})" for a, b in violations[:10])
        raise MethodError(f"delta lacks a unit coordinate for {len(violations)} pairs, e.g. {shown}; "
                          "add phantom voters")
    rows, w = matrix.rows, matrix.voter_weights
    n = matrix.total_weight
    delta_mu: dict = {}

    def dmu(a, b):
        if (a, b) not in delta_mu:
            delta_mu[a, b] = mu(delta(rows[a], rows[b]), w)
        return delta_mu[a, b]

    def prepare(elected):
        psi = _bias(matrix, elected, mus)
        k = len(elected)
        base = _norm_sq([c + k / n for c in psi], w)
        return psi, k, base

    def pair(ctx, z, x):
        psi = ctx[0]
        return -_norm_sq(_plus(psi, dmu(z, x)), w)

    def gain(ctx, y, x, fy, fx):
        psi, k, base = ctx
        terms = []
        for a, b in ((y, x), (x, y)):
            shifted = [c + d + (k + 1) / n for c, d in zip(psi, dmu(a, b))]
            terms.append(_norm_sq(shifted, w) - base)
        first, second = terms
        tol = REL_TOL * max(1.0, abs(base))
        if first <= tol or second <= tol:
            if strict:
                raise DegenerateDenominator(
                    f"improvement of {matrix.candidate_names[y]} over {matrix.candidate_names[x]}: "
                    f"denominators {first!r}, {second!r}")
            if first <= tol and second <= tol:
                return Gain(0.0, True)
            return Gain(math.inf if first <= tol else -math.inf, True)
        return Gain(1 / first - 1 / second)

    return run_sequential(
        matrix, "pareto-geom", "negated squared bias norm",
        prepare=prepare,
        score=lambda ctx, i: -_norm_sq(_plus(ctx[0], mus[i]), w),
        pair=pair,
        gain=gain,
        cmp=tolerant_cmp,
    )
