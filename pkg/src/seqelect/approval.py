"""Sequential methods for approval ballots: Phragmén and Thiele, plain and
Pareto-improved.

Phragmén tracks a load vector (each elected candidate spreads one seat evenly
over its supporters) and elects the candidate with the largest quotient
``|x| / (a<load, x> + b)``; ``a = 2, b = 1`` is the Sainte-Laguë variant and
``a = b = 1`` the D'Hondt variant.  Thiele divides every voter's ballot by a
divisor of the number of elected candidates that voter approves.

The Pareto-improved variants look for a candidate ``z`` that the voters
separating it from the step-1 winner ``x`` favour more than the voters
separating ``x`` from ``z``, and elect the strongest such ``z`` instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .numerics import ZERO, BallotMatrix, delta, inner, l1_norm, omega
from .partylist import DivisorFamily
from .pointwise import r
from .sequential import MethodError, run_sequential


@dataclass(frozen=True)
class ApprovalVariant:
    """Denominator ``scale * <load, x> + offset`` of the Phragmén quotient."""

    scale: Fraction = Fraction(2)
    offset: Fraction = Fraction(1)
    name: str = "sainte-lague"

    def __post_init__(self):
        if self.scale < 0 or self.offset <= 0:
            raise ValueError("the quotient denominator must stay positive for non-negative loads")

    def denominator(self, load_dot: Fraction) -> Fraction:
        return self.scale * load_dot + self.offset


SAINTE_LAGUE = ApprovalVariant(Fraction(2), Fraction(1), "sainte-lague")
DHONDT = ApprovalVariant(Fraction(1), Fraction(1), "dhondt")
VARIANTS = {"sainte-lague": SAINTE_LAGUE, "dhondt": DHONDT}


def _require_approval(matrix: BallotMatrix):
    if not matrix.approval:
        raise MethodError("this method needs approval (0/1) ballots; convert scores first")


def phragmen_quotient(x: Sequence, load: Sequence, variant: ApprovalVariant = SAINTE_LAGUE,
                      weights: Sequence[int] | None = None) -> Fraction:
    size = l1_norm(x, weights)
    if size == 0:
        return ZERO
    return size / variant.denominator(inner(load, x, weights))


def difference_quotient(x: Sequence, y: Sequence, load: Sequence,
                        variant: ApprovalVariant = SAINTE_LAGUE,
                        weights: Sequence[int] | None = None) -> Fraction:
    """Phragmén quotient of the voters who approve ``x`` but not ``y``."""
    return phragmen_quotient(delta(x, y), load, variant, weights)


def _load(matrix: BallotMatrix, elected: list[int]):
    return omega((matrix.rows[i] for i in elected), matrix.n, matrix.voter_weights)


def run_phragmen(matrix: BallotMatrix, variant: ApprovalVariant = SAINTE_LAGUE):
    """Order every candidate by repeatedly taking the largest Phragmén quotient."""
    _require_approval(matrix)
    w = matrix.voter_weights
    return run_sequential(
        matrix, f"phragmen-{variant.name}", "quotient",
        prepare=lambda elected: _load(matrix, elected),
        score=lambda load, i: phragmen_quotient(matrix.rows[i], load, variant, w),
    )


def run_pareto_phragmen(matrix: BallotMatrix, variant: ApprovalVariant = SAINTE_LAGUE):
    """Phragmén step 1, then the difference-quotient improvement step."""
    _require_approval(matrix)
    rows, w = matrix.rows, matrix.voter_weights

    def pair(load, z, x):
        return difference_quotient(rows[z], rows[x], load, variant, w)

    return run_sequential(
        matrix, f"pareto-phragmen-{variant.name}", "quotient",
        prepare=lambda elected: _load(matrix, elected),
        score=lambda load, i: phragmen_quotient(rows[i], load, variant, w),
        pair=pair,
        gain=lambda load, y, x, fy, fx: fy - fx,
    )


# ---------------------------------------------------------------------------
# Thiele


def thiele_divisor(family: DivisorFamily | str | Callable[[int], Fraction] = "sainte-lague"):
    """Return ``s -> divisor`` for voters who already approve ``s`` winners.

    Sainte-Laguë gives ``2s + 1`` and D'Hondt ``s + 1``; a custom sequence is
    used verbatim.  Families whose first divisor is zero (Adams, Hill, Dean)
    or irrational (Ossipoff) cannot reweight a ballot and are refused.
    """
    if callable(family) and not isinstance(family, DivisorFamily):
        return family
    if isinstance(family, str):
        family = DivisorFamily.parse(family)
    if family.kind == "webster_sainte_lague":
        return lambda s: Fraction(2 * s + 1)
    if family.kind == "jefferson_dhondt":
        return lambda s: Fraction(s + 1)
    if family.kind == "custom":
        return family.divisor_pow
    raise MethodError(f"divisor family {family.kind} cannot serve as Thiele weights")


def _approved_counts(matrix: BallotMatrix, elected: list[int]) -> list[int]:
    counts = [0] * matrix.n
    for i in elected:
        for j, x in enumerate(matrix.rows[i]):
            if x:
                counts[j] += 1
    return counts


def thiele_weights(matrix: BallotMatrix, elected: list[int], divisor) -> tuple:
    """Per-voter ballot weight ``1 / divisor(#elected candidates approved)``."""
    return tuple(1 / Fraction(divisor(s)) for s in _approved_counts(matrix, elected))


def _reweighted_sum(row, vw, weights) -> Fraction:
    return sum((w * x * v for x, v, w in zip(row, vw, weights) if x), ZERO)


def run_thiele(matrix: BallotMatrix, divisor_family="sainte-lague"):
    _require_approval(matrix)
    divisor = thiele_divisor(divisor_family)
    rows, w = matrix.rows, matrix.voter_weights
    return run_sequential(
        matrix, "thiele", "score",
        prepare=lambda elected: thiele_weights(matrix, elected, divisor),
        score=lambda vw, i: _reweighted_sum(rows[i], vw, w),
    )


def run_pareto_thiele(matrix: BallotMatrix, divisor_family="sainte-lague"):
    """Thiele step 1; step 2 weighs ``delta(z, x)`` by the reweighted row of ``z``."""
    _require_approval(matrix)
    divisor = thiele_divisor(divisor_family)
    rows, w = matrix.rows, matrix.voter_weights

    def pair(vw, z, x):
        d = delta(rows[z], rows[x])
        reweighted_z = tuple(a * b for a, b in zip(rows[z], vw))
        return inner(d, reweighted_z, w)

    return run_sequential(
        matrix, "pareto-thiele", "score",
        prepare=lambda elected: thiele_weights(matrix, elected, divisor),
        score=lambda vw, i: _reweighted_sum(rows[i], vw, w),
        pair=pair,
        gain=lambda vw, y, x, fy, fx: fy - fx,
    )


# ---------------------------------------------------------------------------


def reweight_view(matrix: BallotMatrix, elected: Sequence, method: str = "phragmen",
                  variant: ApprovalVariant = SAINTE_LAGUE, divisor_family="sainte-lague"):
    """The ballot matrix as a method sees it after ``elected`` have won seats.

    ``thiele`` scales every column by its voter weight, ``phragmen`` scales
    every row by its quotient denominator, ``pointwise`` reweights each entry.
    """
    elected = [matrix.index(e) if isinstance(e, str) else e for e in elected]
    rows, w = matrix.rows, matrix.voter_weights
    if method == "thiele":
        vw = thiele_weights(matrix, elected, thiele_divisor(divisor_family))
        return [tuple(x * v for x, v in zip(row, vw)) for row in rows]
    if method == "phragmen":
        load = _load(matrix, elected)
        out = []
        for row in rows:
            den = variant.denominator(inner(load, row, w))
            out.append(tuple(x / den for x in row))
        return out
    if method == "pointwise":
        load = _load(matrix, elected)
        return [r(row, load, w) for row in rows]
    raise ValueError(f"unknown view {method!r}; expected thiele, phragmen or pointwise")
