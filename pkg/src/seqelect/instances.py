"""Worked elections used as golden fixtures by the tests and ``verify``."""

from __future__ import annotations

from fractions import Fraction

from .numerics import BallotMatrix


def pareto_tradeoff_election(k: int) -> BallotMatrix:
    """``k``: A; 1: A,B; ``k-1``: B,C.  Every C voter also approves B."""
    groups = [(k, "A"), (1, "AB")]
    if k > 1:
        groups.append((k - 1, "BC"))
    return BallotMatrix.from_groups("ABC", groups)


def overlapping_blocs_election(k: int, extra_c_voters: int = 0) -> BallotMatrix:
    """``20k``: A,B,C; ``10k``: X,Y,Z; ``2k``: A,B,X; ``k``: A,X,Y (plus C-only voters)."""
    groups = [(20 * k, "ABC"), (10 * k, "XYZ"), (2 * k, "ABX"), (k, "AXY")]
    if extra_c_voters:
        groups.append((extra_c_voters, "C"))
    return BallotMatrix.from_groups("ABCXYZ", groups)


HIJACK_ROWS = (
    (1, 1, 1, 1, 1, 1, 1, 0, 1, 1, 0, 1),
    (1, 1, 1, 1, 0, 1, 1, 1, 0, 1, 0, 0),
    (1, 1, 1, 1, 1, 1, 0, 1, 0, 1, 0, 0),
    (1, 1, 1, 1, 0, 1, 0, 1, 0, 1, 0, 0),
    (0, 0, 0, 0, 1, 1, 0, 1, 1, 1, 1, 0),
    (0, 0, 0, 0, 1, 1, 1, 1, 0, 1, 1, 0),
    (0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
)
HIJACK_NAMES = ("a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4")
A1_NARROWED = (1, 1, 0, 0, 1, 1, 1, 0, 1, 1, 0, 1)
A_BLOC_ONLY = (1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0)


def hijack_election() -> BallotMatrix:
    """Two candidate groups where the b-group can take over an a-candidate's seat."""
    return BallotMatrix(HIJACK_ROWS, HIJACK_NAMES)


NONMONOTONE_MATRICES = (
    (
        (0, 0, 0, 1, 1, 0, 1, 1, 0, 0, 1),
        (0, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0),
        (0, 1, 0, 1, 1, 0, 0, 1, 0, 1, 0),
        (0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0),
        (1, 0, 0, 0, 1, 1, 0, 1, 1, 0, 0),
        (1, 1, 0, 1, 0, 1, 1, 0, 0, 1, 1),
    ),
    (
        (0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0),
        (1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0),
        (0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0),
        (1, 0, 1, 0, 0, 0, 0, 0, 1, 1, 1),
        (0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 0),
        (1, 1, 1, 1, 1, 0, 1, 0, 0, 1, 0),
    ),
)


def nonmonotone_matrices() -> list[BallotMatrix]:
    names = [f"c{i + 1}" for i in range(6)]
    return [BallotMatrix(rows, names) for rows in NONMONOTONE_MATRICES]


# doubled scores; the first five voters are phantoms
_SCORE_ELECTIONS = (
    (
        "2 0 0 0 0 0 1 0 1 0 2 2 1 1 1 2 0 2 1 2 0",
        "0 2 0 0 0 2 1 1 2 1 2 1 0 0 1 2 2 2 1 2 0",
        "0 0 2 0 0 2 1 1 1 0 1 1 0 2 0 0 0 0 1 2 1",
        "0 0 0 2 0 1 0 1 0 1 2 2 1 2 0 0 0 2 0 2 0",
        "0 0 0 0 2 0 2 0 1 1 1 1 1 0 1 0 0 2 1 0 2",
    ),
    (
        "2 0 0 0 0 1 0 0 1 0 2 2 2 2 1 1 1 1 2 1 1",
        "0 2 0 0 0 2 2 2 2 1 1 2 1 0 1 0 0 2 1 0 2",
        "0 0 2 0 0 2 1 2 0 2 2 2 0 0 0 2 0 0 1 1 2",
        "0 0 0 2 0 1 2 2 2 0 0 2 0 2 1 1 1 1 2 2 1",
        "0 0 0 0 2 1 2 0 0 2 0 0 2 1 0 1 2 1 0 0 1",
    ),
)


def score_elections() -> list[BallotMatrix]:
    """Two half-point score elections with one phantom voter per candidate."""
    out = []
    for text in _SCORE_ELECTIONS:
        rows = [[Fraction(int(v), 2) for v in line.split()] for line in text]
        out.append(BallotMatrix(rows, "ABCDE", phantom_voters=[True] * 5 + [False] * 16))
    return out
