"""Exact rational primitives and the ballot matrix shared by every method.

Rows of a :class:`BallotMatrix` are candidates, columns are voters.  A column
may carry an integer weight, standing for that many identical voters; every
norm and inner product here is weight-aware, so a weighted column behaves
exactly like its expansion into unit columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
Row = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class BallotError(ValueError):
    """Raised for structurally invalid ballot data."""


def to_rational(value) -> Fraction:
    """Convert an int, Fraction or string (``"p/q"`` or finite decimal) exactly.

    Floats are refused: they would silently smuggle in binary rounding.
    """
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise BallotError(f"not an exact rational: {value!r}") from exc
    raise BallotError(f"refusing inexact value {value!r} of type {type(value).__name__}")


def _weights(n: int, weights: Sequence[int] | None) -> Sequence[int]:
    return weights if weights is not None else (1,) * n


def l1_norm(v: Sequence, weights: Sequence[int] | None = None) -> Fraction:
    """Weighted sum of the entries of ``v`` (entries are assumed non-negative)."""
    w = _weights(len(v), weights)
    return sum((wj * vj for wj, vj in zip(w, v) if vj), ZERO)


def l2_norm_sq(v: Sequence, weights: Sequence[int] | None = None) -> Fraction:
    w = _weights(len(v), weights)
    return sum((wj * vj * vj for wj, vj in zip(w, v) if vj), ZERO)


def inner(a: Sequence, b: Sequence, weights: Sequence[int] | None = None) -> Fraction:
    """Weighted scalar product, computed in a single pass without expansion."""
    if len(a) != len(b):
        raise BallotError(f"length mismatch: {len(a)} != {len(b)}")
    w = _weights(len(a), weights)
    return sum((wj * aj * bj for wj, aj, bj in zip(w, a, b) if aj and bj), ZERO)


def delta(a: Sequence, b: Sequence) -> Row:
    """Coordinate-wise positive part of ``a - b``.

    On approval rows coordinate ``k`` is 1 exactly when voter ``k`` approves
    ``a`` but not ``b``.
    """
    if len(a) != len(b):
        raise BallotError(f"length mismatch: {len(a)} != {len(b)}")
    return tuple(ak - bk if ak > bk else ZERO for ak, bk in zip(a, b))


def omega(rows: Iterable[Sequence], n: int, weights: Sequence[int] | None = None) -> Row:
    """Load vector: the sum of the L1-normalised rows (zero vector for no rows)."""
    acc = [ZERO] * n
    for row in rows:
        size = l1_norm(row, weights)
        if size == 0:
            raise BallotError("cannot normalise a row with zero total support")
        for j, x in enumerate(row):
            if x:
                acc[j] += x / size
    return tuple(acc)


def omega_add(load: Sequence, row: Sequence, weights: Sequence[int] | None = None) -> Row:
    size = l1_norm(row, weights)
    if size == 0:
        raise BallotError("cannot normalise a row with zero total support")
    return tuple(w + x / size if x else w for w, x in zip(load, row))


@dataclass(frozen=True)
class BallotMatrix:
    """An ``m x n`` matrix of scores in ``[0, 1]``.

    ``eligible`` marks phantom candidates (False): they take part in
    comparisons but are never elected.  ``phantom_voters`` labels appended
    phantom columns so that diagnostics can separate them out.
    """

    rows: tuple
    candidate_names: tuple
    voter_weights: tuple = None
    eligible: tuple = None
    phantom_voters: tuple = None
    approval: bool = field(init=False)

    def __post_init__(self):
        rows = tuple(tuple(to_rational(x) for x in row) for row in self.rows)
        m = len(rows)
        if m == 0:
            raise BallotError("a ballot matrix needs at least one candidate")
        n = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != n:
                raise BallotError(f"row {i} has {len(row)} entries, expected {n}")
            for j, x in enumerate(row):
                if not 0 <= x <= 1:
                    raise BallotError(f"entry ({i}, {j}) = {x} lies outside [0, 1]")
        names = tuple(str(c) for c in self.candidate_names)
        if len(names) != m:
            raise BallotError(f"{len(names)} names for {m} candidates")
        if len(set(names)) != m:
            raise BallotError("duplicate candidate name")
        weights = self.voter_weights
        weights = (1,) * n if weights is None else tuple(weights)
        if len(weights) != n:
            raise BallotError(f"{len(weights)} weights for {n} voters")
        for j, w in enumerate(weights):
            if not isinstance(w, int) or isinstance(w, bool) or w <= 0:
                raise BallotError(f"voter weight {j} must be a positive integer, got {w!r}")
        eligible = (True,) * m if self.eligible is None else tuple(bool(e) for e in self.eligible)
        if len(eligible) != m:
            raise BallotError("eligibility flags do not match the candidate count")
        phantoms = (False,) * n if self.phantom_voters is None else tuple(bool(p) for p in self.phantom_voters)
        if len(phantoms) != n:
            raise BallotError("phantom voter flags do not match the voter count")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "candidate_names", names)
        object.__setattr__(self, "voter_weights", weights)
        object.__setattr__(self, "eligible", eligible)
        object.__setattr__(self, "phantom_voters", phantoms)
        object.__setattr__(self, "approval", all(x in (0, 1) for row in rows for x in row))

    @classmethod
    def from_groups(cls, candidates: Sequence[str], groups: Iterable[tuple[int, Iterable[str]]]):
        """Build an approval matrix from ``(count, approved names)`` groups.

        Each group becomes one weighted voter column.
        """
        candidates = list(candidates)
        index = {c: i for i, c in enumerate(candidates)}
        cols, weights = [], []
        for count, approved in groups:
            col = [0] * len(candidates)
            for name in approved:
                col[index[name]] = 1
            cols.append(col)
            weights.append(count)
        rows = [[col[i] for col in cols] for i in range(len(candidates))]
        return cls(rows, candidates, weights)

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def total_weight(self) -> int:
        return sum(self.voter_weights)

    def index(self, name: str) -> int:
        try:
            return self.candidate_names.index(name)
        except ValueError:
            raise KeyError(name) from None

    def support(self, i: int) -> Fraction:
        return l1_norm(self.rows[i], self.voter_weights)

    def zero_rows(self) -> list[int]:
        """Indices of candidates nobody supports; methods handle them explicitly."""
        return [i for i in range(self.m) if self.support(i) == 0]

    def expanded(self) -> "BallotMatrix":
        """Replace every weighted column by that many unit columns."""
        rows = [[x for x, w in zip(row, self.voter_weights) for _ in range(w)] for row in self.rows]
        phantoms = [p for p, w in zip(self.phantom_voters, self.voter_weights) for _ in range(w)]
        return BallotMatrix(rows, self.candidate_names, None, self.eligible, phantoms)

    def with_row(self, i: int, row: Sequence) -> "BallotMatrix":
        rows = list(self.rows)
        rows[i] = tuple(row)
        return self.replace(rows=rows)

    def with_candidate(self, name: str, row: Sequence, eligible: bool = True) -> "BallotMatrix":
        return self.replace(
            rows=list(self.rows) + [tuple(row)],
            candidate_names=list(self.candidate_names) + [name],
            eligible=list(self.eligible) + [eligible],
        )

    def with_voters(self, columns: Sequence[Sequence], weights: Sequence[int] | None = None,
                    phantom: bool = False) -> "BallotMatrix":
        """Append voter columns (each column lists one score per candidate)."""
        weights = [1] * len(columns) if weights is None else list(weights)
        rows = [list(row) + [col[i] for col in columns] for i, row in enumerate(self.rows)]
        return self.replace(
            rows=rows,
            voter_weights=list(self.voter_weights) + weights,
            phantom_voters=list(self.phantom_voters) + [phantom] * len(columns),
        )

    def replace(self, **changes) -> "BallotMatrix":
        fields = dict(
            rows=self.rows,
            candidate_names=self.candidate_names,
            voter_weights=self.voter_weights,
            eligible=self.eligible,
            phantom_voters=self.phantom_voters,
        )
        fields.update(changes)
        return BallotMatrix(**fields)

    def permuted(self, order: Sequence[int]) -> "BallotMatrix":
        """Reorder candidates; the new index order is the new tie-break order."""
        return self.replace(
            rows=[self.rows[i] for i in order],
            candidate_names=[self.candidate_names[i] for i in order],
            eligible=[self.eligible[i] for i in order],
        )
