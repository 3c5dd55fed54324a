"""Classical party-list apportionment by divisor methods.

Two formulations are provided:

* :func:`apportion_largest_quotients` awards seats one at a time to the
  party with the largest quotient ``n_i / f(s_i)``;
* :func:`apportion_divisor` rescales every quota by a common factor ``alpha``
  and rounds, searching for the range of ``alpha`` that fills the house.

Comparisons are exact for every family except the rounding step of Ossipoff's
divisor formulation.  Hill divisors are square roots, so quotients are
compared through their squares; Ossipoff's divisors share a factor ``1/e``
that cancels in every largest-quotient comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .numerics import to_rational
from .trace import PropertyReport

KINDS = ("adams", "jefferson_dhondt", "webster_sainte_lague", "hill", "dean", "ossipoff", "custom")
CLASSICAL = KINDS[:5]

ALIASES = {
    "adams": "adams",
    "jefferson": "jefferson_dhondt",
    "dhondt": "jefferson_dhondt",
    "d'hondt": "jefferson_dhondt",
    "jefferson_dhondt": "jefferson_dhondt",
    "webster": "webster_sainte_lague",
    "sainte-lague": "webster_sainte_lague",
    "sainte_lague": "webster_sainte_lague",
    "webster_sainte_lague": "webster_sainte_lague",
    "hill": "hill",
    "huntington-hill": "hill",
    "dean": "dean",
    "ossipoff": "ossipoff",
}


class ApportionmentError(ValueError):
    pass


class NoValidAlpha(ApportionmentError):
    """No rescaling factor makes the rounded quotas add up to the house size.

    ``below`` and ``above`` are the allocations on either side of the jump
    (``None`` when that side does not exist); together they are the tie report.
    """

    def __init__(self, message, below=None, above=None):
        super().__init__(message)
        self.below = below
        self.above = above


@dataclass(frozen=True)
class PartyTally:
    parties: tuple  # of (name, votes)
    seats: int

    def __post_init__(self):
        parties = tuple((str(name), int(votes)) for name, votes in self.parties)
        if not parties:
            raise ApportionmentError("no parties")
        if len({name for name, _ in parties}) != len(parties):
            raise ApportionmentError("duplicate party name")
        if any(v < 0 for _, v in parties):
            raise ApportionmentError("negative vote count")
        if self.seats < 0:
            raise ApportionmentError("negative seat count")
        object.__setattr__(self, "parties", parties)

    @classmethod
    def of(cls, votes: Sequence[int], seats: int, names: Sequence[str] | None = None):
        names = names or [f"P{i + 1}" for i in range(len(votes))]
        return cls(tuple(zip(names, votes)), seats)

    @property
    def votes(self) -> list[int]:
        return [v for _, v in self.parties]

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.parties]

    @property
    def total(self) -> int:
        return sum(self.votes)

    def with_seats(self, seats: int) -> "PartyTally":
        return PartyTally(self.parties, seats)

    def with_votes(self, votes: Sequence[int]) -> "PartyTally":
        return PartyTally(tuple(zip(self.names, votes)), self.seats)


def _ossipoff_scaled(s: int) -> Fraction:
    # e * f(s) = (s+1)^(s+1) / s^s, with 0^0 = 1
    return Fraction((s + 1) ** (s + 1), s ** s if s else 1)


@dataclass(frozen=True)
class DivisorFamily:
    """A divisor function ``f`` applied to a party's current seat count.

    ``custom_sequence`` lists the first divisors explicitly; beyond its end
    the sequence continues arithmetically with its last step, so
    ``1.4, 3, 5, 7`` goes on ``9, 11, ...``.
    """

    kind: str
    custom_sequence: tuple = ()

    def __post_init__(self):
        kind = ALIASES.get(self.kind, self.kind)
        if kind not in KINDS:
            raise ApportionmentError(f"unknown divisor family {self.kind!r}; choose from {', '.join(KINDS)}")
        object.__setattr__(self, "kind", kind)
        seq = tuple(to_rational(d) for d in self.custom_sequence)
        if kind == "custom":
            if len(seq) < 2:
                raise ApportionmentError("a custom divisor sequence needs at least two terms")
            if seq[0] <= 0 or any(b <= a for a, b in zip(seq, seq[1:])):
                raise ApportionmentError("a custom divisor sequence must be positive and strictly increasing")
        elif seq:
            raise ApportionmentError("only the custom family takes a sequence")
        object.__setattr__(self, "custom_sequence", seq)

    @classmethod
    def parse(cls, text: str) -> "DivisorFamily":
        """``"dhondt"``, ``"sainte-lague"``, ... or ``"custom:1.4,3,5,7"``."""
        if text.startswith("custom:"):
            return cls("custom", tuple(part for part in text[len("custom:"):].split(",") if part.strip()))
        return cls(text)

    @property
    def label(self) -> str:
        if self.kind == "custom":
            return "custom:" + ",".join(str(d) for d in self.custom_sequence)
        return self.kind

    @property
    def power(self) -> int:
        return 2 if self.kind == "hill" else 1

    @property
    def exact_rounding(self) -> bool:
        return self.kind != "ossipoff"

    def divisor_pow(self, s: int) -> Fraction:
        """``f(s) ** power`` exactly; for Ossipoff, ``e * f(s)``."""
        kind = self.kind
        if kind == "adams":
            return Fraction(s)
        if kind == "jefferson_dhondt":
            return Fraction(s + 1)
        if kind == "webster_sainte_lague":
            return Fraction(2 * s + 1, 2)
        if kind == "hill":
            return Fraction(s * (s + 1))
        if kind == "dean":
            return Fraction(2 * s * (s + 1), 2 * s + 1)
        if kind == "ossipoff":
            return _ossipoff_scaled(s)
        seq = self.custom_sequence
        if s < len(seq):
            return seq[s]
        return seq[-1] + (s - len(seq) + 1) * (seq[-1] - seq[-2])

    def f(self, s: int) -> float:
        v = self.divisor_pow(s)
        if self.kind == "hill":
            return math.sqrt(v)
        if self.kind == "ossipoff":
            return float(v) / math.e
        return float(v)

    def quotient_key(self, votes: int, s: int):
        """Sort key for ``votes / f(s)``; larger keys win.

        ``votes / 0`` with positive votes is infinite; infinities rank by votes.
        """
        if votes == 0:
            return (0, Fraction(0))
        d = self.divisor_pow(s)
        if d == 0:
            return (2, Fraction(votes))
        return (1, Fraction(votes ** self.power) / d)

    def quotient(self, votes: int, s: int):
        """Display value of the quotient: exact where rational, else a float."""
        if votes == 0:
            return Fraction(0)
        d = self.divisor_pow(s)
        if d == 0:
            return math.inf
        if self.kind in ("hill", "ossipoff"):
            return votes / self.f(s)
        return Fraction(votes) / d

    def round(self, x) -> int:
        """The rounding function of the divisor formulation.

        ``x`` is a Fraction (a float for Ossipoff).  Integers round to
        themselves; otherwise ``x`` rounds up iff it reaches the threshold
        between its two neighbouring integers.
        """
        if self.kind == "custom":
            t = 0
            while self.divisor_pow(t) <= x:
                t += 1
            return t
        if self.kind == "ossipoff":
            x = float(x)
            if x.is_integer():
                return int(x)
            fl = math.floor(x)
            return fl if x < self.f(fl) else fl + 1
        if self.power == 1:
            if x.denominator == 1:
                return int(x)
            fl = math.floor(x)
            return fl if x < self.divisor_pow(fl) else fl + 1
        return self.round_from_power(x * x)

    def round_from_power(self, xp) -> int:
        """Round ``x`` given only ``x ** power`` (exact), as needed for Hill."""
        if self.power == 1:
            return self.round(xp)
        if xp.denominator == 1 and isqrt(xp.numerator) ** 2 == xp.numerator:
            return isqrt(xp.numerator)
        fl = isqrt(math.floor(xp))
        return fl if xp < self.divisor_pow(fl) else fl + 1


ADAMS = DivisorFamily("adams")
DHONDT = DivisorFamily("jefferson_dhondt")
SAINTE_LAGUE = DivisorFamily("webster_sainte_lague")
HILL = DivisorFamily("hill")
DEAN = DivisorFamily("dean")
OSSIPOFF = DivisorFamily("ossipoff")
CLASSICAL_FAMILIES = (ADAMS, DHONDT, SAINTE_LAGUE, HILL, DEAN)


@dataclass
class Apportionment:
    seats_per_party: list
    allocation_order: list = field(default_factory=list)  # (party index, quotient)
    boundary_tie: bool = False  # the last seat awarded tied with the next quotient in line

    def as_dict(self, names) -> dict:
        return dict(zip(names, self.seats_per_party))


@dataclass(frozen=True)
class AlphaInterval:
    """Open interval of rescaling factors; bounds are stored as ``alpha ** power``."""

    low_pow: object
    high_pow: object
    power: int = 1

    @property
    def low(self):
        return self._root(self.low_pow)

    @property
    def high(self):
        return self._root(self.high_pow)

    def _root(self, v):
        if v is None:
            return math.inf
        if self.power == 1:
            return v
        return math.sqrt(v)

    def contains(self, alpha) -> bool:
        ap = alpha ** self.power
        return self.low_pow < ap and (self.high_pow is None or ap < self.high_pow)


def quota(tally: PartyTally) -> list[Fraction]:
    n = tally.total
    if n == 0:
        raise ApportionmentError("quota is undefined when no votes were cast")
    return [Fraction(v * tally.seats, n) for v in tally.votes]


def apportion_largest_quotients(tally: PartyTally, family: DivisorFamily) -> Apportionment:
    """Award seats one by one to the largest ``votes / f(seats so far)``; ties by index."""
    votes = tally.votes
    if tally.seats > 0 and not any(votes):
        raise ApportionmentError("cannot allocate seats when every party has zero votes")
    seats = [0] * len(votes)
    order = []
    for _ in range(tally.seats):
        keys = [family.quotient_key(v, s) for v, s in zip(votes, seats)]
        best = max(range(len(votes)), key=lambda i: (keys[i], -i))
        order.append((best, family.quotient(votes[best], seats[best])))
        seats[best] += 1
    tie = False
    if order:
        last = order[-1][0]
        last_key = family.quotient_key(votes[last], seats[last] - 1)
        for v, s in zip(votes, seats):
            key = family.quotient_key(v, s)
            # infinite quotients cannot be separated by any rescaling factor
            if v and (key == last_key or key[0] == last_key[0] == 2):
                tie = True
    return Apportionment(seats, order, tie)


def _breakpoints(tally: PartyTally, family: DivisorFamily, quotas) -> list:
    """All values of ``alpha ** power`` at which some party's rounding can jump."""
    p = family.power
    points = set()
    for q in quotas:
        if q == 0:
            continue
        qp = q ** p if family.exact_rounding else float(q)
        for t in range(tally.seats + 2):
            if family.kind == "ossipoff":
                points.add(family.f(t) / qp)
                if t:
                    points.add(t / qp)
            else:
                points.add(family.divisor_pow(t) / qp)
                if t and family.kind != "custom":
                    points.add(Fraction(t ** p) / qp)
    return sorted(x for x in points if x > 0)


def _total(family, quotas, beta) -> list[int]:
    p = family.power
    if family.kind == "ossipoff":
        return [family.round(beta * float(q)) for q in quotas]
    return [family.round_from_power(beta * q ** p) if p > 1 else family.round(beta * q) for q in quotas]


def apportion_divisor(tally: PartyTally, family: DivisorFamily) -> tuple[Apportionment, AlphaInterval]:
    """Rescale quotas by ``alpha`` and round; return the seats and the maximal ``alpha`` range.

    The search walks the finitely many breakpoints of the step function
    ``alpha -> sum of rounded quotas`` and tests the midpoint of every gap.
    Raises :class:`NoValidAlpha` when the total jumps over the house size.
    """
    quotas = quota(tally)
    s = tally.seats
    points = _breakpoints(tally, family, quotas)
    if s == 0:
        return Apportionment([0] * len(quotas)), AlphaInterval(0, points[0] if points else None, family.power)
    if not points:
        raise NoValidAlpha("no party has any votes")
    half = Fraction(1, 2) if family.exact_rounding else 0.5
    # probe below the first breakpoint, between each pair, and past the last one
    probes = [(0, points[0], points[0] * half)]
    probes += [(a, b, (a + b) * half) for a, b in zip(points, points[1:])]
    probes.append((points[-1], None, points[-1] * 2))
    good = []
    below = above = None
    for lo, hi, beta in probes:
        seats = _total(family, quotas, beta)
        total = sum(seats)
        if total == s:
            good.append((lo, hi, seats))
        elif total < s:
            below = seats
        elif above is None:
            above = seats
    if not good:
        raise NoValidAlpha(
            f"rounded totals jump from {sum(below) if below else 0} to {sum(above) if above else '?'} "
            f"without hitting {s} seats", below, above)
    interval = AlphaInterval(good[0][0], good[-1][1], family.power)
    return Apportionment(list(good[0][2])), interval


# ---------------------------------------------------------------------------
# property checks


def _seats(tally, family):
    return apportion_largest_quotients(tally, family).seats_per_party


def seat_monotonicity(tally: PartyTally, new_seats: int, family: DivisorFamily) -> PropertyReport:
    before = _seats(tally, family)
    after = _seats(tally.with_seats(new_seats), family)
    losers = [tally.names[i] for i, (a, b) in enumerate(zip(before, after)) if b < a]
    passed = new_seats < tally.seats or not losers
    return PropertyReport(
        "seat_monotonicity", f"{family.label} votes={tally.votes} s={tally.seats}->{new_seats}",
        passed, None if passed else {"before": before, "after": after, "losers": losers})


def vote_monotonicity(old: PartyTally, new: PartyTally, family: DivisorFamily) -> PropertyReport:
    """A party whose votes rose must not lose a seat while a party whose votes fell keeps or gains."""
    before, after = _seats(old, family), _seats(new, family)
    up = [i for i, (a, b) in enumerate(zip(old.votes, new.votes)) if b > a]
    down = [i for i, (a, b) in enumerate(zip(old.votes, new.votes)) if b < a]
    bad = [(old.names[i], old.names[j]) for i in up for j in down
           if after[i] < before[i] and after[j] >= before[j]]
    return PropertyReport(
        "vote_monotonicity", f"{family.label} {old.votes}->{new.votes} s={old.seats}",
        not bad, None if not bad else {"before": before, "after": after, "pairs": bad})


def quota_report(tally: PartyTally, family: DivisorFamily, lower_only: bool = False) -> PropertyReport:
    seats = _seats(tally, family)
    q = quota(tally)
    bad = []
    for name, got, qi in zip(tally.names, seats, q):
        lo, hi = math.floor(qi), math.ceil(qi)
        if got < lo or (not lower_only and got > hi):
            bad.append({"party": name, "seats": got, "quota": f"{qi.numerator}/{qi.denominator}"})
    name = "lower_quota" if lower_only else "quota"
    return PropertyReport(name, f"{family.label} votes={tally.votes} s={tally.seats}",
                          not bad, bad or None)


def check_properties(first: PartyTally, second: PartyTally, family: DivisorFamily) -> list[PropertyReport]:
    """Compare two instances: a seat change checks seat monotonicity, a vote
    change checks vote monotonicity; quota is checked on both."""
    reports = []
    if first.votes == second.votes and first.seats != second.seats:
        lo, hi = sorted((first, second), key=lambda t: t.seats)
        reports.append(seat_monotonicity(lo, hi.seats, family))
    elif first.seats == second.seats and first.votes != second.votes:
        reports.append(vote_monotonicity(first, second, family))
    reports.append(quota_report(first, family))
    reports.append(quota_report(second, family))
    return reports
