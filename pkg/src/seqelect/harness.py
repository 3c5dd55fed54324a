"""Independent oracles and property drivers.

Nothing here reuses the selection loop of the method modules: the oracles
are written straight from definitions (variance of representation, classical
apportionment) so that agreement with the methods means something.
"""

from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction
from typing import Callable, Sequence

from . import methods
from .instances import nonmonotone_matrices, overlapping_blocs_election
from .numerics import BallotError, BallotMatrix
from .partylist import (
    CLASSICAL_FAMILIES,
    DHONDT,
    SAINTE_LAGUE,
    NoValidAlpha,
    PartyTally,
    apportion_divisor,
    apportion_largest_quotients,
    quota_report,
    seat_monotonicity,
    vote_monotonicity,
)
from .trace import PropertyReport

DEFAULT_SEED = 20240607


def variance(rows: Sequence[Sequence], n: int, weights: Sequence[int] | None = None) -> Fraction:
    """Variance of per-voter representation when ``rows`` hold the seats.

    Computed from the definition ``(1/n) * ||load - k/n * 1||**2`` with the
    load built here directly, not through the method modules.
    """
    weights = (1,) * n if weights is None else tuple(weights)
    total = sum(weights)
    load = [Fraction(0)] * n
    for row in rows:
        size = sum(w * Fraction(x) for w, x in zip(weights, row))
        if size == 0:
            raise BallotError("variance is undefined with a zero-support candidate")
        for j in range(n):
            load[j] += Fraction(row[j]) / size
    mean = Fraction(len(rows), total)
    return sum(w * (c - mean) ** 2 for w, c in zip(weights, load)) / total


def greedy_variance_steps(matrix: BallotMatrix) -> list[list[int]]:
    """For each seat, the set of candidates minimising the resulting variance.

    The lowest index of each set is taken before moving to the next seat.
    Zero-support candidates are ignored.
    """
    live = [i for i in range(matrix.m) if matrix.support(i) != 0]
    chosen: list[int] = []
    steps = []
    while len(chosen) < len(live):
        scored = {i: variance([matrix.rows[c] for c in chosen + [i]], matrix.n, matrix.voter_weights)
                  for i in live if i not in chosen}
        low = min(scored.values())
        ties = sorted(i for i, v in scored.items() if v == low)
        steps.append(ties)
        chosen.append(ties[0])
    return steps


def greedy_variance_oracle(matrix: BallotMatrix) -> list[int]:
    return [ties[0] for ties in greedy_variance_steps(matrix)]


def partylist_reduction(tally: PartyTally, clones: int | Sequence[int] | None = None,
                        weighted: bool = False) -> tuple[BallotMatrix, list[int]]:
    """Block-diagonal approval matrix of a party-list election.

    Party ``i`` contributes ``clones[i]`` identical candidate rows approved
    exactly by its own voters.  Returns the matrix and the party of each row.
    With ``weighted=True`` each party's voters form one weighted column.
    """
    votes = tally.votes
    if clones is None:
        clones = [max(tally.seats, 1)] * len(votes)
    elif isinstance(clones, int):
        clones = [clones] * len(votes)
    cols = []  # (party, weight)
    for p, v in enumerate(votes):
        if weighted:
            if v:
                cols.append((p, v))
        else:
            cols.extend((p, 1) for _ in range(v))
    rows, names, party_of = [], [], []
    for p, (name, _) in enumerate(tally.parties):
        for c in range(clones[p]):
            rows.append([1 if q == p else 0 for q, _ in cols])
            names.append(f"{name}#{c + 1}")
            party_of.append(p)
    return BallotMatrix(rows, names, [w for _, w in cols]), party_of


def seats_by_party(ordering: Sequence[int], party_of: Sequence[int], seats: int, parties: int) -> list[int]:
    counts = Counter(party_of[i] for i in ordering[:seats])
    return [counts.get(p, 0) for p in range(parties)]


PARETO_FLIP_METHODS = ("pareto-phragmen", "pareto-pointwise")


def flip_threshold(k: int, method: str = "pareto-phragmen", limit: int | None = None) -> int:
    """Smallest number of added C-only voters that puts C ahead of B.

    Searches upward from zero on the overlapping-blocs election at scale ``k``.
    """
    if method not in PARETO_FLIP_METHODS:
        raise ValueError(f"flip_threshold supports {', '.join(PARETO_FLIP_METHODS)}")
    limit = 30 * k + 10 if limit is None else limit
    for p in range(limit + 1):
        matrix = overlapping_blocs_election(k, p)
        ordering, _ = methods.run_method(method, matrix)
        if ordering.index(matrix.index("C")) < ordering.index(matrix.index("B")):
            return p
    raise RuntimeError(f"C never overtook B within {limit} added voters")


def rank_of(ordering: Sequence[int], candidate: int) -> int:
    return list(ordering).index(candidate)


def monotonicity_probe(matrix: BallotMatrix, method: str | Callable,
                       entries: Sequence[tuple[int, int]] | None = None) -> list[PropertyReport]:
    """Flip zero entries to 1 one at a time and report every rank that worsens.

    Returns only failing reports; an empty list means no violation was found.
    """
    run = (lambda m: methods.run_method(method, m)) if isinstance(method, str) else method
    label = method if isinstance(method, str) else getattr(method, "__name__", "method")
    base, _ = run(matrix)
    if entries is None:
        entries = [(i, j) for i in range(matrix.m) for j in range(matrix.n) if matrix.rows[i][j] == 0]
    reports = []
    for i, j in entries:
        if matrix.rows[i][j] != 0:
            continue
        row = list(matrix.rows[i])
        row[j] = 1
        flipped, _ = run(matrix.with_row(i, row))
        before, after = rank_of(base, i), rank_of(flipped, i)
        if after > before:
            reports.append(PropertyReport(
                "approval_monotonicity", f"{label} flip ({i}, {j})", False,
                {"candidate": matrix.candidate_names[i], "voter": j,
                 "rank_before": before + 1, "rank_after": after + 1,
                 "ordering_before": [matrix.candidate_names[c] for c in base],
                 "ordering_after": [matrix.candidate_names[c] for c in flipped]}))
    return reports


def nonmonotone_witnesses() -> dict[int, list[str]]:
    """For each stored non-monotone matrix, the pointwise methods whose ordering
    demotes candidate 1 when voter 1's vote for it changes from 0 to 1."""
    out = {}
    for idx, matrix in enumerate(nonmonotone_matrices()):
        out[idx] = [name for name in ("pointwise", "pareto-pointwise")
                    if monotonicity_probe(matrix, name, entries=[(0, 0)])]
    return out


# ---------------------------------------------------------------------------
# random instances


def random_binary_matrix(rng: random.Random, max_m: int = 6, max_n: int = 8,
                         allow_zero_rows: bool = False) -> BallotMatrix:
    m, n = rng.randint(1, max_m), rng.randint(1, max_n)
    rows = []
    while len(rows) < m:
        row = [rng.randint(0, 1) for _ in range(n)]
        if allow_zero_rows or any(row):
            rows.append(row)
    return BallotMatrix(rows, [f"c{i}" for i in range(m)])


def random_tally(rng: random.Random, max_parties: int = 6, max_seats: int = 20,
                 max_votes: int = 60, distinct: bool = True) -> PartyTally:
    k = rng.randint(1, max_parties)
    if distinct:
        votes = rng.sample(range(1, max_votes + 1), k)
    else:
        votes = [rng.randint(0, max_votes) for _ in range(k)]
    return PartyTally.of(votes, rng.randint(1, max_seats))


def reduction_report(tally: PartyTally) -> list[PropertyReport]:
    """Check the approval methods against classical apportionment on a block matrix."""
    matrix, party_of = partylist_reduction(tally, weighted=True)
    parties, s = len(tally.parties), tally.seats
    checks = [
        ("phragmen-sl", SAINTE_LAGUE),
        ("phragmen-dhondt", DHONDT),
        ("thiele", SAINTE_LAGUE),
        ("pointwise", SAINTE_LAGUE),
    ]
    reports = []
    for method, family in checks:
        expected = apportion_largest_quotients(tally, family)
        got = seats_by_party(methods.run_method(method, matrix)[0], party_of, s, parties)
        ok = got == expected.seats_per_party
        reports.append(PropertyReport(
            f"reduction:{method}", f"votes={tally.votes} s={s}", ok,
            None if ok else {"expected": expected.seats_per_party, "got": got}))
    return reports


def brackets(below, seats, above) -> bool:
    """``below <= seats <= above`` componentwise; a missing side is unbounded."""
    return all((b is None or b <= s) and (a is None or s <= a)
               for b, s, a in zip(below or [None] * len(seats), seats, above or [None] * len(seats)))


def formulations_report(tally: PartyTally) -> list[PropertyReport]:
    """Largest quotients versus rescaled rounding, for the five classical families.

    When no rescaling factor hits the house size, the largest-quotients
    result must sit on a tie at the last seat and lie between the two
    allocations either side of the jump.
    """
    reports = []
    for family in CLASSICAL_FAMILIES:
        lq = apportion_largest_quotients(tally, family)
        witness = None
        try:
            dv, _ = apportion_divisor(tally, family)
            ok = dv.seats_per_party == lq.seats_per_party
            if not ok:
                witness = {"largest_quotients": lq.seats_per_party, "divisor": dv.seats_per_party}
        except NoValidAlpha as exc:
            ok = lq.boundary_tie and brackets(exc.below, lq.seats_per_party, exc.above)
            if not ok:
                witness = {"largest_quotients": lq.seats_per_party, "tie_below": exc.below,
                           "tie_above": exc.above, "boundary_tie": lq.boundary_tie}
        reports.append(PropertyReport(f"formulations:{family.kind}", f"votes={tally.votes} s={tally.seats}",
                                      ok, witness))
    return reports


def run_manifest(seed: int = DEFAULT_SEED, quick: bool = False) -> list[PropertyReport]:
    """The full property manifest behind ``seqelect verify``."""
    rng = random.Random(seed)
    reports: list[PropertyReport] = []
    n_matrices = 40 if quick else 200
    n_tallies = 20 if quick else 100

    for t in range(n_matrices):
        matrix = random_binary_matrix(rng)
        ordering, trace = methods.run_method("phragmen-sl", matrix)
        steps = greedy_variance_steps(matrix)
        got = [sorted(r.step1_tied) for r in trace.records]
        ok = got == steps
        reports.append(PropertyReport("variance_oracle", f"seed={seed} matrix#{t}", ok,
                                      None if ok else {"rows": [list(map(str, r)) for r in matrix.rows],
                                                       "algorithm": got, "oracle": steps}))

    for t in range(n_tallies):
        tally = random_tally(rng)
        reports += reduction_report(tally)
        reports += formulations_report(tally)
        reports.append(seat_monotonicity(tally, tally.seats + rng.randint(1, 5), SAINTE_LAGUE))
        reports.append(quota_report(tally, DHONDT, lower_only=True))
        bumped = list(tally.votes)
        if len(bumped) > 1:
            i, j = rng.sample(range(len(bumped)), 2)
            moved = rng.randint(1, bumped[j])
            bumped[i] += moved
            bumped[j] -= moved
            for family in CLASSICAL_FAMILIES:
                reports.append(vote_monotonicity(tally, tally.with_votes(bumped), family))

    for k in range(1, 6):
        for method, expected in (("pareto-phragmen", 598 * k // 443 + 1),
                                 ("pareto-pointwise", 598 * k // 1883 + 1)):
            got = flip_threshold(k, method)
            reports.append(PropertyReport(f"flip_threshold:{method}", f"k={k}", got == expected,
                                          None if got == expected else {"expected": expected, "got": got}))

    for idx, found in nonmonotone_witnesses().items():
        reports.append(PropertyReport("nonmonotone_witness", f"matrix#{idx}", bool(found),
                                      {"methods": found} if found else {"methods": []}))
    return reports
