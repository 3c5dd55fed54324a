"""The greedy seat loop shared by every ballot-matrix method.

A method supplies three criteria evaluated against the current prefix of
elected candidates:

``score(ctx, i)``
    step-1 value of candidate ``i`` (larger is better);
``pair(ctx, z, x)``
    value of the voters who prefer ``z`` to ``x`` (larger is better);
``gain(ctx, y, x, for_value, against_value)``
    how much improver ``y`` gains over the step-1 winner ``x``.

Plain methods only use ``score``.  Pareto-improved methods run the two-step
rule: pick the step-1 winner ``x``, collect every ``z`` whose pair value
against ``x`` beats the reverse, and elect the one with maximal gain.
"""

from __future__ import annotations

import math
import random
from typing import Callable

from .numerics import BallotMatrix
from .trace import ElectionTrace, Improver, SeatRecord

REL_TOL = 1e-12


class MethodError(ValueError):
    """A method precondition failed for the given ballots."""


def exact_cmp(a, b) -> int:
    return (a > b) - (a < b)


def tolerant_cmp(a: float, b: float, rel_tol: float = REL_TOL) -> int:
    """Compare reals, treating values within ``rel_tol`` (relative) as equal."""
    if a == b:
        return 0
    if math.isinf(a) or math.isinf(b):
        return (a > b) - (a < b)
    if math.isclose(a, b, rel_tol=rel_tol, abs_tol=rel_tol):
        return 0
    return 1 if a > b else -1


def _argmax(candidates, value, cmp) -> list[int]:
    best: list[int] = []
    best_value = None
    for i in candidates:
        v = value(i)
        if not best:
            best, best_value = [i], v
            continue
        c = cmp(v, best_value)
        if c > 0:
            best, best_value = [i], v
        elif c == 0:
            best.append(i)
    return best


def break_tie(tied: list[int], beats: Callable[[int, int], bool]) -> tuple[int, str]:
    """Resolve a step-1 tie by the pairwise step-2 comparison, then by index.

    Candidates beaten by another tied candidate are discarded; the lowest
    index among the survivors wins.  A full cycle leaves no survivor, and the
    lowest index overall wins.
    """
    if len(tied) == 1:
        return tied[0], "unique"
    unbeaten = [c for c in tied if not any(beats(o, c) for o in tied if o != c)]
    if len(unbeaten) == 1:
        return unbeaten[0], "pairwise"
    if unbeaten:
        return min(unbeaten), "pairwise+index"
    return min(tied), "cycle+index"


def run_sequential(
    matrix: BallotMatrix,
    method: str,
    criterion: str,
    prepare: Callable[[list[int]], object],
    score: Callable[[object, int], object],
    pair: Callable[[object, int, int], object] | None = None,
    gain: Callable[[object, int, int, object, object], object] | None = None,
    cmp: Callable[[object, object], int] = exact_cmp,
    skip_zero_rows: bool = True,
) -> tuple[list[int], ElectionTrace]:
    """Order all eligible candidates; returns ``(ordering, trace)``.

    Candidates with zero total support are kept out of every comparison and
    appended last in index order.
    """
    pareto = pair is not None
    zero = set(matrix.zero_rows()) if skip_zero_rows else set()
    eligible = [i for i in range(matrix.m) if matrix.eligible[i] and i not in zero]
    phantoms = [i for i in range(matrix.m) if not matrix.eligible[i] and i not in zero]
    trace = ElectionTrace(method, matrix.candidate_names, criterion)
    elected: list[int] = []

    while len(elected) < len(eligible):
        ctx = prepare(elected)
        remaining = [i for i in eligible if i not in elected]
        pool = remaining + (phantoms if pareto else [])
        values = {i: score(ctx, i) for i in sorted(pool)}

        pair_cache: dict = {}

        def pv(z, x):
            key = (z, x)
            if key not in pair_cache:
                pair_cache[key] = pair(ctx, z, x)
            return pair_cache[key]

        def beats(z, x):
            return cmp(pv(z, x), pv(x, z)) > 0

        record = None
        skipped = None
        for restrict in ((False, True) if pareto else (True,)):
            scan = remaining if restrict else sorted(pool)
            tied = _argmax(scan, values.__getitem__, cmp)
            if pareto:
                x, path = break_tie(tied, beats)
            else:
                x, path = tied[0], ("unique" if len(tied) == 1 else "index")
            record = SeatRecord(len(elected) + 1, values, tied, x, path)
            if not pareto:
                record.elected = x
                break
            improvers = []
            for z in remaining:
                if z == x:
                    continue
                fz, fx = pv(z, x), pv(x, z)
                if cmp(fz, fx) > 0:
                    g = gain(ctx, z, x, fz, fx)
                    improvers.append(Improver(z, fz, fx, g, degenerate=getattr(g, "degenerate", False)))
            record.improvers = improvers
            if improvers:
                best = _argmax([imp.candidate for imp in improvers],
                               {imp.candidate: imp.gain for imp in improvers}.__getitem__, cmp)
                record.elected = best[0]
                if len(best) > 1:
                    record.note = "improver tie broken by index"
                break
            if matrix.eligible[x]:
                record.elected = x
                break
            skipped = x  # phantom winner without improvers: rescan eligible rows only
        if skipped is not None:
            record.note = f"phantom step-1 winner {matrix.candidate_names[skipped]} skipped"
        if record.elected < 0 or not matrix.eligible[record.elected]:
            raise AssertionError("seat filled by an ineligible candidate")
        trace.records.append(record)
        elected.append(record.elected)

    trace.tail = sorted(i for i in zero if matrix.eligible[i])
    return trace.ordering, trace


def permute_for_ties(matrix: BallotMatrix, seed: int | None) -> list[int]:
    """Seeded candidate permutation realising pseudo-random index tie-breaks."""
    order = list(range(matrix.m))
    if seed is not None:
        random.Random(seed).shuffle(order)
    return order


def run_with_tie_seed(run, matrix: BallotMatrix, seed: int | None, *args, **kwargs):
    """Run ``run`` on a seeded candidate permutation and map indices back."""
    if seed is None:
        return run(matrix, *args, **kwargs)
    order = permute_for_ties(matrix, seed)
    ordering, trace = run(matrix.permuted(order), *args, **kwargs)
    back = {new: old for new, old in enumerate(order)}
    for rec in trace.records:
        rec.values = {back[i]: v for i, v in rec.values.items()}
        rec.step1_tied = [back[i] for i in rec.step1_tied]
        rec.step1_winner = back[rec.step1_winner]
        rec.elected = back[rec.elected]
        for imp in rec.improvers:
            imp.candidate = back[imp.candidate]
    trace.tail = [back[i] for i in trace.tail]
    trace.candidate_names = matrix.candidate_names
    return [back[i] for i in ordering], trace

