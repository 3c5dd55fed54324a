import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import names
from seqelect.instances import A_BLOC_ONLY, A1_NARROWED, overlapping_blocs_election
from seqelect.numerics import BallotMatrix, delta, inner
from seqelect.partylist import SAINTE_LAGUE, PartyTally, apportion_largest_quotients
from seqelect.pointwise import r, r_delta, run_pareto_pointwise, run_pointwise
from seqelect.harness import partylist_reduction, seats_by_party
from seqelect.sequential import MethodError

F = Fraction


def test_r_with_empty_load_is_identity():
    assert r((1, 0, 1), (0, 0, 0)) == (1, 0, 1)


def test_r_discounts_by_load_and_popularity():
    # |y| = 2, so a voter with load 1/4 divides by 2 * 1/4 * 2 + 1 = 2
    assert r((1, 1, 0), (F(1, 4), 0, 1)) == (F(1, 2), 1, 0)


def test_r_delta_special_cases():
    w = (F(1, 3), F(1, 5), 0)
    y = (1, 1, 1)
    assert r_delta(y, (0, 0, 0), w) == r(y, w)
    assert r_delta(y, y, w) == (0, 0, 0)
    # on 0/1 input the norm is <delta(y, z), r(y, w)>
    z = (1, 0, 0)
    assert sum(r_delta(y, z, w)) == inner(delta(y, z), r(y, w))


@pytest.mark.parametrize("n", range(1, 7))
def test_r_delta_norm_identity_exhaustive(n):
    loads = [tuple(F(j + k, 5) for j in range(n)) for k in range(3)]
    for y in itertools.product((0, 1), repeat=n):
        for z in itertools.product((0, 1), repeat=n):
            for w in loads:
                assert sum(r_delta(y, z, w)) == inner(delta(y, z), r(y, w))


def test_hijack_orderings(hijack):
    assert names(hijack, run_pointwise(hijack)[0]) == ("a1", "b1", "a2", "a3", "b3", "a4", "b2", "b4")
    assert names(hijack, run_pareto_pointwise(hijack)[0]) == ("a1", "a3", "b1", "a2", "b2", "b3", "a4", "b4")


def test_hijack_with_narrowed_a1(hijack):
    m = hijack.with_row(0, A1_NARROWED)
    assert names(m, run_pointwise(m)[0]) == ("a1", "a2", "b1", "a3", "b3", "a4", "b2", "b4")
    assert names(m, run_pareto_pointwise(m)[0]) == ("a1", "a2", "b1", "a3", "b2", "a4", "b3", "b4")


def test_hijack_with_bloc_only_a4(hijack):
    m = hijack.with_row(3, A_BLOC_ONLY)
    assert names(m, run_pareto_pointwise(m)[0]) == ("a1", "a3", "b1", "a2", "b2", "b3", "a4", "b4")


@pytest.mark.parametrize("k", [1, 3])
def test_overlapping_blocs(k):
    m = overlapping_blocs_election(k)
    assert names(m, run_pointwise(m)[0]) == tuple("AXCBYZ")
    assert names(m, run_pareto_pointwise(m)[0]) == tuple("AXBCYZ")


def test_refuses_scores():
    with pytest.raises(MethodError):
        run_pointwise(BallotMatrix([["1/2"]], ["A"]))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 40), min_size=1, max_size=4, unique=True), st.integers(1, 8))
def test_party_blocks_follow_sainte_lague(votes, seats):
    tally = PartyTally.of(votes, seats)
    matrix, party_of = partylist_reduction(tally, weighted=True)
    got = seats_by_party(run_pointwise(matrix)[0], party_of, seats, len(votes))
    assert got == apportion_largest_quotients(tally, SAINTE_LAGUE).seats_per_party
