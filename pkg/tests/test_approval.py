from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import names, parse_matrix
from seqelect.approval import (
    DHONDT,
    difference_quotient,
    phragmen_quotient,
    reweight_view,
    run_pareto_phragmen,
    run_pareto_thiele,
    run_phragmen,
    run_thiele,
    thiele_divisor,
)
from seqelect.instances import A_BLOC_ONLY, A1_NARROWED, overlapping_blocs_election, pareto_tradeoff_election
from seqelect.numerics import BallotMatrix, delta, omega
from seqelect.sequential import MethodError

F = Fraction


def load_after(matrix, elected):
    return omega([matrix.rows[matrix.index(c)] for c in elected], matrix.n)


def row(matrix, name):
    return matrix.rows[matrix.index(name)]


# -- worked values on the two-group election -------------------------------

def test_load_after_one_two_four_and_five_seats(hijack):
    tenth = F(1, 10)
    assert load_after(hijack, ["a1"]) == (tenth,) * 7 + (0, tenth, tenth, 0, tenth)
    n = F(9, 40)
    assert load_after(hijack, ["a1", "a2"]) == (n, n, n, n, tenth, n, n, F(1, 8), tenth, n, 0, tenth)
    s = F(7, 20)
    assert load_after(hijack, ["a1", "a2", "b1", "a3"]) == (
        s, s, s, s, F(47, 120), F(31, 60), F(9, 40), F(5, 12), F(4, 15), F(31, 60), F(1, 6), tenth)
    assert load_after(hijack, ["a1", "a2", "b1", "a3", "b2"]) == (
        s, s, s, s, F(67, 120), F(41, 60), F(47, 120), F(7, 12), F(4, 15), F(41, 60), F(1, 3), tenth)


def test_fifth_seat_quotients(hijack):
    w = load_after(hijack, ["a1", "a2", "b1", "a3"])
    q = {c: phragmen_quotient(row(hijack, c), w) for c in ("b3", "b2", "a4", "b4")}
    assert q["b3"] == F(10, 9) and q["b2"] == F(45, 41)
    assert q["b3"] > q["b2"] > q["a4"] > q["b4"]
    assert delta(row(hijack, "b2"), row(hijack, "b3")) == (0, 0, 0, 0, 1, 0, 1, 1, 0, 0, 0, 0)
    assert delta(row(hijack, "b3"), row(hijack, "b2")) == (0,) * 11 + (1,)
    assert difference_quotient(row(hijack, "b2"), row(hijack, "b3"), w) == F(45, 46)
    assert difference_quotient(row(hijack, "b3"), row(hijack, "b2"), w) == F(5, 6)


def test_sixth_seat_quotients(hijack):
    w = load_after(hijack, ["a1", "a2", "b1", "a3", "b2"])
    sl = {c: phragmen_quotient(row(hijack, c), w) for c in ("a4", "b3", "b4")}
    assert sl == {"a4": F(10, 11), "b3": F(20, 23), "b4": F(5, 6)}
    # the printed step-1 values 140/87 and 10/7 carry the denominator <w, x> + 1
    dh = {c: phragmen_quotient(row(hijack, c), w, DHONDT) for c in ("a4", "b3", "b4")}
    assert dh["a4"] == F(140, 87) and dh["b3"] == F(10, 7)
    assert sl["a4"] > sl["b3"] > sl["b4"] and dh["a4"] > dh["b3"] > dh["b4"]
    assert difference_quotient(row(hijack, "b3"), row(hijack, "a4"), w) == F(15, 14)
    assert difference_quotient(row(hijack, "a4"), row(hijack, "b3"), w) == F(150, 149)


def test_quotient_edge_cases():
    assert phragmen_quotient((1, 1, 0), (0, 0, 0)) == 2
    assert difference_quotient((1, 0, 1), (1, 0, 1), (0, 0, 0)) == 0
    assert phragmen_quotient((1, 1), (F(1, 2), F(1, 2)), DHONDT) == 1


THIELE_VIEW = """
1/7 1/7 1/7 1/7 1/7 1/9 1/5 0 1/5 1/9 0 1/3
1/7 1/7 1/7 1/7 0 1/9 1/5 1/7 0 1/9 0 0
1/7 1/7 1/7 1/7 1/7 1/9 0 1/7 0 1/9 0 0
1/7 1/7 1/7 1/7 0 1/9 0 1/7 0 1/9 0 0
0 0 0 0 1/7 1/9 0 1/7 1/5 1/9 1/3 0
0 0 0 0 1/7 1/9 1/5 1/7 0 1/9 1/3 0
0 0 0 0 0 1/9 0 0 0 1/9 1/3 1/3
0 0 0 0 0 0 0 0 0 0 0 1/3
"""

PHRAGMEN_VIEW = """
6/47 6/47 6/47 6/47 6/47 6/47 6/47 0 6/47 6/47 0 6/47
20/143 20/143 20/143 20/143 0 20/143 20/143 20/143 0 20/143 0 0
60/449 60/449 60/449 60/449 60/449 60/449 0 60/449 0 60/449 0 0
10/67 10/67 10/67 10/67 0 10/67 0 10/67 0 10/67 0 0
0 0 0 0 20/111 20/111 0 20/111 20/111 20/111 20/111 0
0 0 0 0 15/82 15/82 15/82 15/82 0 15/82 15/82 0
0 0 0 0 0 5/18 0 0 0 5/18 5/18 5/18
0 0 0 0 0 0 0 0 0 0 0 5/6
"""

POINTWISE_VIEW = """
1/8 1/8 1/8 1/8 6/53 3/34 2/11 0 3/19 3/34 0 1/3
5/33 5/33 5/33 5/33 0 15/139 5/23 3/23 0 15/139 0 0
5/33 5/33 5/33 5/33 15/109 15/139 0 3/23 0 15/139 0 0
10/59 10/59 10/59 10/59 0 30/247 0 6/41 0 30/247 0 0
0 0 0 0 10/57 5/36 0 1/6 5/21 5/36 1/3 0
0 0 0 0 10/57 5/36 10/37 1/6 0 5/36 1/3 0
0 0 0 0 0 15/77 0 0 0 15/77 3/7 5/9
0 0 0 0 0 0 0 0 0 0 0 5/6
"""


@pytest.mark.parametrize("method,text", [
    ("thiele", THIELE_VIEW),
    ("phragmen", PHRAGMEN_VIEW),
    ("pointwise", POINTWISE_VIEW),
])
def test_reweighted_matrices(hijack, method, text):
    view = reweight_view(hijack, ["a1", "a2", "b1", "a3"], method)
    assert [tuple(r) for r in view] == parse_matrix(text)


def test_reweight_view_rejects_unknown_method(hijack):
    with pytest.raises(ValueError):
        reweight_view(hijack, [], "borda")


# -- orderings ---------------------------------------------------------------

@pytest.mark.parametrize("k", [1, 2, 5])
def test_overlapping_blocs(k):
    m = overlapping_blocs_election(k)
    assert names(m, run_phragmen(m)[0]) == tuple("AXCBYZ")
    assert names(m, run_pareto_phragmen(m)[0]) == tuple("AXBCYZ")


def test_hijack_orderings(hijack):
    assert names(hijack, run_phragmen(hijack)[0]) == ("a1", "a2", "b1", "a3", "b3", "a4", "b2", "b4")
    order, trace = run_pareto_phragmen(hijack)
    assert names(hijack, order)[:6] == ("a1", "a2", "b1", "a3", "b2", "b3")
    seat5 = trace.records[4]
    assert hijack.candidate_names[seat5.step1_winner] == "b3"
    assert seat5.values[hijack.index("b3")] == F(10, 9)
    assert [hijack.candidate_names[i.candidate] for i in seat5.improvers] == ["b2"]
    seat6 = trace.records[5]
    assert hijack.candidate_names[seat6.step1_winner] == "a4"
    assert hijack.candidate_names[seat6.elected] == "b3"


def test_added_bloc_candidate_lets_a4_improve(hijack):
    m = hijack.with_candidate("a5", A_BLOC_ONLY)
    order, trace = run_pareto_phragmen(m)
    seat6 = trace.records[5]
    assert m.candidate_names[seat6.step1_winner] == "a5"
    assert [m.candidate_names[i.candidate] for i in seat6.improvers] == ["a4"]
    assert m.candidate_names[order[5]] == "a4"


def test_narrowed_a1_lets_a4_improve_everywhere(hijack):
    m = hijack.with_row(0, A1_NARROWED)
    for run in (run_phragmen, run_pareto_phragmen, run_thiele, run_pareto_thiele):
        assert "a4" in names(m, run(m)[0])


@pytest.mark.parametrize("k,second", [(2, "B"), (3, "B")] + [(k, "C") for k in range(4, 11)])
def test_pareto_tradeoff_second_seat(k, second):
    m = pareto_tradeoff_election(k)
    order, trace = run_phragmen(m)
    assert m.candidate_names[order[1]] == second
    if k == 3:
        assert sorted(trace.records[1].step1_tied) == [1, 2]


def test_dhondt_variant_on_blocs():
    m = overlapping_blocs_election(1)
    order, _ = run_phragmen(m, DHONDT)
    assert names(m, order)[0] == "A"


# -- Thiele --------------------------------------------------------------------

def test_thiele_divisors():
    assert [thiele_divisor("sainte-lague")(s) for s in range(3)] == [1, 3, 5]
    assert [thiele_divisor("dhondt")(s) for s in range(3)] == [1, 2, 3]
    assert thiele_divisor("custom:1.4,3,5,7")(0) == F(7, 5)
    for bad in ("adams", "hill", "dean", "ossipoff"):
        with pytest.raises(MethodError):
            thiele_divisor(bad)


def test_thiele_without_overlap_sorts_by_support():
    m = BallotMatrix([[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]], "ABC")
    assert names(m, run_thiele(m)[0]) == ("B", "A", "C")


def test_pareto_thiele_orthogonal_candidates_sort_by_support():
    m = BallotMatrix([[1, 0, 0, 0, 0], [0, 1, 1, 1, 0], [0, 0, 0, 0, 1]], "ABC")
    order, trace = run_pareto_thiele(m)
    assert names(m, order) == ("B", "A", "C")
    assert not any(r.improvers for r in trace.records)


def test_methods_refuse_scores():
    m = BallotMatrix([["1/2", 1]], ["A"])
    for run in (run_phragmen, run_pareto_phragmen, run_thiele, run_pareto_thiele):
        with pytest.raises(MethodError):
            run(m)


# -- properties ---------------------------------------------------------------

binary = st.integers(2, 5).flatmap(lambda m: st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n).filter(any), min_size=m, max_size=m)))


@settings(max_examples=120, deadline=None)
@given(binary)
def test_pareto_dominated_step1_winner_is_never_kept(rows):
    m = BallotMatrix(rows, [f"c{i}" for i in range(len(rows))])
    _, trace = run_pareto_phragmen(m)
    done = set()
    for rec in trace.records:
        x = rec.step1_winner
        dominated = any(
            z not in done and z != x and not any(delta(m.rows[x], m.rows[z])) and any(delta(m.rows[z], m.rows[x]))
            for z in range(m.m))
        if dominated:
            assert rec.elected != x
        done.add(rec.elected)


@settings(max_examples=120, deadline=None)
@given(binary, st.lists(st.integers(1, 3), min_size=6, max_size=6))
def test_weighted_columns_match_expansion(rows, weights):
    n = len(rows[0])
    m = BallotMatrix(rows, [f"c{i}" for i in range(len(rows))], weights[:n])
    for run in (run_phragmen, run_pareto_phragmen, run_thiele, run_pareto_thiele):
        assert run(m)[0] == run(m.expanded())[0]
