import math
from fractions import Fraction


from conftest import names
from seqelect.approval import run_pareto_phragmen, run_phragmen
from seqelect.instances import A_BLOC_ONLY
from seqelect.methods import run_method
from seqelect.numerics import BallotMatrix
from seqelect.pointwise import run_pareto_pointwise
from seqelect.sequential import break_tie, exact_cmp, permute_for_ties, tolerant_cmp


def test_break_tie_paths():
    never = lambda a, b: False  # noqa: E731
    assert break_tie([4], never) == (4, "unique")
    assert break_tie([3, 1], never) == (1, "pairwise+index")
    assert break_tie([3, 1], lambda a, b: a == 3) == (3, "pairwise")
    cycle = {(0, 1), (1, 2), (2, 0)}
    assert break_tie([2, 1, 0], lambda a, b: (a, b) in cycle) == (0, "cycle+index")


def test_comparators():
    assert exact_cmp(Fraction(1, 3), Fraction(2, 6)) == 0
    assert tolerant_cmp(1.0, 1.0 + 1e-14) == 0
    assert tolerant_cmp(1.0, 1.0 + 1e-9) == -1
    assert tolerant_cmp(math.inf, 1e300) == 1


def test_index_breaks_plain_ties():
    m = BallotMatrix([[1, 0], [0, 1]], "AB")
    order, trace = run_phragmen(m)
    assert order == [0, 1]
    assert trace.records[0].tie_path == "index"
    assert trace.records[0].step1_tied == [0, 1]


def test_step1_tie_broken_pairwise_before_index():
    # after B, A and C both have quotient 1; C's extra voter beats nobody for A
    m = BallotMatrix([[0, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 1]], "ABC")
    order, trace = run_pareto_phragmen(m)
    seat2 = trace.records[1]
    assert seat2.step1_tied == [0, 2]
    assert (seat2.step1_winner, seat2.tie_path) == (2, "pairwise")
    assert names(m, order) == ("B", "C", "A")


def test_zero_support_candidates_go_last():
    m = BallotMatrix([[0, 0], [1, 0], [0, 0], [0, 1]], "ZBYC")
    order, trace = run_phragmen(m)
    assert names(m, order) == ("B", "C", "Z", "Y")
    assert trace.to_dict()["appended_without_support"] == ["Z", "Y"]


def test_phantom_candidate_can_trigger_improvement_but_never_wins(hijack):
    m = hijack.with_candidate("a5", A_BLOC_ONLY, eligible=False)
    order, trace = run_pareto_phragmen(m)
    assert m.index("a5") not in order
    assert len(order) == 8
    seat6 = trace.records[5]
    assert m.candidate_names[seat6.step1_winner] == "a5"
    assert m.candidate_names[seat6.elected] == "a4"


def test_phantom_step1_winner_without_improvers_is_skipped():
    m = BallotMatrix([[1, 1, 1], [1, 0, 0]], ["P", "A"], eligible=[False, True])
    order, trace = run_pareto_pointwise(m)
    assert order == [1]
    assert "phantom step-1 winner P skipped" in trace.records[0].note


def test_tie_seed_permutes_index_order_only():
    m = BallotMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]], "ABC")
    base, _ = run_method("phragmen-sl", m)
    assert base == [0, 1, 2]
    seeded, trace = run_method("phragmen-sl", m, tie_seed=5)
    assert seeded == permute_for_ties(m, 5)
    assert trace.ordering == seeded
    # without ties the seed changes nothing
    m2 = BallotMatrix([[1, 1, 1], [0, 1, 1], [0, 0, 1]], "ABC")
    assert run_method("phragmen-sl", m2, tie_seed=5)[0] == run_method("phragmen-sl", m2)[0]


def test_trace_serialises_exact_values(hijack):
    _, trace = run_pareto_phragmen(hijack)
    seat5 = trace.to_dict()["seats"][4]
    assert seat5["values"]["b3"] == "10/9"
    assert seat5["values"]["b2"] == "45/41"
    assert seat5["improvers"][0] == {"candidate": "b2", "for": "45/46", "against": "5/6", "gain": "10/69"}
