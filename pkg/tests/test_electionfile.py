from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from seqelect.electionfile import ElectionFile, ElectionFileError, parse_csv, parse_election, parse_text, serialize
from seqelect.numerics import BallotMatrix
from seqelect.partylist import PartyTally

BLOCS = """\
version 1
mode ballots
candidates A B C X Y Z
approve 20 | A B C
approve 10 | X Y Z
approve 2 | A B X   # trailing comment
approve 1 | A X Y
"""


def test_weighted_groups():
    ef = parse_text(BLOCS)
    assert ef.mode == "ballots"
    assert ef.matrix.candidate_names == tuple("ABCXYZ")
    assert ef.matrix.voter_weights == (20, 10, 2, 1)
    assert ef.matrix.support(0) == 23


def test_partylist_file():
    ef = parse_text("version 1\nmode partylist\nseats 7\nparty P1 53\nparty P2 24\nparty P3 23\n")
    assert ef.tally == PartyTally.of([53, 24, 23], 7, ["P1", "P2", "P3"])


def test_scores_phantoms_and_ineligible():
    ef = parse_text("version 1\nmode ballots\ncandidates A B\nvoter 2 | 1/2 0.25\nphantom | 1 0\n"
                    "phantom 3 | 0 1\nineligible B\n")
    m = ef.matrix
    assert m.rows == ((Fraction(1, 2), 1, 0), (Fraction(1, 4), 0, 1))
    assert m.voter_weights == (2, 1, 3)
    assert m.phantom_voters == (False, True, True)
    assert m.eligible == (True, False)


@pytest.mark.parametrize("text,line,column,fragment", [
    ("version 1\nmode ballots\ncandidates A B\nvoter 1 | 3/2 0\n", 4, 11, "outside [0, 1]"),
    ("version 1\nmode ballots\ncandidates A B A\n", 3, 16, "duplicate candidate"),
    ("version 1\nmode ballots\ncandidates A B\nvoter 1 | 1\n", 4, 1, "expected 2 scores"),
    ("version 1\nmode ballots\ncandidates A B\napprove 1 | A Q\n", 4, 15, "unknown candidate"),
    ("version 1\nmode ballots\ncandidates A\nvoter 0 | 1\n", 4, 7, "positive"),
    ("version 1\nmode ballots\ncandidates A\nvoter 1 1\n", 4, 1, "'|'"),
    ("version 2\n", 1, 1, "version"),
    ("version 1\nmode ballots\nfrobnicate\n", 3, 1, "unknown directive"),
    ("version 1\nmode partylist\nseats x\n", 3, 7, "integer"),
    ("version 1\nmode partylist\nseats 2\nparty P 1\nparty P 3\n", 5, 7, "duplicate party"),
    ("version 1\nmode ballots\ncandidates A\nvoter 1 | abc\n", 4, 11, "cannot read score"),
])
def test_diagnostics_carry_line_and_column(text, line, column, fragment):
    with pytest.raises(ElectionFileError) as info:
        parse_text(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert fragment in str(info.value)


@pytest.mark.parametrize("text,fragment", [
    ("mode ballots\ncandidates A\nvoter 1 | 1\n", "version"),
    ("version 1\n", "mode"),
    ("version 1\nmode ballots\ncandidates A\n", "no voters"),
    ("version 1\nmode partylist\nparty P 3\n", "seats"),
])
def test_missing_sections(text, fragment):
    with pytest.raises(ElectionFileError, match=fragment):
        parse_text(text)


def test_csv_form(tmp_path):
    path = tmp_path / "scores.csv"
    path.write_text("A,1,1/2,0\nB,0,1,1\n")
    ef = parse_election(path)
    assert ef.matrix.candidate_names == ("A", "B")
    assert ef.matrix.rows[0] == (1, Fraction(1, 2), 0)
    with pytest.raises(ElectionFileError, match="line 2"):
        parse_csv("A,1\nB,2\n")


def test_unreadable_file(tmp_path):
    with pytest.raises(ElectionFileError, match="cannot read"):
        parse_election(tmp_path / "missing.election")
    bad = tmp_path / "bad.election"
    bad.write_bytes(b"\xff\xfe")
    with pytest.raises(ElectionFileError, match="UTF-8"):
        parse_election(bad)


def test_errors_name_the_file(tmp_path):
    path = tmp_path / "e.election"
    path.write_text("version 1\nmode ballots\ncandidates A\nvoter 1 | 2\n")
    with pytest.raises(ElectionFileError, match="e.election: line 4"):
        parse_election(path)


fractions01 = st.fractions(0, 1, max_denominator=6)
ballot_files = st.integers(1, 4).flatmap(lambda m: st.integers(1, 5).flatmap(lambda n: st.builds(
    lambda rows, weights, phantoms, eligible: ElectionFile("ballots", matrix=BallotMatrix(
        rows, [f"c{i}" for i in range(m)], weights, eligible, phantoms)),
    st.lists(st.lists(fractions01, min_size=n, max_size=n), min_size=m, max_size=m),
    st.lists(st.integers(1, 9), min_size=n, max_size=n),
    st.lists(st.booleans(), min_size=n, max_size=n),
    st.lists(st.booleans(), min_size=m, max_size=m),
)))
party_files = st.builds(
    lambda votes, seats: ElectionFile("partylist", tally=PartyTally.of(votes, seats)),
    st.lists(st.integers(0, 1000), min_size=1, max_size=6), st.integers(0, 30))


@settings(max_examples=150, deadline=None)
@given(st.one_of(ballot_files, party_files))
def test_round_trip(ef):
    assert parse_text(serialize(ef)) == ef
