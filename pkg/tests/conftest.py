from fractions import Fraction

import pytest

from seqelect.instances import hijack_election


def parse_matrix(text):
    """Rows of whitespace-separated rationals ("0", "1/7", ...)."""
    return [tuple(Fraction(tok) for tok in line.split()) for line in text.strip().splitlines()]


def names(matrix, ordering):
    return tuple(matrix.candidate_names[i] for i in ordering)


@pytest.fixture
def hijack():
    return hijack_election()


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
