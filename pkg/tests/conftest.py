import pytest

from protop.automata import stallings_from_generators, whole_group
from protop.finite_quotients import group_from_permutations, parse_cycles, preimage_subgroup
from protop.words import parse_word, parse_word_list

ACCEPTANCE_LINES: list[str] = []


def subgroup(text: str, rank: int = 2):
    return stallings_from_generators(rank, parse_word_list(text, rank))


def w(text: str, rank: int = 2):
    return parse_word(text, rank)


def s3_quotient():
    return group_from_permutations(2, [parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)])


@pytest.fixture
def K3():
    Q = s3_quotient()
    return preimage_subgroup(Q, [Q.evaluate(w("a"))])


@pytest.fixture
def H2():
    return subgroup("aa,b")


@pytest.fixture
def E():
    return subgroup("aa,bb,ab")


@pytest.fixture
def F2():
    return whole_group(2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
