import pytest
from hypothesis import strategies as st

from cmrcover.words import Alphabet, minimal_words, validate_forbidden_set

BIN = Alphabet(("0", "1"))
AB = Alphabet(("a", "b"))
ABC = Alphabet(("a", "b", "c"))


def fs(words, alphabet):
    if isinstance(alphabet, str):
        alphabet = Alphabet.parse(alphabet)
    return validate_forbidden_set(words, alphabet)


@pytest.fixture
def running_example():
    """The running example: F = {00, 1101, 111} over {0, 1}."""
    return fs(["00", "1101", "111"], BIN)


@st.composite
def forbidden_sets(draw, sizes=(2, 3, 4), max_words=3, max_len=7, equal_lengths=False):
    k = draw(st.sampled_from(sizes))
    symbols = tuple("abcd"[:k])
    if equal_lengths:
        n = draw(st.integers(1, max_len))
        word = st.lists(st.sampled_from(symbols), min_size=n, max_size=n).map(tuple)
    else:
        word = st.lists(st.sampled_from(symbols), min_size=1, max_size=max_len).map(tuple)
    words = draw(st.lists(word, min_size=1, max_size=max_words))
    return validate_forbidden_set(minimal_words(words), Alphabet(symbols))


# one line per acceptance criterion, echoed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
