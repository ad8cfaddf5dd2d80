import pytest
from hypothesis import strategies as st

from fwa import Facv, Facw, FuzzySet
from fwa.fixtures import almost_small, gas_cooker, small
from fwa.verify import GRADE_POOL

grades = st.sampled_from(GRADE_POOL)


def fuzzy_sets(universe):
    universe = tuple(universe)
    return st.fixed_dictionaries({x: grades for x in universe}).map(lambda d: FuzzySet(universe, d))


@st.composite
def facvs(draw, max_q=3, max_sigma=3):
    nq = draw(st.integers(1, max_q))
    ns = draw(st.integers(1, max_sigma))
    states = [f"q{i}" for i in range(nq)]
    alphabet = [chr(ord("a") + i) for i in range(ns)]
    delta = {(q, a): draw(fuzzy_sets(states)) for q in states for a in alphabet}
    return Facv(states, alphabet, delta, states[0], draw(fuzzy_sets(states)))


@st.composite
def facws(draw, max_q=3, max_sigma=3, max_words=3):
    nq = draw(st.integers(1, max_q))
    ns = draw(st.integers(1, max_sigma))
    states = [f"q{i}" for i in range(nq)]
    sigma = [chr(ord("a") + i) for i in range(ns)]
    word_list = draw(st.lists(fuzzy_sets(sigma), min_size=1, max_size=max_words, unique=True))
    words = {f"W{i}": w for i, w in enumerate(word_list)}
    delta = {(q, n): draw(fuzzy_sets(states)) for q in states for n in words}
    return Facw(states, sigma, words, delta, states[0], draw(fuzzy_sets(states)))


@pytest.fixture
def cooker():
    return gas_cooker()


@pytest.fixture
def S():
    return small()


@pytest.fixture
def S_almost():
    return almost_small()


# one line per acceptance criterion, printed in the terminal summary
_criteria: dict[int, str] = {}


class _Criterion:
    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title
        self.detail = ""

    def __enter__(self):
        return self

    def _record(self, status: str, detail: str) -> None:
        line = f"criterion {self.number:>2} {status:<4} {self.title}"
        if detail:
            line += f" ({detail})"
        _criteria[self.number] = line
        print(line)

    def __exit__(self, exc_type, exc, tb):
        if exc_type is None:
            self._record("PASS", self.detail)
        elif issubclass(exc_type, pytest.skip.Exception):
            self._record("SKIP", str(exc))
        else:
            self._record("FAIL", str(exc).splitlines()[0] if str(exc) else exc_type.__name__)
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.write_sep("=", "acceptance criteria")
        for n in sorted(_criteria):
            terminalreporter.write_line(_criteria[n])
