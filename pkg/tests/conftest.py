import random

import pytest
from hypothesis import strategies as st

from arbora.mfamily import build_m
from arbora.words import Word
from arbora.wreath import load_presentation

ODOMETER = """\
# binary adding machine
degree 2
gen a = (1, a) (1 2)
"""


@pytest.fixture(scope="session")
def odometer():
    return load_presentation(ODOMETER, label="odometer")


@pytest.fixture(scope="session", params=[2, 3, 4])
def M(request):
    return build_m(request.param)


@pytest.fixture(scope="session")
def M2():
    return build_m(2)


@pytest.fixture(scope="session")
def M3():
    return build_m(3)


def random_word(rng: random.Random, ngens: int, max_len: int) -> Word:
    n = rng.randint(0, max_len)
    out = []
    while len(out) < n:
        c = rng.choice([1, -1]) * rng.randint(1, ngens)
        if out and out[-1] == -c:
            continue
        out.append(c)
    return Word(out)


def words(ngens: int, max_len: int = 10):
    letters = st.sampled_from([s * g for g in range(1, ngens + 1) for s in (1, -1)])
    return st.lists(letters, max_size=max_len).map(Word)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
