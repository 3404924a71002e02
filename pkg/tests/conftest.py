import itertools

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bayesvote import LinearOrder, Profile, Tournament
from bayesvote.core import n_pairs

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def linear_orders(draw, m=None, max_m=6):
    m = m if m is not None else draw(st.integers(1, max_m))
    return LinearOrder(tuple(draw(st.permutations(range(m)))))


@st.composite
def tournaments(draw, m=None, max_m=6):
    m = m if m is not None else draw(st.integers(1, max_m))
    bits = draw(st.lists(st.booleans(), min_size=n_pairs(m), max_size=n_pairs(m)))
    return Tournament(m, tuple(bits))


@st.composite
def profiles(draw, min_m=2, max_m=5, max_n=8, kind="linear"):
    m = draw(st.integers(min_m, max_m))
    n = draw(st.integers(0, max_n))
    if kind == "tournament":
        votes = [draw(tournaments(m=m)) for _ in range(n)]
        return Profile.from_tournaments(votes, m=m)
    votes = [draw(linear_orders(m=m)) for _ in range(n)]
    return Profile.from_rankings(votes, m=m)


@pytest.fixture
def three_cycle():
    # a>b>c, b>c>a, c>a>b
    return Profile.from_rankings([(0, 1, 2), (1, 2, 0), (2, 0, 1)])


def all_orders(m):
    return [LinearOrder(p) for p in itertools.permutations(range(m))]


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
