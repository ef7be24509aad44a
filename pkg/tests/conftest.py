import os

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from u3coupling.patterns import SU3Irrep, U3Irrep

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def u3_irreps(draw, max_n13=6, normalized=False):
    a = draw(st.integers(0, max_n13))
    b = draw(st.integers(0, a))
    c = 0 if normalized else draw(st.integers(0, b))
    return U3Irrep(a, b, c)


@st.composite
def su3_irreps(draw, max_sum=6):
    lam = draw(st.integers(0, max_sum))
    mu = draw(st.integers(0, max_sum - lam))
    return SU3Irrep(lam, mu)


@pytest.fixture
def fundamental():
    return U3Irrep(1, 0, 0)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    def _report(line: str):
        ACCEPTANCE_LINES.append(line)
        print(line)
    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
