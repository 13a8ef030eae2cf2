import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from rfqmst.core import EvalContext, parse_bits
from rfqmst.instance import paper_instance

settings.register_profile(
    "repo", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")

# reference tree: e12, e17, e26, e34, e45, e49, e58, e79
FIG6_BITS = "100011010010001101"
# spanning tree holding e27 and e39 and no other weighted pair
ROW2_BITS = "001100010001110011"

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def paper():
    return paper_instance()


@pytest.fixture(scope="session")
def ctx04(paper):
    return EvalContext.from_levels(paper, 0.9, 0.4)


@pytest.fixture(scope="session")
def ctx08(paper):
    return EvalContext.from_levels(paper, 0.9, 0.8)


@pytest.fixture
def fig6():
    return parse_bits(FIG6_BITS)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
