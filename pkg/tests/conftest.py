import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from finitopo.core import example_s1, example_s2, example_s3, sierpinski  # noqa: E402
from finitopo.zoo import enumerate_topologies, random_space  # noqa: E402


@pytest.fixture
def s1():
    return example_s1()


@pytest.fixture
def s2():
    return example_s2()


@pytest.fixture
def s3():
    return example_s3()


@pytest.fixture
def sier():
    return sierpinski()


@pytest.fixture(scope="session")
def small_spaces():
    """Every labeled topology on at most three points."""
    return [s for n in (1, 2, 3) for s in enumerate_topologies(n)]


@pytest.fixture(scope="session")
def random_spaces():
    return [random_space(n, seed, d) for n in (4, 5) for seed in range(6) for d in (0.15, 0.35)]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
