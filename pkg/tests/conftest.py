import pytest

from epidemetric.generators import random_corpus, random_tree
import numpy as np

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def corpus():
    """50 seeded weighted random connected graphs, N <= 12, p = 0.4."""
    return random_corpus(50, max_n=12, p=0.4, seed=2024, weight_range=(0.5, 2.0))


@pytest.fixture(scope="session")
def unit_corpus(corpus):
    return [g.unweighted() for g in corpus]


@pytest.fixture(scope="session")
def trees():
    rng = np.random.default_rng(77)
    return [random_tree(int(rng.integers(2, 13)), rng) for _ in range(20)]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
