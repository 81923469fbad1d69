import numpy as np
import pytest

from markovpst.graph import Graph, from_edge_list


def random_connected_graph(rng: np.random.Generator, n_min: int = 2, n_max: int = 12) -> Graph:
    """Random spanning tree plus a random sprinkling of extra edges."""
    n = int(rng.integers(n_min, n_max + 1))
    edges = [(int(rng.integers(0, v)), v) for v in range(1, n)]
    density = rng.uniform(0.0, 0.6)
    for j in range(n):
        for k in range(j + 1, n):
            if rng.random() < density:
                edges.append((j, k))
    perm = rng.permutation(n)
    return from_edge_list(n, [(int(perm[a]), int(perm[b])) for a, b in edges])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_acceptance: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
