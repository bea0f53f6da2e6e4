import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from rrgmix.config_model import sample_simple_regular
from rrgmix.graph import complete_bipartite, complete_graph, petersen_graph

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def k4():
    return complete_graph(4)


@pytest.fixture(scope="session")
def petersen():
    return petersen_graph()


@pytest.fixture(scope="session")
def k33():
    return complete_bipartite(3)


@pytest.fixture(scope="session")
def fixtures(k4, petersen, k33):
    return {"K4": k4, "Petersen": petersen, "K33": k33}


@pytest.fixture(scope="session")
def g100():
    return sample_simple_regular(100, 3, seed=1).graph


@pytest.fixture(scope="session")
def g1000():
    return sample_simple_regular(1000, 3, seed=2).graph


def dense_srw(g):
    """Dense transition matrix oracle."""
    P = np.zeros((g.n, g.n))
    for u, v in g.edges.tolist():
        P[u, v] += 1 / g.d
        P[v, u] += 1 / g.d
    return P


def dense_nbrw(es):
    B = np.zeros((es.size, es.size))
    for e in range(es.size):
        for f in es.successors(e):
            B[e, f] = 1 / (es.d - 1)
    return B


# one summary line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
