import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from permutope import Multigraph, Walk


@pytest.fixture
def fig2_graph() -> Multigraph:
    """Triangle with the edge orientation read off its printed incidence
    matrix: e1 = v2->v3, e2 = v3->v1, e3 = v1->v2."""
    return Multigraph(["v1", "v2", "v3"], [(1, 2, "e1"), (2, 0, "e2"), (0, 1, "e3")])


@pytest.fixture
def fig3_graph() -> Multigraph:
    """Two vertices, five edges (one loop, two parallel each way); its cycle
    polytope is a three-dimensional pyramid with a square base."""
    return Multigraph(
        ["v1", "v2"],
        [(0, 0, "loop"), (0, 1, "a1"), (0, 1, "a2"), (1, 0, "b1"), (1, 0, "b2")],
    )


def random_multigraph(rng: random.Random, max_vertices: int = 5, max_edges: int = 8) -> Multigraph:
    nv = rng.randint(1, max_vertices)
    ne = rng.randint(0, max_edges)
    edges = [(rng.randrange(nv), rng.randrange(nv), f"e{i}") for i in range(ne)]
    return Multigraph([f"v{i}" for i in range(nv)], edges)


def random_walk(rng: random.Random, graph: Multigraph, max_len: int = 50) -> Walk | None:
    if graph.n_edges == 0:
        return None
    edge = rng.randrange(graph.n_edges)
    ids = [edge]
    for _ in range(rng.randint(0, max_len - 1)):
        options = graph.continuations(ids[-1])
        if not options:
            break
        ids.append(rng.choice(options))
    return Walk(graph, tuple(ids))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    start = getattr(config, "_permutope_start", None)
    if start is not None:
        terminalreporter.write_line(
            f"total suite wall time: {time.perf_counter() - start:.1f}s"
        )


def pytest_configure(config):
    config._permutope_start = time.perf_counter()
