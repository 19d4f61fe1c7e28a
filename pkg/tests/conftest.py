import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from graphent.graph import Graph


def random_graph(rng: np.random.Generator, n: int, p: float = 0.5) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, b in zip(pairs, bits) if b])


def brute_mis_size(g: Graph) -> int:
    """Largest independent set by enumerating every subset."""
    best = 0
    for mask in range(1 << g.n):
        members = [v for v in range(g.n) if mask >> v & 1]
        if len(members) <= best:
            continue
        if all(not g.has_edge(a, b) for a, b in itertools.combinations(members, 2)):
            best = len(members)
    return best


def brute_mis_sets(g: Graph) -> list[tuple[int, ...]]:
    size = brute_mis_size(g)
    out = []
    for combo in itertools.combinations(range(g.n), size):
        if all(not g.has_edge(a, b) for a, b in itertools.combinations(combo, 2)):
            out.append(combo)
    return out


def bipartitions(n: int):
    """Every side_a with vertex n-1 excluded and both sides non-empty."""
    for mask in range(1, 1 << (n - 1)):
        yield [v for v in range(n) if mask >> v & 1]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


def record_acceptance(number: int, ok: bool, detail: str) -> None:
    line = f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
