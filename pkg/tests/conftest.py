import random
from functools import lru_cache

import pytest
from hypothesis import settings

from rszeged.graph import build_graph
from rszeged.indices import fn_closed_form_q
from rszeged.search import enumerate_small, sweep_pendant_free

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_connected(rng: random.Random, n: int, p: float):
    """Random spanning tree plus each remaining pair with probability p."""
    perm = list(range(n))
    rng.shuffle(perm)
    edges = {tuple(sorted((perm[i], perm[rng.randrange(i)]))) for i in range(1, n)}
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in edges and rng.random() < p:
                edges.add((i, j))
    return build_graph(n, sorted(edges))


def random_tree(rng: random.Random, n: int):
    return build_graph(n, [(i, rng.randrange(i)) for i in range(1, n)])


def random_bipartite_connected(rng: random.Random, n: int, p: float):
    """Random connected bipartite graph: a crossing spanning tree plus crossing edges."""
    order = list(range(n))
    rng.shuffle(order)
    cut = rng.randint(1, n - 1)
    a, b = order[:cut], order[cut:]
    edges = set()
    placed_a, placed_b = [a[0]], []
    for v in b:
        edges.add(tuple(sorted((v, rng.choice(placed_a)))))
        placed_b.append(v)
    for v in a[1:]:
        edges.add(tuple(sorted((v, rng.choice(placed_b)))))
        placed_a.append(v)
    for u in a:
        for v in b:
            if rng.random() < p:
                edges.add(tuple(sorted((u, v))))
    return build_graph(n, sorted(edges)), (set(a), set(b))


@lru_cache(maxsize=None)
def small_graphs(n):
    return tuple(enumerate_small(n))


_SWEEPS = {}


def cached_sweep(n, workers=None, exceed_q=None, **kw):
    """Memoised sweep shared by verify/crossover tests (exceeders always collected)."""
    if n not in _SWEEPS:
        _SWEEPS[n] = sweep_pendant_free(n, workers=workers, exceed_q=fn_closed_form_q(n))
    return _SWEEPS[n]


@pytest.fixture(scope="session")
def sweep_cache():
    return cached_sweep


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
