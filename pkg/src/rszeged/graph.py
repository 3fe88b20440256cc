"""Immutable simple graphs and the distance/connectivity primitives used everywhere else."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

MAX_ORDER = 10_000

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for invalid graph construction or queries outside a graph's domain."""


class _Unreachable:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNREACHABLE"

    def __reduce__(self):
        return (_Unreachable, ())


UNREACHABLE = _Unreachable()


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0 .. n-1``.

    ``edges`` holds each edge once as ``(u, v)`` with ``u < v``, sorted.
    Build instances with :func:`build_graph`; the constructor trusts its input.
    """

    n: int
    edges: tuple[Edge, ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def min_degree(self) -> int:
        return min((len(a) for a in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n):
            return False
        return v in self.adjacency[u]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the copy with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError(f"not a permutation of 0..{self.n - 1}: {list(perm)}")
        return build_graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Validate ``edges`` and return the immutable graph.

    Self-loops, repeated pairs (in either orientation) and out-of-range
    endpoints are rejected with a :class:`GraphError` naming the pair.
    """
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    if n > MAX_ORDER:
        raise GraphError(f"order {n} exceeds supported maximum {MAX_ORDER}")
    seen: set[Edge] = set()
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for pair in edges:
        u, v = (int(x) for x in pair)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphError(f"duplicate edge ({u}, {v})")
        seen.add(key)
        nbrs[u].append(v)
        nbrs[v].append(u)
    return Graph(n, tuple(sorted(seen)), tuple(tuple(sorted(a)) for a in nbrs))


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for graph of order {g.n}")


def _check_edge(g: Graph, e: Sequence[int]) -> tuple[int, int]:
    u, v = e
    if not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge of the graph")
    return u, v


def bfs_hops(g: Graph, s: int, skip: Optional[Edge] = None) -> list:
    """Hop counts from ``s`` as a plain list, ``UNREACHABLE`` where no path exists.

    ``skip`` removes one edge (either orientation) from the traversal.
    """
    adj = g.adjacency
    dist: list = [UNREACHABLE] * g.n
    dist[s] = 0
    queue = deque([s])
    if skip is None:
        while queue:
            u = queue.popleft()
            du = dist[u] + 1
            for w in adj[u]:
                if dist[w] is UNREACHABLE:
                    dist[w] = du
                    queue.append(w)
        return dist
    a, b = skip
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if (u == a and w == b) or (u == b and w == a):
                continue
            if dist[w] is UNREACHABLE:
                dist[w] = du
                queue.append(w)
    return dist


@dataclass(frozen=True)
class DistanceRow:
    source: int
    dist: tuple

    def __getitem__(self, v: int):
        return self.dist[v]

    def __len__(self) -> int:
        return len(self.dist)


def distances_from(g: Graph, s: int) -> DistanceRow:
    _check_vertex(g, s)
    return DistanceRow(s, tuple(bfs_hops(g, s)))


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return UNREACHABLE not in bfs_hops(g, 0)


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise GraphError("graph is disconnected")


def cut_vertices(g: Graph) -> frozenset[int]:
    """Articulation points via an iterative depth-first lowpoint pass."""
    require_connected(g)
    n = g.n
    if n < 3:
        return frozenset()
    adj = g.adjacency
    disc = [-1] * n
    low = [0] * n
    cuts: set[int] = set()
    timer = 0
    root = 0
    root_children = 0
    disc[root] = low[root] = timer
    timer += 1
    # frames: (vertex, parent, iterator position)
    stack = [(root, -1, 0)]
    while stack:
        v, parent, i = stack[-1]
        if i < len(adj[v]):
            stack[-1] = (v, parent, i + 1)
            w = adj[v][i]
            if disc[w] == -1:
                disc[w] = low[w] = timer
                timer += 1
                if v == root:
                    root_children += 1
                stack.append((w, v, 0))
            elif w != parent:
                low[v] = min(low[v], disc[w])
        else:
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if parent != root and low[v] >= disc[parent]:
                    cuts.add(parent)
    if root_children > 1:
        cuts.add(root)
    return frozenset(cuts)


_CLASS_NAMES = {0: "tree", 1: "unicyclic", 2: "bicyclic", 3: "tricyclic"}


def cyclomatic_number(g: Graph) -> int:
    require_connected(g)
    return g.m - g.n + 1


def cyclomatic_class(g: Graph) -> str:
    """``tree``/``unicyclic``/``bicyclic``/``tricyclic``, else ``higher(k)``."""
    k = cyclomatic_number(g)
    return _CLASS_NAMES.get(k, f"higher({k})")


def shortest_cycle_through_edge(g: Graph, e: Sequence[int]) -> Optional[int]:
    """Length of the shortest cycle containing ``e``, or ``None`` for a bridge."""
    u, v = _check_edge(g, e)
    d = bfs_hops(g, u, skip=(u, v))[v]
    if d is UNREACHABLE:
        return None
    return d + 1


# Small named graphs used by tests, docs and the CLI.

def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
