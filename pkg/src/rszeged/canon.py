"""Canonical graph6 certificates for isomorphism tests at dedup scale.

The certificate is the smallest graph6 string among the labelings reached by
an individualization-refinement search: colour refinement is run to a stable
partition, the first non-singleton cell is split by individualizing each of
its vertices in turn, and every discrete leaf yields a labeling. All choices
depend only on isomorphism-invariant colour ranks, so isomorphic graphs
produce the same leaf set and therefore the same minimum.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, GraphError
from .graph6 import encode

DEFAULT_MAX_ORDER = 16


@dataclass(frozen=True, order=True)
class Certificate:
    g6: str

    def __str__(self) -> str:
        return self.g6


def _refine(adj, colors: list[int]) -> list[int]:
    """Colour refinement to the coarsest equitable partition finer than ``colors``.

    Colours are dense ranks; a refined colour keeps its parent's relative
    order, so the result is a refinement with canonical cell order.
    """
    ncells = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(len(adj))]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == ncells:
            return new
        colors, ncells = new, len(ranks)


def _individualize(colors: list[int], v: int) -> list[int]:
    c = colors[v]
    # v keeps rank c; the rest of its cell and everything above shift up by one
    return [x + 1 if (x > c or (x == c and i != v)) else x for i, x in enumerate(colors)]


def _leaf_code(g: Graph, colors: list[int]) -> bytes:
    perm = colors  # discrete: colour rank is the new label
    return encode(g.relabel(perm))


def certificate(g: Graph, max_order: int = DEFAULT_MAX_ORDER) -> Certificate:
    if g.n > max_order:
        raise GraphError(
            f"certificate requested for order {g.n} > {max_order}; "
            "use the streaming dedup-free mode or raise max_order explicitly"
        )
    if g.n == 0:
        return Certificate(encode(g).decode("ascii"))
    adj = g.adjacency
    degs = [len(a) for a in adj]
    order = {d: i for i, d in enumerate(sorted(set(degs)))}
    start = _refine(adj, [order[d] for d in degs])

    best: bytes | None = None
    stack = [start]
    while stack:
        colors = stack.pop()
        if len(set(colors)) == g.n:
            code = _leaf_code(g, colors)
            if best is None or code < best:
                best = code
            continue
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for v in range(g.n):
            if colors[v] == target:
                stack.append(_refine(adj, _individualize(colors, v)))
    return Certificate(best.decode("ascii"))


def is_isomorphic(g: Graph, h: Graph, max_order: int = DEFAULT_MAX_ORDER) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    return certificate(g, max_order) == certificate(h, max_order)
