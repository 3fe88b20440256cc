"""Pendant-free tricyclic graphs as subdivisions of base multigraphs.

Every connected graph with ``m = n + 2`` and minimum degree at least 2 is
obtained from exactly one base multigraph (connected, cyclomatic number 3,
minimum degree 3, loops and parallel edges allowed) by replacing each base
edge with a path. Counting degrees gives at most four base vertices, so the
bases are found by exhausting all edge multisets on 1-4 vertices.

Four bases are loop-free and 2-connected; their subdivisions are the theta
families. Their base edges are stored in the order of the family parameters:

    theta1  x=0 y=1            a, b, c, d all join x-y
    theta2  x=0 y=1 z=2        a:yz  b:xy  c:xz  d:xy  e:xz
    theta3  x=0 y=1 z=2 w=3    a:yz  b:wx  c:wy  d:xz  e:wy  f:xz
    theta4  x=0 y=1 z=2 w=3    a:wx  b:wy  c:wz  d:yz  e:xz  f:xy

(the theta2/theta3/theta4 endpoint assignment is a documented choice; any
diagnostic keyed to path letters depends on it).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .graph import Graph, GraphError, build_graph

BRANCH_LABELS = {1: "xy", 2: "xyz", 3: "xyzw", 4: "xyzw"}
PATH_LETTERS = "abcdef"

_THETA_EDGES = {
    "theta1": (2, ((0, 1), (0, 1), (0, 1), (0, 1))),
    "theta2": (3, ((1, 2), (0, 1), (0, 2), (0, 1), (0, 2))),
    "theta3": (4, ((1, 2), (3, 0), (3, 1), (0, 2), (3, 1), (0, 2))),
    "theta4": (4, ((3, 0), (3, 1), (3, 2), (1, 2), (0, 2), (0, 1))),
}


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class BaseMultigraph:
    """Tricyclic skeleton; ``edges`` may repeat pairs and contain loops ``(v, v)``."""

    id: str
    n: int
    edges: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def loops(self) -> int:
        return sum(1 for u, v in self.edges if u == v)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def classes(self) -> list[tuple[tuple[int, int], tuple[int, ...]]]:
        """Edge positions grouped by endpoint pair, in order of first appearance."""
        groups: dict[tuple[int, int], list[int]] = {}
        for i, (u, v) in enumerate(self.edges):
            groups.setdefault((min(u, v), max(u, v)), []).append(i)
        return [(k, tuple(ix)) for k, ix in groups.items()]

    def min_length(self, i: int) -> int:
        u, v = self.edges[i]
        return 3 if u == v else 1

    def order_for(self, lengths: Sequence[int]) -> int:
        return self.n + sum(lengths) - self.m


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


def _multiset_key(edges, perm) -> tuple:
    return tuple(sorted(_norm(perm[u], perm[v]) for u, v in edges))


def canonical_multigraph_key(n: int, edges) -> tuple:
    """Permutation-minimal sorted edge multiset; equal keys iff isomorphic."""
    return min(_multiset_key(edges, p) for p in itertools.permutations(range(n)))


def _connected(n: int, edges) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in range(n)}) == 1


def search_base_multigraphs() -> list[tuple[int, tuple]]:
    """All ``(n, canonical edge multiset)`` bases, found by exhaustive search."""
    found: dict[tuple, tuple[int, tuple]] = {}
    for n in range(1, 5):
        m = n + 2
        slots = [(i, j) for i in range(n) for j in range(i, n)]
        for combo in itertools.combinations_with_replacement(slots, m):
            deg = [0] * n
            for u, v in combo:
                deg[u] += 1
                deg[v] += 1
            if min(deg) < 3 or not _connected(n, combo):
                continue
            key = canonical_multigraph_key(n, combo)
            found.setdefault((n, key), (n, key))
    return sorted(found.values(), key=lambda t: (t[0], sum(u == v for u, v in t[1]), t[1]))


@lru_cache(maxsize=None)
def base_multigraphs() -> tuple[BaseMultigraph, ...]:
    """The complete base set; the four theta skeletons carry their fixed edge order."""
    theta_keys = {
        canonical_multigraph_key(n, edges): (name, n, edges)
        for name, (n, edges) in _THETA_EDGES.items()
    }
    out = []
    k = 0
    for n, key in search_base_multigraphs():
        if key in theta_keys:
            name, tn, tedges = theta_keys[key]
            out.append(BaseMultigraph(name, tn, tedges))
        else:
            k += 1
            out.append(BaseMultigraph(f"base{k:02d}", n, key))
    named = {b.id for b in out}
    missing = set(_THETA_EDGES) - named
    if missing:
        raise AssertionError(f"theta skeletons missing from base search: {sorted(missing)}")
    out.sort(key=lambda b: (not b.id.startswith("theta"), b.id))
    return tuple(out)


def get_base(base_id: str) -> BaseMultigraph:
    for b in base_multigraphs():
        if b.id == base_id:
            return b
    raise FamilyError(f"unknown base id {base_id!r}")


@dataclass(frozen=True)
class SubdivisionAssignment:
    base: str
    lengths: tuple[int, ...]

    @property
    def order(self) -> int:
        return get_base(self.base).order_for(self.lengths)

    def spec(self) -> str:
        return f"base:{self.base}:{','.join(map(str, self.lengths))}"


def validate_assignment(base: BaseMultigraph, lengths: Sequence[int]) -> None:
    if len(lengths) != base.m:
        raise FamilyError(f"{base.id} has {base.m} edges, got {len(lengths)} lengths")
    for i, ell in enumerate(lengths):
        if ell < 1:
            raise FamilyError(f"edge {i} of {base.id}: length {ell} < 1")
        if base.edges[i][0] == base.edges[i][1] and ell < 3:
            raise FamilyError(f"loop {i} of {base.id}: length {ell} < 3 would not be simple")
    for (u, v), ix in base.classes():
        if u != v and sum(1 for i in ix if lengths[i] == 1) > 1:
            raise FamilyError(
                f"parallel edges {list(ix)} of {base.id} between {u} and {v}: "
                "more than one of length 1 would create a double edge"
            )


def subdivision_paths(base: BaseMultigraph, lengths: Sequence[int]) -> tuple[int, list[list[int]]]:
    """Vertex count and, per base edge, the vertex path replacing it (no validation)."""
    nxt = base.n
    paths = []
    for (u, v), ell in zip(base.edges, lengths):
        inner = list(range(nxt, nxt + ell - 1))
        nxt += ell - 1
        paths.append([u, *inner, v])
    return nxt, paths


def subdivision_edges(base: BaseMultigraph, lengths: Sequence[int]) -> tuple[int, list[tuple[int, int]]]:
    n, paths = subdivision_paths(base, lengths)
    edges = [(p[i], p[i + 1]) for p in paths for i in range(len(p) - 1)]
    return n, edges


def subdivide(assignment: SubdivisionAssignment) -> Graph:
    base = get_base(assignment.base)
    validate_assignment(base, assignment.lengths)
    n, edges = subdivision_edges(base, assignment.lengths)
    return build_graph(n, edges)


@dataclass(frozen=True)
class ThetaParams:
    variant: int
    lengths: tuple[int, ...]

    def __post_init__(self):
        if self.variant not in (1, 2, 3, 4):
            raise FamilyError(f"theta variant must be 1..4, got {self.variant}")
        object.__setattr__(self, "lengths", tuple(int(x) for x in self.lengths))

    @property
    def base_id(self) -> str:
        return f"theta{self.variant}"

    def assignment(self) -> SubdivisionAssignment:
        return SubdivisionAssignment(self.base_id, self.lengths)


@dataclass(frozen=True)
class ThetaLayout:
    """A theta graph together with its branch vertices and lettered paths."""

    params: ThetaParams
    graph: Graph
    branch: dict[str, int]
    paths: dict[str, list[int]]


def theta(params: ThetaParams) -> Graph:
    return subdivide(params.assignment())


def theta_layout(params: ThetaParams) -> ThetaLayout:
    g = theta(params)
    _, paths = subdivision_paths(get_base(params.base_id), params.lengths)
    labels = BRANCH_LABELS[params.variant]
    return ThetaLayout(
        params,
        g,
        {c: i for i, c in enumerate(labels)},
        {PATH_LETTERS[i]: p for i, p in enumerate(paths)},
    )


# --- assignment streams ------------------------------------------------------


def _sorted_tuples(k: int, total: int, lo: int, no_double_one: bool, start: int = 0) -> Iterator[tuple]:
    """Non-decreasing k-tuples >= max(lo, start) summing to ``total``."""
    first_lo = max(lo, start)
    if k == 0:
        if total == 0:
            yield ()
        return
    if k == 1:
        if total >= first_lo:
            yield (total,)
        return
    for x in range(first_lo, total // k + 1):
        nxt = x
        if no_double_one and x == 1:
            nxt = 2
        for rest in _sorted_tuples(k - 1, total - x, lo, False, nxt):
            yield (x, *rest)


@dataclass(frozen=True)
class _Symmetry:
    classes: tuple[tuple[int, ...], ...]  # edge positions per class
    mins: tuple[int, ...]
    parallel: tuple[bool, ...]
    images: tuple[tuple[int, ...], ...]  # class permutations induced by vertex automorphisms


@lru_cache(maxsize=None)
def _symmetry(base_id: str) -> _Symmetry:
    base = get_base(base_id)
    cls = base.classes()
    keys = [k for k, _ in cls]
    index = {k: i for i, k in enumerate(keys)}
    target = sorted(_norm(u, v) for u, v in base.edges)
    images = []
    for perm in itertools.permutations(range(base.n)):
        if _multiset_key(base.edges, perm) != tuple(target):
            continue
        images.append(tuple(index[_norm(perm[u], perm[v])] for u, v in keys))
    return _Symmetry(
        classes=tuple(ix for _, ix in cls),
        mins=tuple(3 if u == v else 1 for u, v in keys),
        parallel=tuple(u != v and len(ix) > 1 for (u, v), ix in cls),
        images=tuple(images),
    )


def _class_splits(sym: _Symmetry, total: int, i: int = 0) -> Iterator[tuple]:
    if i == len(sym.classes):
        if total == 0:
            yield ()
        return
    k = len(sym.classes[i])
    need_rest = sum(sym.mins[j] * len(sym.classes[j]) for j in range(i + 1, len(sym.classes)))
    low = sym.mins[i] * k + (1 if sym.parallel[i] and sym.mins[i] == 1 else 0)
    for t in range(low, total - need_rest + 1):
        for tup in _sorted_tuples(k, t, sym.mins[i], sym.parallel[i]):
            for rest in _class_splits(sym, total - t, i + 1):
                yield (tup, *rest)


def _is_canonical(split: tuple, sym: _Symmetry) -> bool:
    for img in sym.images:
        # class i is carried onto class img[i]
        moved = [None] * len(split)
        for i, j in enumerate(img):
            moved[j] = split[i]
        if tuple(moved) < split:
            return False
    return True


def base_assignments(base: BaseMultigraph, n: int) -> Iterator[SubdivisionAssignment]:
    """Assignments of ``base`` with resulting order ``n``, one per automorphism orbit."""
    total = n - base.n + base.m
    sym = _symmetry(base.id)
    for split in _class_splits(sym, total):
        if not _is_canonical(split, sym):
            continue
        lengths = [0] * base.m
        for ix, vals in zip(sym.classes, split):
            for i, val in zip(ix, vals):
                lengths[i] = val
        yield SubdivisionAssignment(base.id, tuple(lengths))


def enumerate_assignments(n: int, pendant_free: bool = True,
                          bases: Optional[Sequence[str]] = None) -> Iterator[SubdivisionAssignment]:
    """Stream every pendant-free tricyclic graph of order ``n`` as a base assignment.

    Isomorphic outputs of the same base are collapsed by the base's edge
    automorphisms; outputs of different bases are never isomorphic.
    """
    if n < 4:
        raise FamilyError(f"no tricyclic graph of order {n} < 4")
    if not pendant_free:
        raise FamilyError("assignment streams cover pendant-free graphs only; "
                          "use search.enumerate_small for the full class")
    for base in base_multigraphs():
        if bases is not None and base.id not in bases:
            continue
        yield from base_assignments(base, n)


# --- text specs ----------------------------------------------------------------


def parse_family_spec(text: str, lengths: Optional[str] = None) -> SubdivisionAssignment:
    """Parse ``theta1:1,2,2,2`` / ``base:ID:l1,...``; ``lengths`` may be given separately."""
    parts = text.strip().split(":")
    if parts[0] == "base":
        if len(parts) not in (2, 3):
            raise FamilyError(f"bad family spec {text!r}")
        base_id = parts[1]
        tail = parts[2] if len(parts) == 3 else None
    elif parts[0] in _THETA_EDGES:
        if len(parts) > 2:
            raise FamilyError(f"bad family spec {text!r}")
        base_id = parts[0]
        tail = parts[1] if len(parts) == 2 else None
    else:
        raise FamilyError(f"unknown family {parts[0]!r}; expected theta1..theta4 or base:ID")
    if tail is not None and lengths is not None:
        raise FamilyError("lengths given twice")
    raw = tail if tail is not None else lengths
    if raw is None:
        raise FamilyError(f"no lengths given for {text!r}")
    try:
        vals = tuple(int(x) for x in raw.split(","))
    except ValueError:
        raise FamilyError(f"lengths must be comma-separated integers, got {raw!r}") from None
    get_base(base_id)
    return SubdivisionAssignment(base_id, vals)


# --- random graphs ---------------------------------------------------------------


def _random_lengths(base: BaseMultigraph, n: int, rng: random.Random, tries: int = 500):
    total = n - base.n + base.m
    for _ in range(tries):
        cuts = sorted(rng.sample(range(1, total), base.m - 1))
        lengths = [b - a for a, b in zip([0, *cuts], [*cuts, total])]
        try:
            validate_assignment(base, lengths)
        except FamilyError:
            continue
        return tuple(lengths)
    return None


def random_pendant_free(n: int, rng: random.Random) -> SubdivisionAssignment:
    """A random valid assignment of order ``n`` (not uniform over graphs)."""
    bases = list(base_multigraphs())
    rng.shuffle(bases)
    for base in bases:
        if base.n > n:
            continue
        lengths = _random_lengths(base, n, rng)
        if lengths is not None:
            return SubdivisionAssignment(base.id, lengths)
    raise FamilyError(f"no pendant-free tricyclic graph of order {n} found")


def random_tricyclic_with_pendant(n: int, seed: int) -> Graph:
    """Random pendant-free core plus a random tree hung on it; deterministic in ``seed``."""
    if n < 5:
        raise FamilyError(f"order {n} too small: a tricyclic core needs 4 vertices plus a pendant")
    rng = random.Random(seed)
    core_n = rng.randint(4, n - 1)
    a = random_pendant_free(core_n, rng)
    _, edges = subdivision_edges(get_base(a.base), a.lengths)
    for v in range(core_n, n):
        edges.append((rng.randrange(v), v))
    perm = list(range(n))
    rng.shuffle(perm)
    return build_graph(n, [(perm[u], perm[v]) for u, v in edges])
