"""Exhaustive and parametric searches over tricyclic graphs.

The pendant-free sweep is the main engine: it streams every base assignment
of a given order, scores each graph by ``dsq = sum delta(e)^2`` (maximal
revised Szeged index is minimal ``dsq`` because ``m`` is fixed at ``n + 2``),
and reduces chunk results in stream order. The reduction keeps the exact
minimum and every graph attaining it, then collapses isomorphic argmax
graphs by certificate, so the report does not depend on worker count or
chunking.
"""

from __future__ import annotations

import itertools
import logging
import multiprocessing
import os
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

import networkx as nx

from .canon import certificate
from .families import (
    SubdivisionAssignment,
    ThetaParams,
    enumerate_assignments,
    get_base,
    random_tricyclic_with_pendant,
    subdivide,
    subdivision_edges,
    theta,
    theta_layout,
)
from .graph import Graph, bfs_hops, build_graph, is_connected, shortest_cycle_through_edge
from .graph6 import encode
from .indices import edge_partition, fn_closed_form_q, index_report
from .kernel import delta_sq_sum
from .records import SweepRecord

log = logging.getLogger(__name__)

SMALL_ORDER_CAP = 8
CHUNK_SIZE = 2048
WORKERS_ENV = "RSZEGED_WORKERS"
THEOREM_MIN_ORDER = 29
REMARK_ORDER = 23


class SearchError(ValueError):
    pass


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if not raw:
        return 1
    try:
        k = int(raw)
    except ValueError:
        raise SearchError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    return max(1, k)


def sz4_from_dsq(n: int, dsq: int) -> int:
    return (n + 2) * n * n - dsq


# --- brute-force oracle ----------------------------------------------------------


def enumerate_small(n: int) -> list[Graph]:
    """All connected graphs with ``n`` vertices and ``n + 2`` edges, up to isomorphism.

    Every such graph is a spanning tree plus three extra edges, so each
    non-isomorphic tree is extended by every 3-subset of its non-edges and
    the results are deduplicated by certificate. Sorted by certificate.
    """
    if n > SMALL_ORDER_CAP:
        raise SearchError(f"enumerate_small is capped at n <= {SMALL_ORDER_CAP}, got {n}")
    if n < 4:
        return []
    seen: dict[str, Graph] = {}
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for tree in nx.nonisomorphic_trees(n):
        t_edges = {(min(u, v), max(u, v)) for u, v in tree.edges()}
        free = [p for p in pairs if p not in t_edges]
        for extra in itertools.combinations(free, 3):
            g = build_graph(n, [*t_edges, *extra])
            c = certificate(g).g6
            if c not in seen:
                seen[c] = g
    return [seen[c] for c in sorted(seen)]


# --- sweep -----------------------------------------------------------------------


@dataclass(frozen=True)
class Candidate:
    """A scored graph kept by the reduction (argmax member or exceeder)."""

    base: str
    lengths: tuple[int, ...]
    dsq: int
    g6: str
    certificate: str = ""


@dataclass(frozen=True)
class ExtremalReport:
    n: int
    max_sz_star_q: int
    closed_form_q: int
    argmax: tuple[Candidate, ...]
    count_scanned: int
    exceeders: tuple[Candidate, ...] = ()
    elapsed: float = field(default=0.0, compare=False)

    @property
    def min_dsq(self) -> int:
        return sz4_from_dsq(self.n, 0) - self.max_sz_star_q

    @property
    def argmax_certificates(self) -> tuple[str, ...]:
        return tuple(c.certificate for c in self.argmax)


@dataclass
class _ChunkResult:
    count: int
    best: int
    argmax: list[Candidate]
    exceeders: list[Candidate]
    records: Optional[list[tuple[str, tuple, str, int]]]


def _g6_of(a: SubdivisionAssignment) -> str:
    return encode(subdivide(a)).decode("ascii")


def _evaluate_chunk(args) -> _ChunkResult:
    n, chunk, keep_records, exceed_dsq = args
    best = None
    arg: list[tuple] = []
    exc: list[Candidate] = []
    recs = [] if keep_records else None
    for base_id, lengths in chunk:
        nn, edges = subdivision_edges(get_base(base_id), lengths)
        dsq = delta_sq_sum(nn, edges)
        if best is None or dsq < best:
            best = dsq
            arg = [(base_id, lengths)]
        elif dsq == best:
            arg.append((base_id, lengths))
        if exceed_dsq is not None and dsq < exceed_dsq:
            a = SubdivisionAssignment(base_id, lengths)
            exc.append(Candidate(base_id, lengths, dsq, _g6_of(a)))
        if recs is not None:
            recs.append((base_id, lengths, _g6_of(SubdivisionAssignment(base_id, lengths)), dsq))
    cands = [Candidate(b, l, best, _g6_of(SubdivisionAssignment(b, l))) for b, l in arg]
    return _ChunkResult(len(chunk), best if best is not None else -1, cands, exc, recs)


def _chunks(it: Iterable[SubdivisionAssignment], size: int) -> Iterator[list[tuple]]:
    it = iter(it)
    while True:
        block = [(a.base, a.lengths) for a in itertools.islice(it, size)]
        if not block:
            return
        yield block


def _with_certificates(cands: Iterable[Candidate], n: int) -> tuple[Candidate, ...]:
    """Attach certificates, keep one representative per isomorphism class, sort."""
    out: dict[str, Candidate] = {}
    for c in cands:
        cert = certificate(subdivide(SubdivisionAssignment(c.base, c.lengths)), max_order=n).g6
        prev = out.get(cert)
        if prev is None or (c.base, c.lengths) < (prev.base, prev.lengths):
            out[cert] = Candidate(c.base, c.lengths, c.dsq, c.g6, cert)
    return tuple(sorted(out.values(), key=lambda c: (c.dsq, c.certificate)))


def sweep_pendant_free(
    n: int,
    workers: Optional[int] = None,
    sink: Optional[Callable[[SweepRecord], None]] = None,
    run_id: str = "",
    exceed_q: Optional[int] = None,
    chunk_size: int = CHUNK_SIZE,
    bases: Optional[Sequence[str]] = None,
    min_order: int = 7,
) -> ExtremalReport:
    """Maximise the revised Szeged index over all pendant-free tricyclic graphs of order ``n``.

    ``sink`` receives one :class:`SweepRecord` per scanned graph, in stream
    order. Graphs with ``sz4 > exceed_q`` are reported as exceeders.
    """
    if n < min_order:
        raise SearchError(f"pendant-free sweep requires n >= {min_order}, got {n}")
    workers = default_workers() if workers is None else max(1, workers)
    t0 = time.perf_counter()
    exceed_dsq = None if exceed_q is None else sz4_from_dsq(n, 0) - exceed_q
    tasks = ((n, c, sink is not None, exceed_dsq)
             for c in _chunks(enumerate_assignments(n, bases=bases), chunk_size))

    best = None
    running = None
    argmax: list[Candidate] = []
    exceeders: list[Candidate] = []
    count = 0

    def consume(results: Iterable[_ChunkResult]) -> None:
        nonlocal best, running, argmax, count
        for r in results:
            count += r.count
            exceeders.extend(r.exceeders)
            if r.count and (best is None or r.best < best):
                best, argmax = r.best, list(r.argmax)
            elif r.count and r.best == best:
                argmax.extend(r.argmax)
            if sink is not None:
                for base_id, lengths, g6, dsq in r.records:
                    if running is None or dsq < running:
                        running = dsq
                    sink(SweepRecord(run_id, n, base_id, tuple(lengths), g6,
                                     sz4_from_dsq(n, dsq), dsq, dsq == running))

    if workers == 1:
        consume(map(_evaluate_chunk, tasks))
    else:
        with multiprocessing.get_context("spawn").Pool(workers) as pool:
            consume(pool.imap(_evaluate_chunk, tasks))

    if best is None:
        raise SearchError(f"no pendant-free tricyclic graph of order {n} in the selected bases")
    report = ExtremalReport(
        n=n,
        max_sz_star_q=sz4_from_dsq(n, best),
        closed_form_q=fn_closed_form_q(n),
        argmax=_with_certificates(argmax, n),
        count_scanned=count,
        exceeders=_with_certificates(exceeders, n),
        elapsed=time.perf_counter() - t0,
    )
    log.info("n=%d scanned=%d max_sz4=%d closed=%d argmax=%d (%.1fs)", n, count,
             report.max_sz_star_q, report.closed_form_q, len(report.argmax), report.elapsed)
    return report


# --- theorem verification ---------------------------------------------------------


@dataclass(frozen=True)
class VerifyResult:
    n: int
    status: str  # PASS, FAIL or INFO
    max_sz_star_q: int
    closed_form_q: int
    argmax_count: int
    argmax_g6: tuple[str, ...]
    count_scanned: int

    @property
    def passed(self) -> bool:
        return self.status != "FAIL"


def _range(n_lo: int, n_hi: int) -> range:
    if n_lo > n_hi:
        raise SearchError(f"empty range {n_lo}..{n_hi}")
    return range(n_lo, n_hi + 1)


def verify_bound(n_lo: int, n_hi: int, informational: bool = False,
                 workers: Optional[int] = None,
                 sweep: Optional[Callable[..., ExtremalReport]] = None) -> list[VerifyResult]:
    """Check the sweep maximum against the closed form and argmax uniqueness for each order.

    Orders below 29 are only accepted with ``informational=True`` and are
    reported as INFO rather than asserted.
    """
    ns = _range(n_lo, n_hi)
    if n_lo < THEOREM_MIN_ORDER and not informational:
        raise SearchError(f"orders below {THEOREM_MIN_ORDER} need the informational flag")
    sweep = sweep or sweep_pendant_free
    out = []
    for n in ns:
        rep = sweep(n, workers=workers)
        ok = rep.max_sz_star_q == rep.closed_form_q and len(rep.argmax) == 1
        status = "PASS" if ok else "FAIL"
        if n < THEOREM_MIN_ORDER:
            status = "INFO"
        out.append(VerifyResult(n, status, rep.max_sz_star_q, rep.closed_form_q, len(rep.argmax),
                                tuple(c.g6 for c in rep.argmax), rep.count_scanned))
    return out


@dataclass(frozen=True)
class CrossoverRow:
    n: int
    max_sz_star_q: int
    closed_form_q: int
    theta4_tail_q: int
    exceeders: tuple[Candidate, ...]
    argmax: tuple[Candidate, ...]


@dataclass(frozen=True)
class CrossoverReport:
    rows: tuple[CrossoverRow, ...]
    threshold: Optional[int]
    unique_threshold: Optional[int]
    notes: tuple[str, ...]


def theta4_tail(n: int) -> Graph:
    """K4 with one edge stretched into a path of length ``n - 3``."""
    return theta(ThetaParams(4, (n - 3, 1, 1, 1, 1, 1)))


def crossover_scan(n_lo: int, n_hi: int, workers: Optional[int] = None,
                   sweep: Optional[Callable[..., ExtremalReport]] = None) -> CrossoverReport:
    """Per order, every pendant-free graph beating the closed form, and the order from which none does."""
    ns = _range(n_lo, n_hi)
    if n_lo < 7 or n_hi > 40:
        raise SearchError(f"crossover scan needs 7 <= n_lo <= n_hi <= 40, got {n_lo}..{n_hi}")
    sweep = sweep or sweep_pendant_free
    rows = []
    for n in ns:
        cf = fn_closed_form_q(n)
        rep = sweep(n, workers=workers, exceed_q=cf)
        rows.append(CrossoverRow(n, rep.max_sz_star_q, cf,
                                 index_report(theta4_tail(n)).sz_star_q,
                                 rep.exceeders, rep.argmax))
    threshold = None
    for r in reversed(rows):
        if r.exceeders:
            break
        threshold = r.n
    # from here on the closed form is attained by exactly one graph
    unique_threshold = None
    for r in reversed(rows):
        if r.exceeders or r.max_sz_star_q != r.closed_form_q or len(r.argmax) != 1:
            break
        unique_threshold = r.n
    notes = []
    if threshold is None:
        notes.append(f"exceeders at every scanned order up to {n_hi}")
    elif threshold > REMARK_ORDER and n_lo <= REMARK_ORDER:
        notes.append(f"observed threshold {threshold} is above the claimed {REMARK_ORDER}")
    late = [r.n for r in rows if r.n >= THEOREM_MIN_ORDER and r.exceeders]
    if late:
        notes.append(f"exceeders at theorem-range orders {late}")
    if unique_threshold is not None and n_lo < REMARK_ORDER and unique_threshold != REMARK_ORDER:
        notes.append(f"closed form attained uniquely from n={unique_threshold}; "
                     f"claimed sharp threshold is {REMARK_ORDER}")
    return CrossoverReport(tuple(rows), threshold, unique_threshold, tuple(notes))


# --- lemma-level checks -------------------------------------------------------------


@dataclass(frozen=True)
class Lemma31Violation:
    lengths: tuple[int, ...]
    edge: tuple[int, int]
    path: str
    rule: str
    case: int
    n_u: int
    n_v: int
    n_0: int
    detail: str


def theta1_params(max_total: int) -> Iterator[tuple[int, int, int, int]]:
    """Sorted Θ1 lengths ``a <= b <= c <= d`` with at most one 1 and total <= ``max_total``."""
    for a in range(1, max_total + 1):
        for b in range(max(a, 2), max_total + 1):
            for c in range(b, max_total + 1):
                for d in range(c, max_total - a - b - c + 1):
                    yield (a, b, c, d)


def check_lemma31(max_total: int) -> list[Lemma31Violation]:
    """Exhaustively test the per-edge imbalance characterisation on Θ1 graphs.

    For each edge ``uv`` on path ``P_i`` the branch vertices ``x, y`` fall in
    different parts (case 1), the same part (case 2), or one is equidistant
    (case 3). Checked rules: ``delta <= 1`` exactly for the middle edge of
    an odd path; case 1 ``delta = 2|b_i - a_i|`` where ``a_i``/``b_i`` are
    the distances from ``x``/``y`` to the edge; case 2 ``delta = n - g``
    with ``g`` the shortest cycle through the edge; case 3
    ``delta >= 2(a - 1)`` with ``a`` the shortest path length.
    """
    bad = []
    for lengths in theta1_params(max_total):
        lay = theta_layout(ThetaParams(1, lengths))
        g = lay.graph
        x, y = lay.branch["x"], lay.branch["y"]
        a_min = min(lengths)
        rows = {v: bfs_hops(g, v) for v in range(g.n)}
        for letter, path in lay.paths.items():
            ell = len(path) - 1
            for k in range(ell):
                u, v = path[k], path[k + 1]
                du, dv = rows[u], rows[v]
                nu = sum(1 for p, q in zip(du, dv) if p < q)
                nv = sum(1 for p, q in zip(du, dv) if q < p)
                n0 = g.n - nu - nv
                dlt = abs(nu - nv)

                def side(w):
                    return (du[w] > dv[w]) - (du[w] < dv[w])  # -1 closer to u, 1 closer to v

                sx, sy = side(x), side(y)
                if sx == 0 or sy == 0:
                    case = 3
                elif sx != sy:
                    case = 1
                else:
                    case = 2

                def flag(rule, detail):
                    bad.append(Lemma31Violation(lengths, (u, v), letter, rule, case,
                                                nu, nv, n0, detail))

                middle = ell % 2 == 1 and k == ell // 2
                if (dlt <= 1) != middle:
                    flag("middle-odd", f"delta={dlt} middle_of_odd_path={middle}")
                if case == 1:
                    ai = min(du[x], dv[x])
                    bi = min(du[y], dv[y])
                    if dlt != 2 * abs(bi - ai):
                        flag("case1", f"delta={dlt} a_i={ai} b_i={bi}")
                elif case == 2:
                    gg = shortest_cycle_through_edge(g, (u, v))
                    if dlt != g.n - gg:
                        flag("case2", f"delta={dlt} n={g.n} g={gg}")
                elif dlt < 2 * (a_min - 1):
                    flag("case3", f"delta={dlt} a={a_min}")
    return bad


@dataclass(frozen=True)
class PendantCheckResult:
    n: int
    samples: int
    passed: bool
    min_dsq: int
    failures: tuple[str, ...]


PENDANT_LEMMA_MIN_ORDER = 12


def check_pendant_lemma(samples: int, n: int, seed: int) -> PendantCheckResult:
    """On random tricyclic graphs with a pendant vertex, ``dsq >= (n-2)^2`` and ``sz4`` is below the closed form."""
    if n < PENDANT_LEMMA_MIN_ORDER:
        raise SearchError(f"pendant lemma needs n >= {PENDANT_LEMMA_MIN_ORDER}, got {n}")
    if samples < 1:
        raise SearchError("samples must be >= 1")
    rng = random.Random(seed)
    cf = fn_closed_form_q(n)
    failures = []
    min_dsq = None
    for i in range(samples):
        s = rng.getrandbits(32)
        g = random_tricyclic_with_pendant(n, s)
        rep = index_report(g)
        min_dsq = rep.delta_sq_sum if min_dsq is None else min(min_dsq, rep.delta_sq_sum)
        tag = f"sample {i} (seed {s}, g6 {encode(g).decode()})"
        if g.m != n + 2 or not is_connected(g) or g.min_degree() != 1:
            failures.append(f"{tag}: not a connected tricyclic graph with a pendant vertex")
            continue
        for u, v in g.edges:
            if g.degree(u) == 1 or g.degree(v) == 1:
                if edge_partition(g, (u, v)).delta != n - 2:
                    failures.append(f"{tag}: pendant edge {(u, v)} has delta != n-2")
        if rep.delta_sq_sum < (n - 2) ** 2:
            failures.append(f"{tag}: dsq={rep.delta_sq_sum} < (n-2)^2={(n - 2) ** 2}")
        if rep.sz_star_q >= cf:
            failures.append(f"{tag}: sz4={rep.sz_star_q} >= closed form {cf}")
    return PendantCheckResult(n, samples, not failures, min_dsq, tuple(failures))
