import io
import random

import networkx as nx
import pytest

from rszeged.canon import certificate
from rszeged.families import SubdivisionAssignment, ThetaParams, subdivide, theta, theta_layout
from rszeged.graph import complete_graph, cyclomatic_class
from rszeged.indices import delta, edge_partitions, fn_closed_form_q, index_report
from rszeged.kernel import delta_sq_sum
from rszeged.records import SweepRecord, read_csv, read_jsonl, write_csv, write_jsonl
from rszeged.search import (
    SearchError,
    check_lemma31,
    check_pendant_lemma,
    crossover_scan,
    enumerate_small,
    sweep_pendant_free,
    theta1_params,
    verify_bound,
)

from conftest import random_connected, small_graphs


# --- brute-force oracle --------------------------------------------------------------


def test_enumerate_small_examples():
    assert enumerate_small(4) == [complete_graph(4)]
    assert enumerate_small(3) == []
    with pytest.raises(SearchError):
        enumerate_small(9)


@pytest.mark.parametrize("n", [5, 6, 7])
def test_enumerate_small_matches_atlas(n):
    atlas = [g for g in nx.graph_atlas_g()
             if g.number_of_nodes() == n and g.number_of_edges() == n + 2 and nx.is_connected(g)]
    got = small_graphs(n)
    assert len(got) == len(atlas)
    assert all(cyclomatic_class(g) == "tricyclic" for g in got)
    assert len({certificate(g) for g in got}) == len(got)


# --- sweep ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [7, 8])
def test_sweep_matches_bruteforce(n):
    small = small_graphs(n)
    reports = {certificate(g).g6: index_report(g) for g in small}
    pf = {certificate(g).g6: reports[certificate(g).g6] for g in small if g.min_degree() >= 2}
    best = max(r.sz_star_q for r in pf.values())
    rep = sweep_pendant_free(n)
    assert rep.max_sz_star_q == best
    assert set(rep.argmax_certificates) == {c for c, r in pf.items() if r.sz_star_q == best}
    # unrestricted maximum is attained by a pendant-free graph; pendant graphs pay (n-2)^2
    assert max(r.sz_star_q for r in reports.values()) == best
    for g in small:
        if g.min_degree() == 1:
            assert index_report(g).delta_sq_sum >= (n - 2) ** 2


def test_sweep_rejects_small_order():
    with pytest.raises(SearchError):
        sweep_pendant_free(6)


def test_sweep_deterministic_across_workers_and_chunks():
    a = sweep_pendant_free(14, workers=1)
    b = sweep_pendant_free(14, workers=1, chunk_size=37)
    c = sweep_pendant_free(14, workers=2, chunk_size=101)
    assert a == b == c
    assert a.argmax_certificates == c.argmax_certificates


def test_sweep_bound_sanity():
    n = 10
    rep = sweep_pendant_free(n)
    assert rep.max_sz_star_q <= n * n * (n + 2)


def test_sweep_sink_records(tmp_path):
    recs = []
    rep = sweep_pendant_free(9, sink=recs.append, run_id="t")
    assert len(recs) == rep.count_scanned
    running = None
    for r in recs:
        r.check()
        running = r.dsq if running is None else min(running, r.dsq)
        assert r.is_current_max == (r.dsq == running)
        g = subdivide(SubdivisionAssignment(r.base, r.lengths))
        assert index_report(g).sz_star_q == r.sz4
    assert max(r.sz4 for r in recs) == rep.max_sz_star_q

    buf = io.StringIO()
    write_jsonl(buf, recs)
    buf.seek(0)
    assert [r.to_dict() for r in read_jsonl(buf)] == [r.to_dict() for r in recs]
    buf = io.StringIO()
    write_csv(buf, recs)
    buf.seek(0)
    assert [r.to_dict() for r in read_csv(buf)] == [r.to_dict() for r in recs]


def test_record_identity_enforced_on_reload():
    bad = '{"run":"x","n":9,"base":"theta4","lengths":[1,1,1,1,1,6],"g6":"H","sz4":1,"dsq":0}\n'
    with pytest.raises(ValueError):
        list(read_jsonl(io.StringIO(bad)))


def test_kernel_matches_reference():
    rng = random.Random(5)
    for _ in range(200):
        g = random_connected(rng, rng.randint(2, 40), rng.choice([0.0, 0.05, 0.2, 0.6]))
        assert delta_sq_sum(g.n, g.edges) == index_report(g).delta_sq_sum
    with pytest.raises(ValueError):
        delta_sq_sum(4, [(0, 1), (2, 3)])


# --- verify / crossover --------------------------------------------------------------


def test_verify_range_errors():
    with pytest.raises(SearchError, match="empty"):
        verify_bound(30, 29)
    with pytest.raises(SearchError, match="informational"):
        verify_bound(12, 12)


def test_verify_informational():
    (r,) = verify_bound(12, 12, informational=True)
    assert r.status == "INFO" and r.closed_form_q == 2000
    assert r.max_sz_star_q == index_report(theta(ThetaParams(4, (9, 1, 1, 1, 1, 1)))).sz_star_q


def test_crossover_small_range():
    rep = crossover_scan(7, 12)
    for row in rep.rows:
        tail = theta(ThetaParams(4, (row.n - 3, 1, 1, 1, 1, 1)))
        assert row.theta4_tail_q == index_report(tail).sz_star_q
        assert row.exceeders, "the stretched K4 beats the closed form at small orders"
        assert all((row.n + 2) * row.n ** 2 - c.dsq > row.closed_form_q for c in row.exceeders)
        tail_cert = certificate(tail, max_order=64).g6
        assert tail_cert in {c.certificate for c in row.exceeders}
    assert rep.threshold is None


@pytest.mark.parametrize("lo,hi", [(6, 10), (10, 41), (12, 11)])
def test_crossover_range_errors(lo, hi):
    with pytest.raises(SearchError):
        crossover_scan(lo, hi)


# --- lemma checks --------------------------------------------------------------------


def test_lemma31_theta1_3333_middle_edges():
    lay = theta_layout(ThetaParams(1, (3, 3, 3, 3)))
    for path in lay.paths.values():
        assert delta(lay.graph, (path[1], path[2])) == 0


def test_lemma31_theta1_1222():
    lay = theta_layout(ThetaParams(1, (1, 2, 2, 2)))
    ds = {p.edge: p.delta for p in edge_partitions(lay.graph)}
    assert ds[(0, 1)] == 0
    assert sorted(v for e, v in ds.items() if e != (0, 1)) == [2] * 6


def test_theta1_params():
    got = list(theta1_params(9))
    assert got[0] == (1, 2, 2, 2)
    assert all(a <= b <= c <= d and b >= 2 and a + b + c + d <= 9 for a, b, c, d in got)
    assert len(got) == len(set(got))


def test_lemma31_small_exhaustive():
    assert check_lemma31(16) == []
    assert check_lemma31(6) == []


def test_pendant_lemma():
    res = check_pendant_lemma(100, 12, 7)
    assert res.passed and res.min_dsq >= 100
    with pytest.raises(SearchError):
        check_pendant_lemma(1, 11, 1)
    with pytest.raises(SearchError):
        check_pendant_lemma(0, 12, 1)
