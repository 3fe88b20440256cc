import itertools
import random
from collections import Counter

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rszeged.canon import certificate
from rszeged.families import (
    FamilyError,
    SubdivisionAssignment,
    ThetaParams,
    base_multigraphs,
    enumerate_assignments,
    get_base,
    parse_family_spec,
    random_tricyclic_with_pendant,
    subdivide,
    theta,
    theta_layout,
)
from rszeged.graph import complete_graph, cut_vertices, cyclomatic_class, is_connected


def nx_multigraph(n, edges):
    h = nx.MultiGraph()
    h.add_nodes_from(range(n))
    h.add_edges_from(edges)
    return h


def weak_compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in weak_compositions(total - k, parts - 1):
            yield (k, *rest)


def oracle_bases():
    """Brute force over multiplicity vectors on <= 4 vertices, deduplicated by networkx."""
    reps = []
    for n in range(1, 5):
        m = n + 2
        slots = [(i, j) for i in range(n) for j in range(i, n)]
        for mult in weak_compositions(m, len(slots)):
            edges = [s for s, k in zip(slots, mult) for _ in range(k)]
            h = nx_multigraph(n, edges)
            deg = dict(h.degree())  # networkx counts a loop twice
            if min(deg.values()) < 3 or not nx.is_connected(h):
                continue
            if not any(nx.is_isomorphic(h, r) for r in reps):
                reps.append(h)
    return reps


def test_base_count_matches_oracle():
    bases = base_multigraphs()
    reps = oracle_bases()
    assert len(bases) == len(reps) == 15
    for b in bases:
        assert sum(nx.is_isomorphic(nx_multigraph(b.n, b.edges), r) for r in reps) == 1


def test_base_invariants():
    for b in base_multigraphs():
        assert b.m - b.n + 1 == 3
        assert min(b.degrees()) >= 3
        assert nx.is_connected(nx_multigraph(b.n, b.edges))


def test_loop_free_two_connected_bases_are_the_thetas():
    loop_free = [b for b in base_multigraphs() if b.loops == 0]
    assert sorted(b.id for b in loop_free) == ["theta1", "theta2", "theta3", "theta4"]
    shapes = {b.id: Counter(tuple(sorted(e)) for e in b.edges) for b in loop_free}
    assert shapes["theta1"] == Counter({(0, 1): 4})
    assert sorted(shapes["theta2"].values()) == [1, 2, 2]
    assert sorted(shapes["theta3"].values()) == [1, 1, 2, 2]
    assert nx.is_isomorphic(nx.Graph(get_base("theta4").edges), nx.complete_graph(4))


def test_theta_examples():
    assert theta(ThetaParams(4, (1,) * 6)) == complete_graph(4)
    g = theta(ThetaParams(1, (1, 2, 2, 2)))
    assert (g.n, g.m) == (5, 7)
    with pytest.raises(FamilyError, match="double edge"):
        theta(ThetaParams(1, (1, 1, 2, 2)))


def test_subdivide_examples():
    assert subdivide(SubdivisionAssignment("theta4", (1,) * 6)) == complete_graph(4)
    g = subdivide(SubdivisionAssignment("theta1", (1, 2, 2, 2)))
    assert g == theta(ThetaParams(1, (1, 2, 2, 2)))
    with pytest.raises(FamilyError):
        subdivide(SubdivisionAssignment("theta1", (1, 1, 2, 2)))
    with pytest.raises(FamilyError, match="loop"):
        subdivide(SubdivisionAssignment("base01", (2, 3, 3)))
    with pytest.raises(FamilyError, match="< 1"):
        subdivide(SubdivisionAssignment("theta4", (0, 1, 1, 1, 1, 1)))
    with pytest.raises(FamilyError, match="edges"):
        subdivide(SubdivisionAssignment("theta4", (1, 1, 1)))


def test_theta_layout_labels():
    lay = theta_layout(ThetaParams(3, (3, 4, 2, 2, 2, 2)))
    assert lay.branch == {"x": 0, "y": 1, "z": 2, "w": 3}
    assert (lay.paths["a"][0], lay.paths["a"][-1]) == (1, 2)  # y-z
    assert (lay.paths["b"][0], lay.paths["b"][-1]) == (3, 0)  # w-x
    assert len(lay.paths["b"]) == 5


theta_params = st.one_of(
    st.tuples(st.just(1), st.lists(st.integers(1, 6), min_size=4, max_size=4)),
    st.tuples(st.just(2), st.lists(st.integers(1, 6), min_size=5, max_size=5)),
    st.tuples(st.just(3), st.lists(st.integers(1, 6), min_size=6, max_size=6)),
    st.tuples(st.just(4), st.lists(st.integers(1, 6), min_size=6, max_size=6)),
)


@given(theta_params)
def test_theta_order_law_and_two_connectivity(vp):
    variant, lengths = vp
    try:
        g = theta(ThetaParams(variant, lengths))
    except FamilyError:
        return
    assert g.n == sum(lengths) - 2
    assert g.m == sum(lengths) == g.n + 2
    assert cyclomatic_class(g) == "tricyclic"
    assert g.min_degree() >= 2
    assert cut_vertices(g) == frozenset()


@pytest.mark.parametrize("n", range(4, 11))
def test_stream_outputs_valid_and_distinct(n):
    certs = set()
    for a in enumerate_assignments(n):
        g = subdivide(a)
        assert g.n == n and a.order == n
        assert is_connected(g) and cyclomatic_class(g) == "tricyclic"
        assert g.min_degree() >= 2
        certs.add(certificate(g).g6)
    # canonicalisation is exact for these bases: no residual duplicates
    assert len(certs) == sum(1 for _ in enumerate_assignments(n))


def test_stream_n4_is_k4():
    out = list(enumerate_assignments(4))
    assert out == [SubdivisionAssignment("theta4", (1,) * 6)]


def test_stream_n5_theta1():
    out = list(enumerate_assignments(5, bases=["theta1"]))
    assert [tuple(sorted(a.lengths)) for a in out] == [(1, 2, 2, 2)]


def test_stream_theta1_against_compositions():
    # compositions of n+2 into 4 parts with at most one part equal to 1, up to reordering
    for n in range(5, 16):
        want = {tuple(sorted(c)) for c in itertools.product(range(1, n + 2), repeat=4)
                if sum(c) == n + 2 and c.count(1) <= 1}
        got = [tuple(sorted(a.lengths)) for a in enumerate_assignments(n, bases=["theta1"])]
        assert sorted(got) == sorted(want)


def test_stream_rejects():
    with pytest.raises(FamilyError):
        list(enumerate_assignments(3))
    with pytest.raises(FamilyError):
        list(enumerate_assignments(6, pendant_free=False))


def test_parse_family_spec():
    assert parse_family_spec("theta1:1,2,2,2") == SubdivisionAssignment("theta1", (1, 2, 2, 2))
    assert parse_family_spec("theta2", "1,2,2,2,2").lengths == (1, 2, 2, 2, 2)
    assert parse_family_spec("base:base01:3,3,3") == SubdivisionAssignment("base01", (3, 3, 3))
    for bad in ("theta9:1", "base:nope:1,2", "theta1:x,y", "theta1"):
        with pytest.raises(FamilyError):
            parse_family_spec(bad)


def test_random_pendant_examples():
    g = random_tricyclic_with_pendant(12, 1)
    assert cyclomatic_class(g) == "tricyclic" and g.min_degree() == 1
    assert random_tricyclic_with_pendant(12, 1).edges == g.edges
    with pytest.raises(FamilyError):
        random_tricyclic_with_pendant(4, 1)


@given(st.integers(5, 40), st.integers(0, 2 ** 32))
def test_random_pendant_contract(n, seed):
    g = random_tricyclic_with_pendant(n, seed)
    assert g.n == n and g.m == n + 2
    assert is_connected(g) and g.min_degree() == 1
