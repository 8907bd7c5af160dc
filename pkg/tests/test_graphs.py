import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sigsys.graphs import (
    Graph,
    GraphError,
    GuardExceeded,
    VertexMap,
    categorical_product,
    check_hom,
    complete,
    count_4cycles,
    cycle,
    enumerate_homs,
    format_graph,
    gen_named,
    is_bipartite,
    looped_path,
    mycielski_cone,
    parse_graph,
    shortest_odd_cycle,
)

from conftest import brute_homs


@st.composite
def graphs(draw, max_n=7, loops=False):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u if loops else u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, edges)


def adjacency(g):
    A = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges:
        A[u, v] = A[v, u] = 1
    return A


class TestNamed:
    def test_u53(self):
        g = gen_named("u53")
        assert (g.n, g.num_edges, len(g.arcs)) == (30, 90, 180)
        assert g.labels[0] == "(1,{2,3})"

    def test_cycle7(self):
        g = gen_named("cycle", 7)
        assert (g.n, g.num_edges) == (7, 7)

    def test_c7_power3(self):
        chords = {frozenset((i, (i + 3) % 7)) for i in range(7)}
        assert len(chords) == 7
        g = gen_named("c7_power3")
        assert (g.n, g.num_edges) == (7, 14)
        assert {frozenset(e) for e in g.edges} == chords | {frozenset((i, (i + 1) % 7)) for i in range(7)}

    def test_looped_path(self):
        g = looped_path(3)
        assert g.n == 4 and (0, 0) in g.edges and not g.is_simple

    @pytest.mark.parametrize("name,n", [("nope", None), ("cycle", 2), ("complete", 0), ("cycle", None)])
    def test_errors(self, name, n):
        with pytest.raises(GraphError):
            gen_named(name, n)


class TestProducts:
    def test_k2_k2(self):
        g = categorical_product(complete(2), complete(2))
        assert g.n == 4 and g.num_edges == 2
        assert is_bipartite(g)
        assert all(len(a) == 1 for a in g.adj)

    def test_looped_path_times_k2(self):
        # (i, x) numbered 2*i + x with a = 0, b = 1
        g = categorical_product(looped_path(1), complete(2))
        assert g.n == 4
        assert g.edges == {(0, 1), (0, 3), (1, 2)}

    def test_counts(self):
        assert categorical_product(cycle(5), cycle(3)).n == 15

    @given(graphs(max_n=5, loops=True), graphs(max_n=5, loops=True))
    @settings(max_examples=60, deadline=None)
    def test_product_definition(self, g, g2):
        p = categorical_product(g, g2)
        assert p.n == g.n * g2.n
        for (u, u2), (v, v2) in itertools.product(itertools.product(range(g.n), range(g2.n)), repeat=2):
            want = g.has_edge(u, v) and g2.has_edge(u2, v2)
            assert p.has_edge(u * g2.n + u2, v * g2.n + v2) == want


def cone_by_quotient(g, n):
    """Independent route: product with the looped path, then collapse level n."""
    p = categorical_product(g, looped_path(n))
    k = g.n
    apex = n * k

    def f(x):
        u, i = divmod(x, n + 1)
        return apex if i == n else i * k + u

    return Graph(n * k + 1, {(f(a), f(b)) for a, b in p.edges})


class TestCone:
    def test_grotzsch(self):
        g = mycielski_cone(cycle(5), 2)
        assert (g.n, g.num_edges) == (11, 20)
        assert g.edges == cone_by_quotient(cycle(5), 2).edges

    def test_k2_cone_is_triangle(self):
        g = mycielski_cone(complete(2), 1)
        assert g.n == 3 and g.edges == complete(3).edges
        assert not is_bipartite(g)

    def test_vertex_count(self):
        assert mycielski_cone(cycle(7), 3).n == 22

    def test_errors(self):
        with pytest.raises(GraphError):
            mycielski_cone(cycle(5), 0)
        with pytest.raises(GraphError):
            mycielski_cone(looped_path(2), 1)

    @given(graphs(max_n=6), st.integers(1, 4))
    @settings(max_examples=50, deadline=None)
    def test_matches_quotient_and_level0(self, g, n):
        m = mycielski_cone(g, n)
        assert m.edges == cone_by_quotient(g, n).edges
        level0 = {(u, v) for u, v in m.edges if u < g.n and v < g.n}
        assert level0 == set(g.edges)


class TestHoms:
    def test_c4_k3(self):
        assert len(enumerate_homs(cycle(4), complete(3))) == 18

    def test_k2_k3(self):
        assert len(enumerate_homs(complete(2), complete(3))) == 6

    def test_c4_c7(self):
        assert len(enumerate_homs(cycle(4), cycle(7))) == 42

    def test_guard(self):
        with pytest.raises(GuardExceeded):
            enumerate_homs(cycle(9), complete(10), guard=10**6)

    def test_order_matches_brute_force(self):
        d, h = cycle(5), mycielski_cone(cycle(5), 1)
        got = [f.image for f in enumerate_homs(d, h)]
        assert got == list(brute_homs(d, h))

    @pytest.mark.parametrize("m", [3, 4, 5, 6])
    @given(h=graphs(max_n=6))
    @settings(max_examples=25, deadline=None)
    def test_cycle_homs_equal_trace(self, m, h):
        A = adjacency(h)
        assert len(enumerate_homs(cycle(m), h)) == int(np.trace(np.linalg.matrix_power(A, m)))

    def test_check_hom(self):
        k3 = complete(3)
        assert check_hom(VertexMap(k3, k3, (0, 1, 2)))
        assert not check_hom(VertexMap(cycle(5), k3, (0,) * 5))
        assert check_hom(VertexMap(cycle(9), cycle(3), (0, 1, 0, 1, 2, 1, 2, 0, 2)))

    def test_vertexmap_validation(self):
        with pytest.raises(GraphError):
            VertexMap(complete(2), complete(2), (0,))
        with pytest.raises(GraphError):
            VertexMap(complete(2), complete(2), (0, 2))


class TestPredicates:
    def test_bipartite(self):
        assert not is_bipartite(cycle(7))
        assert is_bipartite(complete(2))
        assert not is_bipartite(looped_path(1))

    def test_4cycles_named(self):
        assert count_4cycles(gen_named("u53")) == 105
        assert count_4cycles(cycle(7)) == 0
        assert count_4cycles(complete(4)) == 3

    @given(graphs(max_n=8))
    @settings(max_examples=80, deadline=None)
    def test_4cycles_brute_force(self, g):
        ordered = sum(
            1
            for t in itertools.permutations(range(g.n), 4)
            if all(g.has_edge(t[i], t[(i + 1) % 4]) for i in range(4))
        )
        assert ordered % 8 == 0
        assert count_4cycles(g) == ordered // 8

    @given(graphs(max_n=7))
    @settings(max_examples=60, deadline=None)
    def test_shortest_odd_cycle(self, g):
        cyc = shortest_odd_cycle(g)
        assert (cyc is None) == is_bipartite(g)
        if cyc is not None:
            assert len(cyc) % 2 == 1 and len(set(cyc)) == len(cyc)
            assert all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


class TestArcTable:
    @given(graphs(max_n=7, loops=True))
    def test_round_trip_and_shape(self, g):
        t = g.arcs
        assert all(t.index[t[i]] == i for i in range(len(t)))
        assert list(t.arcs) == sorted(t.arcs)
        loops = sum(1 for u, v in g.edges if u == v)
        assert len(t) == 2 * (g.num_edges - loops) + loops


class TestFormat:
    def test_native_round_trip(self):
        g = gen_named("c7_power3")
        text = format_graph(g)
        assert text.startswith("p 7\ne 0 1\n")
        assert parse_graph(text) == g

    def test_loop_and_comments(self):
        g = parse_graph("# looped path\np 2\ne 0 0\ne 0 1\n")
        assert g == looped_path(1)
        assert format_graph(g) == "p 2\ne 0 0\ne 0 1\n"

    def test_dimacs(self):
        g = parse_graph("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
        assert g == complete(3)

    @pytest.mark.parametrize("text", ["e 0 1\n", "p 2\ne 0 5\n", "p 2\nx 1\n", "p 2\ne 0\n", ""])
    def test_bad_input(self, text):
        with pytest.raises(GraphError):
            parse_graph(text)

    @given(graphs(max_n=7, loops=True))
    def test_round_trip_property(self, g):
        assert parse_graph(format_graph(g)) == g
