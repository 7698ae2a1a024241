import itertools
import json

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qface.errors import DuplicateEdge, EmptyVertexSet, LoopEdge, NotComponentwiseFull, TooLarge, UnknownFormat
from qface.families import double_complete, double_cycle, path
from qface.geometry import dim_de
from qface.quiver import (
    ContractedQuiver,
    EdgeSubset,
    Graph,
    Quiver,
    coconnectivity,
    components,
    contract,
    double,
    is_directed_acyclic,
    is_full,
    parse_quiver,
    spanning_polyforest,
)

from corpus import DIAMOND, all_small_quivers


def component_sets(q):
    vertices = q.parent.vertices if isinstance(q, EdgeSubset) else q.vertices
    return sorted(sorted(vertices[v] for v in comp) for comp in components(q).components)


class TestParse:
    def test_edge_list(self):
        q = parse_quiver("0 1\n1 2")
        assert q.vertices == ("0", "1", "2")
        assert q.edge_ids() == [("0", "1"), ("1", "2")]

    def test_comments_and_blank_lines(self):
        q = parse_quiver("# a path\n\n0 1   # first\n1 2\n")
        assert q.n_edges == 2

    def test_loop(self):
        with pytest.raises(LoopEdge) as info:
            parse_quiver("0 0")
        assert info.value.line == 1

    def test_duplicate(self):
        with pytest.raises(DuplicateEdge) as info:
            parse_quiver("0 1\n0 1")
        assert info.value.line == 2

    def test_bad_line(self):
        with pytest.raises(UnknownFormat) as info:
            parse_quiver("0 1\n1 2 3\n")
        assert "line 2" in str(info.value)

    @pytest.mark.parametrize("text", ["", "   \n", "# nothing\n", '{"vertices": [], "edges": []}'])
    def test_empty(self, text):
        with pytest.raises(EmptyVertexSet):
            parse_quiver(text)

    def test_json_with_isolated_vertex(self):
        q = parse_quiver(json.dumps({"vertices": ["a", "b", "c"], "edges": [["a", "b"]]}))
        assert q.vertices == ("a", "b", "c")
        assert len(components(q)) == 2

    def test_json_errors(self):
        with pytest.raises(UnknownFormat):
            parse_quiver('{"edges": [[1, 2, 3]]}')
        with pytest.raises(UnknownFormat):
            parse_quiver("{not json")
        with pytest.raises(LoopEdge):
            parse_quiver('{"edges": [[1, 1]]}')

    def test_json_round_trip(self):
        q = DIAMOND
        assert parse_quiver(json.dumps(q.to_json())) == q
        assert parse_quiver(q.to_edgelist()) == q


def test_canonical_edge_order():
    q = Quiver.from_edges([(2, 0), (0, 1), (1, 2)])
    assert q.vertices == ("2", "0", "1")
    assert q.edges == ((0, 1), (1, 2), (2, 0))


def test_constructor_invariants():
    with pytest.raises(LoopEdge):
        Quiver(("a",), ((0, 0),))
    with pytest.raises(DuplicateEdge):
        Quiver(("a", "b"), ((0, 1), (0, 1)))


class TestComponents:
    def test_path(self):
        assert component_sets(path(2)) == [["0", "1", "2"]]

    def test_isolated(self):
        q = Quiver.from_edges([(0, 1)], range(3))
        assert component_sets(q) == [["0", "1"], ["2"]]

    def test_double_cycle(self):
        assert len(components(double_cycle(4))) == 1

    def test_subset(self):
        r = DIAMOND.subset([(0, 1), (2, 3)])
        assert component_sets(r) == [["0", "1"], ["2", "3"]]


@pytest.mark.parametrize(
    "q, expected",
    [(path(2), 2), (Quiver.from_edges([], range(3)), 0), (double_cycle(4), 3)],
)
def test_coconnectivity(q, expected):
    assert coconnectivity(q) == expected


class TestFull:
    def test_single_edge_of_path(self):
        assert is_full(path(2).subset([(0, 1)]))

    def test_missing_reverse(self):
        q = Quiver.from_edges([(0, 1), (1, 0)])
        assert not is_full(q.subset([(0, 1)]))

    def test_diamond(self):
        assert is_full(DIAMOND.subset([(0, 1), (2, 3)]))

    def test_unrestricted_means_everything(self):
        assert is_full(DIAMOND.everything(), component_restricted=False)
        assert not is_full(DIAMOND.subset([(0, 1), (2, 3)]), component_restricted=False)


class TestAcyclic:
    def test_cycle(self):
        assert not is_directed_acyclic(Quiver.from_edges([(0, 1), (1, 2), (2, 0)]))

    def test_path(self):
        assert is_directed_acyclic(path(2))

    def test_symmetric(self):
        assert not is_directed_acyclic(double([(0, 1)]))

    def test_contracted_loop_is_a_cycle(self):
        assert not is_directed_acyclic(ContractedQuiver((frozenset({0}),), frozenset({(0, 0)})))


class TestContract:
    def test_diamond(self):
        c = contract(DIAMOND.subset([(0, 1), (2, 3)]))
        assert sorted(map(sorted, c.classes)) == [[0, 1], [2, 3]]
        assert c.edges == frozenset({(0, 1)})
        assert is_directed_acyclic(c)

    def test_everything(self):
        c = contract(DIAMOND.everything())
        assert len(c.classes) == 1 and not c.edges

    def test_two_cycle(self):
        # classes {0,1,3} and {2}; (0,2) and (2,3) run in opposite directions
        c = contract(DIAMOND.subset([(0, 1), (1, 3)]))
        assert sorted(map(sorted, c.classes)) == [[0, 1, 3], [2]]
        assert c.edges == frozenset({(0, 1), (1, 0)})
        assert not is_directed_acyclic(c)

    def test_not_full(self):
        q = Quiver.from_edges([(0, 1), (1, 0)])
        with pytest.raises(NotComponentwiseFull):
            contract(q.subset([(0, 1)]))


class TestDouble:
    def test_triangle(self):
        q = double([(0, 1), (1, 2), (2, 0)])
        assert q.n_vertices == 3 and q.n_edges == 6

    def test_single_edge(self):
        assert set(double([("a", "b")]).edge_ids()) == {("a", "b"), ("b", "a")}

    def test_k4(self):
        assert double(list(itertools.combinations(range(4), 2))).n_edges == 12

    def test_loop(self):
        with pytest.raises(LoopEdge):
            double([(1, 1)])

    def test_graph_keeps_isolated_vertices(self):
        g = Graph.from_edges([(0, 1)], vertices=range(3))
        assert double(g).n_vertices == 3


class TestSpanningPolyforest:
    def test_path(self):
        q = path(2)
        assert spanning_polyforest(q).mask == q.full_mask

    def test_double_triangle(self):
        r = spanning_polyforest(double([(0, 1), (1, 2), (2, 0)]))
        assert len(r) == 2
        assert len({frozenset(e) for e in r.edges}) == 2

    def test_edgeless(self):
        assert spanning_polyforest(Quiver.from_edges([], range(3))).mask == 0


def _underlying_is_forest(r: EdgeSubset):
    g = nx.MultiGraph()
    g.add_nodes_from(range(r.parent.n_vertices))
    g.add_edges_from(r.edges)
    return nx.is_forest(g)


def test_small_quiver_properties():
    for q in all_small_quivers(4, 5):
        dec = components(q)
        assert coconnectivity(q) == q.n_vertices - len(dec)
        forest = spanning_polyforest(q)
        assert len(forest) == coconnectivity(q)
        assert _underlying_is_forest(forest)
        assert components(forest).components == dec.components


def _brute_class_cycle(r: EdgeSubset):
    """Search class-level directed walks for a return to the start class."""
    labels = components(r).component_of
    arcs = {(labels[t], labels[h]) for i, (t, h) in enumerate(r.parent.edges) if not r.mask >> i & 1}
    classes = set(labels)
    for start in classes:
        frontier, seen = {start}, set()
        while frontier:
            nxt = {b for a in frontier for (x, b) in arcs if x == a}
            if start in nxt:
                return True
            frontier = nxt - seen
            seen |= nxt
    return False


def test_contraction_acyclicity_against_walk_search():
    checked = 0
    for q in all_small_quivers(4, 4):
        for mask in range(1 << q.n_edges):
            r = EdgeSubset(q, mask)
            if not is_full(r):
                continue
            assert is_directed_acyclic(contract(r)) == (not _brute_class_cycle(r))
            checked += 1
    assert checked > 1000


graphs = st.integers(2, 7).flatmap(
    lambda n: st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1]),
        max_size=10,
    ).map(lambda es: (n, es))
)


@settings(max_examples=150, deadline=None)
@given(graphs)
def test_double_is_symmetric_and_keeps_components(data):
    n, edges = data
    g = Graph.from_edges(edges, range(n))
    q = double(g)
    assert q.is_symmetric()
    ug = nx.Graph()
    ug.add_nodes_from(map(str, range(n)))
    ug.add_edges_from(g.edges)
    expected = sorted(sorted(c) for c in nx.connected_components(ug))
    assert component_sets(q) == expected


def test_kernel_edge_cap():
    assert double_complete(8).kernel_args()[0] == 8  # 56 edges fit
    with pytest.raises(TooLarge):
        dim_de(double_complete(9))  # 72 edges do not
