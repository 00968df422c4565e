import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from edgereg.combinatorics import induced_matching_number, is_very_well_covered
from edgereg.errors import NotAnEdge, NotSquarefree, ParseError
from edgereg.even import (
    EdgeProduct,
    all_products,
    brute_force_colon,
    colon_graph,
    colon_ideal_by_even_connections,
    even_connected_pairs,
    is_even_connected,
    restrict_product,
    self_connected,
    verify_colon_decomposition,
    verify_gprime_vwc,
)
from edgereg.fixtures import fixture
from edgereg.graph import Graph
from edgereg.monomial import edge_ideal, ideal_equal, is_squarefree, parse_ideal
from strategies import graphs, labeled_vwc_graphs, products


def P(g, text):
    return EdgeProduct.parse(g, text)


def as_item_sets(ideal):
    return {frozenset(m.as_dict().items()) for m in ideal.monomials()}


AB = Graph.from_edges([("a", "b")])


# -- witnesses --------------------------------------------------------------------------


def test_single_edge_witness():
    w = is_even_connected(P(AB, "a-b"), "a", "b")
    assert w.vertices == ("a", "b", "a", "b") and w.k == 1
    assert w.validate(P(AB, "a-b"))
    assert is_even_connected(P(AB, "a-b"), "a", "a") is None


def test_g_ex_witnesses():
    g = fixture("g_ex")
    prod = P(g, "x1-x2")
    assert str(is_even_connected(prod, "x4", "x4")) == "x4,x1,x2,x4"
    assert str(is_even_connected(prod, "y1", "y2")) == "y1,x1,x2,y2"
    assert is_even_connected(prod, "x3", "y4") is None
    assert self_connected(prod) == ["x4", "y3"]


def test_multiplicity_limits_the_walk():
    path = Graph.from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "f")])
    once = P(path, "b-c,d-e")
    twice = P(path, "b-c,b-c,d-e")
    # a-b-c-d-e-f uses b-c then d-e
    assert is_even_connected(once, "a", "f") is not None
    assert is_even_connected(P(path, "b-c"), "a", "f") is None
    assert is_even_connected(twice, "a", "d") is not None


def test_product_parsing_and_errors():
    g = fixture("c4")
    prod = P(g, "x2-x1, x3-x4")
    assert prod.edges == (("x1", "x2"), ("x3", "x4")) and prod.s == 2
    assert prod.spec() == "x1-x2,x3-x4"
    with pytest.raises(NotAnEdge):
        P(g, "x1-x3")
    for bad in ("", "x1", "x1-x2-x3", "x1-"):
        with pytest.raises(ParseError):
            P(g, bad)
    with pytest.raises(ValueError):
        EdgeProduct(g, ())


# -- colon ideals -----------------------------------------------------------------------


def test_c4_colon_is_the_edge_ideal():
    g = fixture("c4")
    assert colon_ideal_by_even_connections(P(g, "x1-x2")) == edge_ideal(g)


def test_c5_colon_adds_one_chord():
    g = fixture("c5")
    colon = colon_ideal_by_even_connections(P(g, "x1-x2"))
    expected = parse_ideal("\n".join(["x1*x2", "x2*x3", "x3*x4", "x4*x5", "x1*x5", "x3*x5"]), g.vertices)
    assert colon == expected
    assert colon == brute_force_colon(P(g, "x1-x2"))


def test_g_ex_colon():
    g = fixture("g_ex")
    colon = colon_ideal_by_even_connections(P(g, "x1-x2"))
    extra = ["y1*y2", "y1*x4", "y1*y3", "y2*x4", "y2*y3", "y3*x4", "x4^2", "y3^2"]
    expected = edge_ideal(g) + parse_ideal("\n".join(extra), g.vertices)
    assert colon == expected
    assert not is_squarefree(colon)


@settings(max_examples=80)
@given(products(graphs(min_n=2, max_n=8, min_edges=1), max_s=3))
def test_colon_matches_independent_oracle(prod):
    colon = colon_ideal_by_even_connections(prod)
    assert as_item_sets(colon) == oracles.edge_power_colon(prod.base.edges, prod.edges)
    assert colon == brute_force_colon(prod)


@given(products(max_s=3))
def test_generators_have_degree_two(prod):
    assert all(sum(e) == 2 for e in colon_ideal_by_even_connections(prod).gens)


@given(products(max_s=2))
def test_edges_are_generators(prod):
    colon = colon_ideal_by_even_connections(prod)
    gens = as_item_sets(colon)
    for u, v in prod.base.edges:
        assert frozenset({(u, 1), (v, 1)}) in gens


@given(products(max_s=3))
def test_witness_symmetry_and_validity(prod):
    g = prod.base
    pairs = even_connected_pairs(prod)
    for u in g.vertices:
        for v in g.vertices:
            w = is_even_connected(prod, u, v)
            assert (w is None) == (is_even_connected(prod, v, u) is None)
            assert (w is not None) == (frozenset((u, v)) in pairs)
            if w is not None:
                assert w.validate(prod)
                assert w.vertices[0] == u and w.vertices[-1] == v


def test_witness_is_shortest():
    g = fixture("c5")
    w = is_even_connected(P(g, "x1-x2"), "x3", "x5")
    assert w.vertices == ("x3", "x2", "x1", "x5")


# -- colon graphs -------------------------------------------------------------------------


def test_c4_colon_graph():
    g = fixture("c4")
    cg = colon_graph(P(g, "x1-x2"))
    assert cg.gprime == g and cg.W == ()


def test_g_ex_colon_graph_has_two_partners():
    g = fixture("g_ex")
    cg = colon_graph(P(g, "x1-x2"))
    assert cg.W == ("x4", "y3")
    assert cg.partner("x4") == "x4#2" and cg.partner("y3") == "y3#2"
    assert cg.gprime.n == 10
    assert cg.gprime.has_edge("x4", "x4#2") and cg.gprime.has_edge("y3", "y3#2")
    assert cg.is_new("x4#2") and not cg.is_new("x4")


def test_g_ex_colon_graph_is_not_very_well_covered():
    g = fixture("g_ex")
    gp = colon_graph(P(g, "x1-x2")).gprime
    assert not is_very_well_covered(gp)
    assert not oracles.is_very_well_covered(gp.vertices, gp.edges)
    cover_sizes = {gp.n - len(s) for s in oracles.maximal_independent_sets(gp.vertices, gp.edges)}
    assert cover_sizes == {4, 7, 8}
    with pytest.raises(NotSquarefree):
        verify_gprime_vwc(g, P(g, "x1-x2"))


def test_squarefree_colon_graph_has_no_new_vertices():
    g = fixture("g_b")
    for prod in all_products(g, 2):
        if is_squarefree(colon_ideal_by_even_connections(prod)):
            cg = colon_graph(prod)
            assert cg.W == () and set(cg.gprime.vertices) == set(g.vertices)


def test_original_edges_survive_in_colon_graph():
    g = fixture("g_ex")
    gp = colon_graph(P(g, "x1-x2,x3-x4")).gprime
    assert g.edge_set() <= gp.induced_subgraph(g.vertices).edge_set()


# -- decomposition and closure ------------------------------------------------------------


def test_decomposition_c4():
    g = fixture("c4")
    prod = P(g, "x1-x2,x3-x4")
    assert verify_colon_decomposition(prod, 1)
    assert verify_colon_decomposition(prod, 2)
    assert verify_colon_decomposition(P(g, "x1-x2"), 1)
    with pytest.raises(IndexError):
        verify_colon_decomposition(prod, 3)


def test_decomposition_needs_squarefree_colon():
    g = fixture("g_ex")
    with pytest.raises(NotSquarefree):
        verify_colon_decomposition(P(g, "x1-x2"), 1)


def test_g_b_colon_graph_is_very_well_covered():
    g = fixture("g_b")
    prod = P(g, "x1-y2")
    expected = edge_ideal(g) + parse_ideal("x2*y1", g.vertices)
    assert ideal_equal(colon_ideal_by_even_connections(prod), expected)
    assert verify_gprime_vwc(g, prod)
    assert verify_gprime_vwc(fixture("c4"), P(fixture("c4"), "x1-x2"))


@settings(max_examples=40)
@given(labeled_vwc_graphs(max_h=3), st.data())
def test_squarefree_colons_of_vwc_graphs(case, data):
    g, _ = case
    if not g.edges:
        return
    s = data.draw(st.integers(1, 2))
    edges = data.draw(st.lists(st.sampled_from(g.edges), min_size=s, max_size=s))
    prod = EdgeProduct(g, tuple(edges))
    if not is_squarefree(colon_ideal_by_even_connections(prod)):
        return
    gp = colon_graph(prod).gprime
    assert verify_gprime_vwc(g, prod)
    assert oracles.is_very_well_covered(gp.vertices, gp.edges)
    assert induced_matching_number(gp) <= induced_matching_number(g)
    for i in range(1, s + 1):
        assert verify_colon_decomposition(prod, i)


def test_restrict_product():
    g = fixture("c4")
    prod = P(g, "x1-x2,x1-x2,x3-x4")
    h = g.induced_subgraph(["x1", "x2", "x3"])
    sub = restrict_product(prod, h)
    assert sub.edges == (("x1", "x2"), ("x1", "x2"))
    assert restrict_product(prod, g.induced_subgraph(["x2", "x3"])) is None


def test_all_products_counts_multisets():
    g = fixture("c4")
    assert len(list(all_products(g, 1))) == 4
    assert len(list(all_products(g, 2))) == 10
