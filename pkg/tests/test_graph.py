import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from edgereg.combinatorics import (
    MatchingCertificate,
    VwcLabeling,
    brute_force_induced_matching_number,
    canonical_form,
    check_vwc_characterization,
    induced_matching,
    induced_matching_number,
    is_very_well_covered,
    is_well_covered,
    relabel_swap,
    validate_labeling,
    vwc_labeling,
)
from edgereg.errors import (
    BudgetExceeded,
    InvalidLabeling,
    NotVeryWellCovered,
    ParseError,
    UnknownVertex,
    VertexNameCollision,
)
from edgereg.families import all_graphs, generate_vwc_family, join_pairs, vwc_pool, whiskered_family
from edgereg.fixtures import FIXTURE_NAMES, fixture, fixture_text, paired_labeling, write_fixtures
from edgereg.graph import Graph, delete_closed_neighborhood, format_graph, join, parse_graph, whisker
from strategies import graphs, labeled_vwc_graphs


def cycle(n, prefix="x"):
    vs = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Graph(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])


def path(*names):
    return Graph(names, list(zip(names, names[1:])))


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


# -- construction and text format ------------------------------------------------


def test_graph_rejects_loops_and_unknown_endpoints():
    with pytest.raises(ValueError):
        Graph(["a"], [("a", "a")])
    with pytest.raises(UnknownVertex):
        Graph(["a"], [("a", "b")])
    with pytest.raises(VertexNameCollision):
        Graph(["a", "a"])


def test_parallel_edges_collapse():
    g = Graph(["a", "b"], [("a", "b"), ("b", "a")])
    assert g.num_edges() == 1


def test_parse_graph_comments_and_isolated_vertices():
    g = parse_graph("# a comment\nvertex z\na b\n\nb c\n")
    assert g.vertices == ("z", "a", "b", "c")
    assert g.edges == (("a", "b"), ("b", "c"))
    assert g.isolated_vertices() == ["z"]


@pytest.mark.parametrize("bad", ["a b c\n", "a a\n", "a-b c\n"])
def test_parse_graph_errors(bad):
    with pytest.raises(ParseError):
        parse_graph(bad)


@given(graphs(max_n=8))
def test_text_round_trip(g):
    back = parse_graph(format_graph(g))
    assert back == g and back.vertices == g.vertices


@given(graphs(max_n=8))
def test_digest_round_trip(g):
    assert Graph.from_digest(g.digest()).edge_set() == g.edge_set()
    assert set(Graph.from_digest(g.digest()).vertices) == set(g.vertices)


# -- induced matchings -------------------------------------------------------------


@pytest.mark.parametrize(
    "g, nu",
    [
        (path("a", "b"), 1),
        (cycle(5), 1),
        (Graph("abcd", [("a", "b"), ("c", "d")]), 2),
        (path("a", "b", "c", "d", "e"), 2),
        (Graph(["a", "b"]), 0),
        (Graph([]), 0),
    ],
)
def test_induced_matching_examples(g, nu):
    assert induced_matching_number(g) == nu
    cert = induced_matching(g)
    assert cert.verify(g) and len(cert) == nu


def test_path_nu_matches_subset_oracle():
    g = path("a", "b", "c", "d", "e")
    assert oracles.induced_matching_number(list(g.vertices), list(g.edges)) == 2


@given(graphs(max_n=7))
def test_induced_matching_against_oracle(g):
    nu = induced_matching_number(g)
    assert nu == oracles.induced_matching_number(list(g.vertices), list(g.edges))
    assert nu == brute_force_induced_matching_number(g)


@given(graphs(max_n=7), st.data())
def test_induced_matching_monotone_on_induced_subgraphs(g, data):
    keep = data.draw(st.lists(st.sampled_from(g.vertices), unique=True))
    assert induced_matching_number(g.induced_subgraph(keep)) <= induced_matching_number(g)


def test_matching_certificate_detects_non_induced():
    g = path("a", "b", "c", "d")
    assert MatchingCertificate((("a", "b"), ("c", "d")), False).verify(g)
    assert not MatchingCertificate((("a", "b"), ("c", "d")), True).verify(g)


# -- covered-ness -------------------------------------------------------------------


def test_well_covered_examples():
    assert is_well_covered(cycle(4))
    assert not is_well_covered(path("a", "b", "c"))
    assert is_well_covered(fixture("nine"))
    assert is_well_covered(Graph([]))


def test_very_well_covered_examples():
    assert is_very_well_covered(cycle(4))
    assert is_very_well_covered(fixture("g_ex"))
    assert not is_very_well_covered(fixture("nine"))
    assert not is_very_well_covered(cycle(5))
    assert not is_very_well_covered(Graph([]))
    assert not is_very_well_covered(Graph(["a", "b"]))


@given(graphs(max_n=7))
def test_very_well_covered_against_oracle(g):
    assert is_very_well_covered(g) == oracles.is_very_well_covered(list(g.vertices), list(g.edges))
    sizes = {len(s) for s in oracles.maximal_independent_sets(list(g.vertices), list(g.edges))}
    assert is_well_covered(g) == (len(sizes) <= 1)


# -- labelings -----------------------------------------------------------------------


def test_c4_labeling():
    lab = vwc_labeling(cycle(4))
    assert lab.pairs == (("x1", "x2"), ("x3", "x4"))
    assert set(lab.X) == {"x1", "x3"} and set(lab.Y) == {"x2", "x4"}


def test_g_ex_labeling_is_the_paired_one():
    lab = vwc_labeling(fixture("g_ex"))
    assert lab == paired_labeling(4)


def test_whisker_labeling_puts_pendants_in_y():
    h = path("a", "b", "c")
    lab = vwc_labeling(whisker(h))
    assert set(lab.X) == {"a", "b", "c"}
    assert set(lab.Y) == {"a'", "b'", "c'"}


def test_labeling_requires_vwc():
    with pytest.raises(NotVeryWellCovered):
        vwc_labeling(cycle(5))


def test_labeling_is_lexicographically_smallest_cover():
    g = cycle(4)
    covers = sorted(
        sorted(set(g.vertices) - s) for s in oracles.maximal_independent_sets(list(g.vertices), list(g.edges))
    )
    assert sorted(vwc_labeling(g).X) == covers[0]


def test_characterization_examples():
    assert check_vwc_characterization(fixture("g_ex"), paired_labeling(4))
    assert check_vwc_characterization(cycle(4), vwc_labeling(cycle(4)))
    g = Graph(["x1", "x2", "y1", "y2"], [("x1", "y1"), ("x2", "y2"), ("x1", "y2")])
    assert check_vwc_characterization(g, paired_labeling(2))


def test_characterization_rejects_condition_two_violation():
    # x1y2 together with x1x2 breaks the second condition
    g = Graph(["x1", "x2", "y1", "y2"], [("x1", "y1"), ("x2", "y2"), ("x1", "y2"), ("x1", "x2")])
    assert not check_vwc_characterization(g, paired_labeling(2))
    assert not is_very_well_covered(g)


def test_invalid_labelings():
    g = cycle(4)
    with pytest.raises(InvalidLabeling):
        validate_labeling(g, VwcLabeling((("x1", "x3"), ("x2", "x4"))))
    with pytest.raises(InvalidLabeling):
        check_vwc_characterization(g, VwcLabeling((("x1", "x2"),)))


@given(labeled_vwc_graphs(max_h=4))
def test_characterization_agrees_with_recognizer(gl):
    g, lab = gl
    assert is_very_well_covered(g)
    assert check_vwc_characterization(g, lab)
    assert check_vwc_characterization(g, vwc_labeling(g))


@given(graphs(min_n=2, max_n=6))
def test_characterization_on_arbitrary_labelings(g):
    """Whenever the greedy pairing is a valid labeling, the conditions decide VWC."""
    if g.n % 2:
        return
    h = g.n // 2
    lab = VwcLabeling(tuple(zip(g.vertices[:h], g.vertices[h:])))
    try:
        ok = check_vwc_characterization(g, lab)
    except InvalidLabeling:
        return
    assert ok == is_very_well_covered(g)


def test_relabel_swap_identity_case():
    g = cycle(4)
    lab = vwc_labeling(g)
    # only y_1 = x2 is a Y-neighbour of x_1 = x1 ... and x4 too
    out = relabel_swap(g, lab, 0)
    validate_labeling(g, out)
    single = Graph(["x1", "y1", "x2", "y2"], [("x1", "y1"), ("x2", "y2")])
    assert relabel_swap(single, paired_labeling(2), 0).pairs == (("y1", "x1"), ("x2", "y2"))


def test_relabel_swap_on_g_b():
    g = fixture("g_b")
    lab = paired_labeling(3)
    for i in range(3):
        out = relabel_swap(g, lab, i)
        assert check_vwc_characterization(g, out)


@given(labeled_vwc_graphs(max_h=4), st.data())
def test_relabel_swap_preserves_validity(gl, data):
    g, lab = gl
    i = data.draw(st.integers(0, lab.h - 1))
    out = relabel_swap(g, lab, i)
    assert check_vwc_characterization(g, out)


def test_relabel_swap_out_of_range():
    with pytest.raises(InvalidLabeling):
        relabel_swap(cycle(4), vwc_labeling(cycle(4)), 5)


# -- neighbourhood deletion, whiskers, joins --------------------------------------


def test_delete_closed_neighborhood_examples():
    g = cycle(4)
    out = delete_closed_neighborhood(g, ["x1"])
    assert out.vertices == ("x3",) and out.num_edges() == 0
    assert delete_closed_neighborhood(g, []) == g
    with pytest.raises(UnknownVertex):
        delete_closed_neighborhood(g, ["nope"])


@given(labeled_vwc_graphs(max_h=4), st.data())
def test_closure_under_deletion(gl, data):
    g, lab = gl
    x, y = lab.pairs[data.draw(st.integers(0, lab.h - 1))]
    for h in (
        delete_closed_neighborhood(g, [x, y]),
        delete_closed_neighborhood(g, [x]),
        g.remove_vertices([x, y]),
    ):
        # isolated leftovers are not part of the statement; see the ledger
        h = h.without_isolated()
        assert h.n == 0 or is_very_well_covered(h)


def test_whisker_examples():
    k1 = Graph(["a"])
    assert whisker(k1).num_edges() == 1
    wc4 = whisker(cycle(4))
    assert wc4.n == 8 and wc4.num_edges() == 8 and is_very_well_covered(wc4)
    assert is_very_well_covered(whisker(cycle(5)))
    assert wc4.edge_set() == fixture("w_c4").edge_set()


@given(graphs(max_n=6))
def test_whisker_always_vwc(g):
    assert is_very_well_covered(whisker(g))


def test_join_examples():
    assert join(Graph(["a"]), Graph(["b"])).edges == (("a", "b"),)
    k4 = join(path("a", "b"), path("c", "d"))
    assert k4.num_edges() == 6
    c = join(cycle(4, "a"), cycle(4, "b"))
    assert c.n == 8 and c.num_edges() == 4 + 4 + 16
    with pytest.raises(VertexNameCollision):
        join(path("a", "b"), path("b", "c"))


@given(graphs(min_n=2, max_n=4, min_edges=1), graphs(min_n=2, max_n=4, min_edges=1))
def test_join_nu_is_max(a, b):
    a = a.relabel({v: "a" + v for v in a.vertices})
    b = b.relabel({v: "b" + v for v in b.vertices})
    j = join(a, b)
    assert induced_matching_number(j) == max(induced_matching_number(a), induced_matching_number(b))
    assert induced_matching_number(j) == oracles.induced_matching_number(list(j.vertices), list(j.edges))


# -- families ------------------------------------------------------------------------


def test_family_h1_is_single_edge():
    out = list(generate_vwc_family(1))
    assert len(out) == 1 and out[0][0].edges == (("x1", "y1"),)


def test_family_h2_contains_c4_and_all_pass():
    fam = list(generate_vwc_family(2))
    assert all(is_very_well_covered(g) for g, _ in fam)
    c4 = Graph(["x1", "x2", "y1", "y2"], [("x1", "y1"), ("x2", "y2"), ("x1", "y2"), ("x2", "y1")])
    assert any(g.edge_set() == c4.edge_set() for g, _ in fam)


def test_family_h3_contains_g_b():
    assert any(g.edge_set() == fixture("g_b").edge_set() for g, _ in generate_vwc_family(3))


# Labeled and isomorphism-class counts, frozen from an independent networkx dedup
FAMILY_COUNTS = {1: (1, 1), 2: (5, 3), 3: (54, 8)}


@pytest.mark.parametrize("h", [1, 2, 3])
def test_family_counts(h):
    labeled = [g for g, _ in generate_vwc_family(h)]
    classes = []
    for g in labeled:
        if not any(nx.is_isomorphic(to_nx(g), c) for c in classes):
            classes.append(to_nx(g))
    assert (len(labeled), len(classes)) == FAMILY_COUNTS[h]
    assert len(list(generate_vwc_family(h, dedup=True))) == FAMILY_COUNTS[h][1]


@pytest.mark.parametrize("n", [2, 4, 6])
def test_family_is_complete_up_to_isomorphism(n):
    """Every VWC graph on n vertices (oracle) is isomorphic to a generated one."""
    generated = [to_nx(g) for g, _ in generate_vwc_family(n // 2, dedup=True)]
    found = []
    for vs, es in oracles.graphs_on(n):
        if not oracles.is_very_well_covered(vs, es):
            continue
        h = nx.Graph(es)
        if any(nx.is_isomorphic(h, f) for f in found):
            continue
        found.append(h)
        assert any(nx.is_isomorphic(h, gg) for gg in generated)
    assert len(found) == len(generated)


def test_family_random_mode_is_seeded():
    a = [g.digest() for g, _ in generate_vwc_family(4, "random", seed=5, samples=10)]
    b = [g.digest() for g, _ in generate_vwc_family(4, "random", seed=5, samples=10)]
    assert a == b and len(a) == 10
    with pytest.raises(ValueError):
        list(generate_vwc_family(2, "random"))


def test_family_budget():
    with pytest.raises(BudgetExceeded):
        list(generate_vwc_family(5))


def test_pool_and_derived_families():
    pool = vwc_pool(2)
    assert len(pool) == 1 + 3
    assert len(whiskered_family(3)) == 1 + 2 + 4
    assert len(join_pairs([g for g, _ in pool])) == 10
    assert len(all_graphs(4)) == 11


# -- canonical form -----------------------------------------------------------------


@given(graphs(max_n=7), st.randoms(use_true_random=False))
def test_canonical_form_is_invariant(g, rnd):
    perm = list(g.vertices)
    rnd.shuffle(perm)
    h = g.relabel(dict(zip(g.vertices, perm)))
    h = Graph(sorted(h.vertices), h.edges)
    assert canonical_form(g) == canonical_form(h)


@given(graphs(max_n=6), graphs(max_n=6))
def test_canonical_form_separates(a, b):
    same = a.n == b.n and nx.is_isomorphic(to_nx(a), to_nx(b))
    assert (canonical_form(a) == canonical_form(b)) == same


# -- fixtures ---------------------------------------------------------------------------


def test_fixtures_ship_and_round_trip(tmp_path):
    paths = write_fixtures(str(tmp_path))
    assert [p.rsplit("/", 1)[1] for p in paths] == [f"{n}.edges" for n in FIXTURE_NAMES]
    for name, p in zip(FIXTURE_NAMES, paths):
        with open(p) as fh:
            assert fh.read() == fixture_text(name)
        assert parse_graph(fixture_text(name)) == fixture(name)


def test_fixture_shapes():
    assert fixture("g_ex").num_edges() == 10
    assert fixture("nine").n == 9
    assert induced_matching_number(fixture("nine")) == 2
    assert induced_matching_number(fixture("g_b")) == 1
