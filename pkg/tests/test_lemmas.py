import json

from hypothesis import given, settings
from hypothesis import strategies as st

from edgereg import lemmas
from edgereg.even import EdgeProduct, all_products
from edgereg.fixtures import fixture, paired_labeling
from edgereg.lemmas import LEMMA_NAMES, LemmaResult, even_connection_walks, verify_structural_lemmas
from strategies import labeled_vwc_graphs


def report_for(name, product, h):
    g = fixture(name)
    return verify_structural_lemmas(g, paired_labeling(h), EdgeProduct.parse(g, product))


def test_c4_all_pass():
    rep = report_for("c4", "x1-x2", 2)
    assert rep.passed
    assert [r.name for r in rep.results] == list(LEMMA_NAMES)


def test_g_ex_all_pass_with_self_loops_exercised():
    rep = report_for("g_ex", "x1-x2", 4)
    assert rep.passed
    by = {r.name: r for r in rep.results}
    assert by["self-loop-spread"].checked > 0
    assert by["delete-pair-neighbourhood"].checked > 0
    assert by["walk-neighbour"].checked > 0


def test_report_serializes():
    rep = report_for("g_b", "x1-y2,x2-y3", 3)
    data = json.loads(json.dumps(rep.as_dict()))
    assert data["product"] == "x1-y2,x2-y3"
    assert [d["name"] for d in data["lemmas"]] == list(LEMMA_NAMES)
    assert all(d["pass"] and d["counterexample"] is None for d in data["lemmas"])


def test_every_product_of_g_b_passes():
    g = fixture("g_b")
    lab = paired_labeling(3)
    for s in (1, 2):
        for prod in all_products(g, s):
            assert verify_structural_lemmas(g, lab, prod).passed, prod.spec()


def test_first_counterexample_is_kept():
    res = LemmaResult("x")
    res.fail(a=1)
    res.fail(a=2)
    assert not res.passed and res.counterexample == {"a": 1}


def test_walks_are_even_connections():
    g = fixture("c4")
    walks = set(even_connection_walks(EdgeProduct.parse(g, "x1-x2")))
    assert ("x4", "x1", "x2", "x3") in walks
    assert all(len(w) % 2 == 0 and len(w) >= 4 for w in walks)


def test_checker_catches_a_broken_adjacency(monkeypatch):
    # drop the even-connected pairs: the walk-neighbour property must then fail on G_ex
    def edges_only(product):
        es = {frozenset(e) for e in product.base.edges}
        return lambda a, b: frozenset((a, b)) in es

    monkeypatch.setattr(lemmas, "_adjacency", edges_only)
    rep = report_for("g_ex", "x1-x2", 4)
    assert not rep.passed
    failing = {r.name for r in rep.results if not r.passed}
    assert "walk-neighbour" in failing


@settings(max_examples=25)
@given(labeled_vwc_graphs(max_h=3), st.data())
def test_generated_graphs_pass(case, data):
    g, lab = case
    if not g.edges:
        return
    s = data.draw(st.integers(1, 2))
    edges = data.draw(st.lists(st.sampled_from(g.edges), min_size=s, max_size=s))
    rep = verify_structural_lemmas(g, lab, EdgeProduct(g, tuple(edges)))
    assert rep.passed, rep.as_dict()
