import pytest

import ramchord as rc


def test_graph_basics():
    g = rc.Graph.parse("C6+0-3")
    assert g.order() == 6 and g.size() == 7
    assert g.has_edge(0, 3)
    assert rc.Graph.from_graph6(g.graph6()) == g
    assert rc.chorded_cycle(6, [(0, 3)]) == g
    with pytest.raises(ValueError):
        rc.Graph.parse("C5+0-9")


def test_classification():
    assert rc.is_bipartite(rc.Graph.parse("C6+0-3"))
    assert rc.almost_bipartite_index(rc.cycle_graph(5))[0] == 1
    k, removed = rc.almost_bipartite_index(rc.Graph.parse("C13+0-2+3-5"))
    assert k == 2 and len(removed) == 2
    assert rc.almost_bipartite_index(rc.Graph.parse("C13+0-2+3-5"), 1) is None


@pytest.mark.parametrize("n, expected", [(4, 6), (5, 9), (6, 8)])
def test_cycle_ramsey_numbers(n, expected):
    r = rc.ramsey_number(rc.cycle_graph(n), 20)
    assert r["r"] == expected
    witness = rc.Coloring.from_json(r["lower"]["witness"])
    assert witness.order() == expected - 1
    assert rc.mono_copy(witness, rc.cycle_graph(n)) is None


def test_budget_exceeded():
    with pytest.raises(rc.BudgetExceeded):
        rc.arrows(13, rc.cycle_graph(7), budget_nodes=500)
    with pytest.raises(rc.CapExceeded):
        rc.ramsey_number(rc.cycle_graph(6), 7)


def test_certificates():
    h = rc.Graph.parse("C6+0-2")
    col = rc.even_extremal_coloring(6)
    for mode in ("structural", "search"):
        assert rc.certify_lower_bound(col, h, mode)["verdict"]
    bound = rc.construction_lower_bound(rc.Graph.parse("C13+0-2+3-5"))
    assert bound["lower_bound"] == 26
    assert rc.construction_lower_bound(rc.Graph.parse("C6+0-3")) is None


def test_preparation():
    g = rc.random_host_instance(11, 50, 300)
    dec = rc.prepare_host(g, 10.0, 3)
    assert dec["violations"] == []


def test_allocation_and_chain():
    alloc = rc.allocate_chunks([11, 11, 11], 6, 14, 0.0015)
    assert alloc["q"] == [[1, 3, 1, 5, 1], [1, 5, 1, 3, 1], [1, 5, 1, 3, 1]]
    with pytest.raises(rc.AllocationError) as err:
        rc.allocate_chunks([11], 5, 14, 0.0015)
    assert err.value.args[1] == "parity"
    chain = rc.random_cluster_chain(3, 6, 150, 0.5)
    emb = rc.chain_path_embed(chain, [19, 21, 19], seed=1)
    assert emb["violations"] == []
    assert [len(p) - 1 for p in emb["paths"]] == [19, 21, 19]


def test_constants():
    p = rc.paper_constants(10, 4)
    assert p["all_checks_hold"]
    assert p["eps"]["log10"] < -1000


def test_module_location():
    build = __import__("os").environ.get("RAMCHORD_BUILD_PYTHONPATH")
    if build:
        assert rc.__file__.startswith(build)
