"""Multigraph structure: connectivity, surgery, spanning sets, canonical form."""

import json
import random

import pytest

from feyncomb import fixtures
from feyncomb.graphs import Graph, graph_from_json_dict
from feyncomb.linalg import matrix_tree_count
from feyncomb.ribbon import load_fixture


def fig3():
    return fixtures.build("fig3")


def triangle():
    return fixtures.build("k3")


def test_components_rank_nullity():
    g = Graph(["a", "b", "c"], [])
    assert g.components() == 3
    assert g.rank() == 0
    g3 = fig3()
    assert g3.components({"e1", "e2"}) == 1
    assert g3.components(frozenset()) == 3
    assert g3.rank() == 2
    assert g3.nullity() == 2  # two independent cycles
    single = Graph(["v"], [])
    assert single.components() == 1


def test_nullity_small_cases():
    tree = Graph(["a", "b"], [("e1", "a", "b")])
    assert tree.nullity() == 0
    loop = fixtures.build("selfloop")
    assert loop.nullity() == 1


def test_classify_edge():
    bridge = Graph(["a", "b"], [("e1", "a", "b")])
    assert bridge.classify_edge("e1") == "bridge"
    loop = fixtures.build("selfloop")
    assert loop.classify_edge("e1") == "self_loop"
    for e in triangle().edges:
        assert triangle().classify_edge(e.id) == "regular"
    with pytest.raises(KeyError):
        bridge.classify_edge("nope")


def test_delete_contract():
    bridge = Graph(["a", "b"], [("e1", "a", "b")])
    contracted = bridge.contract_edge("e1")
    assert len(contracted.vertices) == 1 and not contracted.edges
    path = triangle().delete_edge("e2")
    assert path.components() == 1 and len(path.edges) == 2
    loop = fixtures.build("selfloop")
    assert loop.contract_edge("e1") == loop.delete_edge("e1")


def test_surgery_counts():
    rng = random.Random(3)
    for _ in range(20):
        nv = rng.randint(2, 5)
        verts = [f"v{i}" for i in range(nv)]
        edges = [
            (f"e{i}", rng.choice(verts), rng.choice(verts)) for i in range(rng.randint(1, 7))
        ]
        g = Graph(verts, edges)
        e = rng.choice(g.edges).id
        deleted = g.delete_edge(e)
        assert len(deleted.edges) == len(g.edges) - 1
        assert g.components() <= deleted.components() <= g.components() + 1
        assert len(g.contract_edge(e).edges) == len(g.edges) - 1


def test_contract_moves_legs_to_merged_vertex():
    g = Graph(
        ["a", "b"],
        [("e1", "a", "b")],
        [("f1", "b", "in")],
    )
    merged = g.contract_edge("e1")
    assert merged.leg("f1").vertex == merged.vertices[0]


def test_spanning_trees():
    g3 = fig3()
    trees = {tuple(sorted(t)) for t in g3.spanning_trees()}
    assert trees == {("e1", "e2"), ("e1", "e3"), ("e1", "e4"), ("e2", "e3"), ("e2", "e4")}
    assert Graph(["v"], []).spanning_trees() == [frozenset()]
    assert len(triangle().spanning_trees()) == 3
    with pytest.raises(ValueError):
        Graph(["a", "b"], []).spanning_trees()


def test_spanning_trees_count_matches_kirchhoff():
    rng = random.Random(5)
    for _ in range(25):
        nv = rng.randint(2, 5)
        verts = [f"v{i}" for i in range(nv)]
        edges = []
        for i in range(rng.randint(nv - 1, 8)):
            a, b = rng.sample(verts, 2)  # no self-loops
            edges.append((f"e{i}", a, b))
        g = Graph(verts, edges)
        if not g.is_connected():
            continue
        assert len(g.spanning_trees()) == matrix_tree_count(g)


def test_spanning_two_trees():
    bridge = Graph(["v1", "v2"], [("e1", "v1", "v2")])
    (tt,) = bridge.spanning_two_trees()
    assert tt.edges == frozenset()
    assert tt.parts == (frozenset({"v1"}), frozenset({"v2"}))
    assert len(triangle().spanning_two_trees()) == 3
    g3 = fig3()
    split = {tuple(sorted(t.edges)): t for t in g3.spanning_two_trees()}
    assert set(split) == {("e1",), ("e2",), ("e3",), ("e4",)}
    # the two-trees {e3} and {e4} isolate v1 and carry legs f1, f2 there
    assert split[("e3",)].legs == (("f1", "f2"), ("f3", "f4"))


def test_incidence_matrix():
    single = Graph(["a", "b"], [("e1", "a", "b")])
    assert single.incidence_matrix() == [[1, -1]]
    loop = fixtures.build("selfloop")
    assert loop.incidence_matrix() == [[0]]
    for row in fig3().incidence_matrix():
        assert sum(row) == 0


def test_is_one_pi():
    assert not Graph(["a", "b"], [("e1", "a", "b")]).is_one_pi()
    assert fixtures.build("fig4").is_one_pi()
    two = Graph(["a", "b"], [], [])
    assert not two.is_one_pi()
    assert Graph(["a"], []).is_one_pi()


def test_reorient_preserves_structure():
    g3 = fig3()
    flipped = g3.reorient(["e1", "e3"])
    assert flipped.edge("e1").tail == "v2"
    assert flipped.canonical_form() == g3.canonical_form()


def test_canonical_form_relabel_invariance():
    g = triangle()
    relabeled = Graph(
        ["x", "y", "z"],
        [("p", "y", "z"), ("q", "z", "x"), ("r", "x", "y")],
    )
    assert g.canonical_form() == relabeled.canonical_form()
    path = Graph(["x", "y", "z"], [("p", "x", "y"), ("q", "y", "z")])
    assert g.canonical_form() != path.canonical_form()


def test_canonical_form_ten_vertex_random_relabel():
    rng = random.Random(17)
    verts = [f"v{i}" for i in range(10)]
    edges = []
    for i in range(14):
        a, b = rng.choice(verts), rng.choice(verts)
        edges.append((f"e{i}", a, b))
    legs = [("f0", rng.choice(verts), "in")]
    g = Graph(verts, edges, legs)
    perm = verts[:]
    rng.shuffle(perm)
    ren = dict(zip(verts, perm))
    g2 = Graph(
        sorted(perm),
        [(f"w{i}", ren[t], ren[h]) for i, (_, t, h) in enumerate((e.id, e.tail, e.head) for e in g.edges)],
        [("g0", ren[g.legs[0].vertex], "out")],
    )
    assert g.canonical_form() == g2.canonical_form()


def test_json_roundtrip_and_validation():
    g3 = fig3()
    again = graph_from_json_dict(json.loads(g3.to_json()))
    assert again == g3
    with pytest.raises(ValueError, match="type"):
        load_fixture({"type": "nope", "vertices": [], "edges": []})
    with pytest.raises(ValueError, match="endpoint"):
        graph_from_json_dict(
            {"type": "graph", "vertices": ["a"], "edges": [{"id": "e", "tail": "a", "head": "b"}]}
        )
    with pytest.raises(ValueError, match="missing field"):
        graph_from_json_dict({"type": "graph", "vertices": []})


def test_duplicate_ids_rejected():
    with pytest.raises(ValueError):
        Graph(["a", "a"], [])
    with pytest.raises(ValueError):
        Graph(["a"], [("e", "a", "a"), ("e", "a", "a")])
    with pytest.raises(ValueError):
        Graph(["a"], [], [("f", "a", "sideways")])
