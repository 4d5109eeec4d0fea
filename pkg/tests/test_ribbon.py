"""Rotation systems: faces, genus, quasi-trees, surgery, canonical form."""

import random

import pytest

from feyncomb import fixtures
from feyncomb.checks import random_ribbon_graph
from feyncomb.graphs import Graph
from feyncomb.ribbon import RibbonGraph, load_fixture


def test_fig6_has_two_faces_both_broken():
    rg = fixtures.build("fig6")
    faces = rg.faces()
    assert len(faces) == 2
    assert all(f.broken for f in faces)
    assert rg.broken_faces() == 2
    assert rg.genus() == 0
    assert not rg.is_planar_regular()  # planar irregular


def test_isolated_vertex_one_face():
    rg = RibbonGraph(Graph(["v"], []), {"v": ()})
    assert rg.face_count() == 1
    assert rg.genus() == 0


def test_interleaved_loops_single_face_genus_one():
    rg = fixtures.build("interleaved")
    assert rg.face_count() == 1
    assert rg.genus() == 1
    assert rg.broken_faces() == 0


def test_tadpole_faces_and_planarity():
    rg = fixtures.build("tadpole")
    assert rg.face_count() == 2
    assert rg.genus() == 0


def test_tree_genus_zero():
    rg = fixtures.build("bridge")
    assert rg.genus() == 0
    assert rg.face_count() == 1


def test_single_leg_vertex_planar_regular():
    rg = RibbonGraph(Graph(["v"], [], [("f1", "v", "in")]), {"v": (("f1", "x"),)})
    assert rg.broken_faces() == 1
    assert rg.is_planar_regular()


def test_euler_relation_on_random_ribbon_graphs():
    rng = random.Random(23)
    for _ in range(40):
        rg = random_ribbon_graph(rng, max_vertices=4, max_edges=7)
        g = rg.underlying()
        assert g.components() == 1
        assert len(g.vertices) - len(g.edges) + rg.face_count() == 2 - 2 * rg.genus()


def test_face_deficiency_nonneg_and_even_when_connected():
    rng = random.Random(29)
    for _ in range(25):
        rg = random_ribbon_graph(rng, max_vertices=4, max_edges=6)
        g = rg.underlying()
        ids = sorted(g.all_edges())
        for mask in range(1 << len(ids)):
            sub = frozenset(ids[i] for i in range(len(ids)) if mask >> i & 1)
            defect = g.components(sub) - rg.face_count(sub) + g.nullity(sub)
            assert defect >= 0
            if g.components(sub) == 1:
                assert defect % 2 == 0
                assert defect == 2 * rg.genus(sub)


def test_ribbon_delete_fig6_loop():
    rg = fixtures.build("fig6")
    bare = rg.ribbon_delete("e1")
    assert len(bare.vertices) == 1 and not bare.edges and len(bare.legs) == 2
    assert bare.face_count() == 1


def test_ribbon_contract_bridge_splices():
    rg = RibbonGraph(
        Graph(["u", "v"], [("e", "u", "v")], [("f1", "u", "in"), ("f2", "v", "out")]),
        {"u": (("e", "t"), ("f1", "x")), "v": (("f2", "x"), ("e", "h"))},
    )
    out = rg.ribbon_contract("e")
    assert len(out.vertices) == 1
    (seq,) = out.rotation.values()
    assert set(seq) == {("f1", "x"), ("f2", "x")}
    with pytest.raises(ValueError):
        fixtures.build("tadpole").ribbon_contract("e1")


def test_delete_contract_commute_on_disjoint_edges():
    rg = fixtures.build("ribbonhost")
    a = rg.ribbon_delete("e2").ribbon_contract("e3")
    b = rg.ribbon_contract("e3").ribbon_delete("e2")
    assert a == b


def test_quasi_trees_examples():
    assert fixtures.build("tadpole").quasi_trees() == [frozenset()]
    interleaved = fixtures.build("interleaved").quasi_trees()
    assert sorted(interleaved, key=sorted) == [frozenset(), frozenset({"e1", "e2"})]
    assert fixtures.build("bridge").quasi_trees() == [frozenset({"e1"})]


def test_two_quasi_trees_examples():
    assert [t.edges for t in fixtures.build("tadpole").two_quasi_trees()] == [frozenset({"e1"})]
    assert fixtures.build("bridge").two_quasi_trees() == []
    fig6 = fixtures.build("fig6")
    (tq,) = fig6.two_quasi_trees()
    assert tq.edges == frozenset({"e1"})
    assert all(f.broken for f in tq.faces)


def test_quasi_trees_contain_spanning_trees_and_size_bound():
    rng = random.Random(31)
    for _ in range(20):
        rg = random_ribbon_graph(rng, max_vertices=4, max_edges=6)
        g = rg.underlying()
        qts = rg.quasi_trees()
        n_min = len(g.vertices) - 1
        assert all(len(q) >= n_min for q in qts)
        for tree in g.spanning_trees():
            if rg.face_count(tree) == 1:
                assert tree in qts


def test_face_boundary_order():
    fig6 = fixtures.build("fig6")
    faces = fig6.faces()
    legs_per_face = sorted(f.leg_ids() for f in faces)
    assert legs_per_face == [("f1",), ("f2",)]
    for f in faces:
        order = fig6.face_boundary_order(f)
        assert len(order) == 1
        lid, sign = order[0]
        assert sign == (1 if lid == "f1" else -1)
    closed = fixtures.build("tadpole")
    assert all(closed.face_boundary_order(f) == [] for f in closed.faces())


def test_rotation_validation():
    g = Graph(["v"], [("e1", "v", "v")])
    with pytest.raises(ValueError, match="misses"):
        RibbonGraph(g, {"v": (("e1", "t"),)})
    with pytest.raises(ValueError, match="twice"):
        RibbonGraph(g, {"v": (("e1", "t"), ("e1", "t"), ("e1", "h"))})
    with pytest.raises(ValueError, match="wrong vertex"):
        RibbonGraph(
            Graph(["a", "b"], [("e1", "a", "b")]),
            {"a": (("e1", "h"),), "b": (("e1", "t"),)},
        )
    with pytest.raises(ValueError, match="rotation"):
        load_fixture({"type": "ribbon", "vertices": ["v"], "edges": [], "external": []})
    with pytest.raises(ValueError, match="rotation"):
        load_fixture(
            {"type": "graph", "vertices": ["v"], "edges": [], "external": [], "rotation": {"v": []}}
        )


def test_reorient_keeps_embedding():
    rg = fixtures.build("fig6")
    flipped = rg.reorient(["e1"])
    assert flipped.face_count() == rg.face_count()
    assert flipped.genus() == rg.genus()
    assert flipped.canonical_form() == rg.canonical_form()


def test_canonical_form_invariance():
    rng = random.Random(37)
    for _ in range(10):
        rg = random_ribbon_graph(rng, max_vertices=3, max_edges=5)
        g = rg.underlying()
        perm = list(g.vertices)
        rng.shuffle(perm)
        ren = dict(zip(g.vertices, perm))
        g2 = Graph(
            sorted(perm),
            [(e.id, ren[e.tail], ren[e.head]) for e in g.edges],
            [(l.id, ren[l.vertex], l.dir) for l in g.legs],
        )
        k = rng.randint(0, 3)
        rot2 = {}
        for v, seq in rg.rotation.items():
            n = len(seq)
            rolled = tuple(seq[(i + k) % n] for i in range(n)) if n else ()
            rot2[ren[v]] = rolled
        rg2 = RibbonGraph(g2, rot2)
        assert rg.canonical_form() == rg2.canonical_form()


def test_canonical_form_distinguishes_embeddings():
    # planar vs interleaved pair of loops on one vertex
    planar = RibbonGraph(
        Graph(["v"], [("e1", "v", "v"), ("e2", "v", "v")]),
        {"v": (("e1", "t"), ("e1", "h"), ("e2", "t"), ("e2", "h"))},
    )
    assert planar.canonical_form() != fixtures.build("interleaved").canonical_form()
