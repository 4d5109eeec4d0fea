"""Symanzik and Moyal parametric polynomials, all routes cross-checked."""

import random
from fractions import Fraction

import pytest

from feyncomb import fixtures
from feyncomb.checks import random_conserved_momenta, random_multigraph, random_ribbon_graph
from feyncomb.graphs import Graph
from feyncomb.parametric import (
    Integrand,
    ThetaTracked,
    alpha_var,
    commutative_limit,
    load_momenta_json,
    momentum,
    nc_u,
    nc_u_delcon,
    nc_u_from_multivariate_br,
    nc_v_imag,
    nc_v_real,
    parametric_integrand,
    phase_psi,
    symanzik_u,
    symanzik_u_delcon,
    symanzik_u_via_det,
    symanzik_v,
    u_from_multivariate_tutte,
    validate_assignment,
    zero_assignment,
)
from feyncomb.poly import MultiPoly
from feyncomb.ribbon import RibbonGraph


def a(i: int) -> MultiPoly:
    return alpha_var(f"e{i}")


FIG3_U_STRING = "a.e1*a.e3 + a.e1*a.e4 + a.e2*a.e3 + a.e2*a.e4 + a.e3*a.e4"


def test_fig3_u_matches_printed_polynomial():
    assert symanzik_u(fixtures.build("fig3")).canonical_string() == FIG3_U_STRING


def test_u_terminal_cases():
    bridge = Graph(["x", "y"], [("e1", "x", "y")])
    assert symanzik_u(bridge) == MultiPoly.one()
    assert symanzik_u(fixtures.build("selfloop")) == a(1)


def test_fig3_v_momentum_probe():
    g = fixtures.build("fig3")
    ext = load_momenta_json(g, fixtures.FIG3_MOMENTA)
    want = 2 * a(1) * a(2) * (a(3) + a(4)) + 3 * a(1) * a(3) * a(4) + a(2) * a(3) * a(4)
    assert symanzik_v(g, ext) == want
    assert symanzik_v(g, zero_assignment(g)).is_zero()
    assert symanzik_v(g, ext, component=0) == symanzik_v(g, ext, component=1)


def test_v_conservation_enforced():
    g = fixtures.build("fig3")
    bad = zero_assignment(g)
    bad["f1"] = momentum([1, 0, 0, 0])
    with pytest.raises(ValueError, match="conservation"):
        symanzik_v(g, bad)
    with pytest.raises(ValueError, match="missing"):
        validate_assignment(g, {"f1": momentum([0, 0, 0, 0])})


def test_u_det_route_examples():
    bridge = Graph(["x", "y"], [("e1", "x", "y")])
    assert symanzik_u_via_det(bridge) == MultiPoly.one()
    assert symanzik_u_via_det(fixtures.build("fig3")).canonical_string() == FIG3_U_STRING
    assert symanzik_u_via_det(fixtures.build("selfloop")) == a(1)


def test_u_det_invariances():
    g = fixtures.build("fig3")
    u = symanzik_u(g)
    for v in g.vertices:
        assert symanzik_u_via_det(g, drop_vertex=v) == u
    assert symanzik_u_via_det(g.reorient(["e2", "e4"])) == u


def test_u_delcon_examples():
    assert symanzik_u_delcon(fixtures.build("fig3")).canonical_string() == FIG3_U_STRING
    two_loops = Graph(["v"], [("e1", "v", "v"), ("e2", "v", "v")])
    assert symanzik_u_delcon(two_loops) == a(1) * a(2)
    bridge_loop = Graph(["x", "y"], [("e1", "x", "y"), ("e2", "y", "y")])
    assert symanzik_u_delcon(bridge_loop) == a(2)


def test_u_from_multivariate_tutte_examples():
    assert u_from_multivariate_tutte(Graph(["x", "y"], [("e1", "x", "y")])) == MultiPoly.one()
    assert u_from_multivariate_tutte(fixtures.build("k3")) == a(1) + a(2) + a(3)
    assert u_from_multivariate_tutte(fixtures.build("fig3")).canonical_string() == FIG3_U_STRING


def test_four_way_agreement_random():
    rng = random.Random(53)
    for _ in range(25):
        g = random_multigraph(rng, max_vertices=5, max_edges=7, connected=True)
        u = symanzik_u(g)
        assert symanzik_u_via_det(g) == u
        assert symanzik_u_delcon(g) == u
        assert u_from_multivariate_tutte(g) == u


def test_parametric_integrand_record():
    g = fixtures.build("fig3")
    ext = load_momenta_json(g, fixtures.FIG3_MOMENTA)
    rec = parametric_integrand(g, ext, Fraction(1, 2))
    assert isinstance(rec, Integrand)
    assert rec.u == symanzik_u(g)
    assert rec.v == symanzik_v(g, ext)
    assert rec.mass_term == MultiPoly.const(Fraction(1, 2)) * (a(1) + a(2) + a(3) + a(4))
    rec0 = parametric_integrand(g, zero_assignment(g), 1)
    assert rec0.v.is_zero()


# -- theta tracking ----------------------------------------------------------------


def test_theta_tracked_rules():
    alpha = a(1)
    t = ThetaTracked.from_poly(alpha, power=1)
    assert t.to_poly() == MultiPoly.const(Fraction(1, 2)) * MultiPoly.var("theta") * alpha
    s = t.shift(-1)
    assert s.to_poly() == alpha
    with pytest.raises(ValueError):
        ThetaTracked.from_poly(alpha, power=-1).to_poly()
    with pytest.raises(ValueError):
        ThetaTracked.from_poly(MultiPoly.var("theta"))
    assert (t + ThetaTracked.from_poly(-alpha, power=1)).is_zero()


# -- Moyal polynomials ------------------------------------------------------------


PINNED_USTAR = {
    "tadpole": "a.e1",
    "interleaved": "a.e1*a.e2 + 1/4*theta^2",
    "bridge": "1",
    "parallel": "a.e1 + a.e2",
    "fig6": "a.e1",
}


def test_nc_u_pinned_values():
    for name, want in PINNED_USTAR.items():
        rg = fixtures.build(name)
        assert nc_u(rg).to_poly().canonical_string() == want, name


def test_nc_u_delcon_examples():
    for name in PINNED_USTAR:
        rg = fixtures.build(name)
        assert nc_u_delcon(rg) == nc_u(rg), name
    # bridge plus planar loop contracts to the tadpole value
    rg = RibbonGraph(
        Graph(["x", "y"], [("e1", "x", "y"), ("e2", "y", "y")]),
        {"x": (("e1", "t"),), "y": (("e2", "t"), ("e2", "h"), ("e1", "h"))},
    )
    assert nc_u_delcon(rg).to_poly() == a(2)
    assert nc_u(rg).to_poly() == a(2)


def test_nc_u_from_multivariate_br_examples():
    for name in PINNED_USTAR:
        rg = fixtures.build(name)
        assert nc_u_from_multivariate_br(rg) == nc_u(rg), name


def test_commutative_limit_examples():
    assert commutative_limit(fixtures.build("tadpole")) == a(1)
    assert commutative_limit(fixtures.build("interleaved")) == a(1) * a(2)
    assert commutative_limit(fixtures.build("parallel")) == a(1) + a(2)


def test_moyal_chain_random():
    rng = random.Random(59)
    for _ in range(15):
        rg = random_ribbon_graph(rng, max_vertices=4, max_edges=6)
        u = nc_u(rg)
        assert nc_u_delcon(rg) == u
        assert nc_u_from_multivariate_br(rg) == u
        assert u.to_poly().substitute({"theta": MultiPoly.zero()}) == symanzik_u(rg.underlying())


def test_nc_u_requires_connected():
    rg = RibbonGraph(Graph(["x", "y"], []), {"x": (), "y": ()})
    with pytest.raises(ValueError):
        nc_u(rg)


def test_nc_v_real_examples():
    fig6 = fixtures.build("fig6")
    zero = zero_assignment(fig6.underlying())
    assert nc_v_real(fig6, zero).is_zero()
    p = momentum([2, 3, 0, 1])
    ext = {"f1": p, "f2": p}  # in and out: conserved
    r0 = nc_v_real(fig6, ext, face_choice=0)
    r1 = nc_v_real(fig6, ext, face_choice=1)
    assert r0 == r1
    # b = 1, the only two-quasi-tree is {e1} with empty complement:
    # (theta/2)^2 * p^2 with p^2 = 4 + 9 + 0 + 1
    want = MultiPoly.const(Fraction(14, 4)) * MultiPoly.var("theta") ** 2
    assert r0.to_poly() == want
    # a graph without two-quasi-trees gives the empty sum
    bridge = fixtures.build("bridge")
    assert nc_v_real(bridge, zero_assignment(bridge.underlying())).is_zero()


def test_nc_v_imag_examples():
    fig6 = fixtures.build("fig6")
    p = momentum([1, 2, 3, 4])
    ext = {"f1": p, "f2": p}
    # both legs carry the same momentum: the self-wedge vanishes
    assert nc_v_imag(fig6, ext).is_zero()
    # with at most one nonzero momentum the phase is always zero
    host = fixtures.build("ribbonhost")
    ext2 = {"f1": momentum([1, 1, 0, 0]), "f2": momentum([1, 1, 0, 0])}
    assert nc_v_imag(host, ext2).is_zero()


def test_phase_psi_nonzero_and_cyclic_invariant():
    # one vertex, four legs around a planar loop traced into a single face
    g = Graph(
        ["v"],
        [("e1", "v", "v")],
        [("f1", "v", "in"), ("f2", "v", "in"), ("f3", "v", "out"), ("f4", "v", "out")],
    )
    rg = RibbonGraph(
        g,
        {
            "v": (
                ("e1", "t"),
                ("e1", "h"),
                ("f1", "x"),
                ("f2", "x"),
                ("f3", "x"),
                ("f4", "x"),
            )
        },
    )
    rng = random.Random(61)
    saw_nonzero = False
    for _ in range(20):
        ext = random_conserved_momenta(rng, g)
        for qt in rg.quasi_trees():
            boundary = rg.face_boundary_order(rg.faces(qt)[0])
            base = phase_psi(boundary, ext)
            saw_nonzero |= base != 0
            for s in range(1, len(boundary)):
                assert phase_psi(boundary, ext, start=s) == base
    assert saw_nonzero


def test_nc_v_real_face_choice_invariance_random():
    rng = random.Random(67)
    for _ in range(10):
        rg = random_ribbon_graph(rng, max_vertices=3, max_edges=4, max_legs=4)
        ext = random_conserved_momenta(rng, rg.underlying())
        assert nc_v_real(rg, ext, face_choice=0) == nc_v_real(rg, ext, face_choice=1)


def test_momenta_json_rejects_floats_and_bad_dirs():
    g = fixtures.build("fig6")
    with pytest.raises(ValueError, match="exact"):
        load_momenta_json(g.underlying(), {"f1": {"p": [0.5, 0, 0, 0]}, "f2": {"p": [0, 0, 0, 0]}})
    with pytest.raises(ValueError, match="contradicts"):
        load_momenta_json(
            g.underlying(),
            {"f1": {"p": [0, 0, 0, 0], "dir": "out"}, "f2": {"p": [0, 0, 0, 0], "dir": "out"}},
        )
    ok = load_momenta_json(
        g.underlying(), {"f1": {"p": ["1/2", 0, 0, 0]}, "f2": {"p": ["1/2", 0, 0, 0]}}
    )
    assert ok["f1"][0] == Fraction(1, 2)
