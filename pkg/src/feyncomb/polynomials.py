"""Tutte and Bollobas-Riordan polynomial families, each by two routes.

Every polynomial here has a rank-nullity subset-sum definition (the semantic
reference) and a deletion/contraction recursion with terminal forms (the
cross-check).  The two must agree exactly; the acceptance suite pins them
together on fixtures and random corpora.

Variables: "x", "y" (Tutte), "q" and per-edge "b.<edge>" (multivariate
Tutte), "z" (Bollobas-Riordan face tracker), "k" (chromatic/flow argument).
External legs are ignored by everything in this module.
"""

from __future__ import annotations

from .graphs import Graph
from .poly import MultiPoly
from .ribbon import RibbonGraph

X = MultiPoly.var("x")
Y = MultiPoly.var("y")
Q = MultiPoly.var("q")
Z = MultiPoly.var("z")
K = MultiPoly.var("k")


def beta_var(edge_id: str) -> MultiPoly:
    return MultiPoly.var(f"b.{edge_id}")


# -- Tutte polynomial ------------------------------------------------------------


def tutte(g: Graph, method: str = "subset", memoize: bool = True) -> MultiPoly:
    """Tutte polynomial T(x, y) of a multigraph (legs ignored)."""
    if len(g.vertices) == 0:
        raise ValueError("tutte requires at least one vertex")
    if method == "subset":
        return _tutte_subset(g)
    if method == "delcon":
        return _tutte_delcon(g, {} if memoize else None)
    raise ValueError(f"unknown method {method!r}")


def _tutte_subset(g: Graph) -> MultiPoly:
    r_all = g.rank()
    xm = X - 1
    ym = Y - 1
    total = MultiPoly.zero()
    ids = sorted(g.all_edges())
    for mask in range(1 << len(ids)):
        subset = [ids[i] for i in range(len(ids)) if mask >> i & 1]
        total = total + xm ** (r_all - g.rank(subset)) * ym ** g.nullity(subset)
    return total


def _tutte_delcon(g: Graph, memo: dict[str, MultiPoly] | None) -> MultiPoly:
    key = g.canonical_form() if memo is not None else None
    if memo is not None and key in memo:
        return memo[key]
    regular = [e.id for e in g.edges if g.classify_edge(e.id) == "regular"]
    if regular:
        e = min(regular)
        result = _tutte_delcon(g.contract_edge(e), memo) + _tutte_delcon(g.delete_edge(e), memo)
    else:
        m = sum(1 for e in g.edges if g.classify_edge(e.id) == "bridge")
        n = sum(1 for e in g.edges if e.is_loop)
        result = X**m * Y**n
    if memo is not None:
        memo[key] = result
    return result


# -- multivariate Tutte polynomial -------------------------------------------------


def multivariate_tutte(g: Graph, method: str = "subset") -> MultiPoly:
    """Z(q, {beta_e}) = sum over edge subsets of q^k(A) * prod beta_e."""
    if len(g.vertices) == 0:
        raise ValueError("multivariate_tutte requires at least one vertex")
    if method == "subset":
        ids = sorted(g.all_edges())
        total = MultiPoly.zero()
        for mask in range(1 << len(ids)):
            subset = [ids[i] for i in range(len(ids)) if mask >> i & 1]
            term = Q ** g.components(subset)
            for eid in subset:
                term = term * beta_var(eid)
            total = total + term
        return total
    if method == "delcon":
        return _ztutte_delcon(g)
    raise ValueError(f"unknown method {method!r}")


def _ztutte_delcon(g: Graph) -> MultiPoly:
    # No memoization: the polynomial depends on edge ids, which the
    # isomorphism-class key forgets.
    if not g.edges:
        return Q ** len(g.vertices)
    e = min(g.edge_ids())
    return beta_var(e) * _ztutte_delcon(g.contract_edge(e)) + _ztutte_delcon(g.delete_edge(e))


def check_tutte_relation(g: Graph) -> bool:
    """Multivariate-to-Tutte specialization, with the q power cleared.

    q^-|V| Z at beta_e = y-1, q = (x-1)(y-1) equals (x-1)^(k(E)-|V|) T(x,y);
    both sides are multiplied by ((x-1)(y-1))^|V| so only true polynomials
    are ever compared.
    """
    z = multivariate_tutte(g, method="subset")
    t = tutte(g, method="subset")
    xm = X - 1
    ym = Y - 1
    bindings: dict[str, MultiPoly] = {"q": xm * ym}
    for e in g.edges:
        bindings[f"b.{e.id}"] = ym
    lhs = z.substitute(bindings)
    k_all = g.components()
    rhs = xm**k_all * ym ** len(g.vertices) * t
    return lhs == rhs


# -- chromatic and flow specializations ----------------------------------------------


def chromatic(g: Graph) -> MultiPoly:
    """Chromatic polynomial P(k) of a connected graph."""
    if not g.is_connected():
        raise ValueError("chromatic requires a connected graph")
    t = tutte(g, method="subset")
    p = t.substitute({"x": MultiPoly.one() - K, "y": MultiPoly.zero()})
    sign = -1 if (len(g.vertices) - 1) % 2 else 1
    return MultiPoly.const(sign) * K * p


def count_colorings_oracle(g: Graph, k: int) -> int:
    """Brute-force proper-coloring count over all k^|V| assignments."""
    if k <= 0:
        raise ValueError("k must be positive")
    if any(e.is_loop for e in g.edges):
        return 0
    verts = list(g.vertices)
    count = 0
    total = k ** len(verts)
    for code in range(total):
        color = {}
        c = code
        for v in verts:
            color[v] = c % k
            c //= k
        if all(color[e.tail] != color[e.head] for e in g.edges):
            count += 1
    return count


def flow_poly(g: Graph) -> MultiPoly:
    """Nowhere-zero flow polynomial F(k) of a connected graph."""
    if not g.is_connected():
        raise ValueError("flow_poly requires a connected graph")
    t = tutte(g, method="subset")
    p = t.substitute({"x": MultiPoly.zero(), "y": MultiPoly.one() - K})
    sign = -1 if (len(g.edges) - len(g.vertices) + 1) % 2 else 1
    return MultiPoly.const(sign) * p


def count_flows_oracle(g: Graph, k: int) -> int:
    """Brute-force nowhere-zero Z_k flow count ((k-1)^|E| assignments).

    Conservation is checked mod k at every vertex with the stored edge
    orientations; the count is orientation-independent.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    edges = list(g.edges)
    count = 0
    total = (k - 1) ** len(edges)
    for code in range(total):
        value = {}
        c = code
        for e in edges:
            value[e.id] = 1 + c % (k - 1)
            c //= k - 1
        ok = True
        for v in g.vertices:
            net = 0
            for e in edges:
                if e.tail == v:
                    net += value[e.id]
                if e.head == v:
                    net -= value[e.id]
            if net % k != 0:
                ok = False
                break
        if ok:
            count += 1
    return count


# -- Bollobas-Riordan polynomial --------------------------------------------------------


def bollobas_riordan(rg: RibbonGraph, method: str = "subset", memoize: bool = True) -> MultiPoly:
    """R(x, y, z) with z tracking the face deficiency k(H) - F(H) + n(H)."""
    if len(rg.vertices) == 0:
        raise ValueError("bollobas_riordan requires at least one vertex")
    if method == "subset":
        return _br_subset(rg)
    if method == "delcon":
        return _br_delcon(rg, {} if memoize else None)
    raise ValueError(f"unknown method {method!r}")


def _br_subset(rg: RibbonGraph) -> MultiPoly:
    g = rg.graph
    r_all = g.rank()
    xm = X - 1
    ids = sorted(rg.all_edges())
    total = MultiPoly.zero()
    for mask in range(1 << len(ids)):
        subset = frozenset(ids[i] for i in range(len(ids)) if mask >> i & 1)
        n_h = g.nullity(subset)
        zexp = g.components(subset) - rg.face_count(subset) + n_h
        total = total + xm ** (r_all - g.rank(subset)) * Y**n_h * Z**zexp
    return total


def _br_delcon(rg: RibbonGraph, memo: dict[str, MultiPoly] | None) -> MultiPoly:
    key = rg.canonical_form() if memo is not None else None
    if memo is not None and key in memo:
        return memo[key]
    g = rg.graph
    kinds = {e.id: g.classify_edge(e.id) for e in g.edges}
    regular = sorted(e for e, kind in kinds.items() if kind == "regular")
    bridges = sorted(e for e, kind in kinds.items() if kind == "bridge")
    if regular:
        e = regular[0]
        result = _br_delcon(rg.ribbon_contract(e), memo) + _br_delcon(rg.ribbon_delete(e), memo)
    elif bridges:
        result = X * _br_delcon(rg.ribbon_contract(bridges[0]), memo)
    else:
        result = _br_terminal(rg)
    if memo is not None:
        memo[key] = result
    return result


def _br_terminal(rg: RibbonGraph) -> MultiPoly:
    """Only self-loops remain: product over vertices of y^|H| z^2g(H) sums."""
    total = MultiPoly.one()
    for v in rg.vertices:
        seq = tuple(t for t in rg.rotation[v] if t[1] != "x")
        loop_ids = sorted({t[0] for t in seq})
        vertex_sum = MultiPoly.zero()
        for mask in range(1 << len(loop_ids)):
            chosen = frozenset(loop_ids[i] for i in range(len(loop_ids)) if mask >> i & 1)
            local = tuple(t for t in seq if t[0] in chosen)
            f = _one_vertex_face_count(local)
            two_genus = 1 + len(chosen) - f
            vertex_sum = vertex_sum + Y ** len(chosen) * Z**two_genus
        total = total * vertex_sum
    return total


def _one_vertex_face_count(seq: tuple) -> int:
    if not seq:
        return 1
    succ = {tok: seq[(i + 1) % len(seq)] for i, tok in enumerate(seq)}
    visited = set()
    faces = 0
    for tok in seq:
        if tok in visited:
            continue
        faces += 1
        cur = tok
        while cur not in visited:
            visited.add(cur)
            mate = (cur[0], "h" if cur[1] == "t" else "t")
            cur = succ[mate]
    return faces


def multivariate_br(rg: RibbonGraph) -> MultiPoly:
    """Z(x, {beta_e}, z) = sum over H of x^k(H) * prod beta_e * z^F(H)."""
    if len(rg.vertices) == 0:
        raise ValueError("multivariate_br requires at least one vertex")
    g = rg.graph
    ids = sorted(rg.all_edges())
    total = MultiPoly.zero()
    for mask in range(1 << len(ids)):
        subset = frozenset(ids[i] for i in range(len(ids)) if mask >> i & 1)
        term = X ** g.components(subset) * Z ** rg.face_count(subset)
        for eid in sorted(subset):
            term = term * beta_var(eid)
        total = total + term
    return total


def check_br_tutte_specialization(rg: RibbonGraph) -> bool:
    """R(x, y-1, z:=1) must equal the Tutte polynomial of the underlying graph.

    With this module's variable convention the y slot of R carries y (not
    y-1), so the classical z:=1 collapse shifts y accordingly; the literal
    y-unshifted substitution already fails on a single planar self-loop.
    """
    r = bollobas_riordan(rg, method="subset")
    collapsed = r.substitute({"y": Y - 1, "z": MultiPoly.one()})
    return collapsed == tutte(rg.underlying(), method="subset")
