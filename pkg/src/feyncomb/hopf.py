"""Connes-Kreimer Hopf algebra of 1PI graphs and the BPHZ machinery.

The algebra is the free commutative algebra on isomorphism classes of 1PI
graphs; elements are integer combinations of multisets of canonical labels
(GraphSum), the empty multiset being the unit.  The coproduct sums over
families of vertex-disjoint divergent subgraphs; a family of size two or
more stands for the disjoint union (product) of its members.

Divergence models:
  phi4  connected 1PI subgraphs with one or more internal edges and exactly
        2 or 4 external legs (half-edges leaving the subgraph)
  gw    the same on ribbon graphs, additionally planar regular
  core  every connected 1PI subgraph with at least one internal edge

Subgraphs are edge subsets; their external legs are the cut half-edges plus
the host's own legs attached inside.  Shrinking a subgraph keeps ribbon
structure by reading the cut half-edges off the subgraph's single broken
face, so the gw model stays inside ribbon graphs.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Mapping

from .formal import FormalAmplitude
from .graphs import Edge, EdgeSubset, Graph, Leg
from .ribbon import RibbonGraph, Token, is_leg_token

GraphLike = Graph | RibbonGraph

MODELS = ("phi4", "gw", "core")

Mono = tuple[str, ...]


def underlying(g: GraphLike) -> Graph:
    return g.graph if isinstance(g, RibbonGraph) else g


# -- free commutative algebra elements -----------------------------------------


class GraphSum:
    """Integer combination of multisets of canonical graph labels."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Mono, int] | None = None):
        clean = {m: c for m, c in (terms or {}).items() if c != 0}
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GraphSum is immutable")

    @staticmethod
    def zero() -> GraphSum:
        return GraphSum()

    @staticmethod
    def unit() -> GraphSum:
        return GraphSum({(): 1})

    @staticmethod
    def from_label(label: str) -> GraphSum:
        return GraphSum({(label,): 1})

    @staticmethod
    def monomial(mono: Iterable[str]) -> GraphSum:
        return GraphSum({tuple(sorted(mono)): 1})

    def __add__(self, other: GraphSum) -> GraphSum:
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return GraphSum(terms)

    def __neg__(self) -> GraphSum:
        return GraphSum({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: GraphSum) -> GraphSum:
        return self + (-other)

    def __mul__(self, other: GraphSum | int) -> GraphSum:
        if isinstance(other, int):
            return GraphSum({m: c * other for m, c in self.terms.items()})
        out: dict[Mono, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                out[m] = out.get(m, 0) + c1 * c2
        return GraphSum(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, GraphSum):
            return NotImplemented
        return self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def counit(self) -> int:
        """epsilon: coefficient of the empty multiset."""
        return self.terms.get((), 0)

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mono, coeff in sorted(self.terms.items()):
            body = "*".join(f"[{l}]" for l in mono) if mono else "1"
            mag = body if abs(coeff) == 1 else f"{abs(coeff)}*{body}"
            if not pieces:
                pieces.append(mag if coeff > 0 else "-" + mag)
            else:
                pieces.append((" + " if coeff > 0 else " - ") + mag)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"GraphSum({self.render()})"


class TensorSum:
    """Integer combination of ordered pairs of GraphSum monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[Mono, Mono], int] | None = None):
        clean = {k: c for k, c in (terms or {}).items() if c != 0}
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TensorSum is immutable")

    @staticmethod
    def zero() -> TensorSum:
        return TensorSum()

    @staticmethod
    def unit() -> TensorSum:
        return TensorSum({((), ()): 1})

    @staticmethod
    def tensor(left: Iterable[str], right: Iterable[str], coeff: int = 1) -> TensorSum:
        return TensorSum({(tuple(sorted(left)), tuple(sorted(right))): coeff})

    def __add__(self, other: TensorSum) -> TensorSum:
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return TensorSum(terms)

    def __mul__(self, other: TensorSum | int) -> TensorSum:
        if isinstance(other, int):
            return TensorSum({k: c * other for k, c in self.terms.items()})
        out: dict[tuple[Mono, Mono], int] = {}
        for (l1, r1), c1 in self.terms.items():
            for (l2, r2), c2 in other.terms.items():
                k = (tuple(sorted(l1 + l2)), tuple(sorted(r1 + r2)))
                out[k] = out.get(k, 0) + c1 * c2
        return TensorSum(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorSum):
            return NotImplemented
        return self.terms == other.terms

    def render(self) -> str:
        if not self.terms:
            return "0"

        def monotext(m: Mono) -> str:
            return "*".join(f"[{l}]" for l in m) if m else "1"

        pieces = []
        for (a, b), coeff in sorted(self.terms.items()):
            body = f"{monotext(a)} (x) {monotext(b)}"
            mag = body if abs(coeff) == 1 else f"{abs(coeff)}*{body}"
            if not pieces:
                pieces.append(mag if coeff > 0 else "-" + mag)
            else:
                pieces.append((" + " if coeff > 0 else " - ") + mag)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"TensorSum({self.render()})"


# -- structural subgraph machinery ------------------------------------------------


def member_vertices(g: GraphLike, member: EdgeSubset) -> frozenset[str]:
    base = underlying(g)
    verts: set[str] = set()
    for eid in member:
        e = base.edge(eid)
        verts.add(e.tail)
        verts.add(e.head)
    return frozenset(verts)


def subgraph_external_legs(
    g: GraphLike, member: EdgeSubset, vertices: Iterable[str] | None = None
) -> int:
    """Half-edges leaving the subgraph: cut edge ends plus host legs inside.

    `vertices` overrides the induced vertex set, so a single vertex (the
    edgeless subgraph) can be queried: its leg count is its degree.
    """
    base = underlying(g)
    mv = member_vertices(g, member) if vertices is None else frozenset(vertices)
    count = 0
    for e in base.edges:
        if e.id in member:
            continue
        count += (e.tail in mv) + (e.head in mv)
    count += sum(1 for l in base.legs if l.vertex in mv)
    return count


def _cut_leg_id(edge_id: str, end: str) -> str:
    return f"cut.{edge_id}.{end}"


def _host_token_of_leg(leg_id: str) -> Token:
    if leg_id.startswith("cut."):
        eid, end = leg_id[4:].rsplit(".", 1)
        return (eid, end)
    return (leg_id, "x")


def member_graph(g: GraphLike, member: EdgeSubset) -> GraphLike:
    """The subgraph as a standalone graph; cut half-edges become its legs."""
    base = underlying(g)
    mv = member_vertices(g, member)
    verts = [v for v in base.vertices if v in mv]
    edges = [e for e in base.edges if e.id in member]
    legs: list[Leg] = []
    for e in base.edges:
        if e.id in member:
            continue
        if e.tail in mv:
            legs.append(Leg(_cut_leg_id(e.id, "t"), e.tail, "out"))
        if e.head in mv:
            legs.append(Leg(_cut_leg_id(e.id, "h"), e.head, "in"))
    for l in base.legs:
        if l.vertex in mv:
            legs.append(l)
    sub = Graph(verts, edges, legs)
    if isinstance(g, Graph):
        return sub
    rot: dict[str, tuple[Token, ...]] = {}
    for v in verts:
        seq = []
        for t in g.rotation[v]:
            if is_leg_token(t) or t[0] in member:
                seq.append(t)
            else:
                seq.append((_cut_leg_id(t[0], t[1]), "x"))
        rot[v] = tuple(seq)
    return RibbonGraph(sub, rot)


def cograph(g: GraphLike, family: Iterable[EdgeSubset]) -> GraphLike:
    """Shrink each family member to a single vertex.

    For ribbon graphs the new vertex inherits the cyclic order of the cut
    half-edges along the member's single broken face.
    """
    base = underlying(g)
    members = sorted((frozenset(m) for m in family), key=sorted)
    vsets = [member_vertices(g, m) for m in members]
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if vsets[i] & vsets[j]:
                raise ValueError("family members must be vertex-disjoint")
    union_edges: set[str] = set()
    for m in members:
        union_edges |= m
    used = set(base.vertices)
    new_ids = []
    for m in members:
        nid = f"c.{min(m)}"
        while nid in used:
            nid += "'"
        used.add(nid)
        new_ids.append(nid)
    vmap: dict[str, str] = {}
    for vs, nid in zip(vsets, new_ids):
        for v in vs:
            vmap[v] = nid

    def ren(v: str) -> str:
        return vmap.get(v, v)

    verts = [v for v in base.vertices if v not in vmap] + new_ids
    edges = [Edge(e.id, ren(e.tail), ren(e.head)) for e in base.edges if e.id not in union_edges]
    legs = [Leg(l.id, ren(l.vertex), l.dir) for l in base.legs]
    shrunk = Graph(verts, edges, legs)
    if isinstance(g, Graph):
        return shrunk
    rot = {v: g.rotation[v] for v in base.vertices if v not in vmap}
    for m, nid in zip(members, new_ids):
        sub = member_graph(g, m)
        assert isinstance(sub, RibbonGraph)
        seq: list[Token] = []
        if sub.legs:
            broken = [f for f in sub.faces() if f.broken]
            if len(broken) != 1:
                raise ValueError(
                    "ribbon shrink needs all subgraph legs on one boundary face"
                )
            for lid in broken[0].leg_ids():
                seq.append(_host_token_of_leg(lid))
        rot[nid] = tuple(seq)
    return RibbonGraph(shrunk, rot)


# -- graph insertion (the dual of shrinking) -----------------------------------------


def insert(host: GraphLike, sub: GraphLike, gluing: Mapping[str, Token]) -> GraphLike:
    """Insert `sub` into `host` according to gluing data.

    `gluing` maps every external leg id of `sub` to a host half-edge token:
    either all incidences of one host vertex (vertex insertion, 4-leg
    subgraphs) or the two ends (edge_id, "t") / (edge_id, "h") of one host
    edge (propagator insertion, 2-leg subgraphs).  Ribbon insertion must
    respect the cyclic ordering and raises otherwise.
    """
    if isinstance(host, RibbonGraph) != isinstance(sub, RibbonGraph):
        raise ValueError("host and inserted graph must both be plain or both ribbon")
    hbase = underlying(host)
    sbase = underlying(sub)
    sub_leg_ids = {l.id for l in sbase.legs}
    if set(gluing) != sub_leg_ids:
        raise ValueError("gluing must cover exactly the inserted graph's legs")
    targets = {tuple(t): lid for lid, t in ((k, gluing[k]) for k in gluing)}
    if len(targets) != len(gluing):
        raise ValueError("gluing targets must be distinct")

    edge_targets = {t for t in targets if t[1] in ("t", "h")}
    leg_targets = {t for t in targets if t[1] == "x"}
    edge_ids_hit = {t[0] for t in edge_targets}
    if (
        len(gluing) == 2
        and not leg_targets
        and len(edge_ids_hit) == 1
        and {t[1] for t in edge_targets} == {"t", "h"}
    ):
        return _insert_on_edge(host, sub, targets)
    return _insert_at_vertex(host, sub, targets)


def _fresh_names(base_ids: set[str], wanted: Iterable[str]) -> dict[str, str]:
    out = {}
    for w in wanted:
        nid = f"i.{w}"
        while nid in base_ids:
            nid = "i." + nid
        base_ids.add(nid)
        out[w] = nid
    return out


def _token_vertex(g: Graph, tok: Token) -> str:
    if tok[1] == "t":
        return g.edge(tok[0]).tail
    if tok[1] == "h":
        return g.edge(tok[0]).head
    return g.leg(tok[0]).vertex


def _insert_at_vertex(host: GraphLike, sub: GraphLike, targets: dict[Token, str]) -> GraphLike:
    hbase = underlying(host)
    sbase = underlying(sub)
    sites = {_token_vertex(hbase, t) for t in targets}
    if len(sites) != 1:
        raise ValueError("vertex insertion needs all gluing targets at one vertex")
    site = sites.pop()
    incidences: list[Token] = []
    for e in hbase.edges:
        if e.tail == site:
            incidences.append((e.id, "t"))
        if e.head == site:
            incidences.append((e.id, "h"))
    for l in hbase.legs:
        if l.vertex == site:
            incidences.append((l.id, "x"))
    if set(incidences) != set(targets) or len(incidences) != len(targets):
        raise ValueError("gluing must exhaust the insertion vertex's incidences")

    used = set(hbase.vertices) | {e.id for e in hbase.edges} | {l.id for l in hbase.legs}
    vren = _fresh_names(used, sbase.vertices)
    eren = _fresh_names(used, [e.id for e in sbase.edges])
    leg_vertex = {l.id: vren[l.vertex] for l in sbase.legs}

    def attach(tok: Token) -> str:
        return leg_vertex[targets[tok]]

    verts = [v for v in hbase.vertices if v != site] + [vren[v] for v in sbase.vertices]
    edges = []
    for e in hbase.edges:
        tail = attach((e.id, "t")) if e.tail == site else e.tail
        head = attach((e.id, "h")) if e.head == site else e.head
        edges.append(Edge(e.id, tail, head))
    edges += [Edge(eren[e.id], vren[e.tail], vren[e.head]) for e in sbase.edges]
    legs = [
        Leg(l.id, attach((l.id, "x")) if l.vertex == site else l.vertex, l.dir)
        for l in hbase.legs
    ]
    merged = Graph(verts, edges, legs)
    if isinstance(host, Graph):
        return merged

    # ribbon: check that the gluing respects the cyclic ordering
    assert isinstance(host, RibbonGraph) and isinstance(sub, RibbonGraph)
    broken = [f for f in sub.faces() if f.broken]
    if len(broken) != 1:
        raise ValueError("ribbon insertion needs the subgraph legs on one boundary face")
    boundary = list(broken[0].leg_ids())
    host_seq = [targets[t] for t in host.rotation[site]]
    if not _cyclic_rotation_of(host_seq, boundary):
        raise ValueError("gluing does not respect the cyclic ordering")

    def map_sub_token(tok: Token) -> Token:
        if is_leg_token(tok):
            inv = {lid: t for t, lid in targets.items()}
            return inv[tok[0]]
        return (eren[tok[0]], tok[1])

    rot = {v: seq for v, seq in host.rotation.items() if v != site}
    for v in sbase.vertices:
        rot[vren[v]] = tuple(map_sub_token(t) for t in sub.rotation[v])
    return RibbonGraph(merged, rot)


def _cyclic_rotation_of(a: list, b: list) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = b + b
    return any(doubled[i : i + len(a)] == a for i in range(len(b)))


def _insert_on_edge(host: GraphLike, sub: GraphLike, targets: dict[Token, str]) -> GraphLike:
    hbase = underlying(host)
    sbase = underlying(sub)
    (eid,) = {t[0] for t in targets}
    e = hbase.edge(eid)
    leg_t = targets[(eid, "t")]
    leg_h = targets[(eid, "h")]

    used = set(hbase.vertices) | {x.id for x in hbase.edges} | {l.id for l in hbase.legs}
    vren = _fresh_names(used, sbase.vertices)
    eren = _fresh_names(used, [x.id for x in sbase.edges])
    new_eid = _fresh_names(used, [leg_h])[leg_h]
    va = vren[sbase.leg(leg_t).vertex]
    vb = vren[sbase.leg(leg_h).vertex]

    verts = list(hbase.vertices) + [vren[v] for v in sbase.vertices]
    edges = [x for x in hbase.edges if x.id != eid]
    edges.append(Edge(eid, e.tail, va))
    edges.append(Edge(new_eid, vb, e.head))
    edges += [Edge(eren[x.id], vren[x.tail], vren[x.head]) for x in sbase.edges]
    legs = list(hbase.legs)
    merged = Graph(verts, edges, legs)
    if isinstance(host, Graph):
        return merged

    assert isinstance(host, RibbonGraph) and isinstance(sub, RibbonGraph)

    def map_sub_token(tok: Token) -> Token:
        if is_leg_token(tok):
            if tok[0] == leg_t:
                return (eid, "h")
            if tok[0] == leg_h:
                return (new_eid, "t")
            raise AssertionError("unexpected leg token")
        return (eren[tok[0]], tok[1])

    rot = {}
    for v, seq in host.rotation.items():
        rot[v] = tuple((new_eid, "h") if t == (eid, "h") else t for t in seq)
    for v in sbase.vertices:
        rot[vren[v]] = tuple(map_sub_token(t) for t in sub.rotation[v])
    return RibbonGraph(merged, rot)


# -- the Hopf algebra ---------------------------------------------------------------


class HopfAlgebra:
    """Coproduct, antipode and BPHZ operators for one divergence model.

    `include_tadpoles=False` drops subgraphs containing self-loops from the
    divergent class.  `products=False` restricts coproduct sums to single
    subgraphs (no disjoint unions); this deliberately breaks coassociativity
    and exists for the pinned negative test.
    """

    def __init__(self, model: str = "phi4", include_tadpoles: bool = True, products: bool = True):
        if model not in MODELS:
            raise ValueError(f"unknown model {model!r}; choose from {MODELS}")
        self.model = model
        self.include_tadpoles = include_tadpoles
        self.products = products
        self._graphs: dict[str, GraphLike] = {}
        self._coproducts: dict[str, TensorSum] = {}
        self._antipodes: dict[str, GraphSum] = {}
        self._phi_minus: dict[str, FormalAmplitude] = {}

    # -- label registry ------------------------------------------------------

    def label(self, g: GraphLike) -> str:
        lbl = g.canonical_form()
        self._graphs.setdefault(lbl, g)
        return lbl

    def graph_of(self, label: str) -> GraphLike:
        try:
            return self._graphs[label]
        except KeyError:
            raise KeyError(f"label {label!r} was never registered") from None

    def grading_label(self, label: str) -> int:
        return underlying(self.graph_of(label)).nullity()

    def grading_monomial(self, mono: Mono) -> int:
        return sum(self.grading_label(l) for l in mono)

    @staticmethod
    def grading(g: GraphLike) -> int:
        """Loop-number grading: the nullity."""
        return underlying(g).nullity()

    # -- divergent subgraphs ---------------------------------------------------

    def divergent_members(self, g: GraphLike) -> list[EdgeSubset]:
        """Connected 1PI proper subgraphs that are divergent under the model."""
        if self.model == "gw" and not isinstance(g, RibbonGraph):
            raise ValueError("the gw model is defined on ribbon graphs")
        base = underlying(g)
        ids = sorted(base.all_edges())
        out = []
        for r in range(1, len(ids)):
            for combo in itertools.combinations(ids, r):
                member = frozenset(combo)
                if self._member_ok(g, member):
                    out.append(member)
        out.sort(key=lambda m: (len(m), sorted(m)))
        return out

    def _member_ok(self, g: GraphLike, member: EdgeSubset) -> bool:
        base = underlying(g)
        if not self.include_tadpoles and any(base.edge(eid).is_loop for eid in member):
            return False
        mv = member_vertices(g, member)
        plain = Graph(
            [v for v in base.vertices if v in mv],
            [e for e in base.edges if e.id in member],
        )
        if not plain.is_one_pi():
            return False
        if self.model == "core":
            return True
        legs = subgraph_external_legs(g, member)
        if legs not in (2, 4):
            return False
        if self.model == "gw":
            if not isinstance(g, RibbonGraph):
                raise ValueError("the gw model is defined on ribbon graphs")
            sub = member_graph(g, member)
            assert isinstance(sub, RibbonGraph)
            return sub.is_planar_regular()
        return True

    def families(self, g: GraphLike) -> list[tuple[EdgeSubset, ...]]:
        """Nonempty sets of pairwise vertex-disjoint divergent subgraphs."""
        members = self.divergent_members(g)
        if not self.products:
            return [(m,) for m in members]
        vsets = [member_vertices(g, m) for m in members]
        out: list[tuple[EdgeSubset, ...]] = []

        def grow(start: int, chosen: list[EdgeSubset], used: frozenset[str]):
            for i in range(start, len(members)):
                if vsets[i] & used:
                    continue
                picked = chosen + [members[i]]
                out.append(tuple(picked))
                grow(i + 1, picked, used | vsets[i])

        grow(0, [], frozenset())
        return out

    # The coproduct's summation index: families of vertex-disjoint divergent
    # subgraphs (size >= 2 means the disjoint union).
    divergent_subgraphs = families

    def zimmermann_forests(self, g: GraphLike) -> list[tuple[EdgeSubset, ...]]:
        """All sets of divergent subgraphs that are pairwise nested or disjoint."""
        members = self.divergent_members(g)
        vsets = {m: member_vertices(g, m) for m in members}

        def compatible(a: EdgeSubset, b: EdgeSubset) -> bool:
            return not (vsets[a] & vsets[b]) or a < b or b < a

        out: list[tuple[EdgeSubset, ...]] = [()]

        def grow(start: int, chosen: list[EdgeSubset]):
            for i in range(start, len(members)):
                m = members[i]
                if all(compatible(m, c) for c in chosen):
                    picked = chosen + [m]
                    out.append(tuple(picked))
                    grow(i + 1, picked)

        grow(0, [])
        return out

    # -- coproduct, counit, antipode ----------------------------------------------

    def _family_monomial(self, g: GraphLike, family: tuple[EdgeSubset, ...]) -> Mono:
        return tuple(sorted(self.label(member_graph(g, m)) for m in family))

    def coproduct(self, g: GraphLike) -> TensorSum:
        base = underlying(g)
        if not base.is_one_pi():
            raise ValueError("coproduct requires a 1PI graph")
        lbl = self.label(g)
        cached = self._coproducts.get(lbl)
        if cached is not None:
            return cached
        total = TensorSum.tensor((lbl,), ()) + TensorSum.tensor((), (lbl,))
        for fam in self.families(g):
            left = self._family_monomial(g, fam)
            right = self.label(cograph(g, fam))
            total = total + TensorSum.tensor(left, (right,))
        self._coproducts[lbl] = total
        return total

    def coproduct_monomial(self, mono: Mono) -> TensorSum:
        """Multiplicative extension: Delta(ab) = Delta(a) Delta(b)."""
        total = TensorSum.unit()
        for lbl in mono:
            total = total * self.coproduct(self.graph_of(lbl))
        return total

    @staticmethod
    def counit(x: GraphSum) -> int:
        return x.counit()

    def antipode(self, g: GraphLike) -> GraphSum:
        return self._antipode_label(self.label(g))

    def _antipode_label(self, lbl: str) -> GraphSum:
        cached = self._antipodes.get(lbl)
        if cached is not None:
            return cached
        g = self.graph_of(lbl)
        total = -GraphSum.from_label(lbl)
        for fam in self.families(g):
            mono = self._family_monomial(g, fam)
            co = self.label(cograph(g, fam))
            total = total - self.antipode_monomial(mono) * GraphSum.from_label(co)
        self._antipodes[lbl] = total
        return total

    def antipode_monomial(self, mono: Mono) -> GraphSum:
        total = GraphSum.unit()
        for lbl in mono:
            total = total * self._antipode_label(lbl)
        return total

    # -- Hopf-axiom checks -----------------------------------------------------------

    def check_coassociativity(self, g: GraphLike) -> bool:
        delta = self.coproduct(g)
        left: dict[tuple[Mono, Mono, Mono], int] = {}
        right: dict[tuple[Mono, Mono, Mono], int] = {}
        for (a, b), c in delta.terms.items():
            for (a1, a2), c2 in self.coproduct_monomial(a).terms.items():
                key = (a1, a2, b)
                left[key] = left.get(key, 0) + c * c2
            for (b1, b2), c2 in self.coproduct_monomial(b).terms.items():
                key = (a, b1, b2)
                right[key] = right.get(key, 0) + c * c2
        left = {k: v for k, v in left.items() if v}
        right = {k: v for k, v in right.items() if v}
        return left == right

    def check_counit(self, g: GraphLike) -> bool:
        lbl = self.label(g)
        delta = self.coproduct(g)
        from_left = GraphSum.zero()
        from_right = GraphSum.zero()
        for (a, b), c in delta.terms.items():
            if not a:
                from_left = from_left + GraphSum.monomial(b) * c
            if not b:
                from_right = from_right + GraphSum.monomial(a) * c
        want = GraphSum.from_label(lbl)
        return from_left == want and from_right == want

    def check_hopf_axioms(self, g: GraphLike) -> bool:
        """m (S x id) Delta = u eps = m (id x S) Delta, both sides."""
        delta = self.coproduct(g)
        left = GraphSum.zero()
        right = GraphSum.zero()
        for (a, b), c in delta.terms.items():
            left = left + self.antipode_monomial(a) * GraphSum.monomial(b) * c
            right = right + GraphSum.monomial(a) * self.antipode_monomial(b) * c
        return left.is_zero() and right.is_zero()

    def check_grading(self, g: GraphLike) -> bool:
        total = underlying(g).nullity()
        for (a, b), _ in self.coproduct(g).terms.items():
            if self.grading_monomial(a) + self.grading_monomial(b) != total:
                return False
        return True

    # -- Feynman rules and BPHZ ---------------------------------------------------------

    def phi(self, mono: Mono) -> FormalAmplitude:
        total = FormalAmplitude.one()
        for lbl in mono:
            total = total * FormalAmplitude.phi(lbl)
        return total

    def twisted_antipode(self, g: GraphLike) -> FormalAmplitude:
        return self._phi_minus_label(self.label(g))

    def _phi_minus_label(self, lbl: str) -> FormalAmplitude:
        cached = self._phi_minus.get(lbl)
        if cached is not None:
            return cached
        g = self.graph_of(lbl)
        inner = FormalAmplitude.phi(lbl)
        for fam in self.families(g):
            mono = self._family_monomial(g, fam)
            co = self.label(cograph(g, fam))
            inner = inner + self.twisted_antipode_monomial(mono) * FormalAmplitude.phi(co)
        result = -(inner.project())
        self._phi_minus[lbl] = result
        return result

    def twisted_antipode_monomial(self, mono: Mono) -> FormalAmplitude:
        total = FormalAmplitude.one()
        for lbl in mono:
            total = total * self._phi_minus_label(lbl)
        return total

    def convolution(
        self,
        f: Callable[[Mono], FormalAmplitude],
        h: Callable[[Mono], FormalAmplitude],
        g: GraphLike,
    ) -> FormalAmplitude:
        """(f * h)(Gamma) = m (f x h) Delta(Gamma)."""
        total = FormalAmplitude.zero()
        for (a, b), c in self.coproduct(g).terms.items():
            total = total + c * (f(a) * h(b))
        return total

    def renormalized(self, g: GraphLike) -> FormalAmplitude:
        """phi_plus = phi_minus convolved with phi."""
        return self.convolution(self.twisted_antipode_monomial, self.phi, g)

    def bogoliubov_hopf(self, g: GraphLike) -> FormalAmplitude:
        """Rbar(Gamma) = phi(Gamma) + sum phi_minus(gamma) phi(Gamma/gamma)."""
        lbl = self.label(g)
        total = FormalAmplitude.phi(lbl)
        for fam in self.families(g):
            mono = self._family_monomial(g, fam)
            co = self.label(cograph(g, fam))
            total = total + self.twisted_antipode_monomial(mono) * FormalAmplitude.phi(co)
        return total

    def bogoliubov_forest(self, g: GraphLike) -> FormalAmplitude:
        """Rbar as the Zimmermann forest sum of counterterm products."""
        total = FormalAmplitude.zero()
        for forest in self.zimmermann_forests(g):
            maximal = [m for m in forest if not any(m < other for other in forest)]
            if maximal:
                outer = self.label(cograph(g, maximal))
            else:
                outer = self.label(g)
            term = FormalAmplitude.phi(outer)
            for m in forest:
                inside = [x for x in forest if x < m]
                inner_max = [x for x in inside if not any(x < y for y in inside)]
                sub = member_graph(g, m)
                shrunk = cograph(sub, inner_max) if inner_max else sub
                term = term * FormalAmplitude.phi(self.label(shrunk)).project()
            sign = -1 if len(forest) % 2 else 1
            total = total + sign * term
        return total
