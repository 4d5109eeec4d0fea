"""Ribbon graphs: multigraphs with a rotation system.

A rotation system assigns to each vertex the cyclic order of the half-edges
incident to it: two half-edges per internal edge, one per external leg.
Half-edge tokens are pairs: (edge_id, "t") / (edge_id, "h") for the tail and
head ends of an internal edge, (leg_id, "x") for an external leg.

Faces are traced with the next-half-edge map: from an internal half-edge,
follow the edge to its partner half-edge, then walk forward in that vertex's
rotation; legs encountered on the way are recorded as face markers but do
not connect faces.  A vertex whose induced rotation carries no internal
half-edge contributes one face of its own.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .graphs import Edge, EdgeSubset, Graph, Leg, _signature_bijections

Token = tuple[str, str]  # (edge_id, "t"|"h") or (leg_id, "x")


def is_leg_token(tok: Token) -> bool:
    return tok[1] == "x"


def partner(tok: Token) -> Token:
    if tok[1] == "t":
        return (tok[0], "h")
    if tok[1] == "h":
        return (tok[0], "t")
    raise ValueError(f"leg token {tok} has no partner")


def token_str(tok: Token) -> str:
    return tok[0] if tok[1] == "x" else f"{tok[0]}.{tok[1]}"


@dataclass(frozen=True)
class Face:
    """One boundary component: its token cycle and an anchor vertex."""

    cycle: tuple[Token, ...]
    vertex: str

    def leg_ids(self) -> tuple[str, ...]:
        return tuple(t[0] for t in self.cycle if is_leg_token(t))

    @property
    def broken(self) -> bool:
        return any(is_leg_token(t) for t in self.cycle)


@dataclass(frozen=True)
class TwoQuasiTree:
    edges: EdgeSubset
    faces: tuple[Face, Face]


class RibbonGraph:
    """Immutable graph plus rotation system."""

    __slots__ = ("graph", "rotation")

    def __init__(self, graph: Graph, rotation: Mapping[str, Sequence[Token]]):
        rot = {v: tuple(seq) for v, seq in rotation.items()}
        if set(rot) != set(graph.vertices):
            raise ValueError("rotation must cover exactly the vertex set")
        expected: dict[Token, str] = {}
        for e in graph.edges:
            expected[(e.id, "t")] = e.tail
            expected[(e.id, "h")] = e.head
        for l in graph.legs:
            expected[(l.id, "x")] = l.vertex
        seen: set[Token] = set()
        for v, seq in rot.items():
            for tok in seq:
                if tok not in expected:
                    raise ValueError(f"unknown half-edge {token_str(tok)} at {v}")
                if expected[tok] != v:
                    raise ValueError(f"half-edge {token_str(tok)} listed at wrong vertex {v}")
                if tok in seen:
                    raise ValueError(f"half-edge {token_str(tok)} appears twice")
                seen.add(tok)
        if seen != set(expected):
            missing = sorted(token_str(t) for t in set(expected) - seen)
            raise ValueError(f"rotation misses half-edges: {missing}")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "rotation", rot)

    def __setattr__(self, name, value):
        raise AttributeError("RibbonGraph is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, RibbonGraph):
            return NotImplemented
        if self.graph != other.graph:
            return False
        # rotations compared as cyclic sequences
        for v in self.graph.vertices:
            if not _cyclic_equal(self.rotation[v], other.rotation[v]):
                return False
        return True

    def __repr__(self) -> str:
        g = self.graph
        return f"RibbonGraph(V={len(g.vertices)}, E={len(g.edges)}, legs={len(g.legs)})"

    # -- convenience passthroughs ------------------------------------------

    def underlying(self) -> Graph:
        return self.graph

    @property
    def vertices(self):
        return self.graph.vertices

    @property
    def edges(self):
        return self.graph.edges

    @property
    def legs(self):
        return self.graph.legs

    def all_edges(self) -> EdgeSubset:
        return self.graph.all_edges()

    # -- face tracing ----------------------------------------------------------

    def _induced_rotation(self, subset: EdgeSubset | None) -> dict[str, tuple[Token, ...]]:
        if subset is None:
            return self.rotation
        keep = frozenset(subset)
        return {
            v: tuple(t for t in seq if is_leg_token(t) or t[0] in keep)
            for v, seq in self.rotation.items()
        }

    def faces(self, subset: Iterable[str] | None = None) -> list[Face]:
        """Boundary components of the spanning sub-ribbon-graph (V, subset)."""
        sub = None if subset is None else frozenset(subset)
        rot = self._induced_rotation(sub)
        succ: dict[Token, Token] = {}
        vertex_of: dict[Token, str] = {}
        for v in self.graph.vertices:
            seq = rot[v]
            for i, tok in enumerate(seq):
                succ[tok] = seq[(i + 1) % len(seq)]
                vertex_of[tok] = v
        out: list[Face] = []
        visited: set[Token] = set()
        for v in self.graph.vertices:
            for tok in rot[v]:
                if is_leg_token(tok) or tok in visited:
                    continue
                cycle: list[Token] = []
                cur = tok
                while True:
                    visited.add(cur)
                    cycle.append(cur)
                    step = succ[partner(cur)]
                    while is_leg_token(step):
                        cycle.append(step)
                        step = succ[step]
                    cur = step
                    if cur == tok:
                        break
                out.append(Face(tuple(cycle), vertex_of[tok]))
        for v in self.graph.vertices:
            seq = rot[v]
            if all(is_leg_token(t) for t in seq):
                out.append(Face(seq, v))
        return out

    def face_count(self, subset: Iterable[str] | None = None) -> int:
        return len(self.faces(subset))

    def genus(self, subset: Iterable[str] | None = None) -> int:
        """Total genus, per connected component via V - E + F = 2 - 2g."""
        sub = self.all_edges() if subset is None else frozenset(subset)
        comps = self.graph.component_vertex_sets(sub)
        faces = self.faces(sub)
        total = 0
        for comp in comps:
            v_c = len(comp)
            e_c = sum(1 for eid in sub if self.graph.edge(eid).tail in comp)
            f_c = sum(1 for f in faces if f.vertex in comp)
            euler = v_c - e_c + f_c
            if euler % 2 != 0 or euler > 2:
                raise AssertionError(f"bad Euler characteristic {euler}")
            total += (2 - euler) // 2
        return total

    def broken_faces(self) -> int:
        return sum(1 for f in self.faces() if f.broken)

    def is_planar_regular(self) -> bool:
        return self.genus() == 0 and self.broken_faces() == 1

    def face_boundary_order(self, face: Face) -> list[tuple[str, int]]:
        """Legs along the face with incidence signs (+1 in, -1 out).

        The cyclic list is rotated to start at the smallest leg id; any
        cyclic rotation represents the same boundary order.
        """
        legs = list(face.leg_ids())
        if not legs:
            return []
        start = legs.index(min(legs))
        ordered = legs[start:] + legs[:start]
        return [(lid, self.graph.leg(lid).sign) for lid in ordered]

    # -- surgery -------------------------------------------------------------

    def ribbon_delete(self, edge_id: str) -> RibbonGraph:
        self.graph.edge(edge_id)
        rot = {
            v: tuple(t for t in seq if is_leg_token(t) or t[0] != edge_id)
            for v, seq in self.rotation.items()
        }
        return RibbonGraph(self.graph.delete_edge(edge_id), rot)

    def ribbon_contract(self, edge_id: str) -> RibbonGraph:
        """Contract a non-loop edge, splicing the two rotations."""
        e = self.graph.edge(edge_id)
        if e.is_loop:
            raise ValueError("ribbon contraction of a self-loop is not defined")
        seq_t = self.rotation[e.tail]
        seq_h = self.rotation[e.head]
        i = seq_t.index((edge_id, "t"))
        j = seq_h.index((edge_id, "h"))
        spliced = seq_t[:i] + seq_h[j + 1 :] + seq_h[:j] + seq_t[i + 1 :]
        merged = min(e.tail, e.head)
        rot = {v: seq for v, seq in self.rotation.items() if v not in (e.tail, e.head)}
        rot[merged] = spliced
        return RibbonGraph(self.graph.contract_edge(edge_id), rot)

    def reorient(self, edge_ids: Iterable[str]) -> RibbonGraph:
        """Flip edge orientations, keeping the embedding identical."""
        flip = set(edge_ids)

        def swap(tok: Token) -> Token:
            if tok[1] != "x" and tok[0] in flip:
                return (tok[0], "h" if tok[1] == "t" else "t")
            return tok

        rot = {v: tuple(swap(t) for t in seq) for v, seq in self.rotation.items()}
        return RibbonGraph(self.graph.reorient(flip), rot)

    # -- quasi-trees -----------------------------------------------------------

    def quasi_trees(self) -> list[EdgeSubset]:
        """Spanning connected sub-ribbon-graphs with exactly one face."""
        if not self.graph.is_connected():
            raise ValueError("quasi_trees requires a connected ribbon graph")
        out = []
        ids = sorted(self.all_edges())
        for r in range(len(ids) + 1):
            for combo in itertools.combinations(ids, r):
                sub = frozenset(combo)
                if self.graph.components(sub) == 1 and self.face_count(sub) == 1:
                    out.append(sub)
        return out

    def two_quasi_trees(self) -> list[TwoQuasiTree]:
        """Spanning connected sub-ribbon-graphs with exactly two faces."""
        if not self.graph.is_connected():
            raise ValueError("two_quasi_trees requires a connected ribbon graph")
        out = []
        ids = sorted(self.all_edges())
        for r in range(len(ids) + 1):
            for combo in itertools.combinations(ids, r):
                sub = frozenset(combo)
                if self.graph.components(sub) != 1:
                    continue
                fs = self.faces(sub)
                if len(fs) == 2:
                    out.append(TwoQuasiTree(sub, (fs[0], fs[1])))
        return out

    # -- canonical form -----------------------------------------------------------

    def canonical_form(self) -> str:
        """Isomorphism-class key including the rotation system.

        Minimizes an encoding over signature-compatible vertex bijections and
        all cyclic starting points; orientation and ids are ignored.
        """
        g = self.graph
        sig: dict[str, tuple] = {}
        for v in g.vertices:
            seq = self.rotation[v]
            loops = sum(1 for e in g.edges if e.is_loop and e.tail == v)
            legc = sum(1 for t in seq if is_leg_token(t))
            sig[v] = (len(seq), loops, legc)

        best = None
        verts = list(g.vertices)
        for mapping in _signature_bijections(verts, sig):
            order = sorted(verts, key=lambda v: mapping[v])
            lengths = [len(self.rotation[v]) for v in order]
            start_ranges = [range(max(1, n)) for n in lengths]
            for starts in itertools.product(*start_ranges):
                enc = self._encode_rotation(order, starts)
                if best is None or enc < best:
                    best = enc
        blocks, codes = best
        body = ",".join(str(c) for c in codes)
        return f"R{'/'.join(str(b) for b in blocks)}|{body}"

    def _encode_rotation(self, order: list[str], starts: tuple[int, ...]) -> tuple:
        pos: dict[Token, int] = {}
        flat: list[Token] = []
        blocks = []
        for v, s in zip(order, starts):
            seq = self.rotation[v]
            n = len(seq)
            rolled = tuple(seq[(s + i) % n] for i in range(n)) if n else ()
            blocks.append(n)
            for tok in rolled:
                pos[tok] = len(flat)
                flat.append(tok)
        codes = []
        for tok in flat:
            codes.append(-1 if is_leg_token(tok) else pos[partner(tok)])
        return (tuple(blocks), tuple(codes))

    # -- JSON fixture format --------------------------------------------------------

    def to_json_dict(self) -> dict:
        d = self.graph.to_json_dict()
        d["type"] = "ribbon"
        d["rotation"] = {
            v: [token_str(t) for t in seq] for v, seq in sorted(self.rotation.items())
        }
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=False) + "\n"


def _cyclic_equal(a: Sequence, b: Sequence) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    bb = list(b) + list(b)
    la = list(a)
    return any(bb[i : i + len(la)] == la for i in range(len(b)))


def ribbon_from_json_dict(data: dict) -> RibbonGraph:
    """Parse the fixture format with type "ribbon" (rotation required)."""
    if data.get("type") != "ribbon":
        raise ValueError(f"expected type 'ribbon', got {data.get('type')!r}")
    if "rotation" not in data:
        raise ValueError("ribbon fixture missing field 'rotation'")
    base = dict(data)
    base["type"] = "graph"
    from .graphs import graph_from_json_dict

    graph = graph_from_json_dict(base)
    edge_ids = {e.id for e in graph.edges}
    leg_ids = {l.id for l in graph.legs}
    rotation: dict[str, list[Token]] = {}
    for v, toks in data["rotation"].items():
        seq = []
        for txt in toks:
            if txt in leg_ids:
                seq.append((txt, "x"))
            elif txt.endswith(".t") and txt[:-2] in edge_ids:
                seq.append((txt[:-2], "t"))
            elif txt.endswith(".h") and txt[:-2] in edge_ids:
                seq.append((txt[:-2], "h"))
            else:
                raise ValueError(f"rotation token {txt!r} matches no half-edge")
        rotation[v] = seq
    return RibbonGraph(graph, rotation)


def load_fixture(path_or_data: str | dict) -> Graph | RibbonGraph:
    """Load a graph or ribbon fixture from a JSON file path or parsed dict."""
    if isinstance(path_or_data, dict):
        data = path_or_data
    else:
        with open(path_or_data, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValueError(f"malformed JSON in {path_or_data}: {exc}") from None
    kind = data.get("type")
    if kind == "graph":
        if "rotation" in data:
            raise ValueError("field 'rotation' is only allowed for type 'ribbon'")
        from .graphs import graph_from_json_dict

        return graph_from_json_dict(data)
    if kind == "ribbon":
        return ribbon_from_json_dict(data)
    raise ValueError(f"fixture field 'type' must be 'graph' or 'ribbon', got {kind!r}")
