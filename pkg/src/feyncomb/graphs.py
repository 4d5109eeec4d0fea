"""Multigraphs with oriented internal edges and external legs.

A Graph has named vertices, internal edges (self-loops and parallel edges
allowed, each oriented tail -> head) and external legs, each leg attached to
a single vertex with a direction "in" or "out".  Orientation is bookkeeping
for momentum routing and the incidence matrix; every polynomial built on top
of this module is independent of it.

External legs never count toward edge sets, rank, or nullity.  They matter
only for two-tree momentum assignment, broken faces, and face incidence.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

EdgeSubset = frozenset[str]


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class Leg:
    id: str
    vertex: str
    dir: str  # "in" | "out"

    @property
    def sign(self) -> int:
        return 1 if self.dir == "in" else -1


@dataclass(frozen=True)
class TwoTree:
    """A spanning two-component forest with its vertex/leg split.

    `parts` lists the two vertex sets; the part containing the smallest
    vertex id comes first.  `legs` lists, for each part, the leg ids
    attached to it (sorted).
    """

    edges: EdgeSubset
    parts: tuple[frozenset[str], frozenset[str]]
    legs: tuple[tuple[str, ...], tuple[str, ...]]


class Graph:
    """Immutable multigraph with external legs."""

    __slots__ = ("vertices", "edges", "legs", "_edge_by_id", "_leg_by_id")

    def __init__(
        self,
        vertices: Sequence[str],
        edges: Sequence[Edge | tuple[str, str, str]],
        legs: Sequence[Leg | tuple[str, str, str]] = (),
    ):
        vs = tuple(vertices)
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertex ids")
        es = tuple(e if isinstance(e, Edge) else Edge(*e) for e in edges)
        ls = tuple(l if isinstance(l, Leg) else Leg(*l) for l in legs)
        ids = [e.id for e in es] + [l.id for l in ls]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate edge/leg ids")
        vset = set(vs)
        for e in es:
            if e.tail not in vset or e.head not in vset:
                raise ValueError(f"edge {e.id} has unknown endpoint")
        for l in ls:
            if l.vertex not in vset:
                raise ValueError(f"leg {l.id} attached to unknown vertex")
            if l.dir not in ("in", "out"):
                raise ValueError(f"leg {l.id} direction must be 'in' or 'out'")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)
        object.__setattr__(self, "legs", ls)
        object.__setattr__(self, "_edge_by_id", {e.id: e for e in es})
        object.__setattr__(self, "_leg_by_id", {l.id: l for l in ls})

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            sorted(self.vertices) == sorted(other.vertices)
            and sorted(self.edges, key=lambda e: e.id) == sorted(other.edges, key=lambda e: e.id)
            and sorted(self.legs, key=lambda l: l.id) == sorted(other.legs, key=lambda l: l.id)
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.vertices), frozenset(self.edges), frozenset(self.legs)))

    def __repr__(self) -> str:
        return f"Graph(V={len(self.vertices)}, E={len(self.edges)}, legs={len(self.legs)})"

    # -- lookups ---------------------------------------------------------

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edge_by_id[edge_id]
        except KeyError:
            raise KeyError(f"unknown edge id {edge_id!r}") from None

    def leg(self, leg_id: str) -> Leg:
        try:
            return self._leg_by_id[leg_id]
        except KeyError:
            raise KeyError(f"unknown leg id {leg_id!r}") from None

    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def all_edges(self) -> EdgeSubset:
        return frozenset(e.id for e in self.edges)

    def legs_at(self, vertex: str) -> list[Leg]:
        return [l for l in self.legs if l.vertex == vertex]

    def degree(self, vertex: str) -> int:
        """Number of half-edges at the vertex, legs included; loops count twice."""
        d = 0
        for e in self.edges:
            d += (e.tail == vertex) + (e.head == vertex)
        d += sum(1 for l in self.legs if l.vertex == vertex)
        return d

    # -- connectivity ------------------------------------------------------

    def _component_map(self, subset: Iterable[str] | None = None) -> dict[str, str]:
        """Map vertex -> component representative, using edges in `subset`."""
        parent = {v: v for v in self.vertices}

        def find(v: str) -> str:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        ids = self.all_edges() if subset is None else frozenset(subset)
        for eid in ids:
            e = self.edge(eid)
            ra, rb = find(e.tail), find(e.head)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        return {v: find(v) for v in self.vertices}

    def components(self, subset: Iterable[str] | None = None) -> int:
        """Number of connected components of the spanning subgraph (V, subset)."""
        return len(set(self._component_map(subset).values()))

    def component_vertex_sets(self, subset: Iterable[str] | None = None) -> list[frozenset[str]]:
        comp = self._component_map(subset)
        groups: dict[str, set[str]] = {}
        for v, r in comp.items():
            groups.setdefault(r, set()).add(v)
        return [frozenset(groups[r]) for r in sorted(groups)]

    def is_connected(self) -> bool:
        return len(self.vertices) > 0 and self.components() == 1

    def rank(self, subset: Iterable[str] | None = None) -> int:
        return len(self.vertices) - self.components(subset)

    def nullity(self, subset: Iterable[str] | None = None) -> int:
        n_edges = len(self.edges) if subset is None else len(frozenset(subset))
        return n_edges - self.rank(subset)

    # -- edge classification and local surgery ------------------------------

    def classify_edge(self, edge_id: str) -> str:
        """One of "bridge", "self_loop", "regular"."""
        e = self.edge(edge_id)
        if e.is_loop:
            return "self_loop"
        rest = self.all_edges() - {edge_id}
        if self.components(rest) > self.components():
            return "bridge"
        return "regular"

    def is_one_pi(self) -> bool:
        """1PI: connected and bridgeless.  Disconnected graphs are not 1PI."""
        if not self.is_connected():
            return False
        return all(self.classify_edge(e.id) != "bridge" for e in self.edges)

    def delete_edge(self, edge_id: str) -> Graph:
        self.edge(edge_id)
        return Graph(
            self.vertices,
            [e for e in self.edges if e.id != edge_id],
            self.legs,
        )

    def contract_edge(self, edge_id: str) -> Graph:
        """Contract an edge; for a self-loop this equals deletion."""
        e = self.edge(edge_id)
        if e.is_loop:
            return self.delete_edge(edge_id)
        keep, gone = min(e.tail, e.head), max(e.tail, e.head)

        def ren(v: str) -> str:
            return keep if v == gone else v

        return Graph(
            [v for v in self.vertices if v != gone],
            [Edge(x.id, ren(x.tail), ren(x.head)) for x in self.edges if x.id != edge_id],
            [Leg(l.id, ren(l.vertex), l.dir) for l in self.legs],
        )

    def reorient(self, edge_ids: Iterable[str]) -> Graph:
        """Flip tail/head on the given edges; all polynomials must not care."""
        flip = set(edge_ids)
        return Graph(
            self.vertices,
            [Edge(e.id, e.head, e.tail) if e.id in flip else e for e in self.edges],
            self.legs,
        )

    # -- spanning structures ------------------------------------------------

    def spanning_trees(self) -> list[EdgeSubset]:
        """All spanning trees, as edge-id sets (connected graphs only)."""
        if not self.is_connected():
            raise ValueError("spanning_trees requires a connected graph")
        need = len(self.vertices) - 1
        out = []
        for combo in itertools.combinations(sorted(self.all_edges()), need):
            if self.components(combo) == 1:
                out.append(frozenset(combo))
        return out

    def spanning_two_trees(self) -> list[TwoTree]:
        """All spanning two-component forests, with vertex and leg split."""
        if not self.is_connected():
            raise ValueError("spanning_two_trees requires a connected graph")
        need = len(self.vertices) - 2
        if need < 0:
            return []
        out = []
        for combo in itertools.combinations(sorted(self.all_edges()), need):
            if self.components(combo) != 2:
                continue
            parts = self.component_vertex_sets(combo)
            parts.sort(key=lambda s: min(s))
            a, b = parts
            legs_a = tuple(sorted(l.id for l in self.legs if l.vertex in a))
            legs_b = tuple(sorted(l.id for l in self.legs if l.vertex in b))
            out.append(TwoTree(frozenset(combo), (a, b), (legs_a, legs_b)))
        return out

    def incidence_matrix(self) -> list[list[int]]:
        """Rows per internal edge (input order), columns per vertex.

        +1 where the edge leaves the vertex, -1 where it enters; self-loop
        rows are identically zero.
        """
        index = {v: i for i, v in enumerate(self.vertices)}
        rows = []
        for e in self.edges:
            row = [0] * len(self.vertices)
            if not e.is_loop:
                row[index[e.tail]] = 1
                row[index[e.head]] = -1
            rows.append(row)
        return rows

    # -- canonical form -------------------------------------------------------

    def canonical_form(self) -> str:
        """Isomorphism-class key (orientation, ids and leg directions ignored).

        Exhaustive minimization over vertex bijections, restricted to
        signature-compatible assignments; fine at desk scale.
        """
        sig: dict[str, tuple] = {}
        loops = {v: 0 for v in self.vertices}
        legc = {v: 0 for v in self.vertices}
        for e in self.edges:
            if e.is_loop:
                loops[e.tail] += 1
        for l in self.legs:
            legc[l.vertex] += 1
        for v in self.vertices:
            sig[v] = (self.degree(v), loops[v], legc[v])

        best = None
        for mapping in _signature_bijections(list(self.vertices), sig):
            enc = self._encode(mapping)
            if best is None or enc < best:
                best = enc
        edges_txt = ",".join(f"{a}-{b}" for a, b in best[0])
        legs_txt = ",".join(str(i) for i in best[1])
        return f"G{len(self.vertices)}|{edges_txt}|{legs_txt}"

    def _encode(self, mapping: dict[str, int]) -> tuple:
        epairs = sorted(
            (min(mapping[e.tail], mapping[e.head]), max(mapping[e.tail], mapping[e.head]))
            for e in self.edges
        )
        lpos = sorted(mapping[l.vertex] for l in self.legs)
        return (tuple(epairs), tuple(lpos))

    # -- JSON fixture format ----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "type": "graph",
            "vertices": list(self.vertices),
            "edges": [{"id": e.id, "tail": e.tail, "head": e.head} for e in self.edges],
            "external": [{"id": l.id, "vertex": l.vertex, "dir": l.dir} for l in self.legs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=False) + "\n"


def _signature_bijections(vertices: list[str], sig: dict[str, tuple]):
    """Yield vertex -> position maps compatible with the degree signatures."""
    classes: dict[tuple, list[str]] = {}
    for v in vertices:
        classes.setdefault(sig[v], []).append(v)
    ordered = sorted(classes.items())
    base = 0
    slots: list[tuple[list[str], int]] = []
    for _, members in ordered:
        slots.append((members, base))
        base += len(members)
    for perms in itertools.product(*(itertools.permutations(m) for m, _ in slots)):
        mapping: dict[str, int] = {}
        for (members, start), perm in zip(slots, perms):
            for offset, v in enumerate(perm):
                mapping[v] = start + offset
        yield mapping


def graph_from_json_dict(data: dict) -> Graph:
    """Parse the repository-wide graph fixture format (type "graph")."""
    for field in ("type", "vertices", "edges"):
        if field not in data:
            raise ValueError(f"fixture missing field {field!r}")
    if data["type"] != "graph":
        raise ValueError(f"expected type 'graph', got {data['type']!r}")
    edges = [
        Edge(e["id"], e["tail"], e["head"]) for e in data["edges"]
    ]
    legs = [
        Leg(x["id"], x["vertex"], x["dir"]) for x in data.get("external", [])
    ]
    return Graph(data["vertices"], edges, legs)
