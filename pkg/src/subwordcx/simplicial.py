"""Facet-list simplicial complexes and the face-local operations on them.

A complex is stored as the antichain of its facets; the full face set is
enumerated lazily per query.  The void complex (no faces at all) and the
complex with the single face {} are distinct values: the first has no facets,
the second has the empty facet.  Vertex labels are opaque tokens, either
ints or strings, ordered ints-first.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Iterator

from .errors import (
    DegreeMismatch,
    NotAFacet,
    NotPure,
    UnknownVertex,
    VertexCollision,
)

log = logging.getLogger(__name__)

Label = Hashable
Face = frozenset


def label_key(v: Label):
    """Sort key putting int labels before string labels."""
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, str(v))


def sort_labels(labels: Iterable[Label]) -> tuple[Label, ...]:
    return tuple(sorted(labels, key=label_key))


def as_face(vertices: Iterable[Label]) -> Face:
    return frozenset(vertices)


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex given by its facet antichain.

    The ground set is the support of the facets, in sorted order.  Use
    :func:`from_facets` instead of the constructor to get the antichain
    reduction.
    """

    ground: tuple[Label, ...]
    facets: frozenset[Face]

    @property
    def dim(self) -> int | None:
        """Dimension of the complex, -1 for <{}>, None for the void complex."""
        if not self.facets:
            return None
        return max(len(f) for f in self.facets) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def is_simplex(self) -> bool:
        """True for the void complex, <{}>, and any single-facet complex."""
        return len(self.facets) <= 1

    def n_facets(self) -> int:
        return len(self.facets)

    def facets_sorted(self) -> list[tuple[Label, ...]]:
        return sorted((sort_labels(f) for f in self.facets), key=lambda t: (len(t), [label_key(v) for v in t]))

    def faces(self) -> Iterator[Face]:
        """All faces, each exactly once, including the empty face (if any)."""
        seen: set[Face] = set()
        for facet in self.facets:
            verts = tuple(facet)
            for k in range(len(verts) + 1):
                for sub in combinations(verts, k):
                    face = frozenset(sub)
                    if face not in seen:
                        seen.add(face)
                        yield face

    def has_face(self, face: Iterable[Label]) -> bool:
        f = as_face(face)
        return any(f <= facet for facet in self.facets)

    def f_vector(self) -> tuple[int, ...]:
        """Face counts by dimension, starting at dimension 0."""
        d = self.dim
        if d is None or d < 0:
            return ()
        counts = [0] * (d + 1)
        for face in self.faces():
            if face:
                counts[len(face) - 1] += 1
        return tuple(counts)

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * n for i, n in enumerate(self.f_vector()))

    def __repr__(self) -> str:
        names = ["".join(str(v) for v in f) for f in self.facets_sorted()]
        return f"<complex {' '.join(names) or 'void'}>"


def from_facets(faces: Iterable[Iterable[Label]]) -> SimplicialComplex:
    """Complex generated by the given faces; non-maximal members are dropped."""
    candidates = {as_face(f) for f in faces}
    maximal = {
        f for f in candidates if not any(f < g for g in candidates)
    }
    dropped = len(candidates) - len(maximal)
    if dropped:
        log.debug("from_facets: dropped %d subsumed faces", dropped)
    ground = sort_labels(set().union(*maximal)) if maximal else ()
    return SimplicialComplex(ground=ground, facets=frozenset(maximal))


VOID = from_facets([])
EMPTY_FACE_COMPLEX = from_facets([[]])


def deletion(cx: SimplicialComplex, face: Iterable[Label]) -> SimplicialComplex:
    """Faces of cx not containing the given vertex set."""
    f = as_face(face)
    out = []
    for facet in cx.facets:
        if f <= facet:
            out.extend(facet - {x} for x in f)
        else:
            out.append(facet)
    return from_facets(out)


def star(cx: SimplicialComplex, face: Iterable[Label]) -> SimplicialComplex:
    """Complex generated by the facets containing the given face."""
    f = as_face(face)
    return from_facets([facet for facet in cx.facets if f <= facet])


def link(cx: SimplicialComplex, face: Iterable[Label]) -> SimplicialComplex:
    """Faces disjoint from the given face whose union with it is a face."""
    f = as_face(face)
    return from_facets([facet - f for facet in cx.facets if f <= facet])


def costar(cx: SimplicialComplex, face: Iterable[Label]) -> SimplicialComplex:
    """Complex generated by the facets not containing the given face."""
    f = as_face(face)
    return from_facets([facet for facet in cx.facets if not f <= facet])


def induced(cx: SimplicialComplex, vertices: Iterable[Label]) -> SimplicialComplex:
    """Faces supported inside the given subset of the ground set."""
    w = set(vertices)
    unknown = w - set(cx.ground)
    if unknown:
        raise UnknownVertex(f"not in the ground set: {sort_labels(unknown)}")
    return from_facets([facet & w for facet in cx.facets])


def join_with_simplex(cx: SimplicialComplex, face: Iterable[Label]) -> SimplicialComplex:
    """Join of the complex with the simplex on the given fresh vertex set."""
    f = as_face(face)
    clash = f & set(cx.ground)
    if clash:
        raise VertexCollision(f"join vertices already present: {sort_labels(clash)}")
    return from_facets([facet | f for facet in cx.facets])


def ridges(cx: SimplicialComplex) -> frozenset[Face]:
    """All faces obtained by removing one vertex from a facet."""
    out = set()
    for facet in cx.facets:
        for x in facet:
            out.add(facet - {x})
    return frozenset(out)


class FacetRidgeGraph:
    """Undirected graph on facet identifiers, adjacency = sharing a ridge.

    Node identifiers are sorted vertex tuples for graphs built from a
    complex; graph surgery (vertex truncation) introduces synthetic nodes
    and drops the facet lookup.
    """

    def __init__(
        self,
        nodes: Iterable[Hashable],
        edges: Iterable[frozenset],
        facet_lookup: dict | None = None,
    ):
        self.nodes = tuple(nodes)
        self.edges = frozenset(frozenset(e) for e in edges)
        self.facet_lookup = facet_lookup
        adj: dict[Hashable, set] = {v: set() for v in self.nodes}
        for e in self.edges:
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        self.adj = adj

    def n_nodes(self) -> int:
        return len(self.nodes)

    def degree(self, node) -> int:
        return len(self.adj[node])

    def neighbors(self, node) -> set:
        return self.adj[node]

    def adjacent(self, a, b) -> bool:
        return frozenset((a, b)) in self.edges

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(len(self.adj[v]) for v in self.nodes))

    def is_connected(self) -> bool:
        if not self.nodes:
            return False
        seen = {self.nodes[0]}
        stack = [self.nodes[0]]
        while stack:
            for w in self.adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.nodes)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FacetRidgeGraph)
            and set(self.nodes) == set(other.nodes)
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((frozenset(self.nodes), self.edges))

    def __repr__(self) -> str:
        return f"<graph {len(self.nodes)} nodes {len(self.edges)} edges>"


def facet_ridge_graph(cx: SimplicialComplex) -> FacetRidgeGraph:
    """FR graph of a pure complex: facets joined when they share a ridge."""
    if not cx.is_pure():
        raise NotPure("facet-ridge graph requires a pure complex")
    facets = cx.facets_sorted()
    lookup = {t: frozenset(t) for t in facets}
    edges = set()
    for a, b in combinations(facets, 2):
        if len(lookup[a] & lookup[b]) == len(a) - 1:
            edges.add(frozenset((a, b)))
    return FacetRidgeGraph(facets, edges, lookup)


def stellar_subdivide(cx: SimplicialComplex, facet: Iterable[Label], new_vertex: Label) -> SimplicialComplex:
    """Replace a facet F by the cone over its boundary with a fresh apex."""
    f = as_face(facet)
    if f not in cx.facets:
        raise NotAFacet(f"{sort_labels(f)} is not a facet")
    if new_vertex in cx.ground:
        raise VertexCollision(f"vertex {new_vertex!r} already present")
    out = [facet_ for facet_ in cx.facets if facet_ != f]
    out.extend((f - {x}) | {new_vertex} for x in f)
    return from_facets(out)


def truncate_graph_vertex(graph: FacetRidgeGraph, node, d: int) -> FacetRidgeGraph:
    """Replace a node of degree d+1 by a complete graph on d+1 new nodes.

    The old incident edges attach bijectively to the new nodes, mirroring
    what a stellar subdivision of the corresponding facet does to the
    facet-ridge graph.
    """
    if node not in graph.adj:
        raise DegreeMismatch(f"unknown node {node!r}")
    nbrs = sorted(graph.adj[node], key=repr)
    if len(nbrs) != d + 1:
        raise DegreeMismatch(f"node has degree {len(nbrs)}, expected {d + 1}")
    new_nodes = [(node, k) for k in range(d + 1)]
    nodes = [v for v in graph.nodes if v != node] + new_nodes
    edges = {e for e in graph.edges if node not in e}
    edges.update(frozenset((a, b)) for a, b in combinations(new_nodes, 2))
    edges.update(frozenset((new_nodes[k], nbrs[k])) for k in range(d + 1))
    return FacetRidgeGraph(nodes, edges, None)


def gf2_rank(rows: list[int]) -> int:
    """Rank of a GF(2) matrix given as row bitmasks."""
    pivots: dict[int, int] = {}  # leading bit -> reduced row
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            if lead in pivots:
                row ^= pivots[lead]
            else:
                pivots[lead] = row
                break
    return len(pivots)


def gf2_homology(cx: SimplicialComplex) -> tuple[int, ...]:
    """Betti numbers (b0, ..., b_dim) over GF(2), by boundary matrix ranks."""
    d = cx.dim
    if d is None or d < 0:
        return ()
    by_dim: list[list[Face]] = [[] for _ in range(d + 1)]
    for face in cx.faces():
        if face:
            by_dim[len(face) - 1].append(face)
    index = [{f: i for i, f in enumerate(faces)} for faces in by_dim]
    ranks = [0] * (d + 2)  # ranks[k] = rank of the boundary map from dim k
    for k in range(1, d + 1):
        rows = []
        for face in by_dim[k]:
            mask = 0
            for x in face:
                mask |= 1 << index[k - 1][face - {x}]
            rows.append(mask)
        ranks[k] = gf2_rank(rows)
    return tuple(len(by_dim[k]) - ranks[k] - ranks[k + 1] for k in range(d + 1))


@dataclass(frozen=True)
class PseudomanifoldReport:
    is_pseudomanifold: bool
    connected: bool
    bad_ridges: tuple[tuple[tuple, int], ...]  # (ridge, facet count) for counts != 2


def is_pseudomanifold(cx: SimplicialComplex) -> PseudomanifoldReport:
    """Check that every ridge lies in exactly two facets and FR is connected."""
    if not cx.is_pure():
        raise NotPure("pseudomanifold check requires a pure complex")
    if not cx.facets:
        return PseudomanifoldReport(False, False, ())
    counts: dict[Face, int] = {}
    for facet in cx.facets:
        for x in facet:
            r = facet - {x}
            counts[r] = counts.get(r, 0) + 1
    bad = tuple(
        (sort_labels(r), c)
        for r, c in sorted(counts.items(), key=lambda kv: sort_labels(kv[0]))
        if c != 2
    )
    connected = facet_ridge_graph(cx).is_connected()
    return PseudomanifoldReport(not bad and connected, connected, bad)


# --- JSON surface ----------------------------------------------------------


def complex_to_json(cx: SimplicialComplex) -> dict:
    return {
        "vertices": list(cx.ground),
        "facets": [list(f) for f in cx.facets_sorted()],
    }


def complex_from_json(data: dict) -> SimplicialComplex:
    if "facets" not in data:
        raise KeyError("complex JSON needs a 'facets' array")
    cx = from_facets(data["facets"])
    declared = data.get("vertices")
    if declared is not None:
        missing = set(cx.ground) - set(declared)
        if missing:
            raise UnknownVertex(f"facets use undeclared vertices: {sort_labels(missing)}")
    return cx
