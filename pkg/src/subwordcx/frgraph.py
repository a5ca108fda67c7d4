"""Graph isomorphism on facet-ridge graphs and the reconstruction verifier.

Isomorphism search is plain backtracking with color-refinement pruning;
the fixture graphs stay under a few dozen nodes, so no canonical-labeling
engine is needed.  A graph isomorphism f induces a candidate face map

    g(I) = intersection of f(F) over all facets F containing I,

which restricts to f on facets and ridges.  The verifier checks whether g
is a genuine simplicial isomorphism and otherwise reports where it
degrades; the sweep quantifies this over every isomorphism of every
FR-isomorphic pair in a family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator

from .errors import NotPure
from .simplicial import (
    Face,
    FacetRidgeGraph,
    SimplicialComplex,
    facet_ridge_graph,
    label_key,
    sort_labels,
)


# ---------------------------------------------------------------------------
# Graph isomorphism


def _refined_colors(g: FacetRidgeGraph, rounds: int = 2) -> dict:
    color = {v: g.degree(v) for v in g.nodes}
    for _ in range(rounds):
        color = {
            v: (color[v], tuple(sorted(color[w] for w in g.neighbors(v))))
            for v in g.nodes
        }
    # compress to small ints, stable across both graphs via sorted repr
    palette = {c: i for i, c in enumerate(sorted(set(color.values()), key=repr))}
    return {v: palette[color[v]] for v in g.nodes}


def _search_order(g: FacetRidgeGraph, colors: dict) -> list:
    class_size: dict[int, int] = {}
    for c in colors.values():
        class_size[c] = class_size.get(c, 0) + 1
    order: list = []
    placed = set()
    while len(order) < len(g.nodes):
        best = None
        for v in g.nodes:
            if v in placed:
                continue
            key = (
                -sum(1 for w in g.neighbors(v) if w in placed),
                class_size[colors[v]],
                -g.degree(v),
                repr(v),
            )
            if best is None or key < best[0]:
                best = (key, v)
        order.append(best[1])
        placed.add(best[1])
    return order


def isomorphisms_iter(g1: FacetRidgeGraph, g2: FacetRidgeGraph) -> Iterator[dict]:
    """Yield every adjacency-preserving bijection between the two graphs."""
    if len(g1.nodes) != len(g2.nodes) or len(g1.edges) != len(g2.edges):
        return
    if g1.degree_sequence() != g2.degree_sequence():
        return
    c1 = _refined_colors(g1)
    c2 = _refined_colors(g2)
    if sorted(c1.values()) != sorted(c2.values()):
        return
    order = _search_order(g1, c1)
    by_color: dict[int, list] = {}
    for v in g2.nodes:
        by_color.setdefault(c2[v], []).append(v)
    for vs in by_color.values():
        vs.sort(key=repr)

    mapping: dict = {}
    used: set = set()

    def extend(k: int) -> Iterator[dict]:
        if k == len(order):
            yield dict(mapping)
            return
        u = order[k]
        for v in by_color.get(c1[u], ()):
            if v in used or g1.degree(u) != g2.degree(v):
                continue
            ok = True
            for a, b in mapping.items():
                if g1.adjacent(u, a) != g2.adjacent(v, b):
                    ok = False
                    break
            if ok:
                mapping[u] = v
                used.add(v)
                yield from extend(k + 1)
                del mapping[u]
                used.remove(v)

    yield from extend(0)


@dataclass(frozen=True)
class GraphIso:
    """A bijection between the node sets of two graphs preserving adjacency."""

    source: FacetRidgeGraph
    target: FacetRidgeGraph
    mapping: dict

    def __call__(self, node):
        return self.mapping[node]

    def validate(self) -> bool:
        m = self.mapping
        if set(m) != set(self.source.nodes) or set(m.values()) != set(self.target.nodes):
            return False
        return all(
            self.source.adjacent(a, b) == self.target.adjacent(m[a], m[b])
            for a, b in combinations(self.source.nodes, 2)
        )

    def inverse(self) -> "GraphIso":
        return GraphIso(self.target, self.source, {v: k for k, v in self.mapping.items()})


def find_isomorphism(g1: FacetRidgeGraph, g2: FacetRidgeGraph) -> GraphIso | None:
    """Some isomorphism between the graphs, or None; deterministic."""
    for mapping in isomorphisms_iter(g1, g2):
        iso = GraphIso(g1, g2, mapping)
        assert iso.validate()
        return iso
    return None


def automorphism_group_order(g: FacetRidgeGraph) -> int:
    """Order of the automorphism group, by full enumeration."""
    return sum(1 for _ in isomorphisms_iter(g, g))


# ---------------------------------------------------------------------------
# Simplicial isomorphism (ground-set bijections carrying facets to facets)


def _vertex_colors(cx: SimplicialComplex) -> dict:
    color = {}
    for v in cx.ground:
        sizes = tuple(sorted(len(f) for f in cx.facets if v in f))
        color[v] = (len(sizes), sizes)
    return color


def simplicial_isomorphisms_iter(a: SimplicialComplex, b: SimplicialComplex) -> Iterator[dict]:
    """Yield every vertex bijection mapping the facets of a onto those of b."""
    if len(a.ground) != len(b.ground) or len(a.facets) != len(b.facets):
        return
    if sorted(len(f) for f in a.facets) != sorted(len(f) for f in b.facets):
        return
    ca, cb = _vertex_colors(a), _vertex_colors(b)
    if sorted(ca.values()) != sorted(cb.values()):
        return
    pair_a = {
        frozenset(p): sum(1 for f in a.facets if set(p) <= f)
        for p in combinations(a.ground, 2)
    }
    pair_b = {
        frozenset(p): sum(1 for f in b.facets if set(p) <= f)
        for p in combinations(b.ground, 2)
    }
    b_facets = b.facets
    by_color: dict = {}
    for v in b.ground:
        by_color.setdefault(cb[v], []).append(v)

    order = sorted(a.ground, key=lambda v: (len(by_color.get(ca[v], ())), label_key(v)))
    mapping: dict = {}
    used: set = set()

    def consistent(u, v) -> bool:
        for u2, v2 in mapping.items():
            if pair_a.get(frozenset((u, u2)), 0) != pair_b.get(frozenset((v, v2)), 0):
                return False
        # facets fully inside the mapped domain must land on facets
        dom = set(mapping) | {u}
        for f in a.facets:
            if f <= dom:
                img = frozenset(mapping.get(x, v) for x in f)
                if img not in b_facets:
                    return False
        return True

    def extend(k: int) -> Iterator[dict]:
        if k == len(order):
            yield dict(mapping)
            return
        u = order[k]
        for v in by_color.get(ca[u], ()):
            if v in used:
                continue
            if consistent(u, v):
                mapping[u] = v
                used.add(v)
                yield from extend(k + 1)
                del mapping[u]
                used.remove(v)

    yield from extend(0)


def find_simplicial_isomorphism(a: SimplicialComplex, b: SimplicialComplex) -> dict | None:
    for m in simplicial_isomorphisms_iter(a, b):
        return m
    return None


def simplicial_automorphism_group_order(cx: SimplicialComplex) -> int:
    """Number of ground-set bijections mapping facets to facets."""
    if not cx.is_pure():
        raise NotPure("automorphism count requires a pure complex")
    return sum(1 for _ in simplicial_isomorphisms_iter(cx, cx))


def graph_iso_from_simplicial(
    sigma: dict, a: SimplicialComplex, b: SimplicialComplex
) -> GraphIso:
    """The facet-ridge graph isomorphism induced by a vertex bijection."""
    ga, gb = facet_ridge_graph(a), facet_ridge_graph(b)
    mapping = {
        node: sort_labels(sigma[v] for v in node) for node in ga.nodes
    }
    return GraphIso(ga, gb, mapping)


# ---------------------------------------------------------------------------
# The induced face map g and the reconstruction verdict


class InducedFaceMap:
    """Lazy cache of g(I) = intersection of f(F) over facets F containing I."""

    def __init__(self, iso: GraphIso, source: SimplicialComplex, target: SimplicialComplex):
        self.iso = iso
        self.source = source
        self.target = target
        self._facets = sorted(source.facets, key=lambda f: sort_labels(f))
        self._images = [frozenset(iso.mapping[sort_labels(f)]) for f in self._facets]
        self._cache: dict[Face, frozenset] = {}

    def __call__(self, face: Iterable) -> frozenset:
        f = frozenset(face)
        if f in self._cache:
            return self._cache[f]
        acc = None
        for facet, image in zip(self._facets, self._images):
            if f <= facet:
                acc = image if acc is None else acc & image
        if acc is None:
            raise ValueError(f"{sort_labels(f)} is not a face of the source")
        self._cache[f] = acc
        return acc


def induced_face_map(
    iso: GraphIso, source: SimplicialComplex, target: SimplicialComplex
) -> InducedFaceMap:
    """Build the candidate extension g of a facet-ridge graph isomorphism."""
    return InducedFaceMap(iso, source, target)


@dataclass(frozen=True)
class ReconstructionVerdict:
    extends: bool
    reason: str | None = None  # cardinality | non-face | collision | not-inverse
    witness: tuple | None = None
    witness_image: tuple | None = None
    degraded: tuple = ()  # every face whose image has the wrong size or is not a face

    def __bool__(self) -> bool:
        return self.extends

    def to_json(self) -> dict:
        if self.extends:
            return {"verdict": "extension"}
        return {
            "verdict": "failure",
            "reason": self.reason,
            "witness": list(self.witness),
            "g_image": sort_labels(self.witness_image) if self.witness_image is not None else None,
        }


def _faces_sorted(cx: SimplicialComplex) -> list[Face]:
    return sorted(cx.faces(), key=lambda f: (len(f), [label_key(v) for v in sort_labels(f)]))


def verify_reconstruction(
    iso: GraphIso, source: SimplicialComplex, target: SimplicialComplex
) -> ReconstructionVerdict:
    """Decide whether the induced face map extends the graph isomorphism.

    The map extends when it is a dimension-preserving bijection between the
    face sets whose inverse is induced by the inverse graph isomorphism; it
    is unique because the intersection formula pins it pointwise.  On
    failure the verdict carries a witness face: among the smallest degraded
    faces, the one lying in the most facets (then lexicographically first),
    which names the face whose star obstructs the reconstruction.
    """
    g = induced_face_map(iso, source, target)
    g_back = induced_face_map(iso.inverse(), target, source)
    target_faces = set(target.faces())
    degraded: list[tuple] = []
    images: dict[Face, Face] = {}
    seen_images: set[Face] = set()
    collision: tuple | None = None
    for face in _faces_sorted(source):
        img = g(face)
        if len(img) != len(face) or img not in target_faces:
            degraded.append(face)
            continue
        if img in seen_images and collision is None:
            collision = (sort_labels(face), sort_labels(img))
        seen_images.add(img)
        images[face] = img

    if degraded:
        def witness_rank(f: Face):
            containing = sum(1 for facet in source.facets if f <= facet)
            return (len(f), -containing, [label_key(v) for v in sort_labels(f)])

        worst = min(degraded, key=witness_rank)
        return ReconstructionVerdict(
            False,
            reason="cardinality" if len(g(worst)) != len(worst) else "non-face",
            witness=sort_labels(worst),
            witness_image=tuple(g(worst)),
            degraded=tuple(sort_labels(f) for f in degraded),
        )
    if collision is not None:
        return ReconstructionVerdict(
            False, reason="collision", witness=collision[0], witness_image=collision[1]
        )
    if len(images) != sum(1 for _ in target.faces()):
        return ReconstructionVerdict(False, reason="not-bijective", witness=())
    for face, img in images.items():
        if g_back(img) != face:
            return ReconstructionVerdict(
                False,
                reason="not-inverse",
                witness=sort_labels(face),
                witness_image=tuple(img),
            )
    return ReconstructionVerdict(True)


def degree_profile(cx: SimplicialComplex) -> dict:
    """Vertex -> number of facets containing it; a cheap isomorphism invariant."""
    return {v: sum(1 for f in cx.facets if v in f) for v in cx.ground}


# ---------------------------------------------------------------------------
# Family sweep


@dataclass
class SweepReport:
    classes: list = field(default_factory=list)  # lists of input names, one per iso class
    flagged_pairs: list = field(default_factory=list)  # FR-isomorphic, not simplicially iso
    extension_failures: list = field(default_factory=list)  # (name, iso index, witness)
    isos_checked: int = 0

    @property
    def all_extend(self) -> bool:
        return not self.extension_failures

    def to_json(self) -> dict:
        return {
            "classes": self.classes,
            "flagged_pairs": self.flagged_pairs,
            "extension_failures": [
                {"name": n, "iso": i, "witness": list(w)} for n, i, w in self.extension_failures
            ],
            "isos_checked": self.isos_checked,
            "all_extend": self.all_extend,
        }


def exhaustive_reconstruction_sweep(
    complexes: Iterable[SimplicialComplex],
    names: Iterable[str] | None = None,
    progress: Callable[[str], None] | None = None,
) -> SweepReport:
    """Check reconstructibility across a family of pure complexes.

    Inputs are grouped into simplicial-isomorphism classes first.  For each
    class representative every FR-graph automorphism must extend through the
    induced face map (extension transports along simplicial isomorphisms, so
    this covers every isomorphism between every FR-isomorphic pair in the
    class); every non-representative member is additionally verified against
    its representative once.  Distinct classes whose FR graphs are
    isomorphic are reported as flagged pairs: their graph isomorphisms
    cannot extend.
    """
    items = list(complexes)
    labels = list(names) if names is not None else [f"#{i}" for i in range(len(items))]
    report = SweepReport()
    reps: list[tuple[SimplicialComplex, FacetRidgeGraph, tuple, str, int]] = []

    def invariant(cx: SimplicialComplex, fr: FacetRidgeGraph) -> tuple:
        return (
            cx.dim,
            len(cx.facets),
            cx.f_vector(),
            tuple(sorted(degree_profile(cx).values())),
            fr.degree_sequence(),
        )

    member_of: list[int] = []
    for cx, name in zip(items, labels):
        fr = facet_ridge_graph(cx)
        inv = invariant(cx, fr)
        home = None
        for idx, (rep_cx, rep_fr, rep_inv, rep_name, _) in enumerate(reps):
            if rep_inv != inv:
                continue
            sigma = find_simplicial_isomorphism(cx, rep_cx)
            if sigma is not None:
                home = idx
                # one direct verification of this member against its representative
                iso = graph_iso_from_simplicial(sigma, cx, rep_cx)
                verdict = verify_reconstruction(iso, cx, rep_cx)
                report.isos_checked += 1
                if not verdict:
                    report.extension_failures.append((name, -1, verdict.witness))
                break
        if home is None:
            reps.append((cx, fr, inv, name, len(reps)))
            report.classes.append([name])
            member_of.append(len(reps) - 1)
        else:
            report.classes[home].append(name)
            member_of.append(home)

    for idx, (cx, fr, inv, name, _) in enumerate(reps):
        if progress:
            progress(f"automorphisms of class {name}")
        for k, mapping in enumerate(isomorphisms_iter(fr, fr)):
            verdict = verify_reconstruction(GraphIso(fr, fr, mapping), cx, cx)
            report.isos_checked += 1
            if not verdict:
                report.extension_failures.append((name, k, verdict.witness))

    for (i, (cx1, fr1, inv1, n1, _)), (j, (cx2, fr2, inv2, n2, _)) in combinations(
        enumerate(reps), 2
    ):
        if fr1.degree_sequence() != fr2.degree_sequence():
            continue
        if find_isomorphism(fr1, fr2) is not None:
            report.flagged_pairs.append([n1, n2])
    return report


# ---------------------------------------------------------------------------
# DOT export


def _node_name(node) -> str:
    return "".join(str(v) for v in node) if isinstance(node, tuple) else str(node)


def graph_to_dot(g: FacetRidgeGraph, name: str = "FR") -> str:
    lines = [f"graph {name} {{"]
    for v in g.nodes:
        lines.append(f'  "{_node_name(v)}";')
    for e in sorted(g.edges, key=lambda e: sorted(map(_node_name, e))):
        a, b = sorted(e, key=_node_name)
        lines.append(f'  "{_node_name(a)}" -- "{_node_name(b)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def iso_pair_dot(iso: GraphIso, name: str = "pair") -> str:
    """Two-graph diagram with dashed correspondence edges."""
    lines = [f"graph {name} {{"]
    for tag, g in (("A", iso.source), ("B", iso.target)):
        lines.append(f"  subgraph cluster_{tag} {{")
        lines.append(f'    label="{tag}";')
        for v in g.nodes:
            lines.append(f'    "{tag}_{_node_name(v)}" [label="{_node_name(v)}"];')
        for e in sorted(g.edges, key=lambda e: sorted(map(_node_name, e))):
            a, b = sorted(e, key=_node_name)
            lines.append(f'    "{tag}_{_node_name(a)}" -- "{tag}_{_node_name(b)}";')
        lines.append("  }")
    for a, b in sorted(iso.mapping.items(), key=lambda kv: _node_name(kv[0])):
        lines.append(f'  "A_{_node_name(a)}" -- "B_{_node_name(b)}" [style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
