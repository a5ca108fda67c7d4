"""Decision procedures for shellability and vertex decomposability.

Both searches are exhaustive backtracking with memoization keyed on a
canonical relabeling of the facet list (vertices renamed by first occurrence,
facets sorted), so isomorphic sub-problems arising along one search collapse.
The searches run on facet bitmasks for speed; results optionally carry
replayable certificates in terms of the original vertex labels.

Conventions: the void complex and the complex with the single empty face
both count as simplices, as does any single-facet complex.  A non-pure
complex that is not a simplex is neither shellable nor vertex decomposable.
A configurable node budget aborts long searches with
:class:`SearchBudgetExceeded` instead of returning a wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import SearchBudgetExceeded
from .simplicial import SimplicialComplex, from_facets, sort_labels

DEFAULT_BUDGET = 10_000_000

Masks = tuple[int, ...]


def _to_masks(cx: SimplicialComplex) -> tuple[Masks, tuple]:
    labels = cx.ground
    pos = {v: i for i, v in enumerate(labels)}
    masks = []
    for f in cx.facets:
        m = 0
        for v in f:
            m |= 1 << pos[v]
        masks.append(m)
    return tuple(sorted(masks)), labels


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _faces_of_masks(masks: Iterable[int]) -> set[int]:
    """All submasks of the given facet masks, including 0."""
    seen: set[int] = set()
    for m in masks:
        s = m
        while True:
            seen.add(s)
            if s == 0:
                break
            s = (s - 1) & m
    return seen


def _antichain(masks: Iterable[int]) -> Masks:
    ms = set(masks)
    return tuple(sorted(m for m in ms if not any(m != g and m & g == m for g in ms)))


def _common_mask(masks: Masks) -> int:
    common = masks[0]
    for m in masks:
        common &= m
        if not common:
            break
    return common


def _canon(masks: Masks) -> tuple[tuple[tuple[int, ...], ...], dict[int, int]]:
    """Canonical form: relabel vertices by first occurrence, sort facets."""
    tuples = sorted(_bits(m) for m in masks)
    relabel: dict[int, int] = {}
    for t in tuples:
        for v in t:
            if v not in relabel:
                relabel[v] = len(relabel)
    key = tuple(sorted(tuple(sorted(relabel[v] for v in t)) for t in tuples))
    return key, relabel


@dataclass
class DecompCache:
    """Shared memo tables; pass one instance across queries to reuse results."""

    vd: dict = field(default_factory=dict)
    shell: dict = field(default_factory=dict)


class _Search:
    def __init__(self, budget: int, cache: DecompCache | None, memoize: bool):
        self.budget = budget
        self.nodes = 0
        self.cache = cache if cache is not None else DecompCache()
        self.memoize = memoize

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(f"search exceeded {self.budget} nodes")

    # -- vertex decomposability ------------------------------------------

    def vd(self, masks: Masks) -> bool:
        self._tick()
        if len(masks) <= 1:
            return True
        common = _common_mask(masks)
        if common:
            # a cone is decomposable iff its base is: cone vertices shed freely
            masks = tuple(sorted(m & ~common for m in masks))
        if len({m.bit_count() for m in masks}) > 1:
            return False
        key, relabel = _canon(masks)
        if self.memoize and key in self.cache.vd:
            return self.cache.vd[key][0]
        result, choice = False, None
        support = 0
        for m in masks:
            support |= m
        for v in _bits(support):
            bit = 1 << v
            deletion = _antichain(m & ~bit if m & bit else m for m in masks)
            lnk = tuple(sorted(m & ~bit for m in masks if m & bit))
            if self.vd(deletion) and self.vd(lnk):
                result, choice = True, relabel[v]
                break
        if self.memoize:
            self.cache.vd[key] = (result, choice)
        return result

    def vd_choice(self, masks: Masks) -> int | None:
        """Shedding vertex (as an original bit index) for a decomposable complex."""
        if len(masks) <= 1:
            return None
        common = _common_mask(masks)
        if common:
            return _bits(common)[0]
        if not self.memoize:
            if len({m.bit_count() for m in masks}) > 1:
                return None
            support = 0
            for m in masks:
                support |= m
            for v in _bits(support):
                bit = 1 << v
                deletion = _antichain(m & ~bit if m & bit else m for m in masks)
                lnk = tuple(sorted(m & ~bit for m in masks if m & bit))
                if self.vd(deletion) and self.vd(lnk):
                    return v
            return None
        key, relabel = _canon(masks)
        entry = self.cache.vd.get(key)
        if entry is None:
            self.vd(masks)
            entry = self.cache.vd.get(key)
        if entry is None:
            return None
        ok, canon_choice = entry
        if not ok or canon_choice is None:
            return None
        inverse = {c: v for v, c in relabel.items()}
        return inverse[canon_choice]

    # -- shellability ------------------------------------------------------

    def shellable(self, masks: Masks) -> bool:
        self._tick()
        if len(masks) <= 1:
            return True
        common = _common_mask(masks)
        if common:
            # shelling orders of a cone and of its base correspond facet by facet
            masks = tuple(sorted(m & ~common for m in masks))
        if len({m.bit_count() for m in masks}) > 1:
            return False
        key, relabel = _canon(masks)
        if self.memoize and key in self.cache.shell:
            return self.cache.shell[key][0]
        result, choice = False, None
        # fast path: turn a vertex decomposition into an order, then verify it
        order = self._order_from_decomposition(masks)
        if order is not None and _valid_shelling(order):
            result = True
            choice = tuple(sorted(relabel[v] for v in _bits(order[-1])))
        else:
            for f in masks:
                if self._removal_ok(f, masks) and self.shellable(
                    tuple(m for m in masks if m != f)
                ):
                    result = True
                    choice = tuple(sorted(relabel[v] for v in _bits(f)))
                    break
        if self.memoize:
            self.cache.shell[key] = (result, choice)
        return result

    def _order_from_decomposition(self, masks: Masks) -> list[int] | None:
        """Shelling order built from a shedding tree: deletion first, then the
        star, with the star's facets ordered by the link's own order."""
        if len(masks) <= 1:
            return list(masks)
        common = _common_mask(masks)
        if common:
            base = self._order_from_decomposition(
                tuple(sorted(m & ~common for m in masks))
            )
            return None if base is None else [m | common for m in base]
        v = self.vd_choice(masks)
        if v is None:
            return None
        bit = 1 << v
        deletion = _antichain(m & ~bit if m & bit else m for m in masks)
        have = set(masks)
        if any(m not in have for m in deletion):
            return None  # deletion facets must stay facets for the gluing to work
        lnk = tuple(sorted(m & ~bit for m in masks if m & bit))
        left = self._order_from_decomposition(deletion)
        right = self._order_from_decomposition(lnk)
        if left is None or right is None:
            return None
        return left + [m | bit for m in right]

    @staticmethod
    def _removal_ok(f: int, masks: Masks) -> bool:
        # <{f}> meet <rest> must be pure of dimension dim(f) - 1
        inters = {f & g for g in masks if g != f}
        need = f.bit_count() - 1
        maximal = [m for m in inters if not any(m != g and m & g == m for g in inters)]
        return all(m.bit_count() == need for m in maximal)

    def shell_choice(self, masks: Masks) -> int | None:
        """Facet removed first (as a bitmask in original labels), or None."""
        if len(masks) <= 1:
            return None
        common = _common_mask(masks)
        stripped = tuple(sorted(m & ~common for m in masks)) if common else masks
        key, relabel = _canon(stripped)
        entry = self.cache.shell.get(key)
        if entry is None:
            self.shellable(masks)
            entry = self.cache.shell[key]
        ok, canon_choice = entry
        if not ok or canon_choice is None:
            return None
        inverse = {c: v for v, c in relabel.items()}
        mask = common
        for c in canon_choice:
            mask |= 1 << inverse[c]
        return mask


def _valid_shelling(order: list[int]) -> bool:
    """Check the step-by-step meet condition of a shelling order on masks."""
    for i in range(1, len(order)):
        f = order[i]
        need = f.bit_count() - 1
        meets = {f & order[j] for j in range(i)}
        for m in meets:
            if m.bit_count() == need:
                continue
            if not any(m != g and m & g == m for g in meets):
                return False
    return True


# ---------------------------------------------------------------------------
# Certificates


@dataclass(frozen=True)
class VDCertificate:
    """Recursion tree: a leaf marks a simplex, an inner node a shedding vertex."""

    vertex: object = None
    deletion: "VDCertificate | None" = None
    link: "VDCertificate | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.vertex is None

    def to_json(self) -> dict:
        if self.is_leaf:
            return {"simplex": True}
        return {
            "shed": self.vertex,
            "deletion": self.deletion.to_json(),
            "link": self.link.to_json(),
        }


@dataclass(frozen=True)
class ShellingCertificate:
    """Shelling order plus, per step, the facets of the pure intersection."""

    order: tuple[tuple, ...]
    intersections: tuple[tuple[tuple, ...], ...]  # for steps 2..t

    def to_json(self) -> dict:
        return {
            "order": [list(f) for f in self.order],
            "intersections": [[list(g) for g in step] for step in self.intersections],
        }


@dataclass(frozen=True)
class DecompResult:
    holds: bool
    certificate: VDCertificate | ShellingCertificate | None = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class StrongResult:
    holds: bool
    witness_face: tuple | None = None  # smallest failing face
    witness_side: str | None = None  # "costar" or "star"

    def __bool__(self) -> bool:
        return self.holds


# ---------------------------------------------------------------------------
# Public operations


def is_vertex_decomposable(
    cx: SimplicialComplex,
    *,
    budget: int = DEFAULT_BUDGET,
    want_certificate: bool = False,
    cache: DecompCache | None = None,
    memoize: bool = True,
) -> DecompResult:
    """Search for a shedding-vertex recursion; optionally return its tree."""
    masks, labels = _to_masks(cx)
    search = _Search(budget, cache, memoize)
    ok = search.vd(masks)
    cert = None
    if ok and want_certificate:
        cert = _build_vd_certificate(search, masks, labels)
    return DecompResult(ok, cert)


def _build_vd_certificate(search: _Search, masks: Masks, labels: tuple) -> VDCertificate:
    if len(masks) <= 1:
        return VDCertificate()
    v = search.vd_choice(masks)
    bit = 1 << v
    deletion = _antichain(m & ~bit if m & bit else m for m in masks)
    lnk = tuple(sorted(m & ~bit for m in masks if m & bit))
    return VDCertificate(
        vertex=labels[v],
        deletion=_build_vd_certificate(search, deletion, labels),
        link=_build_vd_certificate(search, lnk, labels),
    )


def is_shellable(
    cx: SimplicialComplex,
    *,
    budget: int = DEFAULT_BUDGET,
    want_certificate: bool = False,
    cache: DecompCache | None = None,
    memoize: bool = True,
) -> DecompResult:
    """Backtrack over reversed shelling orders; optionally return the order."""
    masks, labels = _to_masks(cx)
    search = _Search(budget, cache, memoize)
    ok = search.shellable(masks)
    cert = None
    if ok and want_certificate:
        cert = _build_shelling_certificate(search, masks, labels)
    return DecompResult(ok, cert)


def _build_shelling_certificate(
    search: _Search, masks: Masks, labels: tuple
) -> ShellingCertificate:
    removed: list[int] = []
    rest = masks
    while len(rest) > 1:
        f = search.shell_choice(rest)
        removed.append(f)
        rest = tuple(m for m in rest if m != f)
    removed.extend(rest)
    order = list(reversed(removed))

    def names(mask: int) -> tuple:
        return sort_labels(labels[i] for i in _bits(mask))

    inters = []
    for i in range(1, len(order)):
        meet = _antichain(order[i] & order[j] for j in range(i))
        inters.append(tuple(names(m) for m in meet))
    return ShellingCertificate(
        order=tuple(names(m) for m in order), intersections=tuple(inters)
    )


def replay_vd_certificate(cx: SimplicialComplex, cert: VDCertificate) -> bool:
    """Independently check a shedding-vertex tree against a complex."""
    if cert.is_leaf:
        return cx.is_simplex()
    if not cx.is_pure():
        return False
    v = cert.vertex
    if not cx.has_face([v]):
        return False
    deletion_cx = from_facets(
        [f - {v} if v in f else f for f in cx.facets]
    )
    link_cx = from_facets([f - {v} for f in cx.facets if v in f])
    return replay_vd_certificate(deletion_cx, cert.deletion) and replay_vd_certificate(
        link_cx, cert.link
    )


def replay_shelling_certificate(cx: SimplicialComplex, cert: ShellingCertificate) -> bool:
    """Check a shelling order facet by facet.

    Each step's meet with the union of the earlier facets must be pure of
    dimension one below the incoming facet; the final order must use every
    facet exactly once.
    """
    order = [frozenset(f) for f in cert.order]
    if set(order) != set(cx.facets) or len(order) != len(cx.facets):
        return False
    if len(order) > 1 and not cx.is_pure():
        return False
    for i in range(1, len(order)):
        meets = {order[i] & order[j] for j in range(i)}
        maximal = [m for m in meets if not any(m < g for g in meets)]
        if any(len(m) != len(order[i]) - 1 for m in maximal):
            return False
        declared = {frozenset(f) for f in cert.intersections[i - 1]}
        if declared != set(maximal):
            return False
    return True


def is_strongly_shellable(
    cx: SimplicialComplex,
    *,
    budget: int = DEFAULT_BUDGET,
    cache: DecompCache | None = None,
) -> StrongResult:
    """Check that the costar and star of every face are shellable."""
    return _strong(cx, "shell", budget, cache)


def is_strongly_vertex_decomposable(
    cx: SimplicialComplex,
    *,
    budget: int = DEFAULT_BUDGET,
    cache: DecompCache | None = None,
) -> StrongResult:
    """Check that the costar and star of every face are vertex decomposable."""
    return _strong(cx, "vd", budget, cache)


def _strong(
    cx: SimplicialComplex, which: str, budget: int, cache: DecompCache | None
) -> StrongResult:
    search = _Search(budget, cache, memoize=True)
    test = search.shellable if which == "shell" else search.vd
    masks, labels = _to_masks(cx)
    for fm in sorted(_faces_of_masks(masks), key=lambda f: (f.bit_count(), _bits(f))):
        # stars and costars of an antichain are antichains already
        costar_masks = tuple(m for m in masks if fm & m != fm)
        star_masks = tuple(m for m in masks if fm & m == fm)
        for side, sub in (("costar", costar_masks), ("star", star_masks)):
            if not test(sub):
                face = sort_labels(labels[i] for i in _bits(fm))
                return StrongResult(False, face, side)
    return StrongResult(True)
