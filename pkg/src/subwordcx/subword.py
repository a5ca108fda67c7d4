"""Subword complexes and their transformation toolkit.

The complex of a word Q and a group element pi lives on the positions of Q
(1-indexed labels by default); its facets are the complements of embedded
reduced expressions of pi.  Enumeration is a depth-first scan over positions
that keeps the partial product reduced and prunes exactly when the remaining
letters cannot complete it, using per-suffix Demazure products and the
Bruhat order.  The exponential complement-check oracle lives in the test
suite and is only used to validate this enumerator.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from . import coxeter as cox
from .coxeter import CoxeterSystem, GroupElement, Word
from .decomp import DecompCache, DEFAULT_BUDGET, _Search, _to_masks
from .errors import (
    EmptyComplex,
    FaceTooSmall,
    InvalidWord,
    NotAFace,
    NotAFacet,
    NotAVertex,
    NotSpherical,
    WrongPi,
)
from .simplicial import (
    Face,
    SimplicialComplex,
    costar,
    deletion,
    from_facets,
    link,
    sort_labels,
)


@dataclass(frozen=True)
class SubwordComplex:
    """A word, a target element, and the simplicial complex they generate."""

    system: CoxeterSystem
    word: Word  # 0-indexed generator letters
    pi: GroupElement
    positions: tuple  # ground labels for the positions of the word
    complex: SimplicialComplex

    @property
    def size(self) -> int:
        return len(self.word)

    def letter_at(self, label) -> int:
        return self.word[self.positions.index(label)]

    def __repr__(self) -> str:
        w = ",".join(str(q + 1) for q in self.word)
        return f"<SC {self.system.ctype} Q=({w}) {self.complex!r}>"


def build(
    sys: CoxeterSystem,
    word: Iterable[int],
    pi: GroupElement,
    positions: Sequence | None = None,
) -> SubwordComplex:
    """Enumerate the facets of the subword complex of (word, pi).

    Positions default to 1..r.  The empty complex (no facets) appears exactly
    when no reduced expression of pi embeds in the word.
    """
    letters = cox.check_word(sys, word)
    r = len(letters)
    labels = tuple(positions) if positions is not None else tuple(range(1, r + 1))
    if len(labels) != r:
        raise InvalidWord(f"{len(labels)} position labels for {r} letters")

    lpi = cox.length(sys, pi)
    suffix_dem = [
        cox.demazure_product(sys, letters[p:]) for p in range(r + 1)
    ]
    gens = [sys.generator(i) for i in range(sys.n_generators)]
    facets: list[frozenset] = []
    kept: list[int] = []

    def rec(p: int, w: GroupElement, k: int) -> None:
        x = w.inverse() * pi
        if k + cox.length(sys, x) != lpi or not cox.bruhat_leq(sys, x, suffix_dem[p]):
            return
        if p == r:
            chosen = set(kept)
            facets.append(frozenset(labels[i] for i in range(r) if i not in chosen))
            return
        rec(p + 1, w, k)  # this position stays in the facet
        s = letters[p]
        if cox.has_right_ascent(sys, w, s):
            kept.append(p)
            rec(p + 1, w * gens[s], k + 1)
            kept.pop()

    rec(0, sys.identity, 0)
    return SubwordComplex(sys, letters, pi, labels, from_facets(facets))


def is_spherical(sc: SubwordComplex) -> bool:
    """Sphere test: the Demazure product of the word equals the target element."""
    if not sc.complex.facets:
        raise EmptyComplex("the empty subword complex is neither a ball nor a sphere")
    return cox.demazure_product(sc.system, sc.word) == sc.pi


def _require_spherical(sc: SubwordComplex) -> None:
    if not sc.complex.facets or cox.demazure_product(sc.system, sc.word) != sc.pi:
        raise NotSpherical("operation requires a spherical subword complex")


def complete_to_w0(sc: SubwordComplex) -> tuple[SubwordComplex, dict]:
    """Append a reduced word of pi^-1 w0 so the same facets target w0.

    Returns the new complex together with the position map (identity on the
    original positions; the appended positions lie in no facet).
    """
    _require_spherical(sc)
    sys = sc.system
    w0 = cox.longest_element(sys)
    tail = cox.lex_min_reduced_word(sys, sc.pi.inverse() * w0)
    new_word = sc.word + tail
    out = build(sys, new_word, w0)
    pos_map = {p: p for p in sc.positions}
    return out, pos_map


def rotate(sc: SubwordComplex) -> tuple[SubwordComplex, dict]:
    """Move the first letter s to the end as psi(s); works for pi = w0 only.

    Returns the rotated complex and the position bijection (old -> new),
    which sends the first position to the last and shifts the rest down.
    """
    sys = sc.system
    if sc.pi != cox.longest_element(sys):
        raise WrongPi("rotation is defined for the longest element only")
    if not sc.word:
        raise InvalidWord("cannot rotate an empty word")
    r = sc.size
    new_word = sc.word[1:] + (cox.psi(sys, sc.word[0]),)
    out = build(sys, new_word, sc.pi)
    pos_map = {sc.positions[0]: r}
    pos_map.update({sc.positions[i]: i for i in range(1, r)})
    return out, pos_map


def delete_position_1(sc: SubwordComplex) -> SubwordComplex:
    """Deletion of the first position, realized again as a subword complex.

    With q the first letter, the result is the complex of the shortened word
    and either pi (if left-multiplying by q raises the length) or q*pi.  The
    facets match deletion(complex, first position) with labels shifted down.
    """
    first = sc.positions[0]
    if not sc.complex.has_face([first]):
        raise NotAVertex(f"position {first} is not a vertex")
    sys = sc.system
    q = sys.generator(sc.word[0])
    qpi = q * sc.pi
    new_pi = sc.pi if cox.length(sys, qpi) > cox.length(sys, sc.pi) else qpi
    return build(sys, sc.word[1:], new_pi)


def word_without(sc: SubwordComplex, position) -> SubwordComplex:
    """Subword complex of the word with one position removed.

    The remaining positions keep their original labels, so faces avoiding
    the removed position can be compared directly.
    """
    if position not in sc.positions:
        raise NotAVertex(f"unknown position {position}")
    idx = sc.positions.index(position)
    letters = sc.word[:idx] + sc.word[idx + 1 :]
    labels = sc.positions[:idx] + sc.positions[idx + 1 :]
    return build(sc.system, letters, sc.pi, positions=labels)


def costar_equals_deletion_check(sc: SubwordComplex, vertex) -> bool:
    """Spherical-only identity: the costar of a vertex equals its deletion."""
    _require_spherical(sc)
    if not sc.complex.has_face([vertex]):
        raise NotAVertex(f"{vertex} is not a vertex")
    return costar(sc.complex, [vertex]).facets == deletion(sc.complex, [vertex]).facets


def flip(sc: SubwordComplex, facet: Iterable, i) -> Face:
    """Exchange the unique other facet over the ridge facet minus i."""
    _require_spherical(sc)
    f = frozenset(facet)
    if f not in sc.complex.facets:
        raise NotAFacet(f"{sort_labels(f)} is not a facet")
    if i not in f:
        raise NotAVertex(f"{i} is not in the facet")
    ridge = f - {i}
    containing = [g for g in sc.complex.facets if ridge <= g]
    if len(containing) != 2:
        raise NotSpherical(
            f"ridge {sort_labels(ridge)} lies in {len(containing)} facets, not 2"
        )
    return containing[0] if containing[1] == f else containing[1]


def costar_vertex_membership(sc: SubwordComplex, face: Iterable) -> dict:
    """For each i in the face, whether {i} remains a face of the costar.

    All answers are True on spherical complexes; the requirement that the
    face have at least two elements is essential (a costar never contains
    the face it removes).
    """
    f = frozenset(face)
    if len(f) < 2:
        raise FaceTooSmall("membership check needs a face with at least 2 elements")
    if not sc.complex.has_face(f):
        raise NotAFace(f"{sort_labels(f)} is not a face")
    cs = costar(sc.complex, f)
    return {i: cs.has_face([i]) for i in sort_labels(f)}


def costar_link_identity_check(sc: SubwordComplex, face: Iterable, i) -> bool:
    """Compare link-of-costar at i with the costar in the complex without q_i.

    True on spherical complexes for every face with at least two elements.
    """
    f = frozenset(face)
    if len(f) < 2:
        raise FaceTooSmall("identity needs a face with at least 2 elements")
    if i not in f:
        raise NotAVertex(f"{i} must belong to the face")
    lhs = link(costar(sc.complex, f), [i])
    rhs = costar(word_without(sc, i).complex, f - {i})
    return lhs.facets == rhs.facets


def costar_deletion_identity_check(sc: SubwordComplex, face: Iterable, i) -> bool:
    """Compare deletion-of-costar at i with plain deletion at i.

    True on spherical complexes for every face with at least two elements;
    fails in general on balls.
    """
    f = frozenset(face)
    if len(f) < 2:
        raise FaceTooSmall("identity needs a face with at least 2 elements")
    if i not in f:
        raise NotAVertex(f"{i} must belong to the face")
    lhs = deletion(costar(sc.complex, f), [i])
    rhs = deletion(sc.complex, [i])
    return lhs.facets == rhs.facets


@dataclass(frozen=True)
class PipelineReport:
    holds: bool
    entries: tuple  # (face, star decomposable, costar decomposable) per face

    def __bool__(self) -> bool:
        return self.holds


def strong_vd_pipeline(
    sc: SubwordComplex,
    *,
    budget: int = DEFAULT_BUDGET,
    cache: DecompCache | None = None,
) -> PipelineReport:
    """Vertex decomposability of the star and costar of every face.

    Spherical complexes pass with every face-witness positive; the report
    keeps the per-face verdicts for both sides.
    """
    _require_spherical(sc)
    from .decomp import _bits, _faces_of_masks

    search = _Search(budget, cache, memoize=True)
    masks, labels = _to_masks(sc.complex)
    entries = []
    ok = True
    for fm in sorted(_faces_of_masks(masks), key=lambda f: (f.bit_count(), _bits(f))):
        star_ok = search.vd(tuple(m for m in masks if fm & m == fm))
        costar_ok = search.vd(tuple(m for m in masks if fm & m != fm))
        ok = ok and star_ok and costar_ok
        entries.append((sort_labels(labels[i] for i in _bits(fm)), star_ok, costar_ok))
    return PipelineReport(ok, tuple(entries))


# ---------------------------------------------------------------------------
# Fixture inventory for sweeps


@lru_cache(maxsize=None)
def _inventory_cached(ctype: cox.CoxeterType, max_len: int) -> tuple[SubwordComplex, ...]:
    sys = cox.build_system(ctype)
    out = []
    for r in range(max_len + 1):
        for letters in product(range(sys.n_generators), repeat=r):
            pi = cox.demazure_product(sys, letters)
            if cox.length(sys, pi) >= 1:
                out.append(build(sys, letters, pi))
    return tuple(out)


def spherical_inventory(sys: CoxeterSystem, max_len: int) -> tuple[SubwordComplex, ...]:
    """Every spherical subword complex of the type with words up to max_len.

    For each word the target is its Demazure product (the unique spherical
    choice), skipping the identity.  Cached per (type, bound).
    """
    return _inventory_cached(sys.ctype, max_len)


# ---------------------------------------------------------------------------
# JSON surface


def subword_to_json(sc: SubwordComplex) -> dict:
    return {
        "type": str(sc.system.ctype),
        "word": cox.word_to_one_indexed(sc.word),
        "pi_word": cox.word_to_one_indexed(cox.lex_min_reduced_word(sc.system, sc.pi)),
    }


def subword_from_json(data: dict) -> SubwordComplex:
    sys = cox.build_system(cox.CoxeterType.parse(data["type"]))
    word = cox.word_from_one_indexed(sys, data["word"])
    pi = cox.evaluate(sys, cox.word_from_one_indexed(sys, data["pi_word"]))
    return build(sys, word, pi)
