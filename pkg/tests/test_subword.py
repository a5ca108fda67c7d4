"""Subword complexes: worked examples, the exponential oracle, transformations."""

from __future__ import annotations

import random
from itertools import combinations

import pytest

import subwordcx.coxeter as cox
import subwordcx.subword as sw
from subwordcx.decomp import is_vertex_decomposable
from subwordcx.errors import (
    EmptyComplex,
    FaceTooSmall,
    NotAVertex,
    NotSpherical,
    WrongPi,
)
from subwordcx.simplicial import (
    costar,
    deletion,
    from_facets,
    gf2_homology,
    link,
    ridges,
)


def system(name):
    return cox.build_system(cox.CoxeterType.parse(name))


def facet_sets(cx):
    return sorted(sorted(f) for f in cx.facets)


def brute_force_facets(sys, word, pi):
    """All facets by testing every complement for being a reduced word of pi.

    This is the definition read off directly: keep J iff the letters outside
    J form a reduced expression of pi.  Exponential; test oracle only.
    """
    r = len(word)
    lpi = cox.length(sys, pi)
    out = set()
    for keep in combinations(range(r), lpi):
        if cox.evaluate(sys, tuple(word[i] for i in keep)) == pi:
            out.add(frozenset(i + 1 for i in range(r) if i not in keep))
    return out


PENTAGON_WORD = (0, 1, 0, 1, 0)


@pytest.fixture(scope="module")
def pentagon():
    sys = system("A3")
    return sw.build(sys, PENTAGON_WORD, cox.evaluate(sys, (0, 1, 0)))


@pytest.fixture(scope="module")
def ball_47():
    sys = system("A2")
    return sw.build(sys, (0, 1, 0, 1), cox.evaluate(sys, (0, 1)))


@pytest.fixture(scope="module")
def ball_416():
    sys = system("A3")
    return sw.build(sys, (0, 1, 2, 0, 1), cox.evaluate(sys, (0, 1)))


# ---------------------------------------------------------------------------
# Construction examples


def test_pentagon_facets(pentagon):
    assert facet_sets(pentagon.complex) == [[1, 2], [1, 5], [2, 3], [3, 4], [4, 5]]


def test_cone_variant_facets():
    sys = system("A3")
    sc = sw.build(sys, (0, 1, 0, 1, 0, 2), cox.evaluate(sys, (0, 1, 0)))
    assert facet_sets(sc.complex) == [
        [1, 2, 6], [1, 5, 6], [2, 3, 6], [3, 4, 6], [4, 5, 6]
    ]
    assert all(6 in f for f in sc.complex.facets)


def test_ball_facets(ball_47):
    assert facet_sets(ball_47.complex) == [[1, 2], [2, 3], [3, 4]]


def test_empty_word_identity_target():
    sys = system("A3")
    sc = sw.build(sys, (), sys.identity)
    assert sc.complex.facets == {frozenset()}


def test_unreachable_target_gives_void_complex():
    sys = system("A2")
    sc = sw.build(sys, (0,), cox.evaluate(sys, (0, 1)))
    assert not sc.complex.facets


def test_facets_have_size_r_minus_length(pentagon):
    for r in range(9):
        sys = system("A2")
        rng = random.Random(r)
        word = tuple(rng.randrange(2) for _ in range(r))
        pi = cox.demazure_product(sys, word)
        sc = sw.build(sys, word, pi)
        k = r - cox.length(sys, pi)
        assert all(len(f) == k for f in sc.complex.facets)


@pytest.mark.parametrize("name", ["A2", "A3", "B2"])
def test_enumerator_matches_brute_force(name):
    sys = system(name)
    elements = cox.all_elements(sys)
    rng = random.Random(hash(name) & 0xFFFF)
    for _ in range(40):
        r = rng.randint(0, 9)
        word = tuple(rng.randrange(sys.n_generators) for _ in range(r))
        pi = rng.choice(elements)
        sc = sw.build(sys, word, pi)
        assert sc.complex.facets == brute_force_facets(sys, word, pi)


def test_nonempty_iff_bruhat_below_demazure():
    sys = system("B2")
    rng = random.Random(3)
    elements = cox.all_elements(sys)
    for _ in range(80):
        word = tuple(rng.randrange(2) for _ in range(rng.randint(0, 8)))
        pi = rng.choice(elements)
        sc = sw.build(sys, word, pi)
        expected = cox.bruhat_leq(sys, pi, cox.demazure_product(sys, word))
        assert bool(sc.complex.facets) == expected


# ---------------------------------------------------------------------------
# Sphericity


def test_pentagon_is_spherical(pentagon):
    assert sw.is_spherical(pentagon)


def test_ball_is_not_spherical(ball_47):
    assert not sw.is_spherical(ball_47)


def test_single_reduced_word_is_minus_one_sphere():
    sys = system("A3")
    sc = sw.build(sys, (0, 1, 0), cox.evaluate(sys, (0, 1, 0)))
    assert sc.complex.facets == {frozenset()}
    assert sw.is_spherical(sc)


def test_empty_complex_sphericity_is_an_error():
    sys = system("A2")
    sc = sw.build(sys, (0,), cox.evaluate(sys, (0, 1)))
    with pytest.raises(EmptyComplex):
        sw.is_spherical(sc)


def test_spherical_iff_pseudo_sphere_homology():
    # cross-check: spheres have every ridge in 2 facets and sphere homology
    sys = system("A2")
    rng = random.Random(5)
    for _ in range(60):
        word = tuple(rng.randrange(2) for _ in range(rng.randint(1, 8)))
        pi = cox.demazure_product(sys, word)
        sc = sw.build(sys, word, pi)  # always spherical by construction
        cx = sc.complex
        d = cx.dim
        if d is None or d < 0:
            continue
        for ridge in ridges(cx):
            assert sum(1 for f in cx.facets if ridge <= f) == 2
        betti = gf2_homology(cx)
        expected = (2,) if d == 0 else (1,) + (0,) * (d - 1) + (1,)
        assert betti == expected


# ---------------------------------------------------------------------------
# Completion to the longest element


def test_complete_to_w0_pentagon(pentagon):
    out, pos_map = sw.complete_to_w0(pentagon)
    assert out.size == pentagon.size + 3
    assert out.complex.facets == pentagon.complex.facets
    assert pos_map == {i: i for i in range(1, 6)}
    appended = set(range(pentagon.size + 1, out.size + 1))
    for f in out.complex.facets:
        assert not (f & appended)


def test_complete_to_w0_already_longest():
    sys = system("A2")
    w0 = cox.longest_element(sys)
    sc = sw.build(sys, (0, 1, 0, 1), w0)
    out, _ = sw.complete_to_w0(sc)
    assert out.size == sc.size
    assert out.complex.facets == sc.complex.facets


def test_complete_to_w0_rejects_balls(ball_47):
    with pytest.raises(NotSpherical):
        sw.complete_to_w0(ball_47)


# ---------------------------------------------------------------------------
# Rotation


def test_rotate_a2():
    sys = system("A2")
    w0 = cox.longest_element(sys)
    sc = sw.build(sys, (0, 1, 0, 1, 0), w0)
    out, pos_map = sw.rotate(sc)
    assert out.word == (1, 0, 1, 0, 1)  # psi swaps the two generators in A2
    assert pos_map == {1: 5, 2: 1, 3: 2, 4: 3, 5: 4}
    moved = {frozenset(pos_map[v] for v in f) for f in sc.complex.facets}
    assert moved == out.complex.facets


def test_rotate_requires_longest_element(pentagon):
    with pytest.raises(WrongPi):
        sw.rotate(pentagon)


def test_full_rotation_cycle_returns_to_start():
    # B2 has psi = identity, so r rotations give back the original word
    sys = system("B2")
    w0 = cox.longest_element(sys)
    sc = sw.build(sys, (0, 1, 0, 1, 0, 1), w0)
    current, composed = sc, {i: i for i in range(1, 7)}
    for _ in range(6):
        current, pos_map = sw.rotate(current)
        composed = {i: pos_map[composed[i]] for i in composed}
    assert current.word == sc.word
    assert current.complex.facets == sc.complex.facets
    assert composed == {i: i for i in range(1, 7)}


# ---------------------------------------------------------------------------
# Deleting the first position


def test_delete_position_1_descent_branch(pentagon):
    # the first letter shortens pi here, so the target shrinks
    out = sw.delete_position_1(pentagon)
    shifted = from_facets(
        [[v - 1 for v in f] for f in deletion(pentagon.complex, [1]).facets]
    )
    assert out.complex.facets == shifted.facets


def test_delete_position_1_ascent_branch():
    # first letter not a left descent of pi: the target stays
    sys = system("A3")
    pi = cox.evaluate(sys, (1, 2))
    sc = sw.build(sys, (0, 1, 2, 1), pi)
    assert sc.complex.has_face([1])
    out = sw.delete_position_1(sc)
    assert out.pi == pi
    shifted = from_facets([[v - 1 for v in f] for f in deletion(sc.complex, [1]).facets])
    assert out.complex.facets == shifted.facets


def test_delete_position_1_requires_vertex():
    sys = system("A3")
    sc = sw.build(sys, (0, 1, 0), cox.evaluate(sys, (0, 1, 0)))
    with pytest.raises(NotAVertex):
        sw.delete_position_1(sc)


def test_deletion_example_on_ball(ball_47):
    # deleting vertex 2 of the ball leaves a mixed-dimension complex
    assert facet_sets(deletion(ball_47.complex, [2])) == [[1], [3, 4]]
    assert not is_vertex_decomposable(deletion(ball_47.complex, [2])).holds


# ---------------------------------------------------------------------------
# Costar identities


def test_costar_equals_deletion_on_pentagon(pentagon):
    for v in range(1, 6):
        assert sw.costar_equals_deletion_check(pentagon, v)


def test_costar_deletion_check_rejects_balls(ball_47):
    with pytest.raises(NotSpherical):
        sw.costar_equals_deletion_check(ball_47, 2)
    # the raw comparison indeed fails on the documented instance
    assert costar(ball_47.complex, [2]).facets != deletion(ball_47.complex, [2]).facets


def test_flip_on_pentagon(pentagon):
    assert sw.flip(pentagon, [1, 2], 1) == frozenset([2, 3])
    # flipping is an involution over the shared ridge
    new = sw.flip(pentagon, [1, 2], 1)
    back = sw.flip(pentagon, new, 3)
    assert back == frozenset([1, 2])


def test_every_flip_exists_on_spherical(pentagon):
    for f in pentagon.complex.facets:
        for i in f:
            other = sw.flip(pentagon, f, i)
            assert other in pentagon.complex.facets
            assert f - {i} <= other


def test_costar_vertex_membership_spherical(pentagon):
    for face in pentagon.complex.faces():
        if len(face) >= 2:
            assert all(sw.costar_vertex_membership(pentagon, face).values())


def test_costar_vertex_membership_failure(ball_47):
    got = sw.costar_vertex_membership(ball_47, [1, 2])
    assert got == {1: False, 2: True}


def test_costar_vertex_membership_needs_two_elements(pentagon):
    with pytest.raises(FaceTooSmall):
        sw.costar_vertex_membership(pentagon, [1])


def test_costar_link_identity_on_pentagon(pentagon):
    for face in pentagon.complex.faces():
        if len(face) >= 2:
            for i in face:
                assert sw.costar_link_identity_check(pentagon, face, i)


def test_removed_letter_subcomplex_stays_spherical(pentagon):
    # the shortened word still has the same Demazure product
    for i in range(1, 6):
        sub = sw.word_without(pentagon, i)
        if sub.complex.facets:
            assert sw.is_spherical(sub)


def test_costar_deletion_identity_on_pentagon(pentagon):
    for face in pentagon.complex.faces():
        if len(face) >= 2:
            for i in face:
                assert sw.costar_deletion_identity_check(pentagon, face, i)


def test_costar_deletion_identity_failure(ball_416):
    assert facet_sets(ball_416.complex) == [[1, 2, 3], [2, 3, 4], [3, 4, 5]]
    assert facet_sets(deletion(ball_416.complex, [3])) == [[1, 2], [2, 4], [4, 5]]
    assert facet_sets(deletion(costar(ball_416.complex, [2, 3]), [3])) == [[4, 5]]
    assert not sw.costar_deletion_identity_check(ball_416, [2, 3], 3)


def test_link_is_a_smaller_subword_complex(pentagon):
    for face in pentagon.complex.faces():
        if not face:
            continue
        sub = pentagon
        for i in sorted(face, reverse=True):
            sub = sw.word_without(sub, i)
        assert link(pentagon.complex, face).facets == sub.complex.facets


# ---------------------------------------------------------------------------
# The strong decomposability pipeline


def test_strong_vd_pipeline_pentagon(pentagon):
    report = sw.strong_vd_pipeline(pentagon)
    assert report.holds
    assert len(report.entries) == 11
    assert all(s and c for _, s, c in report.entries)


def test_strong_vd_pipeline_rejects_balls(ball_47):
    with pytest.raises(NotSpherical):
        sw.strong_vd_pipeline(ball_47)


def test_inventory_is_cached_and_spherical():
    sys = system("A2")
    inv1 = sw.spherical_inventory(sys, 4)
    inv2 = sw.spherical_inventory(sys, 4)
    assert inv1 is inv2
    assert all(sw.is_spherical(sc) for sc in inv1)
    assert len(inv1) == sum(2**r for r in range(1, 5)) - 0  # every nonempty word counts


def test_subword_json_round_trip(pentagon):
    data = sw.subword_to_json(pentagon)
    sc = sw.subword_from_json(data)
    assert sc.complex.facets == pentagon.complex.facets
    assert data["word"] == [1, 2, 1, 2, 1]
