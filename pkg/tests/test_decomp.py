"""Shellability and vertex decomposability: examples, certificates, properties."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subwordcx.decomp import (
    DecompCache,
    is_shellable,
    is_strongly_shellable,
    is_strongly_vertex_decomposable,
    is_vertex_decomposable,
    replay_shelling_certificate,
    replay_vd_certificate,
)
from subwordcx.errors import SearchBudgetExceeded
from subwordcx.simplicial import EMPTY_FACE_COMPLEX, VOID, from_facets

PENTAGON = from_facets([[1, 2], [2, 3], [3, 4], [4, 5], [1, 5]])
BALL = from_facets([[1, 2], [2, 3], [3, 4]])  # the strong-property counterexample
RP2 = from_facets(
    [[1, 2, 5], [1, 4, 5], [1, 3, 4], [2, 3, 4], [2, 4, 6],
     [1, 2, 6], [1, 3, 6], [3, 5, 6], [2, 3, 5], [4, 5, 6]]
)

small_complexes = st.lists(
    st.lists(st.integers(1, 7), min_size=1, max_size=4), min_size=1, max_size=10
).map(from_facets)


def test_simplices_are_everything():
    for cx in (VOID, EMPTY_FACE_COMPLEX, from_facets([[1, 2, 3, 4]])):
        assert is_shellable(cx).holds
        assert is_vertex_decomposable(cx).holds
        assert is_strongly_shellable(cx).holds
        assert is_strongly_vertex_decomposable(cx).holds


def test_pentagon_is_shellable_and_decomposable():
    assert is_shellable(PENTAGON).holds
    assert is_vertex_decomposable(PENTAGON).holds


def test_pentagon_explicit_shelling_order_replays():
    # the edge cycle shelled in rotation order
    from subwordcx.decomp import ShellingCertificate

    order = ((1, 2), (2, 3), (3, 4), (4, 5), (1, 5))
    inters = (((2,),), ((3,),), ((4,),), ((1,), (5,)))
    cert = ShellingCertificate(order, inters)
    assert replay_shelling_certificate(PENTAGON, cert)


def test_disconnected_ball_costar_is_not_shellable():
    costar = from_facets([[1, 2], [3, 4]])
    assert not is_shellable(costar).holds
    assert not is_vertex_decomposable(costar).holds


def test_nonpure_complex_fails_unless_simplex():
    nonpure = from_facets([[1], [3, 4]])
    assert not is_shellable(nonpure).holds
    assert not is_vertex_decomposable(nonpure).holds


def test_rp2_is_not_shellable():
    assert not is_shellable(RP2).holds
    assert not is_vertex_decomposable(RP2).holds


def test_strong_shellable_witness_on_ball():
    res = is_strongly_shellable(BALL)
    assert not res.holds
    assert res.witness_face == (2, 3)
    assert res.witness_side == "costar"


def test_strong_vd_witness_on_ball():
    res = is_strongly_vertex_decomposable(BALL)
    assert not res.holds
    assert res.witness_face == (2, 3)
    assert res.witness_side == "costar"


def test_pentagon_is_strongly_everything():
    assert is_strongly_shellable(PENTAGON).holds
    assert is_strongly_vertex_decomposable(PENTAGON).holds


def test_budget_aborts_instead_of_answering():
    with pytest.raises(SearchBudgetExceeded):
        is_shellable(RP2, budget=5)


def test_certificates_replay_on_pentagon():
    shell = is_shellable(PENTAGON, want_certificate=True)
    assert replay_shelling_certificate(PENTAGON, shell.certificate)
    vd = is_vertex_decomposable(PENTAGON, want_certificate=True)
    assert replay_vd_certificate(PENTAGON, vd.certificate)


def test_certificate_json_shapes():
    shell = is_shellable(PENTAGON, want_certificate=True).certificate.to_json()
    assert set(shell) == {"order", "intersections"}
    vd = is_vertex_decomposable(PENTAGON, want_certificate=True).certificate.to_json()
    assert "shed" in vd or "simplex" in vd


def test_replay_rejects_wrong_orders():
    from subwordcx.decomp import ShellingCertificate

    # a disconnected start: {1,2} then {3,4} meet in the empty face
    bad = ShellingCertificate(((1, 2), (3, 4), (2, 3), (4, 5), (1, 5)), (((),),) * 4)
    assert not replay_shelling_certificate(PENTAGON, bad)


def test_replay_rejects_wrong_vd_tree():
    from subwordcx.decomp import VDCertificate

    bad = VDCertificate(vertex=1, deletion=VDCertificate(), link=VDCertificate())
    # deletion of 1 from the pentagon is a path with three facets, not a simplex
    assert not replay_vd_certificate(PENTAGON, bad)


@settings(max_examples=80, deadline=None)
@given(cx=small_complexes)
def test_memoized_and_plain_searches_agree(cx):
    assert is_shellable(cx, memoize=True).holds == is_shellable(cx, memoize=False).holds
    assert (
        is_vertex_decomposable(cx, memoize=True).holds
        == is_vertex_decomposable(cx, memoize=False).holds
    )


@settings(max_examples=80, deadline=None)
@given(cx=small_complexes)
def test_vertex_decomposable_implies_shellable(cx):
    if is_vertex_decomposable(cx).holds:
        assert is_shellable(cx).holds


@settings(max_examples=80, deadline=None)
@given(cx=small_complexes)
def test_certificates_always_replay(cx):
    shell = is_shellable(cx, want_certificate=True)
    if shell.holds:
        assert replay_shelling_certificate(cx, shell.certificate)
    vd = is_vertex_decomposable(cx, want_certificate=True)
    if vd.holds:
        assert replay_vd_certificate(cx, vd.certificate)


@settings(max_examples=50, deadline=None)
@given(cx=small_complexes)
def test_strong_implies_base(cx):
    cache = DecompCache()
    if is_strongly_shellable(cx, cache=cache).holds:
        assert is_shellable(cx, cache=cache).holds
    if is_strongly_vertex_decomposable(cx, cache=cache).holds:
        assert is_vertex_decomposable(cx, cache=cache).holds


def test_cones_inherit_from_base():
    cone = from_facets([[1, 2, 9], [2, 3, 9], [3, 4, 9]])
    res = is_shellable(cone, want_certificate=True)
    assert res.holds and replay_shelling_certificate(cone, res.certificate)
    resv = is_vertex_decomposable(cone, want_certificate=True)
    assert resv.holds and replay_vd_certificate(cone, resv.certificate)
    cone_rp2 = from_facets([sorted(f) + [9] for f in [sorted(g) for g in RP2.facets]])
    assert not is_shellable(cone_rp2).holds
