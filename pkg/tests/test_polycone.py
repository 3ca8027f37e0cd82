from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from zipcone.polycone import (
    MAX_DIM, FarkasCertificate, Halfspace, Infeasible, cone_from_generators, cone_from_halfspaces,
    contains, equal, facets, farkas_search, farkas_verify, format_form, full_space, included,
    intersect, linear_combination, primitive, rays_of, saturate, sum_cones, zero_cone,
)


# ---------------------------------------------------------------------------
# examples


def test_quadrant_facets():
    c = cone_from_generators([(1, 0), (0, 1)])
    assert {h.normal for h in c.facets} == {(-1, 0), (0, -1)}


def test_opposite_rays_merge_into_lineality():
    c = cone_from_generators([(1, 0), (-1, 0)])
    assert c.lineality == ((1, 0),)
    assert c.rays == ()
    assert {h.normal for h in c.facets} == {(0, 1), (0, -1)}


def test_rays_are_stored_primitive():
    assert cone_from_generators([(2, 0)]).rays == ((1, 0),)
    assert primitive((Fraction(2, 3), 4)) == (1, 6)


def test_sp6_preset_has_four_extremal_rays_at_q5():
    q = 5
    c = rays_of([(-1, 1, 0), (0, -1, 1), (q * q, 1, q), (q, q * q, 1)], dim=3)
    assert set(c.rays) == {(1, 0, -5), (-1, -1, -1), (1, 1, -30), (6, -25, -25)}
    assert c.is_pointed


def test_single_halfspace_in_the_plane():
    c = cone_from_halfspaces([(1, 0)])
    assert c.rays == ((-1, 0),)
    assert c.lineality == ((0, 1),)


def test_membership_example():
    hw = cone_from_halfspaces([(25, 5, 1)])
    assert not contains(hw, (1, 0, -5))
    assert (1, 0, -30) in hw


def test_zero_cone_and_full_space_are_total():
    z, f = zero_cone(3), full_space(3)
    assert included(z, f) and not included(f, z)
    assert z.rays == () and z.lineality == ()
    assert intersect(z, f) == z
    assert sum_cones(z, f) == f
    assert saturate(z) == z
    assert len(z.facets) == 6
    assert f.facets == ()


def test_dimension_cap_and_mismatch():
    with pytest.raises(ValueError):
        cone_from_generators([(1,) * (MAX_DIM + 1)])
    with pytest.raises(ValueError):
        included(zero_cone(2), zero_cone(3))


def test_format_form():
    assert format_form((25, 5, 1)) == "25a1+5a2+a3"
    assert format_form((4, 1, -5)) == "4a1+a2-5a3"
    assert format_form((0, 0)) == "0"
    assert str(Halfspace((0, -1, 1))) == "-a2+a3 <= 0"


def test_gl4_31_certificate_example():
    q = 7
    target = (q * q, q, 1)
    sources = [(0, q, 1), (1, 0, 0)]
    assert farkas_verify(target, sources, FarkasCertificate({0: 1, 1: q * q}))
    assert not farkas_verify(target, sources, FarkasCertificate({0: 1, 1: q}))


def test_negative_coefficients_fail_verification():
    assert not farkas_verify((0, 0), [(1, 0)], FarkasCertificate({0: -1}))
    assert not FarkasCertificate({0: -1}).nonnegative


def test_infeasible_example_with_witness():
    found = farkas_search((1, 0), [(-1, 0)])
    assert isinstance(found, Infeasible)
    assert found.witness == (1, 0)


def test_zero_target_gets_the_zero_certificate():
    found = farkas_search((0, 0, 0), [(1, 0, 0)])
    assert isinstance(found, FarkasCertificate)
    assert linear_combination([(1, 0, 0)], found, 3) == (0, 0, 0)


def test_labelled_sources():
    found = farkas_search((2, 2), {"x": (1, 0), "y": (0, 1)})
    assert found.coefficients == {"x": 2, "y": 2}


# ---------------------------------------------------------------------------
# properties

vectors = {d: st.lists(st.integers(-9, 9), min_size=d, max_size=d).map(tuple) for d in range(1, 5)}


@st.composite
def cones(draw, dim=None):
    d = dim or draw(st.integers(1, 4))
    rays = draw(st.lists(vectors[d], min_size=0, max_size=6))
    lin = draw(st.lists(vectors[d], min_size=0, max_size=1))
    return cone_from_generators(rays, lin, dim=d)


def _rank(vectors, dim):
    if not vectors:
        return 0
    return sympy.Matrix([list(v) for v in vectors]).rank()


def _facets_are_supported(c):
    """Independent check: each facet hyperplane holds dim-1 independent generators."""
    gens = list(c.rays) + list(c.lineality) + [tuple(-x for x in l) for l in c.lineality]
    normals, eqs = c.inequalities()
    span = _rank(gens, c.dim)
    for h in c.facets:
        if h.normal in eqs or tuple(-x for x in h.normal) in eqs:
            continue
        on = [g for g in gens if sum(a * b for a, b in zip(h.normal, g)) == 0]
        if _rank(on, c.dim) != span - 1:
            return False
    return True


@settings(max_examples=150, deadline=None)
@given(cones())
def test_v_to_h_to_v_round_trip(c):
    back = cone_from_halfspaces(c.facets, dim=c.dim)
    assert included(back, c) and included(c, back)
    again = cone_from_generators(back.rays, back.lineality, dim=c.dim)
    assert again == c
    assert _facets_are_supported(c)


@settings(max_examples=100, deadline=None)
@given(cones(), cones())
def test_membership_sum_and_intersection(c1, c2):
    if c1.dim != c2.dim:
        return
    for r in c1.rays:
        assert r in c1
    s = sum_cones(c1, c2)
    for r in c1.rays + c2.rays:
        assert r in s
    i = intersect(c1, c2)
    assert included(i, c1) and included(i, c2)
    assert included(c1, s) and included(c2, s)


@settings(max_examples=100, deadline=None)
@given(cones())
def test_saturation_is_idempotent_with_the_same_facets(c):
    s = saturate(c)
    assert included(c, s)
    assert s.facets == c.facets
    assert saturate(s) == s


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(lambda d: st.tuples(vectors[d], st.lists(vectors[d], max_size=5))))
def test_farkas_search_agrees_with_verify(data):
    target, sources = data
    found = farkas_search(target, sources)
    if isinstance(found, FarkasCertificate):
        assert found.nonnegative
        assert farkas_verify(target, sources, found)
    else:
        w = found.witness
        assert sum(a * b for a, b in zip(target, w)) > 0
        for s in sources:
            assert sum(a * b for a, b in zip(s, w)) <= 0


@settings(max_examples=100, deadline=None)
@given(cones(dim=3))
def test_equal_is_mutual_inclusion(c):
    d = cone_from_halfspaces(facets(c), dim=3)
    assert equal(c, d) == (included(c, d) and included(d, c))
    assert hash(c) == hash(d)
