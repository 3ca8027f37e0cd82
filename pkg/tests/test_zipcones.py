from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from zipcone.groupcore import act, pairing, parse_root, parse_window
from zipcone.polycone import cone_from_halfspaces, included, intersect, saturate
from zipcone.zipcones import (
    NoPresetError, bar, bar_cone, fundamental_weight, h_w, h_Z, hasse_cone_at, hasse_weight,
    hw_forms_by_cosets, is_hasse_type, lift_bar_form, multiplicity, named_cone, p_star_inverse,
    split_hasse_test, zip_preset,
)

from conftest import BUILT_IN, context

SPLIT = [k for k in sorted(BUILT_IN) if not k.startswith("u")]


def test_h_z_examples():
    ctx = context("sp6", 5)
    assert h_Z(ctx, (1, 0, 0)) == (1, 0, -5)
    assert h_Z(ctx, (0, 0, 0)) == (0, 0, 0)
    assert h_Z(ctx, (1, 1, 1)) == (-4, -4, -4)
    assert hasse_weight(ctx, parse_root("2e3", 3)) == (-4, -4, -4)


@pytest.mark.parametrize("q", [2, 5, 13])
def test_h_w_examples(q):
    sp6 = context("sp6", q)
    assert h_w(sp6, parse_window("[135]", True), (0, 1, 0)) == (0, -q, -1)
    gl = context("gl4-31", q)
    assert bar(h_w(gl, parse_window("[2143]"), (1, 0, 0, 0))) == (-q, -(q + 1), -q)
    assert h_w(gl, parse_window("[3412]"), (0, 0, 0, 0)) == (0, 0, 0, 0)


@pytest.mark.parametrize("q", [2, 5, 13])
def test_unitary_hasse_weights_in_bar_coordinates(q):
    ctx = context("u4-31", q)
    shown = [bar(hasse_weight(ctx, a)) for a in ctx.delta]
    assert shown == [(1, 1, 1 - q), (1, 1 - q, -q), (1 - q, -q, -q)]


def test_gl4_31_hasse_weight_of_third_root():
    q = 7
    ctx = context("gl4-31", q)
    lam = hasse_weight(ctx, parse_root("e3-e4", 4))
    assert bar(lam) == (1, 0, -q)


def test_multiplicity_and_fundamental_weights():
    ctx = context("sp6")
    assert fundamental_weight(ctx, parse_root("2e3", 3)) == (1, 1, 1)
    assert fundamental_weight(ctx, parse_root("e1-e2", 3)) == (1, 0, 0)
    assert multiplicity((1, 0, 0), parse_root("e1-e3", 3)) == 1
    assert multiplicity((1, 1, 1), parse_root("2e3", 3)) == 1


@pytest.mark.parametrize("key", sorted(BUILT_IN))
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_hasse_cone_at_longest_element_is_the_hasse_cone(key, data):
    ctx = context(key, data.draw(st.sampled_from([2, 3, 5, 13])))
    chi = tuple(data.draw(st.lists(st.integers(-6, 6), min_size=ctx.n, max_size=ctx.n)))
    assert h_w(ctx, ctx.w0, chi) == h_Z(ctx, act(ctx.w0, tuple(-x for x in chi)))
    assert hasse_cone_at(ctx, ctx.w0) == named_cone(ctx, "Hasse")


@pytest.mark.parametrize("key", ["sp4", "sp6", "gl4-31", "gl4-22"])
@pytest.mark.parametrize("q", [2, 5])
def test_split_hasse_characterisation(key, q):
    ctx = context(key, q)
    n = ctx.n
    basis = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    images = [tuple(a + q * b for a, b in zip(e, act(ctx.w0I, e))) for e in basis]
    forms = [tuple(pairing(images[j], alpha) for j in range(n)) for alpha in ctx.delta]
    assert cone_from_halfspaces(forms, dim=n) == saturate(named_cone(ctx, "Hasse"))


@pytest.mark.parametrize("key", ["sp4", "sp6", "gl4-31"])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_split_hasse_test_matches_membership(key, data):
    ctx = context(key, 3)
    lam = tuple(data.draw(st.lists(st.integers(-20, 20), min_size=ctx.n, max_size=ctx.n)))
    assert split_hasse_test(ctx, lam) == (lam in saturate(named_cone(ctx, "Hasse")))


@pytest.mark.parametrize("n,mu", [(2, (1, 1)), (3, (1, 1, 1))])
@pytest.mark.parametrize("q", [2, 5, 13])
def test_symplectic_highest_weight_cone_closed_form(n, mu, q):
    from zipcone.groupcore import GroupFamily, build_context
    ctx = build_context(GroupFamily("Sp", n), mu, q)
    closed = intersect(cone_from_halfspaces([tuple(q ** (n - 1 - i) for i in range(n))], dim=n),
                       named_cone(ctx, "XplusI"))
    assert named_cone(ctx, "HW") == closed


@pytest.mark.parametrize("key", SPLIT)
@pytest.mark.parametrize("q", [2, 5])
def test_highest_weight_shortcut_agrees(key, q):
    ctx = context(key, q)
    forms = [f for f in hw_forms_by_cosets(ctx) if any(f)]
    shortcut = intersect(cone_from_halfspaces(forms, dim=ctx.n), named_cone(ctx, "XplusI"))
    assert shortcut == named_cone(ctx, "HW")


@pytest.mark.parametrize("q", [2, 5, 13])
def test_unitary_u3_weight_cones(q):
    ctx = context("u3-21", q)
    X = named_cone(ctx, "XplusI")
    assert named_cone(ctx, "LW") == intersect(cone_from_halfspaces([(q - 1, 1, -q)]), X)
    assert named_cone(ctx, "HW") == intersect(cone_from_halfspaces([(q, -(q - 1), -1)]), X)


def test_sp6_preset_at_q5():
    ctx = context("sp6", 5)
    expected = intersect(cone_from_halfspaces([(25, 1, 5), (5, 25, 1)]), named_cone(ctx, "XplusI"))
    assert zip_preset(ctx) == expected


@pytest.mark.parametrize("q", [2, 5, 13])
def test_gl4_31_preset_bars_to_the_sp6_preset(q):
    assert bar_cone(zip_preset(context("gl4-31", q))) == zip_preset(context("sp6", q))


@pytest.mark.parametrize("key", ["b2-spin", "b3-spin", "b4-spin"])
@pytest.mark.parametrize("q", [2, 5, 13])
def test_spin_preset_is_the_saturated_hasse_cone(key, q):
    ctx = context(key, q)
    assert zip_preset(ctx) == saturate(named_cone(ctx, "Hasse"))


def test_no_preset_for_u4_22():
    with pytest.raises(NoPresetError, match="no certified preset"):
        zip_preset(context("u4-22"))


def test_orbit_cone_is_split_only():
    with pytest.raises(ValueError):
        named_cone(context("u3-21"), "Orb")


def test_bar_examples():
    assert bar((1, 0, -5, 0)) == (1, 0, -5)
    assert lift_bar_form((25, 5, 1)) == (25, 5, 1, -31)
    c = named_cone(context("sp6"), "HW")
    with pytest.raises(ValueError):
        bar_cone(c)


@pytest.mark.parametrize("key,expected", [
    ("sp4", True), ("gl4-22", True), ("b2-spin", True), ("b3-spin", True), ("b4-spin", True),
    ("sp6", False), ("gl4-31", False), ("u3-21", False), ("u4-31", False),
])
def test_hasse_type(key, expected):
    for q in (2, 5, 13):
        ctx = context(key, q)
        assert is_hasse_type(ctx) is expected
        assert included(named_cone(ctx, "GS"), saturate(named_cone(ctx, "Hasse"))) is expected


def test_p_star_inverse():
    ctx = context("u3-21", 2)
    from zipcone.groupcore import frobenius
    assert p_star_inverse(ctx, (0, 0, 0)) == (0, 0, 0)
    delta = p_star_inverse(ctx, (1, -1, 0))
    sig = frobenius(ctx, delta)
    assert tuple(d - 2 * s for d, s in zip(delta, sig)) == (1, -1, 0)


@pytest.mark.parametrize("key", sorted(BUILT_IN))
def test_every_named_cone_in_type_a_contains_the_determinant_line(key):
    ctx = context(key)
    if not ctx.lattice_has_det_line:
        return
    det = (1,) * ctx.n
    for name in ("XplusI", "XminusL", "GS", "Hasse", "HW", "LW"):
        c = named_cone(ctx, name)
        assert det in c and tuple(-x for x in det) in c
