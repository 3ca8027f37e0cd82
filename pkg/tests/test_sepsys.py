from __future__ import annotations

import dataclasses
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from zipcone.casebook import load_case
from zipcone.groupcore import root_label
from zipcone.polycone import FarkasCertificate, cone_from_halfspaces, included, primitive, sum_cones
from zipcone.sepsys import (
    ConeSession, RationalFunctionOfQ as RF, SeparatingSystem, certificate_scale, derive_bounds,
    hasse_cone_E, identity_holds_for_all_q, intersection_sum_cone, is_full_separating, row_sources,
    system_from_json, system_to_json, validate, verify_row,
)
from zipcone.zipcones import hasse_cone_at

from conftest import TABULATED

q = RF.variable()


# ---------------------------------------------------------------------------
# rational functions of q


def test_rational_function_basics():
    f = (q ** 2 + 1) / (q - 1)
    assert f(3) == Fraction(5)
    assert (f - f).is_zero()
    assert RF.from_json(f.to_json()).equals(f)
    assert RF.constant(0).reduced().to_json() == {"num": [0], "den": [1]}
    assert str(RF.constant(3)) == "3"
    with pytest.raises(ZeroDivisionError):
        f(1)


polys = st.lists(st.integers(-5, 5), min_size=1, max_size=4)


def _rf(num, den):
    d = list(den)
    if not any(d):
        d = [1]
    return RF(tuple(num), tuple(d))


@settings(max_examples=150, deadline=None)
@given(polys, polys, polys, polys, st.integers(-30, 30))
def test_arithmetic_commutes_with_evaluation(n1, d1, n2, d2, x):
    f, g = _rf(n1, d1), _rf(n2, d2)
    try:
        fx, gx = f(x), g(x)
    except ZeroDivisionError:
        return
    assert (f + g)(x) == fx + gx
    assert (f * g)(x) == fx * gx
    assert (f - g)(x) == fx - gx
    if gx != 0 and not g.is_zero():
        try:
            assert (f / g)(x) == fx / gx
        except ZeroDivisionError:
            pass
    assert RF.from_json(f.to_json()).equals(f)
    assert f.reduced().equals(f)


# ---------------------------------------------------------------------------
# systems from the cases


def test_validate_sp6_all_rows():
    case = load_case("sp6")
    ctx = case.context(5)
    reports = validate(ctx, case.system, 5)
    assert reports and all(r.passed for r in reports.values())
    full = [c for r in reports.values() for c in r.checks if c.name.startswith("full_separation")]
    assert full and all(c.detail == "true" for c in full)


def test_validate_flags_zero_character():
    case = load_case("sp6")
    ctx = case.context(5)
    w = case.window("[564]")
    row = case.system.row(w)
    broken = dataclasses.replace(row, entries=(dataclasses.replace(row.entries[0], chi=(0, 0, 0)),)
                                 + row.entries[1:])
    sys = SeparatingSystem({w: broken}, case.system.q_min, case.system.coordinates)
    rep = validate(ctx, sys)[str(w)]
    failing = {c.name for c in rep.checks if c.status == "fail"}
    assert any(name.startswith("(a)") for name in failing)


def test_separation_conditions_at_564():
    case = load_case("sp6")
    rep = validate(case.context(5), case.system, 5)["[564]"]
    for name in ("(b)[e1-e3]", "(c)[e1-e3]"):
        assert [c.status for c in rep.checks if c.name == name] == ["pass"]


def test_full_separation():
    case = load_case("sp6")
    ctx = case.context(5)
    assert is_full_separating(ctx, case.window("[564]"))
    assert is_full_separating(ctx, ctx.W.e)
    big = [w for w in ctx.W.elements if len(ctx.W.lower_neighbors(w)) > ctx.n]
    assert big and not any(is_full_separating(ctx, w) for w in big)


@pytest.mark.parametrize("cid", TABULATED)
def test_every_row_is_fully_separating(cid):
    case = load_case(cid)
    ctx = case.context(max(5, case.q_min))
    for w in case.system.rows:
        assert is_full_separating(ctx, w)


def test_hasse_cone_with_empty_choice_is_zero_or_the_determinant_line():
    sp6 = load_case("sp6")
    assert hasse_cone_E(sp6.context(5), sp6.system, None).rays == ()
    gl = load_case("gl4-31")
    c = hasse_cone_E(gl.context(5), gl.system, None)
    assert c.rays == () and c.lineality == ((1, 1, 1, 1),)


def test_verify_row_564_at_5_and_2():
    case = load_case("sp6")
    u = case.constants["u"]
    assert _numerator_value(u, 5) == 15296
    rep = verify_row(case.context(5), case.system, case.window("[564]"), 5)
    assert rep.passed
    low = verify_row(case.context(2), case.system, case.window("[564]"), 2)
    status = {c.name: c.status for c in low.checks}
    assert status["q_domain"] == "fail"
    assert status["bound1:nonnegative"] == "fail"
    assert not low.passed


def _numerator_value(rf, x):
    return sum(c * x ** k for k, c in enumerate(rf.num))


def test_verify_row_145_single_certificate():
    case = load_case("sp6")
    w = case.window("[145]")
    row = case.system.row(w)
    rep = verify_row(case.context(5), case.system, w, 5)
    assert rep.passed
    assert any(len(c) == 1 and c[0].index == 2 and c[0].coeff(5) == 1 for c in row.certs)


def test_length_one_bound_is_the_hasse_facet():
    case = load_case("sp6")
    ctx = case.context(5)
    for w in case.system.rows:
        if ctx.W.length(w) == 1:
            bounds = derive_bounds(ctx, case.system, w)
            assert len(bounds) == 1
            assert cone_from_halfspaces(bounds, dim=3) == hasse_cone_at(ctx, w)


@pytest.mark.parametrize("cid", TABULATED)
@pytest.mark.parametrize("qv", [5, 7])
def test_monotone_soundness(cid, qv):
    case = load_case(cid)
    ctx = case.context(qv)
    session = ConeSession(ctx, case.system)
    for w, row in case.system.rows.items():
        if ctx.W.length(w) < 2 or not row.entries:
            continue
        cone = session.cone(w)
        assert included(hasse_cone_E(ctx, case.system, row), cone)
        for e in row.entries:
            assert included(cone, sum_cones(hasse_cone_E(ctx, case.system, row), session.cone(e.neighbor)))


@pytest.mark.parametrize("cid", TABULATED)
def test_certificates_and_cone_inclusion_agree(cid):
    case = load_case(cid)
    qv = max(5, case.q_min)
    ctx = case.context(qv)
    session = ConeSession(ctx, case.system)
    for w in case.system.rows:
        rep = verify_row(ctx, case.system, w, qv, session)
        by_kind = {}
        for c in rep.checks:
            if ":" in c.name:
                tag, kind = c.name.split(":", 1)
                by_kind.setdefault(tag, {})[kind] = c.status
        for tag, kinds in by_kind.items():
            if "farkas" in kinds:
                assert kinds["farkas"] == kinds["cone_inclusion"] == "pass"
        cone = intersection_sum_cone(ctx, case.system, w, session)
        for b in case.system.bound_forms(w, qv):
            if any(b):
                assert included(cone, cone_from_halfspaces([primitive(b)], dim=ctx.n))


@pytest.mark.parametrize("cid", TABULATED)
def test_certificate_identity_is_integral_after_clearing_denominators(cid):
    case = load_case(cid)
    qv = max(5, case.q_min)
    ctx = case.context(qv)
    sys = case.system
    for w, row in sys.rows.items():
        if ctx.W.length(w) < 2:
            continue
        sources = row_sources(ctx, sys, row, qv)
        for j, target in enumerate(sys.bound_forms(w, qv)):
            coeffs = {}
            for t in row.certs[j]:
                key = (root_label(t.root), t.index)
                coeffs[key] = coeffs.get(key, Fraction(0)) + t.coeff(qv)
            cert = FarkasCertificate(coeffs)
            scale = certificate_scale(target, sources, cert)
            assert scale is not None and scale > 0
            values = list(coeffs.values()) + [scale] + [x for v in sources.values() for x in v] + list(target)
            denom = math.lcm(*(Fraction(v).denominator for v in values))
            total = [Fraction(0)] * ctx.n
            for k, a in coeffs.items():
                total = [s + a * x for s, x in zip(total, sources[k])]
            residual = [denom * (s - scale * t) for s, t in zip(total, target)]
            assert all(r == 0 and r.denominator == 1 for r in residual)


@pytest.mark.parametrize("cid", TABULATED)
def test_every_certificate_is_an_identity_in_q(cid):
    case = load_case(cid)
    ctx = case.context(5)
    for w, row in case.system.rows.items():
        if ctx.W.length(w) < 2:
            continue
        for j in range(len(row.certs)):
            assert identity_holds_for_all_q(case.system, w, j), (str(w), j)


def test_identity_check_rejects_a_tabulated_misprint():
    case = load_case("sp6", apply_errata=False)
    assert not identity_holds_for_all_q(case.system, case.window("[153]"), 0)


def test_certificate_scale():
    sources = {"a": (1, 0), "b": (0, 1)}
    assert certificate_scale((1, 1), sources, FarkasCertificate({"a": 2, "b": 2})) == 2
    assert certificate_scale((1, 1), sources, FarkasCertificate({"a": 1, "b": 2})) is None
    assert certificate_scale((1, 1), sources, FarkasCertificate({"a": -1, "b": -1})) is None
    assert certificate_scale((0, 0), sources, FarkasCertificate({})) == 1


@pytest.mark.parametrize("cid", TABULATED)
def test_system_json_round_trip(cid):
    case = load_case(cid)
    sys = case.system
    n = case.context(5).n
    again = system_from_json(system_to_json(sys), n, case.signed, sys.q_min, sys.coordinates)
    assert system_to_json(again) == system_to_json(sys)
