from __future__ import annotations

import json
import shutil
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest

from zipcone.casebook import (
    CASE_IDS, CaseDataError, UnknownCaseError, data_dir, dump_case, extremal_ray_audit, load_case,
    run_case, sweep,
)
from zipcone.groupcore import root_label
from zipcone.polycone import primitive
from zipcone.sepsys import FarkasCertificate, certificate_scale, identity_holds_for_all_q, row_sources
from zipcone.zipcones import lift_bar_form

from conftest import TABULATED

SCHEMAS = Path(__file__).resolve().parents[1] / "src" / "zipcone" / "schemas"
SHIPPED = ("sp4", "sp6", "gl3-21", "gl4-31", "gl4-22", "u3-21", "u4-31", "u4-22-exploratory")


def _schema(name: str) -> dict:
    return json.loads((SCHEMAS / name).read_text())


# ---------------------------------------------------------------------------
# loading


def test_sp6_rows():
    case = load_case("sp6")
    windows = [str(w) for w in case.system.rows]
    assert len(windows) == 24
    assert windows[0] == "[132]" and windows[-1] == "[564]"
    assert "[123]" not in windows


def test_u3_21_rows():
    case = load_case("u3-21")
    assert [str(w) for w in case.system.rows] == ["[132]", "[213]", "[231]"]


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_gl4_22_epsilon_bound_pair(q):
    case = load_case("gl4-22")
    eps = case.constant("epsilon", q)
    assert eps == Fraction((q + 1) ** 2, q ** 3 + 2 * q ** 2 + 1)
    forms = case.system.bound_forms(case.window("[3421]"), q)
    assert forms == [lift_bar_form((0, 1, 0)), lift_bar_form((1, eps, 0))]


def test_exploratory_case_has_no_rows():
    case = load_case("u4-22-exploratory")
    assert case.system is None and not case.certified


@pytest.mark.parametrize("name", ["b_n-spin(2)", "b3-spin", "b4-spin", "b_n-spin"])
def test_spin_ids(name):
    case = load_case(name)
    assert case.family.tag == "SO" and case.system is None
    assert case.mu[0] == 1 and not any(case.mu[1:])


@pytest.mark.parametrize("name", ["sp8", "gl5-41", "b1-spin", ""])
def test_unknown_case(name):
    with pytest.raises(UnknownCaseError):
        load_case(name)


@pytest.mark.parametrize("cid", SHIPPED)
def test_case_files_match_schema(cid):
    raw = json.loads((data_dir() / f"{cid}.json").read_text())
    jsonschema.validate(raw, _schema("casefile.schema.json"))


@pytest.mark.parametrize("cid", SHIPPED)
def test_dump_round_trips_byte_identically(cid):
    text = (data_dir() / f"{cid}.json").read_text()
    assert dump_case(load_case(cid)) == text
    assert dump_case(load_case(cid, apply_errata=False)) == text


def test_data_override(tmp_path, monkeypatch):
    for cid in ("sp6", "u3-21"):
        shutil.copy(data_dir() / f"{cid}.json", tmp_path)
    monkeypatch.setenv("ZIPCONE_DATA", str(tmp_path))
    assert data_dir() == tmp_path
    assert len(load_case("u3-21").system.rows) == 3
    with pytest.raises(UnknownCaseError):
        load_case("gl4-31")


def test_stale_weight_is_rejected(tmp_path, monkeypatch):
    raw = json.loads((data_dir() / "gl4-22.json").read_text())
    row = next(r for r in raw["rows"] if r["w"] == "[3421]")
    row["system"][0]["h"][2] = {"num": [-1, 2], "den": [1]}
    (tmp_path / "gl4-22.json").write_text(json.dumps(raw))
    monkeypatch.setenv("ZIPCONE_DATA", str(tmp_path))
    with pytest.raises(CaseDataError, match=r"\[3421\]"):
        load_case("gl4-22")
    assert load_case("gl4-22", check_fidelity=False).system is not None


# ---------------------------------------------------------------------------
# errata: the tabulated values fail, the corrections pass


TABULATED_FAILURES = {
    "sp6": {"[153]", "[264]", "[365]"},
    "gl4-31": set(),
    "gl4-22": {"[4321]"},
    "u3-21": set(),
    "u4-31": {"[2341]", "[3241]"},
}


@pytest.mark.parametrize("cid", TABULATED)
def test_tabulated_values_fail_where_corrected(cid):
    case = load_case(cid, apply_errata=False)
    res = run_case(case, 5)
    failing = {k for k, r in res.rows.items() if not r.passed}
    assert failing == TABULATED_FAILURES[cid]
    assert res.status == ("fail" if failing else "pass")
    assert run_case(cid, 5).passed


def test_tabulated_repairs_agree_with_errata():
    res = run_case(load_case("sp6", apply_errata=False), 5)
    assert res.rows["[153]"].repairs[1] == {"e2+e3#1": "31/156", "e2-e3#1": "5/156"}
    res = run_case(load_case("gl4-22", apply_errata=False), 5)
    assert res.rows["[4321]"].repairs[1] == {"e1-e2#1": "2/11", "e1-e2#2": "4", "e3-e4#1": "1"}
    res = run_case(load_case("u4-31", apply_errata=False), 5)
    assert res.rows["[3241]"].repairs[1] == {"e1-e2#1": "1"}


@pytest.mark.parametrize("cid", [c for c in TABULATED if load_case(c).errata])
def test_corrected_certificates_hold_identically(cid):
    case = load_case(cid)
    for e in case.errata:
        if e.field != "certificates":
            continue
        assert identity_holds_for_all_q(case.system, case.window(e.w), e.index - 1)


@pytest.mark.parametrize("q", [5, 7, 13])
def test_erratum_at_153_reproduces_its_bound(q):
    case = load_case("sp6")
    ctx = case.context(q)
    w = case.window("[153]")
    row = case.system.row(w)
    sources = row_sources(ctx, case.system, row, q)
    coeffs = {(root_label(t.root), t.index): t.coeff(q) for t in row.certs[0]}
    target = case.system.bound_forms(w, q)[0]
    assert certificate_scale(target, sources, FarkasCertificate(coeffs)) == 1


# ---------------------------------------------------------------------------
# running cases


def test_sp6_refuses_below_five():
    res = run_case("sp6", 3)
    assert res.status == "refused"
    assert "u(q) negative" in res.refused
    assert not res.rows
    assert any(c.name == "[564]:verify" and c.status == "fail" for c in res.info)


def test_u4_31_at_two():
    res = run_case("u4-31", 2)
    assert res.passed
    for name in ("lemma31inert", "prop-U31-inert-van", "thm-U31-conj"):
        assert res.fact(name).status == "pass"


def test_exploratory_is_refused():
    res = run_case("u4-22-exploratory", 5)
    assert res.status == "refused" and "no certificates" in res.refused


@pytest.mark.parametrize("cid", ["sp4", "gl3-21", "b_n-spin(2)", "b3-spin"])
def test_untabulated_cases(cid):
    res = run_case(cid, 5)
    assert res.passed and res.fact("hasse-type").status == "pass"


def test_case_result_json():
    res = run_case("gl4-22", 3).to_json()
    assert res["status"] == "pass"
    json.dumps(res)
    assert [f["name"] for f in res["facts"]] == ["propGL22", "thmGL22-conj"]


def test_conclusion_needs_prerequisite_rows():
    res = run_case(load_case("gl4-22", apply_errata=False), 5)
    fact = res.fact("thmGL22-conj")
    assert fact.status == "fail" and "prerequisite rows" in fact.detail
    assert res.fact("propGL22").status == "pass"


# ---------------------------------------------------------------------------
# sweep


def test_sweep_sp6():
    rep = sweep(["sp6"], [5, 7, 8, 9, 11, 13, 25, 49])
    assert rep["summary"] == {"pass": 8, "fail": 0, "refused": 0}
    assert [e["q"] for e in rep["entries"]] == [5, 7, 8, 9, 11, 13, 25, 49]


def test_sweep_gl4_31_has_no_q_restriction():
    assert sweep(["gl4-31"], [2, 3, 4, 5])["summary"]["pass"] == 4


def test_sweep_empty():
    rep = sweep([], [2, 3])
    assert rep["entries"] == [] and rep["summary"] == {"pass": 0, "fail": 0, "refused": 0}


def test_sweep_parallel_is_deterministic():
    args = (["u3-21", "sp6", "gl4-22"], [3, 2, 5])
    one = sweep(*args)
    two = sweep(*args, jobs=2)
    assert json.dumps(one, sort_keys=True) == json.dumps(two, sort_keys=True)
    assert [(e["case"], e["q"]) for e in one["entries"]][:3] == [("u3-21", 2), ("u3-21", 3), ("u3-21", 5)]
    assert one["summary"] == {"pass": 7, "fail": 0, "refused": 2}


# ---------------------------------------------------------------------------
# extremal ray audit


def test_audit_sp6():
    rep = extremal_ray_audit("sp6", 5)
    by_root = {r["root"]: r for r in rep["simple_roots"]}
    assert by_root["e1-e2"]["A_extremal"] and by_root["e1-e2"]["B_outside_GS"]
    assert by_root["e2-e3"]["lambda"] == [1, -4, -5]
    assert not by_root["e2-e3"]["A_extremal"]
    assert len(rep["rays"]) == 4


def test_audit_sp4():
    rep = extremal_ray_audit("sp4", 5)
    assert {tuple(r) for r in rep["rays"]} == {primitive((1, -5)), primitive((-4, -4))}
    assert [r["lambda"] for r in rep["simple_roots"]] == [[1, -5], [-4, -4]]


def test_audit_u3_21():
    rep = extremal_ray_audit("u3-21", 5)
    assert rep["coordinates"] == "bar"
    rays = {tuple(r) for r in rep["rays"]}
    assert primitive((1, -4)) in rays and primitive((-24, -24)) in rays


def test_case_ids_are_listed():
    assert set(SHIPPED) - {"u4-22-exploratory"} < set(CASE_IDS)
