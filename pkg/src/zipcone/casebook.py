"""
Shipped cases: loading the tabulated separating systems and running them.

Case files live in ``zipcone/data`` (override with ``ZIPCONE_DATA``).  Each
stores the tables as tabulated, plus a list of errata; corrections are
applied on load unless ``apply_errata=False``.

>>> case = load_case("u3-21")
>>> [str(w) for w in case.system.rows]
['[132]', '[213]', '[231]']
>>> run_case("u3-21", 5).passed
True
"""

from __future__ import annotations

import copy
import json
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .groupcore import GroupFamily, WeylElt, ZipContext, build_context, parse_window, root_label
from .polycone import (
    Cone, Halfspace, Infeasible, cone_from_halfspaces, farkas_search, included, intersect,
    primitive, saturate, sum_cones,
)
from .sepsys import (
    RF, Check, ConeSession, RowReport, SeparatingSystem, derive_bounds, system_from_json,
    system_to_json, verify_row,
)
from .zipcones import (
    bar, bar_cone, h_w, hasse_weight, is_hasse_type, lift_bar_form, lw_forms, named_cone,
)

__all__ = [
    "CASE_IDS", "DATA_ENV", "Case", "CaseResult", "CaseDataError", "Erratum", "UnknownCaseError",
    "data_dir", "load_case", "dump_case", "run_case", "sweep", "extremal_ray_audit",
    "reachable_rows",
]

CASE_IDS = ("sp4", "sp6", "gl3-21", "gl4-31", "gl4-22", "u3-21", "u4-31", "b_n-spin", "u4-22-exploratory")
DATA_ENV = "ZIPCONE_DATA"
FIDELITY_Q = (2, 5, 13)

_SPIN = re.compile(r"^b_?(\d+)-spin$|^b_n-spin\((\d+)\)$")


class UnknownCaseError(KeyError):
    """The case id is not one of :data:`CASE_IDS`."""


class CaseDataError(ValueError):
    """A case file is malformed or disagrees with a recomputation."""


def data_dir() -> Path:
    """Directory holding the case files, honouring ``ZIPCONE_DATA``."""
    override = os.environ.get(DATA_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("zipcone") / "data"))


# ---------------------------------------------------------------------------
# case objects


@dataclass(frozen=True)
class Erratum:
    w: str
    field: str
    index: int | None
    tabulated: object
    corrected: object
    reason: str

    def to_json(self) -> dict:
        out = {"w": self.w, "field": self.field}
        if self.index is not None:
            out["index"] = self.index
        out.update({"tabulated": self.tabulated, "corrected": self.corrected, "reason": self.reason})
        return out


@dataclass(frozen=True)
class Terminal:
    w: str
    bound: int
    fact: str


@dataclass(frozen=True)
class Case:
    """One shipped case with its separating system (``None`` when untabulated)."""

    id: str
    title: str
    family: GroupFamily
    mu: tuple[int, ...]
    coordinates: str
    q_min: int
    certified: bool
    presets: tuple[tuple[RF, ...], ...]
    constants: Mapping[str, object]
    terminal: tuple[Terminal, ...]
    system: SeparatingSystem | None
    errata: tuple[Erratum, ...] = ()
    errata_applied: bool = True
    refusal: str | None = None
    rank_label: object = None

    @property
    def signed(self) -> bool:
        return self.family.root_type != "A"

    def context(self, q: int) -> ZipContext:
        return build_context(self.family, self.mu, q)

    def window(self, text: str) -> WeylElt:
        text = text.strip()
        if not text.startswith("["):
            text = f"[{text}]"
        return parse_window(text, self.signed)

    def preset_forms(self, q: int) -> list[tuple[Fraction, ...]]:
        """Preset forms of the case file in full coordinates."""
        forms = [tuple(c(q) for c in f) for f in self.presets]
        return [lift_bar_form(f) if self.coordinates == "bar" else f for f in forms]

    def constant(self, name: str, q: int):
        value = self.constants[name]
        return tuple(c(q) for c in value) if isinstance(value, tuple) else value(q)


def _rf_vec(obj: Sequence[Mapping]) -> tuple[RF, ...]:
    return tuple(RF.from_json(x) for x in obj)


def _apply_errata(rows: list[dict], errata: Iterable[Erratum], corrected: bool) -> list[dict]:
    rows = copy.deepcopy(rows)
    by_w = {r["w"]: r for r in rows}
    for e in errata:
        if e.w not in by_w:
            raise CaseDataError(f"erratum for unknown row {e.w}")
        value = copy.deepcopy(e.corrected if corrected else e.tabulated)
        if e.index is None:
            by_w[e.w][e.field] = value
        else:
            by_w[e.w][e.field][e.index - 1] = value
    return rows


def _spin_case(n: int) -> Case:
    if n < 2:
        raise UnknownCaseError(f"b_n-spin needs n >= 2, got {n}")
    mu = (1,) + (0,) * (n - 1)
    return Case(f"b_n-spin({n})", f"SO({2 * n + 1}), spin cocharacter", GroupFamily("SO", n), mu,
                "full", 2, False, (), {}, (), None, rank_label=n)


def _read(case_id: str) -> dict:
    path = data_dir() / f"{case_id}.json"
    if not path.exists():
        raise UnknownCaseError(f"no case file for {case_id!r} in {path.parent}")
    return json.loads(path.read_text())


def load_case(case_id: str, *, apply_errata: bool = True, check_fidelity: bool = True) -> Case:
    """Load a shipped case by id.

    ``b_n-spin(n)`` (also ``b3-spin``) builds the untabulated spin case of
    SO(2n+1).  With ``check_fidelity`` every stored ``h_w(chi)`` is compared
    with a recomputation at ``q`` in :data:`FIDELITY_Q`.
    """
    m = _SPIN.match(case_id)
    if m:
        return _spin_case(int(m.group(1) or m.group(2)))
    if case_id == "b_n-spin":
        return _spin_case(3)
    if case_id not in CASE_IDS:
        raise UnknownCaseError(f"unknown case {case_id!r}; expected one of {', '.join(CASE_IDS)}")
    raw = _read(case_id)
    family = GroupFamily(raw["family"], raw["rank"])
    errata = tuple(Erratum(e["w"], e["field"], e.get("index"), e["tabulated"], e["corrected"], e["reason"])
                   for e in raw.get("errata", ()))
    system = None
    if raw["rows"]:
        rows = _apply_errata(raw["rows"], errata, apply_errata)
        try:
            system = system_from_json(rows, family.rank, family.root_type != "A", raw["q_min"],
                                      raw["coordinates"])
        except ValueError as exc:
            raise CaseDataError(f"{case_id}: {exc}") from exc
    constants = {k: (_rf_vec(v) if isinstance(v, list) else RF.from_json(v))
                 for k, v in raw.get("constants", {}).items()}
    case = Case(
        raw["id"], raw.get("title", ""), family, tuple(raw["mu"]), raw["coordinates"], raw["q_min"],
        raw["certified"], tuple(_rf_vec(f) for f in raw.get("preset", ())), constants,
        tuple(Terminal(t["w"], t["bound"], t["fact"]) for t in raw.get("terminal", ())),
        system, errata, apply_errata, raw.get("refusal"), raw["rank"],
    )
    if check_fidelity and system is not None:
        _check_fidelity(case)
    return case


def _check_fidelity(case: Case) -> None:
    sys = case.system
    for q in FIDELITY_Q:
        ctx = case.context(q)
        for w, row in sys.rows.items():
            for e in row.entries:
                expect = tuple(Fraction(x) for x in sys.weight_table(h_w(ctx, w, sys.char_full(e.chi))))
                stored = tuple(c(q) for c in e.h)
                if stored != expect:
                    raise CaseDataError(f"{case.id} {w}: stored h for {e.root} is {stored} at q={q}, "
                                        f"recomputed {expect}")


def _encode_const(value) -> object:
    return [c.to_json() for c in value] if isinstance(value, tuple) else value.to_json()


def case_to_json(case: Case) -> dict:
    """Structure of the case file, rebuilt from the loaded objects."""
    if case.system is None:
        rows = []
    else:
        rows = _apply_errata(system_to_json(case.system), case.errata, False)
    out = {
        "id": case.id,
        "title": case.title,
        "family": case.family.tag,
        "rank": case.rank_label,
        "mu": list(case.mu),
        "coordinates": case.coordinates,
        "q_min": case.q_min,
        "certified": case.certified,
        "preset": [[c.to_json() for c in f] for f in case.presets],
        "constants": {k: _encode_const(v) for k, v in case.constants.items()},
        "terminal": [{"w": t.w, "bound": t.bound, "fact": t.fact} for t in case.terminal],
        "rows": rows,
        "errata": [e.to_json() for e in case.errata],
    }
    if case.refusal:
        out["refusal"] = case.refusal
    return out


def dump_case(case: Case) -> str:
    """Serialise a case in the on-disk layout (round-trips byte-identically)."""
    return json.dumps(case_to_json(case), indent=1, ensure_ascii=True) + "\n"


def reachable_rows(system: SeparatingSystem, w: WeylElt) -> list[WeylElt]:
    """``w`` and every row reached from it through chosen lower neighbours."""
    seen, stack = [], [w]
    while stack:
        v = stack.pop()
        if v in seen or system.row(v) is None:
            continue
        seen.append(v)
        stack.extend(e.neighbor for e in system.row(v).entries)
    return seen


# ---------------------------------------------------------------------------
# running a case


@dataclass
class CaseResult:
    case: str
    q: int
    rows: dict[str, RowReport] = field(default_factory=dict)
    facts: list[Check] = field(default_factory=list)
    refused: str | None = None
    info: list[Check] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.refused:
            return "refused"
        ok = all(r.passed for r in self.rows.values()) and all(f.status == "pass" for f in self.facts)
        return "pass" if ok else "fail"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def fact(self, name: str) -> Check:
        for f in self.facts:
            if f.name == name:
                return f
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "q": self.q,
            "status": self.status,
            "refused": self.refused,
            "rows": [self.rows[k].to_json() for k in self.rows],
            "facts": [f.to_json() for f in self.facts],
            "info": [c.to_json() for c in self.info],
        }


def _fact(result: CaseResult, name: str, parts: Sequence[tuple[str, bool]], rows_ok: bool = True) -> None:
    failed = [label for label, ok in parts if not ok]
    if not rows_ok:
        failed.insert(0, "prerequisite rows")
    detail = "; ".join(label for label, _ in parts)
    if failed:
        detail += " | failed: " + "; ".join(failed)
    result.facts.append(Check(name, "fail" if failed else "pass", detail))


def _xplus(ctx: ZipContext) -> Cone:
    return named_cone(ctx, "XplusI")


def _halfspace_cone(ctx: ZipContext, forms: Sequence[Sequence]) -> Cone:
    return intersect(cone_from_halfspaces([primitive(f) for f in forms], dim=ctx.n), _xplus(ctx))


def _rays_as_set(rays: Iterable[Sequence]) -> set[tuple[int, ...]]:
    return {tuple(primitive(r)) for r in rays}


def _terminal_facts(case: Case, ctx: ZipContext, result: CaseResult, session: ConeSession) -> None:
    sys = case.system
    q = ctx.q
    X = _xplus(ctx)
    hasse = named_cone(ctx, "Hasse")
    preset = named_cone(ctx, "ZipPreset")
    hw = named_cone(ctx, "HW")
    lw = named_cone(ctx, "LW")

    def rows_ok(w: WeylElt) -> bool:
        return all(result.rows[str(v)].passed for v in reachable_rows(sys, w))

    def terminal_cones(w: WeylElt) -> tuple[Cone, Cone]:
        cone = session.cone(w)
        inner = intersect(cone, X)
        return inner, saturate(sum_cones(hasse, inner))

    def bound(w: WeylElt, j: int) -> tuple:
        return primitive(sys.bound_forms(w, q)[j - 1])

    cid = case.id
    if cid == "sp6":
        w = case.window("[564]")
        inner, total = terminal_cones(w)
        _fact(result, "lem-564", [
            ("[564] bound 1 is the C_hw facet (q^2, q, 1)", bound(w, 1) == primitive((q * q, q, 1))),
            ("(q^2, q, 1) is a facet of C_hw", Halfspace((q * q, q, 1)) in hw.facets),
            ("C+_[564] within X+I lies in C_hw", included(inner, hw)),
        ], rows_ok(w))
        _fact(result, "thm-conjSp6", [
            ("<C_Hasse + (C+_[564] within X+I)> = zip preset", total == preset),
        ], rows_ok(w))
    elif cid == "gl4-31":
        w = case.window("[4312]")
        inner, total = terminal_cones(w)
        hw_facet = (q * q, q, 1, -(q * q + q + 1))
        _fact(result, "prop-GL31-van", [
            ("[4312] bound 1 is bar of the C_hw facet (q^2, q, 1, -(q^2+q+1))", bound(w, 1) == primitive(hw_facet)),
            ("(q^2, q, 1, -(q^2+q+1)) is a facet of C_hw", Halfspace(hw_facet) in hw.facets),
            ("C+_[4312] within X+I lies in C_hw", included(inner, hw)),
        ], rows_ok(w))
        eta1 = case.constant("eta1", q)
        eta2 = case.constant("eta2", q)
        expected = _rays_as_set([(1, 0, -q), (1 - q, 1 - q, 1 - q), eta1, eta2])
        rays = _rays_as_set(bar_cone(preset).rays)
        _fact(result, "thm-conjGL31", [
            ("<C_Hasse + (C+_[4312] within X+I)> = zip preset", total == preset),
            ("bar preset rays are (1,0,-q), (1-q)(1,1,1), eta1, eta2", rays == expected),
        ], rows_ok(w))
    elif cid == "gl4-22":
        w3421, w4312, w0 = case.window("[3421]"), case.window("[4312]"), case.window("[4321]")
        eps = case.constant("epsilon", q)
        _fact(result, "propGL22", [
            ("[3421] bounds are a2 <= 0 and a1 + eps(q) a2 <= 0",
             sys.bound_forms(w3421, q) == [lift_bar_form((0, 1, 0)), lift_bar_form((1, eps, 0))]),
            ("[4312] bound is a1 - a3 <= 0", bound(w4312, 1) == primitive(lift_bar_form((1, 0, -1)))),
        ], rows_ok(w3421) and rows_ok(w4312))
        inner, total = terminal_cones(w0)
        closed = _halfspace_cone(ctx, [(q, 1, -1, -q)])
        _fact(result, "thmGL22-conj", [
            ("[4321] bound is q(a1-a4) + (a2-a3) <= 0", bound(w0, 1) == primitive((q, 1, -1, -q))),
            ("C_hw = <C_Hasse>", hw == saturate(hasse)),
            ("<C_Hasse> = zip preset", saturate(hasse) == preset),
            ("zip preset = {q(a1-a4)+(a2-a3) <= 0} within X+I", preset == closed),
            ("<C_Hasse + (C+_[4321] within X+I)> = zip preset", total == preset),
            ("Hasse type", is_hasse_type(ctx)),
        ], rows_ok(w0))
    elif cid == "u3-21":
        w = case.window("[231]")
        inner, total = terminal_cones(w)
        target = (1, 0, -1)
        derived = derive_bounds(ctx, sys, w, session)
        implied = not isinstance(farkas_search(target, [h.normal for h in derived]), Infeasible)
        _fact(result, "propU21inert", [
            ("[231] bound is a1 - a3 <= 0", bound(w, 1) == target),
            ("derived facets of C+_[231] imply a1 - a3 <= 0", implied),
        ], rows_ok(w))
        _fact(result, "thm-U21inert", [
            ("<C_Hasse + (C+_[231] within X+I)> = zip preset", total == preset),
            ("C_lw = {(q-1)a1 + a2 - q a3 <= 0} within X+I", lw == _halfspace_cone(ctx, [(q - 1, 1, -q)])),
            ("C_hw = {q a1 - (q-1)a2 - a3 <= 0} within X+I", hw == _halfspace_cone(ctx, [(q, -(q - 1), -1)])),
            ("zip preset = C_lw", preset == lw),
        ], rows_ok(w))
    elif cid == "u4-31":
        w = case.window("[3421]")
        inner, total = terminal_cones(w)
        first = (q - 1, 0, 1, -q)
        second = (0, -(q - 1), q, -1)
        raw = lw_forms(ctx)
        proportional = len(raw) == 2 and all(primitive(r) == primitive(f) for r, f in zip(raw, (first, second)))
        dominance = [h.normal for h in X.facets]
        implied = not isinstance(farkas_search(second, [first] + dominance), Infeasible)
        _fact(result, "lemma31inert", [
            ("raw lowest weight forms are positive multiples of the two displayed forms", proportional),
            ("the first implies the second within X+I", implied),
            ("C_lw = {(q-1)(a1-a4) + (a3-a4) <= 0} within X+I", lw == _halfspace_cone(ctx, [first])),
        ])
        lam = hasse_weight(ctx, ctx.delta[0])
        _fact(result, "prop-U31-inert-van", [
            ("[3421] bound is (q-1)(a1-a4) + (a2-a4) <= 0", bound(w, 1) == primitive(lift_bar_form((q - 1, 1, 0)))),
        ], rows_ok(w))
        _fact(result, "thm-U31-conj", [
            ("<C_Hasse + (C+_[3421] within X+I)> = zip preset", total == preset),
            ("zip preset = C_lw", preset == lw),
            ("C+_[3421] within X+I lies in C_lw", included(inner, lw)),
            (f"lambda_alpha1 = {lam} is (q+1, q+1, 1, q) modulo the determinant line",
             bar(lam) == bar((q + 1, q + 1, 1, q))),
            ("(q+1, q+1, 1, q) lies in C_lw", (q + 1, q + 1, 1, q) in lw),
        ], rows_ok(w))


def _untabulated_facts(case: Case, ctx: ZipContext, result: CaseResult) -> None:
    hasse = saturate(named_cone(ctx, "Hasse"))
    gs_in = included(named_cone(ctx, "GS"), hasse)
    parts = [("Hasse type agrees with C_GS inside <C_Hasse>", is_hasse_type(ctx) == gs_in)]
    if case.family.tag == "SO":
        q = ctx.q
        parts.append(("Hasse type", is_hasse_type(ctx)))
        form = ((q + 1), (q - 1)) + (0,) * (ctx.n - 2)
        parts.append(("<C_Hasse> = {(q+1)a1 + (q-1)a2 <= 0} within X+I", hasse == _halfspace_cone(ctx, [form])))
    else:
        parts.append(("<C_Hasse> within zip preset", included(hasse, named_cone(ctx, "ZipPreset"))))
    _fact(result, "hasse-type", parts)


def run_case(case: Case | str, q: int, *, repair: bool = True) -> CaseResult:
    """Verify every row at ``q``, then the terminal inclusions and headline cone facts."""
    if isinstance(case, str):
        case = load_case(case)
    result = CaseResult(case.id, q)
    if case.id == "u4-22-exploratory":
        result.refused = "no certificates: only certificate search is offered for this case"
        return result
    if q < case.q_min:
        result.refused = case.refusal or f"q={q} is below the case's q_min={case.q_min}"
        if case.system is not None:
            ctx = case.context(q)
            session = ConeSession(ctx, case.system)
            for t in case.terminal:
                rep = verify_row(ctx, case.system, case.window(t.w), q, session)
                result.info.append(Check(f"{t.w}:verify", "pass" if rep.passed else "fail",
                                         "; ".join(f"{c.name}={c.status}" for c in rep.checks
                                                   if c.status == "fail")))
                for j, found in sorted(rep.repairs.items()):
                    result.info.append(Check(f"{t.w}:bound{j}:search", "info", json.dumps(found, sort_keys=True)))
        return result
    ctx = case.context(q)
    if case.system is None:
        _untabulated_facts(case, ctx, result)
        return result
    session = ConeSession(ctx, case.system)
    for w in case.system.rows:
        rep = verify_row(ctx, case.system, w, q, session)
        if not repair:
            rep.repairs.clear()
        result.rows[str(w)] = rep
    _terminal_facts(case, ctx, result, session)
    return result


def _sweep_one(item: tuple[str, int]) -> tuple[str, int, dict]:
    cid, q = item
    res = run_case(cid, q)
    failing = sorted(k for k, r in res.rows.items() if not r.passed)
    return cid, q, {"case": cid, "q": q, "status": res.status, "refused": res.refused,
                    "failing_rows": failing,
                    "facts": {f.name: f.status for f in res.facts}}


def sweep(ids: Iterable[str], qs: Iterable[int], jobs: int = 1) -> dict:
    """Run every ``(case, q)`` pair; entries ordered by case id order then ``q``."""
    ids = list(dict.fromkeys(ids))
    qs = sorted(set(qs))
    items = [(cid, q) for cid in ids for q in qs]
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            done = list(pool.map(_sweep_one, items))
    else:
        done = [_sweep_one(it) for it in items]
    order = {it: k for k, it in enumerate(items)}
    done.sort(key=lambda t: order[(t[0], t[1])])
    entries = [d for _, _, d in done]
    return {
        "cases": ids,
        "q": qs,
        "entries": entries,
        "summary": {s: sum(1 for e in entries if e["status"] == s) for s in ("pass", "fail", "refused")},
    }


# ---------------------------------------------------------------------------
# extremal rays of the preset


def extremal_ray_audit(case: Case | str, q: int) -> dict:
    """Extremal rays of the zip preset and conditions (A), (B) on each ``lambda_alpha``.

    (A): ``lambda_alpha`` spans an extremal ray of the preset.  (B): it lies
    outside ``C_GS``.  In type A the audit runs in bar coordinates.
    """
    if isinstance(case, str):
        case = load_case(case, check_fidelity=False)
    ctx = case.context(q)
    preset = named_cone(ctx, "ZipPreset")
    gs = named_cone(ctx, "GS")
    typeA = ctx.lattice_has_det_line
    view = bar_cone(preset) if typeA else preset
    rays = sorted(_rays_as_set(view.rays))
    roots = []
    for alpha in ctx.delta:
        lam = hasse_weight(ctx, alpha)
        shown = bar(lam) if typeA else lam
        extremal = tuple(primitive(shown)) in rays if any(shown) else False
        roots.append({
            "root": root_label(alpha),
            "lambda": list(lam),
            "shown": [int(x) for x in shown],
            "A_extremal": extremal,
            "B_outside_GS": lam not in gs,
        })
    return {
        "case": case.id,
        "q": q,
        "coordinates": "bar" if typeA else "full",
        "rays": [[int(x) for x in r] for r in rays],
        "simple_roots": roots,
    }


def shipped_ids() -> tuple[str, ...]:
    """Case ids with a file in the data directory."""
    return tuple(cid for cid in CASE_IDS if (data_dir() / f"{cid}.json").exists())
