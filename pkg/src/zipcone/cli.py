"""
Command-line front end: ``zipcone <command> ...``.

Exit codes: 0 pass, 1 check failure, 2 usage error, 3 refused domain.
JSON goes to stdout unless ``--out`` names a file; nothing else is written.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .casebook import (
    Case, CaseDataError, UnknownCaseError, extremal_ray_audit, load_case, run_case, shipped_ids, sweep,
)
from .groupcore import GroupFamily, WeylElt, ZipContext, build_context, orbit_order_leq, root_label
from .polycone import (
    Cone, Infeasible, cone_from_halfspaces, farkas_search, format_form, included, intersect, primitive,
)
from .sepsys import derive_bounds, row_sources
from .sliceplot import Layer, Marker, render
from .zipcones import NoPresetError, bar, bar_cone, hasse_weight, lift_bar_form, named_cone

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3

CONE_NAMES = {
    "xplusi": "XplusI", "xminusl": "XminusL", "gs": "GS", "hasse": "Hasse", "hasse-at": "HasseAt",
    "hw": "HW", "lw": "LW", "orb": "Orb", "zip": "ZipPreset", "preset": "ZipPreset",
}


class UsageError(Exception):
    """Bad arguments detected after parsing; reported with exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 on its own; keep the message short
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------------------
# argument parsing helpers


def parse_ints(text: str, what: str = "value") -> tuple[int, ...]:
    """``"49,7,1"`` -> ``(49, 7, 1)``."""
    try:
        values = tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise UsageError(f"malformed {what} {text!r}: expected comma-separated integers") from None
    if not values:
        raise UsageError(f"empty {what}")
    return values


def parse_q_values(q: str | None, q_range: str | None) -> list[int]:
    values: list[int] = []
    if q is not None:
        values.extend(parse_ints(q, "q"))
    if q_range is not None:
        sep = ":" if ":" in q_range else "-"
        try:
            lo, hi = (int(x) for x in q_range.split(sep))
        except ValueError:
            raise UsageError(f"malformed q range {q_range!r}: expected LO:HI") from None
        if hi < lo:
            raise UsageError(f"empty q range {q_range!r}")
        values.extend(range(lo, hi + 1))
    if not values:
        raise UsageError("give --q or --q-range")
    if min(values) < 2:
        raise UsageError("q must be at least 2")
    return sorted(set(values))


def _load(case_id: str, **kw) -> Case:
    try:
        return load_case(case_id, **kw)
    except UnknownCaseError as exc:
        raise UsageError(f"unknown case {case_id!r}; known: {', '.join(shipped_ids())}, b_n-spin(n)") from exc


def _context(args) -> tuple[ZipContext, Case | None]:
    if args.case:
        case = _load(args.case, check_fidelity=False)
        return case.context(args.q), case
    if not (args.family and args.mu):
        raise UsageError("give --case or both --family and --mu")
    mu = parse_ints(args.mu, "mu")
    try:
        family = GroupFamily(args.family, len(mu))
        return build_context(family, mu, args.q), None
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _window(ctx: ZipContext, text: str) -> WeylElt:
    from .groupcore import parse_window
    text = text.strip()
    if not text.startswith("["):
        text = f"[{text}]"
    try:
        w = parse_window(text, ctx.family.root_type != "A")
    except (ValueError, KeyError) as exc:
        raise UsageError(f"malformed Weyl group element {text!r}: {exc}") from exc
    if len(w.window) != ctx.n:
        raise UsageError(f"{text} has {len(w.window)} entries; the group has rank {ctx.n}")
    return w


def _dump(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=True) + "\n"
    _emit(text, out)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _qstr(x) -> str:
    return str(Fraction(x))


def _vec(v: Sequence) -> str:
    return "(" + ", ".join(_qstr(x) for x in v) + ")"


# ---------------------------------------------------------------------------
# describe


def _chains(ctx: ZipContext, use_bar: bool) -> list[str]:
    """X+I written as chains ``a1>=a2>=a3`` (and ``<form> <= 0`` otherwise)."""
    n = ctx.n
    name = (lambda i: "0" if use_bar and i == n else f"a{i}")
    links, other = set(), []
    for alpha in ctx.I:
        nz = [(i, c) for i, c in enumerate(alpha) if c]
        if len(nz) == 2 and nz[0][1] == 1 and nz[1][1] == -1 and nz[1][0] == nz[0][0] + 1:
            links.add(nz[0][0] + 1)
        else:
            other.append(f"{root_label(alpha)} dominant")
    out, i = [], 1
    while i <= n:
        if i in links:
            j = i
            while j in links:
                j += 1
            out.append(">=".join(name(k) for k in range(i, j + 1)))
            i = j + 1
        else:
            i += 1
    return out + other


def _view(ctx: ZipContext, cone: Cone, use_bar: bool) -> Cone:
    if not use_bar:
        return cone
    if not ctx.lattice_has_det_line:
        raise UsageError("--bar needs a type A group")
    return bar_cone(cone)


def describe_lines(ctx: ZipContext, cone_id: str, *, w: WeylElt | None = None, use_bar: bool = False) -> list[str]:
    """Text description: non-X+I facets, the X+I chain if contained, rays, lineality."""
    name = CONE_NAMES[cone_id.lower()]
    try:
        cone = named_cone(ctx, name, w)
    except NoPresetError as exc:
        raise UsageError(str(exc)) from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    xplus = named_cone(ctx, "XplusI")
    shown = _view(ctx, cone, use_bar)
    xshown = _view(ctx, xplus, use_bar)
    xfacets = set(xshown.facets)
    coords = "bar coordinates" if use_bar else "coordinates a1..a%d" % ctx.n
    label = cone_id if w is None else f"{cone_id} at {w}"
    lines = [f"{ctx}: cone {label} ({coords})"]
    inside = name != "XplusI" and included(cone, xplus)
    if name == "XplusI":
        lines.extend(_chains(ctx, use_bar) or ["full space"])
    else:
        own = [h for h in shown.facets if not (inside and h in xfacets)]
        if not own and not inside:
            lines.append("full space")
        for h in own:
            lines.append(str(h) + (" (within X+I)" if inside else ""))
        if inside:
            lines.append("within X+I: " + ", ".join(_chains(ctx, use_bar)))
    lines.append("rays: " + (" ".join(_vec(r) for r in shown.rays) or "none"))
    if shown.lineality:
        lines.append("lineality: " + " ".join(_vec(v) for v in shown.lineality))
    return lines


def cmd_describe(args) -> int:
    ctx, _ = _context(args)
    w = _window(ctx, args.w) if args.w else None
    if CONE_NAMES[args.cone.lower()] == "HasseAt" and w is None:
        raise UsageError("--cone hasse-at needs --w")
    _emit("\n".join(describe_lines(ctx, args.cone, w=w, use_bar=args.bar)) + "\n", args.out)
    return EXIT_PASS


# ---------------------------------------------------------------------------
# verify


def overall_status(statuses: Sequence[str]) -> str:
    if "fail" in statuses:
        return "fail"
    if "refused" in statuses:
        return "refused"
    return "pass"


def _exit_for(status: str) -> int:
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "refused": EXIT_REFUSED}[status]


def verify_report(case: Case, qs: Sequence[int]) -> dict:
    results = [run_case(case, q) for q in qs]
    return {
        "tool": "zipcone",
        "version": __version__,
        "case": case.id,
        "q": list(qs),
        "errata_applied": case.errata_applied,
        "results": [r.to_json() for r in results],
        "status": overall_status([r.status for r in results]),
    }


def cmd_verify(args) -> int:
    qs = parse_q_values(args.q, args.q_range)
    try:
        case = _load(args.case, apply_errata=not args.tabulated)
    except CaseDataError as exc:
        print(f"case data error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    report = verify_report(case, qs)
    _dump(report, args.out)
    for r in report["results"]:
        if r["refused"]:
            print(f"{case.id} q={r['q']}: refused: {r['refused']}", file=sys.stderr)
        elif r["status"] == "fail":
            bad = [row["w"] for row in r["rows"] if row["status"] == "fail"]
            bad += [f["name"] for f in r["facts"] if f["status"] == "fail"]
            print(f"{case.id} q={r['q']}: fail: {', '.join(bad)}", file=sys.stderr)
    return _exit_for(report["status"])


# ---------------------------------------------------------------------------
# certify


def certify_sources(case: Case, ctx: ZipContext, w: WeylElt,
                    kind: str = "derived") -> tuple[str, dict[str, tuple]]:
    """Labelled source forms for ``w``.

    ``derived``: facets of ``C+_w``; ``neighbors``: the tabulated bounds of the
    chosen lower neighbours, the sources the tables' certificates use.  Cases
    without tables fall back to the facets of ``C_Hasse,w`` within X+I.
    """
    if kind == "neighbors":
        row = case.system.row(w) if case.system is not None else None
        if row is None:
            raise UsageError(f"{case.id} has no table row for {w}")
        found = row_sources(ctx, case.system, row, ctx.q)
        return (f"tabulated bounds of the chosen lower neighbours of {w}",
                {f"{lab}#{i}": form for (lab, i), form in found.items()})
    if case.system is not None:
        facets = derive_bounds(ctx, case.system, w)
        origin = f"facets of C+_{w} derived from the separating system"
    else:
        facets = intersect(named_cone(ctx, "HasseAt", w), named_cone(ctx, "XplusI")).facets
        origin = f"facets of C_Hasse,{w} within X+I (the case has no tables)"
    return origin, {f"F{k}": h.normal for k, h in enumerate(facets, start=1)}


def certify(case: Case, w: WeylElt, q: int, target: Sequence[int], sources: str = "derived") -> dict:
    ctx = case.context(q)
    use_bar = case.coordinates == "bar"
    width = ctx.n - 1 if use_bar else ctx.n
    if len(target) == width:
        full = lift_bar_form(target) if use_bar else tuple(target)
    elif use_bar and len(target) == ctx.n:
        if sum(target) != 0:
            raise UsageError("a full-coordinate target must vanish on the determinant line")
        full = tuple(target)
    else:
        raise UsageError(f"the target needs {width} coefficients for {case.id}")
    if w not in ctx.W:
        raise UsageError(f"{w} is not an element of the Weyl group of {case.id}")
    origin, sources = certify_sources(case, ctx, w, sources)
    show = (lambda f: tuple(f[:-1])) if use_bar else (lambda f: tuple(f))
    found = farkas_search(full, sources)
    out = {
        "case": case.id, "q": q, "w": str(w),
        "coordinates": case.coordinates,
        "target": format_form(show(full)) + " <= 0",
        "sources_from": origin,
        "sources": {k: format_form(show(v)) + " <= 0" for k, v in sources.items()},
    }
    if isinstance(found, Infeasible):
        wit = found.witness
        shown = bar(wit) if use_bar else wit
        out["status"] = "infeasible"
        out["witness"] = [_qstr(x) for x in shown]
        out["witness_check"] = {
            "target": _qstr(sum(Fraction(a) * b for a, b in zip(full, wit))),
            **{k: _qstr(sum(Fraction(a) * b for a, b in zip(v, wit))) for k, v in sources.items()},
        }
    else:
        out["status"] = "certificate"
        out["coefficients"] = {k: _qstr(v) for k, v in sorted(found.coefficients.items())}
    return out


def cmd_certify(args) -> int:
    case = _load(args.case, check_fidelity=False)
    if args.q < case.q_min:
        print(f"note: q={args.q} is below the case's q_min={case.q_min}", file=sys.stderr)
    ctx = case.context(args.q)
    w = _window(ctx, args.w)
    result = certify(case, w, args.q, parse_ints(args.target, "target"), args.sources)
    if args.json:
        _dump(result, args.out)
    else:
        lines = [f"{case.id} q={args.q} w={result['w']} target {result['target']} ({result['coordinates']})",
                 f"sources: {result['sources_from']}"]
        lines += [f"  {k}: {v}" for k, v in result["sources"].items()]
        if result["status"] == "certificate":
            terms = " + ".join(f"{c}*{k}" for k, c in result["coefficients"].items()) or "0"
            lines.append(f"certificate: target = {terms}")
        else:
            lines.append("no certificate; witness " + "(" + ", ".join(result["witness"]) + ")")
            lines.append("  target(witness) = " + result["witness_check"]["target"]
                         + " > 0, every source(witness) <= 0")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_PASS if result["status"] == "certificate" else EXIT_FAIL


# ---------------------------------------------------------------------------
# strata


def strata_table(case: Case, q: int) -> dict:
    ctx = case.context(q)
    W = ctx.W
    reps = sorted(ctx.strata, key=lambda v: (W.length(v), v.window))
    entries = []
    for v in reps:
        row = case.system.row(v) if case.system is not None else None
        entry = {"w": str(v), "length": W.length(v),
                 "E": [root_label(a) for a in W.lower_neighbors(v)]}
        entry["chosen"] = [root_label(a) for a in row.EE] if row is not None else None
        entries.append(entry)
    covers = []
    for v in reps:
        for u in reps:
            if u == v or not orbit_order_leq(ctx, u, v):
                continue
            between = any(x not in (u, v) and orbit_order_leq(ctx, u, x) and orbit_order_leq(ctx, x, v)
                          for x in reps)
            if not between:
                covers.append([str(u), str(v)])
    return {"case": case.id, "group": str(ctx.family.name), "mu": list(ctx.mu), "count": len(reps),
            "strata": entries, "covers": covers}


def strata_text(table: dict) -> str:
    lines = [f"{table['case']}: {table['group']}, mu={tuple(table['mu'])}: {table['count']} strata",
             "length  w  E_w  chosen"]
    for e in table["strata"]:
        E = "{" + ", ".join(e["E"]) + "}"
        chosen = "no row" if e["chosen"] is None else "{" + ", ".join(e["chosen"]) + "}"
        lines.append(f"{e['length']}  {e['w']}  E={E}  chosen={chosen}")
    lines.append("closure covers (lower < upper):")
    lines += [f"  {u} < {v}" for u, v in table["covers"]]
    return "\n".join(lines) + "\n"


def strata_dot(table: dict) -> str:
    lines = [f'digraph "{table["case"]}" {{', "  rankdir=BT;"]
    for e in table["strata"]:
        lines.append(f'  "{e["w"]}" [label="{e["w"]}\\nl={e["length"]}"];')
    lines += [f'  "{u}" -> "{v}";' for u, v in table["covers"]]
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_strata(args) -> int:
    case = _load(args.case, check_fidelity=False)
    table = strata_table(case, args.q if args.q is not None else max(case.q_min, 2))
    fmt = {"text": strata_text, "dot": strata_dot}
    if args.format == "json":
        _dump(table, args.out)
    else:
        _emit(fmt[args.format](table), args.out)
    return EXIT_PASS


# ---------------------------------------------------------------------------
# plot


def plot_layers(case: Case, q: int) -> tuple[list[Layer], list[Marker], int]:
    """Layers and Hasse-weight markers in the case's plotting coordinates."""
    ctx = case.context(q)
    use_bar = ctx.lattice_has_det_line
    view = (lambda c: bar_cone(c)) if use_bar else (lambda c: c)
    dim = ctx.n - 1 if use_bar else ctx.n
    layers = [Layer("X+I", view(named_cone(ctx, "XplusI")), stroke="#555", dash="4 3")]
    layers.append(Layer("C_GS", view(named_cone(ctx, "GS")), fill="#9ecae1", stroke="#3182bd"))
    weight_cone = "HW" if ctx.family.is_split else "LW"
    wc = named_cone(ctx, weight_cone)
    layers.append(Layer(f"C_{weight_cone.lower()}", view(wc), fill="#c7e9c0", stroke="#31a354"))
    try:
        preset = named_cone(ctx, "ZipPreset")
    except NoPresetError:
        preset = None
    if preset is not None:
        layers.append(Layer("<C_zip>", view(preset), stroke="#000", width=2.0))
        xfacets = set(named_cone(ctx, "XplusI").facets)
        for h in wc.facets:
            if h in xfacets:
                continue
            outside = intersect(preset, cone_from_halfspaces([tuple(-x for x in h.normal)], dim=ctx.n))
            label = f"<C_zip> with {format_form(h.normal)} > 0"
            layers.append(Layer(label, view(outside), fill="#bbbbbb", stroke="#888"))
    markers = []
    for alpha in ctx.delta:
        lam = hasse_weight(ctx, alpha)
        shown = bar(lam) if use_bar else lam
        if any(shown):
            markers.append(Marker(f"lambda_{root_label(alpha)}", tuple(int(x) for x in shown)))
    return layers, markers, dim


def relevant_rays(case: Case, q: int) -> list[tuple]:
    """Rays and weights the default slice must see: preset rays and Hasse weights."""
    layers, markers, _ = plot_layers(case, q)
    rays = []
    for layer in layers:
        if layer.label == "<C_zip>":
            rays.extend(tuple(r) for r in layer.cone.rays)
    rays.extend(m.point for m in markers)
    return sorted(set(rays))


def cmd_plot(args) -> int:
    case = _load(args.case, check_fidelity=False)
    layers, markers, dim = plot_layers(case, args.q)
    if dim not in (2, 3):
        raise UsageError(f"plots need effective dimension 2 or 3; {case.id} has {dim}")
    title = f"{case.id} q={args.q} ({'bar' if case.context(args.q).lattice_has_det_line else 'full'} coordinates)"
    if dim == 3:
        s = parse_ints(args.slice, "slice") if args.slice else (1, 1, 1)
        if len(s) != 3 or not any(s):
            raise UsageError("--slice needs three integers, not all zero")
        hidden = [m for m in markers if sum(a * b for a, b in zip(s, m.point)) >= 0]
        for m in hidden:
            print(f"warning: {m.label} {m.point} does not meet the slice s.x = -1", file=sys.stderr)
        svg = render(layers, markers, s=s, title=title)
    else:
        if args.slice:
            raise UsageError("--slice applies to three-dimensional plots only")
        svg = render(layers, markers, s=None, title=title)
    _emit(svg, args.out)
    return EXIT_PASS


# ---------------------------------------------------------------------------
# sweep, audit


def cmd_sweep(args) -> int:
    qs = parse_q_values(args.q, args.q_range)
    ids = [c for c in (args.cases.split(",") if args.cases else shipped_ids()) if c]
    for cid in ids:
        _load(cid, check_fidelity=False)
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    result = sweep(ids, qs, jobs=args.jobs)
    result["tool"] = "zipcone"
    result["version"] = __version__
    _dump(result, args.out)
    return _exit_for(overall_status([e["status"] for e in result["entries"]]))


def cmd_audit(args) -> int:
    case = _load(args.case, check_fidelity=False)
    try:
        _dump(extremal_ray_audit(case, args.q), args.out)
    except NoPresetError as exc:
        raise UsageError(str(exc)) from exc
    return EXIT_PASS


# ---------------------------------------------------------------------------
# entry point


def _q_arg(text: str) -> int:
    try:
        q = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"q must be an integer, not {text!r}") from None
    if q < 2:
        raise argparse.ArgumentTypeError("q must be at least 2")
    return q


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="zipcone", description="Exact cone computations for zip period maps.")
    p.add_argument("--version", action="version", version=f"zipcone {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("describe", help="print a cone's inequalities and extremal rays")
    d.add_argument("--case")
    d.add_argument("--family", choices=["GL", "U", "Sp", "SO"])
    d.add_argument("--mu", help="cocharacter, e.g. 1,1,1")
    d.add_argument("--q", type=_q_arg, required=True)
    d.add_argument("--cone", required=True, type=str.lower, choices=sorted(CONE_NAMES))
    d.add_argument("--w", help="Weyl group element for --cone hasse-at")
    d.add_argument("--bar", action="store_true", help="show the cone in bar coordinates (type A)")
    d.add_argument("--out")
    d.set_defaults(func=cmd_describe)

    v = sub.add_parser("verify", help="verify a case's separating system and cone facts")
    v.add_argument("--case", required=True)
    v.add_argument("--q", help="one q or a comma-separated list")
    v.add_argument("--q-range", help="inclusive range LO:HI")
    v.add_argument("--tabulated", action="store_true", help="verify the tables as tabulated, without errata")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("certify", help="search a Farkas certificate for 'target . lambda <= 0' on C+_w")
    c.add_argument("--case", required=True)
    c.add_argument("--w", required=True)
    c.add_argument("--q", type=_q_arg, required=True)
    c.add_argument("--target", required=True, help="comma-separated integers c meaning c . lambda <= 0 "
                   "(write --target=-1,0 when the first entry is negative)")
    c.add_argument("--sources", choices=["derived", "neighbors"], default="derived",
                   help="search over the facets of C+_w or over the neighbours' tabulated bounds")
    c.add_argument("--json", action="store_true")
    c.add_argument("--out")
    c.set_defaults(func=cmd_certify)

    s = sub.add_parser("strata", help="list the strata with lengths, E_w and closure covers")
    s.add_argument("--case", required=True)
    s.add_argument("--q", type=_q_arg)
    s.add_argument("--format", choices=["text", "dot", "json"], default="text")
    s.add_argument("--out")
    s.set_defaults(func=cmd_strata)

    g = sub.add_parser("plot", help="SVG slice of the case's cones")
    g.add_argument("--case", required=True)
    g.add_argument("--q", type=_q_arg, required=True)
    g.add_argument("--slice", help="slice functional s, plane s . x = -1 (default 1,1,1)")
    g.add_argument("--out")
    g.set_defaults(func=cmd_plot)

    w = sub.add_parser("sweep", help="run cases over a range of q")
    w.add_argument("--cases", help="comma-separated case ids (default: every shipped case)")
    w.add_argument("--q")
    w.add_argument("--q-range")
    w.add_argument("--jobs", type=int, default=1)
    w.add_argument("--out")
    w.set_defaults(func=cmd_sweep)

    a = sub.add_parser("audit", help="extremal rays of the zip preset against the Hasse weights")
    a.add_argument("--case", required=True)
    a.add_argument("--q", type=_q_arg, required=True)
    a.add_argument("--out")
    a.set_defaults(func=cmd_audit)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"zipcone {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
