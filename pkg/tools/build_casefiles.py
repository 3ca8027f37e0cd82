"""Write the shipped case files under ``src/zipcone/data``.

Every table row is transcribed here as Python expressions in ``q`` and encoded
as numerator/denominator coefficient lists.  Rows are written in table order,
top to bottom.  Run from the repository root::

    python3 tools/build_casefiles.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from zipcone.sepsys import RationalFunctionOfQ as RF  # noqa: E402

q = RF.variable()
DATA = ROOT / "src" / "zipcone" / "data"


def enc(x) -> dict:
    return RF.coerce(x).reduced().to_json()


def vec(v) -> list[dict]:
    return [enc(x) for x in v]


def row(w, E, system=(), bounds=(), certs=()):
    out = {
        "w": w,
        "E": list(E),
        "system": [{"root": r, "neighbor": nb, "chi": list(chi), "h": vec(h)} for r, nb, chi, h in system],
        "bounds": [vec(b) for b in bounds],
        "certificates": [cert_terms(cert) for cert in certs],
    }
    return out


def cert_terms(cert: dict) -> list[dict]:
    return [{"root": r, "index": i, "coeff": enc(c)} for (r, i), c in cert.items()]


def erratum(rows, w, field, corrected, reason, index=None):
    """Correction of one tabulated field; the tabulated value is kept alongside."""
    row_ = next(r for r in rows if r["w"] == w)
    printed = row_[field] if index is None else row_[field][index - 1]
    if field == "bounds":
        corrected = vec(corrected)
    elif field == "certificates":
        corrected = cert_terms(corrected)
    out = {"w": w, "field": field}
    if index is not None:
        out["index"] = index
    out.update({"tabulated": printed, "corrected": corrected, "reason": reason})
    return out


def case(cid, family, rank, mu, coordinates, rows=(), *, q_min=2, presets=(), constants=None,
         terminal=(), certified=True, refusal=None, title="", errata=()):
    out = {
        "id": cid,
        "title": title,
        "family": family,
        "rank": rank,
        "mu": list(mu),
        "coordinates": coordinates,
        "q_min": q_min,
        "certified": certified,
        "preset": [vec(f) for f in presets],
        "constants": {k: (vec(v) if isinstance(v, tuple) else enc(v)) for k, v in (constants or {}).items()},
        "terminal": [{"w": w, "bound": b, "fact": f} for w, b, f in terminal],
        "rows": list(rows),
        "errata": list(errata),
    }
    if refusal:
        out["refusal"] = refusal
    return out


# ---------------------------------------------------------------------------
# Sp(6), Siegel cocharacter

u = (q**7 - 2 * q**6 - 9 * q**5 - 4 * q**4 - 7 * q**3 - 3 * q**2 - q + 1) / (
    (q - 1) * (q**3 + 2 * q**2 + 1) * (q**5 + 4 * q**4 + 2 * q**3 + 5 * q**2 + 4 * q + 2))
theta = (q**5 + 2 * q**4 + 2 * q**3 + 4 * q**2 + 2 * q + 1) / (
    q**6 + 2 * q**5 - q**4 + q**3 - q**2 - q - 1)
eps = (q**2 + 2 * q + 1) / (q**3 + 2 * q**2 + 1)
eta1 = (1, 1, -(q**2 + q))
eta2 = (q + 1, -q**2, -q**2)

c4 = q**3 + q**2 + q + 1
B_365_1 = (-(q**2 - q), q**2 + 1, q - 1)
B_531 = (0, -(q - 1), q + 1)

SP6 = [
    row("[132]", ["e2-e3"], bounds=[(-q, q - 1, 1)]),
    row("[124]", ["2e3"], bounds=[(q, 0, -1)]),
    row("[213]", ["e1-e2"], bounds=[(-1, -(q - 1), q)]),
    row("[135]", ["e2+e3", "2e3"],
        [("e2+e3", "[124]", (0, 1, 0), (0, -q, -1)), ("2e3", "[132]", (0, -1, 1), (-q, q + 1, 1))],
        [(q**2 + q, q**2 + 1, -(q + 1)), (q**2, 1, -q)],
        [{("e2+e3", 1): 2 * q**2 / (q - 1), ("2e3", 1): (q**2 + 1) / (q - 1)},
         {("e2+e3", 1): (q**2 - q + 1) / (q - 1), ("2e3", 1): 1 / (q - 1)}]),
    row("[142]", ["e2-e3", "2e2"],
        [("e2-e3", "[124]", (0, 0, -1), (q, 1, 0)), ("2e2", "[132]", (0, 1, 1), (-q, -(q + 1), 1))],
        [(-(q**2 + q), q**2 + 1, q + 1), (-q, q**2, 1)],
        [{("e2-e3", 1): 2 / (q - 1), ("2e2", 1): (q**2 + 1) / (q - 1)},
         {("e2-e3", 1): (q**2 - q + 1) / (q - 1), ("2e2", 1): q**2 / (q - 1)}]),
    row("[214]", ["e1-e2", "2e3"],
        [("e1-e2", "[124]", (1, 0, 0), (0, -1, -q)), ("2e3", "[213]", (0, 0, 1), (-q, 0, 1))],
        [(q + 1, -(q**2 + 1), q**2 + q), (q**2, -q, 1)],
        [{("e1-e2", 1): 2 * q / (q - 1), ("2e3", 1): (q**2 + 1) / (q - 1)},
         {("e1-e2", 1): (q**2 - q + 1) / (q - 1), ("2e3", 1): q / (q - 1)}]),
    row("[145]", ["2e2", "2e3"],
        [("2e2", "[135]", (0, 1, 0), (0, -q, 1))],
        [(q**2, 1, -q)],
        [{("2e2", 2): 1}]),
    row("[153]", ["e2-e3", "e2+e3"],
        [("e2-e3", "[135]", (0, 1, -1), (q, 1 - q, 1)), ("e2+e3", "[142]", (0, 1, 1), (-q, 1 - q, -1))],
        [(-q, q + 1, 1)],
        [{("e2-e3", 2): 2 * q / (q**3 + 2 * q + 1), ("e2+e3", 2): (q**2 + q + 1) / (q**3 + 2 * q + 1)}]),
    row("[236]", ["e1+e3", "e2+e3", "2e3"],
        [("e1+e3", "[135]", (1, 0, 0), (0, -1, -q)), ("e2+e3", "[214]", (0, 1, 0), (0, -q, -1))],
        [(1, 0, 0)],
        [{("e1+e3", 1): q**2 / (q**2 + q + 1), ("e1+e3", 2): (q**2 + 1) * (q + 1) / (q**2 + q + 1),
          ("e2+e3", 1): 1}]),
    row("[315]", ["e1-e2", "e1+e3", "2e3"],
        [("e1+e3", "[214]", (1, 1, 0), (-1, -q, -(q + 1)))],
        [(q + 1, -(q**2 + 1), q**2 + q)],
        [{("e1+e3", 1): 1}]),
    row("[412]", ["e1-e2", "e1-e3", "2e1"],
        [("e1-e2", "[142]", (0, -1, 0), (1, q, 0)), ("e1-e3", "[214]", (0, 0, -1), (q, 1, 0))],
        [(-q, 1, q + 1), (1, -q, q + 1)],
        [{("e1-e2", 1): (q**2 + q + 1) / c4, ("e1-e3", 1): q**2 / c4},
         {("e1-e2", 1): 1 / c4, ("e1-e3", 1): (q**2 + q + 1) / c4}]),
    row("[154]", ["e2-e3", "2e3"],
        [("e2-e3", "[145]", (0, 1, 0), (0, 1 - q, 0)), ("2e3", "[153]", (0, 1, 1), (-q, 1 - q, 1))],
        [B_365_1, (q**2, 1, -q)],
        [{("e2-e3", 1): 2 / (q**2 + q + 1), ("2e3", 1): (q**3 + 2 * q - 1) / (q**2 + q + 1)},
         {("e2-e3", 1): 1}]),
    row("[246]", ["e1+e3", "2e2", "2e3"],
        [("2e2", "[236]", (0, 1, 0), (0, -q, 1))],
        [(1, 0, 0)],
        [{("2e2", 1): 1}]),
    row("[263]", ["e1+e2", "e2-e3", "e2+e3"],
        [("e1+e2", "[153]", (1, 0, 0), (0, -1, -q))],
        [(-q, q + 1, 1)],
        [{("e1+e2", 1): 1}]),
    row("[326]", ["e1-e2", "e2+e3", "2e3"],
        [("e2+e3", "[315]", (1, 1, 0), (0, -(q + 1), -(q + 1)))],
        [(q + 1, -(q**2 + 1), q**2 + q)],
        [{("e2+e3", 1): 1}]),
    row("[421]", ["e1-e2", "2e1", "e2-e3"],
        [("e2-e3", "[412]", (0, 0, -1), (q + 1, 0, 0))],
        [B_531],
        [{("e2-e3", 1): 1 / (q + 1), ("e2-e3", 2): q / (q + 1)}]),
    row("[264]", ["e1+e2", "e2-e3", "2e3"],
        [("e1+e2", "[154]", (1, 0, 0), (0, -1, -q)), ("e2-e3", "[246]", (-1, 1, 0), (1, 1 - q, q))],
        [B_365_1, (q**2, 1, -q)],
        [{("e1+e2", 1): 1},
         {("e1+e2", 1): (q**2 - 1) / (q**3 + 2 * q - 1), ("e1+e2", 2): (2 * q**2 - q + 1) / (q**3 + 2 * q - 1),
          ("e2-e3", 1): q**2 - q}]),
    row("[362]", ["e1-e3", "e2-e3", "e2+e3"],
        [("e1-e3", "[263]", (1, 0, 0), (0, 0, -(q + 1))),
         ("e2-e3", "[326]", (-1, 1, -1), (q + 1, 1 - q, q + 1))],
        [(-(q**4 + q**2 + q + 1), 2 * q**3 + 3 * q**2 + 2 * q + 1, q**4 + 2 * q**3 + q)],
        [{("e1-e3", 1): q**3 + q**2 + 2 * q, ("e2-e3", 1): q**2 - 1}]),
    row("[531]", ["e1-e2", "e1+e2", "e2-e3"],
        [("e1+e2", "[421]", (1, 1, 1), (-(q + 1), 1 - q, -(q + 1)))],
        [B_531],
        [{("e1+e2", 1): 1}]),
    row("[365]", ["e1+e3", "e2-e3", "2e3"],
        [("e1+e3", "[264]", (1, 0, 0), (0, 0, -(q + 1))), ("2e3", "[362]", (-1, 1, 1), (1 - q, 1 - q, q + 1))],
        [B_365_1, (1, theta, 0)],
        [{("e1+e3", 1): 1},
         {("e1+e3", 2): q**4 + 2 * q**3 + q, ("2e3", 1): 1}]),
    row("[541]", ["e1-e2", "e2-e3", "2e2"],
        [("2e2", "[531]", (1, 1, 1), (-(q + 1), 1 - q, 1 - q))],
        [B_531],
        [{("2e2", 1): 1}]),
    row("[465]", ["2e1", "e2-e3", "2e3"],
        [("2e1", "[365]", (1, 0, 0), (0, 0, 1 - q))],
        [B_365_1, (1, theta, 0)],
        [{("2e1", 1): 1}, {("2e1", 2): 1}]),
    row("[546]", ["e1-e2", "2e2", "2e3"],
        [("2e3", "[541]", (0, 0, 1), (1 - q, 0, 0))],
        [B_531],
        [{("2e3", 1): 1}]),
    row("[564]", ["e1-e3", "e2-e3", "2e3"],
        [("e1-e3", "[465]", (1, 0, 0), (0, 1, -q)), ("e2-e3", "[546]", (0, 1, 0), (1, -q, 0))],
        [(q**2, q, 1)],
        [{("e1-e3", 1): u, ("e1-e3", 2): q**2 + q * (q - 1) * u, ("e2-e3", 1): (1 - (q - 1) * u) / (q + 1)}]),
]

# ---------------------------------------------------------------------------
# GL(4), signature (3,1); bar coordinates

GL31 = [
    row("[1243]", ["e3-e4"], bounds=[(-q, -q**2, q**2 + q + 1)]),
    row("[1324]", ["e2-e3"], bounds=[(-q**2, q**2 + q + 1, -1)]),
    row("[2134]", ["e1-e2"], bounds=[(q**2 + q + 1, -1, -q)]),
    row("[2143]", ["e1-e2", "e3-e4"],
        [("e1-e2", "[1243]", (1, 0, 0), (-q, -(q + 1), -q)), ("e3-e4", "[2134]", (0, 0, 1), (1, q + 1, 1))],
        [(0, -q, q + 1), (q + 1, -1, 0)],
        [{("e1-e2", 1): (q**2 + q + 1) / c4, ("e3-e4", 1): q / c4},
         {("e1-e2", 1): q / c4, ("e3-e4", 1): (q**2 + q + 1) / c4}]),
    row("[3124]", ["e1-e2", "e1-e3"],
        [("e1-e2", "[1324]", (0, -1, 0), (1 - q, 0, 0)), ("e1-e3", "[2134]", (1, 1, 0), (-1, -q, -(q + 1)))],
        [(0, q + 1, -1)],
        [{("e1-e2", 1): (q**2 + q + 1) / c4, ("e1-e3", 1): q**2 / c4}]),
    row("[4123]", ["e1-e2", "e1-e3", "e1-e4"],
        [("e1-e3", "[2143]", (0, 0, -1), (0, 1 - q, 0)), ("e1-e4", "[3124]", (1, 1, 1), (0, 0, 1 - q))],
        [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
        [{("e1-e3", 1): 1 / (q**3 + 2 * q**2 + 2 * q + 1), ("e1-e3", 2): 1 / (q + 1),
          ("e1-e4", 1): 1 / (q**2 + q + 1)},
         {("e1-e3", 1): 1 / (q**2 + q + 1), ("e1-e4", 1): (q + 1) / (q**2 + q + 1)},
         {("e1-e3", 1): (q + 1) / (q**2 + q + 1), ("e1-e4", 1): q / (q**2 + q + 1)}]),
    row("[4132]", ["e1-e2", "e1-e3", "e3-e4"],
        [("e3-e4", "[4123]", (1, 1, 1), (0, 1, -q))],
        [(0, q, 1), (1, 0, 0)],
        [{("e3-e4", 2): q, ("e3-e4", 3): 1}, {("e3-e4", 1): 1}]),
    row("[4312]", ["e1-e2", "e2-e3", "e2-e4"],
        [("e2-e3", "[4132]", (0, 0, -1), (1, -q, 0))],
        [(q**2, q, 1)],
        [{("e2-e3", 1): 1, ("e2-e3", 2): q**2}]),
]

# ---------------------------------------------------------------------------
# GL(4), signature (2,2); bar coordinates

d3 = q**3 + 2 * q**2 + 1
GL22 = [
    row("[1243]", ["e3-e4"], bounds=[(-q, q, -1)]),
    row("[1324]", ["e2-e3"], bounds=[(q, -1, 1)]),
    row("[2134]", ["e1-e2"], bounds=[(-1, 1, -q)]),
    row("[1342]", ["e2-e4", "e3-e4"],
        [("e2-e4", "[1243]", (0, 1, 0), (-q, -q, -(q + 1))), ("e3-e4", "[1324]", (0, 0, 1), (q + 1, 1, 1))],
        [(-q, q**2 + q + 1, -1)],
        [{("e2-e4", 1): q * (q + 1) / (q - 1), ("e3-e4", 1): (q**2 + 1) / (q - 1)}]),
    row("[1423]", ["e2-e3", "e2-e4"],
        [("e2-e3", "[1243]", (0, 0, -1), (-q, 1, 0)), ("e2-e4", "[1324]", (0, 1, 1), (1, -q, 1 - q))],
        [(q**2, 1, q), (q, q**2, 1)],
        [{("e2-e3", 1): (q + 1) / (q - 1), ("e2-e4", 1): (q**2 + 1) / (q - 1)},
         {("e2-e3", 1): (q**2 + 1) / (q - 1), ("e2-e4", 1): q * (q + 1) / (q - 1)}]),
    row("[2314]", ["e1-e3", "e2-e3"],
        [("e1-e3", "[1324]", (1, 0, 0), (0, -1, q)), ("e2-e3", "[2134]", (0, 1, 0), (-q, -q, -(q + 1)))],
        [(q**2 + q + 1, -q, -1), (q**2 + q + 1, -1, -q**2)],
        [{("e1-e3", 1): (q**2 + 1) / (q - 1), ("e2-e3", 1): (q + 1) / (q - 1)},
         {("e1-e3", 1): q * (q + 1) / (q - 1), ("e2-e3", 1): (q**2 + 1) / (q - 1)}]),
    row("[3124]", ["e1-e2", "e1-e3"],
        [("e1-e2", "[1324]", (0, -1, 0), (q + 1, q, q)), ("e1-e3", "[2134]", (1, 1, 0), (-(q + 1), -q, -1))],
        [(q**2, 1, -(q**2 + q + 1)), (1, q, -(q**2 + q + 1))],
        [{("e1-e2", 1): (q**2 + 1) / (q - 1), ("e1-e3", 1): q * (q + 1) / (q - 1)},
         {("e1-e2", 1): (q + 1) / (q - 1), ("e1-e3", 1): (q**2 + 1) / (q - 1)}]),
    row("[2341]", ["e1-e4", "e2-e4", "e3-e4"],
        [("e1-e4", "[1342]", (1, 0, 0), (0, -1, q))],
        [(-q, q**2 + q + 1, -1)],
        [{("e1-e4", 1): 1}]),
    row("[2413]", ["e1-e3", "e2-e3", "e2-e4"],
        [("e1-e3", "[1423]", (1, 0, 0), (0, -1, q)), ("e2-e4", "[2314]", (1, 1, 1), (0, -q, 1))],
        [(2 * q + 1, -1, -q), (1, 0, 0), (q, q, 1)],
        [{("e2-e4", 1): q / (q**2 + q + 1), ("e2-e4", 2): (q + 1) / (q**2 + q + 1)},
         {("e1-e3", 1): 1 / (q + 1)**2, ("e2-e4", 1): q / ((q + 1) * (q**3 + 2 * q**2 + 2 * q + 1)),
          ("e2-e4", 2): 1 / (q**3 + 2 * q**2 + 2 * q + 1)},
         {("e1-e3", 1): q / (q**2 + q + 1), ("e1-e3", 2): (q + 1) / (q**2 + q + 1)}]),
    row("[3142]", ["e1-e2", "e1-e4", "e3-e4"],
        [("e3-e4", "[3124]", (0, 0, 1), (q + 1, 1, 1))],
        [(1, 1, -(q + 2))],
        [{("e3-e4", 1): 1 / (q**2 + q + 1), ("e3-e4", 2): (q + 1) / (q**2 + q + 1)}]),
    row("[3214]", ["e1-e2", "e2-e3"],
        [("e2-e3", "[3124]", (1, 1, 0), (-q, -(q + 1), -1))],
        [(1, q, -(q**2 + q + 1))],
        [{("e2-e3", 2): 1}]),
    row("[2431]", ["e1-e4", "e2-e3", "e3-e4"],
        [("e3-e4", "[2413]", (0, 1, 1), (1, 1 - q, -q))],
        [(q**2, q, 1), (q, q, 1)],
        [{("e3-e4", 2): q**2 - q, ("e3-e4", 3): 1}, {("e3-e4", 3): 1}]),
    row("[3241]", ["e1-e2", "e2-e4", "e3-e4"],
        [("e1-e2", "[2341]", (1, 0, 0), (0, 0, q - 1)), ("e2-e4", "[3142]", (1, 1, 0), (-q, -(q + 1), -1))],
        [(-q, q**2 + q + 1, -1), (1, 1, -(q + 2))],
        [{("e1-e2", 1): 1}, {("e2-e4", 1): 1}]),
    row("[4213]", ["e1-e2", "e1-e4", "e2-e3"],
        [("e1-e2", "[2413]", (0, -1, -1), (1, q + 1, q)), ("e1-e4", "[3214]", (1, 1, 1), (0, -q, 1))],
        [(2 * q + 1, -1, -q), (1, q, -(q**2 + q + 1))],
        [{("e1-e2", 1): 1}, {("e1-e4", 1): 1}]),
    row("[3421]", ["e1-e3", "e2-e3", "e3-e4"],
        [("e1-e3", "[2431]", (1, 0, 0), (0, 0, q - 1)), ("e2-e3", "[3241]", (0, 1, 0), (1 - q, 1 - q, 1 - q))],
        [(0, 1, 0), (1, eps, 0)],
        [{("e1-e3", 2): 1 / (q + 1)**2, ("e2-e3", 1): 1 / (q + 1)**2},
         {("e1-e3", 1): (q + 2) / d3, ("e2-e3", 2): 1 / d3}]),
    row("[4312]", ["e1-e2", "e2-e3", "e2-e4"],
        [("e2-e4", "[4213]", (1, 1, 1), (0, 1 - q, 0))],
        [(1, 0, -1)],
        [{("e2-e4", 1): q / (2 * q**2 + q + 1), ("e2-e4", 2): 1 / (2 * q**2 + q + 1)}]),
    row("[4321]", ["e1-e2", "e2-e3", "e3-e4"],
        [("e1-e2", "[3421]", (1, 0, 0), (1, 1, q + 1)), ("e3-e4", "[4312]", (1, 1, 1), (1, -q, 0))],
        [(q, 1, -1)],
        [{("e1-e2", 1): (q**2 + q + 1) / d3, ("e1-e2", 2): q - 1, ("e3-e4", 1): 1}]),
]

# ---------------------------------------------------------------------------
# U(3), signature (2,1); bar coordinates

U21 = [
    row("[132]", ["e2-e3"], bounds=[(q, -1)]),
    row("[213]", ["e1-e2"], bounds=[(-1, 1)]),
    row("[231]", ["e1-e3", "e2-e3"],
        [("e1-e3", "[132]", (1, 0), (0, -(q + 1))), ("e2-e3", "[213]", (0, 1), (1 - q, 1))],
        [(1, 0)],
        [{("e1-e3", 1): 1 / (q - 1), ("e2-e3", 1): 1 / (q - 1)}]),
]

# ---------------------------------------------------------------------------
# U(4), signature (3,1); bar coordinates

t3 = q**2 - q + 1
U31 = [
    row("[1243]", ["e3-e4"], bounds=[(q, 0, -1)]),
    row("[1324]", ["e2-e3"], bounds=[(-q, q - 1, 1)]),
    row("[2134]", ["e1-e2"], bounds=[(-1, -(q - 1), q)]),
    row("[1342]", ["e2-e4", "e3-e4"],
        [("e2-e4", "[1243]", (0, 1, 0), (0, -q, -1)), ("e3-e4", "[1324]", (0, 0, 1), (1 - q, 1, 1))],
        [(q**2, 1, -q)],
        [{("e2-e4", 1): t3 / (q - 1), ("e3-e4", 1): 1 / (q - 1)}]),
    row("[2314]", ["e1-e3", "e2-e3"],
        [("e1-e3", "[1324]", (1, 0, 0), (0, -1, -q)), ("e2-e3", "[2134]", (0, 1, 0), (0, -q, -1))],
        [(-(q - 1), -1, q), (-q, q - 1, 1)],
        [{("e1-e3", 1): q * (q - 2) / (q**2 - 1), ("e2-e3", 1): t3 / (q**2 - 1)},
         {("e1-e3", 1): 1}]),
    row("[2341]", ["e1-e4", "e2-e3", "e3-e4"],
        [("e1-e4", "[1342]", (1, 0, 0), (0, -1, -q)), ("e3-e4", "[2314]", (0, 0, 1), (1 - q, 1, 1))],
        [(1, 0, 0), (1, -1, q), (q, t3, -1)],
        [{("e1-e4", 1): 1 / t3, ("e3-e4", 1): 1 / t3},
         {("e1-e4", 1): q / t3, ("e3-e4", 1): (q**2 + 1) / t3},
         {("e1-e4", 1): q**2 / t3, ("e3-e4", 2): (q**3 - q**2 + q - 1) / t3}]),
    row("[3241]", ["e1-e2", "e2-e4", "e3-e4"],
        [("e1-e2", "[2341]", (1, 0, 0), (0, 0, -(q + 1)))],
        [(1, 0, 0), (1, q - 1, 0)],
        [{("e1-e1", 1): 1}, {("e1-e2", 2): 1 / (q**2 + 1), ("e1-e2", 3): q / (q**2 + 1)}]),
    row("[3421]", ["e1-e3", "e2-e3", "e3-e4"],
        [("e2-e3", "[3241]", (0, 1, 0), (1, 1 - q, 1))],
        [(q - 1, 1, 0)],
        [{("e2-e3", 1): q * (q - 2) / (q - 1), ("e2-e3", 2): 1 / (q - 1)}]),
]


SP6_ERRATA = [
    erratum(SP6, "[153]", "certificates",
            {("e2-e3", 1): q / c4, ("e2+e3", 1): (q**2 + q + 1) / c4},
            "the tabulated combination of the second bounds of [135] and [142] is not proportional to "
            "-q a1 + (q+1) a2 + a3; the first bounds give it with the coefficients below, found by "
            "certificate search and identical for every q", index=1),
    erratum(SP6, "[264]", "bounds", (q**2, q, -1),
            "the tabulated form q^2 a1 + a2 - q a3 is positive on h(chi_{e1+e2}) = (0,-1,-q); the tabulated "
            "certificate reproduces q^2 a1 + q a2 - a3, which vanishes on both generators and is the form "
            "the [365] certificate needs", index=2),
]
GL22_ERRATA = [
    erratum(GL22, "[4321]", "certificates",
            {("e1-e2", 1): (q**2 + q + 2) / d3, ("e1-e2", 2): q - 1, ("e3-e4", 1): 1},
            "with numerator q^2+q+1 the a2 coefficient of the combination is (q^3+2q^2)/(q^3+2q^2+1); "
            "numerator q^2+q+2 makes it 1", index=1),
]
U31_ERRATA = [
    erratum(U31, "[2341]", "E", ["e1-e4", "e2-e4", "e3-e4"],
            "lower neighbours of [2341] are reached through e1-e4, e2-e4, e3-e4; e2-e3 is not an inversion"),
    erratum(U31, "[3241]", "certificates", {("e1-e2", 1): 1},
            "e1-e1 is not a root; the only chosen root of [3241] is e1-e2", index=1),
]

CASES = [
    case("sp4", "Sp", 2, (1, 1), "full", title="Sp(4), Siegel cocharacter",
         presets=[(q, 1)], certified=False),
    case("sp6", "Sp", 3, (1, 1, 1), "full", SP6, q_min=5, title="Sp(6), Siegel cocharacter",
         presets=[(q**2, 1, q), (q, q**2, 1)],
         constants={"u": u, "theta": theta, "eta1": eta1, "eta2": eta2},
         terminal=[("[564]", 1, "lem-564")], errata=SP6_ERRATA,
         refusal="u(q) negative for q in {2, 3, 4}; the [564] certificate needs q >= 5"),
    case("gl3-21", "GL", 3, (1, 1, 0), "bar", title="GL(3), signature (2,1)",
         presets=[(q, 1)], certified=False),
    case("gl4-31", "GL", 4, (1, 1, 1, 0), "bar", GL31, title="GL(4), signature (3,1)",
         presets=[(q**2, 1, q), (q, q**2, 1)],
         constants={"eta1": eta1, "eta2": eta2},
         terminal=[("[4312]", 1, "prop-GL31-van")]),
    case("gl4-22", "GL", 4, (1, 1, 0, 0), "bar", GL22, title="GL(4), signature (2,2)",
         presets=[(q, 1, -1)], constants={"epsilon": eps},
         terminal=[("[3421]", 1, "propGL22"), ("[3421]", 2, "propGL22"), ("[4312]", 1, "propGL22"),
                   ("[4321]", 1, "thmGL22-conj")], errata=GL22_ERRATA),
    case("u3-21", "U", 3, (1, 1, 0), "bar", U21, title="U(3), signature (2,1), inert",
         presets=[(q - 1, 1)], terminal=[("[231]", 1, "propU21inert")]),
    case("u4-31", "U", 4, (1, 1, 1, 0), "bar", U31, title="U(4), signature (3,1), inert",
         presets=[(q - 1, 0, 1)], terminal=[("[3421]", 1, "prop-U31-inert-van")], errata=U31_ERRATA),
    case("u4-22-exploratory", "U", 4, (1, 1, 0, 0), "bar", title="U(4), signature (2,2), inert",
         certified=False),
]


def dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False, ensure_ascii=True) + "\n"


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    for c in CASES:
        (DATA / f"{c['id']}.json").write_text(dump(c))
        print(f"wrote {c['id']}.json ({len(c['rows'])} rows)")


if __name__ == "__main__":
    main()
