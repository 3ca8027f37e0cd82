"""
Separating systems of partial Hasse invariants and intersection-sum cones.

A separating system assigns to some Weyl group elements ``w`` a subset of the
lower-neighbour roots ``E_w`` together with characters ``chi_alpha``.  The
intersection-sum cone is defined by structural recursion on the length::

    C+_w = h_w(Gamma_w) + intersection of C+_{w s_alpha} over the chosen alpha

with ``C+_w = C_{Hasse,w}`` in length one and the whole lattice as the empty
intersection.  Claimed upper bounds for ``C+_w`` are checked in two
independent ways: by the Farkas certificates attached to each row, and by a
direct cone inclusion.

Coefficients of the certificates depend on ``q``; they are stored as
:class:`RationalFunctionOfQ` and evaluated exactly.

>>> q = RationalFunctionOfQ.variable()
>>> f = (2 * q**2) / (q - 1)
>>> f(5)
Fraction(25, 2)
>>> f.to_json()
{'num': [0, 0, 2], 'den': [-1, 1]}
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .groupcore import (
    Root, WeylElt, ZipContext, coroot, pairing, parse_root, parse_window, root_label,
)
from .polycone import (
    Cone, FarkasCertificate, Halfspace, Infeasible, cone_from_generators,
    cone_from_halfspaces, farkas_search, farkas_verify, full_space, included,
    intersect, primitive, sum_cones,
)
from .zipcones import bar, h_w, hasse_cone_at, lift_bar_form

__all__ = [
    "RationalFunctionOfQ", "SepEntry", "CertTerm", "SepRow", "SeparatingSystem",
    "Check", "RowReport", "validate", "is_full_separating", "hasse_cone_E",
    "intersection_sum_cone", "verify_row", "derive_bounds", "CertificateError",
    "ConeSession", "row_sources", "identity_holds_for_all_q", "certificate_scale",
    "system_from_json", "system_to_json",
]


# ---------------------------------------------------------------------------
# integer polynomials in q, lowest degree first


def _trim(p: Sequence) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(a: Sequence, b: Sequence) -> tuple:
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def _pmul(a: Sequence, b: Sequence) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _peval(p: Sequence, q) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * q + c
    return acc


def _pdivmod(a: Sequence, b: Sequence) -> tuple[tuple, tuple]:
    a = [Fraction(x) for x in _trim(a)]
    b = _trim(b)
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        quot[shift] = f
        for i, y in enumerate(b):
            a[i + shift] -= f * y
        a = list(_trim(a))
    return _trim(quot), tuple(a)


def _pgcd(a: Sequence, b: Sequence) -> tuple:
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    return a


def _integral(*polys: Sequence) -> list[tuple[int, ...]]:
    """Scale rational polynomials by one common factor to coprime integers."""
    coeffs = [Fraction(c) for p in polys for c in p]
    den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    ints = [tuple(int(Fraction(c) * den) for c in p) for p in polys]
    g = math.gcd(*(c for p in ints for c in p)) or 1
    return [tuple(c // g for c in p) for p in ints]


@dataclass(frozen=True)
class RationalFunctionOfQ:
    """Quotient of two integer polynomials in ``q`` (coefficients lowest degree first).

    The stored coefficient lists are kept verbatim so that data files round-trip
    exactly; arithmetic returns reduced results.
    """

    num: tuple[int, ...]
    den: tuple[int, ...] = (1,)

    def __post_init__(self) -> None:
        object.__setattr__(self, "num", tuple(int(c) for c in self.num))
        object.__setattr__(self, "den", tuple(int(c) for c in self.den))
        if not _trim(self.den):
            raise ValueError("denominator is identically zero")

    @classmethod
    def variable(cls) -> RationalFunctionOfQ:
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> RationalFunctionOfQ:
        c = Fraction(c)
        return cls((c.numerator,), (c.denominator,))

    @classmethod
    def coerce(cls, x) -> RationalFunctionOfQ:
        return x if isinstance(x, cls) else cls.constant(x)

    @classmethod
    def from_json(cls, obj: Mapping) -> RationalFunctionOfQ:
        return cls(tuple(obj["num"]), tuple(obj.get("den", (1,))))

    def to_json(self) -> dict:
        return {"num": list(self.num), "den": list(self.den)}

    def reduced(self) -> RationalFunctionOfQ:
        num, den = _trim(self.num), _trim(self.den)
        if not num:
            return RationalFunctionOfQ((0,), (1,))
        g = _pgcd(num, den)
        if len(g) > 1:
            num, _ = _pdivmod(num, g)
            den, _ = _pdivmod(den, g)
        num, den = _integral(num, den)
        if den[-1] < 0:
            num, den = tuple(-c for c in num), tuple(-c for c in den)
        return RationalFunctionOfQ(num, den)

    def __call__(self, q) -> Fraction:
        d = _peval(self.den, q)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at q={q}")
        return _peval(self.num, q) / d

    def is_zero(self) -> bool:
        return not _trim(self.num)

    @property
    def degree_bound(self) -> int:
        """``max(deg num, deg den)``, a bound used by the interpolation check."""
        return max(len(_trim(self.num)), len(_trim(self.den))) - 1

    def __add__(self, other) -> RationalFunctionOfQ:
        o = RationalFunctionOfQ.coerce(other)
        num = _padd(_pmul(self.num, o.den), _pmul(o.num, self.den))
        return RationalFunctionOfQ(num, _pmul(self.den, o.den)).reduced()

    __radd__ = __add__

    def __neg__(self) -> RationalFunctionOfQ:
        return RationalFunctionOfQ(tuple(-c for c in self.num), self.den)

    def __sub__(self, other) -> RationalFunctionOfQ:
        return self + (-RationalFunctionOfQ.coerce(other))

    def __rsub__(self, other) -> RationalFunctionOfQ:
        return RationalFunctionOfQ.coerce(other) - self

    def __mul__(self, other) -> RationalFunctionOfQ:
        o = RationalFunctionOfQ.coerce(other)
        return RationalFunctionOfQ(_pmul(self.num, o.num), _pmul(self.den, o.den)).reduced()

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalFunctionOfQ:
        o = RationalFunctionOfQ.coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFunctionOfQ(_pmul(self.num, o.den), _pmul(self.den, o.num)).reduced()

    def __rtruediv__(self, other) -> RationalFunctionOfQ:
        return RationalFunctionOfQ.coerce(other) / self

    def __pow__(self, k: int) -> RationalFunctionOfQ:
        out = RationalFunctionOfQ.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def equals(self, other) -> bool:
        o = RationalFunctionOfQ.coerce(other)
        return _pmul(self.num, o.den) == _pmul(o.num, self.den)

    def __str__(self) -> str:
        def poly(p):
            terms = []
            for k in range(len(p) - 1, -1, -1):
                c = p[k]
                if c == 0:
                    continue
                mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
                mag = abs(c)
                body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
                terms.append(("-" if c < 0 else "+") + body)
            s = "".join(terms) or "0"
            return s[1:] if s.startswith("+") else s
        n, d = poly(_trim(self.num)), poly(_trim(self.den))
        return n if d == "1" else f"({n})/({d})"


RF = RationalFunctionOfQ


def _eval_vec(vec: Sequence[RF], q: int) -> tuple[Fraction, ...]:
    return tuple(c(q) for c in vec)


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class SepEntry:
    """One chosen root ``alpha`` of ``E_w`` with its lower neighbour and character."""

    root: Root
    neighbor: WeylElt
    chi: tuple[int, ...]
    h: tuple[RF, ...]


@dataclass(frozen=True)
class CertTerm:
    """Coefficient ``A`` of the ``index``-th bound (1-based) of the neighbour for ``root``."""

    root: Root
    index: int
    coeff: RF


@dataclass(frozen=True)
class SepRow:
    w: WeylElt
    E: tuple[Root, ...]
    entries: tuple[SepEntry, ...] = ()
    bounds: tuple[tuple[RF, ...], ...] = ()
    certs: tuple[tuple[CertTerm, ...], ...] = ()

    @property
    def EE(self) -> tuple[Root, ...]:
        return tuple(e.root for e in self.entries)

    def entry(self, root: Root) -> SepEntry:
        for e in self.entries:
            if e.root == root:
                return e
        raise KeyError(root_label(root))


@dataclass(frozen=True)
class SeparatingSystem:
    """Rows keyed by Weyl group element; absent elements have an empty choice.

    ``coordinates`` is ``"full"`` or ``"bar"``.  In bar coordinates characters
    are representatives with last entry 0, weights are reduced by
    ``lambda -> bar(lambda)`` and forms are restricted to ``a_n = 0``.
    """

    rows: Mapping[WeylElt, SepRow]
    q_min: int = 2
    coordinates: str = "full"

    def __post_init__(self) -> None:
        if self.coordinates not in ("full", "bar"):
            raise ValueError(f"unknown coordinates {self.coordinates!r}")

    def row(self, w: WeylElt) -> SepRow | None:
        return self.rows.get(w)

    def char_full(self, chi: Sequence[int]) -> tuple[int, ...]:
        return tuple(chi) + ((0,) if self.coordinates == "bar" else ())

    def form_full(self, form: Sequence) -> tuple:
        return lift_bar_form(form) if self.coordinates == "bar" else tuple(form)

    def weight_table(self, lam: Sequence) -> tuple:
        return bar(lam) if self.coordinates == "bar" else tuple(lam)

    def bound_forms(self, w: WeylElt, q: int) -> list[tuple[Fraction, ...]]:
        """Raw claimed bounds of ``w`` in full coordinates, evaluated at ``q``."""
        row = self.rows.get(w)
        if row is None:
            return []
        return [self.form_full(_eval_vec(b, q)) for b in row.bounds]


class CertificateError(ValueError):
    """A certificate references a bound that does not exist."""


@dataclass
class Check:
    name: str
    status: str  # pass, fail, info, refused
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class RowReport:
    w: str
    q: int
    checks: list[Check] = field(default_factory=list)
    repairs: dict[int, dict[str, str]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.status in ("pass", "info") for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, "pass" if ok else "fail", detail))

    def to_json(self) -> dict:
        return {
            "w": self.w, "q": self.q,
            "status": "pass" if self.passed else "fail",
            "checks": [c.to_json() for c in self.checks],
            "repairs": {str(k): v for k, v in sorted(self.repairs.items())},
        }


# ---------------------------------------------------------------------------
# combinatorial validation


def _connected(ctx: ZipContext, w: WeylElt, a: Root, b: Root) -> bool:
    """Roots ``a, b`` of ``E_w`` are connected when ``E_{w s_a}`` and ``E_{w s_b}`` meet."""
    W = ctx.W
    ea = set(W.lower_neighbors(w * W.reflection(a)))
    eb = set(W.lower_neighbors(w * W.reflection(b)))
    return bool(ea & eb)


def validate(ctx: ZipContext, sys: SeparatingSystem, q: int | None = None) -> dict[str, RowReport]:
    """Check the separating-system axioms for every row.

    Conditions: (a) ``<chi_a, a^vee> > 0``; (b) ``<chi_a, b^vee> = 0`` for the
    other chosen roots; (c) the same for unchosen roots of ``E_w`` connected to
    a chosen one.  Full separation (vanishing on all other roots of ``E_w``) is
    reported separately.  With ``q`` given the stored ``h_w(chi)`` values are
    compared with a fresh computation.
    """
    W = ctx.W
    reports = {}
    for w, row in sys.rows.items():
        rep = RowReport(str(w), q or 0)
        if w not in W:
            raise ValueError(f"{w} is not an element of the Weyl group")
        E = W.lower_neighbors(w)
        rep.add("E_w", set(E) == set(row.E), ", ".join(root_label(a) for a in E))
        rep.add("EE_subset", set(row.EE) <= set(E))
        for e in row.entries:
            lab = root_label(e.root)
            chi = sys.char_full(e.chi)
            rep.add(f"neighbor[{lab}]", e.root in E and e.neighbor == w * W.reflection(e.root), str(e.neighbor))
            rep.add(f"(a)[{lab}]", pairing(chi, e.root) > 0)
            others = [b for b in row.EE if b != e.root]
            rep.add(f"(b)[{lab}]", all(pairing(chi, b) == 0 for b in others))
            unchosen = [b for b in E if b not in row.EE]
            linked = [b for b in unchosen if any(_connected(ctx, w, b, a) for a in row.EE)]
            rep.add(f"(c)[{lab}]", all(pairing(chi, b) == 0 for b in linked),
                    "connected: " + (", ".join(root_label(b) for b in linked) or "none"))
            full = all(pairing(chi, b) == 0 for b in E if b != e.root)
            rep.checks.append(Check(f"full_separation[{lab}]", "info", str(full).lower()))
            if q is not None:
                wq = ctx.with_q(q) if ctx.q != q else ctx
                expect = sys.weight_table(h_w(wq, w, chi))
                rep.add(f"h[{lab}]", tuple(_eval_vec(e.h, q)) == tuple(Fraction(x) for x in expect),
                        str(expect))
        reports[str(w)] = rep
    return reports


def is_full_separating(ctx: ZipContext, w: WeylElt) -> bool:
    """The coroots of ``E_w`` are linearly independent."""
    E = ctx.W.lower_neighbors(w)
    rows = [[Fraction(x) for x in coroot(a)] for a in E]
    rank = 0
    ncols = ctx.n
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank == len(E)


# ---------------------------------------------------------------------------
# cones of the recursion


def _det_line(ctx: ZipContext) -> list[tuple[int, ...]]:
    return [(1,) * ctx.n] if ctx.lattice_has_det_line else []


def hasse_cone_E(ctx: ZipContext, sys: SeparatingSystem, row: SepRow | None) -> Cone:
    """``h_w(Gamma_w)`` for the chosen characters, plus the determinant line in type A."""
    gens = [] if row is None else [h_w(ctx, row.w, sys.char_full(e.chi)) for e in row.entries]
    return cone_from_generators(gens, _det_line(ctx), dim=ctx.n)


class ConeSession:
    """Memo table for the intersection-sum recursion at one ``(system, q)``."""

    def __init__(self, ctx: ZipContext, sys: SeparatingSystem):
        self.ctx = ctx
        self.sys = sys
        self._memo: dict[WeylElt, Cone] = {}

    def cone(self, w: WeylElt) -> Cone:
        if w not in self._memo:
            self._memo[w] = self._compute(w)
        return self._memo[w]

    def _compute(self, w: WeylElt) -> Cone:
        ctx = self.ctx
        ell = ctx.W.length(w)
        if ell == 1:
            return hasse_cone_at(ctx, w)
        row = self.sys.row(w)
        if ell == 0 or row is None or not row.entries:
            return full_space(ctx.n)
        lower = intersect(*(self.cone(e.neighbor) for e in row.entries))
        return sum_cones(hasse_cone_E(ctx, self.sys, row), lower)


def intersection_sum_cone(ctx: ZipContext, sys: SeparatingSystem, w: WeylElt,
                          session: ConeSession | None = None) -> Cone:
    """``C+_w`` for the separating system at ``ctx.q``."""
    session = session or ConeSession(ctx, sys)
    return session.cone(w)


def derive_bounds(ctx: ZipContext, sys: SeparatingSystem, w: WeylElt,
                  session: ConeSession | None = None) -> list[Halfspace]:
    """Facets of ``C+_w``, computed without reference to the claimed bounds."""
    return list(intersection_sum_cone(ctx, sys, w, session).facets)


# ---------------------------------------------------------------------------
# certificates


def row_sources(ctx: ZipContext, sys: SeparatingSystem, row: SepRow, q: int) -> dict[tuple[str, int], tuple]:
    """Claimed bounds of the chosen lower neighbours, keyed ``(root label, index)``."""
    sources = {}
    for e in row.entries:
        for i, form in enumerate(sys.bound_forms(e.neighbor, q), start=1):
            sources[(root_label(e.root), i)] = form
    return sources


def _certificate_at(row: SepRow, j: int, q: int, sources: Mapping) -> FarkasCertificate:
    coeffs: dict[tuple[str, int], Fraction] = {}
    for term in row.certs[j]:
        key = (root_label(term.root), term.index)
        if key not in sources:
            raise CertificateError(f"{row.w}: bound {j + 1} uses missing source {key[0]}#{key[1]}")
        coeffs[key] = coeffs.get(key, Fraction(0)) + term.coeff(q)
    return FarkasCertificate(coeffs)


def _format_cert(cert: FarkasCertificate) -> dict[str, str]:
    return {f"{k[0]}#{k[1]}": str(v) for k, v in sorted(cert.coefficients.items())}


def verify_row(ctx: ZipContext, sys: SeparatingSystem, w: WeylElt, q: int | None = None,
               session: ConeSession | None = None) -> RowReport:
    """Check one row exactly at ``q``.

    Length one: the claimed bound is the facet of ``C_{Hasse,w}``.  Higher
    length: (i) every ``h_w(chi_alpha)`` satisfies every bound, (ii) each
    certificate reproduces its bound from the neighbours' claimed bounds,
    (iii) its coefficients are nonnegative, and (iv) independently, the cone
    ``C+_w`` of the recursion lies in the bound.  A failing certificate is
    followed by a certificate search whose result is recorded as a repair.
    """
    q = ctx.q if q is None else q
    if ctx.q != q:
        ctx = ctx.with_q(q)
    session = session or ConeSession(ctx, sys)
    row = sys.row(w)
    rep = RowReport(str(w), q)
    if row is None:
        rep.checks.append(Check("row", "info", "no row: empty choice"))
        return rep
    if q < sys.q_min:
        rep.add("q_domain", False, f"q={q} is below q_min={sys.q_min} of the system")
    bounds = sys.bound_forms(w, q)
    ell = ctx.W.length(w)
    hasse_entries = validate(ctx, SeparatingSystem({w: row}, sys.q_min, sys.coordinates), q)[str(w)]
    rep.checks.extend(c for c in hasse_entries.checks if c.name.startswith(("h[", "E_w", "neighbor")))
    if ell == 1:
        claimed = cone_from_halfspaces([primitive(b) for b in bounds], dim=ctx.n)
        rep.add("hasse_base", claimed == hasse_cone_at(ctx, w))
        return rep
    gens = [h_w(ctx, w, sys.char_full(e.chi)) for e in row.entries]
    sources = row_sources(ctx, sys, row, q)
    cone = session.cone(w)
    if len(row.certs) != len(bounds):
        raise CertificateError(f"{w}: {len(bounds)} bounds but {len(row.certs)} certificates")
    for j, target in enumerate(bounds):
        tag = f"bound{j + 1}"
        rep.add(f"{tag}:generators", all(sum(a * b for a, b in zip(target, g)) <= 0 for g in gens))
        try:
            cert = _certificate_at(row, j, q, sources)
        except CertificateError as exc:
            rep.add(f"{tag}:certificate", False, str(exc))
            rep.add(f"{tag}:cone_inclusion", included(cone, cone_from_halfspaces([primitive(target)], dim=ctx.n))
                    if any(target) else True)
            _record_repair(rep, j, target, sources)
            continue
        nonneg = cert.nonnegative
        rep.add(f"{tag}:nonnegative", nonneg,
                "" if nonneg else "negative: " + ", ".join(
                    f"{k}={v}" for k, v in _format_cert(cert).items() if Fraction(v) < 0))
        scale = certificate_scale(target, sources, cert)
        identity = scale is not None
        detail = str(_format_cert(cert)) + ("" if scale in (None, 1) else f"; reproduces {scale} times the bound")
        rep.add(f"{tag}:certificate", identity, detail)
        normalized = FarkasCertificate({k: v / scale for k, v in cert.coefficients.items()}) if identity else cert
        rep.add(f"{tag}:farkas", farkas_verify(target, sources, normalized))
        rep.add(f"{tag}:cone_inclusion", included(cone, cone_from_halfspaces([primitive(target)], dim=ctx.n))
                if any(target) else True)
        if not (identity and nonneg):
            _record_repair(rep, j, target, sources)
    return rep


def _record_repair(rep: RowReport, j: int, target: Sequence, sources: Mapping) -> None:
    """Search a certificate for bound ``j`` (0-based) from the neighbour bounds."""
    tag = f"bound{j + 1}"
    found = farkas_search(target, sources)
    if isinstance(found, Infeasible):
        rep.checks.append(Check(f"{tag}:repair", "info",
                                f"no certificate from neighbour bounds; witness {found.witness}"))
    else:
        rep.repairs[j + 1] = _format_cert(found)
        rep.checks.append(Check(f"{tag}:repair", "info", str(_format_cert(found))))


def certificate_scale(target: Sequence, sources: Mapping, cert: FarkasCertificate) -> Fraction | None:
    """The factor ``c > 0`` with ``sum A_i I_i = c * I_target``, or ``None``.

    A positive multiple of a linear form cuts out the same halfspace, so a
    combination reproducing ``c * I_target`` proves the same inclusion; the
    factor is reported so rescaled certificates stay visible.
    """
    total = [Fraction(0)] * len(target)
    for key, c in cert.coefficients.items():
        total = [t + c * x for t, x in zip(total, sources[key])]
    target = [Fraction(x) for x in target]
    pivot = next((k for k, x in enumerate(target) if x != 0), None)
    if pivot is None:
        return Fraction(1) if not any(total) else None
    scale = total[pivot] / target[pivot]
    if scale <= 0 or any(a != scale * b for a, b in zip(total, target)):
        return None
    return scale


def identity_holds_for_all_q(sys: SeparatingSystem, w: WeylElt, j: int) -> bool:
    """Certificate ``j`` (0-based) of ``w`` is an identity of rational functions in ``q``.

    The combination ``S = sum A_i I_i`` is formed with exact rational-function
    arithmetic; the identity asks that ``S`` be proportional to ``I_target``,
    i.e. that every minor ``S_k t_l - S_l t_k`` vanish. Each minor is a
    rational function whose numerator has known degree ``d``; it is
    evaluated at ``d + 1`` integers where no denominator vanishes and the
    interpolated numerator is asserted to be zero.  The sign of the scale
    factor depends on ``q`` and is left to :func:`verify_row`.
    """
    row = sys.rows[w]
    target = row.bounds[j]
    lookup = {}
    for e in row.entries:
        nb = sys.rows.get(e.neighbor)
        for i, b in enumerate(nb.bounds if nb else (), start=1):
            lookup[(e.root, i)] = b
    combo = [RF.constant(0)] * len(target)
    for t in row.certs[j]:
        if (t.root, t.index) not in lookup:
            raise CertificateError(f"{w}: missing source {root_label(t.root)}#{t.index}")
        combo = [c + t.coeff * b for c, b in zip(combo, lookup[(t.root, t.index)])]
    for k in range(len(target)):
        for m in range(k + 1, len(target)):
            minor = combo[k] * target[m] - combo[m] * target[k]
            needed = len(_trim(minor.num))
            points, q = [], 0
            while len(points) < needed:
                if _peval(minor.den, q) != 0:
                    points.append(q)
                q += 1
            if any(_peval(minor.num, x) != 0 for x in points):
                return False
    return any(not c.is_zero() for c in combo) or all(c.is_zero() for c in target)


# ---------------------------------------------------------------------------
# JSON encoding of systems (shared with the case files)


def _root_from(label: str, n: int) -> Root:
    return parse_root(label, n)


def system_from_json(rows: Iterable[Mapping], n: int, signed: bool, q_min: int, coordinates: str) -> SeparatingSystem:
    built = {}
    for r in rows:
        w = parse_window(r["w"], signed)
        entries = tuple(
            SepEntry(_root_from(s["root"], n), parse_window(s["neighbor"], signed), tuple(s["chi"]),
                     tuple(RF.from_json(x) for x in s["h"]))
            for s in r.get("system", ()))
        bounds = tuple(tuple(RF.from_json(x) for x in b) for b in r.get("bounds", ()))
        certs = tuple(
            tuple(CertTerm(_root_from(t["root"], n), int(t["index"]), RF.from_json(t["coeff"])) for t in c)
            for c in r.get("certificates", ()))
        row = SepRow(w, tuple(_root_from(a, n) for a in r["E"]), entries, bounds, certs)
        if w in built:
            raise ValueError(f"duplicate row {w}")
        built[w] = row
    return SeparatingSystem(built, q_min, coordinates)


def system_to_json(sys: SeparatingSystem) -> list[dict]:
    out = []
    for w, row in sys.rows.items():
        out.append({
            "w": str(w),
            "E": [root_label(a) for a in row.E],
            "system": [{"root": root_label(e.root), "neighbor": str(e.neighbor), "chi": list(e.chi),
                        "h": [x.to_json() for x in e.h]} for e in row.entries],
            "bounds": [[x.to_json() for x in b] for b in row.bounds],
            "certificates": [[{"root": root_label(t.root), "index": t.index, "coeff": t.coeff.to_json()}
                              for t in c] for c in row.certs],
        })
    return out
