"""
Named weight cones attached to a zip datum.

All cones live in the full character lattice ``Z^n``.  For GL(n) and U(n) each
named cone contains the determinant line ``Z(1, ..., 1)`` in its lineality
space; :func:`bar_cone` passes to the quotient coordinates
``(a_1 - a_n, ..., a_{n-1} - a_n)``.

>>> from zipcone.groupcore import GroupFamily, build_context
>>> ctx = build_context(GroupFamily("Sp", 3), (1, 1, 1), 5)
>>> h_Z(ctx, (1, 0, 0))
(1, 0, -5)
>>> [str(h) for h in named_cone(ctx, "HW").facets if h.normal[0] > 1]
['25a1+5a2+a3 <= 0']
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .groupcore import (
    Coweight, Root, Weight, WeylElt, ZipContext, act, coroot, frobenius,
    frobenius_inverse, frobenius_w, pairing,
)
from .polycone import (
    Cone, cone_from_halfspaces, included,
    linear_image, primitive, saturate,
)

__all__ = [
    "NAMED_CONES", "LeviData", "levi_data", "h_Z", "h_w", "fundamental_weight",
    "hasse_weight", "multiplicity", "named_cone", "hw_forms", "lw_forms",
    "hw_forms_by_cosets", "orbit_forms", "zip_preset", "NoPresetError",
    "is_hasse_type", "bar", "bar_cone", "lift_bar_form", "p_star_inverse",
    "dominant_cone", "hasse_cone_at", "xplus_w",
]

NAMED_CONES = ("XplusI", "XminusL", "GS", "Hasse", "HW", "LW", "Orb", "ZipPreset")


def _neg(v: Sequence) -> tuple:
    return tuple(-x for x in v)


def _add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def _scale(c, v: Sequence) -> tuple:
    return tuple(c * x for x in v)


# ---------------------------------------------------------------------------
# the maps h_Z and h_w


def h_Z(ctx: ZipContext, lam: Sequence[int]) -> Weight:
    """``lambda - q w_{0,I}(sigma^{-1} lambda)``."""
    twisted = act(ctx.w0I, frobenius_inverse(ctx, lam))
    return _add(lam, _scale(-ctx.q, twisted))


def h_w(ctx: ZipContext, w: WeylElt, chi: Sequence[int]) -> Weight:
    """``-w chi + q w_{0,I} w_0 sigma^{-1}(chi)``."""
    twisted = act(ctx.w0I, act(ctx.w0, frobenius_inverse(ctx, chi)))
    return _add(_neg(act(w, chi)), _scale(ctx.q, twisted))


def _matrix_of(ctx: ZipContext, fn) -> list[list[int]]:
    """Rows of the matrix of a linear map ``Z^n -> Z^n``."""
    n = ctx.n
    cols = [fn(tuple(1 if i == j else 0 for j in range(n))) for i in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def fundamental_weight(ctx: ZipContext, alpha: Root) -> Weight:
    """Canonical character ``chi_alpha`` for a simple root.

    For ``alpha_i = e_i - e_{i+1}`` this is ``(1^i, 0^{n-i})``; for the last
    simple root of types B and C it is ``(1, ..., 1)``.
    """
    n = ctx.n
    if alpha not in ctx.delta:
        raise ValueError(f"{alpha} is not simple")
    idx = ctx.delta.index(alpha)
    if ctx.family.root_type in "BC" and idx == n - 1:
        return (1,) * n
    return tuple(1 if k <= idx else 0 for k in range(n))


def hasse_weight(ctx: ZipContext, alpha: Root) -> Weight:
    """Weight ``lambda_alpha = h_{w_0}(chi_alpha)`` of the partial Hasse invariant."""
    return h_w(ctx, ctx.w0, fundamental_weight(ctx, alpha))


def multiplicity(chi: Sequence[int], alpha: Root) -> int:
    """Vanishing order ``<chi, alpha^vee>`` along the stratum of ``w s_alpha``."""
    value = pairing(chi, alpha)
    if value.denominator != 1:
        raise ValueError("non-integral multiplicity")
    return int(value)


# ---------------------------------------------------------------------------
# basic cones


def _dominance_forms(ctx: ZipContext, roots: Sequence[Root]) -> list[tuple[int, ...]]:
    # <lambda, alpha^vee> >= 0  <=>  (-alpha^vee) . lambda <= 0
    return [_neg(coroot(a)) for a in roots]


def dominant_cone(ctx: ZipContext) -> Cone:
    """``X*_+(T)``: dominant characters."""
    return cone_from_halfspaces(_dominance_forms(ctx, ctx.delta), dim=ctx.n)


def xplus_w(ctx: ZipContext, w: WeylElt) -> Cone:
    """``X*_{+,w}``: characters nonnegative on the coroots of ``E_w``."""
    return cone_from_halfspaces(_dominance_forms(ctx, ctx.W.lower_neighbors(w)), dim=ctx.n)


def _xplus_I(ctx: ZipContext) -> Cone:
    return cone_from_halfspaces(_dominance_forms(ctx, ctx.I), dim=ctx.n)


def _xminus_L(ctx: ZipContext) -> Cone:
    eqs = [coroot(a) for a in ctx.I]
    ineqs = [coroot(a) for a in ctx.delta_P]
    return cone_from_halfspaces(ineqs, eqs, dim=ctx.n)


def _griffiths_schmid(ctx: ZipContext) -> Cone:
    forms = _dominance_forms(ctx, ctx.I) + [coroot(a) for a in ctx.unipotent_positive]
    return cone_from_halfspaces(forms, dim=ctx.n)


def _hasse(ctx: ZipContext) -> Cone:
    return linear_image(dominant_cone(ctx), _matrix_of(ctx, lambda v: h_Z(ctx, v)))


def hasse_cone_at(ctx: ZipContext, w: WeylElt) -> Cone:
    """``C_{Hasse,w} = h_w(X*_{+,w})``."""
    return linear_image(xplus_w(ctx, w), _matrix_of(ctx, lambda v: h_w(ctx, w, v)))


# ---------------------------------------------------------------------------
# Levi data over F_q and the norm cones


@dataclass(frozen=True)
class LeviData:
    """``I_0``, ``Delta^{P_0}``, the orbit lengths ``r_alpha`` and ``W_{L_0}(F_q)``."""

    I0: tuple[Root, ...]
    delta_P0: tuple[Root, ...]
    r: dict
    W_L0_fixed: tuple[WeylElt, ...]


def _sigma_orbit_length(ctx: ZipContext, alpha: Root) -> int:
    r, beta = 1, frobenius(ctx, alpha)
    while beta != alpha:
        beta = frobenius(ctx, beta)
        r += 1
    return r


def levi_data(ctx: ZipContext) -> LeviData:
    I0 = set(ctx.I)
    image = set(ctx.I)
    for _ in range(len(ctx.delta) + 1):
        image = {frobenius(ctx, a) for a in image}
        I0 &= image
    I0t = tuple(a for a in ctx.delta if a in I0)
    fixed = tuple(w for w in ctx.W.subgroup(I0t) if frobenius_w(ctx, w) == w)
    r = {a: _sigma_orbit_length(ctx, a) for a in ctx.delta}
    return LeviData(I0t, tuple(a for a in ctx.delta if a not in I0), r, fixed)


def _norm_form(ctx: ZipContext, alpha: Root, pre: WeylElt, levi: LeviData) -> tuple[int, ...]:
    """Coefficients of ``lambda -> sum_w sum_i q^{i+l(w)} <w pre lambda, sigma^i alpha^vee>``."""
    q = ctx.q
    total = (0,) * ctx.n
    for w in levi.W_L0_fixed:
        moved = (w * pre).inverse()
        check = coroot(alpha)
        for i in range(levi.r[alpha]):
            weight = q ** (i + ctx.W.length(w))
            total = _add(total, _scale(weight, act(moved, check)))
            check = frobenius(ctx, check)
    return total


def hw_forms(ctx: ZipContext) -> list[tuple[int, ...]]:
    """Raw integer forms of the highest weight cone, one per ``alpha in Delta^P``."""
    levi = levi_data(ctx)
    return [_norm_form(ctx, a, ctx.W.e, levi) for a in ctx.delta_P]


def lw_forms(ctx: ZipContext) -> list[tuple[int, ...]]:
    """Raw integer forms of the lowest weight cone, one per ``alpha in Delta^{P_0}``.

    They are evaluated at ``lambda_0 = w_{0,I_0} w_{0,I} lambda``.
    """
    levi = levi_data(ctx)
    pre = ctx.W.longest(levi.I0) * ctx.w0I
    return [_norm_form(ctx, a, pre, levi) for a in levi.delta_P0]


def hw_forms_by_cosets(ctx: ZipContext) -> list[tuple[int, ...]]:
    """Split groups only: the highest weight forms summed over ``^{I_alpha} W_I``,
    where ``I_alpha`` collects the roots of ``I`` orthogonal to ``alpha^vee``."""
    if not ctx.family.is_split:
        raise ValueError("the coset formula needs a split group")
    forms = []
    for alpha in ctx.delta_P:
        check = coroot(alpha)
        I_alpha = tuple(b for b in ctx.I if pairing(b, alpha) == 0 and pairing(alpha, b) == 0)
        total = (0,) * ctx.n
        sub = ctx.W.subgroup(I_alpha)
        for w in ctx.W.subgroup(ctx.I):
            if any(ctx.W.length(s * w) < ctx.W.length(w) for s in sub if ctx.W.length(s) == 1):
                continue
            total = _add(total, _scale(ctx.q ** ctx.W.length(w), act(w.inverse(), check)))
        forms.append(total)
    return forms


def orbit_forms(ctx: ZipContext) -> list[tuple[int, ...]]:
    """``q * Gamma_{O,S}`` for all ``W_L``-orbits ``O`` and subsets ``S``."""
    if not ctx.family.is_split:
        raise ValueError("the orbit cone is only defined for split groups")
    remaining = list(ctx.unipotent_positive)
    gens = [ctx.W.reflection(a) for a in ctx.I]
    orbits = []
    while remaining:
        orbit = {remaining[0]}
        frontier = [remaining[0]]
        while frontier:
            nxt = []
            for beta in frontier:
                for s in gens:
                    image = act(s, beta)
                    if image not in orbit:
                        orbit.add(image)
                        nxt.append(image)
            frontier = nxt
        orbits.append(tuple(a for a in ctx.unipotent_positive if a in orbit))
        remaining = [a for a in remaining if a not in orbit]
    forms = []
    for orbit in orbits:
        for k in range(len(orbit) + 1):
            for S in itertools.combinations(orbit, k):
                total = (0,) * ctx.n
                for a in orbit:
                    total = _add(total, _scale(1 if a in S else ctx.q, coroot(a)))
                forms.append(total)
    return forms


# ---------------------------------------------------------------------------
# presets


class NoPresetError(LookupError):
    """Raised when no literature value of the zip cone is available."""


def lift_bar_form(coeffs: Sequence) -> tuple:
    """The form on ``Z^n`` that vanishes on ``(1, ..., 1)`` and restricts to
    ``coeffs`` in quotient coordinates."""
    return tuple(coeffs) + (-sum(coeffs),)


def _preset_forms(ctx: ZipContext) -> list[tuple[int, ...]]:
    q = ctx.q
    key = (ctx.family.tag, ctx.n, ctx.mu)
    if key == ("Sp", 2, (1, 1)):
        return [(q, 1)]
    if key == ("Sp", 3, (1, 1, 1)):
        return [(q * q, 1, q), (q, q * q, 1)]
    if key == ("GL", 3, (1, 1, 0)):
        return [lift_bar_form((q, 1))]
    if key == ("GL", 4, (1, 1, 1, 0)):
        return [lift_bar_form((q * q, 1, q)), lift_bar_form((q, q * q, 1))]
    if key == ("GL", 4, (1, 1, 0, 0)):
        return [(q, 1, -1, -q)]
    if key == ("U", 3, (1, 1, 0)):
        return [(q - 1, 1, -q)]
    if key == ("U", 4, (1, 1, 1, 0)):
        return [lift_bar_form((q - 1, 0, 1))]
    if ctx.family.tag == "SO" and ctx.mu == (1,) + (0,) * (ctx.n - 1):
        # Hasse type, so the saturated zip cone is the saturated Hasse cone
        return [(q + 1, q - 1) + (0,) * (ctx.n - 2)]
    raise NoPresetError(f"no certified preset for {ctx.family.name} with mu={ctx.mu}")


def zip_preset(ctx: ZipContext) -> Cone:
    """Literature value of the saturated zip cone for the certified cases."""
    forms = _preset_forms(ctx) + _dominance_forms(ctx, ctx.I)
    return cone_from_halfspaces(forms, dim=ctx.n)


def named_cone(ctx: ZipContext, name: str, w: WeylElt | None = None) -> Cone:
    """Cone by name: one of :data:`NAMED_CONES` or ``"HasseAt"`` (with ``w``)."""
    xplus = _dominance_forms(ctx, ctx.I)
    if name == "XplusI":
        return _xplus_I(ctx)
    if name == "XminusL":
        return _xminus_L(ctx)
    if name == "GS":
        return _griffiths_schmid(ctx)
    if name == "Hasse":
        return _hasse(ctx)
    if name == "HasseAt":
        if w is None:
            raise ValueError("HasseAt needs a Weyl group element")
        return hasse_cone_at(ctx, w)
    if name == "HW":
        return cone_from_halfspaces([primitive(f) for f in hw_forms(ctx) if any(f)] + xplus, dim=ctx.n)
    if name == "LW":
        return cone_from_halfspaces([primitive(f) for f in lw_forms(ctx) if any(f)] + xplus, dim=ctx.n)
    if name == "Orb":
        return cone_from_halfspaces(orbit_forms(ctx), dim=ctx.n)
    if name == "ZipPreset":
        return zip_preset(ctx)
    raise ValueError(f"unknown cone {name!r}")


# ---------------------------------------------------------------------------
# Hasse-type test, bar map, p_* inverse


def is_hasse_type(ctx: ZipContext) -> bool:
    """Frobenius stabilises ``I`` and acts on it as ``-w_{0,I}``."""
    I = set(ctx.I)
    if {frobenius(ctx, a) for a in I} != I:
        return False
    return all(frobenius(ctx, a) == _neg(act(ctx.w0I, a)) for a in I)


def bar(lam: Sequence) -> tuple:
    """``(a_1 - a_n, ..., a_{n-1} - a_n)``."""
    last = lam[-1]
    return tuple(a - last for a in lam[:-1])


def bar_cone(c: Cone) -> Cone:
    """Image of a cone containing the determinant line in quotient coordinates."""
    n = c.dim
    det = (1,) * n
    if not (c.__contains__(det) and c.__contains__(_neg(det))):
        raise ValueError("the cone does not contain the determinant line")
    matrix = [[1 if j == i else (-1 if j == n - 1 else 0) for j in range(n)] for i in range(n - 1)]
    return linear_image(c, matrix)


def p_star_inverse(ctx: ZipContext, alphavee: Sequence) -> Coweight:
    """Solve ``delta - q sigma(delta) = alphavee`` over the rationals."""
    n, q = ctx.n, ctx.q
    sigma = _matrix_of(ctx, lambda v: frobenius(ctx, v))
    mat = [[Fraction((1 if i == j else 0) - q * sigma[i][j]) for j in range(n)] + [Fraction(alphavee[i])]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if mat[r][col] != 0)
        mat[col], mat[piv] = mat[piv], mat[col]
        p = mat[col][col]
        mat[col] = [x / p for x in mat[col]]
        for r in range(n):
            if r != col and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
    return tuple(mat[i][n] for i in range(n))


def split_hasse_test(ctx: ZipContext, lam: Sequence[int]) -> bool:
    """Split groups: ``lambda in <C_Hasse>`` iff ``lambda + q w_{0,I} lambda`` is antidominant."""
    if not ctx.family.is_split:
        raise ValueError("split groups only")
    v = _add(lam, _scale(ctx.q, act(ctx.w0I, lam)))
    return all(pairing(v, a) <= 0 for a in ctx.delta)


def hasse_contains_gs(ctx: ZipContext) -> bool:
    return included(named_cone(ctx, "GS"), saturate(named_cone(ctx, "Hasse")))
