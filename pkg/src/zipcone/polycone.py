"""
Exact rational polyhedral cones.

A :class:`Cone` is a rational polyhedral cone in ``Q^d`` and stands for the
saturated monoid of its lattice points.  It can be given by generators (rays
plus a lineality basis) or by inequalities ``v . x <= 0``; the other
representation is computed on demand by the double description method in exact
integer arithmetic and then cached.

Farkas certificates are searched with a small exact simplex solver (Bland's
rule).  When no certificate exists a separating vector is produced from the
facets of the cone spanned by the sources, so the two answers come from
independent computations.

>>> quadrant = cone_from_generators([(1, 0), (0, 1)])
>>> [str(h) for h in facets(quadrant)]
['-a1 <= 0', '-a2 <= 0']
>>> contains(quadrant, (3, 4)), contains(quadrant, (-1, 0))
(True, False)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence, Union

__all__ = [
    "Halfspace", "Cone", "FarkasCertificate", "Infeasible",
    "primitive", "cone_from_generators", "cone_from_halfspaces", "rays_of",
    "facets", "contains", "included", "equal", "sum_cones", "intersect",
    "saturate", "zero_cone", "full_space", "farkas_verify", "farkas_search",
    "linear_combination",
]

Vector = tuple[int, ...]
Rational = Union[int, Fraction]

MAX_DIM = 6


def _dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(vec: Sequence[Rational]) -> Vector:
    """Scale a nonzero rational vector to a primitive integer vector.

    The direction (and therefore the sign) is preserved.
    """
    fracs = [Fraction(x) for x in vec]
    den = 1
    for f in fracs:
        den = den * f.denominator // math.gcd(den, f.denominator)
    ints = [int(f * den) for f in fracs]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return tuple(0 for _ in ints)
    return tuple(x // g for x in ints)


def _sign_fixed(vec: Vector) -> Vector:
    for x in vec:
        if x != 0:
            return vec if x > 0 else tuple(-y for y in vec)
    return vec


def _is_zero(vec: Sequence) -> bool:
    return all(x == 0 for x in vec)


@dataclass(frozen=True, order=True)
class Halfspace:
    """The halfspace ``{x : normal . x <= 0}`` with a primitive integer normal."""

    normal: Vector

    def __post_init__(self) -> None:
        if _is_zero(self.normal):
            raise ValueError("a halfspace needs a nonzero normal")
        object.__setattr__(self, "normal", primitive(self.normal))

    @property
    def dim(self) -> int:
        return len(self.normal)

    def value(self, x: Sequence) -> Rational:
        return _dot(self.normal, x)

    def contains(self, x: Sequence) -> bool:
        return self.value(x) <= 0

    def __str__(self) -> str:
        return format_form(self.normal) + " <= 0"


def format_form(coeffs: Sequence[Rational], var: str = "a") -> str:
    """Render a linear form such as ``25a1+5a2+a3``."""
    parts = []
    for i, c in enumerate(coeffs, start=1):
        if c == 0:
            continue
        mag = abs(c)
        body = f"{var}{i}" if mag == 1 else f"{mag}{var}{i}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("-" if c < 0 else "+") + body)
    return "".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# double description


def _rref_basis(vectors: Iterable[Sequence[Rational]], dim: int) -> list[Vector]:
    """Primitive rows of the reduced row echelon form of the span."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    for row in rows:
        r = row[:]
        for b, p in zip(basis, pivots):
            if r[p] != 0:
                f = r[p]
                r = [x - f * y for x, y in zip(r, b)]
        lead = next((i for i, x in enumerate(r) if x != 0), None)
        if lead is None:
            continue
        r = [x / r[lead] for x in r]
        for k, b in enumerate(basis):
            if b[lead] != 0:
                f = b[lead]
                basis[k] = [x - f * y for x, y in zip(b, r)]
        basis.append(r)
        pivots.append(lead)
    order = sorted(range(len(basis)), key=lambda k: pivots[k])
    return [primitive(basis[k]) for k in order]


def _project_out(vec: Vector, lin: Sequence[Vector]) -> Vector:
    """Orthogonal projection onto the complement of ``span(lin)``, made primitive."""
    if not lin:
        return vec
    # Gram-Schmidt over the rationals
    ortho: list[list[Fraction]] = []
    for l in lin:
        v = [Fraction(x) for x in l]
        for o in ortho:
            c = _dot(v, o) / _dot(o, o)
            v = [x - c * y for x, y in zip(v, o)]
        ortho.append(v)
    r = [Fraction(x) for x in vec]
    for o in ortho:
        c = _dot(r, o) / _dot(o, o)
        r = [x - c * y for x, y in zip(r, o)]
    return primitive(r)


def _double_description(ineqs: Sequence[Vector], eqs: Sequence[Vector],
                        dim: int) -> tuple[list[Vector], list[Vector]]:
    """Extreme rays and a lineality basis of ``{x : a.x <= 0, e.x = 0}``.

    Constraints are inserted in lexicographic order.  Pairs of rays are
    combined only when adjacent, which is decided by the combinatorial test on
    the sets of tight constraints.
    """
    constraints = [(e, True) for e in sorted(set(eqs)) if not _is_zero(e)] + \
                  [(a, False) for a in sorted(set(ineqs)) if not _is_zero(a)]
    lin: list[Vector] = [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    rays: list[tuple[Vector, frozenset[int]]] = []
    for idx, (a, is_eq) in enumerate(constraints):
        vals = [_dot(a, l) for l in lin]
        k = next((i for i, v in enumerate(vals) if v != 0), None)
        if k is not None:
            l0, v0 = lin[k], vals[k]
            sign = 1 if v0 > 0 else -1
            rest = [l for i, l in enumerate(lin) if i != k]
            lin = [primitive(tuple(v0 * x - _dot(a, l) * y for x, y in zip(l, l0)))
                   for l in rest]
            lin = [l for l in lin if not _is_zero(l)]
            new_rays = []
            for r, tight in rays:
                ar = _dot(a, r)
                rr = primitive(tuple(abs(v0) * x - sign * ar * y for x, y in zip(r, l0)))
                new_rays.append((rr, tight | {idx}))
            if not is_eq:
                new_rays.append((tuple(-sign * y for y in l0),
                                 frozenset(range(idx))))
            rays = new_rays
            continue
        pos, zero, neg = [], [], []
        for r, tight in rays:
            v = _dot(a, r)
            (pos if v > 0 else neg if v < 0 else zero).append((r, tight, v))
        kept = [(r, tight | {idx}) for r, tight, _ in zero]
        if not is_eq:
            kept += [(r, tight) for r, tight, _ in neg]
        tights = [t for _, t in rays]
        for p, tp, vp in pos:
            for m, tm, vm in neg:
                common = tp & tm
                # p and m are adjacent iff no third ray is tight on all common constraints
                if sum(1 for t in tights if common <= t) > 2:
                    continue
                r = primitive(tuple(vp * y - vm * x for x, y in zip(p, m)))
                kept.append((r, common | {idx}))
        rays = kept
    lin_basis = _rref_basis(lin, dim)
    out = []
    seen = set()
    for r, _ in rays:
        rr = _project_out(r, lin_basis)
        if _is_zero(rr) or rr in seen:
            continue
        seen.add(rr)
        out.append(rr)
    return sorted(out), lin_basis


# ---------------------------------------------------------------------------
# cones


class Cone:
    """Rational polyhedral cone with lazily computed dual representations.

    Use :func:`cone_from_generators` or :func:`cone_from_halfspaces` rather than
    calling the constructor directly.
    """

    def __init__(self, dim: int, *, gens: tuple[tuple[Vector, ...], tuple[Vector, ...]] | None = None,
                 hrep: tuple[tuple[Vector, ...], tuple[Vector, ...]] | None = None):
        if dim > MAX_DIM:
            raise ValueError(f"dimension {dim} exceeds the supported maximum {MAX_DIM}")
        if gens is None and hrep is None:
            raise ValueError("a cone needs generators or inequalities")
        self.dim = dim
        self._gens = gens
        self._hrep = hrep

    # raw (possibly redundant) descriptions ---------------------------------
    def generators(self) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
        if self._gens is not None:
            return self._gens
        return (tuple(self.rays), tuple(self.lineality))

    def inequalities(self) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
        if self._hrep is not None:
            return self._hrep
        return self._minimal_hrep

    # canonical descriptions -------------------------------------------------
    @cached_property
    def _minimal_vrep(self) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
        ineqs, eqs = self.inequalities()
        rays, lin = _double_description(ineqs, eqs, self.dim)
        return tuple(rays), tuple(lin)

    @cached_property
    def _minimal_hrep(self) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
        rays, lin = self.generators() if self._gens is not None else self._minimal_vrep
        # the polar cone {y : y.r <= 0, y.l = 0}; its rays are facet normals
        normals, eqs = _double_description(rays, lin, self.dim)
        return tuple(normals), tuple(eqs)

    @property
    def rays(self) -> tuple[Vector, ...]:
        """Extreme rays, orthogonal to the lineality space, sorted."""
        return self._minimal_vrep[0]

    @property
    def lineality(self) -> tuple[Vector, ...]:
        """Echelon basis of the lineality space."""
        return self._minimal_vrep[1]

    @cached_property
    def facets(self) -> tuple[Halfspace, ...]:
        """Irredundant halfspaces; an implicit equation appears with both signs."""
        normals, eqs = self._minimal_hrep
        hs = [Halfspace(v) for v in normals]
        for e in eqs:
            hs.append(Halfspace(e))
            hs.append(Halfspace(tuple(-x for x in e)))
        return tuple(sorted(set(hs)))

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    def __contains__(self, x: Sequence) -> bool:
        return contains(self, x)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cone):
            return NotImplemented
        return equal(self, other)

    def __hash__(self) -> int:
        return hash((self.dim, self.facets))

    def __repr__(self) -> str:
        return f"Cone(dim={self.dim}, rays={list(self.rays)}, lineality={list(self.lineality)})"


def _check_dims(vectors: Iterable[Sequence], dim: int | None) -> int:
    for v in vectors:
        if dim is None:
            dim = len(v)
        elif len(v) != dim:
            raise ValueError("dimension mismatch")
    if dim is None:
        raise ValueError("cannot infer the dimension of an empty description")
    return dim


def cone_from_generators(rays: Iterable[Sequence[Rational]], lineality: Iterable[Sequence[Rational]] = (),
                         dim: int | None = None) -> Cone:
    """The cone ``sum Q>=0 rays + sum Q lineality`` (zero vectors dropped)."""
    rays, lineality = list(rays), list(lineality)
    dim = _check_dims(rays + lineality, dim)
    r = tuple(sorted({primitive(v) for v in rays if not _is_zero(v)}))
    l = tuple(sorted({_sign_fixed(primitive(v)) for v in lineality if not _is_zero(v)}))
    return Cone(dim, gens=(r, l))


def cone_from_halfspaces(halfspaces: Iterable[Halfspace | Sequence[Rational]],
                         equations: Iterable[Sequence[Rational]] = (),
                         dim: int | None = None) -> Cone:
    """The cone ``{x : v.x <= 0 for each halfspace, e.x = 0 for each equation}``."""
    normals = [h.normal if isinstance(h, Halfspace) else h for h in halfspaces]
    equations = list(equations)
    dim = _check_dims(normals + equations, dim)
    ineqs = tuple(sorted({primitive(v) for v in normals if not _is_zero(v)}))
    eqs = tuple(sorted({_sign_fixed(primitive(v)) for v in equations if not _is_zero(v)}))
    return Cone(dim, hrep=(ineqs, eqs))


def rays_of(halfspaces: Iterable[Halfspace | Sequence[Rational]], dim: int | None = None) -> Cone:
    """The cone cut out by ``halfspaces``, with its rays computed."""
    c = cone_from_halfspaces(halfspaces, dim=dim)
    c.rays  # noqa: B018 - force the conversion
    return c


def facets(c: Cone) -> list[Halfspace]:
    return list(c.facets)


def zero_cone(dim: int) -> Cone:
    return Cone(dim, gens=((), ()))


def full_space(dim: int) -> Cone:
    return Cone(dim, hrep=((), ()))


def contains(c: Cone, x: Sequence[Rational]) -> bool:
    """Membership of a lattice (or rational) point."""
    if len(x) != c.dim:
        raise ValueError("dimension mismatch")
    ineqs, eqs = c.inequalities()
    return all(_dot(v, x) <= 0 for v in ineqs) and all(_dot(e, x) == 0 for e in eqs)


def included(c1: Cone, c2: Cone) -> bool:
    """``c1 <= c2``: every generator of ``c1`` satisfies every inequality of ``c2``."""
    if c1.dim != c2.dim:
        raise ValueError("dimension mismatch")
    rays, lin = c1.generators()
    ineqs, eqs = c2.inequalities()
    for v in ineqs:
        if any(_dot(v, r) > 0 for r in rays) or any(_dot(v, l) != 0 for l in lin):
            return False
    for e in eqs:
        if any(_dot(e, r) != 0 for r in rays) or any(_dot(e, l) != 0 for l in lin):
            return False
    return True


def equal(c1: Cone, c2: Cone) -> bool:
    return included(c1, c2) and included(c2, c1)


def sum_cones(*cones: Cone) -> Cone:
    """Minkowski sum."""
    if not cones:
        raise ValueError("need at least one cone")
    dim = cones[0].dim
    rays: list[Vector] = []
    lin: list[Vector] = []
    for c in cones:
        if c.dim != dim:
            raise ValueError("dimension mismatch")
        r, l = c.generators()
        rays.extend(r)
        lin.extend(l)
    return cone_from_generators(rays, lin, dim=dim)


def intersect(*cones: Cone) -> Cone:
    if not cones:
        raise ValueError("need at least one cone")
    dim = cones[0].dim
    ineqs: list[Vector] = []
    eqs: list[Vector] = []
    for c in cones:
        if c.dim != dim:
            raise ValueError("dimension mismatch")
        i, e = c.inequalities()
        ineqs.extend(i)
        eqs.extend(e)
    return cone_from_halfspaces(ineqs, eqs, dim=dim)


def saturate(c: Cone) -> Cone:
    """``<C> = X* cap C_{Q>=0}``.

    A :class:`Cone` already denotes the lattice points of its rational hull, so
    saturation only rebuilds the cone from its irredundant facets; the result
    is idempotent and has the same facets as ``c``.
    """
    normals, eqs = c._minimal_hrep
    return Cone(c.dim, hrep=(normals, eqs))


def linear_image(c: Cone, matrix: Sequence[Sequence[Rational]]) -> Cone:
    """Image of a cone under ``x -> matrix @ x`` (rows of ``matrix`` are outputs)."""
    rays, lin = c.generators()
    out_dim = len(matrix)

    def apply(v):
        return tuple(_dot(row, v) for row in matrix)

    return cone_from_generators([apply(r) for r in rays], [apply(l) for l in lin], dim=out_dim)


# ---------------------------------------------------------------------------
# Farkas certificates


@dataclass(frozen=True)
class FarkasCertificate:
    """Nonnegative coefficients keyed by source label."""

    coefficients: Mapping[Hashable, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients",
                           {k: Fraction(v) for k, v in self.coefficients.items()})

    @property
    def nonnegative(self) -> bool:
        return all(v >= 0 for v in self.coefficients.values())


@dataclass(frozen=True)
class Infeasible:
    """No certificate exists; ``witness`` has ``target(w) > 0`` and ``source(w) <= 0``."""

    witness: Vector


def _as_vector(x) -> tuple:
    return x.normal if isinstance(x, Halfspace) else tuple(x)


def _as_source_map(sources) -> dict[Hashable, tuple]:
    if isinstance(sources, Mapping):
        return {k: _as_vector(v) for k, v in sources.items()}
    return {i: _as_vector(v) for i, v in enumerate(sources)}


def linear_combination(sources, cert: FarkasCertificate, dim: int) -> tuple[Fraction, ...]:
    """``sum_k A_k source_k`` as a rational vector of length ``dim``."""
    src = _as_source_map(sources)
    total = [Fraction(0)] * dim
    for key, coeff in cert.coefficients.items():
        if key not in src:
            raise KeyError(f"certificate references unknown source {key!r}")
        total = [t + coeff * x for t, x in zip(total, src[key])]
    return tuple(total)


def farkas_verify(target, sources, cert: FarkasCertificate) -> bool:
    """True iff all coefficients are nonnegative and ``sum A_i source_i = target``.

    ``target`` and ``sources`` may be :class:`Halfspace` objects or raw
    rational linear forms; ``sources`` may be a sequence (keys are indices) or
    a mapping from labels to forms.
    """
    t = _as_vector(target)
    src = _as_source_map(sources)
    if any(len(v) != len(t) for v in src.values()):
        raise ValueError("dimension mismatch")
    if not cert.nonnegative:
        return False
    combo = linear_combination(src, cert, len(t))
    return all(Fraction(a) == b for a, b in zip(t, combo))


def _phase_one(columns: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Find ``x >= 0`` with ``sum_j x_j columns[j] = rhs`` or return ``None``.

    Exact tableau simplex over the auxiliary problem minimising the sum of
    artificial variables; entering and leaving variables follow Bland's rule.
    """
    m = len(rhs)
    nvar = len(columns)
    rows = []
    for i in range(m):
        row = [columns[j][i] for j in range(nvar)]
        b = rhs[i]
        if b < 0:
            row = [-x for x in row]
            b = -b
        art = [Fraction(1) if k == i else Fraction(0) for k in range(m)]
        rows.append(row + art + [b])
    basis = [nvar + i for i in range(m)]
    total = nvar + m
    # reduced costs of the auxiliary objective: c_j - c_B B^{-1} A_j
    cost = [Fraction(0)] * nvar + [Fraction(1)] * m + [Fraction(0)]
    for row in rows:
        cost = [c - x for c, x in zip(cost, row)]
    while True:
        entering = next((j for j in range(total) if cost[j] < 0), None)
        if entering is None:
            break
        best = None
        for i, row in enumerate(rows):
            if row[entering] > 0:
                ratio = row[-1] / row[entering]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:  # unbounded auxiliary objective cannot happen
            raise ArithmeticError("phase one is unbounded")
        i = best[1]
        piv = rows[i][entering]
        rows[i] = [x / piv for x in rows[i]]
        for k in range(m):
            if k != i and rows[k][entering] != 0:
                f = rows[k][entering]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[i])]
        f = cost[entering]
        cost = [c - f * y for c, y in zip(cost, rows[i])]
        basis[i] = entering
    if -cost[-1] != 0:
        return None
    x = [Fraction(0)] * nvar
    for i, bvar in enumerate(basis):
        if bvar < nvar:
            x[bvar] = rows[i][-1]
    return x


def farkas_search(target, sources) -> FarkasCertificate | Infeasible:
    """Decide whether ``target`` lies in the conical hull of ``sources``."""
    t = tuple(Fraction(x) for x in _as_vector(target))
    src = _as_source_map(sources)
    keys = list(src)
    if any(len(src[k]) != len(t) for k in keys):
        raise ValueError("dimension mismatch")
    columns = [[Fraction(x) for x in src[k]] for k in keys]
    solution = _phase_one(columns, list(t))
    if solution is not None:
        cert = FarkasCertificate({k: v for k, v in zip(keys, solution) if v != 0})
        if not farkas_verify(t, src, cert):
            raise ArithmeticError("simplex returned an invalid certificate")
        return cert
    hull = cone_from_generators([src[k] for k in keys], dim=len(t))
    for h in hull.facets:
        if h.value(t) > 0:
            return Infeasible(h.normal)
    raise ArithmeticError("simplex reported infeasibility but the target lies in the hull")
