"""
Root data, Weyl groups and zip-datum combinatorics for the classical families.

The character lattice of the diagonal torus is identified with ``Z^n``.  Roots
and weights are integer tuples, coroots are computed as ``2*alpha/(alpha.alpha)``
and the pairing ``<lambda, alpha^vee>`` is the dot product with the coroot.

Weyl group elements are (signed) permutations written in window notation.  In
types B and C an element of ``W`` is a permutation ``w`` of ``1..2n`` with
``w(i) + w(2n+1-i) = 2n+1``; only the window ``[w(1) ... w(n)]`` is stored.
Index ``k <= n`` stands for ``e_k`` and index ``k > n`` for ``-e_{2n+1-k}``, and
``w`` acts on characters by sending the basis vector of index ``i`` to the basis
vector of index ``w(i)``.

>>> ctx = build_context(GroupFamily("Sp", 3), (1, 1, 1), 5)
>>> [root_label(a) for a in ctx.I]
['e1-e2', 'e2-e3']
>>> act(parse_window("135"), (0, 1, 0))
(0, 0, 1)
>>> length(parse_window("564"))
8
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

__all__ = [
    "Root", "Weight", "Coweight", "GroupFamily", "WeylElt", "RootSystem",
    "WeylGroup", "ZipContext", "build_context", "pairing", "act", "frobenius",
    "frobenius_w", "frobenius_root", "length", "reflection", "longest",
    "lower_neighbors", "min_coset_reps", "orbit_order_leq", "closure",
    "parse_window", "parse_root", "root_label", "root_order_key", "weyl_group",
]

Root = tuple[int, ...]
Weight = tuple[int, ...]
Coweight = tuple[Fraction, ...]

_FAMILY_TYPES = {"GL": "A", "U": "A", "Sp": "C", "SO": "B"}


@dataclass(frozen=True)
class GroupFamily:
    """A classical family together with the rank of its diagonal torus.

    ``GroupFamily("Sp", 3)`` is Sp(6), ``GroupFamily("SO", 2)`` is SO(5) and
    ``GroupFamily("GL", 4)`` / ``GroupFamily("U", 4)`` are GL(4) / U(4).
    """

    tag: str
    rank: int

    def __post_init__(self) -> None:
        if self.tag not in _FAMILY_TYPES:
            raise ValueError(f"unknown group family {self.tag!r}")
        if self.rank < 1:
            raise ValueError("rank must be at least 1")

    @property
    def root_type(self) -> str:
        return _FAMILY_TYPES[self.tag]

    @property
    def is_split(self) -> bool:
        return self.tag != "U"

    @property
    def name(self) -> str:
        n = self.rank
        return {"GL": f"GL({n})", "U": f"U({n})",
                "Sp": f"Sp({2 * n})", "SO": f"SO({2 * n + 1})"}[self.tag]


# ---------------------------------------------------------------------------
# roots


def unit(n: int, i: int, c: int = 1) -> tuple[int, ...]:
    """``c * e_{i+1}`` in ``Z^n`` (zero-based ``i``)."""
    return tuple(c if k == i else 0 for k in range(n))


def _dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def coroot(alpha: Root) -> Root:
    """The coroot ``2 alpha / (alpha . alpha)``; integral for classical types."""
    norm = _dot(alpha, alpha)
    out = []
    for a in alpha:
        value = Fraction(2 * a, norm)
        if value.denominator != 1:
            raise ValueError(f"{alpha} has a non-integral coroot")
        out.append(int(value))
    return tuple(out)


def root_label(alpha: Root) -> str:
    """Human readable name such as ``e1-e3``, ``e2+e3``, ``2e3`` or ``-e1``."""
    terms = []
    for i, a in enumerate(alpha):
        if a == 0:
            continue
        mag = "" if abs(a) == 1 else str(abs(a))
        sign = "-" if a < 0 else "+"
        terms.append((sign, f"{mag}e{i + 1}"))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        text += sign + body
    return text


def root_order_key(alpha: Root) -> tuple[int, int, int]:
    """Sort key ``(i, j, sign)`` for ``e_i -+ e_j``; ``2e_i`` and ``e_i`` come after every ``e_i -+ e_j``.

    >>> [root_label(a) for a in sorted([(2, 0, 0), (1, 1, 0), (1, -1, 0), (0, 1, -1)], key=root_order_key)]
    ['e1-e2', 'e1+e2', '2e1', 'e2-e3']
    """
    support = [k for k, c in enumerate(alpha) if c]
    if len(support) == 1:
        return (support[0], len(alpha), 0)
    i, j = support[0], support[1]
    return (i, j, 0 if alpha[j] < 0 else 1)


def parse_root(label: str, n: int) -> Root:
    """Inverse of :func:`root_label`."""
    text = label.replace(" ", "").replace("−", "-")
    if not text:
        raise ValueError("empty root label")
    if text[0] not in "+-":
        text = "+" + text
    coords = [0] * n
    pos = 0
    while pos < len(text):
        sign = -1 if text[pos] == "-" else 1
        pos += 1
        end = pos
        while end < len(text) and text[end] not in "+-":
            end += 1
        body = text[pos:end]
        if "e" not in body:
            raise ValueError(f"malformed root label {label!r}")
        mag, idx = body.split("e", 1)
        i = int(idx) - 1
        if not 0 <= i < n:
            raise ValueError(f"index out of range in {label!r}")
        coords[i] += sign * (int(mag) if mag else 1)
        pos = end
    return tuple(coords)


class RootSystem:
    """Positive and simple roots of type A_{n-1}, B_n or C_n in ``Z^n``."""

    def __init__(self, root_type: str, n: int):
        self.root_type = root_type
        self.n = n
        pos: list[Root] = []
        for i, j in itertools.combinations(range(n), 2):
            pos.append(tuple(a - b for a, b in zip(unit(n, i), unit(n, j))))
            if root_type in "BC":
                pos.append(tuple(a + b for a, b in zip(unit(n, i), unit(n, j))))
        if root_type in "BC":
            c = 2 if root_type == "C" else 1
            pos.extend(unit(n, i, c) for i in range(n))
        self.positive: tuple[Root, ...] = tuple(sorted(pos, reverse=True))
        simple = [tuple(a - b for a, b in zip(unit(n, i), unit(n, i + 1)))
                  for i in range(n - 1)]
        if root_type == "C":
            simple.append(unit(n, n - 1, 2))
        elif root_type == "B":
            simple.append(unit(n, n - 1))
        self.simple: tuple[Root, ...] = tuple(simple)
        self._positive_set = frozenset(self.positive)
        self._all = self._positive_set | {tuple(-a for a in r) for r in self.positive}

    def is_root(self, alpha: Root) -> bool:
        return tuple(alpha) in self._all

    def is_positive(self, alpha: Root) -> bool:
        return tuple(alpha) in self._positive_set

    def positive_part(self, alpha: Root) -> Root:
        alpha = tuple(alpha)
        return alpha if alpha in self._positive_set else tuple(-a for a in alpha)


@lru_cache(maxsize=None)
def root_system(root_type: str, n: int) -> RootSystem:
    return RootSystem(root_type, n)


def pairing(lam: Sequence, alpha: Root, roots: RootSystem | None = None) -> Fraction:
    """Exact value of ``<lambda, alpha^vee>``.

    When a root system is given, ``alpha`` must be one of its roots.
    """
    if roots is not None and not roots.is_root(alpha):
        raise ValueError(f"{alpha} is not a root of type {roots.root_type}{roots.n}")
    if len(lam) != len(alpha):
        raise ValueError("rank mismatch")
    return Fraction(_dot(lam, coroot(alpha)))


# ---------------------------------------------------------------------------
# Weyl group elements


@dataclass(frozen=True, order=True)
class WeylElt:
    """A (signed) permutation in window notation.

    ``signed`` is false for type A (window values in ``1..n``) and true for
    types B/C (window values in ``1..2n``).
    """

    window: tuple[int, ...]
    signed: bool = False

    def __post_init__(self) -> None:
        n = len(self.window)
        size = 2 * n if self.signed else n
        full = self.full
        if sorted(full) != list(range(1, size + 1)):
            raise ValueError(f"window {self.window} is not a bijection")

    @property
    def n(self) -> int:
        return len(self.window)

    @cached_property
    def full(self) -> tuple[int, ...]:
        """Images of all indices ``1..N`` (``N = n`` or ``2n``)."""
        if not self.signed:
            return self.window
        n = self.n
        tail = tuple(2 * n + 1 - self.window[2 * n - k] for k in range(n + 1, 2 * n + 1))
        return self.window + tail

    def __call__(self, k: int) -> int:
        return self.full[k - 1]

    def __mul__(self, other: WeylElt) -> WeylElt:
        if (self.n, self.signed) != (other.n, other.signed):
            raise ValueError("Weyl elements of different groups")
        return WeylElt(tuple(self(other(i)) for i in range(1, self.n + 1)), self.signed)

    def inverse(self) -> WeylElt:
        full = self.full
        inv = [0] * len(full)
        for i, image in enumerate(full, start=1):
            inv[image - 1] = i
        return WeylElt(tuple(inv[: self.n]), self.signed)

    def is_identity(self) -> bool:
        return self.window == tuple(range(1, self.n + 1))

    def __str__(self) -> str:
        sep = "" if len(self.full) < 10 else ","
        return "[" + sep.join(str(v) for v in self.window) + "]"

    @property
    def label(self) -> str:
        sep = "" if len(self.full) < 10 else ","
        return sep.join(str(v) for v in self.window)


def identity(n: int, signed: bool) -> WeylElt:
    return WeylElt(tuple(range(1, n + 1)), signed)


def parse_window(text: str, signed: bool | None = None) -> WeylElt:
    """Parse ``"[564]"``, ``"564"`` or ``"5,6,4"``.

    For a digit string without commas the type is inferred: any entry larger
    than the window length forces a signed (type B/C) element.  Pass
    ``signed`` explicitly when the window alone is ambiguous.
    """
    body = text.strip().strip("[]").replace(" ", "")
    values = tuple(int(v) for v in (body.split(",") if "," in body else body))
    if signed is None:
        signed = max(values) > len(values)
    return WeylElt(values, signed)


def _basis_index(vec: Sequence[int], n: int, signed: bool) -> int:
    nz = [(i, v) for i, v in enumerate(vec) if v != 0]
    if len(nz) != 1 or abs(nz[0][1]) != 1:
        raise ValueError(f"{tuple(vec)} is not a signed basis vector")
    i, v = nz[0]
    if v == 1:
        return i + 1
    if not signed:
        raise ValueError("negative basis vector in type A")
    return 2 * n - i


def _basis_vector(k: int, n: int) -> tuple[int, ...]:
    if k <= n:
        return unit(n, k - 1)
    return unit(n, 2 * n - k, -1)


def act(w: WeylElt, lam: Sequence) -> tuple:
    """Left action of ``w`` on a character (or cocharacter) vector."""
    n = w.n
    if len(lam) != n:
        raise ValueError("rank mismatch")
    out = [0] * n
    for i, a in enumerate(lam, start=1):
        k = w(i)
        if k <= n:
            out[k - 1] += a
        else:
            out[2 * n - k] -= a
    return tuple(out)


def reflection(alpha: Root, signed: bool) -> WeylElt:
    """The reflection ``s_alpha`` as a window."""
    n = len(alpha)
    check = coroot(alpha)
    window = []
    for i in range(n):
        image = tuple(e - check[i] * a for e, a in zip(unit(n, i), alpha))
        window.append(_basis_index(image, n, signed))
    return WeylElt(tuple(window), signed)


def length(w: WeylElt) -> int:
    """Number of positive roots sent to negative roots by ``w``."""
    roots = root_system("C" if w.signed else "A", w.n)
    return sum(1 for a in roots.positive if not roots.is_positive(act(w, a)))


# ---------------------------------------------------------------------------
# the whole Weyl group


class WeylGroup:
    """All elements of a classical Weyl group with cached Bruhat data."""

    def __init__(self, root_type: str, n: int):
        self.root_type = root_type
        self.n = n
        self.signed = root_type in "BC"
        self.roots = root_system(root_type, n)
        self.e = identity(n, self.signed)
        self.simple_reflections = tuple(reflection(a, self.signed) for a in self.roots.simple)
        seen = {self.e}
        frontier = [self.e]
        while frontier:
            nxt = []
            for w in frontier:
                for s in self.simple_reflections:
                    v = w * s
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        self._length = {w: length(w) for w in seen}
        self.elements: tuple[WeylElt, ...] = tuple(
            sorted(seen, key=lambda w: (self._length[w], w.window)))
        self.w0 = self.elements[-1]
        self._down: dict[WeylElt, frozenset[WeylElt]] = {}

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, w: object) -> bool:
        return w in self._length

    def length(self, w: WeylElt) -> int:
        return self._length[w]

    def reflection(self, alpha: Root) -> WeylElt:
        if not self.roots.is_root(alpha):
            raise ValueError(f"{alpha} is not a root")
        return reflection(alpha, self.signed)

    def down_set(self, w: WeylElt) -> frozenset[WeylElt]:
        """Bruhat interval ``[e, w]`` by the subword property.

        If ``w = s v`` with ``l(v) < l(w)`` then every subword of ``s`` followed
        by a reduced word of ``v`` is a subword of ``v`` or ``s`` times such a
        subword, hence ``[e, w] = [e, v] | s[e, v]``.
        """
        cached = self._down.get(w)
        if cached is not None:
            return cached
        if w == self.e:
            result = frozenset({w})
        else:
            for s in self.simple_reflections:
                v = s * w
                if self._length[v] < self._length[w]:
                    below = self.down_set(v)
                    result = below | frozenset(s * u for u in below)
                    break
        self._down[w] = result
        return result

    def bruhat_leq(self, u: WeylElt, w: WeylElt) -> bool:
        return u in self.down_set(w)

    def subgroup(self, K: Iterable[Root]) -> tuple[WeylElt, ...]:
        """Elements of the parabolic subgroup ``W_K``."""
        gens = [self.reflection(a) for a in K]
        seen = {self.e}
        frontier = [self.e]
        while frontier:
            nxt = []
            for w in frontier:
                for s in gens:
                    v = w * s
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        return tuple(sorted(seen, key=lambda w: (self._length[w], w.window)))

    def longest(self, K: Iterable[Root]) -> WeylElt:
        return self.subgroup(K)[-1]

    def min_coset_reps(self, K: Iterable[Root], side: str = "left") -> tuple[WeylElt, ...]:
        """``^K W`` (``side="left"``) or ``W^K`` (``side="right"``)."""
        gens = [self.reflection(a) for a in K]
        if side == "left":
            keep = [w for w in self.elements
                    if all(self._length[s * w] > self._length[w] for s in gens)]
        elif side == "right":
            keep = [w for w in self.elements
                    if all(self._length[w * s] > self._length[w] for s in gens)]
        else:
            raise ValueError("side must be 'left' or 'right'")
        return tuple(keep)

    def lower_neighbors(self, w: WeylElt) -> tuple[Root, ...]:
        """``E_w``: positive roots ``alpha`` with ``l(w s_alpha) = l(w) - 1``."""
        target = self._length[w] - 1
        return tuple(sorted((a for a in self.roots.positive
                             if self._length[w * self.reflection(a)] == target), key=root_order_key))


@lru_cache(maxsize=None)
def weyl_group(root_type: str, n: int) -> WeylGroup:
    return WeylGroup(root_type, n)


def longest(group: WeylGroup, K: Iterable[Root]) -> WeylElt:
    """The longest element ``w_{0,K}``."""
    return group.longest(K)


def lower_neighbors(group: WeylGroup, w: WeylElt) -> tuple[Root, ...]:
    return group.lower_neighbors(w)


# ---------------------------------------------------------------------------
# zip data


@dataclass(frozen=True)
class ZipContext:
    """A group family with a cocharacter ``mu`` and a parameter ``q``.

    The derived fields follow the usual zip-datum recipe: ``I`` is the type of
    the Levi subgroup centralising ``mu``, ``z = sigma(w_{0,I}) w_0`` and ``J``
    is characterised by ``z = w_0 w_{0,J}``.
    """

    family: GroupFamily
    mu: tuple[int, ...]
    q: int
    roots: RootSystem = field(repr=False, compare=False)
    W: WeylGroup = field(repr=False, compare=False)
    I: tuple[Root, ...] = field(compare=False)
    J: tuple[Root, ...] = field(compare=False)
    z: WeylElt = field(compare=False)

    @property
    def n(self) -> int:
        return self.family.rank

    @property
    def delta(self) -> tuple[Root, ...]:
        return self.roots.simple

    @property
    def delta_P(self) -> tuple[Root, ...]:
        """Simple roots outside the Levi, ``Delta^P = Delta \\ I``."""
        return tuple(a for a in self.delta if a not in self.I)

    @property
    def w0(self) -> WeylElt:
        return self.W.w0

    @cached_property
    def w0I(self) -> WeylElt:
        return self.W.longest(self.I)

    @cached_property
    def levi_positive(self) -> tuple[Root, ...]:
        """Positive roots of the Levi (combinations of ``I`` only)."""
        WI = self.W.subgroup(self.I)
        found = {self.roots.positive_part(act(w, a)) for w in WI for a in self.I}
        return tuple(a for a in self.roots.positive if a in found)

    @cached_property
    def unipotent_positive(self) -> tuple[Root, ...]:
        """``Phi_+ \\ Phi_{L,+}``."""
        levi = set(self.levi_positive)
        return tuple(a for a in self.roots.positive if a not in levi)

    @cached_property
    def strata(self) -> tuple[WeylElt, ...]:
        """``^I W``, ordered by length then window."""
        return self.W.min_coset_reps(self.I, "left")

    def with_q(self, q: int) -> ZipContext:
        return build_context(self.family, self.mu, q)

    @property
    def lattice_has_det_line(self) -> bool:
        return self.family.root_type == "A"

    def det_weight(self) -> Weight:
        """``lambda_det``: ``(1-q)(1, ..., 1)`` for GL(n), ``(q+1)(1, ..., 1)`` for U(n)."""
        if not self.lattice_has_det_line:
            raise ValueError("no determinant line outside type A")
        c = 1 - self.q if self.family.is_split else self.q + 1
        return (c,) * self.n

    def __str__(self) -> str:
        return f"{self.family.name}, mu={self.mu}, q={self.q}"


def frobenius(ctx: ZipContext, lam: Sequence) -> tuple:
    """Frobenius on characters: trivial when split, ``-w_0`` for U(n)."""
    if ctx.family.is_split:
        return tuple(lam)
    return tuple(-a for a in act(ctx.w0, lam))


def frobenius_inverse(ctx: ZipContext, lam: Sequence) -> tuple:
    # the Frobenius has order at most two on every supported lattice
    return frobenius(ctx, lam)


def frobenius_w(ctx: ZipContext, w: WeylElt) -> WeylElt:
    """Frobenius on the Weyl group: trivial when split, ``w_0 w w_0`` for U(n)."""
    if ctx.family.is_split:
        return w
    return ctx.w0 * w * ctx.w0


def frobenius_root(ctx: ZipContext, alpha: Root) -> Root:
    return frobenius(ctx, alpha)


@lru_cache(maxsize=None)
def _derived(family: GroupFamily, mu: tuple[int, ...]):
    rs = root_system(family.root_type, family.rank)
    W = weyl_group(family.root_type, family.rank)
    I = tuple(a for a in rs.simple if _dot(a, mu) == 0)
    w0I = W.longest(I)
    if family.is_split:
        sigma_w0I = w0I
    else:
        sigma_w0I = W.w0 * w0I * W.w0
    z = sigma_w0I * W.w0
    w0J = W.w0.inverse() * z
    lw = W.length(w0J)
    J = tuple(a for a in rs.simple if W.length(w0J * W.reflection(a)) < lw)
    if W.longest(J) != w0J:
        raise ArithmeticError("w_0^{-1} z is not a longest parabolic element")
    return rs, W, I, J, z


def build_context(family: GroupFamily, mu: Sequence[int], q: int) -> ZipContext:
    """Attach the zip datum of ``(family, mu)`` with parameter ``q``."""
    mu = tuple(int(m) for m in mu)
    if len(mu) != family.rank:
        raise ValueError(f"cocharacter {mu} does not match rank {family.rank}")
    if q < 2:
        raise ValueError("q must be at least 2")
    rs = root_system(family.root_type, family.rank)
    if any(_dot(a, mu) < 0 for a in rs.simple):
        raise ValueError(f"cocharacter {mu} is not dominant")
    rs, W, I, J, z = _derived(family, mu)
    return ZipContext(family, mu, q, rs, W, I, J, z)


def min_coset_reps(ctx: ZipContext, K: Iterable[Root], side: str = "left") -> tuple[WeylElt, ...]:
    return ctx.W.min_coset_reps(K, side)


def orbit_order_leq(ctx: ZipContext, w_low: WeylElt, w_high: WeylElt) -> bool:
    """The closure order on ``^I W``: some ``w1 in W_I`` has
    ``w1 w_low sigma(w1)^{-1} <= w_high`` in the Bruhat order.

    Twisting the upper element instead (``w_low <= w1 w_high sigma(w1)^{-1}``)
    is not antisymmetric on ``^I W`` in these conventions, so the twist acts
    on the lower one.
    """
    strata = set(ctx.strata)
    if w_low not in strata or w_high not in strata:
        raise ValueError("both arguments must lie in ^I W")
    return _orbit_leq_cached(ctx.family, ctx.mu, w_low, w_high)


@lru_cache(maxsize=None)
def _orbit_leq_cached(family: GroupFamily, mu: tuple[int, ...], w_low: WeylElt,
                      w_high: WeylElt) -> bool:
    ctx = build_context(family, mu, 2)
    W = ctx.W
    for w1 in W.subgroup(ctx.I):
        conj = w1 * w_low * frobenius_w(ctx, w1).inverse()
        if W.bruhat_leq(conj, w_high):
            return True
    return False


def closure(ctx: ZipContext, w: WeylElt) -> tuple[WeylElt, ...]:
    """Strata in the closure of the stratum of ``w``."""
    return tuple(v for v in ctx.strata if orbit_order_leq(ctx, v, w))
