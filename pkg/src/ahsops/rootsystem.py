"""Exact root systems and weights for the simple types A, B, C, D, E6, E7 and
finite products of them.

Weights are stored in orthogonal L-coordinates, one block per simple factor.
A_n blocks carry n+1 coordinates and E_n blocks carry the 8 Bourbaki
coordinates; both are canonicalised by orthogonal projection onto the span of
the simple roots, so two weights compare equal exactly when they pair
identically with every coroot.  No floating point is used anywhere.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple[Fraction, ...]

_FAMILIES = ("A", "B", "C", "D", "E")


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.rank < 1:
            raise ValueError("rank must be positive")
        if self.family == "D" and self.rank < 2:
            raise ValueError("type D requires rank >= 2")
        if self.family == "E" and self.rank not in (6, 7):
            raise ValueError("only E6 and E7 are supported")

    @classmethod
    def parse(cls, text: str) -> SimpleType:
        text = text.strip().upper()
        return cls(text[0], int(text[1:]))

    @property
    def dim(self) -> int:
        """Number of ambient L-coordinates carried by this factor."""
        if self.family == "A":
            return self.rank + 1
        if self.family == "E":
            return 8
        return self.rank

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


# ---------------------------------------------------------------------------
# raw per-factor data (plain tuples, cached per simple type)


def _normal(c):
    """Integral values as int (cheap to combine), the rest as Fraction."""
    q = Fraction(c)
    return q.numerator if q.denominator == 1 else q


def _is_int(c) -> bool:
    return isinstance(c, int) or c.denominator == 1


def _dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def _unit(n: int, i: int, c: Fraction | int = 1) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return v


def _simple_roots_raw(t: SimpleType) -> list[Vector]:
    n, d = t.rank, t.dim
    roots: list[list[Fraction]] = []
    if t.family == "E":
        half = Fraction(1, 2)
        roots.append([half, -half, -half, -half, -half, -half, -half, half])
        a2 = _unit(8, 0)
        a2[1] = Fraction(1)
        roots.append(a2)
        a3 = _unit(8, 0, -1)
        a3[1] = Fraction(1)
        roots.append(a3)
        for i in range(1, n - 2):
            r = _unit(8, i, -1)
            r[i + 1] = Fraction(1)
            roots.append(r)
        return [tuple(r) for r in roots]
    for i in range(n - 1):
        r = _unit(d, i)
        r[i + 1] = Fraction(-1)
        roots.append(r)
    if t.family == "A":
        r = _unit(d, n - 1)
        r[n] = Fraction(-1)
        roots.append(r)
    elif t.family == "B":
        roots.append(_unit(d, n - 1))
    elif t.family == "C":
        roots.append(_unit(d, n - 1, 2))
    else:
        r = _unit(d, n - 1)
        r[n - 2] = Fraction(1)
        roots.append(r)
    return [tuple(r) for r in roots]


def inverse_matrix(m: Sequence[Sequence[Fraction | int]]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over the rationals."""
    n = len(m)
    a = [[Fraction(x) for x in row] + _unit(n, i) for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


@dataclass(frozen=True)
class _FactorData:
    simple: tuple[Vector, ...]
    coroots: tuple[Vector, ...]
    cartan: tuple[tuple[int, ...], ...]
    fundamental: tuple[Vector, ...]
    positive: tuple[Vector, ...]
    killing: Fraction  # Killing form on h equals killing * Euclidean
    projects: bool


def _reflect_raw(x: Vector, root: Vector, coroot: Vector) -> Vector:
    c = _dot(x, coroot)
    if c == 0:
        return x
    return tuple(a - c * b for a, b in zip(x, root))


@lru_cache(maxsize=None)
def _factor_data(t: SimpleType) -> _FactorData:
    simple = _simple_roots_raw(t)
    coroots = [tuple(2 * a / _dot(r, r) for a in r) for r in simple]
    n = len(simple)
    cartan = tuple(
        tuple(int(_dot(simple[i], coroots[j])) for j in range(n)) for i in range(n)
    )
    inv = inverse_matrix(cartan)
    fundamental = tuple(
        tuple(
            sum((inv[j][i] * simple[i][c] for i in range(n)), Fraction(0))
            for c in range(t.dim)
        )
        for j in range(n)
    )
    # close the simple roots under simple reflections
    seen = set(simple)
    queue = deque(simple)
    while queue:
        r = queue.popleft()
        for a, ac in zip(simple, coroots):
            s = _reflect_raw(r, a, ac)
            if s not in seen:
                seen.add(s)
                queue.append(s)
    # simple-root coefficient j of a root is 2(beta, pi_j)/(alpha_j, alpha_j)
    norms = [_dot(a, a) for a in simple]

    def positive(r: Vector) -> bool:
        cs = [2 * _dot(r, fundamental[j]) / norms[j] for j in range(n)]
        return all(c >= 0 for c in cs)

    pos = tuple(sorted(r for r in seen if positive(r)))
    v = simple[0]
    killing = 2 * sum((_dot(r, v) ** 2 for r in pos), Fraction(0)) / _dot(v, v)
    return _FactorData(
        simple=tuple(simple),
        coroots=tuple(coroots),
        cartan=cartan,
        fundamental=fundamental,
        positive=pos,
        killing=killing,
        projects=t.family in ("A", "E"),
    )


# ---------------------------------------------------------------------------


class Weight:
    """An exact weight in L-coordinates, owned by a :class:`RootSystem`."""

    __slots__ = ("owner", "coords", "_labels")

    def __init__(self, owner: RootSystem, coords: Iterable, *, canonical: bool = False):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != owner.dim:
            raise ValueError(
                f"weight needs {owner.dim} coordinates, got {len(coords)}"
            )
        if not canonical:
            coords = owner._canonical(coords)
        self.owner = owner
        self.coords = coords
        self._labels: tuple[Fraction | int, ...] | None = None

    @property
    def labels(self) -> tuple[Fraction | int, ...]:
        """Fundamental-weight coefficients <lambda, alpha_i^vee> (exact rationals)."""
        if self._labels is None:
            self._labels = self.owner._labels_of(self.coords)
        return self._labels

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.labels)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.labels)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def inner(self, other: Weight) -> Fraction:
        return self.owner.inner(self, other)

    def norm2(self) -> Fraction:
        return self.owner.inner(self, self)

    def _check(self, other: Weight) -> None:
        if self.owner.factors != other.owner.factors:
            raise ValueError("weights belong to different root systems")

    def _derived(self, coords, labels) -> Weight:
        # labels are linear in the weight, so carry them along when both are known
        w = Weight(self.owner, coords, canonical=True)
        w._labels = labels
        return w

    def __add__(self, other: Weight) -> Weight:
        self._check(other)
        labels = None
        if self._labels is not None and other._labels is not None:
            labels = tuple(a + b for a, b in zip(self._labels, other._labels))
        return self._derived((a + b for a, b in zip(self.coords, other.coords)), labels)

    def __sub__(self, other: Weight) -> Weight:
        self._check(other)
        labels = None
        if self._labels is not None and other._labels is not None:
            labels = tuple(a - b for a, b in zip(self._labels, other._labels))
        return self._derived((a - b for a, b in zip(self.coords, other.coords)), labels)

    def __neg__(self) -> Weight:
        labels = None if self._labels is None else tuple(-a for a in self._labels)
        return self._derived((-a for a in self.coords), labels)

    def __mul__(self, k) -> Weight:
        k = Fraction(k)
        labels = None if self._labels is None else tuple(k * a for a in self._labels)
        return self._derived((k * a for a in self.coords), labels)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Weight):
            return NotImplemented
        return self.coords == other.coords and self.owner.factors == other.owner.factors

    def __hash__(self) -> int:
        return hash(self.coords)

    def __lt__(self, other: Weight) -> bool:
        return self.coords < other.coords

    def __repr__(self) -> str:
        return f"Weight({format_vector(self.coords)})"


@dataclass(frozen=True)
class DominantizationResult:
    representative: Weight
    sign: int
    word_length: int


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_vector(v: Iterable[Fraction]) -> str:
    return "(" + ", ".join(format_rational(Fraction(x)) for x in v) + ")"


class RootSystem:
    """Semisimple root system given as a product of simple factors.

    ``form_scale`` multiplies, factor by factor, the dual of the Killing form;
    the default of 1 gives exactly the Killing-dual form.
    """

    def __init__(self, factors: Sequence[SimpleType], form_scale: Sequence | None = None):
        factors = tuple(factors)
        if not factors:
            raise ValueError("a root system needs at least one factor")
        self.factors = factors
        self._data = [_factor_data(t) for t in factors]
        if form_scale is None:
            form_scale = (1,) * len(factors)
        form_scale = tuple(Fraction(s) for s in form_scale)
        if len(form_scale) != len(factors) or any(s <= 0 for s in form_scale):
            raise ValueError("form_scale needs one positive rational per factor")
        self.form_scale = form_scale
        offsets, ranks = [], []
        pos = r = 0
        for t in factors:
            offsets.append((pos, pos + t.dim))
            ranks.append((r, r + t.rank))
            pos += t.dim
            r += t.rank
        self._blocks = tuple(offsets)
        self._rank_blocks = tuple(ranks)
        self.dim = pos
        self.rank = r
        self._multiplier = tuple(s / d.killing for s, d in zip(form_scale, self._data))
        cartan = [[0] * r for _ in range(r)]
        for (r0, _), d in zip(ranks, self._data):
            for i, row in enumerate(d.cartan):
                for j, a in enumerate(row):
                    cartan[r0 + i][r0 + j] = a
        self.cartan: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in cartan)

    # -- construction helpers -------------------------------------------------

    def with_form_scale(self, form_scale: Sequence) -> RootSystem:
        return RootSystem(self.factors, form_scale)

    def _embed(self, f: int, local: Vector) -> Vector:
        lo, hi = self._blocks[f]
        out = [Fraction(0)] * self.dim
        out[lo:hi] = local
        return tuple(out)

    def _canonical(self, coords: Vector) -> Vector:
        out = list(coords)
        for (lo, hi), d in zip(self._blocks, self._data):
            if not d.projects:
                continue
            block = coords[lo:hi]
            labels = [_dot(block, c) for c in d.coroots]
            out[lo:hi] = [
                sum((l * p[c] for l, p in zip(labels, d.fundamental)), Fraction(0))
                for c in range(hi - lo)
            ]
        return tuple(out)

    def _labels_of(self, coords: Vector) -> tuple[Fraction, ...]:
        out = []
        for (lo, hi), d in zip(self._blocks, self._data):
            block = coords[lo:hi]
            out.extend(_dot(block, c) for c in d.coroots)
        return tuple(out)

    def weight(self, coords: Iterable) -> Weight:
        return Weight(self, coords)

    def zero(self) -> Weight:
        return Weight(self, (0,) * self.dim, canonical=True)

    def basis(self, i: int) -> Weight:
        """The (projected) coordinate vector L_i, 1-based over all blocks."""
        if not 1 <= i <= self.dim:
            raise IndexError(f"L{i} out of range 1..{self.dim}")
        return Weight(self, _unit(self.dim, i - 1))

    def from_labels(self, labels: Sequence) -> Weight:
        if len(labels) != self.rank:
            raise ValueError(f"expected {self.rank} fundamental coefficients")
        acc = [Fraction(0)] * self.dim
        labels = tuple(_normal(l) for l in labels)
        for l, p in zip(labels, self.fundamental_weights):
            if l:
                for c in range(self.dim):
                    acc[c] += l * p.coords[c]
        w = Weight(self, acc, canonical=True)
        w._labels = labels
        return w

    # -- structure data ----------------------------------------------------------

    @cached_property
    def simple_roots(self) -> tuple[Weight, ...]:
        return tuple(
            Weight(self, self._embed(f, a), canonical=True)
            for f, d in enumerate(self._data)
            for a in d.simple
        )

    @cached_property
    def fundamental_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """(pi_i, pi_j) for the fundamental weights."""
        fw = self.fundamental_weights
        return tuple(tuple(self.inner(a, b) for b in fw) for a in fw)

    @cached_property
    def _integer_gram(self) -> tuple[tuple[tuple[int, ...], ...], int]:
        gram = self.fundamental_gram
        den = lcm(*(q.denominator for row in gram for q in row))
        return tuple(tuple(int(q * den) for q in row) for row in gram), den

    def inner_labels(self, x: Sequence, y: Sequence) -> Fraction:
        """The form evaluated on two weights given by their labels."""
        if all(_is_int(c) for c in x) and all(_is_int(c) for c in y):
            gram, den = self._integer_gram
            x, y = [int(c) for c in x], [int(c) for c in y]
            total = 0
            for xi, row in zip(x, gram):
                if xi:
                    total += xi * sum(g * yj for g, yj in zip(row, y) if yj)
            return Fraction(total, den)
        gram = self.fundamental_gram
        total = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                row = gram[i]
                for j, yj in enumerate(y):
                    if yj:
                        total += xi * yj * row[j]
        return total

    @cached_property
    def fundamental_weights(self) -> tuple[Weight, ...]:
        return tuple(
            Weight(self, self._embed(f, p), canonical=True)
            for f, d in enumerate(self._data)
            for p in d.fundamental
        )

    @cached_property
    def rho(self) -> Weight:
        return self.from_labels((1,) * self.rank)

    @cached_property
    def positive_roots(self) -> tuple[Weight, ...]:
        return tuple(
            Weight(self, self._embed(f, r), canonical=True)
            for f, d in enumerate(self._data)
            for r in d.positive
        )

    @cached_property
    def _coroot_coefficients(self) -> tuple[tuple[int, ...], ...]:
        # coefficients of beta^vee in the simple coroots = labels of the fundamental weights against beta^vee
        out = []
        for f, d in enumerate(self._data):
            r0, r1 = self._rank_blocks[f]
            for b in d.positive:
                bb = _dot(b, b)
                row = [0] * self.rank
                for j, p in enumerate(d.fundamental):
                    c = 2 * _dot(p, b) / bb
                    assert c.denominator == 1
                    row[r0 + j] = int(c)
                out.append(tuple(row))
        return tuple(out)

    def factor_of_index(self, i: int) -> int:
        for f, (r0, r1) in enumerate(self._rank_blocks):
            if r0 <= i < r1:
                return f
        raise IndexError(i)

    # -- operations ----------------------------------------------------------------

    def _own(self, w: Weight) -> None:
        if w.owner.factors != self.factors:
            raise ValueError("weight does not belong to this root system")

    def inner(self, lam: Weight, mu: Weight) -> Fraction:
        """Invariant form on weights: blockwise form_scale times the Killing dual."""
        self._own(lam)
        self._own(mu)
        total = Fraction(0)
        for (lo, hi), m in zip(self._blocks, self._multiplier):
            total += m * _dot(lam.coords[lo:hi], mu.coords[lo:hi])
        return total

    def coeff(self, lam: Weight, i: int) -> Fraction:
        if not 0 <= i < self.rank:
            raise IndexError(f"simple root index {i} out of range")
        self._own(lam)
        return lam.labels[i]

    def reflect(self, lam: Weight, i: int) -> Weight:
        return self.from_labels(reflect_labels(self.cartan, lam.labels, i))

    def dominantize(self, xi: Weight) -> DominantizationResult:
        """Dominant representative of the Weyl orbit of ``xi`` with the sign t(xi).

        The sign is 0 when the representative lies on a wall of the chamber.
        """
        self._own(xi)
        labels, length = dominantize_labels(self.cartan, xi.labels)
        sign = 0 if any(c == 0 for c in labels) else (-1) ** length
        return DominantizationResult(self.from_labels(labels), sign, length)

    def weyl_dimension(self, lam: Weight) -> int:
        self._own(lam)
        return weyl_dimension_labels(self._coroot_coefficients, lam.labels)

    def weyl_orbit(self, lam: Weight) -> frozenset[Weight]:
        self._own(lam)
        return frozenset(self.from_labels(l) for l in orbit_labels(self.cartan, lam.labels))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RootSystem):
            return NotImplemented
        return self.factors == other.factors and self.form_scale == other.form_scale

    def __hash__(self) -> int:
        return hash((self.factors, self.form_scale))

    def __repr__(self) -> str:
        return "RootSystem(" + " x ".join(str(t) for t in self.factors) + ")"


def build(factors: Sequence[SimpleType | str]) -> RootSystem:
    """Root system for a product of simple types, e.g. ``build(["A2", "A1"])``."""
    return RootSystem([t if isinstance(t, SimpleType) else SimpleType.parse(t) for t in factors])


# ---------------------------------------------------------------------------
# label-space kernels; labels may be ints or Fractions


def reflect_labels(cartan, labels: Sequence, i: int) -> tuple:
    c = labels[i]
    if not c:
        return tuple(labels)
    row = cartan[i]
    return tuple(x - c * a for x, a in zip(labels, row))


def dominantize_labels(cartan, labels: Sequence) -> tuple[tuple, int]:
    """Reflect at the first negative coefficient until dominant."""
    x = list(labels)
    n = len(x)
    length = 0
    while True:
        for i in range(n):
            if x[i] < 0:
                break
        else:
            return tuple(x), length
        c = x[i]
        row = cartan[i]
        for j in range(n):
            if row[j]:
                x[j] -= c * row[j]
        length += 1


def orbit_labels(cartan, labels: Sequence) -> set[tuple]:
    start = tuple(labels)
    seen = {start}
    queue = deque([start])
    n = len(start)
    while queue:
        x = queue.popleft()
        for i in range(n):
            if x[i]:
                y = reflect_labels(cartan, x, i)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return seen


def weyl_dimension_labels(coroot_coefficients, labels: Sequence) -> int:
    if any(c < 0 for c in labels):
        raise ValueError("Weyl dimension formula needs a dominant weight")
    if any(Fraction(c).denominator != 1 for c in labels):
        raise ValueError("Weyl dimension formula needs an integral weight")
    labels = [int(c) for c in labels]
    num = den = 1
    for row in coroot_coefficients:
        num *= sum(n * (l + 1) for n, l in zip(row, labels) if n)
        den *= sum(n for n in row if n)
    q, r = divmod(num, den)
    assert r == 0
    return q
