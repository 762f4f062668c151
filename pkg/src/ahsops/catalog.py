"""The |1|-graded (AHS) structures: ambient algebra, g0s, g1 weights and the
normalised invariant form with (E, E) = 1.

Every structure carries its ambient root system so that the grading element
and the half-sum Delta of the ambient positive roots are available.  The g1
weight lists are written down explicitly for the classical families and
generated as Weyl orbits for E6 and E7; in all cases they are cross-checked
against the restrictions of the ambient roots of grade one.
"""
from __future__ import annotations

from functools import cached_property, lru_cache

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import CatalogError
from .rootsystem import RootSystem, SimpleType, Weight, inverse_matrix


@dataclass(frozen=True, eq=False)
class AhsStructure:
    name: str
    family: str
    params: tuple[int, ...]
    g0s: RootSystem
    ambient: RootSystem
    crossed: int
    nodes: tuple[int, ...]  # ambient simple-root index of each g0s simple root
    g1_weights: tuple[tuple[Weight, int], ...]
    alpha: Weight
    dim_g1: int
    a1: Fraction
    e_star: Weight  # ambient weight dual to the grading element
    ambient_scale: Fraction  # multiplier turning the ambient Killing dual into the normalised form

    @cached_property
    def alpha_norm2(self) -> Fraction:
        return self.alpha.norm2()

    @property
    def delta(self) -> Weight:
        """Half-sum of the positive roots of the ambient algebra."""
        return self.ambient.rho

    def restrict(self, big: Weight) -> Weight:
        """Restriction of an ambient weight to the Cartan subalgebra of g0s."""
        labels = big.labels
        return self.g0s.from_labels([labels[j] for j in self.nodes])

    def grade(self, big: Weight) -> Fraction:
        """Value on the grading element E (the conformal weight of a highest weight)."""
        return self.ambient.inner(big, self.e_star)

    def lift(self, lam: Weight, w=0) -> Weight:
        """Ambient weight restricting to ``lam`` and taking the value ``w`` on E."""
        amb = self.ambient
        out = amb.zero()
        for c, j in zip(lam.labels, self.nodes):
            if c:
                p = amb.fundamental_weights[j]
                out = out + c * (p - amb.inner(p, self.e_star) * self.e_star)
        return out + Fraction(w) * self.e_star

    def g1_roots(self) -> tuple[Weight, ...]:
        """Ambient positive roots spanning g1 (grade one)."""
        return tuple(b for b in self.ambient.positive_roots if self.grade(b) == 1)

    def g1_weight_set(self) -> frozenset[Weight]:
        return frozenset(w for w, _ in self.g1_weights)

    def __eq__(self, other) -> bool:
        return isinstance(other, AhsStructure) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class SmallnessReport:
    all_multiplicity_one: bool
    min_fundamental_coefficient: Fraction
    theorem: str  # "small" (all >= -1), "almost-small" (isolated -2) or "neither"
    offending_indices: tuple[int, ...] = field(default=())


# ---------------------------------------------------------------------------
# family definitions


@dataclass(frozen=True)
class _Layout:
    ambient: tuple[SimpleType, ...]
    crossed: int
    g0s: tuple[SimpleType, ...]
    nodes: tuple[int, ...]
    g1: Callable[[RootSystem], list[Weight]] | None  # None: Weyl orbit of alpha
    alpha_labels: tuple[int, ...]


def _signed_basis(r: RootSystem, n: int, with_zero: bool) -> list[Weight]:
    out = [s * r.basis(i) for i in range(1, n + 1) for s in (1, -1)]
    if with_zero:
        out.append(r.zero())
    return out


def _pairs(r: RootSystem, n: int, diagonal: bool) -> list[Weight]:
    return [
        r.basis(i) + r.basis(j)
        for i in range(1, n + 1)
        for j in range(i, n + 1)
        if diagonal or i < j
    ]


def _conf_even(n: int) -> _Layout:
    if n < 3:
        raise CatalogError("conf-even needs n >= 3")
    return _Layout(
        (SimpleType("D", n + 1),), 0, (SimpleType("D", n),), tuple(range(1, n + 1)),
        lambda r: _signed_basis(r, n, False), (1,) + (0,) * (n - 1),
    )


def _conf_odd(n: int) -> _Layout:
    if n < 1:
        raise CatalogError("conf-odd needs n >= 1")
    return _Layout(
        (SimpleType("B", n + 1),), 0, (SimpleType("B", n),), tuple(range(1, n + 1)),
        lambda r: _signed_basis(r, n, True), (1,) + (0,) * (n - 1) if n > 1 else (2,),
    )


def _grassmannian(p: int, q: int) -> _Layout:
    if p < 0 or q < 0 or p + q < 1:
        raise CatalogError("grassmannian needs p, q >= 0 with p + q >= 1")
    factors, nodes = [], []
    if p:
        factors.append(SimpleType("A", p))
        nodes.extend(range(p))
    if q:
        factors.append(SimpleType("A", q))
        nodes.extend(range(p + 1, p + q + 1))

    def g1(r: RootSystem) -> list[Weight]:
        # defining rep of the first block tensored with the dual defining rep of the second
        if p and q:
            return [r.basis(i) - r.basis(p + 1 + j) for i in range(1, p + 2) for j in range(1, q + 2)]
        if p:
            return [r.basis(i) for i in range(1, p + 2)]
        return [-r.basis(j) for j in range(1, q + 2)]

    alpha = ((1,) + (0,) * (p - 1) if p else ()) + ((0,) * (q - 1) + (1,) if q else ())
    return _Layout(
        (SimpleType("A", p + q + 1),), p, tuple(factors), tuple(nodes), g1, alpha
    )


def _symplectic(n: int) -> _Layout:
    if n < 2:
        raise CatalogError("symplectic needs n >= 2")
    return _Layout(
        (SimpleType("C", n),), n - 1, (SimpleType("A", n - 1),), tuple(range(n - 1)),
        lambda r: _pairs(r, n, True), (2,) + (0,) * (n - 2),
    )


def _spinorial(n: int) -> _Layout:
    if n < 3:
        raise CatalogError("spinorial needs n >= 3")
    return _Layout(
        (SimpleType("D", n),), n - 1, (SimpleType("A", n - 1),), tuple(range(n - 1)),
        lambda r: _pairs(r, n, False), (0, 1) + (0,) * (n - 3),
    )


def _e6() -> _Layout:
    # g0s = D5 on Bourbaki nodes 6,5,4,3,2 of E6
    return _Layout((SimpleType("E", 6),), 0, (SimpleType("D", 5),), (5, 4, 3, 2, 1), None, (0, 0, 0, 0, 1))


def _e7() -> _Layout:
    return _Layout((SimpleType("E", 7),), 6, (SimpleType("E", 6),), tuple(range(6)), None, (1, 0, 0, 0, 0, 0))


_FAMILIES: dict[str, tuple[int, Callable[..., _Layout]]] = {
    "conf-even": (1, _conf_even),
    "conf-odd": (1, _conf_odd),
    "grassmannian": (2, _grassmannian),
    "symplectic": (1, _symplectic),
    "spinorial": (1, _spinorial),
    "e6": (0, _e6),
    "e7": (0, _e7),
}

FAMILY_NAMES = tuple(_FAMILIES)


def fix_e(ambient: RootSystem, crossed: int, dim_g1: int) -> tuple[Weight, Fraction]:
    """Grading-element dual E* and the rescaling making (E*, E*) = 1.

    Solves (alpha_i, E*) = delta_{i, crossed} over the ambient simple roots in
    the Killing-dual form, then rescales the form by |E*|^2.  For the Killing
    form B(E, E) = 2 dim g1, so the scale must come out as 2 dim g1.
    """
    simple = ambient.simple_roots
    gram = [[ambient.inner(a, b) for b in simple] for a in simple]
    try:
        inv = inverse_matrix(gram)
    except ZeroDivisionError as exc:
        raise CatalogError("singular grading system") from exc
    e_old = ambient.zero()
    for i, a in enumerate(simple):
        e_old = e_old + inv[i][crossed] * a
    scale = ambient.inner(e_old, e_old)
    if scale != 2 * dim_g1:
        raise CatalogError(f"form scale {scale} disagrees with 2 dim g1 = {2 * dim_g1}")
    normed = ambient.with_form_scale([scale])
    e_star = Weight(normed, [c / scale for c in e_old.coords], canonical=True)
    assert normed.inner(e_star, e_star) == 1
    return e_star, scale


def make_structure(family: str, *params: int) -> AhsStructure:
    if family not in _FAMILIES:
        raise CatalogError(f"unknown structure family {family!r}")
    arity, builder = _FAMILIES[family]
    if len(params) != arity:
        raise CatalogError(f"{family} takes {arity} integer parameter(s)")
    layout = builder(*params)
    name = family + (":" + ",".join(str(p) for p in params) if params else "")

    ambient0 = RootSystem(layout.ambient)
    base = RootSystem(layout.g0s)
    sub = tuple(tuple(ambient0.cartan[i][j] for j in layout.nodes) for i in layout.nodes)
    if sub != base.cartan:
        raise CatalogError(f"{name}: g0s Cartan matrix does not match the ambient subdiagram")

    # g1 as the ambient roots whose crossed-node coefficient is 1
    crossed_root = ambient0.simple_roots[layout.crossed]
    coroot_scale = ambient0.inner(crossed_root, crossed_root) / 2
    pi_c = ambient0.fundamental_weights[layout.crossed]
    g1_roots = [
        b for b in ambient0.positive_roots
        if ambient0.inner(b, pi_c) / coroot_scale == 1
    ]
    dim_g1 = len(g1_roots)
    e_star, scale = fix_e(ambient0, layout.crossed, dim_g1)
    ambient = e_star.owner

    # normalised form on each factor of g0s, read off from a root of that factor
    scales = []
    for f in range(len(layout.g0s)):
        i = base._rank_blocks[f][0]
        a_small = base.simple_roots[i]
        a_big = ambient.simple_roots[layout.nodes[i]]
        scales.append(ambient.inner(a_big, a_big) / base.inner(a_small, a_small))
    g0s = base.with_form_scale(scales)

    alpha = g0s.from_labels(layout.alpha_labels)
    listed = layout.g1(g0s) if layout.g1 else sorted(g0s.weyl_orbit(alpha))
    restricted = Counter(g0s.from_labels([b.labels[j] for j in layout.nodes]) for b in g1_roots)
    if Counter(listed) != restricted:
        raise CatalogError(f"{name}: listed g1 weights disagree with the ambient roots")
    if len(listed) != dim_g1:
        raise CatalogError(f"{name}: dim g1 mismatch")
    dominant = [w for w in set(listed) if w.is_dominant()]
    top = max(w.norm2() for w in dominant)
    if [w for w in dominant if w.norm2() == top] != [alpha]:
        raise CatalogError(f"{name}: highest weight of g1 is not {alpha}")
    counts = Counter(listed)
    g1 = tuple((w, counts[w]) for w in sorted(counts))
    a1 = (alpha.norm2() + 1) / 2
    return AhsStructure(
        name=name,
        family=family,
        params=tuple(params),
        g0s=g0s,
        ambient=ambient,
        crossed=layout.crossed,
        nodes=layout.nodes,
        g1_weights=g1,
        alpha=alpha,
        dim_g1=dim_g1,
        a1=a1,
        e_star=e_star,
        ambient_scale=scale,
    )


_CACHE: dict[str, AhsStructure] = {}


def parse_structure(text: str) -> AhsStructure:
    """Look up a structure by name, e.g. ``conf-even:4`` or ``grassmannian:1,2``."""
    key = text.strip().lower()
    if key in _CACHE:
        return _CACHE[key]
    family, _, rest = key.partition(":")
    try:
        params = tuple(int(p) for p in rest.split(",")) if rest else ()
    except ValueError:
        raise CatalogError(f"bad structure parameters in {text!r}") from None
    s = make_structure(family, *params)
    _CACHE[key] = s
    return s


def smallness_check(s: AhsStructure) -> SmallnessReport:
    """Which multiplicity-freeness theorem covers g1 (all coefficients >= -1,
    or the single -2 variant away from the foot of a double arrow)."""
    cartan = s.g0s.cartan
    mult_one = all(m == 1 for _, m in s.g1_weights)
    coeffs = [w.labels for w, _ in s.g1_weights]
    lowest = min(min(c) for c in coeffs)
    if lowest >= -1:
        return SmallnessReport(mult_one, lowest, "small" if mult_one else "neither")
    offending: set[int] = set()
    ok = mult_one and lowest >= -2
    for c in coeffs:
        twos = [i for i, x in enumerate(c) if x == -2]
        if not twos:
            continue
        offending.update(twos)
        if len(twos) > 1:
            ok = False
            continue
        i = twos[0]
        for j, x in enumerate(c):
            if j != i and (x < 0 or cartan[i][j] < -1):
                ok = False
    return SmallnessReport(mult_one, lowest, "almost-small" if ok else "neither", tuple(sorted(offending)))


@lru_cache(maxsize=None)
def extremal_weights(s: AhsStructure) -> frozenset[Weight]:
    """The Weyl orbit of alpha, i.e. the extremal weights of g1."""
    return s.g0s.weyl_orbit(s.alpha)
