"""Weight systems, Klimyk decompositions and chains of g1-decompositions.

All heavy lifting happens on fundamental-weight labels: a Weyl reflection is
then a row operation with the Cartan matrix and rho is the all-ones vector.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .catalog import AhsStructure, extremal_weights, smallness_check
from .errors import DecompositionError, DimensionCapError
from .rootsystem import (
    RootSystem,
    Weight,
    dominantize_labels,
    orbit_labels,
    reflect_labels,
    weyl_dimension_labels,
)

DEFAULT_DIMENSION_CAP = 20000

Labels = tuple


@dataclass(frozen=True)
class FormalDecomposition:
    """Dominant highest weights with their multiplicities (all positive)."""

    components: dict[Weight, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.components)

    def __contains__(self, lam: Weight) -> bool:
        return lam in self.components

    def multiplicity(self, lam: Weight) -> int:
        return self.components.get(lam, 0)

    def items(self) -> list[tuple[Weight, int]]:
        """Components ordered by their fundamental coefficients, highest first."""
        return sorted(self.components.items(), key=lambda kv: kv[0].labels, reverse=True)

    def is_multiplicity_free(self) -> bool:
        return all(m == 1 for m in self.components.values())

    def total_dimension(self) -> int:
        return sum(m * lam.owner.weyl_dimension(lam) for lam, m in self.components.items())


@dataclass(frozen=True)
class Chain:
    """(lambda_k, ..., lambda_1, lambda_0), each step a g1-component of the next."""

    weights: tuple[Weight, ...]

    @property
    def order(self) -> int:
        return len(self.weights) - 1

    @property
    def start(self) -> Weight:
        return self.weights[-1]

    @property
    def end(self) -> Weight:
        return self.weights[0]


# ---------------------------------------------------------------------------
# weight systems (Freudenthal)


def _form(gram, x: Sequence, y: Sequence) -> Fraction:
    total = Fraction(0)
    for i, xi in enumerate(x):
        if xi:
            row = gram[i]
            for j, yj in enumerate(y):
                if yj:
                    total += xi * yj * row[j]
    return total


@lru_cache(maxsize=None)
def _dominant_multiplicities(r: RootSystem, top: Labels) -> dict[Labels, int]:
    cartan = r.cartan
    gram = r.fundamental_gram
    roots = [tuple(int(c) for c in b.labels) for b in r.positive_roots]
    # dominant weights of V_top: close {top} under subtracting positive roots, staying dominant
    found = {top}
    stack = [top]
    while stack:
        x = stack.pop()
        for b in roots:
            y = tuple(a - c for a, c in zip(x, b))
            if y not in found and all(c >= 0 for c in y):
                found.add(y)
                stack.append(y)

    def shifted_norm(x: Labels) -> Fraction:
        z = [c + 1 for c in x]
        return _form(gram, z, z)

    top_norm = shifted_norm(top)
    mult: dict[Labels, int] = {}
    for nu in sorted(found, key=shifted_norm, reverse=True):
        if nu == top:
            mult[nu] = 1
            continue
        total = Fraction(0)
        for b in roots:
            j = 1
            while True:
                x = tuple(a + j * c for a, c in zip(nu, b))
                rep, _ = dominantize_labels(cartan, x)
                m = mult.get(rep, 0) if rep in found else 0
                if not m:
                    break
                total += m * _form(gram, x, b)
                j += 1
        gap = top_norm - shifted_norm(nu)
        value = 2 * total / gap
        if value.denominator != 1:
            raise DecompositionError(f"non-integral multiplicity at {nu}")
        mult[nu] = int(value)
    return {nu: m for nu, m in mult.items() if m}


def weight_system(mu: Weight, cap: int = DEFAULT_DIMENSION_CAP) -> list[tuple[Weight, int]]:
    """All weights of the irreducible module with highest weight ``mu``, with
    multiplicities, from Freudenthal's recursion."""
    r = mu.owner
    if not (mu.is_dominant() and mu.is_integral()):
        raise DecompositionError("highest weight must be dominant and integral")
    dim = r.weyl_dimension(mu)
    if dim > cap:
        raise DimensionCapError(f"representation of dimension {dim} exceeds the cap {cap}")
    top = tuple(int(c) for c in mu.labels)
    out = []
    for nu, m in _dominant_multiplicities(r, top).items():
        for x in orbit_labels(r.cartan, nu):
            out.append((r.from_labels(x), m))
    out.sort(key=lambda wm: wm[0].labels, reverse=True)
    assert sum(m for _, m in out) == dim
    return out


# ---------------------------------------------------------------------------
# Klimyk


def klimyk_labels(r: RootSystem, lam: Labels, weights: Iterable[tuple[Labels, int]]) -> Counter:
    """Signed formal sum of Klimyk's algorithm on labels; zeros pruned at the end."""
    acc: Counter = Counter()
    cartan = r.cartan
    for nu, m in weights:
        x = tuple(a + b + 1 for a, b in zip(lam, nu))
        rep, length = dominantize_labels(cartan, x)
        if any(c == 0 for c in rep):
            continue
        acc[tuple(c - 1 for c in rep)] += -m if length % 2 else m
    out = Counter({k: v for k, v in acc.items() if v})
    if any(v < 0 for v in out.values()):
        raise DecompositionError("negative multiplicity in a Klimyk decomposition")
    return out


def klimyk(lam: Weight, mu_weights: Sequence[tuple[Weight, int]]) -> FormalDecomposition:
    """Decompose V_lam tensor V, where V has the given weights with multiplicities."""
    r = lam.owner
    if not (lam.is_dominant() and lam.is_integral()):
        raise DecompositionError("lambda must be dominant and integral")
    counts = klimyk_labels(r, _ints(lam.labels), ((_ints(nu.labels), m) for nu, m in mu_weights))
    return FormalDecomposition({r.from_labels(k): v for k, v in counts.items()})


# ---------------------------------------------------------------------------
# g1 tensor products


def _ints(labels) -> Labels:
    return tuple(int(c) for c in labels)


@lru_cache(maxsize=None)
def _g1_labels(s: AhsStructure) -> tuple[tuple[Labels, int], ...]:
    return tuple((_ints(w.labels), m) for w, m in s.g1_weights)


@lru_cache(maxsize=65536)
def _g1_components(s: AhsStructure, lam: Labels) -> frozenset[Labels]:
    counts = klimyk_labels(s.g0s, lam, _g1_labels(s))
    bad = [k for k, v in counts.items() if v != 1]
    if bad:
        raise DecompositionError(f"{s.name}: multiplicity above one in g1 x V_{lam}")
    comps = frozenset(counts)
    if smallness_check(s).theorem == "small":
        expected = frozenset(
            t for t in (tuple(a + b for a, b in zip(lam, nu)) for nu, _ in _g1_labels(s))
            if all(c >= 0 for c in t)
        )
        if comps != expected:
            raise DecompositionError(f"{s.name}: components differ from the dominant lambda + nu")
    return comps


def _dominant_labels(lam: Weight) -> Labels:
    if not (lam.is_dominant() and lam.is_integral()):
        raise DecompositionError(f"{lam} is not dominant integral")
    return _ints(lam.labels)


def decompose_g1_tensor(s: AhsStructure, lam: Weight) -> FormalDecomposition:
    """g1 tensor V_lam; verified multiplicity free."""
    comps = _g1_components(s, _dominant_labels(lam))
    return FormalDecomposition({s.g0s.from_labels(c): 1 for c in comps})


def iterated_decomposition(s: AhsStructure, lam: Weight, k: int) -> Counter:
    """Terminal weights of all chains of length ``k`` starting at ``lam``,
    counted with the number of chains reaching them."""
    layer = Counter({_dominant_labels(lam): 1})
    for _ in range(k):
        nxt: Counter = Counter()
        for x, n in layer.items():
            for y in _g1_components(s, x):
                nxt[y] += n
        layer = nxt
    return Counter({s.g0s.from_labels(x): n for x, n in layer.items()})


def check_direction(s: AhsStructure, lam: Weight, theta: Weight, k: int) -> None:
    """Preconditions shared by every (lambda, theta, k) operation."""
    if k < 1:
        raise DecompositionError("the order k must be a positive integer")
    if theta not in extremal_weights(s):
        raise DecompositionError(f"{theta} is not an extremal weight of g1")
    for j in range(k + 1):
        step = [a + j * b for a, b in zip(lam.labels, theta.labels)]
        if any(c < 0 or c.denominator != 1 for c in step):
            raise DecompositionError(f"lambda + {j} theta is not dominant integral")


def unique_directed_component(s: AhsStructure, lam: Weight, theta: Weight, k: int) -> Chain:
    """The chain (lam + k theta, ..., lam + theta, lam), each link checked."""
    check_direction(s, lam, theta, k)
    steps = [lam + j * theta for j in range(k + 1)]
    for a, b in zip(steps, steps[1:]):
        if b not in decompose_g1_tensor(s, a):
            raise DecompositionError(f"{b} does not occur in g1 x V_{a}")
    return Chain(tuple(reversed(steps)))


def prv_witness(lam: Weight, mu: Weight, word: Sequence[int], cap: int = DEFAULT_DIMENSION_CAP) -> bool:
    """Does V_{dominant(lam + w mu)} occur in V_lam x V_mu?  ``word`` lists
    simple reflections (0-based), applied right to left."""
    r = lam.owner
    x = tuple(mu.labels)
    for i in reversed(word):
        x = reflect_labels(r.cartan, x, i)
    target, _ = dominantize_labels(r.cartan, tuple(a + b for a, b in zip(lam.labels, x)))
    return klimyk(lam, weight_system(mu, cap)).multiplicity(r.from_labels(target)) >= 1


def dimension_conserved(lam: Weight, mu_weights: Sequence[tuple[Weight, int]], dec: FormalDecomposition) -> bool:
    r = lam.owner
    left = weyl_dimension_labels(r._coroot_coefficients, lam.labels) * sum(m for _, m in mu_weights)
    return left == dec.total_dimension()
