"""Casimir eigenvalues and the constants built from them: c_{lambda mu}, the
A_i of g1 x g1, the ladder c_j along lambda + j theta, the invariant conformal
weight, and the data (lambda, theta, k, w) of a standard operator read off
from an ambient root.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .catalog import AhsStructure, extremal_weights
from .decomp import check_direction, decompose_g1_tensor
from .errors import (
    DecompositionError,
    ExceptionalOperatorError,
    NonExtremalDirectionError,
    OperatorDataError,
)
from .rootsystem import Weight


def _casimir_labels(r, x: tuple) -> Fraction:
    return r.inner_labels(x, tuple(c + 2 for c in x))


def casimir_eigenvalue(lam: Weight) -> Fraction:
    """(lam, lam + 2 rho) in the form of the owning root system."""
    return _casimir_labels(lam.owner, lam.labels)


def c_constant(s: AhsStructure, lam: Weight, mu: Weight) -> Fraction:
    """Constant c with Phi = w - c on the mu-component of g1 x V_lam."""
    return -(casimir_eigenvalue(mu) - casimir_eigenvalue(lam) - casimir_eigenvalue(s.alpha)) / 2


def a_constants(s: AhsStructure) -> list[tuple[Weight, Fraction]]:
    """A_i = -(c_{alpha, alpha_i} - 1)/2 for every component alpha_i of g1 x g1,
    with the Cartan square 2 alpha first."""
    top = 2 * s.alpha
    comps = sorted(decompose_g1_tensor(s, s.alpha).components, key=lambda mu: (mu != top, -casimir_eigenvalue(mu)))
    out = [(mu, -(c_constant(s, s.alpha, mu) - 1) / 2) for mu in comps]
    if out[0][0] != top or out[0][1] != s.a1:
        raise DecompositionError(f"{s.name}: Cartan-square constant disagrees with (|alpha|^2 + 1)/2")
    return out


@dataclass(frozen=True)
class CLadder:
    lam: Weight
    theta: Weight
    values: tuple[Fraction, ...]  # c_0, ..., c_{k-1}
    alpha_norm2: Fraction


def ladder_start(s: AhsStructure, lam: Weight, theta: Weight) -> Fraction:
    """c_0 = (alpha, rho) - (theta, lam + rho)."""
    r = s.g0s
    return r.inner_labels(s.alpha.labels, (1,) * r.rank) - r.inner_labels(theta.labels, [c + 1 for c in lam.labels])


def c_ladder(s: AhsStructure, lam: Weight, theta: Weight, k: int) -> CLadder:
    check_direction(s, lam, theta, k)
    r = s.g0s
    # Casimir values along lam + j theta, straight on the labels
    cas = [
        _casimir_labels(r, tuple(a + j * b for a, b in zip(lam.labels, theta.labels)))
        for j in range(k + 1)
    ]
    ca = casimir_eigenvalue(s.alpha)
    values = tuple(-(cas[j + 1] - cas[j] - ca) / 2 for j in range(k))
    a2 = s.alpha_norm2
    c0 = ladder_start(s, lam, theta)
    if values[0] != c0:
        raise DecompositionError("c_0 disagrees with its closed form")
    if any(b - a != -a2 for a, b in zip(values, values[1:])):
        raise DecompositionError("ladder steps differ from -|alpha|^2")
    if sum(values) != k * (c0 - Fraction(k - 1, 2) * a2):
        raise DecompositionError("ladder sum identity fails")
    return CLadder(lam, theta, values, a2)


def conformal_weight(s: AhsStructure, lam: Weight, theta: Weight, k: int) -> Fraction:
    """The unique conformal weight w making D(lam, theta, k) invariant.

    Evaluated in closed form and again from k w + k(k-1)/2 = sum of the
    ladder; the two must agree.
    """
    ladder = c_ladder(s, lam, theta, k)
    r = s.g0s
    ones = (1,) * r.rank
    w = (
        r.inner_labels([a - t for a, t in zip(s.alpha.labels, theta.labels)], ones)
        - Fraction(k - 1, 2) * (s.alpha_norm2 + 1)
        - r.inner_labels(theta.labels, lam.labels)
    )
    if w != (sum(ladder.values) - Fraction(k * (k - 1), 2)) / k:
        raise DecompositionError("conformal weight: closed form and ladder equation disagree")
    return w


@dataclass(frozen=True)
class OperatorData:
    structure: AhsStructure
    lam: Weight
    theta: Weight
    k: int
    w: Fraction
    mu: Weight  # lam + k theta

    @property
    def c_tilde0(self) -> Fraction:
        return ladder_start(self.structure, self.lam, self.theta)


def operator_data(s: AhsStructure, lam: Weight, theta: Weight, k: int) -> OperatorData:
    """Data of D(lam, theta, k) from a direct (lam, theta, k) triple."""
    w = conformal_weight(s, lam, theta, k)
    return OperatorData(s, lam, theta, k, w, lam + k * theta)


def opposite_delta(s: AhsStructure) -> Weight:
    """Half-sum of the positive roots of g0s together with the roots of g_{-1}.

    This is the ambient rho with its component along E* reversed.
    """
    amb = s.ambient
    delta = amb.rho
    return delta - 2 * amb.inner(delta, s.e_star) * s.e_star


def standard_operator_data(s: AhsStructure, lam: Weight, w, big_theta: Weight) -> OperatorData:
    """Parameters of the standard operator leaving V_lam(w) in direction of the
    ambient positive root ``big_theta``.

    With Lambda the ambient weight of V_lam(w), the target is Lambda + k Theta
    where Lambda + k Theta + Delta' is the reflection of Lambda + Delta' in
    Theta and Delta' is the half-sum for the positive system g0+ and g_{-1};
    this is the choice under which conformal weights grow along the operator.
    """
    amb = s.ambient
    w = Fraction(w)
    if big_theta not in amb.positive_roots:
        raise OperatorDataError(f"{big_theta} is not a positive root of the ambient algebra")
    grade = s.grade(big_theta)
    if grade == 0:
        raise OperatorDataError("the root lies in g0, so it vanishes on E and raises no conformal weight")
    theta = s.restrict(big_theta)
    if theta.is_zero():
        raise ExceptionalOperatorError("direction is the zero weight of g1: exceptional operator")
    if theta not in extremal_weights(s):
        raise NonExtremalDirectionError(f"{theta} is a g1 weight outside the orbit of the highest weight")
    if not (lam.is_dominant() and lam.is_integral()):
        raise OperatorDataError("lambda must be dominant integral")
    big_lam = s.lift(lam, w)
    shifted = big_lam + opposite_delta(s)
    k = -2 * amb.inner(shifted, big_theta) / amb.inner(big_theta, big_theta)
    if k.denominator != 1 or k <= 0:
        raise OperatorDataError(f"k = {k} is not a positive integer")
    k = int(k)
    target = big_lam + k * big_theta
    mu = s.restrict(target)
    if mu != lam + k * theta:
        raise OperatorDataError("restriction of the target disagrees with lambda + k theta")
    try:
        expected = conformal_weight(s, lam, theta, k)
    except DecompositionError as exc:
        raise OperatorDataError(str(exc)) from exc
    if expected != w or s.grade(target) != w + k:
        raise OperatorDataError(f"conformal weight {w} does not match the invariant value {expected}")
    return OperatorData(s, lam, theta, k, w, mu)
