from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ahsops.casimir import casimir_eigenvalue
from ahsops.rootsystem import (
    RootSystem,
    SimpleType,
    build,
    dominantize_labels,
    format_rational,
    format_vector,
    inverse_matrix,
    orbit_labels,
)

TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D3", "D4", "D5", "E6", "E7"]


def n_positive(t: str) -> int:
    f, n = t[0], int(t[1:])
    return {"A": n * (n + 1) // 2, "B": n * n, "C": n * n, "D": n * (n - 1), "E": {6: 36, 7: 63}.get(n)}[f]


def highest_root(r: RootSystem):
    return max(r.positive_roots, key=lambda b: r.inner(b, r.rho))


def brute_dimension(r: RootSystem, lam) -> Fraction:
    """Weyl's product taken over positive roots directly in L-coordinates."""
    num = den = Fraction(1)
    for b in r.positive_roots:
        num *= r.inner(lam + r.rho, b)
        den *= r.inner(r.rho, b)
    return num / den


@pytest.mark.parametrize("t", TYPES)
def test_positive_root_count(t):
    assert len(build([t]).positive_roots) == n_positive(t)


@pytest.mark.parametrize("t", TYPES)
def test_cartan_matrix_from_simple_roots(t):
    r = build([t])
    a = r.simple_roots
    for i, j in product(range(r.rank), repeat=2):
        assert r.cartan[i][j] == 2 * r.inner(a[i], a[j]) / r.inner(a[j], a[j])


@pytest.mark.parametrize("t", TYPES)
def test_fundamental_weights_are_dual_to_coroots(t):
    r = build([t])
    for i, p in enumerate(r.fundamental_weights):
        assert p.labels == tuple(Fraction(int(i == j)) for j in range(r.rank))


@pytest.mark.parametrize("t", TYPES)
def test_rho_is_half_sum_of_positive_roots(t):
    r = build([t])
    total = r.zero()
    for b in r.positive_roots:
        total = total + b
    assert r.rho == total * Fraction(1, 2)
    assert r.rho.labels == (1,) * r.rank


@pytest.mark.parametrize("t", ["A3", "B3", "C3", "D4", "E6", "E7"])
def test_adjoint_casimir_is_one_for_the_killing_form(t):
    r = build([t])
    assert casimir_eigenvalue(highest_root(r)) == 1


@pytest.mark.parametrize("t,dim", [("A3", 15), ("B3", 21), ("C3", 21), ("D4", 28), ("E6", 78), ("E7", 133)])
def test_adjoint_dimension(t, dim):
    r = build([t])
    assert r.weyl_dimension(highest_root(r)) == dim == len(r.positive_roots) * 2 + r.rank


@pytest.mark.parametrize("t,i,dim", [
    ("D4", 0, 8), ("D4", 2, 8), ("D4", 3, 8), ("D4", 1, 28),
    ("B3", 0, 7), ("B3", 2, 8), ("C3", 0, 6), ("C3", 1, 14),
    ("E6", 0, 27), ("E7", 6, 56), ("A4", 1, 10),
])
def test_fundamental_dimensions(t, i, dim):
    r = build([t])
    assert r.weyl_dimension(r.fundamental_weights[i]) == dim


@pytest.mark.parametrize("t", ["A3", "B3", "C3", "D4"])
def test_weyl_dimension_against_coordinate_product(t):
    r = build([t])
    for labels in product(range(3), repeat=r.rank):
        lam = r.from_labels(labels)
        assert r.weyl_dimension(lam) == brute_dimension(r, lam)


@pytest.mark.parametrize("t,order", [("A3", 24), ("A4", 120), ("B3", 48), ("C3", 48), ("D4", 192)])
def test_weyl_group_order_from_regular_orbit(t, order):
    r = build([t])
    assert len(r.weyl_orbit(r.rho)) == order


def test_e6_minuscule_orbit_has_27_elements():
    r = build(["E6"])
    assert len(r.weyl_orbit(r.fundamental_weights[0])) == 27


def test_product_system_is_blockwise():
    r = build(["A1", "A2"])
    assert r.rank == 3 and r.dim == 5
    assert r.cartan[0][1:] == (0, 0)
    assert r.weyl_dimension(r.from_labels((1, 1, 0))) == 2 * 3


def test_form_scale_rescales_factors():
    r = build(["A1", "A1"])
    s = r.with_form_scale((2, 3))
    a, b = r.simple_roots
    sa, sb = s.simple_roots
    assert s.inner(sa, sa) == 2 * r.inner(a, a)
    assert s.inner(sb, sb) == 3 * r.inner(b, b)


def test_bad_types_rejected():
    with pytest.raises(ValueError):
        SimpleType("F", 4)
    with pytest.raises(ValueError):
        SimpleType("E", 8)
    with pytest.raises(ValueError):
        SimpleType("A", 0)


def test_basis_is_one_based():
    r = build(["D4"])
    assert r.basis(1).coords[0] == 1
    with pytest.raises(IndexError):
        r.basis(0)
    with pytest.raises(IndexError):
        r.basis(5)


def test_inverse_matrix():
    m = [[2, -1], [-1, 2]]
    inv = inverse_matrix(m)
    assert inv == [[Fraction(2, 3), Fraction(1, 3)], [Fraction(1, 3), Fraction(2, 3)]]


def test_formatting():
    assert format_rational(Fraction(10)) == "10"
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    assert format_vector([1, Fraction(1, 2)]) == "(1, 1/2)"


def test_weyl_dimension_rejects_non_dominant():
    r = build(["A2"])
    with pytest.raises(ValueError):
        r.weyl_dimension(r.from_labels((-1, 0)))


# --- properties -------------------------------------------------------------

type_names = st.sampled_from(["A2", "A3", "B2", "B3", "C3", "D4"])


@st.composite
def weights(draw, lo=-3, hi=3):
    r = build([draw(type_names)])
    labels = draw(st.lists(st.integers(lo, hi), min_size=r.rank, max_size=r.rank))
    return r, r.from_labels(labels)


@settings(max_examples=60, deadline=None)
@given(weights(), st.data())
def test_reflection_is_an_isometric_involution(rw, data):
    r, lam = rw
    i = data.draw(st.integers(0, r.rank - 1))
    mu = r.reflect(lam, i)
    assert r.reflect(mu, i) == lam
    assert mu.norm2() == lam.norm2()


@settings(max_examples=60, deadline=None)
@given(weights())
def test_dominantize_lands_in_the_orbit(rw):
    r, lam = rw
    res = r.dominantize(lam)
    rep = res.representative
    assert rep.is_dominant()
    assert rep.norm2() == lam.norm2()
    assert rep in r.weyl_orbit(lam)
    on_wall = any(c == 0 for c in rep.labels)
    assert res.sign == (0 if on_wall else (-1) ** res.word_length)


@settings(max_examples=40, deadline=None)
@given(weights(0, 2))
def test_orbit_has_a_single_dominant_member(rw):
    r, lam = rw
    orbit = orbit_labels(r.cartan, tuple(int(c) for c in lam.labels))
    assert [x for x in orbit if min(x) >= 0] == [tuple(int(c) for c in lam.labels)]
    assert all(dominantize_labels(r.cartan, x)[0] == tuple(lam.labels) for x in orbit)


@settings(max_examples=40, deadline=None)
@given(weights(0, 3))
def test_dimension_of_dual_module(rw):
    r, lam = rw
    lowest = r.dominantize(-lam).representative
    assert r.weyl_dimension(lowest) == r.weyl_dimension(lam)


@settings(max_examples=60, deadline=None)
@given(weights(), weights())
def test_inner_product_is_symmetric_and_bilinear(a, b):
    r, x = a
    _, y = b
    if y.owner != r:
        y = r.from_labels([c % 2 for c in range(r.rank)])
    assert r.inner(x, y) == r.inner(y, x)
    assert r.inner(x + y, x) == r.inner(x, x) + r.inner(y, x)
    assert r.inner_labels(x.labels, y.labels) == r.inner(x, y)
