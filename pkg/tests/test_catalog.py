from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ahsops.casimir import a_constants
from ahsops.catalog import (
    FAMILY_NAMES,
    extremal_weights,
    fix_e,
    make_structure,
    parse_structure,
    smallness_check,
)
from ahsops.errors import CatalogError
from ahsops.rootsystem import RootSystem

# (name, dim g1, theorem); dimensions are the standard ones of each geometry
CASES = [
    ("conf-even:3", 6, "small"),
    ("conf-even:4", 8, "small"),
    ("conf-even:5", 10, "small"),
    ("conf-odd:1", 3, "almost-small"),
    ("conf-odd:2", 5, "almost-small"),
    ("conf-odd:3", 7, "almost-small"),
    ("grassmannian:0,3", 4, "small"),
    ("grassmannian:1,1", 4, "small"),
    ("grassmannian:1,2", 6, "small"),
    ("grassmannian:2,2", 9, "small"),
    ("symplectic:2", 3, "almost-small"),
    ("symplectic:3", 6, "almost-small"),
    ("symplectic:4", 10, "almost-small"),
    ("spinorial:3", 3, "small"),
    ("spinorial:4", 6, "small"),
    ("spinorial:5", 10, "small"),
    ("e6", 16, "small"),
    ("e7", 27, "small"),
]
NAMES = [c[0] for c in CASES]


@pytest.mark.parametrize("name,dim,_", CASES)
def test_dimension_of_g1(name, dim, _):
    s = parse_structure(name)
    assert s.dim_g1 == dim
    assert sum(m for _, m in s.g1_weights) == dim
    assert len(s.g1_roots()) == dim


@pytest.mark.parametrize("name,_,theorem", CASES)
def test_smallness_theorem(name, _, theorem):
    rep = smallness_check(parse_structure(name))
    assert rep.all_multiplicity_one
    assert rep.theorem == theorem
    assert rep.min_fundamental_coefficient >= -2


@pytest.mark.parametrize("name", NAMES)
def test_ambient_roots_are_graded_by_e(name):
    s = parse_structure(name)
    grades = {s.grade(b) for b in s.ambient.positive_roots}
    assert grades == {0, 1}
    g1 = [b for b in s.ambient.positive_roots if s.grade(b) == 1]
    assert len(g1) == s.dim_g1
    assert sorted(s.restrict(b).coords for b in g1) == sorted(b.coords for b in (s.restrict(x) for x in s.g1_roots()))


@pytest.mark.parametrize("name", NAMES)
def test_alpha_is_the_highest_weight_of_g1(name):
    s = parse_structure(name)
    assert s.alpha in s.g1_weight_set()
    assert s.alpha.is_dominant()
    assert all(w.norm2() <= s.alpha.norm2() for w, _ in s.g1_weights)
    assert s.alpha_norm2 == s.alpha.norm2()


@pytest.mark.parametrize("name", NAMES)
def test_a1_closed_form_agrees_with_klimyk(name):
    s = parse_structure(name)
    assert s.a1 == (s.alpha_norm2 + 1) / 2
    top, value = a_constants(s)[0]
    assert top == 2 * s.alpha and value == s.a1


@pytest.mark.parametrize("name", ["conf-even:3", "conf-even:4", "conf-even:6", "conf-odd:1", "conf-odd:2", "conf-odd:5"])
def test_conformal_families_have_unit_a1(name):
    assert parse_structure(name).a1 == 1


@pytest.mark.parametrize("name,a1", [
    ("grassmannian:1,2", Fraction(6, 5)),
    ("grassmannian:0,3", Fraction(4, 5)),
    ("grassmannian:2,0", Fraction(3, 4)),
    ("symplectic:3", Fraction(3, 2)),
    ("spinorial:5", Fraction(5, 4)),
    ("e6", Fraction(4, 3)),
    ("e7", Fraction(3, 2)),
])
def test_a1_values(name, a1):
    assert parse_structure(name).a1 == a1


@pytest.mark.parametrize("name", NAMES)
def test_e_star_normalisation(name):
    s = parse_structure(name)
    e, scale = fix_e(RootSystem(s.ambient.factors), s.crossed, s.dim_g1)
    assert scale == 2 * s.dim_g1 == s.ambient_scale
    assert e == s.e_star
    assert s.ambient.inner(e, e) == 1
    assert all(s.ambient.inner(a, e) == (i == s.crossed) for i, a in enumerate(s.ambient.simple_roots))


@pytest.mark.parametrize("name", NAMES)
def test_lift_and_restrict_round_trip(name):
    s = parse_structure(name)
    lam = s.g0s.from_labels([1] * s.g0s.rank)
    for w in (0, Fraction(-3, 2), 4):
        big = s.lift(lam, w)
        assert s.restrict(big) == lam
        assert s.grade(big) == w


@pytest.mark.parametrize("name", NAMES)
def test_extremal_weights_form_the_orbit_of_alpha(name):
    s = parse_structure(name)
    ext = extremal_weights(s)
    assert s.alpha in ext
    assert ext <= s.g1_weight_set()
    assert all(w.norm2() == s.alpha_norm2 for w in ext)


def test_conf_odd_has_zero_weight_and_it_is_not_extremal():
    s = parse_structure("conf-odd:3")
    zero = s.g0s.zero()
    assert zero in s.g1_weight_set()
    assert zero not in extremal_weights(s)


def test_structure_names_and_equality():
    assert parse_structure("grassmannian:1,2") is parse_structure(" grassmannian:1,2 ")
    assert make_structure("conf-even", 4) == parse_structure("conf-even:4")
    assert str(parse_structure("e6")) == "e6"
    assert set(FAMILY_NAMES) >= {"conf-even", "conf-odd", "grassmannian", "symplectic", "spinorial", "e6", "e7"}


@pytest.mark.parametrize("bad", ["", "conf-even", "conf-even:2", "conf-odd:0", "symplectic:1", "spinorial:2",
                                 "grassmannian:0,0", "grassmannian:1", "e8", "conf-even:x", "projective:2"])
def test_bad_names_rejected(bad):
    with pytest.raises(CatalogError):
        parse_structure(bad)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4))
def test_grassmannian_g1_is_the_outer_product(p, q):
    if p + q == 0:
        return
    s = make_structure("grassmannian", p, q)
    assert s.dim_g1 == (p + 1) * (q + 1)
    assert s.g0s.rank == p + q
