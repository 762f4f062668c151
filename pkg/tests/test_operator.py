from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ahsops.casimir import operator_data
from ahsops.catalog import parse_structure
from ahsops.coeffs import CoeffParams, MultiIndex
from ahsops.errors import CoefficientError
from ahsops.operator import (
    audit_params,
    build_formula,
    enumerate_terms,
    formula_from_params,
    obstruction_audit,
    parse_json,
    render,
    universal_formula,
)

M = MultiIndex.parse


@lru_cache(maxsize=None)
def partitions_with_parts_at_least_two(n: int, smallest: int = 2) -> int:
    if n == 0:
        return 1
    return sum(partitions_with_parts_at_least_two(n - p, p) for p in range(smallest, n + 1))


@pytest.mark.parametrize("k", range(1, 13))
def test_term_count_matches_partition_count(k):
    # a factor nabla^m Gamma-tilde carries order m + 2, and the rest goes to nabla^i t
    expected = sum(partitions_with_parts_at_least_two(o) for o in range(k + 1))
    assert len(enumerate_terms(k)) == expected


@pytest.mark.parametrize("k,count", [(2, 2), (3, 3), (4, 5), (5, 7), (7, 15)])
def test_term_counts_of_the_displayed_formulas(k, count):
    assert len(universal_formula(k).terms) == count


def test_terms_are_ordered_by_derivatives_of_t():
    terms = enumerate_terms(5)
    assert [i for _, _, i in terms] == sorted((i for _, _, i in terms), reverse=True)
    assert terms[0] == (0, MultiIndex(), 5)


def test_order_six_has_eleven_nonzero_terms():
    f = universal_formula(6)
    assert len(enumerate_terms(6)) == 11
    assert len(f.terms) == 11 and f.dropped == 0
    assert all(c > 0 for c in f.coefficients())


@pytest.mark.parametrize("k,shape,i,c", [
    (2, "1", 0, 1),
    (3, "1", 1, 4), (3, "01", 0, 2),
    (4, "1", 2, 10), (4, "01", 1, 10), (4, "2", 0, 9), (4, "001", 0, 3),
    (5, "1", 3, 20), (5, "01", 2, 30), (5, "2", 1, 64), (5, "001", 1, 18), (5, "0001", 0, 4), (5, "11", 0, 64),
])
def test_low_order_coefficients(k, shape, i, c):
    assert universal_formula(k).by_shape()[(M(shape), i)] == c


def test_order_two_plain_rendering():
    assert render(universal_formula(2)) == "∇^2 t + 1·Γ̃ t"


def test_order_three_renderings():
    f = universal_formula(3)
    assert render(f) == "∇^3 t + 4·Γ̃ ∇ t + 2·(∇Γ̃) t"
    assert render(f, "latex") == r"\nabla^{3} t + 4\,\tilde\Gamma \otimes \nabla t + 2\,(\nabla\tilde\Gamma) \otimes t"


def test_render_rejects_unknown_format():
    with pytest.raises(ValueError):
        render(universal_formula(2), "xml")


@pytest.mark.parametrize("name", ["conf-even:4", "grassmannian:1,2", "symplectic:3", "e6"])
def test_structure_formula_matches_universal(name):
    s = parse_structure(name)
    lam = s.g0s.from_labels([1] * s.g0s.rank)
    for k in range(1, 6):
        f = build_formula(operator_data(s, lam, s.alpha, k))
        assert f.coefficients() == universal_formula(k).coefficients()
        assert [t.shape for t in f.terms] == [t.shape for t in universal_formula(k).terms]


def test_gamma_convention_restores_powers_of_a1():
    s = parse_structure("symplectic:3")
    f = build_formula(operator_data(s, s.g0s.zero(), s.alpha, 4))
    assert f.in_gamma(s.a1) == tuple(
        t.coefficient * s.a1 ** t.s.size for t in f.terms
    )
    in_gamma = dict(zip(((t.s, t.i) for t in f.terms), f.in_gamma(s.a1)))
    assert in_gamma[(M("2"), 0)] == 9 * Fraction(3, 2) ** 2
    assert in_gamma[(M("001"), 0)] == 3 * Fraction(3, 2)


def test_json_round_trip():
    s = parse_structure("grassmannian:1,2")
    f = build_formula(operator_data(s, s.g0s.from_labels((1, 0, 1)), s.alpha, 5))
    text = render(f, "json")
    obj = json.loads(text)
    assert obj["k"] == 5 and obj["structure"] == "grassmannian:1,2"
    assert obj["terms"][0] == {"s": [0], "i": 5, "coeff": "1"}
    back = parse_json(text)
    assert back.coefficients() == f.coefficients()
    assert [t.shape for t in back.terms] == [t.shape for t in f.terms]
    assert back.data.w == f.data.w


def test_formula_requires_the_invariant_weight():
    with pytest.raises(CoefficientError):
        formula_from_params(3, CoeffParams(0, 1, 5))
    with pytest.raises(CoefficientError):
        formula_from_params(3, CoeffParams.invariant(3, 1, 0))
    with pytest.raises(CoefficientError):
        enumerate_terms(0)


@pytest.mark.parametrize("k", range(1, 9))
def test_obstruction_audit_is_clean(k):
    report = audit_params(k, CoeffParams.invariant(k, Fraction(2, 9), Fraction(7, 4)))
    assert report.all_zero and report.entries


def test_obstruction_audit_on_structure_data():
    s = parse_structure("conf-odd:3")
    d = operator_data(s, s.g0s.from_labels((1, 0, 1)), s.alpha, 3)
    assert obstruction_audit(d).all_zero


def test_audit_flags_wrong_weight():
    with pytest.raises(CoefficientError):
        audit_params(3, CoeffParams(0, 1, 1))


@settings(max_examples=30, deadline=None)
@given(st.fractions(-4, 4, max_denominator=10), st.fractions(Fraction(1, 10), 4, max_denominator=10), st.integers(1, 7))
def test_gamma_tilde_coefficients_are_universal(c0, a1, k):
    assert formula_from_params(k, CoeffParams.invariant(k, c0, a1)).coefficients() == universal_formula(k).coefficients()
