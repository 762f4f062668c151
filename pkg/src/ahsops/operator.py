"""Explicit formulas for the standard operators D(lambda, theta, k).

A term (j, s, i, c) stands for c * pi[tau^j . G^{s_0} . (dG)^{s_1} ... . d^i t]
where G is the renormalised deformation tensor A1 * Gamma.  At the invariant
weight every term with j > 0 vanishes, so a stored formula only has j = 0.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .casimir import OperatorData, operator_data
from .catalog import parse_structure
from .coeffs import BRecursion, CoeffParams, MultiIndex, a_coefficient, multi_indices_of_order
from .errors import CoefficientError, DomainError
from .rootsystem import format_rational

CONVENTIONS = ("gamma-tilde", "gamma")
FORMATS = ("plain", "latex", "json")


@dataclass(frozen=True)
class OperatorTerm:
    j: int
    s: MultiIndex
    i: int
    coefficient: Fraction

    @property
    def shape(self) -> tuple[int, MultiIndex, int]:
        return (self.j, self.s, self.i)


def _term_key(shape: tuple[int, MultiIndex, int]):
    j, s, i = shape
    return (-i, s.entries)


def enumerate_terms(k: int) -> list[tuple[int, MultiIndex, int]]:
    """All (0, s, i) with ord(s) + i = k, ordered by i descending then s."""
    if k < 1:
        raise CoefficientError("order must be positive")
    shapes = [(0, s, k - o) for o in range(k + 1) for s in multi_indices_of_order(o)]
    return sorted(shapes, key=_term_key)


@dataclass(frozen=True)
class OperatorFormula:
    data: OperatorData | None
    k: int
    terms: tuple[OperatorTerm, ...]
    convention: str = "gamma-tilde"
    dropped: int = 0  # admissible shapes whose coefficient vanished

    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(t.coefficient for t in self.terms)

    def by_shape(self) -> dict[tuple[MultiIndex, int], Fraction]:
        return {(t.s, t.i): t.coefficient for t in self.terms}

    def in_gamma(self, a1: Fraction) -> tuple[Fraction, ...]:
        """Coefficients against the unrenormalised tensor Gamma."""
        return tuple(t.coefficient * Fraction(a1) ** t.s.size for t in self.terms)


def formula_from_params(k: int, params: CoeffParams, data: OperatorData | None = None) -> OperatorFormula:
    if params.w != params.c_tilde(k - 1):
        raise CoefficientError("formula requires the invariant weight w = c~_{k-1}")
    if params.a1 == 0:
        raise CoefficientError("A1 = 0 cannot be renormalised away")
    bs = BRecursion(params)
    terms, dropped = [], 0
    for j, s, i in enumerate_terms(k):
        c = a_coefficient(k, j, s, params, bs) / params.a1 ** s.size
        if c:
            terms.append(OperatorTerm(j, s, i, c))
        else:
            dropped += 1
    return OperatorFormula(data, k, tuple(terms), "gamma-tilde", dropped)


def universal_formula(k: int) -> OperatorFormula:
    """The structure-free formula (computed with A1 = 1, c~0 = 0)."""
    return formula_from_params(k, CoeffParams.invariant(k))


def build_formula(data: OperatorData) -> OperatorFormula:
    s = data.structure
    params = CoeffParams(data.c_tilde0, s.a1, data.w)
    return formula_from_params(data.k, params, data)


@dataclass(frozen=True)
class AuditReport:
    k: int
    entries: tuple[tuple[int, MultiIndex, Fraction], ...] = field(default=())

    @property
    def all_zero(self) -> bool:
        return all(v == 0 for _, _, v in self.entries)


def obstruction_audit(data: OperatorData, k: int | None = None) -> AuditReport:
    """Evaluate every a^{k,j}_s with j >= 1 at the invariant weight; all must vanish."""
    k = data.k if k is None else k
    params = CoeffParams(data.c_tilde0, data.structure.a1, data.c_tilde0 - (k - 1) * data.structure.a1)
    return audit_params(k, params)


def audit_params(k: int, params: CoeffParams) -> AuditReport:
    bs = BRecursion(params)
    entries = []
    for j in range(1, k + 1):
        for o in range(k - j + 1):
            for s in multi_indices_of_order(o):
                entries.append((j, s, a_coefficient(k, j, s, params, bs)))
    report = AuditReport(k, tuple(entries))
    if not report.all_zero:
        bad = next((j, s) for j, s, v in entries if v)
        raise CoefficientError(f"nonzero obstruction coefficient at j={bad[0]}, s={bad[1]}")
    return report


# ---------------------------------------------------------------------------
# rendering


def _power(base: str, e: int, caret: str) -> str:
    return base if e == 1 else f"{base}{caret}{e}"


def _plain_monomial(t: OperatorTerm) -> str:
    parts = []
    for m, e in enumerate(t.s.entries):
        if e:
            base = "Γ̃" if m == 0 else "(" + _power("∇", m, "^") + "Γ̃)"
            parts.append(_power(base, e, "^"))
    parts.append("t" if t.i == 0 else _power("∇", t.i, "^") + " t")
    return " ".join(parts)


def _latex_monomial(t: OperatorTerm) -> str:
    parts = []
    for m, e in enumerate(t.s.entries):
        if e:
            base = r"\tilde\Gamma" if m == 0 else "(" + (r"\nabla" if m == 1 else rf"\nabla^{{{m}}}") + r"\tilde\Gamma)"
            parts.append(base if e == 1 else f"{base}^{{{e}}}")
    gammas = r" \odot ".join(parts)
    tail = "t" if t.i == 0 else (r"\nabla t" if t.i == 1 else rf"\nabla^{{{t.i}}} t")
    return f"{gammas} \\otimes {tail}" if gammas else tail


def _join(pieces: list[tuple[Fraction, str]], sep: str) -> str:
    out = ""
    for n, (c, mono) in enumerate(pieces):
        body = mono if n == 0 and c == 1 else f"{format_rational(abs(c))}{sep}{mono}"
        if n == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out or "0"


def _json_payload(f: OperatorFormula) -> dict:
    d = f.data
    return {
        "structure": d.structure.name if d else None,
        "lambda": [format_rational(x) for x in d.lam.labels] if d else None,
        "theta": [format_rational(x) for x in d.theta.labels] if d else None,
        "k": f.k,
        "w": format_rational(d.w) if d else None,
        "convention": f.convention,
        "terms": [
            {"s": list(t.s.entries) or [0], "i": t.i, "coeff": format_rational(t.coefficient)}
            for t in f.terms
        ],
    }


def render(f: OperatorFormula, fmt: str = "plain") -> str:
    if fmt == "plain":
        return _join([(t.coefficient, _plain_monomial(t)) for t in f.terms], "·")
    if fmt == "latex":
        return _join([(t.coefficient, _latex_monomial(t)) for t in f.terms], r"\,")
    if fmt == "json":
        return json.dumps(_json_payload(f), ensure_ascii=False)
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


def parse_json(text: str) -> OperatorFormula:
    """Inverse of ``render(..., "json")``."""
    obj = json.loads(text)
    k = int(obj["k"])
    data = None
    if obj["structure"] is not None:
        s = parse_structure(obj["structure"])
        lam = s.g0s.from_labels([Fraction(x) for x in obj["lambda"]])
        theta = s.g0s.from_labels([Fraction(x) for x in obj["theta"]])
        data = operator_data(s, lam, theta, k)
        if data.w != Fraction(obj["w"]):
            raise DomainError("stored conformal weight disagrees with the recomputed one")
    terms = tuple(
        OperatorTerm(0, MultiIndex(t["s"]), int(t["i"]), Fraction(t["coeff"])) for t in obj["terms"]
    )
    return OperatorFormula(data, k, terms, obj["convention"], len(enumerate_terms(k)) - len(terms))
