"""Universal expansion coefficients of the standard operators.

Everything here is parametric in three rationals: c~0, A1 and the conformal
weight w, with c~_j = c~0 - j A1 and {n} = n (c~_{n-1} - w).  The numbers
B^n_s are available twice, from their defining recursion and from an
independent sum over lattice paths; the two must agree.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterator

from .errors import CoefficientError


class MultiIndex:
    """A finite sequence s = (s_0, s_1, ...) of non-negative integers,
    trailing zeros trimmed.  ``s[i]`` is the power of the i-th derivative of
    the deformation tensor."""

    __slots__ = ("entries",)

    def __init__(self, entries=()):
        entries = [int(x) for x in entries]
        if any(x < 0 for x in entries):
            raise CoefficientError("multi-index entries must be non-negative")
        while entries and entries[-1] == 0:
            entries.pop()
        self.entries: tuple[int, ...] = tuple(entries)

    @classmethod
    def parse(cls, text: str) -> MultiIndex:
        """Accepts "(011)", "011" or "0,1,1"."""
        body = text.strip().strip("()")
        if "," in body:
            return cls(int(x) for x in body.split(","))
        if not re.fullmatch(r"\d*", body):
            raise CoefficientError(f"bad multi-index {text!r}")
        return cls(int(c) for c in body)

    @classmethod
    def sigma(cls, i: int) -> tuple[int, ...]:
        """The step sigma_i as a raw tuple (it has a negative entry for i > 0)."""
        if i == 0:
            return (1,)
        return (0,) * (i - 1) + (-1, 1)

    def __getitem__(self, i: int) -> int:
        return self.entries[i] if i < len(self.entries) else 0

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def size(self) -> int:
        """|s| = sum of entries."""
        return sum(self.entries)

    @property
    def weight(self) -> int:
        """[s] = sum of s_i (i + 1), the measure of the recursion."""
        return sum(x * (i + 1) for i, x in enumerate(self.entries))

    @property
    def order(self) -> int:
        """ord(s) = sum of s_i (i + 2), the differential order carried by s."""
        return self.size + self.weight

    def is_zero(self) -> bool:
        return not self.entries

    def minus_sigma(self, i: int) -> MultiIndex | None:
        """s - sigma_i, or None when an entry would go negative."""
        step = self.sigma(i)
        n = max(len(self.entries), len(step))
        out = [self[a] - (step[a] if a < len(step) else 0) for a in range(n)]
        if any(x < 0 for x in out):
            return None
        return MultiIndex(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiIndex) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __lt__(self, other: MultiIndex) -> bool:
        return self.entries < other.entries

    def __str__(self) -> str:
        return "(" + ("".join(map(str, self.entries)) or "0") + ")"

    def __repr__(self) -> str:
        return f"MultiIndex{self.entries!r}"


def multi_indices(max_weight: int) -> Iterator[MultiIndex]:
    """Every multi-index with [s] <= max_weight."""

    def rec(pos: int, left: int, prefix: list[int]) -> Iterator[list[int]]:
        if pos >= left:
            yield prefix
            return
        for x in range(left // (pos + 1) + 1):
            yield from rec(pos + 1, left - x * (pos + 1), prefix + [x])

    for raw in rec(0, max_weight, []):
        yield MultiIndex(raw)


def multi_indices_of_order(order: int) -> Iterator[MultiIndex]:
    """Every multi-index with ord(s) == order."""

    def rec(pos: int, left: int, prefix: list[int]) -> Iterator[list[int]]:
        if left == 0:
            yield prefix
            return
        if pos + 2 > left:
            return
        for x in range(left // (pos + 2) + 1):
            yield from rec(pos + 1, left - x * (pos + 2), prefix + [x])

    for raw in rec(0, order, []):
        yield MultiIndex(raw)


@dataclass(frozen=True)
class CoeffParams:
    c_tilde0: Fraction
    a1: Fraction
    w: Fraction

    def __post_init__(self) -> None:
        for name in ("c_tilde0", "a1", "w"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def c_tilde(self, j: int) -> Fraction:
        return self.c_tilde0 - j * self.a1

    @classmethod
    def invariant(cls, k: int, c_tilde0=0, a1=1) -> CoeffParams:
        """Parameters at the invariant weight w = c~_{k-1}."""
        c_tilde0, a1 = Fraction(c_tilde0), Fraction(a1)
        return cls(c_tilde0, a1, c_tilde0 - (k - 1) * a1)


def brace_n(n: int, p: CoeffParams) -> Fraction:
    """{n} = n (c~_{n-1} - w)."""
    if n < 0:
        raise CoefficientError("{n} needs n >= 0")
    return n * (p.c_tilde(n - 1) - p.w)


class BRecursion:
    """Memoised B^n_s straight from the defining recursion, for fixed parameters."""

    def __init__(self, params: CoeffParams):
        self.params = params
        self._b: dict[tuple[int, MultiIndex], Fraction] = {}
        self._partial: dict[tuple[int, MultiIndex], Fraction] = {}

    def partial(self, n: int, s: MultiIndex) -> Fraction:
        """sum_{l=0}^{n-1} B^l_s (empty for n <= 0)."""
        key = (n, s)
        hit = self._partial.get(key)
        if hit is None:
            hit = Fraction(0)
            for l in range(n):
                hit += self.b(l, s)
            self._partial[key] = hit
        return hit

    def b(self, n: int, s: MultiIndex) -> Fraction:
        if n < 0:
            raise CoefficientError("B^n_s needs n >= 0")
        key = (n, s)
        hit = self._b.get(key)
        if hit is not None:
            return hit
        if s.is_zero():
            value = Fraction(1 if n == 0 else 0)
        else:
            p = self.params
            value = Fraction(0)
            prev = s.minus_sigma(0)
            if prev is not None:
                m = n + s.size - 1
                value += m * (p.c_tilde(m - 1) - p.w) * self.partial(n, prev)
            for i in range(1, len(s)):
                prev = s.minus_sigma(i)
                if prev is not None:
                    value += (s[i - 1] + 1) * self.partial(n, prev)
        self._b[key] = value
        return value


def b_recursive(n: int, s: MultiIndex, params: CoeffParams) -> Fraction:
    return BRecursion(params).b(n, s)


def paths(s: MultiIndex) -> Iterator[tuple[int, ...]]:
    """Step sequences J = (j_1, ..., j_a) with j_1 = 0, sum of sigma_{j} = s and
    every partial sum non-negative.  Searched backwards from s, pruning as soon
    as a partial sum leaves the non-negative cone."""
    if s.is_zero():
        return

    def rec(t: MultiIndex, tail: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if t.is_zero():
            if tail and tail[0] == 0:
                yield tail
            return
        for i in range(len(t)):
            prev = t.minus_sigma(i)
            if prev is not None and (i == 0 or t[i] > 0):
                yield from rec(prev, (i,) + tail)

    yield from rec(s, ())


def b_closed_form(n: int, s: MultiIndex, params: CoeffParams) -> Fraction:
    """B^n_s as the sum over lattice paths of nested sums of brace factors."""
    if n < 0:
        raise CoefficientError("B^n_s needs n >= 0")
    if s.is_zero():
        return Fraction(1 if n == 0 else 0)
    total = Fraction(0)
    for path in paths(s):
        length = len(path)
        partials = [MultiIndex()]
        for j in path[:-1]:
            prev = partials[-1]
            step = MultiIndex.sigma(j)
            partials.append(MultiIndex(
                prev[a] + (step[a] if a < len(step) else 0)
                for a in range(max(len(prev), len(step)))
            ))

        def factor(a: int, l: int) -> Fraction:
            # brace factor of step a (1-based) at summation value l
            before = partials[a - 1]
            j = path[a - 1]
            return brace_n(l + before.size, params) if j == 0 else Fraction(before[j - 1])

        # values[l] = inner nested sum ending with step a evaluated at l
        values = {l: factor(1, l) for l in range(1, n + 1)}
        for a in range(2, length + 1):
            nxt = {}
            for l in range(a, n + 1):
                inner = sum((values[m] for m in range(a - 1, l) if m in values), Fraction(0))
                nxt[l] = factor(a, l) * inner
            values = nxt
        if length == 1:
            total += factor(1, n)
        else:
            total += values.get(n, Fraction(0))
    return total


def a_coefficient(k: int, j: int, s: MultiIndex, params: CoeffParams,
                  session: BRecursion | None = None) -> Fraction:
    """Expansion coefficient a^{k,j}_s of the order-k operator."""
    if k < 0 or j < 0:
        raise CoefficientError("k and j must be non-negative")
    if j + s.order > k:
        raise CoefficientError(f"j + ord(s) = {j + s.order} exceeds k = {k}")
    bs = session if session is not None else BRecursion(params)
    if j == 0:
        return bs.partial(k - s.size + 1, s)
    prod = Fraction(1)
    for i in range(k - j, k):
        prod *= params.c_tilde(i) - params.w
    return comb(k, j) * prod * bs.partial(k - j - s.size + 1, s)


def a_by_stepping(k: int, j: int, s: MultiIndex, params: CoeffParams,
                  memo: dict | None = None) -> Fraction:
    """The same coefficient, generated order by order from a^{0,0}_{(0)} = 1 with
    the stepping rules for the operators raising the order by one."""
    memo = {} if memo is None else memo
    key = (k, j, s)
    if key in memo:
        return memo[key]
    if j < 0 or j + s.order > k:
        value = Fraction(0)
    elif k == 0:
        value = Fraction(1)
    else:
        p, q = params, k - 1
        value = a_by_stepping(q, j, s, p, memo)
        if j > 0:
            value += a_by_stepping(q, j - 1, s, p, memo) * (p.c_tilde(q) - (q - j + 1) * p.a1 - p.w)
        prev = s.minus_sigma(0)
        if prev is not None:
            value += (j + 1) * a_by_stepping(q, j + 1, prev, p, memo)
        for i in range(1, len(s)):
            prev = s.minus_sigma(i)
            if prev is not None:
                value += (s[i - 1] + 1) * a_by_stepping(q, j, prev, p, memo)
    memo[key] = value
    return value
