"""Truncated power series in noncommuting (plus central) variables.

Coefficients are exact ``Fraction`` values.  A monomial is stored as a pair
``(word, central)``: ``word`` is a tuple of noncommuting variable indices in
order, ``central`` the exponent vector over the central variables.  Every
variable has degree 1; terms of total degree above ``cap`` are dropped.

The Magnus maps send a group generator g to 1 + (variable), so the
augmentation ideal I corresponds to series with zero constant term and a
congruence mod I^m becomes "the difference has no terms of degree < m".
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import groupby
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .braid import (
    LEX,
    is_central,
    p3_normal_form,
    pair_order,
    tau_frame,
    verify_lantern,
)
from .free_group import Word

Monomial = Tuple[Tuple[int, ...], Tuple[int, ...]]
Number = Union[int, Fraction]


class ContextError(ValueError):
    pass


@dataclass(frozen=True)
class SeriesContext:
    noncommuting: Tuple[str, ...]
    central: Tuple[str, ...] = ()

    def one_key(self) -> Monomial:
        return ((), (0,) * len(self.central))

    def variable_key(self, name: str) -> Monomial:
        if name in self.noncommuting:
            return ((self.noncommuting.index(name),), (0,) * len(self.central))
        if name in self.central:
            e = [0] * len(self.central)
            e[self.central.index(name)] = 1
            return ((), tuple(e))
        raise ContextError(f"unknown variable {name!r}")

    def names(self, key: Monomial) -> Tuple[str, ...]:
        """Flattened variable names: noncommuting letters, then central ones sorted."""
        word, cen = key
        out = [self.noncommuting[i] for i in word]
        for name, e in sorted(zip(self.central, cen)):
            out.extend([name] * e)
        return tuple(out)


@lru_cache(maxsize=None)
def free_context(rank: int) -> SeriesContext:
    return SeriesContext(tuple(f"ξ{i}" for i in range(1, rank + 1)))


P3_CONTEXT = SeriesContext(("α", "β"), ("γ", "θ1", "θ2", "θ3"))


def degree(key: Monomial) -> int:
    return len(key[0]) + sum(key[1])


class NcSeries:
    """Immutable truncated series; build with the module functions."""

    __slots__ = ("ctx", "cap", "terms")

    def __init__(self, ctx: SeriesContext, cap: int, terms: Optional[Dict[Monomial, Number]] = None):
        if cap < 0:
            raise ValueError(f"degree cap must be >= 0, got {cap}")
        clean: Dict[Monomial, Fraction] = {}
        for key, c in (terms or {}).items():
            if c and degree(key) <= cap:
                clean[key] = Fraction(c)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "cap", cap)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("NcSeries is immutable")

    @classmethod
    def constant(cls, ctx: SeriesContext, cap: int, c: Number = 1) -> "NcSeries":
        return cls(ctx, cap, {ctx.one_key(): c})

    @classmethod
    def variable(cls, ctx: SeriesContext, cap: int, name: str, c: Number = 1) -> "NcSeries":
        return cls(ctx, cap, {ctx.variable_key(name): c})

    def coefficient(self, key: Monomial) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient(self.ctx.one_key())

    def homogeneous(self, d: int) -> "NcSeries":
        return NcSeries(self.ctx, self.cap, {k: c for k, c in self.terms.items() if degree(k) == d})

    def truncate(self, cap: int) -> "NcSeries":
        return NcSeries(self.ctx, cap, self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, NcSeries):
            return NotImplemented
        return self.ctx == other.ctx and self.cap == other.cap and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, self.cap, frozenset(self.terms.items())))

    def __add__(self, other: "NcSeries") -> "NcSeries":
        return series_add(self, other)

    def __sub__(self, other: "NcSeries") -> "NcSeries":
        return series_add(self, scale(other, -1))

    def __neg__(self) -> "NcSeries":
        return scale(self, -1)

    def __mul__(self, other) -> "NcSeries":
        if isinstance(other, NcSeries):
            return series_mul(self, other)
        return scale(self, other)

    def __rmul__(self, c: Number) -> "NcSeries":
        return scale(self, c)

    def __pow__(self, k: int) -> "NcSeries":
        return series_pow(self, k)

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        """Graded order, then lexicographic in flattened variable names."""
        return sorted(self.terms.items(), key=lambda kv: (degree(kv[0]), self.ctx.names(kv[0])))

    def __repr__(self) -> str:
        return f"NcSeries({format_series(self)}, cap={self.cap})"

    def __str__(self) -> str:
        return format_series(self)


def _check_compatible(s1: NcSeries, s2: NcSeries) -> None:
    if s1.ctx != s2.ctx:
        raise ContextError("series live in different variable contexts")
    if s1.cap != s2.cap:
        raise ContextError(f"degree caps differ: {s1.cap} vs {s2.cap}")


def scale(s: NcSeries, c: Number) -> NcSeries:
    c = Fraction(c)
    return NcSeries(s.ctx, s.cap, {k: c * v for k, v in s.terms.items()})


def series_add(s1: NcSeries, s2: NcSeries) -> NcSeries:
    _check_compatible(s1, s2)
    out = dict(s1.terms)
    for k, v in s2.terms.items():
        out[k] = out.get(k, 0) + v
    return NcSeries(s1.ctx, s1.cap, out)


def series_mul(s1: NcSeries, s2: NcSeries) -> NcSeries:
    _check_compatible(s1, s2)
    cap = s1.cap
    by_degree: Dict[int, List[Tuple[Monomial, Fraction]]] = defaultdict(list)
    for k, v in s2.terms.items():
        by_degree[degree(k)].append((k, v))
    out: Dict[Monomial, Fraction] = defaultdict(Fraction)
    for (w1, c1), v1 in s1.terms.items():
        d1 = len(w1) + sum(c1)
        for d2 in range(cap - d1 + 1):
            for (w2, c2), v2 in by_degree.get(d2, ()):
                key = (w1 + w2, tuple(a + b for a, b in zip(c1, c2)))
                out[key] += v1 * v2
    return NcSeries(s1.ctx, cap, out)


def series_inv(s: NcSeries) -> NcSeries:
    """Inverse of 1 + h as the geometric series sum_k (-h)^k."""
    if s.constant_term() != 1:
        raise ValueError(f"constant term must be exactly 1, got {s.constant_term()}")
    one = NcSeries.constant(s.ctx, s.cap)
    neg_h = one - s
    out, power = one, one
    for _ in range(s.cap):
        power = power * neg_h
        if power.is_zero():
            break
        out = out + power
    return out


def series_pow(s: NcSeries, k: int) -> NcSeries:
    if k < 0:
        return series_pow(series_inv(s), -k)
    out = NcSeries.constant(s.ctx, s.cap)
    for _ in range(k):
        out = out * s
    return out


def lowest_degree(s: NcSeries) -> float:
    """Smallest total degree carrying a nonzero term; ``math.inf`` for zero."""
    if not s.terms:
        return math.inf
    return min(degree(k) for k in s.terms)


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"({c})"


def monomial_text(ctx: SeriesContext, key: Monomial) -> str:
    """Runs of one variable print as powers: ``αβ^2θ1``."""
    names = ctx.names(key)
    if not names:
        return "1"
    out = []
    for name, run in groupby(names):
        k = len(list(run))
        out.append(name if k == 1 else f"{name}^{k}")
    return "".join(out)


def format_series(s: NcSeries) -> str:
    if not s.terms:
        return "0"
    parts = []
    for key, c in s.sorted_terms():
        mono = monomial_text(s.ctx, key)
        mag = abs(c)
        if mono == "1":
            body = _format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = _format_coeff(mag) + mono
        sign = "-" if c < 0 else "+"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def series_json_terms(s: NcSeries) -> List[list]:
    return [[monomial_text(s.ctx, k), c.numerator, c.denominator] for k, c in s.sorted_terms()]


# --- Magnus expansions ----------------------------------------------------

def _unit_series(ctx: SeriesContext, cap: int, name: str, sign: int) -> NcSeries:
    """1 + v for sign +1; for sign -1 the alternating sum 1 - v + v^2 - ..."""
    key = ctx.variable_key(name)
    if sign > 0:
        return NcSeries(ctx, cap, {ctx.one_key(): 1, key: 1})
    terms = {}
    for k in range(cap + 1):
        terms[(key[0] * k, tuple(e * k for e in key[1]))] = (-1) ** k
    return NcSeries(ctx, cap, terms)


def magnus_free(w: Word, cap: int, ctx: Optional[SeriesContext] = None) -> NcSeries:
    """x_i -> 1 + ξ_i, extended multiplicatively."""
    if cap < 0:
        raise ValueError(f"degree cap must be >= 0, got {cap}")
    ctx = free_context(w.rank) if ctx is None else ctx
    if w.rank > len(ctx.noncommuting):
        raise ContextError(f"rank {w.rank} exceeds {len(ctx.noncommuting)} noncommuting variables")
    cache: Dict[int, NcSeries] = {}
    out = NcSeries.constant(ctx, cap)
    for a in w.letters:
        if a not in cache:
            cache[a] = _unit_series(ctx, cap, ctx.noncommuting[abs(a) - 1], 1 if a > 0 else -1)
        out = out * cache[a]
    return out


BraidLetters = Sequence[Tuple[Tuple[str, Sequence[int]], int]]


def magnus_p3(letters: BraidLetters, cap: int) -> NcSeries:
    """Framed P_3 word -> series via its normal form.

    A_12 -> 1 + α, A_13 -> 1 + β, Delta^2 -> 1 + γ, tau_i -> 1 + θi.
    """
    nf = p3_normal_form(letters)
    ctx = P3_CONTEXT
    out = magnus_free(nf.word, cap, ctx)
    out = out * series_pow(_unit_series(ctx, cap, "γ", 1), nf.center)
    for i, f in enumerate(nf.framing, 1):
        out = out * series_pow(_unit_series(ctx, cap, f"θ{i}", 1), f)
    return out


# --- group ring expressions -----------------------------------------------

FREE = "free"
P3 = "p3"


@dataclass(frozen=True)
class GroupRingExpr:
    """Finite Q-linear combination of group elements.

    For the ``free`` alphabet elements are ``Word`` values; for ``p3`` they
    are tuples of ``((name, indices), power)`` letters in the framed-P_3
    alphabet.
    """

    alphabet: str
    terms: Tuple[Tuple[Fraction, object], ...] = field(default=())
    rank: int = 0

    @classmethod
    def element(cls, g, alphabet: str, coeff: Number = 1) -> "GroupRingExpr":
        rank = g.rank if isinstance(g, Word) else 0
        if alphabet == P3:
            g = tuple(((name, tuple(idx)), p) for (name, idx), p in g)
        return cls(alphabet, ((Fraction(coeff), g),), rank)

    @classmethod
    def identity(cls, alphabet: str, rank: int = 0) -> "GroupRingExpr":
        g = Word(rank) if alphabet == FREE else ()
        return cls(alphabet, ((Fraction(1), g),), rank)

    @classmethod
    def obar(cls, g, alphabet: str) -> "GroupRingExpr":
        """1 - g."""
        rank = g.rank if isinstance(g, Word) else 0
        return cls.identity(alphabet, rank) - cls.element(g, alphabet)

    def _check(self, other: "GroupRingExpr") -> None:
        if self.alphabet != other.alphabet:
            raise ContextError(f"alphabet mismatch: {self.alphabet} vs {other.alphabet}")

    def __add__(self, other: "GroupRingExpr") -> "GroupRingExpr":
        self._check(other)
        return GroupRingExpr(self.alphabet, self.terms + other.terms, max(self.rank, other.rank))

    def __neg__(self) -> "GroupRingExpr":
        return GroupRingExpr(self.alphabet, tuple((-c, g) for c, g in self.terms), self.rank)

    def __sub__(self, other: "GroupRingExpr") -> "GroupRingExpr":
        return self + (-other)

    def __rmul__(self, c: Number) -> "GroupRingExpr":
        return GroupRingExpr(self.alphabet, tuple((Fraction(c) * k, g) for k, g in self.terms), self.rank)


def expand(expr: GroupRingExpr, cap: int) -> NcSeries:
    """Image of a group ring element under the Magnus backend for its alphabet."""
    if expr.alphabet == FREE:
        ctx = free_context(max(expr.rank, 1))
        out = NcSeries(ctx, cap)
        for c, g in expr.terms:
            out = out + scale(magnus_free(g, cap, ctx), c)
        return out
    if expr.alphabet == P3:
        out = NcSeries(P3_CONTEXT, cap)
        for c, g in expr.terms:
            out = out + scale(magnus_p3(g, cap), c)
        return out
    raise ContextError(f"unsupported alphabet {expr.alphabet!r}")


def obar(g, cap: int, alphabet: Optional[str] = None) -> NcSeries:
    """1 - magnus(g) for a free-group Word or a framed-P_3 letter word."""
    if alphabet is None:
        alphabet = FREE if isinstance(g, Word) else P3
    return expand(GroupRingExpr.obar(g, alphabet), cap)


@dataclass(frozen=True)
class CongruenceReport:
    m: int
    holds: bool
    cap: int
    lowest_discrepancy_degree: float
    difference: NcSeries

    def as_dict(self) -> dict:
        low = self.lowest_discrepancy_degree
        return {
            "m": self.m,
            "holds": self.holds,
            "cap": self.cap,
            "lowest_discrepancy_degree": None if math.isinf(low) else int(low),
        }


def check_congruence(lhs: GroupRingExpr, rhs: GroupRingExpr, m: int, probe_cap: Optional[int] = None) -> CongruenceReport:
    """Decide lhs ≡ rhs mod I^m at the level of the Magnus completion.

    Expands at cap ``max(m - 1, probe_cap)``; ``holds`` looks only at degrees
    below m, while the discrepancy degree is read off the full expansion.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if lhs.alphabet != rhs.alphabet:
        raise ContextError(f"alphabet mismatch: {lhs.alphabet} vs {rhs.alphabet}")
    cap = m - 1 if probe_cap is None else max(m - 1, probe_cap)
    diff = expand(lhs - rhs, cap)
    low = lowest_degree(diff)
    return CongruenceReport(m, low >= m, cap, low, diff)


def eq1_expressions(a: Word, b: Word) -> Tuple[GroupRingExpr, GroupRingExpr]:
    """obar(ab) and obar(a) + obar(b)."""
    lhs = GroupRingExpr.obar(a * b, FREE)
    rhs = GroupRingExpr.obar(a, FREE) + GroupRingExpr.obar(b, FREE)
    return lhs, rhs


def _tau(*idx: int) -> tuple:
    return ((("T", idx), 1),)


def eq2_expressions() -> Tuple[GroupRingExpr, GroupRingExpr]:
    """obar(tau_123) and the signed sum of pair and frame obars in framed P_3."""
    ob = lambda g: GroupRingExpr.obar(g, P3)  # noqa: E731
    lhs = ob(_tau(1, 2, 3))
    rhs = ob(_tau(1, 2)) + ob(_tau(1, 3)) + ob(_tau(2, 3))
    rhs = rhs - ob(_tau(1)) - ob(_tau(2)) - ob(_tau(3))
    return lhs, rhs


def verify_lemma_inverse(cap: int) -> bool:
    """magnus(a b^-1) equals (1 + α)(1 + β)^-1 exactly at the given cap."""
    if cap < 0:
        raise ValueError(f"degree cap must be >= 0, got {cap}")
    ctx = free_context(2)
    lhs = NcSeries.constant(ctx, cap) - obar(Word(2, (1, -2)), cap)
    one_a = NcSeries.constant(ctx, cap) - obar(Word(2, (1,)), cap)
    one_b = NcSeries.constant(ctx, cap) - obar(Word(2, (2,)), cap)
    return lhs == one_a * series_inv(one_b)


@dataclass(frozen=True)
class CompletedReport:
    n: int
    holds: bool
    group_route: bool
    frames_central: bool
    series_route: Optional[bool]
    routes_agree: bool
    series_cap: Optional[int]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "holds": self.holds,
            "group_route": self.group_route,
            "frames_central": self.frames_central,
            "series_route": self.series_route,
            "routes_agree": self.routes_agree,
            "series_cap": self.series_cap,
        }


def completed_identity_series(cap: int = 4) -> Tuple[NcSeries, NcSeries]:
    """Both sides of 1 - obar(tau_123) = prod(1 - obar tau_ij) / prod(1 - obar tau_i) in framed P_3."""
    n = 3
    lhs = NcSeries.constant(P3_CONTEXT, cap) - obar(_tau(1, 2, 3), cap, P3)
    num = NcSeries.constant(P3_CONTEXT, cap)
    for i, j in pair_order(n, LEX):
        num = num * (NcSeries.constant(P3_CONTEXT, cap) - obar(_tau(i, j), cap, P3))
    den = NcSeries.constant(P3_CONTEXT, cap)
    for i in range(1, n + 1):
        den = den * series_pow(NcSeries.constant(P3_CONTEXT, cap) - obar(_tau(i), cap, P3), n - 2)
    return lhs, num * series_inv(den)


def verify_completed_identity(n: int, cap: int = 4) -> CompletedReport:
    """Group route for every n >= 3 plus, for n = 3, the series route.

    With 1 - obar(g) = g and the tau_i central, the completed identity is the
    group identity tau_{1..n} prod tau_i^{n-2} = prod tau_ij.
    """
    if n < 3:
        raise ValueError(f"completed identity needs n >= 3, got {n}")
    frames_central = all(is_central(tau_frame(i, n)) for i in range(1, n + 1))
    group = verify_lantern(n, LEX).holds and frames_central
    series = None
    if n == 3:
        lhs, rhs = completed_identity_series(cap)
        series = lhs == rhs
    agree = series is None or series == group
    holds = group and (series is None or series)
    return CompletedReport(n, holds, group, frames_central, series, agree, cap if n == 3 else None)
