"""Character bookkeeping for H = L + L* under GL(L), L of dimension g.

A character is a Laurent polynomial in x_1..x_g with integer coefficients:
the torus eigenvalues are x_i on L and x_i^-1 on L*.  Invariant dimensions
come from constant terms; the GL(L) count uses the constant-term form of
Weyl integration,

    dim V^GL = (1/g!) CT[ chi_V(x) * prod_{i != j} (1 - x_i / x_j) ].
"""

from __future__ import annotations

import math
import os
from collections import defaultdict
from functools import lru_cache
from itertools import combinations, permutations
from typing import Dict, Iterable, List, Optional, Tuple

DEFAULT_TERM_CAP = 10**7
TERM_CAP_ENV = "LANTERN_TERM_CAP"

Exponent = Tuple[int, ...]


class ResourceCapExceeded(RuntimeError):
    """A computation would exceed the configured monomial budget."""


class NotACharacter(ValueError):
    pass


def term_cap(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    env = os.environ.get(TERM_CAP_ENV)
    return int(env) if env else DEFAULT_TERM_CAP


class LaurentPoly:
    """Integer Laurent polynomial in ``g`` variables, sparse and immutable."""

    __slots__ = ("g", "terms")

    def __init__(self, g: int, terms: Optional[Dict[Exponent, int]] = None):
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != g:
                raise ValueError(f"exponent {e} has wrong length for g = {g}")
            if c:
                clean[tuple(e)] = int(c)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def one(cls, g: int) -> "LaurentPoly":
        return cls(g, {(0,) * g: 1})

    @classmethod
    def monomial(cls, e: Iterable[int], c: int = 1) -> "LaurentPoly":
        e = tuple(e)
        return cls(len(e), {e: c})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.g == other.g and self.terms == other.terms

    def __hash__(self):
        return hash((self.g, frozenset(self.terms.items())))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        _same_g(self, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.g, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.g, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly(self.g, {e: c * other for e, c in self.terms.items()})
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, m: int) -> "LaurentPoly":
        return power(self, m)

    def __len__(self) -> int:
        return len(self.terms)

    def evaluate_ones(self) -> int:
        """Value at x = (1, ..., 1): the dimension of the represented module."""
        return sum(self.terms.values())

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.g, 0)

    def permute(self, perm: Tuple[int, ...]) -> "LaurentPoly":
        """Substitute x_i -> x_{perm[i]} (0-based permutation)."""
        out = {}
        for e, c in self.terms.items():
            f = [0] * self.g
            for i, k in enumerate(e):
                f[perm[i]] = k
            out[tuple(f)] = c
        return LaurentPoly(self.g, out)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(
                f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e, 1) if k
            )
            parts.append(f"{c}" if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(parts)


def _same_g(a: LaurentPoly, b: LaurentPoly) -> None:
    if a.g != b.g:
        raise ValueError(f"variable count mismatch: {a.g} vs {b.g}")


def multiply(a: LaurentPoly, b: LaurentPoly, cap: Optional[int] = None) -> LaurentPoly:
    _same_g(a, b)
    limit = term_cap(cap)
    if len(a) * len(b) > limit:
        raise ResourceCapExceeded(
            f"product of {len(a)} x {len(b)} terms exceeds the cap of {limit} monomials"
        )
    out: Dict[Exponent, int] = defaultdict(int)
    for e1, c1 in a.terms.items():
        for e2, c2 in b.terms.items():
            out[tuple(x + y for x, y in zip(e1, e2))] += c1 * c2
    return LaurentPoly(a.g, out)


def power(f: LaurentPoly, m: int, cap: Optional[int] = None) -> LaurentPoly:
    if m < 0:
        raise ValueError("negative powers of characters are not characters")
    out = LaurentPoly.one(f.g)
    for _ in range(m):
        out = multiply(out, f, cap)
    return out


def _check_genus(g: int, least: int = 1) -> None:
    if g < least:
        raise ValueError(f"genus must be >= {least}, got {g}")


def _weights(g: int) -> List[Exponent]:
    """Torus weights of H: +e_i on L, -e_i on L*."""
    out = []
    for sign in (1, -1):
        for i in range(g):
            out.append(tuple(sign if k == i else 0 for k in range(g)))
    return out


def elementary(weights: List[Exponent], k: int, g: int) -> LaurentPoly:
    """k-th elementary symmetric function of the monomials with these weights."""
    out: Dict[Exponent, int] = defaultdict(int)
    for combo in combinations(weights, k):
        out[tuple(sum(col) for col in zip(*combo)) if combo else (0,) * g] += 1
    return LaurentPoly(g, out)


def char_H(g: int) -> LaurentPoly:
    _check_genus(g)
    return elementary(_weights(g), 1, g)


def char_lambda3H(g: int) -> LaurentPoly:
    _check_genus(g)
    return elementary(_weights(g), 3, g)


def char_L(g: int, k: int = 1, dual: bool = False) -> LaurentPoly:
    """Character of Λ^k L (or Λ^k L* when ``dual``)."""
    ws = _weights(g)
    return elementary(ws[g:] if dual else ws[:g], k, g)


def dim_U(g: int) -> int:
    """dim Λ³H/H = C(2g, 3) - 2g; defined for g >= 2, where H embeds in Λ³H."""
    _check_genus(g, 2)
    return math.comb(2 * g, 3) - 2 * g


def decomposition_check(g: int) -> bool:
    """Λ³H = Λ³L + Λ²L⊗L* + Λ²L*⊗L + Λ³L*, as dimensions and as characters."""
    _check_genus(g)
    dims_ok = math.comb(2 * g, 3) == 2 * math.comb(g, 3) + 2 * g * math.comb(g, 2)
    parts = (
        char_L(g, 3)
        + char_L(g, 2) * char_L(g, 1, dual=True)
        + char_L(g, 2, dual=True) * char_L(g, 1)
        + char_L(g, 3, dual=True)
    )
    return dims_ok and parts == char_lambda3H(g)


def torus_invariant_dim(f: LaurentPoly) -> int:
    return f.constant_term()


def weyl_denominator(g: int, cap: Optional[int] = None) -> LaurentPoly:
    """prod over ordered pairs i != j of (1 - x_i x_j^-1)."""
    # exponents sum to zero with entries in [-(g-1), g-1]
    bound = (2 * g - 1) ** (g - 1)
    limit = term_cap(cap)
    if bound > limit:
        raise ResourceCapExceeded(f"Weyl denominator for g = {g} may reach {bound} monomials (cap {limit})")
    return _weyl_denominator(g)


@lru_cache(maxsize=16)
def _weyl_denominator(g: int) -> LaurentPoly:
    out = LaurentPoly.one(g)
    for i, j in permutations(range(g), 2):
        e = [0] * g
        e[i], e[j] = 1, -1
        out = out * (LaurentPoly.one(g) - LaurentPoly.monomial(e))
    return out


def gl_invariant_dim(f: LaurentPoly, g: Optional[int] = None, cap: Optional[int] = None) -> int:
    g = f.g if g is None else g
    if g != f.g:
        raise ValueError(f"character has {f.g} variables, expected {g}")
    den = weyl_denominator(g, cap)
    # CT(f * den) = sum_e f[e] * den[-e]; avoids forming the product
    total = 0
    for e, c in f.terms.items():
        total += c * den.terms.get(tuple(-k for k in e), 0)
    order = math.factorial(g)
    if total % order:
        raise NotACharacter(f"constant term {total} is not divisible by {g}! = {order}")
    result = total // order
    if result < 0:
        raise NotACharacter(f"negative invariant dimension {result}")
    return result


def _lambda3_power(g: int, m: int, cap: Optional[int]) -> LaurentPoly:
    base = char_lambda3H(g)
    limit = term_cap(cap)
    if m >= 2 and len(base) ** 2 > limit:
        raise ResourceCapExceeded(f"Λ³H for g = {g} has {len(base)} monomials; power {m} exceeds the cap of {limit}")
    return power(base, m, cap)


def parity_table(g_max: int = 4, m_max: int = 4, cap: Optional[int] = None) -> Dict[Tuple[int, int], int]:
    """Torus-invariant dimension of (Λ³H)^{⊗m} for 1 <= g <= g_max, 0 <= m <= m_max."""
    table = {}
    for g in range(1, g_max + 1):
        for m in range(m_max + 1):
            table[(g, m)] = torus_invariant_dim(_lambda3_power(g, m, cap))
    return table


def stability_probe(m: int, g_range: Iterable[int] = range(1, 7), cap: Optional[int] = None) -> Dict[str, object]:
    """GL(L)-invariant dimension of (Λ³H)^{⊗m} across genera.

    ``stable`` reports whether the last two genera agree; it is evidence,
    not a proof of stabilization.
    """
    dims = {g: gl_invariant_dim(_lambda3_power(g, m, cap), g, cap) for g in g_range}
    gs = sorted(dims)
    stable = len(gs) >= 2 and dims[gs[-1]] == dims[gs[-2]]
    return {"m": m, "dims": dims, "stable": stable}


def invariant_dim(g: int, m: int, group: str = "gl", cap: Optional[int] = None) -> int:
    """One table cell: invariants of (Λ³H)^{⊗m} for the torus or for GL(L)."""
    _check_genus(g)
    f = _lambda3_power(g, m, cap)
    if group == "torus":
        return torus_invariant_dim(f)
    if group == "gl":
        return gl_invariant_dim(f, g, cap)
    raise ValueError(f"unknown group {group!r}")
