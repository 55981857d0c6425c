"""Framed pure braids realized through the Artin action on F_n.

Convention (the only one shipped): maps compose left to right and braids are
read top to bottom, with

    sigma_k :  x_k -> x_k x_{k+1} x_k^-1,   x_{k+1} -> x_k.

Under this convention the full twist (sigma_1 ... sigma_{n-1})^n equals the
lexicographically ordered product A_12 A_13 ... A_1n A_23 ... A_{n-1,n}, which
is what makes the generalized lantern identity hold.

Equality of braids is equality of reduced generator images plus framings;
the Artin representation is faithful, so this decides the word problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from .free_group import (
    FreeAut,
    Word,
    certify,
    compose,
    generator,
    identity_aut,
    inverse,
    is_conjugate_of_generator,
    reduce,
    word,
)

LEX = "lex"
REVLEX = "revlex"
ORDERINGS = (LEX, REVLEX)


class BraidError(ValueError):
    pass


def _check_strands(n: int) -> None:
    if n < 1:
        raise BraidError(f"strand count must be positive, got {n}")


@lru_cache(maxsize=None)
def sigma(k: int, n: int) -> FreeAut:
    """Artin generator sigma_k of B_n as a certified automorphism of F_n."""
    _check_strands(n)
    if not 1 <= k <= n - 1:
        raise BraidError(f"sigma index {k} out of range for {n} strands")
    ims = [generator(i, n) for i in range(1, n + 1)]
    inv = list(ims)
    ims[k - 1] = word(n, k, k + 1, -k)
    ims[k] = word(n, k)
    inv[k - 1] = word(n, k + 1)
    inv[k] = word(n, -(k + 1), k, k + 1)
    return certify(FreeAut(n, tuple(ims)), FreeAut(n, tuple(inv)))


def aut_product(auts: Iterable[FreeAut], n: int) -> FreeAut:
    out = identity_aut(n)
    for f in auts:
        out = compose(out, f)
    return out


def permutation(aut: FreeAut) -> Optional[Tuple[int, ...]]:
    """``p`` with ``aut(x_i)`` a conjugate of ``x_{p[i-1]}``, else None."""
    perm = []
    for w in aut.images:
        n = len(w.letters)
        if n % 2 == 0:
            return None
        j = w.letters[n // 2]
        if j < 0 or not is_conjugate_of_generator(w, j):
            return None
        perm.append(j)
    if sorted(perm) != list(range(1, aut.rank + 1)):
        return None
    return tuple(perm)


@dataclass(frozen=True)
class FramedBraid:
    """Element of B_n ⋉ Z^n; for pure braids the framing part is central.

    ``framing[i-1]`` is the number of +1 twists on the strand starting at
    position i.  Construction checks that the automorphism fixes x_1...x_n.
    """

    n: int
    aut: FreeAut
    framing: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.aut.rank != self.n or len(self.framing) != self.n:
            raise BraidError("strand count mismatch")
        top = word(self.n, *range(1, self.n + 1))
        if self.aut(top) != top:
            raise BraidError("automorphism does not fix x_1 ... x_n")

    @property
    def perm(self) -> Tuple[int, ...]:
        p = permutation(self.aut)
        if p is None:
            raise BraidError("automorphism does not permute generator conjugacy classes")
        return p

    def is_pure(self) -> bool:
        return permutation(self.aut) == tuple(range(1, self.n + 1))

    def __mul__(self, other: "FramedBraid") -> "FramedBraid":
        return braid_mul(self, other)

    def __pow__(self, k: int) -> "FramedBraid":
        return braid_pow(self, k)

    def __invert__(self) -> "FramedBraid":
        return braid_inv(self)


def braid_identity(n: int) -> FramedBraid:
    return FramedBraid(n, identity_aut(n), (0,) * n)


def braid_mul(b1: FramedBraid, b2: FramedBraid) -> FramedBraid:
    """``b1`` on top of ``b2``; framing of ``b2`` is carried along the strands of ``b1``."""
    if b1.n != b2.n:
        raise BraidError(f"strand mismatch: {b1.n} vs {b2.n}")
    p = b1.perm
    framing = tuple(b1.framing[i] + b2.framing[p[i] - 1] for i in range(b1.n))
    return FramedBraid(b1.n, compose(b1.aut, b2.aut), framing)


def braid_inv(b: FramedBraid) -> FramedBraid:
    p = b.perm
    framing = [0] * b.n
    for i in range(b.n):
        framing[p[i] - 1] = -b.framing[i]
    return FramedBraid(b.n, inverse(b.aut), tuple(framing))


def braid_pow(b: FramedBraid, k: int) -> FramedBraid:
    if k < 0:
        return braid_pow(braid_inv(b), -k)
    out = braid_identity(b.n)
    for _ in range(k):
        out = braid_mul(out, b)
    return out


def braid_product(bs: Iterable[FramedBraid], n: int) -> FramedBraid:
    out = braid_identity(n)
    for b in bs:
        out = braid_mul(out, b)
    return out


def braid_eq(b1: FramedBraid, b2: FramedBraid) -> bool:
    if b1.n != b2.n:
        raise BraidError(f"strand mismatch: {b1.n} vs {b2.n}")
    return b1.aut == b2.aut and b1.framing == b2.framing


def unit(i: int, n: int) -> Tuple[int, ...]:
    return tuple(1 if k == i else 0 for k in range(1, n + 1))


def sigma_braid(k: int, n: int) -> FramedBraid:
    return FramedBraid(n, sigma(k, n), (0,) * n)


@lru_cache(maxsize=None)
def artin_pair(i: int, j: int, n: int) -> FreeAut:
    """A_ij = (sigma_{j-1} ... sigma_{i+1}) sigma_i^2 (sigma_{i+1}^-1 ... sigma_{j-1}^-1)."""
    _check_strands(n)
    if not 1 <= i < j <= n:
        raise BraidError(f"need 1 <= i < j <= n, got ({i}, {j}) with n = {n}")
    down = [sigma(k, n) for k in range(j - 1, i, -1)]
    up = [inverse(sigma(k, n)) for k in range(i + 1, j)]
    return aut_product(down + [sigma(i, n), sigma(i, n)] + up, n)


@lru_cache(maxsize=None)
def full_twist(n: int) -> FreeAut:
    """Delta_n^2 = (sigma_1 ... sigma_{n-1})^n."""
    _check_strands(n)
    return aut_product([sigma(k, n) for k in range(1, n)] * n, n)


def tau_pair(i: int, j: int, n: int) -> FramedBraid:
    """Right-handed twist on the band around strands i and j."""
    a = artin_pair(i, j, n)
    return FramedBraid(n, a, tuple(x + y for x, y in zip(unit(i, n), unit(j, n))))


def tau_frame(i: int, n: int) -> FramedBraid:
    _check_strands(n)
    if not 1 <= i <= n:
        raise BraidError(f"strand {i} out of range for {n} strands")
    return FramedBraid(n, identity_aut(n), unit(i, n))


def tau_band(strands: Iterable[int], n: int) -> FramedBraid:
    """Twist on a band; supported for one strand, a pair, or all n strands."""
    s = tuple(sorted(set(strands)))
    if len(s) == 1:
        return tau_frame(s[0], n)
    if len(s) == 2:
        return tau_pair(s[0], s[1], n)
    if s == tuple(range(1, n + 1)):
        return FramedBraid(n, full_twist(n), (1,) * n)
    raise BraidError(f"band twist on {set(s)} unsupported; only pairs and the full band")


def pair_order(n: int, order: str = LEX) -> List[Tuple[int, int]]:
    pairs = list(combinations(range(1, n + 1), 2))
    if order == LEX:
        return pairs
    if order == REVLEX:
        return pairs[::-1]
    raise BraidError(f"unknown ordering {order!r}")


@dataclass(frozen=True)
class LanternReport:
    n: int
    order: str
    holds: bool
    framing_lhs: Tuple[int, ...]
    framing_rhs: Tuple[int, ...]
    # lowest generator index whose image differs, with both images
    lowest_discrepancy: Optional[Tuple[int, str, str]] = None

    def as_dict(self) -> dict:
        d = {
            "n": self.n,
            "order": self.order,
            "holds": self.holds,
            "framing_lhs": list(self.framing_lhs),
            "framing_rhs": list(self.framing_rhs),
            "lowest_discrepancy": None,
        }
        if self.lowest_discrepancy is not None:
            i, lhs, rhs = self.lowest_discrepancy
            d["lowest_discrepancy"] = {"generator": i, "lhs_image": lhs, "rhs_image": rhs}
        return d


def lantern_sides(n: int, order: str = LEX) -> Tuple[FramedBraid, FramedBraid]:
    """LHS = tau_{12...n} prod_i tau_i^{n-2},  RHS = prod_{i<j} tau_ij in ``order``."""
    if n < 2:
        raise BraidError("the lantern identity needs n >= 2")
    lhs = tau_band(range(1, n + 1), n)
    for i in range(1, n + 1):
        lhs = braid_mul(lhs, braid_pow(tau_frame(i, n), n - 2))
    rhs = braid_product((tau_pair(i, j, n) for i, j in pair_order(n, order)), n)
    return lhs, rhs


def verify_lantern(n: int, order: str = LEX) -> LanternReport:
    lhs, rhs = lantern_sides(n, order)
    holds = braid_eq(lhs, rhs)
    discrepancy = None
    if lhs.aut != rhs.aut:
        for i, (u, v) in enumerate(zip(lhs.aut.images, rhs.aut.images), 1):
            if u != v:
                discrepancy = (i, str(u), str(v))
                break
    return LanternReport(n, order, holds, lhs.framing, rhs.framing, discrepancy)


def framed_generators(n: int) -> List[FramedBraid]:
    """tau_i for every strand and tau_ij for every pair."""
    gens = [tau_frame(i, n) for i in range(1, n + 1)]
    gens += [tau_pair(i, j, n) for i, j in combinations(range(1, n + 1), 2)]
    return gens


def commutes(b1: FramedBraid, b2: FramedBraid) -> bool:
    return braid_eq(braid_mul(b1, b2), braid_mul(b2, b1))


def is_central(b: FramedBraid, n: Optional[int] = None) -> bool:
    n = b.n if n is None else n
    return all(commutes(b, g) for g in framed_generators(n))


def is_certified(b: FramedBraid) -> bool:
    """Product-fixing (checked at construction) and pure-braid certificates."""
    return all(is_conjugate_of_generator(w, i) for i, w in enumerate(b.aut.images, 1))


# --- letters and words in the braid alphabet -------------------------------
#
# A letter is ``(name, indices)`` with name in {"t", "A", "T", "s"}; a braid
# word is a sequence of ``(letter, power)``.

def letter_braid(name: str, indices: Sequence[int], n: int) -> FramedBraid:
    idx = tuple(indices)
    if name == "t":
        if len(idx) != 1:
            raise BraidError("t takes exactly one strand index")
        return tau_frame(idx[0], n)
    if name == "A":
        if len(idx) != 2:
            raise BraidError("A takes exactly two strand indices")
        return FramedBraid(n, artin_pair(idx[0], idx[1], n), (0,) * n)
    if name == "T":
        if list(idx) != sorted(set(idx)):
            raise BraidError("T indices must be strictly increasing")
        return tau_band(idx, n)
    if name == "s":
        if len(idx) != 1:
            raise BraidError("s takes exactly one index")
        return sigma_braid(idx[0], n)
    raise BraidError(f"unknown braid generator {name!r}")


def evaluate_braid_word(letters: Iterable[Tuple[Tuple[str, Sequence[int]], int]], n: int) -> FramedBraid:
    out = braid_identity(n)
    for (name, indices), power in letters:
        out = braid_mul(out, braid_pow(letter_braid(name, indices, n), power))
    return out


# --- framed P_3 normal form -----------------------------------------------

@dataclass(frozen=True)
class P3NormalForm:
    """``word`` in a = A_12 (generator 1), b = A_13 (generator 2); ``center``
    is the exponent of Delta_3^2; framing is the accumulated framing vector."""

    word: Word
    center: int
    framing: Tuple[int, int, int]

    def to_braid(self) -> FramedBraid:
        images = {1: artin_pair(1, 2, 3), 2: artin_pair(1, 3, 3)}
        aut = identity_aut(3)
        for a in self.word.letters:
            f = images[abs(a)]
            aut = compose(aut, f if a > 0 else inverse(f))
        d = full_twist(3) if self.center >= 0 else inverse(full_twist(3))
        for _ in range(abs(self.center)):
            aut = compose(aut, d)
        return FramedBraid(3, aut, self.framing)


# images in <a, b> and Delta^2 exponent of each framed-P3 letter;
# A_23 = A_13^-1 A_12^-1 Delta^2 because Delta^2 = A_12 A_13 A_23
_P3_LETTERS = {
    ("A", (1, 2)): ((1,), 0, (0, 0, 0)),
    ("A", (1, 3)): ((2,), 0, (0, 0, 0)),
    ("A", (2, 3)): ((-2, -1), 1, (0, 0, 0)),
    ("T", (1, 2)): ((1,), 0, (1, 1, 0)),
    ("T", (1, 3)): ((2,), 0, (1, 0, 1)),
    ("T", (2, 3)): ((-2, -1), 1, (0, 1, 1)),
    ("T", (1, 2, 3)): ((), 1, (1, 1, 1)),
    ("T", (1,)): ((), 0, (1, 0, 0)),
    ("T", (2,)): ((), 0, (0, 1, 0)),
    ("T", (3,)): ((), 0, (0, 0, 1)),
    ("t", (1,)): ((), 0, (1, 0, 0)),
    ("t", (2,)): ((), 0, (0, 1, 0)),
    ("t", (3,)): ((), 0, (0, 0, 1)),
}


def p3_normal_form(letters: Iterable[Tuple[Tuple[str, Sequence[int]], int]]) -> P3NormalForm:
    """Rewrite a word in the framed-P_3 alphabet as w(a, b) * Delta^(2d) * framing."""
    raw: List[int] = []
    center = 0
    framing = [0, 0, 0]
    for (name, indices), power in letters:
        key = (name, tuple(indices))
        if key not in _P3_LETTERS:
            raise BraidError(f"{name}{list(indices)} is not in the framed P_3 alphabet")
        w, d, f = _P3_LETTERS[key]
        if power >= 0:
            raw.extend(list(w) * power)
        else:
            raw.extend([-a for a in reversed(w)] * -power)
        center += d * power
        for k in range(3):
            framing[k] += f[k] * power
    return P3NormalForm(reduce(raw, 2), center, tuple(framing))
