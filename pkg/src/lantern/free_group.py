"""Reduced words and automorphisms of finitely generated free groups.

A letter is a signed generator index: ``+i`` stands for ``x_i`` and ``-i``
for ``x_i^-1``, with ``1 <= i <= rank``.  Words are kept freely reduced at
all times, so equality of group elements is equality of letter tuples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple, Union

MAX_WORD_LENGTH = 10**6

Letter = Union[int, Tuple[int, int]]


class RankError(ValueError):
    """Generator index out of range, or operands of different rank."""


class WordTooLongError(RuntimeError):
    """A reduced word exceeded the configured length cap."""


def _check_length(n: int, cap: Optional[int]) -> None:
    cap = MAX_WORD_LENGTH if cap is None else cap
    if n > cap:
        raise WordTooLongError(f"word length {n} exceeds cap {cap}")


def _normalize_letter(letter: Letter, rank: int) -> int:
    if isinstance(letter, tuple):
        index, sign = letter
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign}")
        letter = index * sign
    if not isinstance(letter, int) or letter == 0 or abs(letter) > rank:
        raise RankError(f"generator index {letter!r} out of range for rank {rank}")
    return letter


@dataclass(frozen=True)
class Word:
    """A freely reduced word in the free group of the given rank."""

    rank: int
    letters: Tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return invert(self) ** -k
        out = Word(self.rank)
        for _ in range(k):
            out = multiply(out, self)
        return out

    def is_identity(self) -> bool:
        return not self.letters

    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        """Letters as ``(index, sign)`` pairs."""
        return tuple((abs(a), 1 if a > 0 else -1) for a in self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "*".join(f"x[{a}]" if a > 0 else f"x[{-a}]^-1" for a in self.letters)


def reduce(letters: Iterable[Letter], rank: int, *, cap: Optional[int] = None) -> Word:
    """Freely reduce a raw letter sequence."""
    stack: list = []
    for raw in letters:
        a = _normalize_letter(raw, rank)
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    _check_length(len(stack), cap)
    return Word(rank, tuple(stack))


def word(rank: int, *letters: Letter) -> Word:
    return reduce(letters, rank)


def generator(i: int, rank: int) -> Word:
    return reduce((i,), rank)


def _append(stack: list, letters: Sequence[int]) -> None:
    for a in letters:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)


def multiply(u: Word, v: Word, *, cap: Optional[int] = None) -> Word:
    if u.rank != v.rank:
        raise RankError(f"rank mismatch: {u.rank} vs {v.rank}")
    stack = list(u.letters)
    _append(stack, v.letters)
    _check_length(len(stack), cap)
    return Word(u.rank, tuple(stack))


def invert(w: Word) -> Word:
    return Word(w.rank, tuple(-a for a in reversed(w.letters)))


@dataclass(frozen=True)
class FreeAut:
    """Endomorphism of F_rank given by generator images.

    ``inverse_images``, when present, are the images of the inverse map; the
    value is then a certified automorphism.  Equality ignores it.
    """

    rank: int
    images: Tuple[Word, ...]
    inverse_images: Optional[Tuple[Word, ...]] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.images) != self.rank:
            raise RankError(f"expected {self.rank} images, got {len(self.images)}")
        for w in self.images:
            if w.rank != self.rank:
                raise RankError("image rank mismatch")

    @property
    def verified(self) -> bool:
        return self.inverse_images is not None

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __str__(self) -> str:
        return ", ".join(f"x[{i}] -> {w}" for i, w in enumerate(self.images, 1))


def identity_aut(rank: int) -> FreeAut:
    gens = tuple(generator(i, rank) for i in range(1, rank + 1))
    return FreeAut(rank, gens, gens)


def apply(f: FreeAut, w: Word, *, cap: Optional[int] = None) -> Word:
    """Substitute generator images into ``w`` and reduce."""
    if f.rank != w.rank:
        raise RankError(f"rank mismatch: {f.rank} vs {w.rank}")
    stack: list = []
    images = f.images
    for a in w.letters:
        img = images[abs(a) - 1].letters
        _append(stack, img if a > 0 else [-b for b in reversed(img)])
    _check_length(len(stack), cap)
    return Word(w.rank, tuple(stack))


def _substitute(g_images: Tuple[Word, ...], f_images: Tuple[Word, ...], rank: int) -> Tuple[Word, ...]:
    g = FreeAut(rank, g_images)
    return tuple(apply(g, w) for w in f_images)


def compose(f: FreeAut, g: FreeAut) -> FreeAut:
    """``f`` then ``g``: maps compose left to right, x_i -> g(f(x_i))."""
    if f.rank != g.rank:
        raise RankError(f"rank mismatch: {f.rank} vs {g.rank}")
    images = _substitute(g.images, f.images, f.rank)
    inverse = None
    if f.inverse_images is not None and g.inverse_images is not None:
        # (f then g)^-1 = g^-1 then f^-1
        inverse = _substitute(f.inverse_images, g.inverse_images, f.rank)
    return FreeAut(f.rank, images, inverse)


def inverse(f: FreeAut) -> FreeAut:
    """Inverse of a certified automorphism."""
    if f.inverse_images is None:
        raise ValueError("automorphism has no recorded inverse")
    return FreeAut(f.rank, f.inverse_images, f.images)


def certify(f: FreeAut, candidate: FreeAut) -> FreeAut:
    """Return ``f`` with ``candidate`` recorded as its inverse after checking
    that both compositions fix every generator."""
    ident = identity_aut(f.rank)
    if compose(f, candidate) != ident or compose(candidate, f) != ident:
        raise ValueError("candidate is not a two-sided inverse")
    return FreeAut(f.rank, f.images, candidate.images)


def is_conjugate_of_generator(w: Word, i: int) -> bool:
    """True iff ``w`` is literally ``u x_i u^-1`` as a reduced word."""
    n = len(w.letters)
    if n % 2 == 0:
        return False
    mid = n // 2
    if w.letters[mid] != i:
        return False
    left, right = w.letters[:mid], w.letters[mid + 1:]
    return right == tuple(-a for a in reversed(left))


def random_word(rng: random.Random, rank: int, max_len: int) -> Word:
    """Reduction of a uniformly random raw word of length <= max_len."""
    length = rng.randint(0, max_len)
    return reduce([rng.choice((1, -1)) * rng.randint(1, rank) for _ in range(length)], rank)
