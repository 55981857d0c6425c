"""Recursive-descent parser for group words.

Grammar::

    expr   := factor { "*" factor }
    factor := atom [ "^" signed-integer ]
    atom   := NAME "[" int { "," int } "]" | "(" expr ")"

NAME is one of ``T`` (band twist), ``A`` (pure braid A_ij), ``t`` (framing
twist), ``x`` (free generator) or ``s`` (Artin generator).  Whitespace
between tokens is ignored; juxtaposition is an error.  Error offsets are
1-based character positions, so an error at end of input points one past
the last character.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from .free_group import Word, reduce

NAMES = ("T", "A", "t", "x", "s")
FREE = "free"
BRAID = "braid"


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"offset {offset}: {message}")
        self.message = message
        self.offset = offset
        self.text = text

    def as_dict(self) -> dict:
        return {"error": "parse", "message": self.message, "offset": self.offset}


@dataclass(frozen=True)
class Atom:
    name: str
    indices: Tuple[int, ...]
    pos: int = 0

    def __str__(self) -> str:
        return f"{self.name}[{','.join(map(str, self.indices))}]"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Atom):
            return NotImplemented
        return (self.name, self.indices) == (other.name, other.indices)

    def __hash__(self):
        return hash((self.name, self.indices))


@dataclass(frozen=True)
class Group:
    expr: "Node"

    def __str__(self) -> str:
        return f"({self.expr})"


@dataclass(frozen=True)
class Power:
    base: Union[Atom, Group]
    exponent: int

    def __str__(self) -> str:
        return f"{self.base}^{self.exponent}"


@dataclass(frozen=True)
class Product:
    factors: Tuple["Node", ...]

    def __str__(self) -> str:
        return "*".join(str(f) for f in self.factors)


Node = Union[Atom, Group, Power, Product]


@dataclass(frozen=True)
class Context:
    """Alphabet and size used to validate generator indices."""

    alphabet: str = BRAID
    n: Optional[int] = None


class _Parser:
    def __init__(self, text: str, ctx: Optional[Context]):
        self.text = text
        self.i = 0
        self.ctx = ctx

    def error(self, message: str, at: Optional[int] = None):
        raise ParseError(message, (self.i if at is None else at) + 1, self.text)

    def skip(self) -> None:
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch: str) -> None:
        got = self.peek()
        if got != ch:
            self.error(f"expected {ch!r}, found {got!r}" if got else f"expected {ch!r}, found end of input")
        self.i += 1

    def integer(self, signed: bool = False) -> int:
        self.skip()
        start = self.i
        if signed and self.i < len(self.text) and self.text[self.i] in "+-":
            self.i += 1
        digits = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if self.i == digits:
            self.i = digits
            self.error("expected an integer")
        return int(self.text[start:self.i])

    def parse(self) -> Node:
        if not self.text.strip():
            self.error("empty input")
        node = self.expr()
        if self.peek():
            ch = self.peek()
            if ch in NAMES or ch == "(":
                self.error("juxtaposition is not allowed; use '*' between factors")
            self.error(f"unexpected {ch!r}")
        return node

    def expr(self) -> Node:
        factors = [self.factor()]
        while self.peek() == "*":
            self.i += 1
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Node:
        base = self.atom()
        if self.peek() == "^":
            self.i += 1
            return Power(base, self.integer(signed=True))
        return base

    def atom(self) -> Union[Atom, Group]:
        ch = self.peek()
        if ch == "(":
            self.i += 1
            inner = self.expr()
            self.expect(")")
            return Group(inner)
        if not ch:
            self.error("expected a generator or '(', found end of input")
        start = self.i
        if not ch.isalpha():
            self.error(f"expected a generator or '(', found {ch!r}")
        while self.i < len(self.text) and self.text[self.i].isalnum():
            self.i += 1
        name = self.text[start:self.i]
        if name not in NAMES:
            self.error(f"unknown generator {name!r}", start)
        self.expect("[")
        indices = [self.integer()]
        while self.peek() == ",":
            self.i += 1
            indices.append(self.integer())
        self.expect("]")
        atom = Atom(name, tuple(indices), start)
        if self.ctx is not None:
            problem = _validate(atom, self.ctx)
            if problem:
                self.error(problem, start)
        return atom


def _validate(atom: Atom, ctx: Context) -> Optional[str]:
    name, idx, n = atom.name, atom.indices, ctx.n
    if ctx.alphabet == FREE:
        if name != "x":
            return f"generator {name!r} is not in the free-group alphabet"
        if len(idx) != 1:
            return "x takes exactly one index"
        if idx[0] < 1 or (n is not None and idx[0] > n):
            return f"index {idx[0]} out of range for rank {n}"
        return None
    if name == "x":
        return "free generator 'x' is not in the braid alphabet"
    if name == "t" and len(idx) != 1:
        return "t takes exactly one strand index"
    if name == "s" and len(idx) != 1:
        return "s takes exactly one index"
    if name == "A" and len(idx) != 2:
        return "A takes exactly two strand indices"
    if name in ("A", "T") and list(idx) != sorted(set(idx)):
        return f"{name} indices must be strictly increasing"
    top = None if n is None else (n - 1 if name == "s" else n)
    for k in idx:
        if k < 1 or (top is not None and k > top):
            return f"index {k} out of range for {n} strands"
    if name == "T" and n is not None and len(idx) > 2 and idx != tuple(range(1, n + 1)):
        return "band twists are supported on one strand, a pair, or all strands"
    return None


def parse_word(text: str, ctx: Optional[Context] = None) -> Node:
    return _Parser(text, ctx).parse()


def to_string(node: Node) -> str:
    return str(node)


def atoms(node: Node) -> List[Atom]:
    if isinstance(node, Atom):
        return [node]
    if isinstance(node, Group):
        return atoms(node.expr)
    if isinstance(node, Power):
        return atoms(node.base)
    return [a for f in node.factors for a in atoms(f)]


Letters = List[Tuple[Tuple[str, Tuple[int, ...]], int]]


def _invert_letters(letters: Letters) -> Letters:
    return [(a, -p) for a, p in reversed(letters)]


def flatten(node: Node) -> Letters:
    """Expand groups and powers into ``((name, indices), power)`` letters."""
    if isinstance(node, Atom):
        return [((node.name, node.indices), 1)]
    if isinstance(node, Group):
        return flatten(node.expr)
    if isinstance(node, Power):
        if isinstance(node.base, Atom):
            b = node.base
            return [((b.name, b.indices), node.exponent)] if node.exponent else []
        inner = flatten(node.base)
        if node.exponent < 0:
            inner = _invert_letters(inner)
        return inner * abs(node.exponent)
    return [letter for f in node.factors for letter in flatten(f)]


def alphabet_of(node: Node) -> str:
    names = {a.name for a in atoms(node)}
    if names == {"x"}:
        return FREE
    if "x" in names:
        raise ValueError("word mixes free generators with braid generators")
    return BRAID


def to_free_word(node: Node, rank: Optional[int] = None) -> Word:
    letters = flatten(node)
    if rank is None:
        rank = max((idx[0] for (name, idx), _ in letters), default=1)
    raw = []
    for (name, idx), p in letters:
        if name != "x":
            raise ValueError(f"{name}{list(idx)} is not a free generator")
        raw.extend([idx[0] if p > 0 else -idx[0]] * abs(p))
    return reduce(raw, rank)
