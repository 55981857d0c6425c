import random

import pytest

from lantern.parser import (
    BRAID,
    FREE,
    Atom,
    Context,
    Group,
    ParseError,
    Power,
    Product,
    flatten,
    parse_word,
    to_free_word,
    to_string,
)

HANDWRITTEN = [
    "T[1,2,3]*t[1]*t[2]*t[3]",
    "A[1,2]^-1",
    "x[1]",
    "x[1]*x[2]^-1",
    "(x[1]*x[2])^3",
    "((x[1]))",
    "T[1,2]*T[1,3]*T[2,3]",
    "s[1]*s[2]*s[1]",
    "(s[1]*s[2])^-3",
    "t[2]^0",
    "A[2,3]^+2",
    " T[1, 2 ] * t[ 3 ] ",
    "x[10]*x[11]^-12",
    "(T[1,2,3]^2*(A[1,3]*t[1])^-1)^2",
]


def random_expr(rng, depth=0):
    k = rng.random()
    if depth > 2 or k < 0.4:
        name = rng.choice("TAtxs")
        if name == "A":
            i = rng.randint(1, 5)
            node = Atom("A", (i, rng.randint(i + 1, 6)))
        elif name == "T":
            node = Atom("T", tuple(sorted(rng.sample(range(1, 7), rng.randint(1, 3)))))
        else:
            node = Atom(name, (rng.randint(1, 12),))
    elif k < 0.6:
        node = Group(random_expr(rng, depth + 1))
    else:
        node = Product(tuple(random_expr(rng, depth + 1) for _ in range(rng.randint(2, 4))))
        return node
    if rng.random() < 0.3:
        node = Power(node, rng.randint(-5, 5))
    return node


def corpus(seed=7):
    rng = random.Random(seed)
    generated = [to_string(random_expr(rng)) for _ in range(120)]
    return HANDWRITTEN + generated


def test_corpus_size():
    assert len(set(corpus())) >= 100


@pytest.mark.parametrize("text", corpus())
def test_round_trip(text):
    ast = parse_word(text)
    assert parse_word(to_string(ast)) == ast
    assert to_string(parse_word(to_string(ast))) == to_string(ast)


def test_lantern_lhs_shape():
    ast = parse_word("T[1,2,3]*t[1]*t[2]*t[3]", Context(BRAID, 3))
    assert isinstance(ast, Product) and len(ast.factors) == 4
    assert ast.factors[0] == Atom("T", (1, 2, 3))


def test_inverse_atom():
    assert parse_word("A[1,2]^-1") == Power(Atom("A", (1, 2)), -1)


REJECT = [
    ("T[1,2", 6),
    ("", 1),
    ("   ", 1),
    ("x[1]x[2]", 5),
    ("x[1] x[2]", 6),
    ("x[1]*", 6),
    ("*x[1]", 1),
    ("y[1]", 1),
    ("x[]", 3),
    ("x[1,]", 5),
    ("x1", 1),
    ("x[1]^", 6),
    ("x[1]^-", 7),
    ("x[1]^a", 6),
    ("(x[1]", 6),
    ("x[1])", 5),
    ("()", 2),
    ("x[-1]", 3),
    ("T[1;2]", 4),
    ("x[1]**x[2]", 6),
    ("Tee[1]", 1),
    ("x[1]^2^3", 7),
    ("[1]", 1),
    ("x[1]*(x[2]", 11),
]


@pytest.mark.parametrize("text,offset", REJECT)
def test_rejection(text, offset):
    with pytest.raises(ParseError) as err:
        parse_word(text)
    assert err.value.offset == offset
    assert 1 <= err.value.offset <= len(text) + 1
    assert err.value.as_dict()["offset"] == offset


CONTEXT_REJECT = [
    ("x[3]", Context(FREE, 2), 1),
    ("t[1]", Context(FREE, 2), 1),
    ("x[1]", Context(BRAID, 3), 1),
    ("t[4]", Context(BRAID, 3), 1),
    ("t[1]*s[3]", Context(BRAID, 3), 6),
    ("A[2,1]", Context(BRAID, 3), 1),
    ("A[1,2,3]", Context(BRAID, 3), 1),
    ("T[1,2,3]", Context(BRAID, 4), 1),
    ("T[2,2]", Context(BRAID, 3), 1),
    ("t[1,2]", Context(BRAID, 3), 1),
]


@pytest.mark.parametrize("text,ctx,offset", CONTEXT_REJECT)
def test_context_rejection(text, ctx, offset):
    with pytest.raises(ParseError) as err:
        parse_word(text, ctx)
    assert err.value.offset == offset


def test_flatten_powers_and_groups():
    letters = flatten(parse_word("(x[1]*x[2]^2)^-2*x[3]"))
    assert letters == [(("x", (2,)), -2), (("x", (1,)), -1)] * 2 + [(("x", (3,)), 1)]
    assert flatten(parse_word("t[1]^0")) == []


def test_to_free_word():
    w = to_free_word(parse_word("x[1]*x[2]*x[2]^-1*x[1]"))
    assert w.letters == (1, 1)
    assert to_free_word(parse_word("(x[1]*x[2])^-1"), 2).letters == (-2, -1)
