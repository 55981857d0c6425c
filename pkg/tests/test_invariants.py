import itertools
import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lantern import invariants as inv
from lantern.invariants import (
    LaurentPoly,
    char_H,
    char_L,
    char_lambda3H,
    decomposition_check,
    dim_U,
    gl_invariant_dim,
    parity_table,
    stability_probe,
    torus_invariant_dim,
)

GOLDEN = Path(__file__).parent / "golden"


def torus_average(f, weyl=False):
    """Quadrature oracle: mean over a grid of roots of unity fine enough to
    separate every exponent that can occur."""
    g = f.g
    span = max((max(abs(k) for k in e) for e in f.terms), default=0) + (g - 1 if weyl else 0)
    n = 2 * span + 1
    roots = np.exp(2j * np.pi * np.arange(n) / n)
    total = 0j
    for pt in itertools.product(roots, repeat=g):
        z = np.array(pt)
        val = sum(c * np.prod(z ** np.array(e)) for e, c in f.terms.items())
        if weyl:
            for i, j in itertools.permutations(range(g), 2):
                val *= 1 - z[i] / z[j]
        total += val
    mean = total / n**g
    if weyl:
        mean /= math.factorial(g)
    return mean


def test_char_examples():
    assert char_H(1) == LaurentPoly(1, {(1,): 1, (-1,): 1})
    assert char_H(1).evaluate_ones() == 2
    assert char_lambda3H(2).evaluate_ones() == 4
    assert char_lambda3H(3).evaluate_ones() == 20


@pytest.mark.parametrize("g", range(1, 31))
def test_binomial_dimension(g):
    assert char_lambda3H(g).evaluate_ones() == math.comb(2 * g, 3)


def test_genus_errors():
    with pytest.raises(ValueError):
        char_H(0)
    with pytest.raises(ValueError):
        dim_U(1)


def test_dim_U():
    # C(2g, 3) - 2g
    assert [dim_U(g) for g in (2, 3, 4)] == [4 - 4, 20 - 6, 56 - 8] == [0, 14, 48]


@pytest.mark.parametrize("g", range(1, 31))
def test_decomposition(g):
    assert decomposition_check(g)


def test_decomposition_small_numbers():
    assert math.comb(4, 3) == 0 + 2 * 2 * 1
    assert math.comb(6, 3) == 2 * 1 + 2 * 3 * 3


def test_torus_examples():
    for g in (1, 2, 3):
        assert torus_invariant_dim(char_H(g)) == 0
    assert torus_invariant_dim(char_H(1) ** 2) == 2
    assert torus_invariant_dim(char_lambda3H(2)) == 0


def test_torus_matches_quadrature():
    for f in [char_H(2) ** 2, char_lambda3H(2) ** 2, char_H(1) ** 4, char_lambda3H(3)]:
        assert abs(torus_average(f) - torus_invariant_dim(f)) < 1e-8


def test_gl_examples():
    assert gl_invariant_dim(char_L(2) * char_L(2, dual=True), 2) == 1
    assert gl_invariant_dim(char_H(2) ** 2, 2) == 2
    assert gl_invariant_dim(char_lambda3H(2), 2) == 0


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_gl_trivial_pairing(g):
    assert gl_invariant_dim(char_L(g) * char_L(g, dual=True), g) == 1


def test_gl_matches_quadrature():
    cases = [
        char_L(2) * char_L(2, dual=True),
        char_H(2) ** 2,
        char_lambda3H(2) ** 2,
        (char_L(2) * char_L(2, dual=True)) ** 2,
        char_H(3) ** 2,
    ]
    for f in cases:
        assert abs(torus_average(f, weyl=True) - gl_invariant_dim(f)) < 1e-8


def test_gl_schur_cross_check():
    # invariants of L^{⊗k} ⊗ L*^{⊗k} number k! once g >= k
    f = (char_L(3) * char_L(3, dual=True)) ** 2
    assert gl_invariant_dim(f) == 2


def test_gl_rejects_non_character():
    # x1 x2^-1 alone is not a GL character: constant term of the product is not divisible by 2!
    with pytest.raises(inv.NotACharacter):
        gl_invariant_dim(LaurentPoly.monomial((1, -1)))


def test_gl_bounded_by_torus():
    for g in (1, 2, 3):
        for m in (0, 1, 2):
            f = char_lambda3H(g) ** m
            assert gl_invariant_dim(f) <= torus_invariant_dim(f)
    for f in [char_H(2) ** 2, char_H(3) ** 2, char_L(3) * char_L(3, dual=True)]:
        assert gl_invariant_dim(f) <= torus_invariant_dim(f)


small_chars = st.sampled_from(
    [char_H(3), char_lambda3H(3), char_L(3, 2), char_L(3) * char_L(3, dual=True), char_H(3) * char_L(3, 2, dual=True)]
)


@given(small_chars, st.permutations(range(3)))
def test_gl_invariant_under_variable_permutation(f, perm):
    assert gl_invariant_dim(f.permute(tuple(perm))) == gl_invariant_dim(f)


def test_parity_table_odd_zero():
    table = parity_table(4, 4)
    for (g, m), d in table.items():
        if m % 2:
            assert d == 0
    assert table[(2, 1)] == 0 and table[(3, 3)] == 0


def test_parity_table_golden():
    golden = json.loads((GOLDEN / "parity_table.json").read_text())
    table = parity_table(4, 4)
    assert {(c["genus"], c["power"]): c["dim"] for c in golden["cells"]} == table


def test_stability_probe():
    assert set(stability_probe(1, range(1, 5))["dims"].values()) == {0}
    assert set(stability_probe(0, range(1, 5))["dims"].values()) == {1}
    golden = json.loads((GOLDEN / "stability_probe.json").read_text())
    probe = stability_probe(2, range(1, 7))
    assert {str(g): d for g, d in probe["dims"].items()} == golden["2"]["dims"]
    assert probe["stable"] == golden["2"]["stable"]


def test_resource_guard(monkeypatch):
    with pytest.raises(inv.ResourceCapExceeded):
        inv.invariant_dim(30, 4, "gl")
    with pytest.raises(inv.ResourceCapExceeded):
        inv.invariant_dim(3, 2, "torus", cap=10)
    monkeypatch.setenv(inv.TERM_CAP_ENV, "10")
    with pytest.raises(inv.ResourceCapExceeded):
        inv.invariant_dim(3, 2, "torus")
    with pytest.raises(inv.ResourceCapExceeded):
        inv.weyl_denominator(3)


def test_laurent_arithmetic():
    x = LaurentPoly.monomial((1, 0))
    y = LaurentPoly.monomial((0, -1))
    assert (x + y) * (x - y) == x * x - y * y
    assert (x - x).terms == {}
    with pytest.raises(ValueError):
        x + LaurentPoly.monomial((1,))
