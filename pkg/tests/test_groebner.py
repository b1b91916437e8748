import random

import pytest
import sympy as sp

from sympcomp import QQ, ModularIntegers, ZZ, groebner_with_cofactors, polynomial_ring
from sympcomp.errors import UnsupportedCoefficients


def _check_table(gens, basis, table):
    for b, row in zip(basis, table):
        total = gens[0].ring.zero_elem
        for c, g in zip(row, gens):
            total = total + c * g
        assert total == b


def test_monomials_are_their_own_basis():
    P = polynomial_ring(QQ, ["x", "y"])
    x, y = P.var("x"), P.var("y")
    basis, table = groebner_with_cofactors([x, y], order="lex")
    pairs = sorted(zip(basis, table), key=lambda bt: str(bt[0]))
    assert pairs == [(x, [P(1), P(0)]), (y, [P(0), P(1)])]


def test_unit_ideal_with_cofactors():
    P = polynomial_ring(QQ, ["x"])
    x = P.var("x")
    gens = [x * x + P(1), x]
    basis, table = groebner_with_cofactors(gens)
    assert basis == [P(1)]
    assert table == [[P(1), -x]]
    _check_table(gens, basis, table)


def test_single_generator_is_reduced():
    P = polynomial_ring(QQ, list("pqrabc"))
    p, q, r, a, b, c = (P.var(v) for v in "pqrabc")
    f = p * a + q * b + r * c - P(1)
    basis, table = groebner_with_cofactors([f])
    assert basis == [f]
    assert table == [[P(1)]]


def test_non_field_coefficients_rejected():
    P = polynomial_ring(ZZ, ["x"])
    with pytest.raises(UnsupportedCoefficients):
        groebner_with_cofactors([P.var("x")])


@pytest.mark.parametrize("order", ["grevlex", "lex"])
def test_basis_matches_sympy(order):
    P = polynomial_ring(QQ, ["x", "y", "z"])
    x, y, z = (P.var(v) for v in "xyz")
    gens = [x * x - y, y * y - z * x, x * y * z - P(1)]
    basis, table = groebner_with_cofactors(gens, order=order)
    _check_table(gens, basis, table)
    X, Y, Z = sp.symbols("x y z")
    ref = sp.groebner([X**2 - Y, Y**2 - Z * X, X * Y * Z - 1], X, Y, Z, order=order)
    ours = [sp.sympify(str(b).replace("^", "**")) for b in basis]

    def monic(gs):
        return sorted((sp.expand(g / sp.Poly(g, X, Y, Z).LC()) for g in gs), key=str)

    assert monic(ref.exprs) == monic(ours)


def test_deterministic():
    P = polynomial_ring(ModularIntegers(7), ["x", "y"])
    rng = random.Random(3)
    gens = []
    for _ in range(3):
        f = P(rng.randint(0, 6))
        for _ in range(3):
            f = f + P(rng.randint(0, 6)) * P.var("x") ** rng.randint(0, 3) * P.var("y") ** rng.randint(0, 3)
        gens.append(f)
    a = groebner_with_cofactors(gens)
    b = groebner_with_cofactors(list(gens))
    assert [g.v for g in a[0]] == [g.v for g in b[0]]
    assert [[c.v for c in r] for r in a[1]] == [[c.v for c in r] for r in b[1]]
    _check_table(gens, *a)
