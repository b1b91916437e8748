import random

import pytest
import sympy as sp

from sympcomp import (
    ZZ,
    ModularIntegers,
    RingMatrix,
    StepFailed,
    check_contract,
    complete_row,
    det,
    graded_complete,
    parse_ring,
    polynomial_ring,
    relative_complete,
    relative_congruent,
    relative_word,
    swan_towber,
    swan_towber_matrix,
    symplectic_complete,
    theorem34_trace,
)
from sympcomp.demo import e1_times, graded_rows, random_word, relative_cases
from sympcomp.errors import LiftUnsupported, NoStrategy, NotUnimodular, RelationBroken
from sympcomp.rings import QQ

from oracle import contract_holds, det_is_one


def z(*xs):
    return [ZZ(x) for x in xs]


def test_swan_towber_symbolic_determinant():
    # independent check: det of the 3×3 closed form is 1 modulo pa + qb + rc - 1
    p, q, r, a, b, c = sp.symbols("p q r a b c")
    M = sp.Matrix([
        [a**2, b, c],
        [b + r * a, -r**2 + p * r * b, -p + q * r - p * q * b],
        [c - q * a, p + q * r + p * r * c, -q**2 - p * q * c],
    ])
    G = sp.groebner([p * a + q * b + r * c - 1], p, q, r, a, b, c, order="grevlex")
    assert G.reduce(sp.expand(M.det() - 1))[1] == 0


def test_swan_towber_examples():
    rec = swan_towber(*z(1, 0, 0, 1, 0, 0))
    assert rec.matrix.to_strings() == [["1", "0", "0"], ["0", "0", "-1"], ["0", "1", "0"]]
    rec = swan_towber(*z(2, -1, 0, 3, 5, 7))
    # frozen from the sympy closed form above
    assert rec.matrix.to_strings() == [["9", "5", "7"], ["5", "0", "8"], ["10", "2", "13"]]
    assert det(rec.matrix).is_one()
    assert list(rec.row.entries) == z(9, 5, 7)
    with pytest.raises(RelationBroken):
        swan_towber(*z(1, 1, 1, 1, 1, 1))


def test_swan_towber_random_z101():
    R = ModularIntegers(101)
    rng = random.Random(0)
    done = 0
    while done < 100:
        a, b, c, q, r = (R(rng.randrange(101)) for _ in range(5))
        if a.inverse() is None:
            continue
        p = (R(1) - q * b - r * c) * a.inverse()
        M = swan_towber_matrix(p, q, r, a, b, c)
        assert det(M).is_one() and M.row(0) == [a * a, b, c]
        done += 1


def test_complete_row_examples():
    assert complete_row(z(1, 0, 0)).matrix.is_identity()
    rec = complete_row(z(3, 5, 7))
    assert rec.matrix.row(0) == z(3, 5, 7) and det(rec.matrix).is_one()
    rec = complete_row(z(9, 5, 7), swan_towber_data=z(2, -1, 0, 3))
    assert rec.matrix.to_strings()[1] == ["5", "0", "8"]
    with pytest.raises(NoStrategy):
        complete_row(z(3, 5, 7), swan_towber_data=z(2, -1, 0, 3))
    with pytest.raises(NotUnimodular):
        complete_row(z(2, 4, 6))


def test_symplectic_complete():
    theta, mu = symplectic_complete(z(3, 5, 7, 11))
    assert check_contract(theta, z(3, 5, 7, 11))
    assert contract_holds(theta, z(3, 5, 7, 11), "ZZ")
    assert mu.is_symplectic_only()


def test_trace_examples():
    tr = theorem34_trace(z(1, 0, 0, 0))
    assert tr.theta.is_identity()
    tr = theorem34_trace(z(1, 4, -2, 9))
    assert tr.complete and all(tr.verify().values())
    assert contract_holds(tr.theta, z(1, 4, -2, 9), "ZZ")
    assert det_is_one(tr.theta, "ZZ")


@pytest.mark.parametrize("key", ["ZZ", "ZZ/101", "QQ[x]/(x^3)"])
def test_trace_random(key):
    R = parse_ring(key)
    rng = random.Random(key)
    vars_ = tuple(getattr(R, "variables", ()))
    for _ in range(15):
        v = e1_times(random_word(R, 4, rng, vars_=vars_))
        tr = theorem34_trace(v)
        assert all(tr.verify().values())
        assert contract_holds(tr.theta, v, key)


def test_trace_json():
    tr = theorem34_trace(z(3, 5, 7, 0))
    steps = [s["step"] for s in tr.to_json()]
    assert steps[0] == "sigma" and steps[-1] == "theta"
    assert set(steps) <= set(tr.STEPS)


def test_trace_rejects_bad_sigma():
    from sympcomp import CompletionRecord, UnimodRow, elementary

    # σ completes a different row, so the first step must fail by name
    bad = CompletionRecord(UnimodRow(z(1, 2, 0, 0)), elementary(1, 2, ZZ(2), 4, ZZ))
    with pytest.raises(StepFailed) as err:
        theorem34_trace(z(1, 0, 0, 0), sigma=bad)
    assert err.value.step == "sigma"
    assert err.value.trace.flags == {"sigma": False}


def test_trace_requires_length_four():
    with pytest.raises(ValueError):
        theorem34_trace(z(1, 0, 0))


def test_relative_examples():
    theta = relative_complete(z(3, 2, 0, 0), [ZZ(2)])
    assert theta.row(0) == z(3, 2, 0, 0)
    assert relative_congruent(theta, [ZZ(2)]) and contract_holds(theta, z(3, 2, 0, 0), "ZZ")
    P = polynomial_ring(QQ, ["x"])
    x = P.var("x")
    v = [P(1) + x, x, P(0), P(0)]
    theta = relative_complete(v, [x])
    assert relative_congruent(theta, [x]) and contract_holds(theta, v, "QQ[x]")
    assert relative_complete(z(1, 0, 0, 0), [ZZ(2)]).is_identity()


def test_relative_rejects_rows_off_e1():
    with pytest.raises(LiftUnsupported):
        relative_complete(z(3, 1, 0, 0), [ZZ(2)])


def test_relative_word_letters():
    mu = relative_word(z(3, 2, 4, 6), [ZZ(2)])
    assert mu.is_symplectic_only()
    assert mu.apply_to_row(z(3, 2, 4, 6)) == z(1, 0, 0, 0)


def test_relative_random():
    for R, g, v in relative_cases(10, seed=3):
        theta = relative_complete(v, [g])
        assert check_contract(theta, v) and relative_congruent(theta, [g])
        assert contract_holds(theta, v, R.key)


def test_graded_examples():
    P = polynomial_ring(QQ, ["x", "y"])
    x, y = P.var("x"), P.var("y")
    v = [P(1) + x, y, x, P(0)]
    theta = graded_complete(v)
    assert contract_holds(theta, v, "QQ[x,y]")
    with pytest.raises(NotUnimodular):
        graded_complete([P(1) + x, y, P(0), P(0)])
    assert graded_complete([P(1), P(0), P(0), P(0)]).is_identity()


def test_graded_random():
    for v in graded_rows(5, seed=4):
        assert check_contract(graded_complete(v), v)


def test_graded_non_polynomial_ring():
    theta = graded_complete(z(3, 5, 7, 0))
    assert check_contract(theta, z(3, 5, 7, 0))


def test_graded_trace_records_steps():
    P = polynomial_ring(QQ, ["x"])
    x = P.var("x")
    trace = []
    graded_complete([P(1) + x, x, P(0), P(0)], trace=trace)
    assert [s["step"] for s in trace] == ["homotopy_row", "degree0", "word", "theta"]


def test_routes_agree_on_the_contract():
    rng = random.Random(5)
    for _ in range(20):
        v = e1_times(random_word(ZZ, 4, rng))
        a = theorem34_trace(v).theta
        b, _ = symplectic_complete(v)
        assert a.row(0) == b.row(0) == v
        # two completions differ by a symplectic matrix fixing e_1
        assert check_contract(a @ b.inverse(), z(1, 0, 0, 0))


def test_check_contract_rejects():
    assert not check_contract(RingMatrix.identity(ZZ, 4), z(1, 1, 0, 0))
    assert not check_contract(RingMatrix.identity(ZZ, 3), z(1, 0, 0))
