import random

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from sympcomp import (
    E,
    SE,
    ZZ,
    AlternatingForm,
    GroupWord,
    ModularIntegers,
    RingMatrix,
    UnimodRow,
    elementary,
    eval_word,
    is_symplectic,
    lemma24_decompose,
    orbit_to_esp,
    parse_ring,
    perp,
    psi,
    relative_congruent,
    se_generator,
    symplectic_reduce,
    transfer_to_sp_psi,
)
from sympcomp.errors import BadIndices
from sympcomp.demo import random_word
from sympcomp.words import sigma, sp_psi_member

from oracle import PSI2


def test_sigma_is_fixed_point_free_involution():
    for i in range(1, 9):
        assert sigma(sigma(i)) == i and sigma(i) != i
    assert [sigma(i) for i in range(1, 5)] == [2, 1, 4, 3]


def test_se_generator_first_case():
    z = ZZ(5)
    assert se_generator(1, 2, z, 4, ZZ) == elementary(1, 2, z, 4, ZZ)
    assert se_generator(2, 1, z, 4, ZZ) == elementary(2, 1, z, 4, ZZ)


def test_se13_matches_symbolic_oracle():
    # I + zE13 - zE42, checked symbolically against ψ₂
    z = sp.Symbol("z")
    S = sp.eye(4)
    S[0, 2], S[3, 1] = z, -z
    assert sp.simplify(S.T * PSI2 * S - PSI2) == sp.zeros(4, 4)
    M = se_generator(1, 3, ZZ(5), 4, ZZ)
    assert M.to_strings() == [["1", "0", "5", "0"], ["0", "1", "0", "0"],
                              ["0", "0", "1", "0"], ["0", "-5", "0", "1"]]
    assert is_symplectic(M)


def test_se_generator_bad_indices():
    with pytest.raises(BadIndices):
        se_generator(1, 1, ZZ(1), 4, ZZ)
    with pytest.raises(BadIndices):
        se_generator(1, 5, ZZ(1), 4, ZZ)


@pytest.mark.parametrize("key", ["ZZ", "ZZ/101", "QQ[x]/(x^3)"])
def test_every_se_generator_is_symplectic(key):
    R = parse_ring(key)
    rng = random.Random(key)
    for n in (4, 6):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                for _ in range(50):
                    z = R(rng.randint(-50, 50))
                    if "x" in key:
                        z = z + R(rng.randint(-3, 3)) * R.var("x")
                    assert is_symplectic(se_generator(i, j, z, n, R))


def test_eval_word_examples():
    assert eval_word(GroupWord(4, [], ZZ)) == RingMatrix.identity(ZZ, 4)
    assert eval_word(GroupWord(4, [E(1, 2, ZZ(3))], ZZ)) == elementary(1, 2, ZZ(3), 4, ZZ)
    assert eval_word(GroupWord(4, [E(1, 2, ZZ(1)), E(1, 2, ZZ(-1))], ZZ)).is_identity()


def test_inverse_words():
    rng = random.Random(2)
    for k in range(200):
        R = ZZ if k % 2 else ModularIntegers(101)
        w = random_word(R, 4, rng, maxlen=10)
        if k % 3 == 0:
            w = GroupWord(4, [SE(L.i, L.j, L.scalar) for L in w], R)
        assert (w.inverse().eval(R) @ w.eval(R)).is_identity()
        assert (w + w.inverse()).eval(R).is_identity()


def test_flavor():
    assert GroupWord(4, [E(1, 2, ZZ(1))], ZZ).flavor == "ElementaryOnly"
    assert GroupWord(4, [SE(1, 3, ZZ(1))], ZZ).flavor == "SymplecticOnly"
    assert GroupWord(4, [E(1, 2, ZZ(1)), SE(1, 3, ZZ(1))], ZZ).flavor == "Mixed"


def test_symplectic_only_words_evaluate_symplectic():
    rng = random.Random(8)
    for _ in range(100):
        w = random_word(ZZ, 6, rng)
        w = GroupWord(6, [SE(L.i, L.j, L.scalar) for L in w], ZZ)
        assert is_symplectic(w.eval(ZZ))


def test_is_symplectic_examples():
    assert is_symplectic(RingMatrix.identity(ZZ, 4))
    assert not is_symplectic(elementary(1, 3, ZZ(1), 4, ZZ))


def test_sp_psi_member():
    P2 = AlternatingForm(psi(2, ZZ))
    assert sp_psi_member(RingMatrix.identity(ZZ, 4), P2)
    assert sp_psi_member(se_generator(1, 2, ZZ(4), 4, ZZ), P2)
    Q = parse_ring("QQ")
    two = RingMatrix.identity(Q, 4).scale(Q(2))
    assert not sp_psi_member(two, AlternatingForm(psi(2, Q)))


def test_relative_congruent():
    P = parse_ring("QQ[x]")
    x = P.var("x")
    assert relative_congruent(RingMatrix.identity(ZZ, 4), [ZZ(2)])
    assert relative_congruent(elementary(1, 2, x, 4, P), [x])
    assert not relative_congruent(elementary(1, 2, ZZ(1), 4, ZZ), [ZZ(2)])


def _decomposition_holds(eps, R):
    res = lemma24_decompose(eps, R)
    one = RingMatrix.identity(R, 1)
    prod = eps.eval(R) @ perp(one, res.rho.eval(R))
    return res, is_symplectic(prod) and prod == res.delta.eval(R) and res.delta.is_symplectic_only()


def test_decompose_examples():
    res, ok = _decomposition_holds(GroupWord(4, [], ZZ), ZZ)
    assert ok and len(res.rho) == 0
    res, ok = _decomposition_holds(GroupWord(4, [E(1, 2, ZZ(5))], ZZ), ZZ)
    assert ok and len(res.rho) == 0
    res, ok = _decomposition_holds(GroupWord(4, [E(1, 3, ZZ(5))], ZZ), ZZ)
    assert ok and res.rho.size == 3
    assert list(res.rho) == [E(3, 1, ZZ(-5))]


@pytest.mark.parametrize("R", [ZZ, ModularIntegers(101)])
def test_decompose_random(R):
    rng = random.Random(R.key)
    for _ in range(100):
        assert _decomposition_holds(random_word(R, rng.choice((4, 6, 8)), rng), R)[1]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4), st.integers(-9, 9)), max_size=8))
def test_decompose_property(letters):
    w = GroupWord(4, [E(i, j, ZZ(s)) for i, j, s in letters if i != j], ZZ)
    assert _decomposition_holds(w, ZZ)[1]


def test_decompose_over_local_quotient():
    Q = parse_ring("QQ[x]/(x^3)")
    rng = random.Random(4)
    for _ in range(30):
        assert _decomposition_holds(random_word(Q, 4, rng, vars_=("x",)), Q)[1]


def test_transfer_examples():
    P2 = AlternatingForm(psi(2, ZZ))
    t = transfer_to_sp_psi(GroupWord(4, [], ZZ), P2, ZZ)
    assert t.matrix.is_identity()
    t = transfer_to_sp_psi(GroupWord(4, [E(2, 1, ZZ(5))], ZZ), P2, ZZ)
    assert t.matrix.is_identity()
    t = transfer_to_sp_psi(GroupWord(4, [E(1, 2, ZZ(5))], ZZ), P2, ZZ)
    assert t.matrix == se_generator(1, 2, ZZ(5), 4, ZZ)
    assert t.word.eval(ZZ) == t.matrix


def _transfer_holds(eps, form, R):
    t = transfer_to_sp_psi(eps, form, R)
    return (t.matrix.row(0) == eps.eval(R).row(0) and sp_psi_member(t.matrix, form)
            and t.word.eval(R) == t.matrix and t.word.is_elementary_only())


def test_transfer_random_standard_form():
    rng = random.Random(9)
    for R in (ZZ, ModularIntegers(101)):
        form = AlternatingForm(psi(2, R))
        for _ in range(40):
            assert _transfer_holds(random_word(R, 4, rng), form, R)


def test_transfer_exotic_forms():
    # forms φ^Tψφ congruent to ψ but not equal to it, plus Vaserstein forms
    from sympcomp.unimodular import vaserstein_matrix

    rng = random.Random(10)
    for _ in range(30):
        phi = random_word(ZZ, 4, rng, maxlen=4).eval(ZZ)
        form = AlternatingForm(phi.T @ psi(2, ZZ) @ phi)
        assert _transfer_holds(random_word(ZZ, 4, rng), form, ZZ)
    V = vaserstein_matrix([ZZ(3), ZZ(5), ZZ(7)], [ZZ(2), ZZ(-1), ZZ(0)])
    for _ in range(10):
        assert _transfer_holds(random_word(ZZ, 4, rng), V, ZZ)


def test_orbit_to_esp_examples():
    e1 = UnimodRow([ZZ(1), ZZ(0), ZZ(0), ZZ(0)])
    assert len(orbit_to_esp(e1, GroupWord(4, [], ZZ), ZZ)) == 0
    assert list(orbit_to_esp(e1, GroupWord(4, [E(1, 2, ZZ(5))], ZZ), ZZ)) == [SE(1, 2, ZZ(5))]
    assert list(orbit_to_esp(e1, GroupWord(4, [E(1, 3, ZZ(5))], ZZ), ZZ)) == [SE(1, 3, ZZ(5))]


def test_orbit_to_esp_random():
    rng = random.Random(12)
    for R in (ZZ, ModularIntegers(101), parse_ring("QQ[x]/(x^3)")):
        vars_ = ("x",) if "x" in R.key else ()
        for _ in range(40):
            v = random_word(R, 4, rng, vars_=vars_).apply_to_row([R(1), R(0), R(0), R(0)])
            eps = random_word(R, 4, rng, vars_=vars_)
            mu = orbit_to_esp(UnimodRow(v), eps, R)
            assert mu.is_symplectic_only()
            assert mu.apply_to_row(v) == eps.apply_to_row(v)


def test_symplectic_reduce_examples():
    e1 = [ZZ(1), ZZ(0), ZZ(0), ZZ(0)]
    assert len(symplectic_reduce(e1)) == 0
    assert list(symplectic_reduce([ZZ(1), ZZ(4), ZZ(0), ZZ(0)])) == [SE(1, 2, ZZ(-4))]
    w = symplectic_reduce([ZZ(3), ZZ(5), ZZ(7), ZZ(0)])
    assert w.is_symplectic_only()
    assert w.apply_to_row([ZZ(3), ZZ(5), ZZ(7), ZZ(0)]) == e1


def test_word_json_round_trip():
    R = parse_ring("QQ[x]/(x^3)")
    w = GroupWord(4, [E(1, 2, R.var("x")), SE(3, 1, R("1/2"))], R)
    assert GroupWord.from_json(w.to_json(), R, 4) == w
