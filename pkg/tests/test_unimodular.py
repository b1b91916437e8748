import random

import pytest

from sympcomp import (
    QQ,
    ZZ,
    AlternatingForm,
    CompletionRecord,
    ModularIntegers,
    UnimodRow,
    elementary,
    elementary_reduce,
    orbit_bfs,
    parse_element,
    parse_ring,
    pfaffian,
    polynomial_ring,
    power_row,
    psi,
    vaserstein_compose,
    vaserstein_matrix,
    vaserstein_readoff,
    vdk_product,
)
from sympcomp.errors import FirstCoordMismatch, NotUnimodular, PfaffianNotOne, WitnessBroken
from sympcomp.demo import random_word


def z(*xs):
    return [ZZ(x) for x in xs]


def test_unimod_row_witness():
    r = UnimodRow(z(3, 5, 7))
    assert sum((a * b for a, b in zip(r.entries, r.witness)), ZZ(0)).is_one()
    with pytest.raises(NotUnimodular):
        UnimodRow(z(2, 4, 6))
    with pytest.raises(WitnessBroken):
        UnimodRow(z(3, 5, 7), z(1, 1, 1))


def test_vaserstein_matrix_examples():
    assert vaserstein_matrix(z(1, 0, 0), z(1, 0, 0)).matrix == psi(2, ZZ)
    V = vaserstein_matrix(z(1, 0, 0), z(1, 5, 7))
    assert V.matrix.to_strings() == [["0", "1", "0", "0"], ["-1", "0", "7", "-5"],
                                     ["0", "-7", "0", "1"], ["0", "5", "-1", "0"]]
    assert pfaffian(V.matrix).is_one()
    with pytest.raises(WitnessBroken):
        vaserstein_matrix(z(2, 3, 5), z(-2, -1, 2))


def test_readoff_examples():
    row, w = vaserstein_readoff(AlternatingForm(psi(2, ZZ)))
    assert list(row.entries) == z(1, 0, 0) and w == z(1, 0, 0)
    V = vaserstein_matrix(z(2, 3, 5), z(-1, 1, 0))
    row, w = vaserstein_readoff(V)
    assert list(row.entries) == z(2, 3, 5) and w == z(-1, 1, 0)
    bad = AlternatingForm(psi(2, ZZ).scale(ZZ(2)))
    with pytest.raises(PfaffianNotOne):
        vaserstein_readoff(bad)


def test_readoff_round_trip_random():
    R = ModularIntegers(101)
    rng = random.Random(1)
    n = 0
    while n < 300:
        v = [R(rng.randrange(101)) for _ in range(3)]
        try:
            row = UnimodRow(v)
        except NotUnimodular:
            continue
        V = vaserstein_matrix(v, row.witness)
        assert pfaffian(V.matrix).is_one()
        back, w = vaserstein_readoff(AlternatingForm(V.matrix))
        assert list(back.entries) == v and w == list(row.witness)
        n += 1


def test_power_row():
    r = UnimodRow(z(2, 3, 0))
    assert power_row(r, 1) is r
    p = power_row(r, 2)
    assert list(p.entries) == z(4, 3, 0)
    assert list(p.witness) == z(1, -1, 0)
    P = polynomial_ring(QQ, ["x"])
    x = P.var("x")
    q = power_row(UnimodRow([x, P(1) - x, P(0)]), 3)
    assert list(q.entries) == [x ** 3, P(1) - x, P(0)]
    assert sum((a * b for a, b in zip(q.entries, q.witness)), P(0)).is_one()


def test_vaserstein_compose():
    v1 = UnimodRow(z(2, 3, 5), z(-1, 1, 0))
    v3 = vaserstein_compose(v1, UnimodRow(z(2, 1, 1)))
    assert list(v3.entries) == z(2, 3, 6)
    e = UnimodRow(z(1, 0, 0), z(1, 0, 0))
    assert list(vaserstein_compose(e, e).entries) == z(1, 0, 0)
    with pytest.raises(FirstCoordMismatch):
        vaserstein_compose(v1, UnimodRow(z(3, 1, 1)))


def test_vaserstein_compose_generic_is_unimodular():
    # over Q[a0,a1,a2,b0,b1,b2]/(a·b - 1) the composed row generates the unit ideal
    from sympcomp import quotient_ring, unimodularity_witness

    P = polynomial_ring(QQ, ["a0", "a1", "a2", "b0", "b1", "b2"])
    a = [P.var(f"a{i}") for i in range(3)]
    b = [P.var(f"b{i}") for i in range(3)]
    Q = quotient_ring(P, [a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - P(1)])
    a = [Q(t) for t in a]
    b = [Q(t) for t in b]
    v = UnimodRow(a, b)
    v3 = vaserstein_compose(v, v)
    assert unimodularity_witness(list(v3.entries)).check()


def test_vdk_product():
    I = CompletionRecord.identity(ZZ, 4)
    assert vdk_product(I, I).matrix.is_identity()
    A = CompletionRecord(UnimodRow(z(1, 2, 0, 0)), elementary(1, 2, ZZ(2), 4, ZZ))
    B = CompletionRecord(UnimodRow(z(1, 0, 3, 0)), elementary(1, 3, ZZ(3), 4, ZZ))
    assert list(vdk_product(A, B).row.entries) == z(1, 2, 3, 0)
    C = CompletionRecord(UnimodRow(z(1, 0, 0, 5)), elementary(1, 4, ZZ(5), 4, ZZ))
    assert vdk_product(vdk_product(A, B), C).matrix == vdk_product(A, vdk_product(B, C)).matrix


def test_vdk_orbit_commutative_z25():
    R = ModularIntegers(25)
    T = orbit_bfs(R, 4, "E")
    rng = random.Random(3)
    for _ in range(30):
        a = random_word(R, 4, rng).eval(R)
        b = random_word(R, 4, rng).eval(R)
        assert T.same_orbit((a @ b).row(0), (b @ a).row(0))


def test_completion_record_checks():
    with pytest.raises(ValueError):
        CompletionRecord(UnimodRow(z(1, 0)), elementary(1, 2, ZZ(1), 2, ZZ))


def test_elementary_reduce_euclid_path():
    v = z(3, 5, 7, 0)
    w = elementary_reduce(v)
    rows = [v]
    for L in w:
        rows.append(type(w)(4, [L], ZZ).apply_to_row(rows[-1]))
    assert rows[1] == z(3, 2, 7, 0)
    assert rows[2] == z(1, 2, 7, 0)
    assert rows[-1] == z(1, 0, 0, 0)


def test_elementary_reduce_examples():
    assert len(elementary_reduce(z(1, 0, 0, 0))) == 0
    Q = parse_ring("QQ[x]/(x^3)")
    v = [parse_element("1+x", Q), Q.var("x"), Q(0), Q(0)]
    w = elementary_reduce(v)
    assert w.apply_to_row(v) == [Q(1), Q(0), Q(0), Q(0)]
    assert w.is_elementary_only()


@pytest.mark.parametrize("key", ["ZZ", "ZZ/101", "ZZ/25", "QQ", "QQ[x]", "QQ[x]/(x^3)", "QQ[x,y]"])
def test_elementary_reduce_random(key):
    R = parse_ring(key)
    rng = random.Random(key)
    vars_ = tuple(getattr(R, "variables", ()))
    for _ in range(20):
        v = random_word(R, 4, rng, vars_=vars_).apply_to_row([R(1), R(0), R(0), R(0)])
        w = elementary_reduce(v)
        assert w.apply_to_row(v) == [R(1), R(0), R(0), R(0)]


def test_orbit_counts():
    T = orbit_bfs(ModularIntegers(5), 3, "E")
    assert T.num_rows == 124 and T.num_orbits == 1
    T = orbit_bfs(ModularIntegers(25), 3, "E")
    assert T.num_rows == 15500
    assert T.representative((7, 3, 1)) == (0, 0, 1)


def test_orbit_unit_generators_match_all_scalars():
    R = ModularIntegers(25)
    a = orbit_bfs(R, 3, "E", scalarpool="unit")
    b = orbit_bfs(R, 3, "E", scalarpool="all")
    assert a.same_partition(b)


def test_orbit_cells_closed_under_generators():
    R = ModularIntegers(4)
    T = orbit_bfs(R, 4, "ESp", scalarpool="all")
    from sympcomp.words import SE, GroupWord

    rng = random.Random(0)
    codes = list(T.codes)
    for _ in range(300):
        row = T.decode(int(rng.choice(codes)))
        i, j = rng.sample(range(1, 5), 2)
        img = GroupWord(4, [SE(i, j, R(rng.randrange(4)))], R).apply_to_row([R(x) for x in row])
        assert T.same_orbit(row, tuple(x.v for x in img))


@pytest.mark.parametrize("m", [5, 25])
def test_e_and_esp_partitions_agree(m):
    R = ModularIntegers(m)
    assert orbit_bfs(R, 4, "E").same_partition(orbit_bfs(R, 4, "ESp"))


def test_orbit_csv():
    T = orbit_bfs(ModularIntegers(3), 2, "E")
    text = T.to_csv()
    lines = text.strip().splitlines()
    assert lines[0] == "row,representative"
    assert len(lines) == T.num_rows + 1
