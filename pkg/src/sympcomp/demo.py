"""Desk-scale demonstration suites.

Each suite returns ``(passed, detail)``; sizes default to the acceptance
sizes and every check is exact.
"""

import copy
import random
import time

from .certificates import completion_certificate, orbit_report, verify_payload, witt_certificate
from .completion import (
    check_contract,
    graded_complete,
    relative_complete,
    swan_towber_matrix,
    symplectic_complete,
    theorem34_trace,
)
from .graded import eval_at, excision_ring, grade_decompose, swan_weibel
from .matrix import AlternatingForm, RingMatrix, det, perp, pfaffian, psi
from .rings import QQ, ZZ, ModularIntegers, polynomial_ring, quotient_ring, unimodularity_witness
from .unimodular import UnimodRow, orbit_bfs, power_row, vaserstein_compose, vaserstein_matrix, vaserstein_readoff
from .witt import change_witness
from .words import E, GroupWord, is_symplectic, lemma24_decompose, relative_congruent


def random_scalar(R, rng, vars_=(), span=5):
    out = R(rng.randint(-span, span))
    for v in vars_:
        if rng.random() < 0.5:
            out = out + R(rng.randint(-2, 2)) * R.var(v) ** rng.randint(1, 2)
    return out


def random_alternating(R, n, rng, span=9):
    rows = [[R.zero_elem] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = R(rng.randint(-span, span))
            rows[i][j], rows[j][i] = x, -x
    return RingMatrix(R, rows, n)


def random_matrix(R, n, rng, span=5):
    return RingMatrix(R, [[R(rng.randint(-span, span)) for _ in range(n)] for _ in range(n)], n)


def random_word(R, n, rng, maxlen=8, vars_=(), scale=None):
    letters = []
    for _ in range(rng.randint(0, maxlen)):
        i, j = rng.sample(range(1, n + 1), 2)
        s = random_scalar(R, rng, vars_)
        if scale is not None:
            s = s * scale
        letters.append(E(i, j, s))
    return GroupWord(n, letters, R)


def e1_times(word):
    R = word.ring
    row = [R.one_elem] + [R.zero_elem] * (word.size - 1)
    return word.apply_to_row(row)


def standard_rings():
    P = polynomial_ring(QQ, ["x"])
    return {"ZZ": ZZ, "ZZ/101": ModularIntegers(101), "QQ[x]/(x^3)": quotient_ring(P, [P.var("x") ** 3])}


# ---------------------------------------------------------------- suites


def suite_pfaffian(n_random=500, n_transport=200, seed=0):
    rng = random.Random(seed)
    fails = 0
    for k in range(n_random):
        R = ZZ if k % 2 == 0 else ModularIntegers(101)
        V = random_alternating(R, rng.choice((2, 4, 6)), rng)
        fails += det(V) != pfaffian(V) ** 2
    for k in range(n_transport):
        R = ZZ if k % 2 == 0 else ModularIntegers(101)
        V = random_alternating(R, 4, rng)
        phi = random_matrix(R, 4, rng)
        fails += pfaffian(phi.T @ V @ phi) != pfaffian(V) * det(phi)
    for r in range(1, 5):
        fails += not pfaffian(psi(r, ZZ)).is_one()
    return fails == 0, f"{n_random + n_transport + 4} checks, {fails} failures"


def suite_swan_towber_symbolic():
    P = polynomial_ring(QQ, ["p", "q", "r", "a", "b", "c"])
    p, q, r, a, b, c = (P.var(x) for x in "pqrabc")
    Q = quotient_ring(P, [p * a + q * b + r * c - P(1)])
    p, q, r, a, b, c = (Q(x) for x in (p, q, r, a, b, c))
    M = swan_towber_matrix(p, q, r, a, b, c)
    nf = det(M) - Q(1)
    return nf.is_zero(), f"normal form of det(M) - 1 is {nf}"


def suite_vaserstein(n=300, seed=0):
    rng = random.Random(seed)
    R = ModularIntegers(101)
    fails = 0
    done = 0
    while done < n:
        v = [R(rng.randrange(101)) for _ in range(3)]
        try:
            w = list(unimodularity_witness(v).cofactors)
        except Exception:
            continue
        # randomize the witness inside its coset w + (vectors orthogonal to v)
        t = [R(rng.randrange(101)) for _ in range(3)]
        cross = [v[1] * t[2] - v[2] * t[1], v[2] * t[0] - v[0] * t[2], v[0] * t[1] - v[1] * t[0]]
        w = [a + b for a, b in zip(w, cross)]
        V = vaserstein_matrix(v, w)
        row, w2 = vaserstein_readoff(AlternatingForm(V.matrix))
        fails += not pfaffian(V.matrix).is_one() or list(row.entries) != v or w2 != w
        done += 1
    return fails == 0, f"{n} pairs, {fails} failures"


def suite_lemma24(n=100, seed=0):
    rng = random.Random(seed)
    fails = 0
    for k in range(n):
        R = ZZ if k % 2 == 0 else ModularIntegers(101)
        size = rng.choice((4, 6))
        eps = random_word(R, size, rng)
        res = lemma24_decompose(eps, R)
        one = RingMatrix.identity(R, 1)
        prod = eps.eval(R) @ perp(one, res.rho.eval(R))
        fails += not is_symplectic(prod) or prod != res.delta.eval(R)
    return fails == 0, f"{n} words, {fails} failures"


def suite_trace(n=100, seed=0, rings=None, limit=5.0):
    rng = random.Random(seed)
    fails = 0
    worst = 0.0
    rings = rings or standard_rings()
    for key, R in rings.items():
        vars_ = ("x",) if "x" in key else ()
        for _ in range(n):
            v = e1_times(random_word(R, 4, rng, vars_=vars_))
            t = time.perf_counter()
            tr = theorem34_trace(v)
            dt = time.perf_counter() - t
            worst = max(worst, dt)
            fails += not (tr.complete and check_contract(tr.theta, v)) or dt >= limit
    return fails == 0, f"{n} rows x {len(rings)} rings, {fails} failures, slowest {worst:.2f}s"


def relative_cases(n=25, seed=0):
    rng = random.Random(seed)
    P = polynomial_ring(QQ, ["x"])
    out = []
    for R, g, vars_ in ((ZZ, ZZ(2), ()), (P, P.var("x"), ("x",))):
        for _ in range(n):
            out.append((R, g, e1_times(random_word(R, 4, rng, vars_=vars_, scale=g))))
    return out


def suite_relative(n=25, seed=0):
    fails = 0
    cases = relative_cases(n, seed)
    for R, g, v in cases:
        theta = relative_complete(v, [g])
        fails += not (check_contract(theta, v) and relative_congruent(theta, [g]))
    return fails == 0, f"{len(cases)} rows, {fails} failures"


def graded_rows(n=25, seed=0):
    rng = random.Random(seed)
    out = []
    for names in (["x"], ["x", "y"]):
        R = polynomial_ring(QQ, names)
        for _ in range(n):
            out.append(e1_times(random_word(R, 4, rng, maxlen=6, vars_=names)))
    return out


def random_poly(R, rng, names, terms=4, deg=3):
    out = R(rng.randint(-3, 3))
    for _ in range(terms):
        m = R(rng.randint(-3, 3))
        for x in names:
            m = m * R.var(x) ** rng.randint(0, deg)
        out = out + m
    return out


def suite_graded(n=25, n_elems=500, seed=0):
    rng = random.Random(seed)
    fails = 0
    rows = graded_rows(n, seed)
    for v in rows:
        fails += not check_contract(graded_complete(v), v)
    R = polynomial_ring(QQ, ["x", "y"])
    T = None
    for _ in range(n_elems):
        a, b = random_poly(R, rng, "xy"), random_poly(R, rng, "xy")
        sa = swan_weibel(a, T)
        T = sa.ring
        sb = swan_weibel(b, T)
        fails += swan_weibel(a + b, T) != sa + sb or swan_weibel(a * b, T) != sa * sb
        fails += eval_at(sa, 0, R) != grade_decompose(a).degree0() or eval_at(sa, 1, R) != a
    return fails == 0, f"{len(rows)} rows, {n_elems} elements, {fails} failures"


def suite_orbits(moduli=(5, 25), length=4):
    out = []
    ok = True
    for m in moduli:
        R = ModularIntegers(m)
        a, b = orbit_bfs(R, length, "E"), orbit_bfs(R, length, "ESp")
        same = a.same_partition(b)
        ok &= same
        out.append(f"Z/{m}: {a.num_rows} rows, {a.num_orbits} E-orbits, ESp equal: {same}")
    return ok, "; ".join(out)


def suite_power_rule(modulus=5):
    R = ModularIntegers(modulus)
    T = orbit_bfs(R, 3, "E")
    checked = fails = 0
    for code in T.codes:
        row = T.decode(int(code))
        neg = ((-row[0]) % modulus,) + row[1:]
        if not T.same_orbit(row, neg):
            continue
        v = UnimodRow([R(x) for x in row])
        checked += 1
        fails += not T.same_orbit(vaserstein_compose(v, v).entries, power_row(v, 2).entries)
    return fails == 0, f"{checked} qualifying rows, {fails} failures"


def corrupt_variants(data):
    """Every single-entry corruption of the payload (one value changed)."""
    out = []

    def walk(node, path):
        if isinstance(node, dict):
            for k, v in node.items():
                walk(v, path + [k])
        elif isinstance(node, list):
            for k, v in enumerate(node):
                walk(v, path + [k])
        else:
            out.append(path)

    walk(data, [])
    for path in out:
        clone = copy.deepcopy(data)
        node = clone
        for k in path[:-1]:
            node = node[k]
        old = node[path[-1]]
        if isinstance(old, bool):
            new = not old
        elif isinstance(old, int):
            new = old + 1
        elif isinstance(old, str):
            new = old + "+1" if old and old[0] not in "{[" else old + "x"
        else:
            new = "0"
        node[path[-1]] = new
        yield path, clone


def emitted_certificates(seed=0):
    rng = random.Random(seed)
    out = []
    for key, R in standard_rings().items():
        vars_ = ("x",) if "x" in key else ()
        for k in range(2):
            v = e1_times(random_word(R, 4, rng, maxlen=5, vars_=vars_))
            if k == 0:
                tr = theorem34_trace(v, seed=seed)
                out.append(completion_certificate(R, v, tr.theta, "trace", seed, 0, tr.to_json()))
            else:
                theta, _ = symplectic_complete(v)
                out.append(completion_certificate(R, v, theta, "reduce", seed, 0))
    v = [ZZ(3), ZZ(5), ZZ(7)]
    out.append(witt_certificate(change_witness(v, [2, -1, 0], [-3, 2, 0]), seed, 0))
    out.append(orbit_report(ModularIntegers(5), 4)[0])
    return out


def suite_certificates(seed=0):
    certs = emitted_certificates(seed)
    bad_fresh = sum(bool(verify_payload(c)) for c in certs)
    total = missed = 0
    for c in certs:
        for _, clone in corrupt_variants(c):
            total += 1
            missed += not verify_payload(clone)
    return bad_fresh == 0 and missed == 0, (
        f"{len(certs)} certificates ({bad_fresh} rejected), {total} corruptions ({missed} accepted)")


def suite_excision(n=200, seed=0):
    rng = random.Random(seed)
    fails = 0
    P = polynomial_ring(QQ, ["x"])
    x = P.var("x")
    for base, g, rnd in ((ZZ, ZZ(2), lambda: ZZ(rng.randint(-20, 20))),
                         (P, x, lambda: random_poly(P, rng, "x", 2, 2))):
        Ex = excision_ring(base, [g])

        def elem():
            return Ex.pair(rnd(), rnd() * g)

        for _ in range(n):
            a, b, c = elem(), elem(), elem()
            fails += (a * b) * c != a * (b * c)
            fails += a * (b + c) != a * b + a * c or (a + b) * c != a * c + b * c
            fails += a * Ex.one_elem != a or a * b != b * a
            fails += Ex.hom(a.v) * Ex.hom(b.v) != Ex.hom((a * b).v)
    E2 = excision_ring(ZZ, [2])
    fails += E2.pair(2, 2) * E2.pair(3, 4) != E2.pair(6, 22)
    return fails == 0, f"{2 * n} triples per axiom, {fails} failures"


SUITES = {
    "pfaffian": suite_pfaffian,
    "swan-towber-symbolic": suite_swan_towber_symbolic,
    "vaserstein": suite_vaserstein,
    "lemma24": suite_lemma24,
    "trace": suite_trace,
    "relative": suite_relative,
    "graded": suite_graded,
    "orbit-z5": lambda: suite_orbits((5,)),
    "orbit-z25": lambda: suite_orbits((25,)),
    "power-rule-z5": suite_power_rule,
    "certificates": suite_certificates,
    "excision": suite_excision,
}


def run_suite(name):
    t = time.perf_counter()
    ok, detail = SUITES[name]()
    return ok, detail, time.perf_counter() - t


__all__ = ["SUITES", "run_suite", "corrupt_variants", "emitted_certificates"]
