"""Buchberger's algorithm with cofactor tracking.

Polynomials here are plain dicts ``{exponent tuple: coefficient}`` whose
coefficients live in a field ring ``K`` (``Rationals`` or a prime
``ModularIntegers``).  Every basis element carries a list of cofactors
expressing it in the original generators, so ideal-membership answers come
with an exact certificate.
"""

from __future__ import annotations


def grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def lex_key(e):
    return e


ORDERS = {"grevlex": grevlex_key, "lex": lex_key}


def order_key(order):
    try:
        return ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}") from None


def leading(f, key):
    e = max(f, key=key)
    return e, f[e]


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def add_scaled(K, f, g, c, m):
    """Return f + c * x^m * g as a new dict."""
    out = dict(f)
    for e, a in g.items():
        e2 = tuple(x + y for x, y in zip(e, m))
        v = K.add(out.get(e2, K.zero), K.mul(c, a))
        if K.is_zero(v):
            out.pop(e2, None)
        else:
            out[e2] = v
    return out


def scale(K, f, c):
    if K.is_zero(c):
        return {}
    return {e: K.mul(c, a) for e, a in f.items()}


def reduce_full(K, f, basis, key, cofs=None, fcof=None):
    """Fully reduce ``f`` modulo ``basis``.

    When ``cofs`` is given (cofactor vectors of the basis) the cofactor vector
    of the remainder is tracked as well, starting from ``fcof``.
    """
    f = dict(f)
    rem = {}
    rcof = None if cofs is None else [dict(c) for c in fcof]
    lts = [leading(g, key) for g in basis]
    while f:
        e, c = leading(f, key)
        for k, (ge, gc) in enumerate(lts):
            if divides(ge, e):
                q = K.mul(c, K.inv(gc))
                m = mono_div(e, ge)
                f = add_scaled(K, f, basis[k], K.neg(q), m)
                if rcof is not None:
                    for t in range(len(rcof)):
                        rcof[t] = add_scaled(K, rcof[t], cofs[k][t], K.neg(q), m)
                break
        else:
            rem[e] = c
            del f[e]
    return rem, rcof


def _unit_vector(K, n, i, nvars):
    z = (0,) * nvars
    return [({z: K.one} if t == i else {}) for t in range(n)]


def groebner(K, gens, nvars, order="grevlex"):
    """Reduced Groebner basis of ``gens`` with cofactors.

    Returns ``(basis, cofactors)`` where ``cofactors[k][t]`` is the multiplier
    of ``gens[t]`` in ``basis[k]``.  Deterministic for a fixed input order.
    """
    key = order_key(order)
    m = len(gens)
    G = []
    C = []
    for t, f in enumerate(gens):
        f = {e: c for e, c in f.items() if not K.is_zero(c)}
        if f:
            G.append(f)
            C.append(_unit_vector(K, m, t, nvars))
    pairs = [(i, j) for j in range(len(G)) for i in range(j)]

    def pair_key(p):
        i, j = p
        lcm = mono_lcm(leading(G[i], key)[0], leading(G[j], key)[0])
        return (key(lcm), i, j)

    while pairs:
        pairs.sort(key=pair_key)
        i, j = pairs.pop(0)
        ei, ci = leading(G[i], key)
        ej, cj = leading(G[j], key)
        lcm = mono_lcm(ei, ej)
        if all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue  # coprime leading monomials: S-polynomial reduces to 0
        mi, mj = mono_div(lcm, ei), mono_div(lcm, ej)
        si, sj = K.inv(ci), K.neg(K.inv(cj))
        s = add_scaled(K, add_scaled(K, {}, G[i], si, mi), G[j], sj, mj)
        scof = [add_scaled(K, add_scaled(K, {}, C[i][t], si, mi), C[j][t], sj, mj) for t in range(m)]
        r, rcof = reduce_full(K, s, G, key, C, scof)
        if r:
            G.append(r)
            C.append(rcof)
            n = len(G) - 1
            pairs.extend((k, n) for k in range(n))

    # minimalize: drop elements whose leading monomial is divisible by another's
    lms = [leading(g, key)[0] for g in G]
    keep = []
    for k in range(len(G)):
        drop = False
        for l in range(len(G)):
            if l == k or not divides(lms[l], lms[k]):
                continue
            if lms[l] != lms[k] or l < k:
                drop = True
                break
        if not drop:
            keep.append(k)
    G = [G[k] for k in keep]
    C = [C[k] for k in keep]

    # interreduce and normalize to monic
    basis, cofs = [], []
    for k in range(len(G)):
        others = G[:k] + G[k + 1:]
        ocofs = C[:k] + C[k + 1:]
        r, rcof = reduce_full(K, G[k], others, key, ocofs, C[k])
        # the leading term is irreducible, only tails change
        lc_inv = K.inv(leading(r, key)[1])
        basis.append(scale(K, r, lc_inv))
        cofs.append([scale(K, c, lc_inv) for c in rcof])
    final_b, final_c = basis, cofs
    order_idx = sorted(range(len(final_b)), key=lambda k: key(leading(final_b[k], key)[0]))
    return [final_b[k] for k in order_idx], [final_c[k] for k in order_idx]


def normal_form(K, f, basis, order="grevlex"):
    r, _ = reduce_full(K, f, basis, order_key(order))
    return r
