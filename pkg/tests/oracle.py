"""Independent checkers built on sympy; they share no code with sympcomp."""

import re

import sympy as sp

PSI2 = sp.Matrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])


def psi(r):
    return sp.diag(*[sp.Matrix([[0, 1], [-1, 0]])] * r)


def _sym(text):
    return sp.sympify(text.replace("^", "**"))


def reducer(ring_key):
    """Map a sympy expression to a canonical representative for ``ring_key``."""
    m = re.fullmatch(r"ZZ/(\d+)", ring_key)
    if m:
        n = int(m.group(1))
        return lambda e: sp.Integer(e) % n
    m = re.fullmatch(r"QQ\[(\w+)\]/\((.+)\)", ring_key)
    if m:
        x = sp.Symbol(m.group(1))
        rel = _sym(m.group(2))
        return lambda e: sp.rem(sp.expand(e), rel, x)
    return sp.expand


def to_sympy(mat, ring_key=None):
    """RingMatrix (or list of rows of strings) to a sympy Matrix."""
    rows = mat.to_strings() if hasattr(mat, "to_strings") else mat
    return sp.Matrix([[_sym(x) for x in r] for r in rows])


def contract_holds(theta, v, ring_key):
    """Θ^Tψ Θ = ψ and e_1Θ = v, recomputed in sympy."""
    red = reducer(ring_key)
    T = to_sympy(theta)
    n = T.shape[0]
    lhs = (T.T * psi(n // 2) * T - psi(n // 2)).applyfunc(red)
    row = [red(_sym(str(x)) - T[0, k]) for k, x in enumerate(v)]
    return lhs == sp.zeros(n, n) and all(r == 0 for r in row)


def det_is_one(theta, ring_key):
    red = reducer(ring_key)
    return red(to_sympy(theta).det() - 1) == 0
