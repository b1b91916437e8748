"""Graded decomposition, the Swan-Weibel homotopy, and excision rings R ⊕ I."""

from .errors import InvalidRing, NotUnimodular, RingMismatch, UnsupportedRing
from .rings import PolynomialRing, QuotientRing, Ring, RingElem, ideal_member, polynomial_ring


# ---------------------------------------------------------------- grading


def _poly_parts(R):
    if isinstance(R, QuotientRing):
        return R.poly
    if isinstance(R, PolynomialRing):
        return R
    return None


class GradedElem:
    """``components[d]`` is the homogeneous part of degree d."""

    def __init__(self, ring, components):
        self.ring = ring
        self.components = {d: c for d, c in components.items() if not c.is_zero()}

    def total(self):
        out = self.ring.zero_elem
        for c in self.components.values():
            out = out + c
        return out

    def degree0(self):
        return self.components.get(0, self.ring.zero_elem)

    def __repr__(self):
        return f"GradedElem({ {d: str(c) for d, c in sorted(self.components.items())} })"


def grade_decompose(e, weights=None):
    """Split ``e`` into weighted-homogeneous components."""
    R = e.ring
    P = _poly_parts(R)
    if P is None:
        return GradedElem(R, {0: e})
    w = tuple(weights) if weights is not None else R.weights
    if len(w) != P.nvars:
        raise InvalidRing("one weight per variable is required")
    parts = {}
    for exp, c in e.v:
        d = sum(a * b for a, b in zip(w, exp))
        parts.setdefault(d, {})[exp] = c
    comps = {d: RingElem(R, R.normalize(P.pack(t))) for d, t in parts.items()}
    return GradedElem(R, comps)


def homotopy_ring(R, name="X"):
    """``R[X]`` with a fresh variable name."""
    used = set(getattr(R, "variables", ()))
    while name in used:
        name = name + "_"
    return polynomial_ring(R, [name]), name


def swan_weibel(e, target=None, name="X"):
    """``r_0 + r_1 X + r_2 X^2 + ...`` as an element of ``R[X]``."""
    g = e if isinstance(e, GradedElem) else grade_decompose(e)
    if target is None:
        target, name = homotopy_ring(g.ring, name)
    X = target.var(target.variables[-1])
    out = target.zero_elem
    for d, c in g.components.items():
        out = out + target(_lift(c, target)) * X ** d
    return out


def _lift(c, target):
    """Embed an element of R into R[X] (R polynomial or quotient)."""
    R = c.ring
    P = _poly_parts(R)
    if P is None:
        return target(c)
    tp = _poly_parts(target)
    return RingElem(target, target.normalize(tp(RingElem(P, c.v)).v))


def swan_weibel_row(v, target=None, name="X"):
    if target is None:
        target, name = homotopy_ring(v[0].ring, name)
    return [swan_weibel(x, target) for x in v], target


def swan_weibel_matrix(a, target=None, name="X"):
    if target is None:
        target, name = homotopy_ring(a.ring, name)
    return a.map(lambda x: swan_weibel(x, target), target), target


def eval_at(p, a, base=None):
    """Substitute the last variable of ``p``'s ring (the homotopy variable) by ``a``."""
    T = p.ring
    TP = _poly_parts(T)
    if TP is None:
        return p
    if base is None:
        base = a.ring if isinstance(a, RingElem) else None
    if base is None:
        raise ValueError("eval_at needs the base ring")
    a = base(a)
    BP = _poly_parts(base)
    out = base.zero_elem
    for exp, c in p.v:
        k = exp[-1]
        if BP is None:
            term = base(RingElem(TP.base, c))
        else:
            term = RingElem(base, base.normalize(((exp[:-1], c),)))
        out = out + term * a ** k
    return out


def eval_matrix_at(m, a, base):
    return m.map(lambda x: eval_at(x, a, base), base)


# ---------------------------------------------------------------- excision


class ExPayload:
    """Pair (a, i) with i in I; ``cof`` expresses i in the ideal generators."""

    __slots__ = ("a", "i", "cof")

    def __init__(self, a, i, cof):
        self.a = a
        self.i = i
        self.cof = cof

    def __eq__(self, other):
        return isinstance(other, ExPayload) and self.a == other.a and self.i == other.i

    def __hash__(self):
        return hash((self.a, self.i))

    def __repr__(self):
        return f"({self.a!r}, {self.i!r})"


class ExcisionRing(Ring):
    """R ⊕ I with (a, i)(b, j) = (ab, aj + ib + ij) and identity (1, 0)."""

    def __init__(self, base, gens):
        gens = [base(g) for g in gens]
        if not gens or all(g.is_zero() for g in gens):
            raise InvalidRing("excision needs a nonzero ideal")
        self.base = base
        self.gens = tuple(gens)
        self.key = f"excision({base.key},({','.join(str(g) for g in gens)}))"
        B = base
        self._zc = tuple(B.zero for _ in gens)
        self.zero = ExPayload(B.zero, B.zero, self._zc)
        self.one = ExPayload(B.one, B.zero, self._zc)
        self.is_domain = False

    def _cadd(self, x, y):
        B = self.base
        return tuple(B.add(a, b) for a, b in zip(x, y))

    def _cscale(self, s, x):
        B = self.base
        return tuple(B.mul(s, a) for a in x)

    def pair(self, a, i):
        """The element (a, i); raises if i is not in I."""
        B = self.base
        a, i = B(a), B(i)
        cof = ideal_member(i, self.gens)
        if cof is None:
            raise InvalidRing(f"{i} is not in the ideal {self.gens}")
        return RingElem(self, ExPayload(a.v, i.v, tuple(c.v for c in cof)))

    def pair_with_cofactors(self, a, cof):
        B = self.base
        cof = [B(c) for c in cof]
        i = B.zero_elem
        for c, g in zip(cof, self.gens):
            i = i + c * g
        return RingElem(self, ExPayload(B(a).v, i.v, tuple(c.v for c in cof)))

    def from_int(self, n):
        return ExPayload(self.base.from_int(n), self.base.zero, self._zc)

    def from_fraction(self, q):
        return ExPayload(self.base.from_fraction(q), self.base.zero, self._zc)

    def coerce_elem(self, x):
        if x.ring == self.base:
            return ExPayload(x.v, self.base.zero, self._zc)
        return ExPayload(self.base(x).v, self.base.zero, self._zc)

    def is_zero(self, p):
        return p == self.zero

    def add(self, p, q):
        B = self.base
        return ExPayload(B.add(p.a, q.a), B.add(p.i, q.i), self._cadd(p.cof, q.cof))

    def neg(self, p):
        B = self.base
        return ExPayload(B.neg(p.a), B.neg(p.i), tuple(B.neg(c) for c in p.cof))

    def sub(self, p, q):
        return self.add(p, self.neg(q))

    def mul(self, p, q):
        B = self.base
        a = B.mul(p.a, q.a)
        # aj + ib + ij = a j + (b + j) i
        bj = B.add(q.a, q.i)
        i = B.add(B.mul(p.a, q.i), B.mul(bj, p.i))
        cof = self._cadd(self._cscale(p.a, q.cof), self._cscale(bj, p.cof))
        return ExPayload(a, i, cof)

    def format(self, p):
        B = self.base
        return f"({B.format(p.a)}, {B.format(p.i)})"

    def unit_inverse(self, p):
        B = self.base
        ainv = B.unit_inverse(p.a)
        if ainv is None:
            return None
        sinv = B.unit_inverse(B.add(p.a, p.i))
        if sinv is None:
            return None
        # (a+i)^-1 - a^-1 = -i a^-1 (a+i)^-1
        s = B.neg(B.mul(ainv, sinv))
        return ExPayload(ainv, B.mul(s, p.i), self._cscale(s, p.cof))

    def hom(self, p):
        """g: (x, i) -> x + i."""
        return RingElem(self.base, self.base.add(p.a, p.i))

    def proj(self, p):
        """Reduction modulo 0 ⊕ I: (x, i) -> x."""
        return RingElem(self.base, p.a)

    def unimodularity_witness(self, row):
        from .rings import unimodularity_witness

        B = self.base
        xs = [RingElem(B, p.a) for p in row]
        ys = [RingElem(B, B.add(p.a, p.i)) for p in row]
        ux = unimodularity_witness(xs).cofactors
        uy = unimodularity_witness(ys).cofactors
        # 1 - y·ux = -sum_k i_k ux_k lies in I with explicit cofactors
        t_cof = [B.zero] * len(self.gens)
        for p, u in zip(row, ux):
            t_cof = [B.sub(t, B.mul(u.v, c)) for t, c in zip(t_cof, p.cof)]
        out = []
        for u1, u2 in zip(ux, uy):
            cof = tuple(B.mul(u2.v, c) for c in t_cof)
            i = B.zero
            for c, g in zip(cof, self.gens):
                i = B.add(i, B.mul(c, g.v))
            out.append(ExPayload(u1.v, i, cof))
        acc = self.zero
        for p, u in zip(row, out):
            acc = self.add(acc, self.mul(p, u))
        if acc != self.one:
            raise NotUnimodular("lifted row is not unimodular over the excision ring")
        return out


def excision_ring(R, gens):
    return ExcisionRing(R, gens)


def excision_hom(e):
    if not isinstance(e.ring, ExcisionRing):
        raise RingMismatch("excision_hom needs an excision-ring element")
    return e.ring.hom(e.v)


def ideal_cofactors(e):
    """Stored membership cofactors of the ideal part of ``e``."""
    B = e.ring.base
    return [RingElem(B, c) for c in e.v.cof]


def lift_row(v, E):
    """(1 + i_1, i_2, ...) ↦ ((1, i_1), (0, i_2), ...) over ``E = R ⊕ I``."""
    B = E.base
    v = [B(x) for x in v]
    out = []
    for k, x in enumerate(v):
        a = B.one_elem if k == 0 else B.zero_elem
        i = x - a
        cof = ideal_member(i, E.gens)
        if cof is None:
            raise UnsupportedRing(f"entry {k + 1} is not congruent to e_1 modulo the ideal")
        out.append(E.pair_with_cofactors(a, cof))
    return out


def project_matrix(a, mode="hom"):
    """Entrywise projection R ⊕ I -> R: ``hom`` is (x, i) ↦ x + i, ``mod`` drops i."""
    E = a.ring
    if not isinstance(E, ExcisionRing):
        raise RingMismatch("project_matrix needs a matrix over an excision ring")
    f = (lambda e: E.hom(e.v)) if mode == "hom" else (lambda e: E.proj(e.v))
    if mode not in ("hom", "mod"):
        raise ValueError(f"unknown projection mode {mode!r}")
    return a.map(f, E.base)


def embed_matrix(a, E):
    """Matrix over R viewed over R ⊕ I via x ↦ (x, 0)."""
    return a.map(lambda x: E(x), E)


def project_row(v, mode="hom"):
    E = v[0].ring
    return [E.hom(x.v) if mode == "hom" else E.proj(x.v) for x in v]


__all__ = [
    "GradedElem", "grade_decompose", "swan_weibel", "swan_weibel_row", "swan_weibel_matrix",
    "eval_at", "eval_matrix_at", "homotopy_ring", "ExcisionRing", "excision_ring",
    "excision_hom", "lift_row", "project_matrix", "embed_matrix", "project_row",
]
