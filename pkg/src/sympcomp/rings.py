"""Exact commutative rings.

Supported rings: ``ZZ``, ``QQ``, ``ZZ/n``, polynomial rings over those, and
quotients of polynomial rings over ``QQ`` or ``ZZ/p`` by an ideal (stored as
a reduced Groebner basis).  Rings are immutable descriptors that operate on
canonical *payloads*; :class:`RingElem` wraps a payload with its ring and
provides the arithmetic operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import groebner as gb
from .errors import (
    InvalidRing,
    NotAUnit,
    NotUnimodular,
    RingMismatch,
    UndecidableHere,
    UnsupportedCoefficients,
    UnsupportedRing,
)


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class RingElem:
    """An element of a ring, always held in canonical form."""

    __slots__ = ("ring", "v")

    def __init__(self, ring, v):
        self.ring = ring
        self.v = v

    def _other(self, other):
        if isinstance(other, RingElem):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other.v
        return self.ring(other).v

    def __add__(self, other):
        return RingElem(self.ring, self.ring.add(self.v, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElem(self.ring, self.ring.sub(self.v, self._other(other)))

    def __rsub__(self, other):
        return RingElem(self.ring, self.ring.sub(self._other(other), self.v))

    def __mul__(self, other):
        return RingElem(self.ring, self.ring.mul(self.v, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(self.ring, self.ring.neg(self.v))

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self
        if n < 0:
            base = self.inverse()
            if base is None:
                raise NotAUnit(f"{self} is not invertible")
            n = -n
        out = self.ring.one_elem
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, RingElem):
            return self.ring == other.ring and self.v == other.v
        if isinstance(other, (int, Fraction)):
            try:
                return self.v == self.ring(other).v
            except (TypeError, ValueError, NotAUnit):
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.key, self.v))

    def __repr__(self):
        return f"RingElem({self.ring.key}, {self.ring.format(self.v)})"

    def __str__(self):
        return self.ring.format(self.v)

    def is_zero(self):
        return self.ring.is_zero(self.v)

    def is_one(self):
        return self.v == self.ring.one

    def inverse(self):
        """The multiplicative inverse, or ``None`` if this is not a unit."""
        inv = self.ring.unit_inverse(self.v)
        return None if inv is None else RingElem(self.ring, inv)


class Ring:
    """Base class for ring descriptors."""

    key = "?"
    is_field = False
    is_domain = False
    is_finite = False

    def __eq__(self, other):
        return isinstance(other, Ring) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return self.key

    __str__ = __repr__

    @property
    def zero_elem(self):
        return RingElem(self, self.zero)

    @property
    def one_elem(self):
        return RingElem(self, self.one)

    def __call__(self, x):
        if isinstance(x, RingElem):
            if x.ring == self:
                return x
            return RingElem(self, self.coerce_elem(x))
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return RingElem(self, self.from_int(x))
        if isinstance(x, Fraction):
            return RingElem(self, self.from_fraction(x))
        if isinstance(x, str):
            from .parse import parse_element

            return parse_element(x, self)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def coerce_elem(self, x):
        raise RingMismatch(f"cannot map {x.ring} element into {self}")

    def from_fraction(self, q):
        num = self.from_int(q.numerator)
        den = self.unit_inverse(self.from_int(q.denominator))
        if den is None:
            raise NotAUnit(f"{q.denominator} is not invertible in {self}")
        return self.mul(num, den)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a):
        return a == self.zero

    def normalize(self, a):
        return a

    # --- decision procedures, overridden per ring ---
    is_euclidean = False

    def unit_inverse(self, a):
        raise UndecidableHere(f"unit detection not available in {self}")

    def unimodularity_witness(self, row):
        for k, a in enumerate(row):
            inv = self._try_unit(a)
            if inv is not None:
                return [inv if t == k else self.zero for t in range(len(row))]
        raise UndecidableHere(f"no unimodularity decision procedure for {self}")

    def ideal_member(self, x, gens):
        raise UndecidableHere(f"no ideal membership procedure for {self}")

    def _try_unit(self, a):
        try:
            return self.unit_inverse(a)
        except UndecidableHere:
            return None


class Integers(Ring):
    key = "ZZ"
    zero, one = 0, 1
    is_domain = True
    is_euclidean = True

    def from_int(self, n):
        return n

    def from_fraction(self, q):
        if q.denominator != 1:
            raise NotAUnit(f"{q} is not an integer")
        return q.numerator

    def coerce_elem(self, x):
        return super().coerce_elem(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def format(self, a):
        return str(a)

    def unit_inverse(self, a):
        return a if a in (1, -1) else None

    def euclid_size(self, a):
        return abs(a)

    def euclid_divmod(self, a, b):
        return divmod(a, b)

    def exact_div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{a} is not divisible by {b}")
        return q

    def extended_gcd(self, a, b):
        return _egcd_int(a, b)

    def unimodularity_witness(self, row):
        g, coeffs = _egcd_chain(list(row))
        if g != 1:
            raise NotUnimodular(f"gcd of row is {g}")
        return coeffs

    def ideal_member(self, x, gens):
        g, coeffs = _egcd_chain(list(gens))
        if g == 0:
            return [0] * len(gens) if x == 0 else None
        if x % g:
            return None
        q = x // g
        return [c * q for c in coeffs]


class Rationals(Ring):
    key = "QQ"
    zero, one = Fraction(0), Fraction(1)
    is_field = True
    is_domain = True

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def coerce_elem(self, x):
        if x.ring == ZZ:
            return Fraction(x.v)
        return super().coerce_elem(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return 1 / a

    def format(self, a):
        return str(a)

    def unit_inverse(self, a):
        return None if a == 0 else 1 / a

    def exact_div(self, a, b):
        return a / b

    def unimodularity_witness(self, row):
        for k, a in enumerate(row):
            if a != 0:
                return [1 / a if t == k else self.zero for t in range(len(row))]
        raise NotUnimodular("all entries are zero")

    def ideal_member(self, x, gens):
        for k, a in enumerate(gens):
            if a != 0:
                return [x / a if t == k else self.zero for t in range(len(gens))]
        return [self.zero] * len(gens) if x == 0 else None


class ModularIntegers(Ring):
    is_finite = True

    def __init__(self, modulus):
        if not isinstance(modulus, int) or modulus < 2:
            raise InvalidRing(f"modulus must be an integer >= 2, got {modulus!r}")
        self.modulus = modulus
        self.key = f"ZZ/{modulus}"
        self.zero, self.one = 0, 1
        self.is_field = self.is_domain = _is_prime(modulus)
        self.is_euclidean = True

    def from_int(self, n):
        return n % self.modulus

    def normalize(self, a):
        return a % self.modulus

    def coerce_elem(self, x):
        if x.ring == ZZ:
            return x.v % self.modulus
        return super().coerce_elem(x)

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def mul(self, a, b):
        return a * b % self.modulus

    def inv(self, a):
        return pow(a, -1, self.modulus)

    def format(self, a):
        return str(a)

    def elements(self):
        return range(self.modulus)

    def unit_inverse(self, a):
        if gcd(a, self.modulus) != 1:
            return None
        return pow(a, -1, self.modulus)

    def euclid_size(self, a):
        return a

    def euclid_divmod(self, a, b):
        q, r = divmod(a, b)
        return q, r

    def exact_div(self, a, b):
        return a * self.inv(b) % self.modulus

    def unimodularity_witness(self, row):
        # lift to ZZ, append the modulus, and run the Euclidean chain
        g, coeffs = _egcd_chain(list(row) + [self.modulus])
        if g != 1:
            raise NotUnimodular(f"gcd of lifted row with modulus is {g}")
        return [c % self.modulus for c in coeffs[:-1]]

    def ideal_member(self, x, gens):
        g, coeffs = _egcd_chain(list(gens) + [self.modulus])
        if x % g:
            return None
        q = x // g
        return [c * q % self.modulus for c in coeffs[:-1]]


def _egcd_int(a, b):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _egcd_chain(xs):
    """gcd of a list of integers together with Bezout coefficients."""
    if not xs:
        return 0, []
    g, coeffs = xs[0], [1]
    if g < 0:
        g, coeffs = -g, [-1]
    for x in xs[1:]:
        g2, s, t = _egcd_int(g, x)
        coeffs = [c * s for c in coeffs] + [t]
        g = g2
    return g, coeffs


ZZ = Integers()
QQ = Rationals()


# ---------------------------------------------------------------- polynomials


def _mono_str(names, e):
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


class PolynomialRing(Ring):
    """Polynomials over ``ZZ``, ``QQ`` or ``ZZ/n`` in named variables.

    Payload: tuple of ``(exponent tuple, coefficient)`` pairs, sorted by
    exponent, zero coefficients dropped.  ``weights`` give the grading used by
    the graded-ring machinery (default: every variable has degree 1).
    """

    def __init__(self, base, variables, weights=None):
        if not isinstance(base, (Integers, Rationals, ModularIntegers)):
            raise InvalidRing(f"unsupported coefficient ring {base}")
        variables = tuple(variables)
        if not variables:
            raise InvalidRing("polynomial ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise InvalidRing(f"duplicate variable names in {variables}")
        weights = tuple(weights) if weights is not None else (1,) * len(variables)
        if len(weights) != len(variables) or any(w < 0 for w in weights):
            raise InvalidRing("weights must be non-negative, one per variable")
        self.base = base
        self.variables = variables
        self.weights = weights
        self.nvars = len(variables)
        self.zero = ()
        self.one = (((0,) * self.nvars, base.one),)
        self.is_domain = base.is_domain
        self.is_euclidean = self.nvars == 1 and base.is_field
        self.key = f"{base.key}[{self._vars_str()}]"

    def _vars_str(self):
        if all(w == 1 for w in self.weights):
            return ",".join(self.variables)
        return ",".join(f"{v}:{w}" for v, w in zip(self.variables, self.weights))

    # payload helpers
    def pack(self, d):
        B = self.base
        return tuple(sorted((e, c) for e, c in d.items() if not B.is_zero(c)))

    def to_dict(self, a):
        return dict(a)

    def from_int(self, n):
        c = self.base.from_int(n)
        return () if self.base.is_zero(c) else (((0,) * self.nvars, c),)

    def from_fraction(self, q):
        c = self.base.from_fraction(q)
        return () if self.base.is_zero(c) else (((0,) * self.nvars, c),)

    def constant(self, c):
        return () if self.base.is_zero(c) else (((0,) * self.nvars, c),)

    def coerce_elem(self, x):
        if x.ring == self.base:
            return self.constant(x.v)
        if x.ring == ZZ:
            return self.from_int(x.v)
        if isinstance(x.ring, PolynomialRing) and x.ring.base == self.base \
                and set(x.ring.variables) <= set(self.variables):
            idx = [self.variables.index(v) for v in x.ring.variables]
            d = {}
            for e, c in x.v:
                e2 = [0] * self.nvars
                for k, p in zip(idx, e):
                    e2[k] = p
                d[tuple(e2)] = c
            return self.pack(d)
        return super().coerce_elem(x)

    def var(self, name):
        try:
            k = self.variables.index(name)
        except ValueError:
            raise KeyError(f"no variable {name!r} in {self}") from None
        e = tuple(1 if t == k else 0 for t in range(self.nvars))
        return RingElem(self, ((e, self.base.one),))

    def gens(self):
        return [self.var(v) for v in self.variables]

    def add(self, a, b):
        B = self.base
        d = dict(a)
        for e, c in b:
            d[e] = B.add(d[e], c) if e in d else c
        return self.pack(d)

    def neg(self, a):
        return tuple((e, self.base.neg(c)) for e, c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        B = self.base
        d = {}
        for e1, c1 in a:
            for e2, c2 in b:
                e = tuple(x + y for x, y in zip(e1, e2))
                p = B.mul(c1, c2)
                d[e] = B.add(d[e], p) if e in d else p
        return self.pack(d)

    def format(self, a):
        if not a:
            return "0"
        B = self.base
        terms = sorted(a, key=lambda t: gb.grevlex_key(t[0]), reverse=True)
        out = []
        for e, c in terms:
            cs = B.format(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            mono = _mono_str(self.variables, e)
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def degree(self, a):
        """Total (weighted) degree; -1 for zero."""
        if not a:
            return -1
        return max(sum(w * k for w, k in zip(self.weights, e)) for e, _ in a)

    def constant_term(self, a):
        z = (0,) * self.nvars
        for e, c in a:
            if e == z:
                return c
        return self.base.zero

    def unit_inverse(self, a):
        if len(a) == 1 and a[0][0] == (0,) * self.nvars:
            inv = self.base.unit_inverse(a[0][1])
            return None if inv is None else self.constant(inv)
        if self.base.is_domain:
            return None
        raise UndecidableHere(f"unit detection for non-constant elements of {self}")

    # Euclidean structure (univariate over a field)
    def euclid_size(self, a):
        return self.degree(a)

    def euclid_divmod(self, a, b):
        if not self.is_euclidean:
            raise UnsupportedRing(f"{self} is not Euclidean")
        B = self.base
        r = {e[0]: c for e, c in a}
        bd = {e[0]: c for e, c in b}
        db = max(bd)
        lc_inv = B.inv(bd[db])
        q = {}
        while r and max(r) >= db:
            dr = max(r)
            coef = B.mul(r[dr], lc_inv)
            q[dr - db] = coef
            for k, c in bd.items():
                kk = k + dr - db
                v = B.sub(r.get(kk, B.zero), B.mul(coef, c))
                if B.is_zero(v):
                    r.pop(kk, None)
                else:
                    r[kk] = v
        return (self.pack({(k,): c for k, c in q.items()}),
                self.pack({(k,): c for k, c in r.items()}))

    def extended_gcd(self, a, b):
        """(g, s, t) with s*a + t*b = g, g monic (or zero)."""
        if not self.is_euclidean:
            raise UnsupportedRing(f"{self} is not Euclidean")
        old_r, r = a, b
        old_s, s = self.one, self.zero
        old_t, t = self.zero, self.one
        while r:
            q, rem = self.euclid_divmod(old_r, r)
            old_r, r = r, rem
            old_s, s = s, self.sub(old_s, self.mul(q, s))
            old_t, t = t, self.sub(old_t, self.mul(q, t))
        if old_r:
            lc = max(old_r)[1]
            inv = self.constant(self.base.inv(lc))
            old_r, old_s, old_t = (self.mul(inv, x) for x in (old_r, old_s, old_t))
        return old_r, old_s, old_t

    def exact_div(self, a, b):
        if self.is_euclidean:
            q, r = self.euclid_divmod(a, b)
            if r:
                raise ArithmeticError("inexact polynomial division")
            return q
        raise UnsupportedRing(f"exact division not available in {self}")

    # Groebner-backed procedures
    def _require_field(self):
        if not self.base.is_field:
            raise UnsupportedCoefficients(f"Groebner bases need field coefficients, got {self.base}")

    def groebner(self, polys, order="grevlex"):
        self._require_field()
        return gb.groebner(self.base, [dict(p) for p in polys], self.nvars, order)

    def unimodularity_witness(self, row):
        if not self.base.is_field:
            return super().unimodularity_witness(row)
        basis, cofs = self.groebner(row)
        return _witness_from_basis(self, basis, cofs, len(row))

    def ideal_member(self, x, gens):
        self._require_field()
        basis, cofs = self.groebner(gens)
        return _member_from_basis(self, x, basis, cofs, len(gens))

    def substitute(self, a, values):
        """Evaluate payload ``a`` at ``values`` (RingElems of one target ring)."""
        target = values[0].ring
        out = target.zero_elem
        for e, c in a:
            term = target(RingElem(self.base, c)) if target != self.base else RingElem(self.base, c)
            for val, k in zip(values, e):
                if k:
                    term = term * val ** k
            out = out + term
        return out


def _witness_from_basis(P, basis, cofs, n):
    one = {(0,) * P.nvars: P.base.one}
    if len(basis) == 1 and basis[0] == one:
        return [P.pack(c) for c in cofs[0][:n]]
    raise NotUnimodular("1 is not in the ideal (reduced Groebner basis is not {1})")


def _member_from_basis(P, x, basis, cofs, n, order="grevlex"):
    key = gb.order_key(order)
    rem, rcof = gb.reduce_full(P.base, dict(x), basis, key,
                               [c for c in cofs], [{} for _ in range(len(cofs[0]) if cofs else 0)])
    if rem:
        return None
    if not cofs:
        return [P.zero] * n
    # x - sum(q_k * b_k) = 0 and b_k = sum_t cofs[k][t] * g_t; reduce_full tracked -sum(q_k cofs_k)
    return [P.neg(P.pack(c)) for c in rcof[:n]]


class QuotientRing(Ring):
    """``P / I`` for a polynomial ring ``P`` over ``QQ`` or ``ZZ/p``."""

    def __init__(self, poly_ring, relations, order="grevlex"):
        if not isinstance(poly_ring, PolynomialRing):
            raise InvalidRing("quotients are taken of polynomial rings")
        if not poly_ring.base.is_field:
            raise UnsupportedCoefficients(f"quotient rings need field (or ZZ/p) coefficients, got {poly_ring.base}")
        rels = [poly_ring(r).v if not isinstance(r, tuple) else r for r in relations]
        basis, _ = gb.groebner(poly_ring.base, [dict(r) for r in rels], poly_ring.nvars, order)
        one = {(0,) * poly_ring.nvars: poly_ring.base.one}
        if basis and basis[0] == one:
            raise InvalidRing("relations generate the unit ideal (zero ring)")
        self.poly = poly_ring
        self.base = poly_ring.base
        self.variables = poly_ring.variables
        self.weights = poly_ring.weights
        self.nvars = poly_ring.nvars
        self.order = order
        self._key_fn = gb.order_key(order)
        self.basis = basis
        self.relations = tuple(poly_ring.pack(b) for b in basis)
        self.zero = ()
        self.one = self._nf(poly_ring.one)
        self.key = f"{poly_ring.key}/({','.join(poly_ring.format(r) for r in self.relations)})"

    def _nf(self, a):
        if not self.basis:
            return a
        r, _ = gb.reduce_full(self.base, dict(a), self.basis, self._key_fn)
        return self.poly.pack(r)

    def normalize(self, a):
        return self._nf(a)

    def from_int(self, n):
        return self._nf(self.poly.from_int(n))

    def from_fraction(self, q):
        return self._nf(self.poly.from_fraction(q))

    def constant(self, c):
        return self._nf(self.poly.constant(c))

    def coerce_elem(self, x):
        if x.ring == self.base or x.ring == ZZ or isinstance(x.ring, PolynomialRing):
            return self._nf(self.poly(x).v)
        return super().coerce_elem(x)

    def var(self, name):
        return RingElem(self, self._nf(self.poly.var(name).v))

    def gens(self):
        return [self.var(v) for v in self.variables]

    def add(self, a, b):
        return self.poly.add(a, b)

    def neg(self, a):
        return self.poly.neg(a)

    def sub(self, a, b):
        return self.poly.sub(a, b)

    def mul(self, a, b):
        return self._nf(self.poly.mul(a, b))

    def format(self, a):
        return self.poly.format(a)

    def degree(self, a):
        return self.poly.degree(a)

    def constant_term(self, a):
        return self.poly.constant_term(a)

    def lift(self, a):
        """The normal-form representative as an element of the polynomial ring."""
        return RingElem(self.poly, a)

    def unit_inverse(self, a):
        if not a:
            return None
        basis, cofs = gb.groebner(self.base, [dict(a)] + [dict(r) for r in self.relations],
                                  self.nvars, self.order)
        one = {(0,) * self.nvars: self.base.one}
        if len(basis) == 1 and basis[0] == one:
            return self._nf(self.poly.pack(cofs[0][0]))
        return None

    def unimodularity_witness(self, row):
        gens = [dict(a) for a in row] + [dict(r) for r in self.relations]
        basis, cofs = gb.groebner(self.base, gens, self.nvars, self.order)
        u = _witness_from_basis(self.poly, basis, cofs, len(row))
        return [self._nf(c) for c in u]

    def ideal_member(self, x, gens):
        allg = [dict(a) for a in gens] + [dict(r) for r in self.relations]
        basis, cofs = gb.groebner(self.base, allg, self.nvars, self.order)
        c = _member_from_basis(self.poly, x, basis, cofs, len(allg), self.order)
        if c is None:
            return None
        return [self._nf(t) for t in c[:len(gens)]]

    def substitute(self, a, values):
        return self.poly.substitute(a, values)


# ------------------------------------------------------------- construction


def polynomial_ring(base, variables, weights=None):
    """Adjoin variables to ``base``, flattening nested polynomial rings.

    Adjoining to a quotient ``P/I`` gives ``P[new]/I``.
    """
    variables = list(variables)
    if weights is None:
        weights = [1] * len(variables)
    if isinstance(base, PolynomialRing):
        return PolynomialRing(base.base, base.variables + tuple(variables),
                              base.weights + tuple(weights))
    if isinstance(base, QuotientRing):
        P = polynomial_ring(base.poly, variables, weights)
        rels = [P(RingElem(base.poly, r)).v for r in base.relations]
        return QuotientRing(P, rels, base.order)
    return PolynomialRing(base, variables, weights)


def quotient_ring(poly_ring, relations, order="grevlex"):
    if isinstance(poly_ring, QuotientRing):
        rels = list(poly_ring.relations) + [poly_ring.poly(r).v if not isinstance(r, tuple) else r
                                            for r in relations]
        return QuotientRing(poly_ring.poly, rels, order)
    if isinstance(poly_ring, (Integers, Rationals, ModularIntegers)):
        raise InvalidRing("quotients of ZZ are written ZZ/n; quotients of QQ are trivial")
    return QuotientRing(poly_ring, relations, order)


# ------------------------------------------------------------- public ops


def normalize(e):
    """Canonical form of ``e`` (idempotent)."""
    return RingElem(e.ring, e.ring.normalize(e.v))


def extended_gcd(a, b):
    """``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b)``.

    Supported over ``ZZ`` (g >= 0) and univariate polynomial rings over a
    field (g monic).
    """
    R = a.ring
    if b.ring != R:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if isinstance(R, Integers) or (isinstance(R, PolynomialRing) and R.is_euclidean):
        g, s, t = R.extended_gcd(a.v, b.v)
        return RingElem(R, g), RingElem(R, s), RingElem(R, t)
    raise UnsupportedRing(f"extended_gcd is not available over {R}")


def groebner_with_cofactors(gens, order="grevlex"):
    """Reduced Groebner basis of polynomial ``gens`` with cofactor table.

    Returns ``(basis, table)``: ``basis[k] == sum(table[k][t] * gens[t])``.
    """
    if not gens:
        return [], []
    P = gens[0].ring
    if not isinstance(P, PolynomialRing):
        raise UnsupportedRing(f"groebner_with_cofactors needs a polynomial ring, got {P}")
    if not P.base.is_field:
        raise UnsupportedCoefficients(f"coefficient ring {P.base} is not a field")
    basis, cofs = P.groebner([P(g).v for g in gens], order)
    return ([RingElem(P, P.pack(b)) for b in basis],
            [[RingElem(P, P.pack(c)) for c in row] for row in cofs])


@dataclass(frozen=True)
class IdealWitness:
    generators: tuple
    target: RingElem
    cofactors: tuple

    def check(self):
        total = self.target.ring.zero_elem
        for c, g in zip(self.cofactors, self.generators):
            total = total + c * g
        return total == self.target


def _common_ring(row):
    row = list(row)
    if not row:
        raise ValueError("empty row")
    R = row[0].ring
    for x in row:
        if x.ring != R:
            raise RingMismatch(f"mixed rings {R} and {x.ring}")
    return R


def unimodularity_witness(row):
    """Return an :class:`IdealWitness` of ``sum(u_i * v_i) = 1``.

    Raises :class:`NotUnimodular` with a proof-backed reason, or
    :class:`UndecidableHere` when no decision procedure applies.
    """
    R = _common_ring(row)
    u = R.unimodularity_witness([x.v for x in row])
    w = IdealWitness(tuple(row), R.one_elem, tuple(RingElem(R, c) for c in u))
    if not w.check():  # pragma: no cover - defensive re-verification
        raise AssertionError("unimodularity witness failed its identity")
    return w


def ideal_member(x, gens):
    """Cofactors expressing ``x`` in the ideal generated by ``gens``, or None."""
    R = x.ring
    gens = [R(g) for g in gens]
    if not gens:
        return [] if x.is_zero() else None
    c = R.ideal_member(x.v, [g.v for g in gens])
    if c is None:
        return None
    w = IdealWitness(tuple(gens), x, tuple(RingElem(R, t) for t in c))
    if not w.check():  # pragma: no cover
        raise AssertionError("ideal membership cofactors failed their identity")
    return list(w.cofactors)


def is_unit(e):
    """``e``'s inverse if it is a unit, else ``None``.

    Raises :class:`UndecidableHere` for rings without a unit test.
    """
    inv = e.ring.unit_inverse(e.v)
    return None if inv is None else RingElem(e.ring, inv)
