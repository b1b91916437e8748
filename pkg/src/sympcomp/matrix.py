"""Dense exact matrices over the rings of :mod:`sympcomp.rings`.

Indices are 0-based on :class:`RingMatrix`; the generator constructors
(:func:`elementary`) take the usual 1-based ``(i, j)``.
"""

from functools import lru_cache

from .errors import (
    DiagonalIndex,
    MatrixError,
    NonSquare,
    NotAlternating,
    NotAUnit,
    OddSize,
    RingMismatch,
)
from .rings import Integers, ModularIntegers, Rationals, RingElem


class RingMatrix:
    """Immutable dense matrix; ``rows`` is a tuple of tuples of RingElem."""

    __slots__ = ("ring", "rows", "nrows", "ncols", "_hash")

    def __init__(self, ring, rows, ncols=None):
        rows = tuple(tuple(ring(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise MatrixError("ragged matrix rows")
        self.ring = ring
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = None

    # construction helpers
    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero_elem, ring.one_elem
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, ring, n, m=None):
        m = n if m is None else m
        return cls(ring, [[ring.zero_elem] * m for _ in range(n)], m)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return list(self.rows[i])

    def col(self, j):
        return [r[j] for r in self.rows]

    def entries(self):
        return [x for r in self.rows for x in r]

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.key, self.shape, tuple(x.v for x in self.entries())))
        return self._hash

    def __repr__(self):
        return f"RingMatrix({self.ring.key}, {self.to_text()})"

    def to_text(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "]"

    def to_strings(self):
        return [[str(x) for x in r] for r in self.rows]

    def _check_ring(self, other):
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    # arithmetic
    def __add__(self, other):
        self._check_ring(other)
        if self.shape != other.shape:
            raise MatrixError("shape mismatch in addition")
        return RingMatrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                          self.ncols)

    def __sub__(self, other):
        self._check_ring(other)
        if self.shape != other.shape:
            raise MatrixError("shape mismatch in subtraction")
        return RingMatrix(self.ring, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                          self.ncols)

    def __neg__(self):
        return RingMatrix(self.ring, [[-a for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other):
        self._check_ring(other)
        if self.ncols != other.nrows:
            raise MatrixError(f"cannot multiply {self.shape} by {other.shape}")
        R = self.ring
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = R.zero
                for a, b in zip(r, c):
                    if a.v != R.zero and b.v != R.zero:
                        acc = R.add(acc, R.mul(a.v, b.v))
                row.append(RingElem(R, acc))
            out.append(row)
        return RingMatrix(R, out, other.ncols)

    __mul__ = __matmul__

    def scale(self, c):
        c = self.ring(c)
        return RingMatrix(self.ring, [[c * a for a in r] for r in self.rows], self.ncols)

    @property
    def T(self):
        return RingMatrix(self.ring, [list(c) for c in zip(*self.rows)] if self.nrows else [],
                          self.nrows)

    def transpose(self):
        return self.T

    def vecmul(self, v):
        """Row vector ``v`` times this matrix."""
        if len(v) != self.nrows:
            raise MatrixError("vector length does not match matrix rows")
        R = self.ring
        v = [R(x) for x in v]
        out = []
        for j in range(self.ncols):
            acc = R.zero_elem
            for i in range(self.nrows):
                if not v[i].is_zero():
                    acc = acc + v[i] * self.rows[i][j]
            out.append(acc)
        return out

    def map(self, f, ring):
        """Apply ``f`` entrywise, landing in ``ring``."""
        return RingMatrix(ring, [[f(a) for a in r] for r in self.rows], self.ncols)

    def is_identity(self):
        return self.is_square and self == RingMatrix.identity(self.ring, self.nrows)

    # invariants
    def det(self):
        return det(self)

    def pfaffian(self):
        return pfaffian(self)

    def is_alternating(self):
        return is_alternating(self)

    def inverse(self):
        """Exact inverse via the adjugate; raises NotAUnit if det is not a unit."""
        if not self.is_square:
            raise NonSquare("inverse of a non-square matrix")
        n = self.nrows
        d = self.det()
        dinv = d.inverse()
        if dinv is None:
            raise NotAUnit(f"determinant {d} is not a unit")
        if n == 0:
            return self
        adj = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [[self.rows[a][b] for b in range(n) if b != i] for a in range(n) if a != j]
                c = det(RingMatrix(self.ring, minor, n - 1))
                adj[i][j] = c if (i + j) % 2 == 0 else -c
        return RingMatrix(self.ring, adj, n).scale(dinv)

    def submatrix(self, r0, r1, c0, c1):
        return RingMatrix(self.ring, [r[c0:c1] for r in self.rows[r0:r1]], c1 - c0)


# ------------------------------------------------------------------ det


def _bareiss_ok(R):
    return isinstance(R, (Integers, Rationals)) or (isinstance(R, ModularIntegers) and R.is_field)


def det(M):
    if not M.is_square:
        raise NonSquare(f"determinant of a {M.nrows}x{M.ncols} matrix")
    R = M.ring
    n = M.nrows
    if n == 0:
        return R.one_elem
    if _bareiss_ok(R):
        return RingElem(R, _bareiss(R, [[x.v for x in r] for r in M.rows]))
    return RingElem(R, _laplace(R, tuple(tuple(x.v for x in r) for r in M.rows)))


def _bareiss(R, a):
    n = len(a)
    sign = 1
    prev = R.one
    for k in range(n - 1):
        if R.is_zero(a[k][k]):
            for r in range(k + 1, n):
                if not R.is_zero(a[r][k]):
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return R.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = R.sub(R.mul(a[i][j], a[k][k]), R.mul(a[i][k], a[k][j]))
                a[i][j] = R.exact_div(num, prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign == 1 else R.neg(d)


def _laplace(R, a):
    n = len(a)

    @lru_cache(maxsize=None)
    def rec(row, cols):
        if row == n:
            return R.one
        acc = R.zero
        sign = 1
        for c in range(n):
            if not (cols >> c) & 1:
                continue
            x = a[row][c]
            if not R.is_zero(x):
                sub = rec(row + 1, cols & ~(1 << c))
                t = R.mul(x, sub)
                acc = R.add(acc, t) if sign == 1 else R.sub(acc, t)
            sign = -sign
        return acc

    return rec(0, (1 << n) - 1)


# ------------------------------------------------------------------ pfaffian


def is_alternating(M):
    if not M.is_square:
        return False
    n = M.nrows
    for i in range(n):
        if not M.rows[i][i].is_zero():
            return False
        for j in range(i + 1, n):
            if not (M.rows[i][j] + M.rows[j][i]).is_zero():
                return False
    return True


def pfaffian(M):
    """Pfaffian by expansion along the first row, normalized so Pf(psi_r) = 1."""
    if not M.is_square:
        raise NonSquare("pfaffian of a non-square matrix")
    if M.nrows % 2:
        raise OddSize(f"pfaffian of odd size {M.nrows}")
    if not is_alternating(M):
        raise NotAlternating("matrix is not alternating")
    R = M.ring
    a = tuple(tuple(x.v for x in r) for r in M.rows)

    @lru_cache(maxsize=None)
    def rec(idx):
        if not idx:
            return R.one
        first = idx[0]
        acc = R.zero
        for k in range(1, len(idx)):
            x = a[first][idx[k]]
            if R.is_zero(x):
                continue
            rest = idx[1:k] + idx[k + 1:]
            t = R.mul(x, rec(rest))
            # position k (0-based) is column j = k+1 (1-based): sign (-1)^j
            acc = R.add(acc, t) if k % 2 == 1 else R.sub(acc, t)
        return acc

    return RingElem(R, rec(tuple(range(M.nrows))))


# ------------------------------------------------------------------ builders


def perp(A, B):
    """Block sum ``A ⊥ B``."""
    if A.ring != B.ring:
        raise RingMismatch(f"{A.ring} vs {B.ring}")
    R = A.ring
    z = R.zero_elem
    rows = [list(r) + [z] * B.ncols for r in A.rows]
    rows += [[z] * A.ncols + list(r) for r in B.rows]
    return RingMatrix(R, rows, A.ncols + B.ncols)


def psi(r, ring):
    """The standard 2r x 2r alternating form, r blocks of ((0,1),(-1,0))."""
    if r < 0:
        raise ValueError("psi needs r >= 0")
    one, zero = ring.one_elem, ring.zero_elem
    n = 2 * r
    rows = [[zero] * n for _ in range(n)]
    for k in range(r):
        rows[2 * k][2 * k + 1] = one
        rows[2 * k + 1][2 * k] = -one
    return RingMatrix(ring, rows, n)


def elementary(i, j, lam, n, ring=None):
    """``I_n + lam * E_ij`` with 1-based indices."""
    if i == j:
        raise DiagonalIndex(f"elementary matrix needs i != j, got ({i},{j})")
    if not (1 <= i <= n and 1 <= j <= n):
        raise DiagonalIndex(f"indices ({i},{j}) out of range for size {n}")
    R = ring or lam.ring
    rows = [list(r) for r in RingMatrix.identity(R, n).rows]
    rows[i - 1][j - 1] = R(lam)
    return RingMatrix(R, rows, n)


def from_ints(ring, rows):
    return RingMatrix(ring, [[ring(x) for x in r] for r in rows])


class AlternatingForm:
    """An alternating matrix together with its (cached) Pfaffian."""

    __slots__ = ("matrix", "pfaffian")

    def __init__(self, matrix, pf=None):
        if matrix.nrows % 2 or not matrix.is_square:
            raise OddSize("alternating forms have even square size")
        if not is_alternating(matrix):
            raise NotAlternating("matrix is not alternating")
        self.matrix = matrix
        self.pfaffian = pfaffian(matrix) if pf is None else matrix.ring(pf)

    @property
    def ring(self):
        return self.matrix.ring

    @property
    def size(self):
        return self.matrix.nrows

    def __eq__(self, other):
        return isinstance(other, AlternatingForm) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"AlternatingForm({self.matrix.to_text()}, pf={self.pfaffian})"


def _self_check():
    from .rings import ZZ

    for r in range(1, 5):
        if pfaffian(psi(r, ZZ)) != ZZ(1):  # pragma: no cover
            raise AssertionError("pfaffian sign convention broken")


_self_check()
