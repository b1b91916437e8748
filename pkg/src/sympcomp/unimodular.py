"""Unimodular rows, Vaserstein matrices, elementary reduction and an orbit oracle."""

import csv
import io
import random
from math import gcd

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    FirstCoordMismatch,
    NotUnimodular,
    PfaffianNotOne,
    ReductionUnavailable,
    RingMismatch,
    UndecidableHere,
    WitnessBroken,
)
from .matrix import AlternatingForm, RingMatrix, det
from .rings import ModularIntegers, PolynomialRing, QuotientRing, RingElem, unimodularity_witness
from .words import DEFAULT_BUDGET, DEFAULT_SEED, E, GroupWord, sigma


def _dot(a, b):
    acc = a[0].ring.zero_elem
    for x, y in zip(a, b):
        acc = acc + x * y
    return acc


class UnimodRow:
    """A row together with a witness ``u`` such that ``sum(v_i u_i) = 1``."""

    __slots__ = ("entries", "witness")

    def __init__(self, entries, witness=None):
        entries = list(entries)
        if len(entries) < 2:
            raise ValueError("unimodular rows have length >= 2")
        R = entries[0].ring
        for x in entries:
            if x.ring != R:
                raise RingMismatch(f"mixed rings {R} and {x.ring}")
        if witness is None:
            witness = unimodularity_witness(entries).cofactors
        witness = [R(x) for x in witness]
        if len(witness) != len(entries) or not _dot(entries, witness).is_one():
            raise WitnessBroken("witness does not pair to 1 with the row")
        self.entries = tuple(entries)
        self.witness = tuple(witness)

    @property
    def ring(self):
        return self.entries[0].ring

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        if isinstance(other, UnimodRow):
            return self.entries == other.entries
        return list(self.entries) == list(other)

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"UnimodRow([{', '.join(map(str, self.entries))}])"

    def is_e1(self):
        return self.entries[0].is_one() and all(x.is_zero() for x in self.entries[1:])


def as_unimod(v):
    return v if isinstance(v, UnimodRow) else UnimodRow(v)


def e1_row(R, n):
    return UnimodRow([R.one_elem] + [R.zero_elem] * (n - 1),
                     [R.one_elem] + [R.zero_elem] * (n - 1))


class CompletionRecord:
    """A determinant-one matrix together with its first row."""

    __slots__ = ("row", "matrix")

    def __init__(self, row, matrix):
        row = as_unimod(row)
        if list(matrix.row(0)) != list(row.entries):
            raise ValueError("first row of the matrix differs from the row")
        if not det(matrix).is_one():
            raise ValueError("completion matrix does not have determinant 1")
        self.row = row
        self.matrix = matrix

    @classmethod
    def identity(cls, R, n):
        return cls(e1_row(R, n), RingMatrix.identity(R, n))

    def __repr__(self):
        return f"CompletionRecord({self.row}, {self.matrix.to_text()})"


# ------------------------------------------------------------- Vaserstein


def vaserstein_matrix(v, w):
    """The 4x4 alternating matrix V(v, w) of Pfaffian v·w^T = 1."""
    v = list(v)
    w = list(w)
    if len(v) != 3 or len(w) != 3:
        raise ValueError("Vaserstein matrices need rows of length 3")
    R = v[0].ring
    v = [R(x) for x in v]
    w = [R(x) for x in w]
    if not _dot(v, w).is_one():
        raise WitnessBroken("v·w^T is not 1")
    z = R.zero_elem
    rows = [
        [z, v[0], v[1], v[2]],
        [-v[0], z, w[2], -w[1]],
        [-v[1], -w[2], z, w[0]],
        [-v[2], w[1], -w[0], z],
    ]
    return AlternatingForm(RingMatrix(R, rows, 4), R.one_elem)


def vaserstein_readoff(V):
    """Inverse of :func:`vaserstein_matrix` on Pfaffian-one 4x4 forms."""
    if not isinstance(V, AlternatingForm):
        V = AlternatingForm(V)
    M = V.matrix
    if M.nrows != 4:
        raise ValueError("read-off needs a 4x4 form")
    if not V.pfaffian.is_one():
        raise PfaffianNotOne(f"pfaffian is {V.pfaffian}")
    v = [M[0, 1], M[0, 2], M[0, 3]]
    w = [M[2, 3], -M[1, 3], M[1, 2]]
    return UnimodRow(v, w), w


def power_row(v, n):
    """(v_0^n, v_1, v_2) with a recomputed witness."""
    v = as_unimod(v)
    if n < 1:
        raise ValueError("power must be positive")
    if n == 1:
        return v
    return UnimodRow([v[0] ** n] + list(v.entries[1:]))


def vaserstein_compose(v1, v2):
    """v_3 = (a_0, b_1 a_1 - b_2 a_2', b_1 a_2 + b_2 a_1') from v_1's witness."""
    v1 = as_unimod(v1)
    v2 = as_unimod(v2)
    if len(v1) != 3 or len(v2) != 3:
        raise ValueError("composition is defined on rows of length 3")
    if v1[0] != v2[0]:
        raise FirstCoordMismatch(f"{v1[0]} != {v2[0]}")
    a0, a1, a2 = v1.entries
    _, a1p, a2p = v1.witness
    _, b1, b2 = v2.entries
    return UnimodRow([a0, b1 * a1 - b2 * a2p, b1 * a2 + b2 * a1p])


def vdk_product(A, B):
    if A.matrix.ring != B.matrix.ring or A.matrix.shape != B.matrix.shape:
        raise RingMismatch("records live over different rings or sizes")
    M = A.matrix @ B.matrix
    return CompletionRecord(UnimodRow(M.row(0)), M)


# ------------------------------------------------------------- reduction


def _unit(R, x):
    try:
        inv = x.inverse()
    except UndecidableHere:
        return None
    return inv


def _euclidean(R):
    return getattr(R, "is_euclidean", False)


class _Reducer:
    def __init__(self, row, budget, seed):
        self.R = row.ring
        self.n = len(row)
        self.v = list(row.entries)
        self.letters = []
        self.budget = budget
        self.rng = random.Random(seed)

    def apply(self, i, j, lam):
        """Row op v_j += lam * v_i (1-based), recorded as E(i, j, lam)."""
        if lam.is_zero():
            return
        self.letters.append(E(i, j, lam))
        self.v[j - 1] = self.v[j - 1] + self.v[i - 1] * lam

    def done(self):
        return self.v[0].is_one() and all(x.is_zero() for x in self.v[1:])

    def unit_finish(self):
        R = self.R
        for k, x in enumerate(self.v):
            inv = _unit(R, x)
            if inv is None:
                continue
            one = R.one_elem
            if k != 0:
                self.apply(k + 1, 1, (one - self.v[0]) * inv)
            elif not x.is_one():
                self.apply(1, 2, (one - self.v[1]) * inv)
                self.apply(2, 1, one - x)
            for j in range(2, self.n + 1):
                self.apply(1, j, -self.v[j - 1])
            return True
        return False

    def euclid_step(self):
        R = self.R
        nz = [k for k, x in enumerate(self.v) if not x.is_zero()]
        if len(nz) < 2:
            return False
        p, q = nz[0], nz[1]
        a, b = self.v[p], self.v[q]
        sa, sb = R.euclid_size(a.v), R.euclid_size(b.v)
        if sb >= sa:  # reduce the larger; on a tie the later one
            p, q, a, b = q, p, b, a
        quo, _ = R.euclid_divmod(a.v, b.v)
        self.apply(q + 1, p + 1, -RingElem(R, quo))
        return True

    def subrow_step(self):
        """Make some v_k equal to 1 using a unimodular subrow that skips k."""
        R = self.R
        for k in range(self.n):
            rest = [x for t, x in enumerate(self.v) if t != k]
            try:
                u = unimodularity_witness(rest).cofactors
            except (NotUnimodular, UndecidableHere):
                continue
            self.budget -= 1
            scale = R.one_elem - self.v[k]
            idx = [t for t in range(self.n) if t != k]
            for t, c in zip(idx, u):
                self.apply(t + 1, k + 1, c * scale)
            return True
        return False

    def random_step(self):
        """Stable-range style perturbation v_j += a v_k with small random a."""
        R = self.R
        pool = [R.one_elem, -R.one_elem, R(2)]
        if hasattr(R, "variables"):
            pool += [R.var(x) for x in R.variables]
        k = self.rng.randrange(self.n)
        j = self.rng.choice([t for t in range(self.n) if t != k])
        self.apply(k + 1, j + 1, self.rng.choice(pool))
        self.budget -= 1


def elementary_reduce(v, budget=DEFAULT_BUDGET, seed=DEFAULT_SEED):
    """Elementary word ε with ``v · eval(ε) = e_1``.

    Strategy order: unit pivot (lowest index), Euclid on the two leading
    nonzero entries for Euclidean rings, a unimodular-subrow step via Groebner
    cofactors, then seeded random perturbations until the budget runs out.
    """
    row = as_unimod(v)
    R = row.ring
    red = _Reducer(row, budget, seed)
    if red.done():
        return GroupWord(red.n, [], R)
    groebner_ok = isinstance(R, QuotientRing) or (isinstance(R, PolynomialRing) and R.base.is_field)
    while True:
        if red.unit_finish():
            break
        if red.budget <= 0:
            raise ReductionUnavailable("reduction budget exhausted")
        red.budget -= 1
        if _euclidean(R) and red.euclid_step():
            continue
        if groebner_ok and red.subrow_step():
            continue
        if groebner_ok and red.n >= 3:
            red.random_step()
            continue
        raise ReductionUnavailable(f"no reduction strategy for this row over {R}")
    w = GroupWord(red.n, red.letters, R)
    if not red.done() or w.apply_to_row(row.entries) != list(e1_row(R, red.n).entries):
        raise ReductionUnavailable("reduction word failed its row identity")
    return w


# ------------------------------------------------------------- orbit oracle


def _generator_pairs(length, generators):
    if generators == "E":
        return [(i, j) for i in range(1, length + 1) for j in range(1, length + 1) if i != j]
    if generators == "ESp":
        if length % 2:
            raise ValueError("ESp orbits need an even length")
        return [(i, j) for i in range(1, length + 1) for j in range(1, length + 1) if i != j]
    raise ValueError(f"unknown generator set {generators!r}")


class OrbitTable:
    """Partition of the unimodular rows of (Z/n)^length into orbits.

    Rows are encoded base n (first coordinate most significant), so integer
    order on codes is lexicographic order on rows; each row's representative
    is the smallest row of its orbit.
    """

    def __init__(self, ring, length, generators, codes, reps):
        self.ring = ring
        self.length = length
        self.generators = generators
        self.codes = codes
        self.reps = reps
        self._index = {int(c): int(r) for c, r in zip(codes, reps)}

    def encode(self, row):
        n = self.ring.modulus
        c = 0
        for x in row:
            x = x.v if hasattr(x, "v") else int(x) % n
            c = c * n + x
        return c

    def decode(self, code):
        n = self.ring.modulus
        out = []
        for _ in range(self.length):
            out.append(code % n)
            code //= n
        return tuple(reversed(out))

    def representative(self, row):
        return self.decode(self._index[self.encode(row)])

    def same_orbit(self, a, b):
        return self._index[self.encode(a)] == self._index[self.encode(b)]

    @property
    def num_rows(self):
        return len(self.codes)

    @property
    def num_orbits(self):
        return len(set(self._index.values()))

    def cells(self):
        out = {}
        for c, r in self._index.items():
            out.setdefault(self.decode(r), []).append(self.decode(c))
        return out

    def same_partition(self, other):
        return self._index == other._index

    def to_csv(self, fh=None):
        buf = fh or io.StringIO()
        wr = csv.writer(buf)
        wr.writerow(["row", "representative"])
        for c in sorted(self._index):
            wr.writerow([" ".join(map(str, self.decode(c))),
                         " ".join(map(str, self.decode(self._index[c])))])
        return buf.getvalue() if fh is None else None


def orbit_bfs(ring, length, generators="E", scalarpool="unit"):
    """Exact orbit partition of unimodular rows over a finite ring Z/n.

    With ``scalarpool="unit"`` only scalar 1 is used: every generator with
    scalar k is the k-th power of the scalar-1 generator, so the orbits agree
    with the all-scalar ones.  ``scalarpool="all"`` uses every residue.
    """
    if not isinstance(ring, ModularIntegers):
        raise ValueError("orbit_bfs needs a finite ring ZZ/n")
    n = ring.modulus
    total = n ** length
    if total > 10 ** 7:
        raise ValueError(f"{total} rows exceed the enumeration limit")
    codes = np.arange(total, dtype=np.int64)
    digits = np.empty((total, length), dtype=np.int64)
    rest = codes.copy()
    for k in range(length - 1, -1, -1):
        digits[:, k] = rest % n
        rest //= n
    g = np.full(total, n, dtype=np.int64)
    for k in range(length):
        g = np.gcd(g, digits[:, k])
    unimod = g == 1
    powers = n ** np.arange(length - 1, -1, -1, dtype=np.int64)
    scalars = [1] if scalarpool == "unit" else list(range(1, n))
    src, dst = [], []
    for i, j in _generator_pairs(length, generators):
        for s in scalars:
            new = digits.copy()
            new[:, j - 1] = (new[:, j - 1] + s * digits[:, i - 1]) % n
            if generators == "ESp" and i != sigma(j):
                c = 1 if (i + j) % 2 else -1
                a, b = sigma(i) - 1, sigma(j) - 1
                new[:, a] = (new[:, a] + c * s * digits[:, b]) % n
            src.append(codes)
            dst.append(new @ powers)
    src = np.concatenate(src)
    dst = np.concatenate(dst)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(total, total))
    _, labels = connected_components(graph, directed=True, connection="weak")
    mins = np.full(labels.max() + 1, total, dtype=np.int64)
    np.minimum.at(mins, labels, codes)
    keep = codes[unimod]
    return OrbitTable(ring, length, generators, keep, mins[labels[unimod]])


def row_is_unimodular_mod(row, n):
    g = n
    for x in row:
        g = gcd(g, int(x))
    return g == 1


__all__ = [
    "UnimodRow", "CompletionRecord", "OrbitTable", "as_unimod", "e1_row",
    "vaserstein_matrix", "vaserstein_readoff", "power_row", "vaserstein_compose",
    "vdk_product", "elementary_reduce", "orbit_bfs",
]
