"""Generator words for E_n and ESp_2n, group membership tests, and rewriting.

A word is evaluated left to right: ``eval([L1, L2, ...]) = L1 @ L2 @ ...``.
Symplectic letters ``SE(i, j, z)`` stand for

    se_ij(z) = I + z E_ij                                  if i == sigma(j)
    se_ij(z) = I + z E_ij - (-1)^(i+j) z E_sigma(j)sigma(i)  otherwise

with sigma swapping 2k-1 and 2k.  For i != sigma(j) the two transvections in
se_ij(z) commute, so se_ij(z) = e_ij(z) e_sigma(j)sigma(i)(c z) with
c = -(-1)^(i+j); this is what :meth:`GroupWord.expand` uses.
"""

from .errors import BadIndices, DecompositionFailed, ReductionUnavailable, RewriteFailed, TransferFailed
from .matrix import AlternatingForm, RingMatrix, det, perp, psi
from .rings import RingElem, ideal_member

DEFAULT_BUDGET = 10 ** 5
DEFAULT_SEED = 0


def sigma(i):
    """The fixed-point-free involution 2k-1 <-> 2k (1-based)."""
    return i - 1 if i % 2 == 0 else i + 1


def _side_coeff(i, j):
    return 1 if (i + j) % 2 else -1  # -(-1)^(i+j)


class Letter:
    __slots__ = ("kind", "i", "j", "scalar")

    def __init__(self, kind, i, j, scalar):
        if kind not in ("E", "SE"):
            raise ValueError(f"unknown letter kind {kind!r}")
        self.kind = kind
        self.i = int(i)
        self.j = int(j)
        self.scalar = scalar

    def __eq__(self, other):
        return (isinstance(other, Letter) and self.kind == other.kind and self.i == other.i
                and self.j == other.j and self.scalar == other.scalar)

    def __hash__(self):
        return hash((self.kind, self.i, self.j, self.scalar))

    def __repr__(self):
        return f"{self.kind}({self.i},{self.j},{self.scalar})"

    def inverse(self):
        return Letter(self.kind, self.i, self.j, -self.scalar)

    def expand(self):
        """Elementary letters whose product equals this letter."""
        if self.kind == "E" or self.i == sigma(self.j):
            return [Letter("E", self.i, self.j, self.scalar)]
        c = _side_coeff(self.i, self.j)
        return [Letter("E", self.i, self.j, self.scalar),
                Letter("E", sigma(self.j), sigma(self.i), self.scalar * c)]


def E(i, j, lam):
    return Letter("E", i, j, lam)


def SE(i, j, z):
    return Letter("SE", i, j, z)


class GroupWord:
    """A product of generator letters acting on size x size matrices."""

    def __init__(self, size, letters=(), ring=None):
        self.size = int(size)
        self.letters = tuple(letters)
        for L in self.letters:
            if L.i == L.j:
                raise BadIndices(f"letter {L} has i == j")
            if not (1 <= L.i <= self.size and 1 <= L.j <= self.size):
                raise BadIndices(f"letter {L} out of range for size {self.size}")
            if L.kind == "SE" and self.size % 2:
                raise BadIndices("symplectic letters need an even size")
        if ring is None and self.letters:
            ring = self.letters[0].scalar.ring
        self.ring = ring

    @property
    def flavor(self):
        kinds = {L.kind for L in self.letters}
        if kinds == {"SE"}:
            return "SymplecticOnly"
        if kinds == {"E", "SE"}:
            return "Mixed"
        return "ElementaryOnly"

    def is_elementary_only(self):
        return all(L.kind == "E" for L in self.letters)

    def is_symplectic_only(self):
        return all(L.kind == "SE" for L in self.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, GroupWord) and self.size == other.size and self.letters == other.letters

    def __hash__(self):
        return hash((self.size, self.letters))

    def __repr__(self):
        return f"GroupWord({self.size}, {list(self.letters)})"

    def __add__(self, other):
        if self.size != other.size:
            raise BadIndices(f"cannot concatenate words of sizes {self.size} and {other.size}")
        return GroupWord(self.size, self.letters + other.letters, self.ring or other.ring)

    def inverse(self):
        return GroupWord(self.size, [L.inverse() for L in reversed(self.letters)], self.ring)

    def expand(self):
        """Rewrite every symplectic letter as elementary letters."""
        out = []
        for L in self.letters:
            out.extend(L.expand())
        return GroupWord(self.size, out, self.ring)

    def shifted(self, offset, size):
        """Embed into a larger size by shifting indices (used for 1 ⊥ ρ)."""
        if offset % 2 and not self.is_elementary_only():
            raise BadIndices("odd shifts break the symplectic pairing")
        return GroupWord(size, [Letter(L.kind, L.i + offset, L.j + offset, L.scalar)
                                for L in self.letters], self.ring)

    def eval(self, ring=None):
        R = ring or self.ring
        if R is None:
            raise ValueError("empty word needs an explicit ring to evaluate")
        n = self.size
        M = [[R.one if a == b else R.zero for b in range(n)] for a in range(n)]
        for L in self.letters:
            z = R(L.scalar).v
            _col_op(R, M, L.i - 1, L.j - 1, z)
            if L.kind == "SE" and L.i != sigma(L.j):
                c = z if _side_coeff(L.i, L.j) == 1 else R.neg(z)
                _col_op(R, M, sigma(L.j) - 1, sigma(L.i) - 1, c)
        return RingMatrix(R, [[RingElem(R, x) for x in r] for r in M], n)

    def apply_to_row(self, v):
        """Row vector ``v`` times eval(word), computed letter by letter."""
        R = v[0].ring
        out = [R(x) for x in v]
        for L in self.letters:
            z = R(L.scalar)
            out[L.j - 1] = out[L.j - 1] + out[L.i - 1] * z
            if L.kind == "SE" and L.i != sigma(L.j):
                c = z * _side_coeff(L.i, L.j)
                out[sigma(L.i) - 1] = out[sigma(L.i) - 1] + out[sigma(L.j) - 1] * c
        return out

    def to_json(self):
        return [[L.kind, L.i, L.j, str(L.scalar)] for L in self.letters]

    @classmethod
    def from_json(cls, data, ring, size):
        letters = []
        for item in data:
            kind, i, j, s = item
            letters.append(Letter(kind, i, j, ring(s) if isinstance(s, str) else ring(s)))
        return cls(size, letters, ring)


def _col_op(R, M, i, j, z):
    """Right-multiply by e_ij(z): column j += z * column i (0-based)."""
    if R.is_zero(z):
        return
    for row in M:
        if not R.is_zero(row[i]):
            row[j] = R.add(row[j], R.mul(row[i], z))


def word(size, letters, ring=None):
    return GroupWord(size, letters, ring)


def se_generator(i, j, z, size, ring=None):
    """Matrix of se_ij(z) in Sp_size."""
    if size % 2:
        raise BadIndices("symplectic generators need an even size")
    if i == j or not (1 <= i <= size and 1 <= j <= size):
        raise BadIndices(f"bad symplectic indices ({i},{j}) for size {size}")
    R = ring or z.ring
    return GroupWord(size, [SE(i, j, R(z))], R).eval(R)


def eval_word(w, ring=None):
    return w.eval(ring)


# ---------------------------------------------------------------- membership


def is_symplectic(a):
    if not a.is_square or a.nrows % 2:
        return False
    P = psi(a.nrows // 2, a.ring)
    return a.T @ P @ a == P


def sp_psi_member(a, form):
    P = form.matrix if isinstance(form, AlternatingForm) else form
    if a.shape != P.shape:
        return False
    return det(a).is_one() and a.T @ P @ a == P


def relative_congruent(a, gens):
    """True when every entry of ``a - I`` lies in the ideal generated by ``gens``."""
    R = a.ring
    gens = [R(g) for g in gens]
    for r in range(a.nrows):
        for c in range(a.ncols):
            x = a[r, c] - (R.one_elem if r == c else R.zero_elem)
            if x.is_zero():
                continue
            if ideal_member(x, gens) is None:
                return False
    return True


# ---------------------------------------------------------------- rewriting


def _nonzero(letters):
    return [L for L in letters if not L.scalar.is_zero()]


def _split_first(R, M, mode):
    """Read ``M = 1 ⊥ γ`` where γ differs from I only in its first column
    (``mode='col'``) or first row (``mode='row'``); return γ's letters."""
    n = M.nrows
    one, zero = R.one_elem, R.zero_elem
    for k in range(n):
        if M[0, k] != (one if k == 0 else zero) or M[k, 0] != (one if k == 0 else zero):
            raise DecompositionFailed("rewriting left a residue in the first row/column")
    letters = []
    for r in range(1, n):
        for c in range(1, n):
            x = M[r, c]
            if r == c:
                if x != one:
                    raise DecompositionFailed("residual block has a non-unit diagonal")
                continue
            if x.is_zero():
                continue
            if mode == "col" and c == 1:
                letters.append(E(r, 1, x))
            elif mode == "row" and r == 1:
                letters.append(E(1, c, x))
            else:
                raise DecompositionFailed("residual block is not a single-line transvection product")
    return letters


class Lemma24Result:
    """``eval(eps) @ (1 ⊥ eval(rho)) == eval(delta)`` with delta symplectic-only."""

    def __init__(self, rho, delta, product):
        self.rho = rho
        self.delta = delta
        self.product = product

    def __iter__(self):
        return iter((self.rho, self.delta))


def lemma24_decompose(eps, ring=None, budget=DEFAULT_BUDGET, seed=DEFAULT_SEED):
    """Find ρ ∈ E_{N-1} with ε(1 ⊥ ρ) ∈ ESp_N, plus an ESp word for the product.

    The prefix ε_k = δ_k (1 ⊥ P_k) is maintained letter by letter: letters
    inside the lower block extend P; a first-row or first-column letter is
    pushed through 1 ⊥ P and split into symplectic letters times a one-line
    transvection product that is absorbed back into P.  The result is always
    re-verified.  ``budget`` and ``seed`` are accepted for interface symmetry;
    the rewriting is closed-form and needs no search.
    """
    R = ring or eps.ring
    N = eps.size
    if N % 2:
        raise DecompositionFailed("lemma24_decompose needs an even size")
    if not eps.is_elementary_only():
        eps = eps.expand()
    if R is None:
        R = eps.ring
    if R is None:
        raise ValueError("empty word needs an explicit ring")
    m = N - 1
    P = RingMatrix.identity(R, m)
    Pinv = RingMatrix.identity(R, m)
    rho = []  # letters of P, leftmost first
    delta = []
    for L in eps.letters:
        lam = R(L.scalar)
        if lam.is_zero():
            continue
        i, j = L.i, L.j
        if i >= 2 and j >= 2:
            g = GroupWord(m, [E(i - 1, j - 1, lam)], R).eval(R)
            ginv = GroupWord(m, [E(i - 1, j - 1, -lam)], R).eval(R)
            P = P @ g
            Pinv = ginv @ Pinv
            rho.append(E(i - 1, j - 1, lam))
            continue
        if i == 1:
            # (1⊥P) e_1j(λ) = T (1⊥P), T = I + e_1^T c
            c = [R.zero_elem] + [lam * x for x in Pinv.row(j - 2)]
            Trows = [list(r) for r in RingMatrix.identity(R, N).rows]
            for k in range(1, N):
                Trows[0][k] = c[k]
            T = RingMatrix(R, Trows, N)
            D0 = GroupWord(N, _nonzero([SE(1, k + 1, c[k]) for k in range(2, N)]), R)
            N0 = D0.inverse().eval(R) @ T
            y = N0[0, 1]
            D = D0 + GroupWord(N, _nonzero([SE(1, 2, y)]), R)
            M = GroupWord(N, _nonzero([SE(1, 2, -y)]), R).eval(R) @ N0
            gamma = _split_first(R, M, "col")
        else:
            # (1⊥P) e_i1(λ) = T (1⊥P), T = I + d^T e_1
            d = [R.zero_elem] + [lam * x for x in P.col(i - 2)]
            Trows = [list(r) for r in RingMatrix.identity(R, N).rows]
            for k in range(1, N):
                Trows[k][0] = d[k]
            T = RingMatrix(R, Trows, N)
            D0 = GroupWord(N, _nonzero([SE(k + 1, 1, d[k]) for k in range(2, N)]), R)
            col1 = D0.eval(R).col(0)
            y = d[1] - col1[1]
            D = GroupWord(N, _nonzero([SE(2, 1, y)]), R) + D0
            M = D.inverse().eval(R) @ T
            gamma = _split_first(R, M, "row")
        delta.extend(D.letters)
        gw = GroupWord(m, gamma, R)
        P = gw.eval(R) @ P
        Pinv = Pinv @ gw.inverse().eval(R)
        rho = list(gamma) + rho
    rho_out = GroupWord(m, rho, R).inverse()
    delta_w = GroupWord(N, delta, R)
    product = eps.eval(R) @ perp(RingMatrix.identity(R, 1), rho_out.eval(R))
    if not is_symplectic(product):
        raise DecompositionFailed("ε(1⊥ρ) failed the symplectic identity")
    if delta_w.eval(R) != product:
        raise DecompositionFailed("symplectic word does not reproduce ε(1⊥ρ)")
    return Lemma24Result(rho_out, delta_w, product)


def symplectic_reduce(v, budget=DEFAULT_BUDGET, seed=DEFAULT_SEED):
    """Symplectic-only word μ with ``v · eval(μ) = e_1``."""
    from .unimodular import elementary_reduce, as_unimod

    row = as_unimod(v)
    R = row.ring
    if len(row) % 2:
        raise ReductionUnavailable("symplectic reduction needs an even length")
    eps = elementary_reduce(row, budget=budget, seed=seed)
    res = lemma24_decompose(eps, R)
    mu = res.delta
    if mu.apply_to_row(row.entries) != _e1(R, len(row)):
        raise ReductionUnavailable("symplectic reduction failed its row identity")
    return mu


def _e1(R, n):
    return [R.one_elem] + [R.zero_elem] * (n - 1)


class Transfer:
    """η ∈ Sp_ψ with e_1 η = e_1 ε, and an elementary word evaluating to η."""

    def __init__(self, matrix, word):
        self.matrix = matrix
        self.word = word


def transfer_to_sp_psi(eps, form, ring=None, budget=DEFAULT_BUDGET, seed=DEFAULT_SEED):
    R = ring or eps.ring or form.ring
    N = eps.size
    P = form.matrix if isinstance(form, AlternatingForm) else form
    if P.nrows != N:
        raise TransferFailed("form and word sizes disagree")
    target = eps.apply_to_row(_e1(R, N))
    if target == _e1(R, N):
        return Transfer(RingMatrix.identity(R, N), GroupWord(N, [], R))
    try:
        if P == psi(N // 2, R):
            res = lemma24_decompose(eps.inverse(), R)
            eta_w = res.delta.inverse().expand()
        else:
            from .witt import reduce_alternating

            F = reduce_alternating(AlternatingForm(P))
            Fw = F.word
            conj = Fw.inverse() + eps + Fw
            u = Fw.apply_to_row(_e1(R, N))
            mu = orbit_to_esp(u, conj, budget=budget, seed=seed)
            eta_w = Fw + mu.expand() + Fw.inverse()
    except (DecompositionFailed, ReductionUnavailable, RewriteFailed) as exc:
        raise TransferFailed(str(exc)) from exc
    eta = eta_w.eval(R)
    if eta_w.apply_to_row(_e1(R, N)) != target or not sp_psi_member(eta, P):
        raise TransferFailed("transferred matrix failed its postconditions")
    return Transfer(eta, eta_w)


def orbit_to_esp(v, eps, ring=None, budget=DEFAULT_BUDGET, seed=DEFAULT_SEED):
    """Symplectic-only μ with ``v · eval(μ) = v · eval(ε)`` for unimodular v.

    With α = symplectic_reduce(v) we have vε = e_1(α⁻¹ε); factoring
    (α⁻¹ε)⁻¹ = δ(1 ⊥ ρ) gives e_1(α⁻¹ε) = e_1δ⁻¹, so μ = αδ⁻¹.
    """
    from .unimodular import as_unimod

    row = as_unimod(v)
    R = ring or row.ring
    N = eps.size
    vals = row.entries
    target = eps.apply_to_row(vals)
    if target == list(vals):
        return GroupWord(N, [], R)
    try:
        alpha = symplectic_reduce(row, budget=budget, seed=seed)
        kappa = alpha.expand().inverse() + eps
        res = lemma24_decompose(kappa.inverse(), R)
    except (ReductionUnavailable, DecompositionFailed) as exc:
        raise RewriteFailed(str(exc)) from exc
    mu = alpha + res.delta.inverse()
    if mu.apply_to_row(vals) != target:
        raise RewriteFailed("symplectic word does not reproduce the orbit image")
    return mu
