"""Elementary symplectic Witt classes with replayable equivalence certificates.

A certificate relating A (size 2r) and B (size 2s) is an elementary word ε of
size 2(r+s+l) with

    A ⊥ ψ_{s+l} = ε^T (B ⊥ ψ_{r+l}) ε.
"""

from collections import deque

from .errors import (
    DecompositionFailed,
    NotAlternating,
    ReductionMismatch,
    ReductionUnavailable,
    SearchFailed,
)
from .matrix import AlternatingForm, RingMatrix, det, perp, psi
from .unimodular import UnimodRow, as_unimod, elementary_reduce, vaserstein_matrix
from .words import DEFAULT_BUDGET, DEFAULT_SEED, E, GroupWord


class WittClass:
    """Class of a Pfaffian-one alternating form."""

    def __init__(self, form):
        if not isinstance(form, AlternatingForm):
            form = AlternatingForm(form)
        if not form.pfaffian.is_one():
            raise NotAlternating(f"Witt classes need pfaffian 1, got {form.pfaffian}")
        self.representative = form

    @property
    def size(self):
        return self.representative.size

    def __repr__(self):
        return f"WittClass({self.representative.matrix.to_text()})"


class WittCertificate:
    def __init__(self, left, right, pad, word):
        self.left = left
        self.right = right
        self.pad = pad
        self.word = word

    @property
    def m(self):
        return (self.left.size + self.right.size) // 2 + self.pad

    def to_json(self):
        return {
            "kind": "witt",
            "ring": self.left.ring.key,
            "left": self.left.matrix.to_strings(),
            "right": self.right.matrix.to_strings(),
            "pad": self.pad,
            "word": self.word.to_json(),
        }

    @classmethod
    def from_json(cls, data, ring):
        left = AlternatingForm(RingMatrix(ring, [[ring(x) for x in r] for r in data["left"]]))
        right = AlternatingForm(RingMatrix(ring, [[ring(x) for x in r] for r in data["right"]]))
        pad = int(data["pad"])
        size = left.size + right.size + 2 * pad
        return cls(left, right, pad, GroupWord.from_json(data["word"], ring, size))


def _mat(x):
    return x.matrix if isinstance(x, AlternatingForm) else x


def padded_sides(A, B, pad):
    A, B = _mat(A), _mat(B)
    R = A.ring
    r, s = A.nrows // 2, B.nrows // 2
    return perp(A, psi(s + pad, R)), perp(B, psi(r + pad, R))


def verify_certificate(A, B, cert):
    """Replay ``A ⊥ ψ_{s+l} = ε^T (B ⊥ ψ_{r+l}) ε`` exactly."""
    A, B = _mat(A), _mat(B)
    if A.ring != B.ring:
        return False
    lhs, rhs = padded_sides(A, B, cert.pad)
    if cert.word.size != lhs.nrows:
        return False
    eps = cert.word.eval(A.ring)
    if not det(eps).is_one():
        return False
    return eps.T @ rhs @ eps == lhs


def perp_class(A, B):
    a = A.representative if isinstance(A, WittClass) else A
    b = B.representative if isinstance(B, WittClass) else B
    M = perp(_mat(a), _mat(b))
    return WittClass(AlternatingForm(M, a.pfaffian * b.pfaffian))


def congruence_transport(V, phi):
    """φ^T V φ with Pfaffian Pf(V)·det(φ)."""
    if not isinstance(V, AlternatingForm):
        V = AlternatingForm(V)
    if phi.shape != V.matrix.shape:
        raise ValueError("transport matrix size does not match the form")
    return AlternatingForm(phi.T @ V.matrix @ phi, V.pfaffian * det(phi))


def transport_vaserstein(v, w, alpha):
    """V(vα, w(α⁻¹)^T); equals (1 ⊥ α)^T V(v, w) (1 ⊥ α) when det α = 1."""
    v2 = alpha.vecmul(list(v))
    w2 = alpha.inverse().T.vecmul(list(w))
    return vaserstein_matrix(v2, w2)


class Reduction:
    """Elementary ``word`` with ``eval(word)^T A eval(word) = ψ_r``."""

    def __init__(self, word, reduced):
        self.word = word
        self.reduced = reduced


def reduce_alternating(form, budget=DEFAULT_BUDGET, seed=DEFAULT_SEED):
    """Bring a Pfaffian-one alternating form to ψ_r by elementary congruence.

    Block by block: reduce the top row of the remaining block to e_1 (it is
    unimodular because the form is invertible), then clear the second row of
    the block with first-row transvections against the new ±1 entries.
    """
    if not isinstance(form, AlternatingForm):
        form = AlternatingForm(form)
    A = form.matrix
    R = A.ring
    N = A.nrows
    letters = []
    cur = A
    for k in range(0, N, 2):
        if k + 2 < N:
            sub = [cur[k, c] for c in range(k + 1, N)]
            try:
                red = elementary_reduce(UnimodRow(sub), budget=budget, seed=seed)
            except Exception as exc:
                raise ReductionMismatch(f"block {k // 2}: {exc}") from exc
            G = red.shifted(k + 1, N)
            cur = _congr(cur, G)
            letters.extend(G.letters)
        elif not cur[k, k + 1].is_one():
            raise ReductionMismatch(f"final block has pfaffian {cur[k, k + 1]}, not 1")
        clear = [E(k + 1, c + 1, cur[k + 1, c]) for c in range(k + 2, N) if not cur[k + 1, c].is_zero()]
        if clear:
            G = GroupWord(N, clear, R)
            cur = _congr(cur, G)
            letters.extend(clear)
    word = GroupWord(N, letters, R)
    if cur != psi(N // 2, R):
        raise ReductionMismatch("congruence did not reach the standard form")
    return Reduction(word, cur)


def _congr(M, word):
    F = word.eval(M.ring)
    return F.T @ M @ F


def _embed(word, size):
    return GroupWord(size, word.letters, word.ring)


def _compose(A, B, FA, FB, pad):
    """ε = (F_B ⊥ I)(F_A ⊥ I)^{-1} on the padded size."""
    A, B = _mat(A), _mat(B)
    size = A.nrows + B.nrows + 2 * pad
    R = A.ring
    w = _embed(FB, size) + _embed(FA, size).inverse()
    if w.ring is None:
        w = GroupWord(size, [], R)
    return w


def _trivializer(row, w, redword):
    """Elementary F of size 4 with F^T V(v, w) F = ψ₂."""
    R = row.ring
    if redword.apply_to_row(row.entries) != [R.one_elem, R.zero_elem, R.zero_elem]:
        raise ReductionMismatch("reduction word does not send v to e_1")
    alpha = redword.eval(R)
    # the transported form is V(e_1, w') with w' = w(α⁻¹)^T, so its second
    # row reads (-1, 0, w'_2, -w'_1)
    wp = alpha.inverse().T.vecmul(w)
    clear = [x for x in (E(1, 3, wp[2]), E(1, 4, -wp[1])) if not x.scalar.is_zero()]
    F = redword.shifted(1, 4) + GroupWord(4, clear, R)
    if _congr(vaserstein_matrix(row.entries, w).matrix, F) != psi(2, R):
        raise ReductionMismatch("transported form did not reach ψ₂")
    return F


def trivialize(v, redword=None, w=None, budget=DEFAULT_BUDGET, seed=DEFAULT_SEED):
    """Certificate relating V(v, w) and ψ₂.

    Transport by 1 ⊥ eval(redword) so the first row becomes (0,1,0,0), then
    clear the second row with e_13, e_14.
    """
    row = as_unimod(v)
    if len(row) != 3:
        raise ValueError("trivialize needs a row of length 3")
    R = row.ring
    w = list(row.witness) if w is None else [R(x) for x in w]
    V = vaserstein_matrix(row.entries, w)
    if redword is None:
        redword = elementary_reduce(row, budget=budget, seed=seed)
    F = _trivializer(row, w, redword)
    P2 = AlternatingForm(psi(2, R), R.one_elem)
    cert = WittCertificate(V, P2, 0, _compose(V, P2, F, GroupWord(4, [], R), 0))
    if not verify_certificate(V, P2, cert):
        raise ReductionMismatch("trivialization certificate failed replay")
    return cert


def vaserstein_connector(v, w, w2, redword=None, budget=DEFAULT_BUDGET, seed=DEFAULT_SEED):
    """Elementary ε of size 4 with V(v, w) = ε^T V(v, w2) ε (no padding)."""
    row = as_unimod(v)
    R = row.ring
    w = [R(x) for x in w]
    w2 = [R(x) for x in w2]
    if w == w2:
        return GroupWord(4, [], R)
    try:
        if redword is None:
            redword = elementary_reduce(row, budget=budget, seed=seed)
        F1 = _trivializer(row, w, redword)
        F2 = _trivializer(row, w2, redword)
    except (ReductionUnavailable, ReductionMismatch) as exc:
        raise SearchFailed(f"no reduction available: {exc}", 0) from exc
    eps = F2 + F1.inverse()
    V1 = vaserstein_matrix(row.entries, w).matrix
    V2 = vaserstein_matrix(row.entries, w2).matrix
    if _congr(V2, eps) != V1:
        raise SearchFailed("connector failed its congruence identity", 0)
    return eps


def change_witness(v, w, w2, redword=None, budget=DEFAULT_BUDGET, seed=DEFAULT_SEED):
    """Certificate relating V(v, w) and V(v, w2) by composing through ψ₂."""
    row = as_unimod(v)
    R = row.ring
    V1 = vaserstein_matrix(row.entries, w)
    V2 = vaserstein_matrix(row.entries, w2)
    eps = vaserstein_connector(row, w, w2, redword, budget, seed)
    cert = WittCertificate(V1, V2, 0, _embed(eps, 8) if len(eps) else GroupWord(8, [], R))
    if not verify_certificate(V1, V2, cert):
        raise SearchFailed("composed certificate failed replay", 0)
    return cert


def find_equivalence(A, B, budget=DEFAULT_BUDGET, seed=DEFAULT_SEED, pad=0):
    """Certificate relating two Pfaffian-one forms, or SearchFailed.

    Tries the constructive route (reduce both sides to ψ) first; falls back to
    a breadth-first search over words in e_ij(±1) with ``budget`` states.
    """
    A = A if isinstance(A, AlternatingForm) else AlternatingForm(A)
    B = B if isinstance(B, AlternatingForm) else AlternatingForm(B)
    R = A.ring
    size = A.size + B.size + 2 * pad
    lhs, rhs = padded_sides(A, B, pad)
    if lhs == rhs:
        return WittCertificate(A, B, pad, GroupWord(size, [], R))
    try:
        FA = reduce_alternating(A, budget, seed).word
        FB = reduce_alternating(B, budget, seed).word
        cert = WittCertificate(A, B, pad, _compose(A, B, FA, FB, pad))
        if verify_certificate(A, B, cert):
            return cert
    except (ReductionMismatch, ReductionUnavailable, DecompositionFailed):
        pass
    return _bfs(A, B, lhs, rhs, size, budget)


def _bfs(A, B, lhs, rhs, size, budget):
    R = A.ring
    gens = [E(i, j, s) for i in range(1, size + 1) for j in range(1, size + 1) if i != j
            for s in (R.one_elem, -R.one_elem)]
    seen = {rhs: ()}
    queue = deque([rhs])
    explored = 0
    while queue:
        cur = queue.popleft()
        explored += 1
        if explored > budget:
            break
        path = seen[cur]
        for L in gens:
            G = GroupWord(size, [L], R).eval(R)
            nxt = G.T @ cur @ G
            if nxt in seen:
                continue
            seen[nxt] = path + (L,)
            if nxt == lhs:
                cert = WittCertificate(A, B, (size - A.size - B.size) // 2,
                                       GroupWord(size, seen[nxt], R))
                if verify_certificate(A, B, cert):
                    return cert
            queue.append(nxt)
    raise SearchFailed(f"no certificate within budget ({explored} states explored)", explored)
