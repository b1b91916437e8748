"""SL and Sp_4 completions of unimodular rows.

Every routine here either returns an object whose defining identities were
re-checked exactly, or raises naming what could not be constructed.
"""

from .errors import (
    DecompositionFailed,
    LiftUnsupported,
    NoStrategy,
    ReductionUnavailable,
    RelationBroken,
    RewriteFailed,
    SearchFailed,
    StepFailed,
    UndecidableHere,
    UnsupportedRing,
)
from .graded import (
    embed_matrix,
    eval_at,
    excision_ring,
    lift_row,
    project_matrix,
    swan_weibel_row,
)
from .matrix import AlternatingForm, RingMatrix, det, perp, psi
from .rings import Integers, PolynomialRing, RingElem, extended_gcd, ideal_member, unimodularity_witness
from .unimodular import (
    CompletionRecord,
    UnimodRow,
    as_unimod,
    e1_row,
    elementary_reduce,
    vaserstein_readoff,
)
from .witt import change_witness, vaserstein_connector
from .words import (
    DEFAULT_BUDGET,
    DEFAULT_SEED,
    GroupWord,
    Letter,
    SE,
    is_symplectic,
    lemma24_decompose,
    orbit_to_esp,
    relative_congruent,
    symplectic_reduce,
)


def check_contract(theta, v):
    """Θ^T ψ Θ = ψ and e_1 Θ = v, recomputed from scratch."""
    v = list(v)
    n = len(v)
    if theta.shape != (n, n) or n % 2:
        return False
    return is_symplectic(theta) and theta.row(0) == [theta.ring(x) for x in v]


# ---------------------------------------------------------------- SL completion


def swan_towber(p, q, r, a, b, c):
    """Completion of (a², b, c) from the relation pa + qb + rc = 1."""
    R = a.ring
    p, q, r, b, c = (R(x) for x in (p, q, r, b, c))
    if not (p * a + q * b + r * c).is_one():
        raise RelationBroken("p·a + q·b + r·c is not 1")
    M = swan_towber_matrix(p, q, r, a, b, c)
    if not det(M).is_one():  # pragma: no cover - the identity is exact
        raise RelationBroken("Swan-Towber determinant is not 1")
    return CompletionRecord(UnimodRow([a * a, b, c]), M)


def swan_towber_matrix(p, q, r, a, b, c):
    R = a.ring
    rows = [
        [a * a, b, c],
        [b + r * a, -r * r + p * r * b, -p + q * r - p * q * b],
        [c - q * a, p + q * r + p * r * c, -q * q - p * q * c],
    ]
    return RingMatrix(R, rows, 3)


def complete_row(v, swan_towber_data=None, budget=DEFAULT_BUDGET, seed=DEFAULT_SEED):
    """A determinant-one matrix with first row v.

    Dispatch: e_1 gives the identity; Swan-Towber when ``(p, q, r, a)`` is
    supplied for a row (a², b, c); otherwise the inverse of an elementary
    reduction word.
    """
    row = as_unimod(v)
    R = row.ring
    n = len(row)
    if row.is_e1():
        return CompletionRecord.identity(R, n)
    if swan_towber_data is not None:
        p, q, r, a = (R(x) for x in swan_towber_data)
        if n != 3 or row[0] != a * a:
            raise NoStrategy("Swan-Towber data does not match a row (a², b, c)")
        return swan_towber(p, q, r, a, row[1], row[2])
    try:
        eps = elementary_reduce(row, budget=budget, seed=seed)
    except ReductionUnavailable as exc:
        raise NoStrategy(str(exc)) from exc
    return CompletionRecord(row, eps.inverse().eval(R))


def symplectic_complete(v, budget=DEFAULT_BUDGET, seed=DEFAULT_SEED):
    """Θ = eval(μ)⁻¹ for μ = symplectic_reduce(v)."""
    row = as_unimod(v)
    mu = symplectic_reduce(row, budget=budget, seed=seed)
    theta = mu.inverse().eval(row.ring)
    if not check_contract(theta, row.entries):  # pragma: no cover
        raise StepFailed("reduce", "symplectic completion failed its contract")
    return theta, mu


# ---------------------------------------------------------------- proof trace


class PipelineTrace:
    """Materialized proof data for an Sp_4 completion built from σ and ρ."""

    STEPS = ("sigma", "alternating", "readoff", "rho", "witt", "lemma24",
             "delta", "connector", "esp", "theta")

    def __init__(self, row):
        self.row = row
        self.sigma = None
        self.A = None
        self.v_prime = None
        self.w_prime = None
        self.rho = None
        self.witt_certificate = None
        self.epsilon = None
        self.epsilon1 = None
        self.delta1 = None
        self.delta = None
        self.u = None
        self.epsilon_prime = None
        self.epsilon1_prime = None
        self.theta = None
        self.flags = {}

    @property
    def complete(self):
        return all(self.flags.get(s) for s in self.STEPS)

    def verify(self):
        """Re-check every stored identity from the stored data."""
        R = self.row.ring
        P2 = psi(2, R)
        one = RingMatrix.identity(R, 1)
        s = self.sigma.matrix
        rho = self.rho.matrix
        checks = {
            "sigma": s.row(0) == list(self.row.entries) and det(s).is_one(),
            "alternating": s.T @ P2 @ s == self.A.matrix,
            "readoff": vaserstein_readoff(self.A)[0].entries == self.v_prime.entries,
            "rho": rho.row(0) == list(self.v_prime.entries) and det(rho).is_one(),
        }
        B = perp(one, rho).T @ P2 @ perp(one, rho)
        eps = self.epsilon.eval(R)
        checks["witt"] = eps.T @ B @ eps == self.A.matrix
        e1p = self.epsilon1.eval(R)
        d1 = self.delta1.eval(R)
        checks["lemma24"] = eps @ perp(one, e1p) == d1 and is_symplectic(d1)
        checks["delta"] = (self.delta == s @ perp(one, e1p) @ d1.inverse() @ perp(one, rho.inverse())
                           and is_symplectic(self.delta))
        checks["connector"] = self.epsilon_prime.apply_to_row(list(self.u)) == list(self.row.entries)
        mu = self.epsilon1_prime
        checks["esp"] = (mu.is_symplectic_only()
                         and mu.apply_to_row(list(self.u)) == list(self.row.entries))
        checks["theta"] = (self.theta == self.delta @ d1 @ mu.eval(R)
                           and check_contract(self.theta, self.row.entries))
        return checks

    def to_json(self):
        R = self.row.ring
        return [
            {"step": "sigma", "matrix": self.sigma.matrix.to_strings()},
            {"step": "alternating", "matrix": self.A.matrix.to_strings()},
            {"step": "readoff", "v": [str(x) for x in self.v_prime],
             "w": [str(x) for x in self.w_prime]},
            {"step": "rho", "matrix": self.rho.matrix.to_strings()},
            {"step": "witt", "word": self.epsilon.to_json(),
             "certificate": self.witt_certificate.to_json()},
            {"step": "lemma24", "epsilon1": self.epsilon1.to_json(),
             "delta1": self.delta1.to_json()},
            {"step": "delta", "matrix": self.delta.to_strings()},
            {"step": "connector", "u": [str(x) for x in self.u], "word": self.epsilon_prime.to_json()},
            {"step": "esp", "word": self.epsilon1_prime.to_json()},
            {"step": "theta", "matrix": self.theta.to_strings(), "ring": R.key},
        ]


def _step(trace, name, ok, msg):
    trace.flags[name] = bool(ok)
    if not ok:
        raise StepFailed(name, msg, trace)


def theorem34_trace(v, sigma=None, rho=None, eps_u=None, eps_v=None,
                    budget=DEFAULT_BUDGET, seed=DEFAULT_SEED):
    """Build Θ ∈ Sp_4 with e_1Θ = v from σ ∈ SL_4 (e_1σ = v) and ρ ∈ SL_3.

    σ and ρ are computed by :func:`complete_row` when not supplied.  The
    elementary connector ε' with (e_1δδ_1)ε' = v is ε_u·ε_v⁻¹ for reduction
    words of u and v (optionally supplied as ``eps_u``/``eps_v``).
    """
    row = as_unimod(v)
    if len(row) != 4:
        raise ValueError("theorem34_trace needs a row of length 4")
    R = row.ring
    tr = PipelineTrace(row)
    P2 = psi(2, R)
    one = RingMatrix.identity(R, 1)

    try:
        sigma = sigma or complete_row(row, budget=budget, seed=seed)
    except NoStrategy as exc:
        raise StepFailed("sigma", str(exc), tr) from exc
    tr.sigma = sigma
    s = sigma.matrix
    _step(tr, "sigma", s.row(0) == list(row.entries) and det(s).is_one(), "e_1σ != v or det σ != 1")

    A = s.T @ P2 @ s
    tr.A = AlternatingForm(A, det(s))
    _step(tr, "alternating", tr.A.pfaffian.is_one(), "σ^Tψ₂σ does not have pfaffian 1")

    vp, wp = vaserstein_readoff(tr.A)
    tr.v_prime, tr.w_prime = vp, wp
    _step(tr, "readoff", True, "")

    try:
        rho = rho or complete_row(vp, budget=budget, seed=seed)
    except NoStrategy as exc:
        raise StepFailed("rho", str(exc), tr) from exc
    tr.rho = rho
    _step(tr, "rho", rho.matrix.row(0) == list(vp.entries) and det(rho.matrix).is_one(),
          "ρ is not a completion of v'")

    # (1⊥ρ)^T ψ₂ (1⊥ρ) = V(v', w'') with w'' read off, so ε comes from a
    # change of witness for v'
    one_rho = perp(one, rho.matrix)
    B = one_rho.T @ P2 @ one_rho
    _, w2 = vaserstein_readoff(AlternatingForm(B, R.one_elem))
    try:
        redword = elementary_reduce(vp, budget=budget, seed=seed)
        eps = vaserstein_connector(vp, wp, w2, redword)
        tr.witt_certificate = change_witness(vp, wp, w2, redword)
    except (ReductionUnavailable, SearchFailed) as exc:
        raise StepFailed("witt", str(exc), tr) from exc
    tr.epsilon = eps
    epsm = eps.eval(R)
    _step(tr, "witt", epsm.T @ B @ epsm == A, "V(v',w') != ε^T(1⊥ρ)^Tψ₂(1⊥ρ)ε")

    try:
        res = lemma24_decompose(eps, R, budget=budget, seed=seed)
    except DecompositionFailed as exc:
        raise StepFailed("lemma24", str(exc), tr) from exc
    tr.epsilon1, tr.delta1 = res.rho, res.delta
    e1m = res.rho.eval(R)
    d1 = res.delta.eval(R)
    _step(tr, "lemma24", epsm @ perp(one, e1m) == d1 and is_symplectic(d1), "ε(1⊥ε₁) is not δ₁")

    delta = s @ perp(one, e1m) @ d1.inverse() @ perp(one, rho.matrix.inverse())
    tr.delta = delta
    _step(tr, "delta", is_symplectic(delta), "δ is not symplectic")

    u = (delta @ d1).row(0)
    tr.u = u
    try:
        eu = eps_u or elementary_reduce(UnimodRow(u), budget=budget, seed=seed)
        ev = eps_v or elementary_reduce(row, budget=budget, seed=seed)
    except ReductionUnavailable as exc:
        raise StepFailed("connector", str(exc), tr) from exc
    conn = eu + ev.inverse()
    tr.epsilon_prime = conn
    _step(tr, "connector", conn.apply_to_row(u) == list(row.entries), "(e_1δδ₁)ε' != v")

    try:
        mu = orbit_to_esp(UnimodRow(u), conn, R, budget=budget, seed=seed)
    except RewriteFailed as exc:
        raise StepFailed("esp", str(exc), tr) from exc
    tr.epsilon1_prime = mu
    _step(tr, "esp", mu.apply_to_row(u) == list(row.entries), "(e_1δδ₁)ε₁' != v")

    theta = delta @ d1 @ mu.eval(R)
    tr.theta = theta
    _step(tr, "theta", check_contract(theta, row.entries), "Θ fails Θ^Tψ₂Θ = ψ₂ or e_1Θ = v")
    return tr


# ---------------------------------------------------------------- relative route


def _near_div(R, a, b):
    """Quotient with the smallest remainder (symmetric over ZZ)."""
    q, r = R.euclid_divmod(a.v, b.v)
    if isinstance(R, Integers) and abs(r - b.v) < abs(r):
        q += 1
    return RingElem(R, q)


class _RelReducer:
    """Symplectic reduction of a row ≡ e_1 (mod I) with every letter either
    fixing e_1 ("free", any scalar) or carrying a scalar in I ("restricted")."""

    def __init__(self, row, gens, budget):
        self.R = row[0].ring
        self.v = list(row)
        self.gens = gens
        self.letters = []
        self.budget = budget

    @staticmethod
    def is_free(L):
        return L.i != 1 and L.j != 2

    def apply(self, i, j, z):
        if z.is_zero():
            return
        L = SE(i, j, z)
        if not self.is_free(L) and ideal_member(z, self.gens) is None:
            raise LiftUnsupported(f"restricted letter {L} has a scalar outside the ideal")
        self.letters.append(L)
        self.v = GroupWord(4, [L], self.R).apply_to_row(self.v)
        self.budget -= 1
        if self.budget < 0:
            raise LiftUnsupported("relative reduction budget exhausted")

    def unit_finish(self):
        R = self.R
        u = self.v[0]
        try:
            inv = u.inverse()
        except UndecidableHere:
            inv = None
        if inv is None:
            return False
        one = R.one_elem
        if not u.is_one():
            self.apply(1, 2, (one - u - self.v[1]) * inv)
            self.apply(2, 1, one)
        self.apply(1, 3, -self.v[2])
        self.apply(1, 4, -self.v[3])
        self.apply(1, 2, -self.v[1])
        return True

    def pair_euclid(self, k, g):
        """Relative Euclid on (v_1, v_k): v_1 -= q v_k freely, v_k -= g q' v_1."""
        R = self.R
        while True:
            if self.unit_finish():
                return True
            vk = self.v[k - 1]
            if vk.is_zero():
                return False
            q = _near_div(R, self.v[0], vk)
            self.apply(k, 1, -q)
            if self.unit_finish():
                return True
            gv1 = g * self.v[0]
            q2 = _near_div(R, self.v[k - 1], gv1)
            if q.is_zero() and q2.is_zero():
                raise LiftUnsupported("relative Euclid made no progress")
            self.apply(1, k, -(g * q2))

    def run(self):
        R = self.R
        if self.unit_finish():
            return
        if not getattr(R, "is_euclidean", False):
            raise LiftUnsupported(f"relative reduction over {R} needs a unit first coordinate")
        g = self.gens[0]
        for h in self.gens[1:]:
            g = extended_gcd(g, h)[0]
        # merge v_3, v_4 with plain free letters (σ(4) = 3)
        while not self.v[3].is_zero():
            if self.v[2].is_zero():
                self.apply(4, 3, R.one_elem)
                continue
            q, _ = R.euclid_divmod(self.v[3].v, self.v[2].v)
            self.apply(3, 4, -RingElem(R, q))
            if not self.v[3].is_zero():
                q, _ = R.euclid_divmod(self.v[2].v, self.v[3].v)
                self.apply(4, 3, -RingElem(R, q))
        if self.pair_euclid(2, g):
            return
        if self.pair_euclid(3, g):
            return
        if not self.unit_finish():
            raise LiftUnsupported("relative reduction ended without a unit pivot")


def relative_word(v, gens, budget=DEFAULT_BUDGET):
    """Symplectic word μ over R with vμ = e_1, letters free or with scalars in I."""
    R = v[0].ring
    red = _RelReducer(v, [R(g) for g in gens], budget)
    red.run()
    if red.v != list(e1_row(R, 4).entries):
        raise LiftUnsupported("relative reduction did not reach e_1")
    return GroupWord(4, red.letters, R)


def relative_complete(v, gens, budget=DEFAULT_BUDGET, trace=None):
    """Θ ∈ Sp_4(R) with e_1Θ = v and Θ ≡ I (mod I) for v ≡ e_1 (mod I).

    The reduction word is lifted to R ⊕ I (free letters as (b, 0), restricted
    ones as (0, b)); with σ its value, σ̄ its reduction mod 0 ⊕ I and
    δ = σσ̄⁻¹, the answer is the projection g(δ⁻¹) = g(σ̄σ⁻¹).
    """
    row = [x for x in (v.entries if isinstance(v, UnimodRow) else v)]
    R = row[0].ring
    gens = [R(g) for g in gens]
    if len(row) != 4:
        raise ValueError("relative_complete needs a row of length 4")
    E = excision_ring(R, gens)
    try:
        lifted = lift_row(row, E)
    except UnsupportedRing as exc:
        raise LiftUnsupported(str(exc)) from exc
    mu = relative_word(row, gens, budget)
    letters = []
    for L in mu:
        if _RelReducer.is_free(L):
            letters.append(Letter("SE", L.i, L.j, E(L.scalar)))
        else:
            cof = ideal_member(L.scalar, gens)
            letters.append(Letter("SE", L.i, L.j, E.pair_with_cofactors(0, cof)))
    sw = GroupWord(4, letters, E)
    if sw.apply_to_row(lifted) != list(e1_row(E, 4).entries):
        raise StepFailed("lift", "lifted word does not reduce the lifted row", trace)
    sigma_inv = sw.inverse().eval(E)
    sigma_bar = embed_matrix(project_matrix(sw.eval(E), "mod"), E)
    theta_tilde = sigma_bar @ sigma_inv
    theta = project_matrix(theta_tilde, "hom")
    if trace is not None:
        trace.extend([
            {"step": "lift", "row": [str(x) for x in lifted]},
            {"step": "word", "word": mu.to_json()},
            {"step": "theta", "matrix": theta.to_strings()},
        ])
    if not check_contract(theta, row):
        raise StepFailed("theta", "relative completion failed Θ^Tψ₂Θ = ψ₂ or e_1Θ = v", trace)
    if not relative_congruent(theta, gens):
        raise StepFailed("congruence", "Θ is not congruent to I modulo the ideal", trace)
    return theta


# ---------------------------------------------------------------- graded route


def graded_complete(v, budget=DEFAULT_BUDGET, seed=DEFAULT_SEED, trace=None):
    """Completion through the Swan-Weibel homotopy.

    W(X) = ε(v)(X) is reduced over A[X] (its value at X = 0 is the degree-0
    row, checked unimodular over A_0); the reduction word is evaluated at
    X = 1, where W(1) = v.
    """
    row = as_unimod(v)
    R = row.ring
    if not isinstance(getattr(R, "poly", R), PolynomialRing):
        theta, _ = symplectic_complete(row, budget, seed)
        return theta
    W, T = swan_weibel_row(row.entries)
    W0 = [eval_at(w, 0, R) for w in W]
    try:
        unimodularity_witness(W0)
    except Exception as exc:
        raise StepFailed("degree0", f"ε(v)(0) is not unimodular: {exc}", trace) from exc
    try:
        mu_X = symplectic_reduce(W, budget=budget, seed=seed)
    except ReductionUnavailable as exc:
        raise StepFailed("homotopy", str(exc), trace) from exc
    mu = GroupWord(len(row), [Letter(L.kind, L.i, L.j, eval_at(L.scalar, 1, R)) for L in mu_X], R)
    theta = mu.inverse().eval(R)
    if trace is not None:
        trace.extend([
            {"step": "homotopy_row", "row": [str(x) for x in W]},
            {"step": "degree0", "row": [str(x) for x in W0]},
            {"step": "word", "word": mu_X.to_json()},
            {"step": "theta", "matrix": theta.to_strings()},
        ])
    if not check_contract(theta, row.entries):
        raise StepFailed("theta", "graded completion failed its contract", trace)
    return theta


__all__ = [
    "check_contract", "swan_towber", "swan_towber_matrix", "complete_row", "symplectic_reduce",
    "symplectic_complete", "PipelineTrace", "theorem34_trace", "relative_word",
    "relative_complete", "graded_complete",
]
