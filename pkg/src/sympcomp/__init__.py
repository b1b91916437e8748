"""Exact construction and verification of symplectic completions of unimodular rows."""

__version__ = "0.1.0"

from .errors import *  # noqa: E402,F401,F403
from .rings import (  # noqa: E402
    QQ,
    ZZ,
    ModularIntegers,
    PolynomialRing,
    QuotientRing,
    RingElem,
    extended_gcd,
    groebner_with_cofactors,
    ideal_member,
    is_unit,
    normalize,
    polynomial_ring,
    quotient_ring,
    unimodularity_witness,
)
from .matrix import RingMatrix, AlternatingForm, det, elementary, pfaffian, perp, psi  # noqa: E402
from .parse import parse_element, parse_matrix, parse_ring, parse_row, parse_word  # noqa: E402
from .words import (  # noqa: E402
    E,
    SE,
    GroupWord,
    Letter,
    eval_word,
    is_symplectic,
    lemma24_decompose,
    orbit_to_esp,
    relative_congruent,
    se_generator,
    symplectic_reduce,
    transfer_to_sp_psi,
)
from .unimodular import *  # noqa: E402,F401,F403
from .witt import (  # noqa: E402
    WittCertificate,
    WittClass,
    change_witness,
    find_equivalence,
    perp_class,
    reduce_alternating,
    trivialize,
    verify_certificate,
)
from .graded import *  # noqa: E402,F401,F403
from .completion import *  # noqa: E402,F401,F403
