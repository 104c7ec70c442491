"""Genus-2 curves over Q(sqrt(-N)) whose Jacobian is isomorphic to E x E.

Pipeline: reduced Hermitian forms over Z[i] -> period matrices -> theta
gradients -> normalized Bolza-Klein sextics over K -> Igusa invariants,
Mestre conic, discriminant identities and point counts.
"""

from .exact_arith import GaussianInt, KElement, divisors, factor, kronecker, sqrt_mod_p
from .hermitian import (
    HermitianForm,
    class_number_formula,
    definable_over_Q,
    enumerate_reduced,
    is_principal,
    is_reduced,
    iota,
    period_matrix,
    reduce_form,
    type_number,
)
from .analytic import PrecisionContext, bolza_klein_sextic, eta24_abs, theta_gradient
from .curves import (
    SexticK,
    SexticQ,
    intro_fixture_163,
    iota_sextic,
    normalized_sextic,
    q_model_43,
)
from .invariants import (
    IgusaInvariants,
    conic_obstruction,
    det_mestre,
    hilbert_symbol,
    igusa,
    mestre_matrix,
    sextic_disc,
    weighted_equal,
)
from .arithmetic_checks import (
    count_points,
    gz_exponents,
    maximal_scan,
    reduce_mod_P,
    split_prime_scan,
    twist,
)

__version__ = "0.1.0"
