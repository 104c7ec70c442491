"""The discriminant of the N = 163 curve from a ternary quadratic form."""
from splitcm.arithmetic_checks import TernaryForm, gz_exponents
from splitcm.curves import intro_fixture_163
from splitcm.exact_arith import factor_rational
from splitcm.invariants import scaled_disc

Q = TernaryForm(((24, 4, 6), (4, 55, 1), (6, 1, 83)))
print("box bounds for Q(m) < 163:", Q.coordinate_bounds(163))

gz = gz_exponents(Q, 163)
D = scaled_disc(intro_fixture_163())
print("from the ternary form:", gz)
print("2^-12 disc(f):        ", factor_rational(D))
print("equal:", gz == factor_rational(D))
