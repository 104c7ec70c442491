"""Igusa invariants, the Mestre conic, and where it fails to have points."""
from splitcm.curves import normalized_sextic, q_model_43
from splitcm.exact_arith import factor_rational
from splitcm.hermitian import definable_over_Q, make_form
from splitcm.invariants import field_of_moduli_report, igusa, mestre_matrix, weighted_equal

for triple in [(2, 1, 2, 6), (3, 1, 2, 4), (3, -1, 2, 4)]:
    form = make_form(43, *triple)
    J = igusa(normalized_sextic(form))
    rep = field_of_moduli_report(J)
    print(form, "definable over Q:", definable_over_Q(form))
    print("  J =", [str(j) for j in J])
    print("  J10 =", factor_rational(J.J10))
    if rep.extra_automorphisms:
        print("  det M = 0, the curve has extra automorphisms")
    else:
        print("  det M =", factor_rational(rep.det), " obstructed at", rep.obstructed_places)

J1 = igusa(normalized_sextic(make_form(43, 2, 1, 2, 6)))
print()
print("rational model has the invariants of (2, 1+2i, 6):", weighted_equal(igusa(q_model_43()), J1))
print("its Mestre matrix:")
for row in mestre_matrix(J1):
    print("  ", "  ".join(str(x) for x in row))
