"""From a form to an exact sextic: theta gradients, normalization, recognition."""
from splitcm.analytic import PrecisionContext, odd_characteristics, theta_gradient
from splitcm.curves import normalized_complex_sextic, normalized_sextic
from splitcm.hermitian import make_form, period_matrix

form = make_form(43, 3, 1, 2, 4)
prec = PrecisionContext(120)
Z = period_matrix(form)

print("odd theta gradients at u = 0 for", form)
for ch in odd_characteristics():
    g1, g2 = theta_gradient(ch, Z, prec)
    print(f"  mu={ch.mu} nu={ch.nu}  {prec.ctx.nstr(g1, 12)}  {prec.ctx.nstr(g2, 12)}")

print()
print("normalized sextic, numerically:")
for k, c in enumerate(normalized_complex_sextic(form, prec)):
    print(f"  c{k} = {prec.ctx.nstr(c, 25)}")

f = normalized_sextic(form, prec)
print()
print(f"recognized in Q(sqrt(-43)), residual 10^{f.residual_log10:.0f}:")
for k, c in enumerate(f.coeffs):
    print(f"  c{k} = {c}")
