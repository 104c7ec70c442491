"""Reductions at split primes p = (a^2 + 43)/4 against the bound p + 1 + 2a."""
from splitcm.arithmetic_checks import default_p_min, maximal_scan
from splitcm.curves import normalized_sextic, q_model_43
from splitcm.hermitian import make_form

print("scan starts at p >=", default_p_min(43))

f = normalized_sextic(make_form(43, 3, 1, 2, 4))
rows = maximal_scan(f, 43, 10000)
print(f"(3, 1+2i, 4): {len(rows)} primes, all maximal: {all(r.is_maximal for r in rows)}")

rows = maximal_scan(q_model_43(), 43, 10000)
bad = [r for r in rows if not r.is_maximal]
print(f"rational model: {len(bad)} of {len(rows)} primes fail")
for r in bad[:6]:
    print(f"  p={r.p} (p mod 4 = {r.p % 4})  counts {r.count}, {r.twist_count}  expected {r.expected}")
