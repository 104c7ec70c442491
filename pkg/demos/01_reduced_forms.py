"""Reduced Hermitian forms, class numbers and iota-orbits."""
from splitcm.hermitian import class_number_formula, enumerate_reduced, iota_orbits, rep_point

for N in (3, 7, 11, 19, 43, 67, 163):
    n = len(enumerate_reduced(N))
    print(f"N={N:>3}  n={n:>2}  formula={class_number_formula(N):>2}  t={len(iota_orbits(N))}")

print()
print("discriminant -163:")
for f in enumerate_reduced(163):
    p = rep_point(f)
    print(f"  {str(f):>16}   x={str(p.x):>6} y={str(p.y):>5} t^2={p.t2}")

print()
for orbit in iota_orbits(163):
    print("  orbit:", ", ".join(str(f) for f in orbit))
