"""Invariants of binary sextics and the Mestre obstruction conic.

Igusa invariants are computed from Clebsch's transvectant invariants A, B,
C, D, converted to Igusa-Clebsch I2, I4, I6, I10 and then to Igusa's J2..J10
(J10 = 2^-12 disc).  The coefficient ring is anything supporting +, -, *
and division by integers: Fraction, KElement, or mpmath complex numbers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .exact_arith import KElement, factor, kronecker

INF = "inf"


def _coeffs(f) -> list:
    return list(f.coeffs) if hasattr(f, "coeffs") else list(f)


def _scale(x, q: Fraction):
    q = Fraction(q)
    y = x * q.numerator
    return y / q.denominator if q.denominator != 1 else y


def _to_rational(x) -> Fraction:
    if isinstance(x, KElement):
        if not x.is_rational():
            raise ValueError(f"invariant {x} is not rational")
        return x.x
    return Fraction(x)


# -- binary forms: F[k] is the coefficient of x^k y^(d-k) ------------------------


def _partial(F, px: int, py: int):
    d = len(F) - 1
    out = []
    for k in range(px, d - py + 1):
        mult = (factorial(k) // factorial(k - px)) * (factorial(d - k) // factorial(d - k - py))
        out.append(F[k] * mult)
    return out


def _form_mul(F, G):
    out = [0] * (len(F) + len(G) - 1)
    for i, x in enumerate(F):
        for j, y in enumerate(G):
            out[i + j] = out[i + j] + x * y
    return out


def transvectant(F, G, k: int):
    """(F, G)_k with the factor (m-k)!(n-k)!/(m! n!)."""
    m, n = len(F) - 1, len(G) - 1
    total = [0] * (m + n - 2 * k + 1)
    for i in range(k + 1):
        term = _form_mul(_partial(F, k - i, i), _partial(G, i, k - i))
        sign = (-1) ** i * comb(k, i)
        total = [t + s * sign for t, s in zip(total, term)]
    norm = Fraction(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n))
    return [_scale(t, norm) for t in total]


def clebsch_invariants(f):
    """Clebsch's A, B, C, D of a binary sextic (Mestre's normalization)."""
    F = _coeffs(f)
    i = transvectant(F, F, 4)
    delta = transvectant(i, i, 2)
    y1 = transvectant(F, i, 4)
    y2 = transvectant(i, y1, 2)
    y3 = transvectant(i, y2, 2)
    A = transvectant(F, F, 6)[0]
    B = transvectant(i, i, 4)[0]
    C = transvectant(i, delta, 4)[0]
    D = transvectant(y3, y1, 2)[0]
    return A, B, C, D


def igusa_clebsch(f):
    """(I2, I4, I6, I10); I10 equals the discriminant of f."""
    A, B, C, D = clebsch_invariants(f)
    I2 = -120 * A
    I4 = -720 * A * A + 6750 * B
    I6 = 8640 * A**3 - 108000 * A * B + 202500 * C
    I10 = (
        -62208 * A**5 + 972000 * A**3 * B + 1620000 * A * A * C
        - 3037500 * A * B * B - 6075000 * B * C - 4556250 * D
    )
    return I2, I4, I6, I10


def igusa_from_clebsch(I2, I4, I6, I10):
    J2 = I2 / 8
    J4 = (4 * J2 * J2 - I4) / 96
    J6 = (8 * J2**3 - 160 * J2 * J4 - I6) / 576
    J8 = (J2 * J6 - J4 * J4) / 4
    J10 = I10 / 4096
    return J2, J4, J6, J8, J10


@dataclass(frozen=True)
class IgusaInvariants:
    J2: Fraction
    J4: Fraction
    J6: Fraction
    J8: Fraction
    J10: Fraction

    def __iter__(self):
        return iter((self.J2, self.J4, self.J6, self.J8, self.J10))

    def as_tuple(self) -> tuple[Fraction, ...]:
        return tuple(self)

    def is_integral(self) -> bool:
        return all(Fraction(j).denominator == 1 for j in self)


def igusa(f, check: bool = False) -> IgusaInvariants:
    """Igusa invariants J2, J4, J6, J8, J10 of a sextic over K or Q.

    With ``check=True`` the result is compared with a numerical evaluation
    from the roots of f (an independent route through the root formulas).
    """
    F = _coeffs(f)
    if not F[6]:
        raise ValueError("igusa() needs a sextic with nonzero leading coefficient")
    J = IgusaInvariants(*(_to_rational(j) for j in igusa_from_clebsch(*igusa_clebsch(F))))
    if check:
        _check_against_roots(F, J)
    return J


def _check_against_roots(F, J: IgusaInvariants, digits: int = 60) -> None:
    import mpmath

    ctx = mpmath.MPContext()
    ctx.dps = digits
    values = [_to_mp(c, ctx) for c in F]
    num = igusa_from_clebsch(*igusa_clebsch_from_roots(values, ctx))
    for name, exact, approx in zip(("J2", "J4", "J6", "J8", "J10"), J, num):
        ref = ctx.mpf(exact.numerator) / exact.denominator
        scale = max(abs(ref), 1)
        if abs(approx - ref) > scale * ctx.mpf(10) ** (-digits // 2):
            raise ArithmeticError(f"{name}: exact {exact} disagrees with root evaluation")


def _to_mp(c, ctx):
    if isinstance(c, KElement):
        return c.to_complex(ctx)
    if isinstance(c, Fraction):
        return ctx.mpf(c.numerator) / c.denominator
    return ctx.mpc(c)


def igusa_clebsch_from_roots(values, ctx):
    """I2, I4, I6, I10 from the six roots of sum values[k] x^k (numerical)."""
    lead = values[6]
    roots = ctx.polyroots(list(reversed(values)), maxsteps=500, extraprec=4 * ctx.prec)

    def d(i, j):
        return (roots[i] - roots[j]) ** 2

    idx = range(6)
    matchings = []
    for p in itertools.permutations(idx):
        pairs = tuple(sorted(tuple(sorted(p[2 * k : 2 * k + 2])) for k in range(3)))
        if pairs not in matchings:
            matchings.append(pairs)
    I2 = sum(ctx.fprod(d(i, j) for i, j in m) for m in matchings)
    splits = []
    for T in itertools.combinations(idx, 3):
        S = tuple(x for x in idx if x not in T)
        if (S, T) not in splits:
            splits.append((T, S))
    I4 = 0
    I6 = 0
    for T, S in splits:
        t = d(T[0], T[1]) * d(T[1], T[2]) * d(T[2], T[0])
        s = d(S[0], S[1]) * d(S[1], S[2]) * d(S[2], S[0])
        I4 += t * s
        for perm in itertools.permutations(S):
            I6 += t * s * ctx.fprod(d(T[k], perm[k]) for k in range(3))
    I10 = ctx.fprod(d(i, j) for i, j in itertools.combinations(idx, 2))
    return lead**2 * I2, lead**4 * I4, lead**6 * I6, lead**10 * I10


# -- discriminant via the Sylvester resultant ------------------------------------------------


def _det(rows):
    """Determinant by Gaussian elimination over a field.

    Exact entries pivot on the first nonzero entry, numerical ones on the
    largest modulus.
    """
    m = [list(r) for r in rows]
    n = len(m)
    exact = all(isinstance(x, (int, Fraction, KElement)) for r in m for x in r)
    det = 1
    for col in range(n):
        candidates = [r for r in range(col, n) if m[r][col]]
        if not candidates:
            return 0
        if exact:
            pivot = candidates[0]
        else:
            pivot = max(candidates, key=lambda r: abs(m[r][col]))
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        for r in range(col + 1, n):
            if m[r][col]:
                ratio = m[r][col] / p
                m[r] = [x - ratio * y for x, y in zip(m[r], m[col])]
    return det


def resultant(P, Q):
    """Res(P, Q) for polynomials given low-to-high with nonzero leading terms."""
    m, n = len(P) - 1, len(Q) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for k, c in enumerate(reversed(P)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for k, c in enumerate(reversed(Q)):
            row[i + k] = c
        rows.append(row)
    return _det(rows)


def sextic_disc(f):
    """Discriminant of the degree-6 polynomial f (exact for exact input)."""
    F = _coeffs(f)
    if len(F) != 7 or not F[6]:
        raise ValueError("sextic_disc needs a degree-6 polynomial")
    dF = [F[k] * k for k in range(1, 7)]
    res = resultant(F, dF)
    # (-1)^(n(n-1)/2) Res(f, f') / lc, n = 6
    return -res / F[6]


def scaled_disc(f) -> Fraction:
    """2^-12 disc(f), as a rational number."""
    return _to_rational(sextic_disc(f)) / 4096


# -- Mestre conic ----------------------------------------------------------------


def mestre_matrix(J) -> tuple[tuple[Fraction, ...], ...]:
    J2, J4, J6, _, J10 = (Fraction(j) for j in J)
    m11 = 3 * J2**3 - 160 * J4 * J2 - 3600 * J6
    m21 = -J4 * J2**2 + 330 * J6 * J2 + 160 * J4**2
    m31 = -J6 * J2**2 - 840 * J6 * J4 - 8000 * J10
    m22 = -25 * J6 * J2**2 - 8 * J4**2 * J2 - 120 * J6 * J4 - 2000 * J10
    m32 = 67 * J6 * J4 * J2 + 600 * J10 * J2 + 90 * J6**2
    m33 = -33 * J6**2 * J2 - 100 * J6 * J4**2 - 800 * J10 * J4
    return ((m11, m21, m31), (m21, m22, m32), (m31, m32, m33))


def det_mestre(M) -> tuple[Fraction, dict[int, int]]:
    """det M and the prime factorization of its absolute value."""
    det = Fraction(_det([[Fraction(x) for x in row] for row in M]))
    if det == 0:
        return det, {}
    fac = factor(det.numerator)
    for p, e in factor(det.denominator).items():
        fac[p] = fac.get(p, 0) - e
    return det, dict(sorted(fac.items()))


def _padic_split(x: int, p: int) -> tuple[int, int]:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v, x


def _integral_representative(q) -> int:
    """An integer in the same square class as the nonzero rational q."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("Hilbert symbol arguments must be nonzero")
    return q.numerator * q.denominator


def hilbert_symbol(a, b, v) -> int:
    """Hilbert symbol (a, b)_v for nonzero rationals; v a prime or ``INF``."""
    a, b = _integral_representative(a), _integral_representative(b)
    if v == INF:
        return -1 if a < 0 and b < 0 else 1
    p = int(v)
    alpha, u = _padic_split(a, p)
    beta, w = _padic_split(b, p)
    if p == 2:
        def eps(x):
            return ((x - 1) // 2) % 2

        def omega(x):
            return ((x * x - 1) // 8) % 2

        e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * kronecker(u, p) ** beta * kronecker(w, p) ** alpha


def diagonalize(M) -> tuple[Fraction, Fraction, Fraction]:
    """Diagonal entries of a form rationally congruent to the symmetric M.

    Only permutations and unitriangular substitutions are used, so the
    product of the entries equals det M.
    """
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    diag = []
    for k in range(n):
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                A[k], A[j] = A[j], A[k]
                for row in A:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    diag.append(Fraction(0))
                    continue
                # x_k -> x_k + x_j turns the zero pivot into 2 A[k][j]
                for row in A:
                    row[k] += row[j]
                A[k] = [x + y for x, y in zip(A[k], A[j])]
        p = A[k][k]
        diag.append(p)
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                A[r][c] -= A[r][k] * A[k][c] / p
    return tuple(diag)


def ternary_isotropic_at(d, v) -> bool:
    """Whether d1 x^2 + d2 y^2 + d3 z^2 has a nontrivial zero over Q_v."""
    d1, d2, d3 = d
    return hilbert_symbol(-d1 * d3, -d2 * d3, v) == 1


@dataclass(frozen=True)
class ObstructionReport:
    det: Fraction
    det_factorization: dict
    diagonal: tuple
    obstructed_places: tuple
    solvable_over_Q: bool


def conic_obstruction(M) -> ObstructionReport:
    """Local solvability of x M x^t = 0 at every place of Q.

    Only infinity, 2 and primes dividing det M can obstruct: the reduction
    of an integral conic with unit determinant is smooth and has points.
    """
    det, fac = det_mestre(M)
    if det == 0:
        raise ValueError("singular conic matrix (extra automorphisms)")
    diag = diagonalize(M)
    places = sorted({2} | {p for p in fac if p != 2})
    bad = [p for p in places if not ternary_isotropic_at(diag, p)]
    if not ternary_isotropic_at(diag, INF):
        bad.append(INF)
    if len(bad) % 2:
        raise ArithmeticError(f"Hilbert reciprocity violated: {bad}")
    return ObstructionReport(det, fac, diag, tuple(bad), not bad)


def weighted_equal(J, Jp) -> bool:
    """Equality of (J2, ..., J10) and (J2', ..., J10') in weighted
    projective space with weights 1, 2, 3, 4, 5."""
    J = [Fraction(x) for x in J]
    Jp = [Fraction(x) for x in Jp]
    if J[4] == 0 or Jp[4] == 0:
        raise ValueError("weighted_equal needs J10 != 0 on both sides")
    for i in range(5):
        for j in range(i + 1, 5):
            wi, wj = i + 1, j + 1
            if Jp[i] ** wj * J[j] ** wi != J[i] ** wj * Jp[j] ** wi:
                return False
    return True


@dataclass(frozen=True)
class FieldOfModuliReport:
    """Whether a curve with rational Igusa invariants has a model over Q.

    A singular Mestre matrix means the reduced automorphism group is larger
    than the hyperelliptic involution; the conic then carries a rational
    point and there is no obstruction.
    """

    J: IgusaInvariants
    det: Fraction
    det_factorization: dict
    extra_automorphisms: bool
    obstructed_places: tuple
    solvable_over_Q: bool


def field_of_moduli_report(J: IgusaInvariants) -> FieldOfModuliReport:
    M = mestre_matrix(J)
    det, fac = det_mestre(M)
    if det == 0:
        return FieldOfModuliReport(J, det, fac, True, (), True)
    rep = conic_obstruction(M)
    return FieldOfModuliReport(J, det, fac, False, rep.obstructed_places, rep.solvable_over_Q)
