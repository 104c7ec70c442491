"""Arithmetic checks on the curves: the factored-discriminant identity from
a ternary form, reduction modulo split primes, and point counts."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .exact_arith import KElement, factor, is_prime, kronecker, sqrt_mod_p, divisors


class IndefiniteForm(ValueError):
    pass


class BadReduction(ValueError):
    pass


# -- ternary forms -----------------------------------------------------------------


@dataclass(frozen=True)
class TernaryForm:
    """Q(m) = m^T G m for a symmetric positive definite integer matrix G."""

    gram: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        G = tuple(tuple(int(x) for x in row) for row in self.gram)
        if len(G) != 3 or any(len(row) != 3 for row in G):
            raise ValueError("Gram matrix must be 3x3")
        if any(G[i][j] != G[j][i] for i in range(3) for j in range(3)):
            raise ValueError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", G)
        if not all(m > 0 for m in self.leading_minors()):
            raise IndefiniteForm(f"Gram matrix {G} is not positive definite")

    def leading_minors(self) -> tuple[int, int, int]:
        G = self.gram
        m1 = G[0][0]
        m2 = G[0][0] * G[1][1] - G[0][1] * G[1][0]
        return m1, m2, self.det()

    def det(self) -> int:
        (a, b, c), (d, e, f), (g, h, i) = self.gram
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def __call__(self, m) -> int:
        G = self.gram
        return sum(G[i][j] * m[i] * m[j] for i in range(3) for j in range(3))

    def coordinate_bounds(self, value: int) -> tuple[int, int, int]:
        """B_i with |m_i| <= B_i whenever Q(m) <= value.

        max m_i^2 over Q(m) <= value is value * (G^-1)_ii, and
        (G^-1)_ii = cofactor_ii / det.
        """
        G, det = self.gram, self.det()
        bounds = []
        for i in range(3):
            rows = [r for r in range(3) if r != i]
            cof = G[rows[0]][rows[0]] * G[rows[1]][rows[1]] - G[rows[0]][rows[1]] ** 2
            bounds.append(isqrt(value * cof // det))
        return tuple(bounds)


def parse_gram(text: str) -> TernaryForm:
    """Nine whitespace-separated integers, row-major."""
    tokens = text.split()
    if len(tokens) != 9:
        raise ValueError(f"expected 9 integers, got {len(tokens)}")
    vals = [int(t) for t in tokens]
    return TernaryForm(tuple(tuple(vals[3 * i : 3 * i + 3]) for i in range(3)))


def gz_exponents(Q: TernaryForm, N: int, margin: int = 0) -> dict[int, int]:
    """Prime exponents of D from
    log D = -6 sum_m sum_{d | (N - Q(m))/4} (-N/d) log d,
    the outer sum over m in Z^3 with (N - Q(m))/4 a positive integer."""
    bounds = Q.coordinate_bounds(N)
    ranges = [range(-b - margin, b + margin + 1) for b in bounds]
    exps: dict[int, int] = {}
    for m in itertools.product(*ranges):
        k4 = N - Q(m)
        if k4 <= 0 or k4 % 4:
            continue
        for d in divisors(k4 // 4):
            if d == 1:
                continue
            chi = kronecker(-N, d)
            if chi == 0:
                continue
            for p, e in factor(d).items():
                exps[p] = exps.get(p, 0) - 6 * chi * e
    return {p: e for p, e in sorted(exps.items()) if e}


# -- reduction modulo p and point counts ----------------------------------------------


@dataclass(frozen=True)
class FpSextic:
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(c % self.p for c in self.coeffs))


def _frac_mod(q: Fraction, p: int) -> int:
    if q.denominator % p == 0:
        raise BadReduction(f"denominator of {q} is divisible by {p}")
    return q.numerator * pow(q.denominator, -1, p) % p


def reduce_mod_P(f, p: int, which_root: str = "plus") -> FpSextic:
    """Reduce a sextic over K (or Q) modulo a prime above the split prime p.

    sqrt(-N) is sent to +rho or -rho, rho = sqrt_mod_p(-N, p).
    """
    if which_root not in ("plus", "minus"):
        raise ValueError("which_root must be 'plus' or 'minus'")
    if not is_prime(p) or p == 2:
        raise ValueError(f"{p} is not an odd prime")
    coeffs = f.coeffs
    if any(isinstance(c, KElement) for c in coeffs):
        N = next(c.N for c in coeffs if isinstance(c, KElement))
        if kronecker(-N, p) != 1:
            raise ValueError(f"{p} does not split in Q(sqrt(-{N}))")
        rho = sqrt_mod_p(-N, p)
        if which_root == "minus":
            rho = p - rho
        out = []
        for c in coeffs:
            if not isinstance(c, KElement):
                c = KElement(N, Fraction(c))
            out.append((_frac_mod(c.x, p) + _frac_mod(c.y, p) * rho) % p)
        return FpSextic(p, tuple(out))
    return FpSextic(p, tuple(_frac_mod(Fraction(c), p) for c in coeffs))


def _poly_mod_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    def trim(v):
        while v and v[-1] % p == 0:
            v.pop()
        return v

    a, b = trim([x % p for x in a]), trim([x % p for x in b])
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            k = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, x in enumerate(b):
                a[shift + i] = (a[shift + i] - k * x) % p
            trim(a)
            if not a:
                break
        a, b = b, a
    return a


def is_smooth(fbar: FpSextic) -> bool:
    """Degree 6 and squarefree over F_p."""
    c, p = fbar.coeffs, fbar.p
    if c[6] == 0:
        return False
    deriv = [k * c[k] % p for k in range(1, 7)]
    return len(_poly_mod_gcd(list(c), deriv, p)) == 1


def _legendre_table(p: int) -> list[int]:
    chi = [-1] * p
    chi[0] = 0
    for x in range(1, (p + 1) // 2):
        chi[x * x % p] = 1
    return chi


def count_points(fbar: FpSextic) -> int:
    """#C(F_p) for the smooth projective model of y^2 = fbar(x)."""
    if not is_smooth(fbar):
        raise BadReduction(f"reduction mod {fbar.p} is singular")
    p, c = fbar.p, fbar.coeffs
    chi = _legendre_table(p)
    total = 0
    for x in range(p):
        v = 0
        for coef in reversed(c):
            v = (v * x + coef) % p
        total += 1 + chi[v]
    return total + 1 + chi[c[6]]


def least_nonresidue(p: int) -> int:
    return next(d for d in range(2, p) if kronecker(d, p) == -1)


def twist(fbar: FpSextic) -> FpSextic:
    d = least_nonresidue(fbar.p)
    return FpSextic(fbar.p, tuple(d * c for c in fbar.coeffs))


def weil_serre_bound(p: int) -> int:
    """2 * floor(2 sqrt(p)): the genus-2 deviation bound over F_p."""
    return 2 * isqrt(4 * p)


def split_prime_scan(N: int, p_min: int, p_max: int) -> list[tuple[int, int]]:
    """Primes p_min <= p <= p_max with 4p = a^2 + N, as (p, a), ascending."""
    out = []
    a = 1
    while (a * a + N) // 4 <= p_max:
        if (a * a + N) % 4 == 0:
            p = (a * a + N) // 4
            if p >= p_min and is_prime(p):
                out.append((p, a))
        a += 1
    return out


def default_p_min(N: int) -> int:
    """Smallest p = (a^2 + N)/4 with 2a + 1 > N, where p + 1 + 2a is
    exactly the Weil-Serre maximum."""
    a = (N + 1) // 2
    return (a * a + N + 3) // 4


@dataclass(frozen=True)
class MaximalScanRow:
    p: int
    a: int
    count: int | None
    twist_count: int | None
    is_maximal: bool
    skipped: bool = False
    reason: str = ""

    @property
    def expected(self) -> int:
        return self.p + 1 + 2 * self.a


def maximal_scan(f, N: int, p_max: int, p_min: int | None = None, which_root: str = "plus") -> list[MaximalScanRow]:
    """For split p in range, whether the reduction or its twist has
    p + 1 + 2a points.  Primes of bad reduction are reported as skipped."""
    if p_min is None:
        p_min = default_p_min(N)
    rows = []
    for p, a in split_prime_scan(N, p_min, p_max):
        try:
            fbar = reduce_mod_P(f, p, which_root)
            if not is_smooth(fbar):
                raise BadReduction(f"singular reduction mod {p}")
        except BadReduction as exc:
            rows.append(MaximalScanRow(p, a, None, None, False, True, str(exc)))
            continue
        if 2 * a + 1 > N and p + 1 + 2 * a != p + 1 + weil_serre_bound(p):
            raise AssertionError(f"p + 1 + 2a differs from the Weil-Serre bound at p = {p}")
        n, nt = count_points(fbar), count_points(twist(fbar))
        rows.append(MaximalScanRow(p, a, n, nt, max(n, nt) == p + 1 + 2 * a))
    return rows
