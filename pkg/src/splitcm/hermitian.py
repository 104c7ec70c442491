"""Binary Hermitian forms over Z[i] of discriminant -N.

A form (a, b, c) stands for 2a|u|^2 + b u v' + b' u' v + 2c|v|^2 (prime =
complex conjugation), with b = r + s*i, r odd, s even, and |b|^2 - 4ac = -N.
Reduced forms are the ones listed by :func:`enumerate_reduced`; every form
is SL2(Z[i])-equivalent to exactly one of them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact_arith import GaussianInt, KElement, divisors, is_prime, kronecker

MAX_REDUCTION_STEPS = 10**4


def check_N(N: int) -> None:
    if N < 3 or N % 4 != 3 or not is_prime(N):
        raise ValueError(f"N must be a prime congruent to 3 mod 4, got {N}")


@dataclass(frozen=True)
class HermitianForm:
    N: int
    a: int
    b: GaussianInt
    c: int

    def __post_init__(self):
        if not isinstance(self.b, GaussianInt):
            object.__setattr__(self, "b", GaussianInt(*self.b))
        if self.a <= 0 or self.c <= 0:
            raise ValueError(f"form {self} is not positive definite")
        if self.b.norm() - 4 * self.a * self.c != -self.N:
            raise ValueError(f"form {self} does not have discriminant -{self.N}")
        if self.b.re % 2 != 1 or self.b.im % 2 != 0:
            raise ValueError(f"form {self} needs b = 1 mod 2")

    @property
    def r(self) -> int:
        return self.b.re

    @property
    def s(self) -> int:
        return self.b.im

    def key(self) -> tuple[int, int, int]:
        return (self.a, self.b.re, self.b.im)

    def triple(self) -> tuple[int, int, int, int]:
        """(a, r, s, c): the selector used on the command line."""
        return (self.a, self.b.re, self.b.im, self.c)

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"


def make_form(N: int, a: int, r: int, s: int, c: int | None = None) -> HermitianForm:
    """Build (a, r + s*i, c); c is solved from the discriminant when omitted."""
    if c is None:
        num = r * r + s * s + N
        if a <= 0 or num % (4 * a):
            raise ValueError(f"no integral c for a={a}, b={r}+{s}i, N={N}")
        c = num // (4 * a)
    return HermitianForm(N, a, GaussianInt(r, s), c)


@dataclass(frozen=True)
class H3Point:
    """Point x + y*i + t*j of hyperbolic 3-space; t is kept as t^2."""

    x: Fraction
    y: Fraction
    t2: Fraction

    def in_closed_domain(self) -> bool:
        """|x| <= 1/2, 0 <= y <= 1/2 and x^2 + y^2 + t^2 >= 1."""
        half = Fraction(1, 2)
        return (
            abs(self.x) <= half
            and 0 <= self.y <= half
            and self.x**2 + self.y**2 + self.t2 >= 1
        )


@dataclass(frozen=True)
class PeriodMatrix:
    """Z = (1/2a) [[r + sqrt(-N), s], [s, -r + sqrt(-N)]], exactly."""

    N: int
    a: int
    r: int
    s: int

    def entries(self) -> tuple[tuple[KElement, KElement], tuple[KElement, KElement]]:
        d = Fraction(1, 2 * self.a)
        z11 = KElement(self.N, self.r * d, d)
        z12 = KElement(self.N, self.s * d)
        z22 = KElement(self.N, -self.r * d, d)
        return ((z11, z12), (z12, z22))

    def imag_scale_squared(self) -> Fraction:
        """Im Z = sqrt(N)/(2a) * Id; returns N/(4a^2)."""
        return Fraction(self.N, 4 * self.a * self.a)


@dataclass(frozen=True)
class Sl2GaussianGen:
    """Generator of SL2(Z[i]) acting on forms.

    kind is ``"translate"`` (u -> u + lam v), ``"invert"`` ((u, v) -> (v, -u))
    or ``"negate_b"`` (diag(i, -i)).
    """

    kind: str
    lam: GaussianInt = GaussianInt(0, 0)

    def __post_init__(self):
        if self.kind not in ("translate", "invert", "negate_b"):
            raise ValueError(f"unknown generator {self.kind!r}")


INVERT = Sl2GaussianGen("invert")
NEGATE_B = Sl2GaussianGen("negate_b")


def translate(lam: GaussianInt | tuple[int, int]) -> Sl2GaussianGen:
    if not isinstance(lam, GaussianInt):
        lam = GaussianInt(*lam)
    return Sl2GaussianGen("translate", lam)


@lru_cache(maxsize=None)
def _reduced_tuple(N: int) -> tuple[HermitianForm, ...]:
    check_N(N)
    out = []
    r_max = s_max = 0
    while 2 * (r_max + 1) ** 2 <= N:
        r_max += 1
    s_max = r_max
    for r in range(1, r_max + 1, 2):
        for s in range(0, s_max + 1, 2):
            m = (r * r + s * s + N) // 4
            for a in divisors(m):
                if a < max(r, s) or a * a > m:
                    continue
                c = m // a
                out.append(HermitianForm(N, a, GaussianInt(r, s), c))
                if not (a == c or r == a or s == a or s == 0):
                    out.append(HermitianForm(N, a, GaussianInt(-r, s), c))
    return tuple(sorted(out, key=HermitianForm.key))


def enumerate_reduced(N: int) -> list[HermitianForm]:
    """All reduced forms of discriminant -N, sorted by (a, re b, im b)."""
    return list(_reduced_tuple(N))


@lru_cache(maxsize=None)
def _reduced_set(N: int) -> frozenset:
    return frozenset(_reduced_tuple(N))


def class_number_formula(N: int) -> int:
    check_N(N)
    if kronecker(-3, N) == 1:
        return (N + 5) // 12
    return (N + 13) // 12


def iota(form: HermitianForm) -> HermitianForm:
    """(a, b, c) -> (a, -conj(b), c)."""
    return HermitianForm(form.N, form.a, -form.b.conj(), form.c)


def rep_point(form: HermitianForm) -> H3Point:
    two_a = 2 * form.a
    return H3Point(
        Fraction(form.r, two_a),
        Fraction(form.s, two_a),
        Fraction(form.N, two_a * two_a),
    )


def is_reduced(form: HermitianForm) -> bool:
    return form in _reduced_set(form.N)


def is_principal(form: HermitianForm) -> bool:
    return form.a == 1 and form.b == GaussianInt(1, 0) and form.c == (form.N + 1) // 4


def principal_form(N: int) -> HermitianForm:
    check_N(N)
    return HermitianForm(N, 1, GaussianInt(1, 0), (N + 1) // 4)


def apply_generator(form: HermitianForm, g: Sl2GaussianGen) -> HermitianForm:
    N, a, b, c = form.N, form.a, form.b, form.c
    if g.kind == "translate":
        nb = b + GaussianInt(2 * a) * g.lam
        nc = c + (b.conj() * g.lam).re + a * g.lam.norm()
        return HermitianForm(N, a, nb, nc)
    if g.kind == "invert":
        return HermitianForm(N, c, -b.conj(), a)
    return HermitianForm(N, a, -b, c)


def apply_word(form: HermitianForm, word) -> HermitianForm:
    for g in word:
        form = apply_generator(form, g)
    return form


def random_word(rng: random.Random, length: int, spread: int = 2) -> list[Sl2GaussianGen]:
    word = []
    for _ in range(length):
        pick = rng.random()
        if pick < 0.5:
            lam = GaussianInt(rng.randint(-spread, spread), rng.randint(-spread, spread))
            word.append(translate(lam))
        elif pick < 0.8:
            word.append(INVERT)
        else:
            word.append(NEGATE_B)
    return word


def _centering_shift(v: int, a: int) -> int:
    """k with -a < v - 2ak <= a."""
    return -((a - v) // (2 * a))


def reduce_form(form: HermitianForm) -> HermitianForm:
    """The reduced form SL2(Z[i])-equivalent to ``form``."""
    target = _reduced_set(form.N)
    f = form
    for _ in range(MAX_REDUCTION_STEPS):
        if f in target:
            return f
        a = f.a
        kr, ks = _centering_shift(f.r, a), _centering_shift(f.s, a)
        if kr or ks:
            f = apply_generator(f, translate((-kr, -ks)))
        if f.s < 0:
            f = apply_generator(f, NEGATE_B)
        if f.c < f.a:
            f = apply_generator(f, INVERT)
            continue
        if f.r < 0:
            # boundary identifications of the closed domain
            if f.s == 0:
                f = apply_generator(f, NEGATE_B)
            elif f.r == -f.a:
                f = apply_generator(f, translate((1, 0)))
            elif f.s == f.a:
                f = apply_generator(apply_generator(f, translate((0, -1))), NEGATE_B)
            elif f.a == f.c:
                f = apply_generator(f, INVERT)
    raise RuntimeError(f"reduction of {form} did not terminate")


def type_number(N: int) -> int:
    return len(iota_orbits(N))


def iota_orbits(N: int) -> list[tuple[HermitianForm, ...]]:
    """Orbits of form -> reduce_form(iota(form)) on the reduced list."""
    seen: set[HermitianForm] = set()
    orbits = []
    for f in enumerate_reduced(N):
        if f in seen:
            continue
        g = reduce_form(iota(f))
        orbit = (f,) if g == f else (f, g)
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def definable_over_Q(form: HermitianForm) -> bool:
    if is_principal(form):
        raise ValueError("the principal form carries no curve")
    return reduce_form(iota(form)) == form


def period_matrix(form: HermitianForm) -> PeriodMatrix:
    return PeriodMatrix(form.N, form.a, form.r, form.s)
