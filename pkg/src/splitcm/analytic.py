"""Arbitrary-precision kernel: Dedekind eta, genus-2 theta functions with
characteristics and their gradients at u = 0, and the Bolza-Klein sextic.

Every routine takes an explicit :class:`PrecisionContext`; each context
owns a private mpmath context, so nothing touches mpmath's global state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import mpmath

from .hermitian import PeriodMatrix

GUARD_DIGITS = 15


@dataclass(frozen=True)
class PrecisionContext:
    digits: int
    ctx: mpmath.ctx_mp.MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.digits < 30:
            raise ValueError("working precision must be at least 30 digits")
        ctx = mpmath.MPContext()
        ctx.dps = self.digits + GUARD_DIGITS
        object.__setattr__(self, "ctx", ctx)

    def doubled(self) -> PrecisionContext:
        return PrecisionContext(2 * self.digits)

    def eps(self, shift: int = 0):
        """10^(-digits + shift) as an mpf."""
        return self.ctx.mpf(10) ** (shift - self.digits)


def default_digits(N: int, a: int = 1) -> int:
    base = 120 if N <= 67 else 220
    return min(2000, max(base, 40 + math.ceil(3 * math.sqrt(N) * a)))


class ThetaCharacteristic(NamedTuple):
    mu: tuple[int, int]
    nu: tuple[int, int]

    def is_odd(self) -> bool:
        return (self.mu[0] * self.nu[0] + self.mu[1] * self.nu[1]) % 2 == 1


_PAIRS = ((0, 0), (0, 1), (1, 0), (1, 1))
ALL_CHARACTERISTICS = tuple(ThetaCharacteristic(mu, nu) for mu in _PAIRS for nu in _PAIRS)


def odd_characteristics() -> list[ThetaCharacteristic]:
    """The six odd characteristics, ordered lexicographically by (mu, nu)."""
    return [ch for ch in ALL_CHARACTERISTICS if ch.is_odd()]


# -- Dedekind eta -----------------------------------------------------------


def euler_function(q, ctx, digits: int):
    """prod_{n>=1} (1 - q^n) via Euler's pentagonal series, for real |q| < 1."""
    cutoff = ctx.mpf(10) ** (-(digits + 20))
    total = ctx.mpf(1)
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        term = q**e1
        if abs(term) < cutoff:
            break
        sign = -1 if k % 2 else 1
        total += sign * (term + q ** (e1 + k))
        k += 1
    return total


def nome(N: int, prec: PrecisionContext):
    """q = exp(2 pi i (1 + sqrt(-N))/2) = -exp(-pi sqrt(N)), real."""
    ctx = prec.ctx
    return -ctx.exp(-ctx.pi * ctx.sqrt(N))


def eta24_abs(N: int, prec: PrecisionContext):
    """|eta((1 + sqrt(-N))/2)|^24 = exp(-pi sqrt N) * |prod (1 - q^n)|^24."""
    if N % 4 != 3:
        raise ValueError("N must be 3 mod 4")
    ctx = prec.ctx
    q = nome(N, prec)
    prod = euler_function(q, ctx, prec.digits)
    return ctx.exp(-ctx.pi * ctx.sqrt(N)) * abs(prod) ** 24


# -- theta functions ----------------------------------------------------------


def truncation_radius(Z: PeriodMatrix, prec: PrecisionContext) -> float:
    """Radius R such that lattice points with |m| > R contribute below
    10^(-digits-5) to any theta gradient."""
    decay = math.pi * math.sqrt(Z.N) / (2 * Z.a)
    R = 1 + math.sqrt((prec.digits + 10) * math.log(10) / decay)
    while log10_tail_bound(decay, R) > -prec.digits - 5:
        R += 0.5
    return R


def log10_tail_bound(decay: float, R: float) -> float:
    """log10 of a bound on sum_{|m| > R} 2 pi |m| exp(-decay |m|^2), m in a
    shifted copy of Z^2.

    At most 4 pi (k + 2) points have k <= |m| < k + 1.  Once consecutive
    shell bounds shrink by a factor below 1/2 the rest is at most the
    last shell bound.
    """
    k = int(R)
    logs = []
    while True:
        logs.append(math.log(8 * math.pi**2 * (k + 2) * (k + 1)) - decay * k * k)
        ratio = math.exp(-decay * (2 * k + 1)) * (k + 3) / (k + 1)
        if ratio < 0.5 and len(logs) > 1 and logs[-1] < logs[0] - 30:
            break
        k += 1
    top = max(logs)
    total = math.log(sum(math.exp(x - top) for x in logs) + 1) + top
    return total / math.log(10)


def _lattice(Z: PeriodMatrix, mu: tuple[int, int], R: float):
    """Doubled coordinates (2 m1, 2 m2) of m in Z^2 + mu/2 with |m| <= R."""
    bound = int(2 * R) + 2
    out = []
    for i2 in range(-bound, bound + 1):
        if (i2 - mu[0]) % 2:
            continue
        for j2 in range(-bound, bound + 1):
            if (j2 - mu[1]) % 2:
                continue
            if i2 * i2 + j2 * j2 <= 4 * R * R:
                out.append((i2, j2))
    return out


def _terms(ch: ThetaCharacteristic, Z: PeriodMatrix, prec: PrecisionContext, R: float | None = None):
    """Yield (m1, m2, exp(pi i m^T Z m) * exp(pi i m.nu)) as mpmath values."""
    ctx = prec.ctx
    if R is None:
        R = truncation_radius(Z, prec)
    two_a = 2 * Z.a
    # exp(-pi sqrt(N)/(2a) |m|^2) = base^(4|m|^2), base = exp(-pi sqrt(N)/(8a))
    base = ctx.exp(-ctx.pi * ctx.sqrt(Z.N) / (4 * two_a))
    powers: dict[int, object] = {}
    for i2, j2 in _lattice(Z, ch.mu, R):
        n2 = i2 * i2 + j2 * j2
        if n2 not in powers:
            powers[n2] = base**n2
        # real part of m^T Z m plus m.nu, with m = (i2, j2)/2
        phase = Fraction(Z.r * (i2 * i2 - j2 * j2) + 2 * Z.s * i2 * j2, 4 * two_a)
        phase += Fraction(i2 * ch.nu[0] + j2 * ch.nu[1], 2)
        phase %= 2
        w = powers[n2] * ctx.expjpi(ctx.mpf(phase.numerator) / phase.denominator)
        yield ctx.mpf(i2) / 2, ctx.mpf(j2) / 2, w


def theta(ch: ThetaCharacteristic, Z: PeriodMatrix, u, prec: PrecisionContext):
    """theta_{mu,nu}(u, Z) = sum_m exp(pi i m^T Z m) exp(2 pi i m^T (u + nu/2))."""
    ctx = prec.ctx
    u1, u2 = ctx.mpmathify(u[0]), ctx.mpmathify(u[1])
    total = ctx.mpc(0)
    for m1, m2, w in _terms(ch, Z, prec):
        total += w * ctx.expj(2 * ctx.pi * (m1 * u1 + m2 * u2))
    return total


def theta_gradient(ch: ThetaCharacteristic, Z: PeriodMatrix, prec: PrecisionContext, R: float | None = None):
    """Gradient (d/du1, d/du2) of an odd theta function at u = 0."""
    if not ch.is_odd():
        raise ValueError(f"characteristic {ch} is even; its gradient at 0 vanishes")
    ctx = prec.ctx
    g1 = g2 = ctx.mpc(0)
    for m1, m2, w in _terms(ch, Z, prec, R):
        g1 += w * m1
        g2 += w * m2
    scale = 2j * ctx.pi
    return g1 * scale, g2 * scale


def linear_forms_product(forms, ctx):
    """Expand prod (g1 u1 + g2 u2); entry k is the coefficient of u1^k u2^(deg-k)."""
    coeffs = [ctx.mpc(1)]
    for g1, g2 in forms:
        nxt = [ctx.mpc(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k] += c * g2
            nxt[k + 1] += c * g1
        coeffs = nxt
    return coeffs


def bolza_klein_sextic(Z: PeriodMatrix, prec: PrecisionContext, order=None):
    """Leading Taylor term at u = 0 of the product of the six odd thetas.

    Returns seven complex coefficients c0..c6, c_k multiplying u1^k u2^(6-k).
    """
    chars = odd_characteristics() if order is None else list(order)
    grads = [theta_gradient(ch, Z, prec) for ch in chars]
    return linear_forms_product(grads, prec.ctx)
