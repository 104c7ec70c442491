"""Exact arithmetic: Gaussian integers, elements of K = Q(sqrt(-N)),
factorization, divisors, Kronecker symbols and square roots mod p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

Rational = Union[int, Fraction]

TRIAL_BOUND = 10**7
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed prime bases; deterministic below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factor(n: int) -> dict[int, int]:
    """Prime factorization of |n| as an ascending ``{prime: exponent}`` dict.

    Trial division up to ``TRIAL_BOUND``; the cofactor must then be 1 or a
    prime, otherwise ``ValueError`` is raised.
    """
    n = int(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p, step = 5, 2
    prime_cofactor = is_prime(n)
    while n > 1 and not prime_cofactor and p * p <= n:
        if p > TRIAL_BOUND:
            raise ValueError(f"cofactor {n} has no prime factor below {TRIAL_BOUND}")
        if n % p == 0:
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
            prime_cofactor = is_prime(n)
        p += step
        step = 6 - step
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return dict(sorted(out.items()))


def factor_rational(q: Rational) -> dict[int, int]:
    """Signed exponent map of |q| for a nonzero rational q."""
    q = Fraction(q)
    out = factor(q.numerator)
    for p, e in factor(q.denominator).items():
        out[p] = out.get(p, 0) - e
    return dict(sorted((p, e) for p, e in out.items() if e))


def unfactor(fac: dict[int, int]) -> Fraction:
    value = Fraction(1)
    for p, e in fac.items():
        value *= Fraction(p) ** e
    return value


def divisors(n: int) -> list[int]:
    if n <= 0:
        raise ValueError("divisors() needs a positive integer")
    divs = [1]
    for p, e in factor(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 1."""
    if n <= 0:
        raise ValueError("kronecker symbol needs n >= 1")
    a, n = int(a), int(n)
    result = 1
    # factor out 2 from n; (a/2) is 0 for even a, else +1 iff a = +-1 mod 8
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    # now n odd: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod_p(a: int, p: int) -> int | None:
    """Return the root rho of a mod p with 0 <= rho <= (p-1)/2, or None."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    if kronecker(a, p) != 1:
        return None
    if p <= 10**4:
        rho = next(x for x in range(1, (p + 1) // 2) if x * x % p == a)
        return rho
    rho = _tonelli_shanks(a, p)
    return min(rho, p - rho)


def _tonelli_shanks(a: int, p: int) -> int:
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while kronecker(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@dataclass(frozen=True)
class GaussianInt:
    re: int
    im: int = 0

    def __add__(self, other: GaussianInt) -> GaussianInt:
        other = _as_gauss(other)
        return GaussianInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: GaussianInt) -> GaussianInt:
        other = _as_gauss(other)
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> GaussianInt:
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other: GaussianInt) -> GaussianInt:
        other = _as_gauss(other)
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conj(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _as_gauss(x) -> GaussianInt:
    if isinstance(x, GaussianInt):
        return x
    if isinstance(x, int):
        return GaussianInt(x, 0)
    raise TypeError(f"cannot use {x!r} as a Gaussian integer")


@dataclass(frozen=True)
class KElement:
    """x + y*sqrt(-N) with rational x, y; sqrt(-N) = i*sqrt(N), sqrt(N) > 0."""

    N: int
    x: Fraction
    y: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def _coerce(self, other) -> KElement:
        if isinstance(other, KElement):
            if other.N != self.N:
                raise ValueError(f"mixing Q(sqrt(-{self.N})) and Q(sqrt(-{other.N}))")
            return other
        if isinstance(other, (int, Fraction)):
            return KElement(self.N, Fraction(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return KElement(self.N, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return KElement(self.N, self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return KElement(self.N, -self.x, -self.y)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return KElement(
            self.N,
            self.x * o.x - self.N * self.y * o.y,
            self.x * o.y + self.y * o.x,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in K")
        num = self * o.conj()
        return KElement(self.N, num.x / n, num.y / n)

    def __rtruediv__(self, other):
        return KElement(self.N, Fraction(other)) / self

    def __pow__(self, e: int):
        if e < 0:
            return KElement(self.N, 1) / self**-e
        out, base = KElement(self.N, 1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and self.x == other
        if isinstance(other, KElement):
            return self.N == other.N and self.x == other.x and self.y == other.y
        return NotImplemented

    def __hash__(self):
        return hash((self.N, self.x, self.y))

    def __bool__(self):
        return bool(self.x) or bool(self.y)

    def conj(self) -> KElement:
        return KElement(self.N, self.x, -self.y)

    def norm(self) -> Fraction:
        return self.x * self.x + self.N * self.y * self.y

    def is_rational(self) -> bool:
        return self.y == 0

    def in_maximal_order(self) -> bool:
        """Membership in Z + Z(1 + sqrt(-N))/2."""
        u, v = 2 * self.x, 2 * self.y
        return u.denominator == 1 and v.denominator == 1 and (u - v) % 2 == 0

    def to_complex(self, ctx) -> complex:
        """Numerical value in an mpmath context."""
        return ctx.mpc(
            ctx.mpf(self.x.numerator) / self.x.denominator,
            ctx.mpf(self.y.numerator) / self.y.denominator * ctx.sqrt(self.N),
        )

    def __str__(self) -> str:
        if self.y == 0:
            return str(self.x)
        rad = f"sqrt(-{self.N})"
        ypart = rad if self.y == 1 else f"-{rad}" if self.y == -1 else f"{self.y}*{rad}"
        if self.x == 0:
            return ypart
        return f"{self.x} + {ypart}" if self.y > 0 else f"{self.x} - {ypart.lstrip('-')}"
