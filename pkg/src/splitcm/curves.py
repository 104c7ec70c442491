"""Exact curve models y^2 = f(x) over K = Q(sqrt(-N)) and over Q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .analytic import (
    PrecisionContext,
    bolza_klein_sextic,
    default_digits,
    eta24_abs,
)
from .exact_arith import KElement
from .hermitian import HermitianForm, iota, is_principal, period_matrix, reduce_form

MAX_RETRIES = 3


class RecognitionFailed(ArithmeticError):
    pass


class PrincipalForm(ValueError):
    pass


@dataclass(frozen=True)
class SexticK:
    """f(x) = sum c_k x^k with c_k in K; ``coeffs[k]`` is c_k."""

    N: int
    coeffs: tuple[KElement, ...]
    form: HermitianForm | None = None
    digits: int | None = None
    residual_log10: float | None = None

    def __post_init__(self):
        coeffs = tuple(
            c if isinstance(c, KElement) else KElement(self.N, Fraction(c)) for c in self.coeffs
        )
        if len(coeffs) != 7:
            raise ValueError("a sextic has seven coefficients")
        if not coeffs[6]:
            raise ValueError("leading coefficient vanishes")
        object.__setattr__(self, "coeffs", coeffs)

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def integral_after_scaling(self) -> bool:
        """a^6 c_k lies in the maximal order of K for every k."""
        scale = self.form.a**6 if self.form is not None else 1
        return all((c * scale).in_maximal_order() for c in self.coeffs)

    def to_q(self) -> SexticQ:
        if not self.is_rational():
            raise ValueError("sextic has irrational coefficients")
        return SexticQ(tuple(c.x for c in self.coeffs))

    def __str__(self) -> str:
        return " + ".join(f"({c})*x^{k}" for k, c in reversed(list(enumerate(self.coeffs))) if c)


@dataclass(frozen=True)
class SexticQ:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != 7:
            raise ValueError("a sextic has seven coefficients")
        if coeffs[6] == 0:
            raise ValueError("leading coefficient vanishes")
        object.__setattr__(self, "coeffs", coeffs)

    def __str__(self) -> str:
        return " + ".join(f"{c}*x^{k}" for k, c in reversed(list(enumerate(self.coeffs))) if c)


def recognize_in_K(z, N: int, a: int, prec: PrecisionContext) -> tuple[KElement, float]:
    """Round z to the nearest x + y sqrt(-N) with 2 a^6 x, 2 a^6 y integers of
    equal parity.  Returns the element and log10 of the residual."""
    ctx = prec.ctx
    z = ctx.mpc(z)
    scale = 2 * a**6
    X = int(ctx.nint(scale * z.real))
    Y = int(ctx.nint(scale * z.imag / ctx.sqrt(N)))
    w = KElement(N, Fraction(X, scale), Fraction(Y, scale))
    residual = abs(z - w.to_complex(ctx))
    if residual >= ctx.mpf(10) ** (-prec.digits / 2):
        raise RecognitionFailed(f"residual {ctx.nstr(residual, 5)} at {prec.digits} digits")
    if (X - Y) % 2:
        raise RecognitionFailed(f"parity check failed for {X} + {Y} sqrt(-{N})")
    log_res = float(ctx.log10(residual)) if residual else -float(ctx.dps)
    return w, log_res


def normalized_complex_sextic(form: HermitianForm, prec: PrecisionContext):
    """f_Z / ((2 pi)^6 a^6 |eta|^24) as seven complex numbers, f(x, 1) order."""
    ctx = prec.ctx
    raw = bolza_klein_sextic(period_matrix(form), prec)
    denom = (2 * ctx.pi) ** 6 * form.a**6 * eta24_abs(form.N, prec)
    return [c / denom for c in raw]


def _recognize_all(form: HermitianForm, prec: PrecisionContext):
    values = normalized_complex_sextic(form, prec)
    out, worst = [], -float("inf")
    for z in values:
        w, lr = recognize_in_K(z, form.N, form.a, prec)
        out.append(w)
        worst = max(worst, lr)
    return tuple(out), worst


def normalized_sextic(
    form: HermitianForm, prec: PrecisionContext | None = None, max_retries: int = MAX_RETRIES
) -> SexticK:
    """Exact normalized Bolza-Klein sextic of a reduced non-principal form.

    The coefficients are recognized at the working precision and again at
    twice that precision; both must agree.  On any failure the precision is
    doubled, up to ``max_retries`` times.
    """
    if is_principal(form):
        raise PrincipalForm(f"{form} is the product polarization; no curve")
    if prec is None:
        prec = PrecisionContext(default_digits(form.N, form.a))
    last_error = None
    for _ in range(max_retries + 1):
        try:
            coeffs, residual = _recognize_all(form, prec)
            check, _ = _recognize_all(form, prec.doubled())
            if check != coeffs:
                raise RecognitionFailed("recognized coefficients changed at doubled precision")
            return SexticK(form.N, coeffs, form, prec.digits, residual)
        except RecognitionFailed as exc:
            last_error = exc
            prec = prec.doubled()
    raise RecognitionFailed(f"{form}: {last_error}")


def iota_sextic(f: SexticK) -> SexticK:
    """Conjugate every coefficient (the nontrivial automorphism of K)."""
    partner = reduce_form(iota(f.form)) if f.form is not None else None
    return SexticK(f.N, tuple(c.conj() for c in f.coeffs), partner, f.digits, f.residual_log10)


# -- polynomial helpers over a ring ---------------------------------------------


def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if not x:
            continue
        for j, y in enumerate(q):
            out[i + j] = out[i + j] + x * y
    return out


def cubic_iota(h):
    """conj(x^3 h(-1/x)) for a cubic given low-to-high."""
    return [(-1) ** (3 - j) * h[3 - j].conj() for j in range(4)]


# -- fixtures -------------------------------------------------------------------

_H163 = (  # (rational part, sqrt(-163) part), constant term first
    (-37250, -1596),
    (510153, -47481),
    (1752597, 129789),
    (-151790, 7144),
)


def intro_fixture_163() -> SexticK:
    """6^-3 h(x) h^iota(x) for the cubic h over Q(sqrt(-163))."""
    N = 163
    h = [KElement(N, x, y) for x, y in _H163]
    f = poly_mul(h, cubic_iota(h))
    scale = Fraction(1, 6**3)
    return SexticK(N, tuple(c * scale for c in f))


_Q43 = (1472877, 3214656, 813483, 585856, 61311, 24384, 1)


def q_model_43() -> SexticQ:
    """A model over Q of the curve attached to (2, 1 + 2i, 6), N = 43."""
    return SexticQ(_Q43)

