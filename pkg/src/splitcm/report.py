"""Per-curve reports and their canonical JSON encoding.

Every exact number is written as a decimal string so that consumers never
round big integers through doubles.  Keys are sorted and there are no
floats, so serializing a parsed document reproduces it byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .analytic import PrecisionContext, default_digits
from .arithmetic_checks import MaximalScanRow, maximal_scan
from .curves import SexticK, SexticQ, intro_fixture_163, normalized_sextic
from .exact_arith import factor_rational
from .hermitian import (
    HermitianForm,
    definable_over_Q,
    enumerate_reduced,
    iota,
    iota_orbits,
    is_principal,
    reduce_form,
)
from .invariants import (
    IgusaInvariants,
    ObstructionReport,
    conic_obstruction,
    det_mestre,
    igusa,
    mestre_matrix,
    scaled_disc,
    weighted_equal,
)

SCHEMA_VERSION = "1"
REPORT_NS = (3, 7, 11, 19, 43, 67, 163)


# -- encoding helpers -------------------------------------------------------------


def dec(x) -> str:
    """Exact rational as a decimal string: "12" or "-7/3"."""
    return str(Fraction(x))


def factorization_json(fac: dict) -> dict:
    return {str(p): str(e) for p, e in sorted(fac.items())}


def sextic_json(f) -> dict:
    """c_k = (x_k + y_k sqrt(-N)) / denominator, plus each c_k as a K-element."""
    if isinstance(f, SexticQ):
        pairs, N = [(c, Fraction(0)) for c in f.coeffs], None
    else:
        pairs, N = [(c.x, c.y) for c in f.coeffs], f.N
    den = lcm(*(q.denominator for pair in pairs for q in pair))
    out = {
        "denominator": str(den),
        "numerators": [[str(x * den), str(y * den)] for x, y in pairs],
        "coefficients": [
            {"x_num": str(x.numerator), "x_den": str(x.denominator), "y_num": str(y.numerator), "y_den": str(y.denominator)}
            for x, y in pairs
        ],
    }
    if N is not None:
        out["N"] = str(N)
    return out


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


# -- reports --------------------------------------------------------------------


@dataclass
class CurveReport:
    form: HermitianForm
    principal: bool
    definable: bool
    sextic: SexticK | None = None
    J: IgusaInvariants | None = None
    D_factorization: dict = field(default_factory=dict)
    mestre: tuple | None = None
    det_M: Fraction | None = None
    det_factorization: dict = field(default_factory=dict)
    extra_automorphisms: bool = False
    obstruction: ObstructionReport | None = None
    scan: list[MaximalScanRow] | None = None

    def consistent(self) -> bool:
        """D = J10, and an obstruction is present iff the curve is not
        definable over Q and det M is nonzero."""
        if self.principal:
            return self.sextic is None
        if factor_rational(self.J.J10) != self.D_factorization:
            return False
        if scaled_disc(self.sextic) != self.J.J10:
            return False
        has_obstruction = self.obstruction is not None and bool(self.obstruction.obstructed_places)
        return has_obstruction == (not self.definable and self.det_M != 0)

    def to_json(self) -> dict:
        a, r, s, c = self.form.triple()
        doc = {
            "form": {"a": str(a), "r": str(r), "s": str(s), "c": str(c), "text": str(self.form)},
            "principal": self.principal,
            "definable_over_Q": self.definable,
        }
        if self.principal:
            return doc
        partner = reduce_form(iota(self.form))
        doc.update(
            {
                "iota_partner": {"a": str(partner.a), "r": str(partner.r), "s": str(partner.s), "c": str(partner.c)},
                "digits": str(self.sextic.digits),
                "sextic": sextic_json(self.sextic),
                "igusa": {name: dec(v) for name, v in zip(("J2", "J4", "J6", "J8", "J10"), self.J)},
                "D_factorization": factorization_json(self.D_factorization),
                "mestre_matrix": [[dec(x) for x in row] for row in self.mestre],
                "det_M": dec(self.det_M),
                "det_M_factorization": factorization_json(self.det_factorization),
                "extra_automorphisms": self.extra_automorphisms,
            }
        )
        if self.obstruction is not None:
            doc["obstruction"] = {
                "places": [str(v) for v in self.obstruction.obstructed_places],
                "solvable_over_Q": self.obstruction.solvable_over_Q,
            }
        if self.scan is not None:
            doc["maximal_scan"] = scan_summary(self.scan)
        return doc


def scan_summary(rows: list[MaximalScanRow]) -> dict:
    checked = [r for r in rows if not r.skipped]
    return {
        "primes_checked": str(len(checked)),
        "primes_skipped": [str(r.p) for r in rows if r.skipped],
        "failures": [str(r.p) for r in checked if not r.is_maximal],
        "all_maximal": all(r.is_maximal for r in checked),
    }


def curve_report(form: HermitianForm, digits: int | None = None, scan_pmax: int | None = None) -> CurveReport:
    if is_principal(form):
        return CurveReport(form, True, False)
    prec = PrecisionContext(digits or default_digits(form.N, form.a))
    f = normalized_sextic(form, prec)
    J = igusa(f)
    M = mestre_matrix(J)
    det, det_fac = det_mestre(M)
    rep = CurveReport(
        form,
        False,
        definable_over_Q(form),
        f,
        J,
        factor_rational(J.J10),
        M,
        det,
        det_fac,
        extra_automorphisms=det == 0,
    )
    if det != 0:
        rep.obstruction = conic_obstruction(M)
    if scan_pmax is not None:
        rep.scan = maximal_scan(f, form.N, scan_pmax)
    return rep


def report_document(N: int, digits: int | None = None) -> dict:
    if N not in REPORT_NS:
        raise ValueError(f"report covers N in {REPORT_NS}, got {N}")
    forms = enumerate_reduced(N)
    orbits = iota_orbits(N)
    curves = [curve_report(f, digits) for f in forms if not is_principal(f)]
    doc = {
        "schema_version": SCHEMA_VERSION,
        "N": str(N),
        "n": str(len(forms)),
        "t": str(len(orbits)),
        "t_minus_1": str(len(orbits) - 1),
        "orbits": [[str(f) for f in orbit] for orbit in orbits if not is_principal(orbit[0])],
        "curves": [c.to_json() for c in curves],
    }
    if N == 163:
        intro = igusa(intro_fixture_163())
        doc["intro_fixture_matches"] = [
            str(c.form) for c in curves if weighted_equal(intro, c.J)
        ]
    return doc
