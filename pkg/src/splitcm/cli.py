"""Command-line front end.

    splitcm enumerate -N 163
    splitcm curve -N 43 --form 3,1,2,4 --format json
    splitcm gz-verify -N 163
    splitcm maximal-scan -N 43 --curve 3,1,2,4 --pmax 10000
    splitcm report -N 43 -o report43.json

Exit codes: 0 ok, 1 verdict DIFFER, 2 invalid input, 3 recognition failure,
4 principal form, 5 indefinite Gram matrix, 6 maximality failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .analytic import PrecisionContext, default_digits
from .arithmetic_checks import IndefiniteForm, gz_exponents, maximal_scan, parse_gram
from .curves import PrincipalForm, RecognitionFailed, SexticQ, intro_fixture_163, normalized_sextic, q_model_43
from .exact_arith import factor_rational
from .hermitian import check_N, enumerate_reduced, is_principal, is_reduced, iota_orbits, make_form
from .invariants import det_mestre, field_of_moduli_report, igusa, mestre_matrix, scaled_disc
from .report import curve_report, dec, dumps, factorization_json, report_document, scan_summary, sextic_json

EXIT_OK, EXIT_DIFFER, EXIT_INPUT, EXIT_RECOGNITION, EXIT_PRINCIPAL, EXIT_INDEFINITE, EXIT_NOT_MAXIMAL = 0, 1, 2, 3, 4, 5, 6


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    command: str
    N: int | None
    digits: int  # 0 selects the automatic policy
    fmt: str
    out: str | None
    args: argparse.Namespace


# -- argument helpers ---------------------------------------------------------------


def parse_digits(text: str) -> int:
    if text == "auto":
        return 0
    d = int(text)
    if d < 30:
        raise argparse.ArgumentTypeError("--digits must be at least 30 or 'auto'")
    return d


def _form(N: int, text: str):
    try:
        a, r, s, c = (int(t) for t in text.split(","))
        form = make_form(N, a, r, s, c)
    except ValueError as exc:
        raise CliError(f"bad form {text!r}: {exc}") from None
    if not is_reduced(form):
        raise CliError(f"{form} is not reduced")
    return form


def _prec(cfg: RunConfig, form):
    return PrecisionContext(cfg.digits or default_digits(form.N, form.a))


def _require_N(cfg: RunConfig) -> int:
    if cfg.N is None:
        raise CliError("-N is required")
    try:
        check_N(cfg.N)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    return cfg.N


def _select_curve(cfg: RunConfig, selector: str):
    """qmodel, intro, or a reduced form a,r,s,c."""
    if selector == "qmodel":
        if cfg.N not in (None, 43):
            raise CliError("qmodel is a curve for N = 43")
        return q_model_43()
    if selector == "intro":
        if cfg.N not in (None, 163):
            raise CliError("intro is a curve for N = 163")
        return intro_fixture_163()
    form = _form(_require_N(cfg), selector)
    if is_principal(form):
        raise CliError(f"{form} is the principal form; it has no curve", EXIT_PRINCIPAL)
    return normalized_sextic(form, _prec(cfg, form))


def read_sextic(path: str) -> SexticQ:
    """Seven rational coefficients c0..c6, one per line, p/q syntax."""
    try:
        with open(path) as fh:
            lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
        return SexticQ(tuple(Fraction(ln) for ln in lines))
    except (OSError, ValueError, ZeroDivisionError) as exc:
        raise CliError(f"cannot read sextic from {path}: {exc}") from None


# -- commands --------------------------------------------------------------------


def cmd_enumerate(cfg: RunConfig):
    N = _require_N(cfg)
    forms = enumerate_reduced(N)
    t = len(iota_orbits(N))
    if cfg.fmt == "json":
        doc = {
            "N": str(N),
            "n": str(len(forms)),
            "t": str(t),
            "forms": [{"a": str(f.a), "r": str(f.r), "s": str(f.s), "c": str(f.c)} for f in forms],
        }
        return dumps(doc), EXIT_OK
    lines = [f"{'a':>4} {'b':>10} {'c':>6}"]
    lines += [f"{f.a:>4} {str(f.b):>10} {f.c:>6}" for f in forms]
    lines.append(f"n={len(forms)} t={t}")
    return "\n".join(lines) + "\n", EXIT_OK


def _curve_text(rep) -> str:
    out = [f"form {rep.form}  N={rep.form.N}"]
    if rep.principal:
        return out[0] + "\nprincipal form: no curve\n"
    out.append(f"definable over Q: {'yes' if rep.definable else 'no'}")
    out.append(f"digits: {rep.sextic.digits}  residual: 10^{rep.sextic.residual_log10:.1f}")
    out.append("f(x) =")
    out += [f"  x^{k}: {c}" for k, c in reversed(list(enumerate(rep.sextic.coeffs)))]
    for name, v in zip(("J2", "J4", "J6", "J8", "J10"), rep.J):
        out.append(f"{name:>4} = {v}")
    out.append("D = J10 = " + _fac_text(rep.D_factorization))
    out.append("Mestre matrix M:")
    out += ["  [" + ", ".join(str(x) for x in row) + "]" for row in rep.mestre]
    out.append(f"det M = {rep.det_M}")
    if rep.extra_automorphisms:
        out.append("det M = 0: extra automorphisms, no obstruction")
    else:
        out.append("det M = " + ("-" if rep.det_M < 0 else "") + _fac_text(rep.det_factorization))
        places = rep.obstruction.obstructed_places
        out.append("obstruction: {" + ", ".join(str(p) for p in places) + "}")
    return "\n".join(out) + "\n"


def _fac_text(fac: dict) -> str:
    if not fac:
        return "1"
    return " * ".join(f"{p}^{e}" if e != 1 else f"{p}" for p, e in sorted(fac.items()))


def cmd_curve(cfg: RunConfig):
    N = _require_N(cfg)
    if not cfg.args.form:
        raise CliError("--form is required")
    form = _form(N, cfg.args.form)
    if is_principal(form):
        raise CliError(f"{form} is the principal form; it has no curve", EXIT_PRINCIPAL)
    rep = curve_report(form, cfg.digits or None)
    if cfg.fmt == "json":
        return dumps(rep.to_json()), EXIT_OK
    return _curve_text(rep), EXIT_OK


def cmd_invariants(cfg: RunConfig):
    f = read_sextic(cfg.args.sextic)
    J = igusa(f)
    names = ("J2", "J4", "J6", "J8", "J10")
    if J.J10 == 0:
        raise CliError("sextic is singular (J10 = 0)")
    if cfg.fmt == "json":
        doc = {
            "igusa": {n: dec(v) for n, v in zip(names, J)},
            "J10_factorization": factorization_json(factor_rational(J.J10)),
            "disc_over_4096": dec(scaled_disc(f)),
        }
        return dumps(doc), EXIT_OK
    lines = [f"{n:>4} = {v}" for n, v in zip(names, J)]
    lines.append("J10 = " + ("-" if J.J10 < 0 else "") + _fac_text(factor_rational(J.J10)))
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_obstruction(cfg: RunConfig):
    if cfg.args.sextic:
        f = read_sextic(cfg.args.sextic)
    elif cfg.args.form:
        f = _select_curve(cfg, cfg.args.form)
    else:
        raise CliError("give --form or --sextic")
    J = igusa(f)
    if J.J10 == 0:
        raise CliError("sextic is singular (J10 = 0)")
    M = mestre_matrix(J)
    rep = field_of_moduli_report(J)
    if cfg.fmt == "json":
        doc = {
            "mestre_matrix": [[dec(x) for x in row] for row in M],
            "det_M": dec(rep.det),
            "det_M_factorization": factorization_json(rep.det_factorization),
            "extra_automorphisms": rep.extra_automorphisms,
            "obstructed_places": [str(v) for v in rep.obstructed_places],
            "solvable_over_Q": rep.solvable_over_Q,
        }
        return dumps(doc), EXIT_OK
    lines = ["Mestre matrix M:"]
    lines += ["  [" + ", ".join(str(x) for x in row) + "]" for row in M]
    lines.append(f"det M = {rep.det}")
    if rep.extra_automorphisms:
        lines.append("det M = 0: extra automorphisms, no obstruction")
    else:
        lines.append("obstruction: {" + ", ".join(str(p) for p in rep.obstructed_places) + "}")
    return "\n".join(lines) + "\n", EXIT_OK


def load_gram(path: str | None):
    try:
        if path is None:
            text = resources.files("splitcm").joinpath("data/gram_163.txt").read_text()
        else:
            with open(path) as fh:
                text = fh.read()
        return parse_gram(text)
    except IndefiniteForm as exc:
        raise CliError(str(exc), EXIT_INDEFINITE) from None
    except (OSError, ValueError) as exc:
        raise CliError(f"malformed Gram matrix: {exc}") from None


def cmd_gz_verify(cfg: RunConfig):
    N = _require_N(cfg)
    Q = load_gram(cfg.args.gram)
    gz = gz_exponents(Q, N)
    f = _select_curve(cfg, cfg.args.curve or "intro")
    disc = scaled_disc(f)
    dfac = factor_rational(disc)
    equal = gz == dfac and disc > 0
    if cfg.fmt == "json":
        doc = {
            "N": str(N),
            "gram": [[str(x) for x in row] for row in Q.gram],
            "gz_exponents": factorization_json(gz),
            "disc_over_4096_factorization": factorization_json(dfac),
            "verdict": "EQUAL" if equal else "DIFFER",
        }
        text = dumps(doc)
    else:
        text = (
            f"gz exponents:        {_fac_text(gz)}\n"
            f"2^-12 disc factors:  {_fac_text(dfac)}\n"
            f"{'EQUAL' if equal else 'DIFFER'}\n"
        )
    return text, EXIT_OK if equal else EXIT_DIFFER


def cmd_maximal_scan(cfg: RunConfig):
    N = _require_N(cfg)
    f = _select_curve(cfg, cfg.args.curve or "qmodel")
    rows = maximal_scan(f, N, cfg.args.pmax, cfg.args.pmin, cfg.args.root)
    ok = all(r.is_maximal for r in rows if not r.skipped)
    if cfg.fmt == "json":
        doc = {
            "N": str(N),
            "curve": cfg.args.curve or "qmodel",
            "rows": [
                {
                    "p": str(r.p),
                    "a": str(r.a),
                    "expected": str(r.expected),
                    "count": None if r.count is None else str(r.count),
                    "twist_count": None if r.twist_count is None else str(r.twist_count),
                    "maximal": r.is_maximal,
                    "skipped": r.skipped,
                    "reason": r.reason,
                }
                for r in rows
            ],
            "summary": scan_summary(rows),
        }
        text = dumps(doc)
    else:
        lines = [f"{'p':>6} {'a':>4} {'p+1+2a':>7} {'#C':>6} {'#twist':>7}  result"]
        for r in rows:
            if r.skipped:
                lines.append(f"{r.p:>6} {r.a:>4} {r.expected:>7} {'-':>6} {'-':>7}  skipped: {r.reason}")
            else:
                verdict = "maximal" if r.is_maximal else "NOT maximal"
                lines.append(f"{r.p:>6} {r.a:>4} {r.expected:>7} {r.count:>6} {r.twist_count:>7}  {verdict}")
        checked = sum(not r.skipped for r in rows)
        lines.append(f"{checked} primes checked, {sum(not r.is_maximal for r in rows if not r.skipped)} failures")
        text = "\n".join(lines) + "\n"
    return text, EXIT_OK if ok else EXIT_NOT_MAXIMAL


def cmd_report(cfg: RunConfig):
    N = _require_N(cfg)
    try:
        doc = report_document(N, cfg.digits or None)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if cfg.fmt == "json":
        return dumps(doc), EXIT_OK
    lines = [f"N={N} n={doc['n']} t={doc['t']} curves={len(doc['curves'])}"]
    for c in doc["curves"]:
        obstruction = c.get("obstruction", {}).get("places", [])
        lines.append(
            f"{c['form']['text']:>18}  definable={'yes' if c['definable_over_Q'] else 'no ':3}"
            f"  J10={_fac_text({int(p): int(e) for p, e in c['D_factorization'].items()})}"
            f"  obstruction={{{', '.join(obstruction)}}}"
        )
    if "intro_fixture_matches" in doc:
        lines.append("intro curve matches: " + ", ".join(doc["intro_fixture_matches"]))
    return "\n".join(lines) + "\n", EXIT_OK


COMMANDS = {
    "enumerate": cmd_enumerate,
    "curve": cmd_curve,
    "invariants": cmd_invariants,
    "obstruction": cmd_obstruction,
    "gz-verify": cmd_gz_verify,
    "maximal-scan": cmd_maximal_scan,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-N", type=int, help="prime N = 3 mod 4")
    common.add_argument("--digits", type=parse_digits, default=0, help="working precision, or 'auto'")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-o", dest="out", help="write output to this path")

    parser = argparse.ArgumentParser(prog="splitcm", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("enumerate", parents=[common], help="reduced Hermitian forms")
    p = sub.add_parser("curve", parents=[common], help="normalized sextic and its invariants")
    p.add_argument("--form", help="reduced form a,r,s,c (b = r + si)")
    p = sub.add_parser("invariants", parents=[common], help="Igusa invariants of a sextic file")
    p.add_argument("--sextic", required=True, help="file of seven coefficients c0..c6")
    p = sub.add_parser("obstruction", parents=[common], help="Mestre conic obstruction")
    p.add_argument("--form", help="curve selector: qmodel, intro or a,r,s,c")
    p.add_argument("--sextic", help="file of seven rational coefficients c0..c6")
    p = sub.add_parser("gz-verify", parents=[common], help="discriminant from a ternary form")
    p.add_argument("--gram", help="Gram matrix file (default: bundled N = 163 matrix)")
    p.add_argument("--curve", help="curve selector: intro (default) or a,r,s,c")
    p = sub.add_parser("maximal-scan", parents=[common], help="maximality at split primes")
    p.add_argument("--curve", help="curve selector: qmodel (default), intro or a,r,s,c")
    p.add_argument("--pmax", type=int, default=10000)
    p.add_argument("--pmin", type=int, default=None)
    p.add_argument("--root", choices=("plus", "minus"), default="plus", help="image of sqrt(-N) mod p")
    sub.add_parser("report", parents=[common], help="full JSON document for one N")
    return parser


def run(argv=None) -> tuple[str, int]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return "", EXIT_INPUT if exc.code else EXIT_OK
    cfg = RunConfig(args.command, args.N, args.digits, args.format, args.out, args)
    try:
        text, code = COMMANDS[args.command](cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return "", exc.code
    except PrincipalForm as exc:
        print(f"error: {exc}", file=sys.stderr)
        return "", EXIT_PRINCIPAL
    except RecognitionFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return "", EXIT_RECOGNITION
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
        return "", code
    return text, code


def main(argv=None) -> int:
    text, code = run(argv)
    if text:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
