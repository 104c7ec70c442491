"""Acceptance gate: one group of tests per criterion.

The terminal summary prints a PASS/FAIL line per criterion number.
"""

import random
import time
from fractions import Fraction as F

import pytest

from splitcm.analytic import PrecisionContext, default_digits
from splitcm.arithmetic_checks import (
    TernaryForm,
    count_points,
    gz_exponents,
    maximal_scan,
    reduce_mod_P,
    twist,
    weil_serre_bound,
)
from splitcm.curves import intro_fixture_163, normalized_complex_sextic, normalized_sextic, q_model_43
from splitcm.exact_arith import KElement, factor_rational
from splitcm.hermitian import (
    class_number_formula,
    enumerate_reduced,
    is_principal,
    make_form,
    principal_form,
    random_word,
    apply_word,
    definable_over_Q,
    reduce_form,
    type_number,
)
from splitcm.invariants import (
    INF,
    conic_obstruction,
    det_mestre,
    field_of_moduli_report,
    hilbert_symbol,
    igusa,
    mestre_matrix,
    scaled_disc,
    sextic_disc,
    weighted_equal,
)

from test_arithmetic_checks import naive_count

TABLE_1 = [
    (1, 1, 0, 41), (2, 1, 2, 21),
    (3, -1, 2, 14), (3, 1, 2, 14), (4, -3, 2, 11), (4, 3, 2, 11),
    (5, -1, 4, 9), (5, 1, 4, 9), (6, -5, 2, 8), (6, -1, 2, 7),
    (6, 1, 2, 7), (6, 5, 2, 8), (7, -5, 6, 8), (7, 5, 6, 8),
]
LIST_43 = [(1, 1, 0, 11), (2, 1, 2, 6), (3, -1, 2, 4), (3, 1, 2, 4)]
TABLE_2 = {3: (1, 1), 7: (1, 1), 11: (2, 2), 19: (2, 2), 43: (4, 3), 67: (6, 4), 163: (14, 8)}


def K(x, y=0):
    return KElement(43, F(x), F(y))


SEXTIC_1 = [K(F(1, 2)), K(0), K(F(3, 4), F(567, 4)), K(0), K(F(-3, 4), F(567, 4)), K(0), K(F(-1, 2))]
SEXTIC_2 = [
    K(F(4, 27) * x, F(4, 27) * y)
    for x, y in [(160, 14), (162, -42), (159, 2247), (17021, 0), (-159, 2247), (162, 42), (-160, 14)]
]
J_1 = (1728012, 93313728006, -186622271996, -2176943579975806271997, 2176782336000000000000)
J_2 = (14333772, 7393823156166, 3726840435157546564, -312234946681873274015037, 7355827511386641000000000000)
M_2 = (
    (-21538723388574481387776, 24856361223852137345176064256, -23971255400369899892885589544571136),
    (24856361223852137345176064256, -28732882146400381994651008552571136, 27776672840855638207256856144392139100416),
    (-23971255400369899892885589544571136, 27776672840855638207256856144392139100416, -26987491534155851141341724256178812956900004096),
)
GRAM_163 = ((24, 4, 6), (4, 55, 1), (6, 1, 83))
GZ_163 = {2: 12, 3: 24, 5: 12, 7: 12, 11: 12, 17: 12, 19: 12, 23: 12}


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


# 1 -------------------------------------------------------------------------------


def test_criterion_01_enumeration():
    with Timer() as t:
        f163 = enumerate_reduced(163)
        f43 = enumerate_reduced(43)
    assert [f.triple() for f in f163] == TABLE_1
    assert [f.triple() for f in f43] == LIST_43
    assert t.elapsed < 1.0


# 2 -------------------------------------------------------------------------------


def test_criterion_02_class_and_type_numbers():
    with Timer() as t:
        for N, (n, tn) in TABLE_2.items():
            assert len(enumerate_reduced(N)) == n == class_number_formula(N)
            assert type_number(N) == tn
    assert t.elapsed < 1.0


# 3 -------------------------------------------------------------------------------


@pytest.mark.parametrize("triple,expected", [((2, 1, 2, 6), SEXTIC_1), ((3, 1, 2, 4), SEXTIC_2)])
def test_criterion_03_sextic_golden(triple, expected):
    form = make_form(43, *triple)
    prec = PrecisionContext(default_digits(43, form.a))
    with Timer() as t:
        f = normalized_sextic(form, prec, max_retries=0)
    assert list(f.coeffs) == expected
    assert f.digits == prec.digits
    assert f.residual_log10 < -60
    g = normalized_sextic(form, prec.doubled(), max_retries=0)
    assert g.coeffs == f.coeffs
    assert t.elapsed < 30


# 4 -------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "triple,J,D",
    [((2, 1, 2, 6), J_1, {2: 24, 3: 12, 5: 12}), ((3, 1, 2, 4), J_2, {2: 12, 3: 12, 5: 12, 7: 12})],
)
def test_criterion_04_igusa_golden(sextic_43, triple, J, D):
    f = sextic_43[triple]
    Jf = igusa(f)
    assert tuple(Jf) == J and Jf.is_integral()
    J2, J4, J6, J8, J10 = Jf
    assert 4 * J8 == J2 * J6 - J4 * J4
    assert J10 == sextic_disc(f).x / 4096 and sextic_disc(f).y == 0
    assert factor_rational(J10) == D


# 5 -------------------------------------------------------------------------------


def test_criterion_05_mestre_obstruction(sextic_43):
    M = mestre_matrix(igusa(sextic_43[(3, 1, 2, 4)]))
    assert M == M_2
    det, _ = det_mestre(M)
    assert det == -(2**64) * 3**38 * 5**34 * 7**28 * 19**4 * 29**2 * 37**2 * 43
    assert set(conic_obstruction(M).obstructed_places) == {43, INF}


def test_criterion_05_definability_cross_check(sextic_43):
    rep = field_of_moduli_report(igusa(sextic_43[(2, 1, 2, 6)]))
    assert definable_over_Q(make_form(43, 2, 1, 2, 6))
    assert rep.obstructed_places == ()
    for r in (1, -1):
        form = make_form(43, 3, r, 2, 4)
        rep = field_of_moduli_report(igusa(sextic_43[form.triple()]))
        assert not definable_over_Q(form)
        assert rep.obstructed_places


# 6 -------------------------------------------------------------------------------


def test_criterion_06_rational_model(sextic_43):
    assert weighted_equal(igusa(q_model_43()), igusa(sextic_43[(2, 1, 2, 6)]))


# 7 -------------------------------------------------------------------------------


def test_criterion_07_discriminant_identity():
    with Timer() as t:
        gz = gz_exponents(TernaryForm(GRAM_163), 163)
        D = scaled_disc(intro_fixture_163())
    assert gz == GZ_163
    assert D > 0 and factor_rational(D) == GZ_163
    assert t.elapsed < 5


# 8 -------------------------------------------------------------------------------


@pytest.fixture(scope="module")
def curves_163():
    t0 = time.perf_counter()
    out = {}
    for form in enumerate_reduced(163):
        if not is_principal(form):
            out[form] = normalized_sextic(form, PrecisionContext(default_digits(163, form.a)))
    return out, time.perf_counter() - t0


def test_criterion_08_pipeline_163(curves_163):
    curves, elapsed = curves_163
    assert len(curves) == 13
    assert elapsed < 600
    intro = igusa(intro_fixture_163())
    matches = []
    for form, f in curves.items():
        J = igusa(f)
        assert J.is_integral()
        assert J.J10 == scaled_disc(f)
        if weighted_equal(intro, J):
            matches.append(form.triple())
    assert matches


def test_criterion_08_obstruction_consistency_163(curves_163):
    curves, _ = curves_163
    for form, f in curves.items():
        rep = field_of_moduli_report(igusa(f))
        assert len(rep.obstructed_places) % 2 == 0
        assert bool(rep.obstructed_places) == (not definable_over_Q(form))


# 9 -------------------------------------------------------------------------------


def _scan_check(f, root="plus"):
    rows = maximal_scan(f, 43, 9999, p_min=167, which_root=root)
    assert rows and rows[0].p == 167
    for r in rows:
        if r.skipped:
            continue
        assert r.count + r.twist_count == 2 * r.p + 2
        assert abs(r.count - r.p - 1) <= weil_serre_bound(r.p)
        if r.p < 500:
            fbar = reduce_mod_P(f, r.p, root)
            assert naive_count(fbar) == r.count
            assert naive_count(twist(fbar)) == r.twist_count
    return [r.p for r in rows if not r.skipped and not r.is_maximal]


def test_criterion_09_scan_k_model(sextic_43):
    with Timer() as t:
        failures = _scan_check(sextic_43[(3, 1, 2, 4)])
    assert failures == []
    assert t.elapsed < 120


def test_criterion_09_scan_rational_model():
    with Timer() as t:
        failures = _scan_check(q_model_43())
    assert failures == [], f"not maximal at p = {failures}"
    assert t.elapsed < 120


# 10 ------------------------------------------------------------------------------


def test_criterion_10_hilbert_product_formula():
    rng = random.Random(10)
    for _ in range(1000):
        a = rng.choice([-1, 1]) * rng.randint(1, 10**8)
        b = rng.choice([-1, 1]) * rng.randint(1, 10**8)
        places = {2} | set(factor_rational(a)) | set(factor_rational(b))
        prod = hilbert_symbol(a, b, INF)
        for p in places:
            prod *= hilbert_symbol(a, b, p)
        assert prod == 1


@pytest.mark.parametrize("N", [43, 163])
def test_criterion_10_reduce_roundtrip(N):
    rng = random.Random(N)
    for f in enumerate_reduced(N):
        for _ in range(1000):
            assert reduce_form(apply_word(f, random_word(rng, 12))) == f


@pytest.mark.parametrize("N", [43, 163])
def test_criterion_10_degenerate_principal(N):
    prec = PrecisionContext(default_digits(N, 1))
    c = normalized_complex_sextic(principal_form(N), prec)
    assert abs(sextic_disc(c)) < prec.ctx.mpf(10) ** (-prec.digits / 2)


def test_criterion_10_weil_serre_containment(sextic_43):
    curves = [sextic_43[k] for k in sextic_43] + [q_model_43()]
    for f in curves:
        for r in maximal_scan(f, 43, 9999, p_min=11):
            if r.skipped:
                continue
            for n in (r.count, r.twist_count):
                assert abs(n - r.p - 1) <= weil_serre_bound(r.p)
