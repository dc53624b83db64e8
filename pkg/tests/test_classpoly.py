from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from maassclass.classpoly import (
    ImaginaryResidueTooLarge,
    NoCloseRational,
    RecognitionError,
    RationalPolynomial,
    RecognitionSettings,
    assemble_full,
    build_hhat,
    class_polynomial,
    convergents,
    direct_class_polynomial,
    epsilon_mod12,
    hilbert_class_poly,
    multiply_roots,
    nearest_rational,
    recognize_rational,
)
from maassclass.evaluator import EvalConfig, raise_value
from maassclass.formexpr import expand
from maassclass.quadforms import QuadForm, cm_point, fundamental_discriminants

CFG = EvalConfig()
F = expand("E10/Delta", 128)

H1_DISCS = [-3, -4, -7, -8, -11, -19, -43, -67, -163]
H1_J = {-3: 0, -4: 1728, -7: -3375, -8: 8000, -11: -32768, -19: -884736, -43: -884736000,
        -67: -147197952000, -163: -262537412640768000}


def test_minus_15_polynomial():
    p = class_polynomial(-15, F, 1)
    assert p.coeffs == (9890505, -176625, 1)
    assert str(p) == "x^2 - 176625*x + 9890505"
    assert p.is_integral


def test_minus_15_roots_are_the_raised_cm_values():
    with mpmath.workprec(192):
        roots = [raise_value(F, 1, cm_point(q, 192).tau).value for q in (QuadForm(1, 1, 4), QuadForm(2, 1, 2))]
        assert all(abs(r.imag) < 1e-30 for r in roots)
        assert abs(roots[0].real - mpmath.mpf("176568.98")) < 0.01
        assert abs(roots[1].real - mpmath.mpf("56.0149")) < 0.001


def test_sign_flipped_form_gives_reflected_polynomial():
    # -F has roots -P_F, so the polynomial becomes (-1)^h Hhat(-x)
    negF = expand("-E10/Delta", 128)
    p = class_polynomial(-15, negF, 1)
    assert p.coeffs == (9890505, 176625, 1)
    assert p == class_polynomial(-15, F, 1).scale_variable(-1)


def test_stable_under_doubling():
    base = class_polynomial(-23, F, 1)
    assert class_polynomial(-23, F, 1, CFG.with_(precision=384)) == base
    F256 = expand("E10/Delta", 256)
    assert class_polynomial(-23, F256, 1, CFG.with_(trunc_order=256)) == base


def test_threads_do_not_change_result():
    assert class_polynomial(-47, F, 1, threads=4) == class_polynomial(-47, F, 1)


def test_hilbert_h1():
    for D in H1_DISCS:
        p = hilbert_class_poly(D)
        assert p.degree == 1 and p.coeffs == (-H1_J[D], 1)


def test_hilbert_minus_23():
    p = hilbert_class_poly(-23)
    assert p.coeffs == (12771880859375, -5151296875, 3491750, 1)


def test_assemble_full_matches_direct_product():
    for D in (-12, -16, -27, -28, -60):
        assert assemble_full(D, F, 1) == direct_class_polynomial(D, F, 1)


def test_assemble_full_with_alternative_sign_rule():
    full = assemble_full(-60, F, 1, epsilon=epsilon_mod12)
    prim = class_polynomial(-60, F, 1)
    sub = class_polynomial(-15, F, 1)
    # a = 2 is not +-1 mod 12, so the -15 factor enters as Hhat(-x)
    assert full == prim * sub.scale_variable(-1).scale((-1) ** 2)
    with pytest.raises(ValueError):
        assemble_full(-60, F, 1, epsilon={1: 1, 2: 0})


def test_negative_control_low_precision():
    # 64 bits cannot meet a 1e-20 tolerance on coefficients near 1e7
    with pytest.raises(RecognitionError):
        class_polynomial(-15, F, 1, EvalConfig(precision=64), auto_precision=False)


def test_negative_control_short_series():
    F3 = expand("E10/Delta", 3)
    with pytest.raises(RecognitionError):
        class_polynomial(-15, F3, 1, CFG.with_(trunc_order=3))


def test_imaginary_residue_detected():
    p = multiply_roots([mpmath.mpc(1, 1e-5), mpmath.mpc(2, 0)])
    with pytest.raises(ImaginaryResidueTooLarge) as err:
        recognize_rational(p)
    assert err.value.index in (0, 1)


def test_multiply_roots_and_recognition():
    with mpmath.workprec(192):
        p = multiply_roots([mpmath.mpf(1) / 3, mpmath.mpc(-2), mpmath.mpf(5) / 7])
    r = recognize_rational(p)
    assert r.coeffs == (Fraction(10, 21), Fraction(-13, 7), Fraction(20, 21), 1)
    assert r.report is not None and r.report.precision == 192
    assert not r.is_integral


@given(st.fractions(max_denominator=10**6).filter(lambda x: abs(x) < 10**9))
def test_nearest_rational_recovers_fractions(x):
    with mpmath.workprec(192):
        v = mpmath.mpf(x.numerator) / x.denominator
        got, dist = nearest_rational(v, 1e-20, 10**12)
    assert got == x


def test_no_close_rational():
    with mpmath.workprec(192):
        p = multiply_roots([mpmath.pi])
    with pytest.raises(NoCloseRational) as err:
        recognize_rational(p, RecognitionSettings(denom_bound=1000))
    assert err.value.index == 0


def test_convergents_terminate_on_rationals():
    assert list(convergents(Fraction(415, 93)))[-1] == Fraction(415, 93)
    assert list(convergents(Fraction(3)))[-1] == 3


def test_rational_polynomial_arithmetic():
    p = RationalPolynomial((Fraction(-1), 0, 1))
    q = RationalPolynomial((Fraction(1), 1))
    quo, rem = p.divmod(q)
    assert quo.coeffs == (-1, 1) and rem.is_zero
    assert (q * q).coeffs == (1, 2, 1)
    assert str(RationalPolynomial((Fraction(1, 2), Fraction(-3), 1))) == "x^2 - 3*x + 1/2"
    assert str(RationalPolynomial((0, 1))) == "x"
    assert p(3) == 8


def test_real_coefficients_for_many_discriminants():
    for D in fundamental_discriminants(-60, -20):
        p = build_hhat(D, F, 1)
        assert max(abs(c.imag) for c in p.coeffs) < 1e-20
