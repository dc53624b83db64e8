from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from maassclass.qseries import (
    QSeries,
    SeriesError,
    add,
    bernoulli,
    delta,
    eisenstein,
    invert,
    j_function,
    multiply,
    power,
    principal_part,
)

N = 40


def test_eisenstein_first_coefficients():
    assert eisenstein(4, N)[1] == 240
    assert eisenstein(2, N)[1] == -24
    assert eisenstein(6, N)[0] == 1
    assert eisenstein(6, N)[1] == -504
    assert eisenstein(10, N)[1] == -264


def test_eisenstein_rejects_bad_weight():
    for k in (0, 3, -2, 1):
        with pytest.raises(ValueError):
            eisenstein(k, N)


def test_bernoulli_values():
    assert [bernoulli(n) for n in range(0, 11, 2)] == [1, Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30), Fraction(5, 66)]
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(7) == 0


def test_delta_coefficients():
    d = delta(N)
    assert d.valuation == 1 and d.weight == 12
    assert d[1] == 1
    assert d[2] == -24
    # Ramanujan tau values
    assert [d[n] for n in range(1, 8)] == [1, -24, 252, -1472, 4830, -6048, -16744]


def test_delta_from_eisenstein():
    lhs = delta(N)
    rhs = (power(eisenstein(4, N), 3) - power(eisenstein(6, N), 2)).scale(Fraction(1, 1728))
    assert all(lhs[n] == rhs[n] for n in range(0, N + 1))


def test_j_function():
    j = j_function(N)
    assert (j[-1], j[0], j[1]) == (1, 744, 196884)
    assert j.valuation == -1 and j.weight == 0 and j.trunc_order == N


@pytest.mark.parametrize("n", [5, 17, 40])
def test_j_identity_and_delta_inverse(n):
    j = j_function(n)
    direct = multiply(power(eisenstein(4, n + 2), 3), invert(delta(n + 2)))
    assert all(j[i] == direct[i] for i in range(-1, n + 1))
    one = multiply(delta(n), invert(delta(n)))
    assert one.valuation == 0 and one[0] == 1
    assert all(one[i] == 0 for i in range(1, one.trunc_order + 1))


def test_arithmetic_examples():
    assert power(eisenstein(4, N), 0)[0] == 1
    e4e6 = multiply(eisenstein(4, N), eisenstein(6, N))
    assert e4e6[1] == -264
    assert e4e6.weight == 10


def test_truncation_bookkeeping():
    f = delta(10)  # valuation 1, known to q^10
    g = invert(f)  # valuation -1
    assert g.trunc_order == 10 - 2 * 1
    assert multiply(f, eisenstein(4, 5)).trunc_order == 6
    assert add(eisenstein(4, 7), eisenstein(4, 9)).trunc_order == 7
    with pytest.raises(IndexError):
        eisenstein(4, 7)[8]


def test_errors():
    with pytest.raises(ZeroDivisionError):
        invert(QSeries.constant(0, 5))
    with pytest.raises(SeriesError):
        add(eisenstein(4, 5), eisenstein(6, 5))
    with pytest.raises(SeriesError):
        principal_part(eisenstein(4, 5))


def test_ramanujan_derivative_identity():
    # D(E4) = (E2 E4 - E6) / 3
    e2, e4, e6 = eisenstein(2, N), eisenstein(4, N), eisenstein(6, N)
    rhs = multiply(e2, e4)
    rhs = QSeries.from_coeffs(rhs.valuation, rhs.coeffs, rhs.trunc_order, 6)
    rhs = (rhs - e6).scale(Fraction(1, 3))
    assert all(n * e4[n] == rhs[n] for n in range(N + 1))


def test_principal_parts():
    from maassclass.formexpr import expand

    assert principal_part(expand("E10/Delta", 10)) == (1, [1])
    assert principal_part(j_function(10)) == (1, [1])
    m, a = principal_part(expand("E4^3/Delta^2", 10))
    m2, a2 = principal_part(expand("E4^3/Delta^2", 30))
    assert (m, a) == (m2, a2) == (2, [768, 1])


series = st.builds(
    lambda v, cs: QSeries.from_coeffs(v, cs, v + len(cs) - 1),
    st.integers(-3, 3),
    st.lists(st.integers(-20, 20).map(Fraction), min_size=1, max_size=8),
)


@given(series, series, series)
def test_ring_axioms_up_to_truncation(f, g, h):
    lhs = multiply(multiply(f, g), h)
    rhs = multiply(f, multiply(g, h))
    n = min(lhs.trunc_order, rhs.trunc_order)
    assert all(lhs[i] == rhs[i] for i in range(-12, n + 1))
    s = add(g, h)
    left = multiply(f, s)
    right = add(multiply(f, g), multiply(f, h))
    n = min(left.trunc_order, right.trunc_order)
    assert all(left[i] == right[i] for i in range(-12, n + 1))
    fg, gf = multiply(f, g), multiply(g, f)
    assert fg == gf


@given(series)
def test_inverse_is_inverse(f):
    if f.is_zero:
        return
    one = multiply(f, invert(f))
    assert one[0] == 1
    assert all(one[i] == 0 for i in range(1, one.trunc_order + 1))
