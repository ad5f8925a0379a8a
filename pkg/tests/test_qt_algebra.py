import math
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtpaths.errors import DivisionByZero, NotPolynomial
from qtpaths.qt import (
    ONE,
    Q,
    T,
    ZERO,
    QTPoly,
    QTRational,
    exact_poly_quotient,
    q_analogue,
    q_binomial,
    q_factorial,
    q_pochhammer,
    qt_gcd,
)


def brute_q_binomial(n, k):
    """Independent oracle: inversion generating function of 0/1 words.

    Sum of q^(number of 10-inversions) over binary words with k ones,
    which is the classical combinatorial model for the Gaussian binomial.
    """
    if k < 0 or k > n:
        return ZERO
    out = ZERO
    for ones in combinations(range(n), k):
        inv = sum(pos - i for i, pos in enumerate(sorted(ones)))
        out = out + QTPoly.monomial(inv, 0)
    return out


def test_q_analogue_examples():
    assert q_analogue(0) == ZERO
    assert q_analogue(1) == ONE
    assert q_analogue(3) == ONE + Q + Q**2


def test_q_binomial_examples():
    assert q_binomial(5, 0) == ONE
    assert q_binomial(2, 1) == ONE + Q
    # (4 choose 2)_q expanded by the brute-force inversion oracle
    expected = ONE + Q + 2 * Q**2 + Q**3 + Q**4
    assert brute_q_binomial(4, 2) == expected
    assert q_binomial(4, 2) == expected


def test_q_binomial_out_of_range_is_zero():
    assert q_binomial(3, -1) == ZERO
    assert q_binomial(3, 4) == ZERO


@pytest.mark.parametrize("n", range(9))
def test_q_binomial_against_oracle(n):
    for k in range(n + 1):
        assert q_binomial(n, k) == brute_q_binomial(n, k)


def test_q_binomial_symmetry_and_pascal():
    for n in range(13):
        for k in range(n + 1):
            assert q_binomial(n, k) == q_binomial(n, n - k)
            if n >= 1:
                rec = q_binomial(n - 1, k - 1) + QTPoly.monomial(k, 0) * q_binomial(n - 1, k)
                assert q_binomial(n, k) == rec


def test_q_binomial_specializes_to_binomial():
    for n in range(13):
        for k in range(n + 1):
            v = q_binomial(n, k).specialize(q=1)
            assert v == QTPoly.constant(math.comb(n, k))


def test_q_pochhammer_ratio():
    for x in (Q, Q**2, T):
        for n in range(1, 9):
            num = q_pochhammer(x, n)
            den = q_pochhammer(x, n - 1)
            assert num.exact_divide(den) == ONE - x * QTPoly.monomial(n - 1, 0)


def test_q_factorial():
    assert q_factorial(0) == ONE
    assert q_factorial(3) == q_analogue(1) * q_analogue(2) * q_analogue(3)


def test_exact_poly_quotient_examples():
    assert exact_poly_quotient(ONE - Q**2, ONE - Q) == ONE + Q
    inv = QTRational(ONE, ONE - Q)
    assert inv * QTRational(ONE - Q) == QTRational(ONE)
    # an input divisible by [6]_q/[3]_q certifies polynomial under the [3]/[6] ratio
    block = q_analogue(6).exact_divide(q_analogue(3))
    f = block * q_binomial(4, 2)
    certified = exact_poly_quotient(QTRational(f) * QTRational(q_analogue(3)),
                                    QTRational(q_analogue(6)))
    assert certified == q_binomial(4, 2)


def test_exact_poly_quotient_rejects_non_polynomial():
    with pytest.raises(NotPolynomial):
        exact_poly_quotient(ONE, ONE - Q)
    with pytest.raises(NotPolynomial):
        (ONE + T).exact_divide(ONE - Q)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        QTRational(ONE, ZERO)
    with pytest.raises(DivisionByZero):
        QTRational(ONE) / QTRational(ZERO)


def test_rational_canonical_form_is_idempotent():
    r = QTRational((ONE - Q**2) * (ONE - T), (ONE - Q) * Q * 4)
    again = QTRational(r.num, r.den)
    assert again.num == r.num and again.den == r.den
    # canonical denominators are integer-primitive with positive leading coeff
    assert all(c.denominator == 1 for c in r.den.terms.values())


def test_rational_equality_across_representations():
    a = QTRational(ONE - Q**2, (ONE - Q) * (ONE - T))
    b = QTRational(ONE + Q, ONE - T)
    assert a == b
    assert hash(a) == hash(b)


def test_gcd_basic():
    a = (ONE - Q) * (ONE - T) ** 2
    b = (ONE - T) * (ONE + Q)
    g = qt_gcd(a, b)
    assert g == ONE - T or g == (ONE - T).scale(-1)
    assert a.exact_divide(g) * g == a
    assert qt_gcd(ZERO, b) in (b, b.scale(-1))


def _polys(max_terms=4, max_exp=3):
    coeff = st.fractions(min_value=-3, max_value=3, max_denominator=2)
    term = st.tuples(st.integers(0, max_exp), st.integers(0, max_exp))
    return st.dictionaries(term, coeff, max_size=max_terms).map(QTPoly)


@settings(max_examples=60, deadline=None)
@given(_polys(), _polys(), _polys())
def test_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a - a == ZERO


@settings(max_examples=40, deadline=None)
@given(_polys(), _polys())
def test_gcd_divides_both(a, b):
    g = qt_gcd(a, b)
    if g.is_zero:
        assert a.is_zero and b.is_zero
    else:
        assert a.exact_divide(g) * g == a
        assert b.exact_divide(g) * g == b


@settings(max_examples=30, deadline=None)
@given(_polys(), _polys(), _polys())
def test_rational_field_laws(a, b, d):
    if d.is_zero:
        return
    x = QTRational(a, d)
    y = QTRational(b, d)
    assert x + y == QTRational(a + b, d)
    assert x * y == QTRational(a * b, d * d)
    if not b.is_zero:
        assert (x / y) * y == x


def test_text_rendering_and_parsing():
    p = ONE + Q + (Q * T**2).scale(2)
    assert str(p) == "1 + q + 2*q*t^2"
    assert QTPoly.parse(str(p)) == p
    m = QTPoly.monomial(0, 1, Fraction(-1, 2)) + Q**3
    assert QTPoly.parse(str(m)) == m
    assert str(ZERO) == "0"
    assert QTPoly.parse("0") == ZERO


def test_power_substitute():
    p = ONE + Q * T
    assert p.power_substitute(3) == ONE + Q**3 * T**3
    r = QTRational(ONE, (ONE - Q) * (ONE - T))
    assert r.power_substitute(2) == QTRational(ONE, (ONE - Q**2) * (ONE - T**2))
