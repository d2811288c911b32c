from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cancelkit.errors import PolynomialError
from cancelkit.numberfield import QQ, nf_create
from cancelkit.polyring import (FormKind, LaurentPolynomial, Polynomial, cheb_expand, chebyshev, compose, decompose,
                                extract_linear_times, extract_outer, form_check, laurent_substitute, power_map)
from tests import oracles

x = Polynomial.x()
SQRT2 = nf_create([-2, 0, 1])


def fracs(p: Polynomial):
    return [c.to_fraction() for c in p.coeffs]


small_q = st.fractions(min_value=-9, max_value=9, max_denominator=5)


def polys(min_deg=0, max_deg=12):
    return st.lists(small_q, min_size=min_deg + 1, max_size=max_deg + 1).map(lambda cs: Polynomial(QQ, cs))


def nonconstant(max_deg=4):
    return st.lists(small_q, min_size=2, max_size=max_deg + 1).filter(lambda cs: cs[-1] != 0) \
        .map(lambda cs: Polynomial(QQ, cs))


# -- composition and named maps -------------------------------------------------------

def test_compose_examples():
    assert compose(x ** 2, x + 1) == x ** 2 + 2 * x + 1
    assert compose(chebyshev(2), chebyshev(3)) == x ** 6 - 6 * x ** 4 + 9 * x ** 2 - 2
    f = 3 * x ** 4 - x + Fraction(1, 2)
    assert compose(f, x) == f


def test_compose_field_mismatch():
    with pytest.raises(PolynomialError) as err:
        compose(x, Polynomial.x(SQRT2))
    assert err.value.code == "FIELD_MISMATCH"


@settings(max_examples=100, deadline=None)
@given(polys(max_deg=5), polys(max_deg=4))
def test_compose_matches_oracle(f, g):
    assert fracs(compose(f, g)) == oracles.pcompose(fracs(f), fracs(g))


def test_named_maps():
    assert chebyshev(1) == x
    assert chebyshev(3) == x ** 3 - 3 * x
    assert chebyshev(4) == x ** 4 - 4 * x ** 2 + 2
    assert power_map(5) == x ** 5


@pytest.mark.parametrize("r", range(1, 16))
def test_chebyshev_matches_recurrence(r):
    assert fracs(chebyshev(r)) == oracles.cheb_recurrence(r)


@pytest.mark.parametrize("m", range(1, 9))
@pytest.mark.parametrize("n", range(1, 9))
def test_nesting(m, n):
    assert compose(chebyshev(m), chebyshev(n)) == chebyshev(m * n)
    assert compose(power_map(m), power_map(n)) == power_map(m * n)


@pytest.mark.parametrize("r", range(1, 11))
def test_semiconjugacy(r):
    pi = LaurentPolynomial.pi()
    assert laurent_substitute(chebyshev(r), pi) == LaurentPolynomial(QQ, {r: 1, -r: 1})


def test_laurent_examples():
    pi = LaurentPolynomial.pi()
    assert laurent_substitute(chebyshev(2), pi) == LaurentPolynomial(QQ, {2: 1, -2: 1})
    assert laurent_substitute(x, pi) == pi
    assert chebyshev(3)(pi) == LaurentPolynomial(QQ, {3: 1, -3: 1})


@settings(max_examples=100, deadline=None)
@given(polys(max_deg=8))
def test_laurent_substitution_matches_binomial_oracle(f):
    got = laurent_substitute(f, LaurentPolynomial.pi())
    assert {k: c.to_fraction() for k, c in got.terms.items()} == oracles.laurent_pi_power_sub(fracs(f))


# -- Chebyshev basis -------------------------------------------------------------------

def test_cheb_expand_examples():
    e = cheb_expand(x ** 2)
    assert e.a0 == 2 and e.a == {2: 1}
    e = cheb_expand(x ** 3)
    assert e.a0 == 0 and e.a == {1: 3, 3: 1}
    e = cheb_expand(Polynomial(QQ, [5]))
    assert e.a0 == 5 and e.a == {}


@settings(max_examples=500, deadline=None)
@given(polys(max_deg=12))
def test_cheb_expand_round_trip(f):
    e = cheb_expand(f)
    assert e.reconstruct(QQ) == f
    if f.degree >= 1:
        assert max(e.a) == f.degree
    a0, a = oracles.cheb_by_elimination(fracs(f))
    assert e.a0 == a0
    assert {i: c.to_fraction() for i, c in e.a.items()} == a


def test_cheb_expand_over_number_field():
    t = SQRT2.gen()
    f = Polynomial(SQRT2, [1, t, 3, Fraction(1, 2) * t])
    assert cheb_expand(f).reconstruct(SQRT2) == f


# -- support forms and outer factors -----------------------------------------------------

def test_form_check_examples():
    assert form_check(x ** 6 + 2 * x ** 3 - 1, 3, FormKind.POWER_INNER)
    assert form_check(x ** 3 - 2 * x, 2, FormKind.LINEAR_TIMES)
    assert form_check(chebyshev(6), 3, FormKind.CHEB_INNER)
    assert not form_check(chebyshev(6) + x, 3, FormKind.CHEB_INNER)


def test_form_check_rejects_small_d():
    with pytest.raises(PolynomialError):
        form_check(x ** 2, 1, FormKind.POWER_INNER)


def test_extract_outer_examples():
    assert extract_outer(x ** 6 + 2 * x ** 3, 3, FormKind.POWER_INNER) == x ** 2 + 2 * x
    assert extract_outer(chebyshev(6), 3, FormKind.CHEB_INNER) == x ** 2 - 2
    assert extract_outer(x ** 2, 2, FormKind.CHEB_INNER) == x + 2


def test_extract_outer_form_violation():
    with pytest.raises(PolynomialError) as err:
        extract_outer(x ** 3, 2, FormKind.POWER_INNER)
    assert err.value.code == "FORM_VIOLATION"


def test_extract_linear_times():
    assert extract_linear_times(x ** 3 - 2 * x, 2) == x - 2


@settings(max_examples=100, deadline=None)
@given(polys(max_deg=4), st.integers(2, 4))
def test_extract_outer_recomposes(P, d):
    f = compose(P, chebyshev(d))
    assert compose(extract_outer(f, d, FormKind.CHEB_INNER), chebyshev(d)) == f
    g = compose(P, power_map(d))
    assert compose(extract_outer(g, d, FormKind.POWER_INNER), power_map(d)) == g


@settings(max_examples=100, deadline=None)
@given(polys(max_deg=8), st.integers(2, 5), st.fractions(min_value=-5, max_value=5, max_denominator=5)
       .filter(lambda u: u != 0))
def test_scaling_preserves_support_residues(f, d, u):
    residues = {k % d for k in f.support()}
    assert {k % d for k in f.scale(u).support()} == residues


# -- decomposition ------------------------------------------------------------------------

def _compose_all(factors):
    out = factors[-1]
    for g in reversed(factors[:-1]):
        out = compose(g, out)
    return out


def test_decompose_examples():
    parts = decompose(x ** 6)
    assert _compose_all(parts) == x ** 6 and len(parts) == 2
    assert sorted(p.degree for p in parts) == [2, 3]
    assert decompose(x ** 4 + 2 * x ** 2) == [x ** 2 + 2 * x, x ** 2]
    assert decompose(x ** 3 - 2 * x) == [x ** 3 - 2 * x]


def test_decompose_chebyshev_twelve():
    parts = decompose(chebyshev(12))
    assert sorted(p.degree for p in parts) == [2, 2, 3]
    assert _compose_all(parts) == chebyshev(12)


@settings(max_examples=60, deadline=None)
@given(st.lists(nonconstant(3).filter(lambda p: p.degree >= 2), min_size=1, max_size=3))
def test_decompose_recomposes(factors):
    f = _compose_all(factors)
    parts = decompose(f)
    assert _compose_all(parts) == f
    assert all(p.degree >= 2 for p in parts)
    for p in parts:
        assert decompose(p) == [p]
    assert len(parts) >= 1


@settings(max_examples=100, deadline=None)
@given(polys(max_deg=6), polys(max_deg=6))
def test_oddness_closure(f, g):
    odd = lambda p: Polynomial(QQ, [c if k % 2 else 0 for k, c in enumerate(p.coeffs)])
    h = compose(odd(f), odd(g))
    assert all(k % 2 == 1 for k in h.support())


def test_printing_examples():
    assert str(x ** 3 - 2 * x) == "x^3 - 2*x"
    assert str(Polynomial(QQ, [0, 0, 0, 0, 0, Fraction(1, 81)])) == "1/81*x^5"
    assert str(Polynomial(QQ, [])) == "0"


@settings(max_examples=100, deadline=None)
@given(polys(min_deg=8, max_deg=40), polys(min_deg=8, max_deg=40))
def test_long_products_match_oracle(f, g):
    # long operands take the packed-integer route
    assert fracs(f * g) == oracles.pmul(fracs(f), fracs(g))


def test_long_products_with_large_coefficients():
    f = Polynomial(QQ, [Fraction((-7) ** k, k + 1) for k in range(60)])
    g = Polynomial(QQ, [Fraction(3 ** (2 * k) * (-1) ** k, 5 ** (k % 4)) for k in range(45)])
    assert fracs(f * g) == oracles.pmul(fracs(f), fracs(g))
