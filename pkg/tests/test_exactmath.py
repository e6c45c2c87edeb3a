from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

import oracles
from jkinv.exactmath import (BinaryForm, MultiPoly, UniPoly, binary_factor, binomial_shift, factor_uni,
                             format_rational, multi_gcd, to_rational, uni_gcd)

L = UniPoly.x()
small = st.integers(-6, 6)
polys = st.lists(small, min_size=0, max_size=5).map(UniPoly)


def x(n, i):
    return MultiPoly.variable(n, i)


def test_to_rational_accepts_strings_and_ints():
    assert to_rational("-3/6") == Fraction(-1, 2)
    assert to_rational(4) == 4
    assert format_rational(Fraction(3, -9)) == "-1/3"
    with pytest.raises((ValueError, TypeError)):
        to_rational(0.5)


def test_uni_gcd_shared_linear_factor():
    assert uni_gcd(L * L - 1, L - 1) == L - 1


def test_uni_gcd_with_zero_is_monic_input():
    p = UniPoly([2, 0, 4])
    assert uni_gcd(p, UniPoly()) == p.monic()


def test_uni_gcd_of_products():
    p = (L - 2) ** 2 * (L + 1)
    q = (L - 2) * (L - 5)
    assert uni_gcd(p, q) == L - 2


@given(polys, polys, polys)
def test_uni_gcd_against_sympy(a, b, c):
    p, q = a * c, b * c
    g = uni_gcd(p, q)
    lam = sp.Symbol("lam")
    ref = sp.gcd(sp.Poly(list(reversed([sp.Rational(v.numerator, v.denominator) for v in p.coeffs])) or [0], lam),
                 sp.Poly(list(reversed([sp.Rational(v.numerator, v.denominator) for v in q.coeffs])) or [0], lam))
    if ref.is_zero:
        assert g.is_zero()
    else:
        ref = ref.monic()
        assert [Fraction(str(t)) for t in reversed(ref.all_coeffs())] == list(g.coeffs)


@given(polys, polys)
def test_divmod_reconstructs(a, b):
    if b.is_zero():
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


def test_binary_factor_monomial():
    F = BinaryForm([0, 1, 0, 0])  # λμ²
    assert binary_factor(F) == [(BinaryForm([0, 1]), 1), (BinaryForm.mu(), 2)]


def test_binary_factor_perfect_square():
    F = BinaryForm.homogenize((L + 2) ** 2)
    assert binary_factor(F) == [(BinaryForm([2, 1]), 2)]


def test_binary_factor_irreducible_quadratic():
    F = BinaryForm.homogenize((L * L - 2) * (L - 1))
    facs = binary_factor(F)
    assert (BinaryForm([-2, 0, 1]), 1) in facs
    assert (BinaryForm([-1, 1]), 1) in facs
    assert len(facs) == 2


@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(1, 3)), min_size=1, max_size=3), st.integers(0, 2),
       st.integers(1, 5))
def test_binary_factor_product_reconstructs(roots, mu_power, scale):
    p = UniPoly.constant(scale)
    for r, e in roots:
        p = p * (L - r) ** e
    F = BinaryForm.homogenize(p, p.degree + mu_power)
    prod = BinaryForm([1])
    for f, e in binary_factor(F):
        prod = prod * f ** e
    assert prod.proportional(F)
    assert sum(e for f, e in binary_factor(F) if f == BinaryForm.mu()) == mu_power


def test_factor_uni_multiplicities():
    facs = dict((f, e) for f, e in factor_uni((L - 1) ** 3 * (L * L + 1)))
    assert facs == {L - 1: 3, L * L + 1: 1}


@given(small, small, st.integers(-6, 6), st.integers(1, 6))
def test_substitute_is_composition(c0, c1, lam, mu):
    F = BinaryForm([c0, c1, 1])
    G = F.substitute(2, 1, 1, -1)
    assert G(lam, mu) == F(2 * lam + mu, lam - mu)


def test_multi_gcd_monomials():
    n = 3
    assert multi_gcd([x(n, 0) * x(n, 1), x(n, 0) * x(n, 2)]) == x(n, 0)


def test_multi_gcd_identity_is_primitive():
    p = x(2, 0) * 4 + x(2, 1) * 6
    assert multi_gcd([p, p]) == x(2, 0) * 2 + x(2, 1) * 3


def test_multi_gcd_divides_both_ways():
    n = 3
    x1, x2, x3 = (x(n, i) for i in range(3))
    p = x3 ** 2 * (x1 + x2)
    q = x3 * (x1 ** 2 - x2 ** 2)
    g = multi_gcd([p, q])
    assert g == x3 * (x1 + x2)
    assert g.divides(p) and g.divides(q)
    # the cofactors are coprime
    assert multi_gcd([p.exact_div(g), q.exact_div(g)]).is_constant()


def test_multi_gcd_rejects_all_zero():
    with pytest.raises(ValueError):
        multi_gcd([MultiPoly.zero(2)])


mono_terms = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-5, 5), max_size=4)


@given(mono_terms, mono_terms)
def test_multipoly_ring_laws(a, b):
    p, q = MultiPoly(2, a), MultiPoly(2, b)
    pt = (Fraction(3), Fraction(-2, 5))
    assert (p * q)(pt) == p(pt) * q(pt)
    assert (p + q)(pt) == p(pt) + q(pt)
    assert (p - p).is_zero()
    if not q.is_zero():
        assert (p * q).exact_div(q) == p


@given(mono_terms)
def test_gradient_matches_sympy(a):
    p = MultiPoly(2, a)
    xs = sp.symbols("y0:2")
    expr = oracles.poly_to_sympy(p, xs)
    for i, g in enumerate(p.gradient()):
        assert sp.expand(oracles.poly_to_sympy(g, xs) - sp.diff(expr, xs[i])) == 0


@given(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.tuples(small, small))
def test_binomial_shift_sums_to_shifted_monomial(exp, a):
    a = tuple(Fraction(v) for v in a)
    parts = binomial_shift(exp, a)
    lam, y = Fraction(2, 3), (Fraction(5), Fraction(-1, 2))
    total = sum(lam ** j * sum(c * y[0] ** e[0] * y[1] ** e[1] for e, c in terms.items())
                for j, terms in parts.items())
    assert total == (a[0] + lam * y[0]) ** exp[0] * (a[1] + lam * y[1]) ** exp[1]


def test_multipoly_json_round_trip():
    p = x(3, 0) ** 2 * Fraction(-1, 3) + x(3, 2)
    assert MultiPoly.from_json(p.to_json(), 3) == p
