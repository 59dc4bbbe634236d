import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from weilcalc.poly import Poly, Scalar, as_scalar
from weilcalc.sampling import random_poly

from conftest import from_sympy, to_sympy, xs


def polys(nvars):
    mono = st.tuples(*[st.integers(0, 3)] * nvars)
    coeff = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9))
    return st.dictionaries(mono, coeff, max_size=6).map(lambda d: Poly(nvars, d))


@given(polys(2), polys(2), polys(2))
def test_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == Poly.zero(2)
    assert a * Poly.constant(2, 1) == a


@settings(max_examples=50)
@given(polys(3), polys(3))
def test_product_matches_sympy(a, b):
    x = xs(3)
    assert a * b == from_sympy(to_sympy(a, x) * to_sympy(b, x), x)


def test_derivative_and_compose_match_sympy():
    rng = random.Random(3)
    x = xs(2)
    for _ in range(20):
        p, q, r = (random_poly(rng, 2) for _ in range(3))
        assert p.diff(1) == from_sympy(sp.diff(to_sympy(p, x), x[1]), x)
        composed = to_sympy(p, x).subs({x[0]: to_sympy(q, x), x[1]: to_sympy(r, x)}, simultaneous=True)
        assert p.compose([q, r]) == from_sympy(composed, x)


def test_evaluate_at_rationals():
    p = Poly(2, {(2, 0): 1, (0, 1): Fraction(-3, 2)})
    assert p.evaluate([Scalar(2), Scalar(4)]) == -2


def test_scalars_are_exact():
    assert as_scalar("3/6") == Fraction(1, 2)
    assert as_scalar(Fraction(2, 4)).denominator == 2
    with pytest.raises(TypeError):
        as_scalar(0.5)


def test_terms_drop_zero_coefficients():
    p = Poly(1, {(1,): 1}) - Poly(1, {(1,): 1})
    assert p.is_zero()
    assert p.terms == {}
    assert p.total_degree() == -1


def test_monomial_arity_checked():
    with pytest.raises(ValueError):
        Poly(2, {(1,): 1})


def test_hash_consistent_with_equality():
    a = Poly(2, {(1, 0): 1, (0, 1): 2})
    b = Poly.var(2, 0) + Poly.var(2, 1) * 2
    assert a == b and hash(a) == hash(b)
