import itertools
import random

import pytest

from weilcalc.errors import AlgebraMismatch, NonNilpotentVariable, VariableCountMismatch, ZeroDegreeGenerator
from weilcalc.poly import Poly
from weilcalc.sampling import random_element
from weilcalc.weil import (
    WeilAlgebra,
    augment,
    make_algebra,
    normal_form,
    ring_op,
    standard_catalog,
    tensor,
    truncated,
    verify_ring_axioms,
)

from conftest import brute_force_basis

W_D = truncated(1, 1)
W_D2 = truncated(1, 2)
W_Dm2 = truncated(2, 1)
W_Dsq = tensor(W_D, W_D)


def test_dual_numbers_and_second_order():
    assert list(make_algebra(1, [(2,)]).basis) == [(0,), (1,)]
    A = make_algebra(1, [(3,)])
    assert list(A.basis) == [(0,), (1,), (2,)] and A.dim == 3


def test_first_order_in_two_variables():
    A = make_algebra(2, [(2, 0), (1, 1), (0, 2)])
    assert list(A.basis) == [(0, 0), (1, 0), (0, 1)]
    assert A == W_Dm2


def test_basis_is_graded_lex():
    A = make_algebra(2, [(3, 0), (0, 3)])
    assert list(A.basis[:6]) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert [sum(m) for m in A.basis] == sorted(sum(m) for m in A.basis)


@pytest.mark.parametrize("name", sorted(standard_catalog()))
def test_basis_matches_brute_force(name):
    A = standard_catalog()[name]
    assert sorted(A.basis) == sorted(brute_force_basis(A.num_vars, list(A.ideal_gens)))
    assert A.basis[0] == (0,) * A.num_vars


def test_construction_errors():
    with pytest.raises(NonNilpotentVariable):
        make_algebra(2, [(2, 0), (1, 1)])
    with pytest.raises(ZeroDegreeGenerator):
        make_algebra(1, [(0,), (2,)])


def test_normal_form_examples():
    x = Poly.var(1, 0)
    assert normal_form(x ** 4, W_D2).is_zero()
    x1, x2 = Poly.var(2, 0), Poly.var(2, 1)
    assert normal_form((x1 + x2) ** 2, W_Dm2).is_zero()
    assert normal_form((x1 + x2) ** 2, W_Dsq) == W_Dsq.element({(1, 1): 2})
    with pytest.raises(VariableCountMismatch):
        normal_form(x, W_Dsq)


def test_ring_op_examples():
    a, b, c, d = 2, 3, 5, 7
    X = W_D.gen(0)
    lhs = ring_op("mul", W_D.scalar(a) + X * b, W_D.scalar(c) + X * d)
    assert lhs == W_D.scalar(a * c) + X * (a * d + b * c)
    assert ring_op("mul", W_Dm2.gen(0), W_Dm2.gen(1)).is_zero()
    one_x = W_D2.one() + W_D2.gen(0)
    assert one_x ** 2 == W_D2.element({(0,): 1, (1,): 2, (2,): 1})
    assert ring_op("neg", X) == X * -1
    assert ring_op("scale", X, 4) == X + X + X + X


def test_mixed_algebras_rejected():
    with pytest.raises(AlgebraMismatch):
        W_D.gen(0) * W_D2.gen(0)
    with pytest.raises(AlgebraMismatch):
        ring_op("add", W_D.one(), W_Dsq.one())


def test_augment():
    assert augment(W_D.scalar(1) + W_D.gen(0) * 3) == 1
    x1, x2 = W_Dsq.gens()
    assert augment(W_Dsq.scalar(5) + x1 + x1 * x2) == 5
    assert augment(W_D.zero()) == 0


def test_tensor_examples():
    assert W_Dsq.num_vars == 2 and set(W_Dsq.ideal_gens) == {(2, 0), (0, 2)} and W_Dsq.dim == 4
    assert tensor(WeilAlgebra(0, ()), W_D) == W_D
    assert tensor(W_Dm2, W_D).dim == 6


def test_tensor_dims_multiply_over_catalog():
    cat = standard_catalog(max_dim=8)
    for A, B in itertools.product(cat.values(), repeat=2):
        T = tensor(A, B)
        assert T.dim == A.dim * B.dim
        assert len(brute_force_basis(T.num_vars, list(T.ideal_gens))) == A.dim * B.dim


def test_multiplication_against_polynomial_reduction():
    # multiply as polynomials and delete ideal monomials, by hand
    rng = random.Random(1)
    A = standard_catalog()["W_mixed"]
    for _ in range(50):
        a, b = random_element(rng, A), random_element(rng, A)
        prod = a.to_poly() * b.to_poly()
        kept = {m: c for m, c in prod.terms.items()
                if not any(all(x >= y for x, y in zip(m, g)) for g in A.ideal_gens)}
        assert (a * b).coeffs == {m: c for m, c in kept.items() if c}


def test_elements_compare_by_coefficients():
    assert W_D.element({(1,): 2}) == W_D.gen(0) * 2
    assert W_D.element({(1,): 2}) != W_D2.element({(1,): 2})


@pytest.mark.parametrize("name", sorted(standard_catalog(max_dim=6)))
def test_ring_axiom_suite_small(name):
    report = verify_ring_axioms(standard_catalog()[name], trials=100, seed=7)
    assert report.passed, report.witness
