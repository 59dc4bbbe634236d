import random
from fractions import Fraction

import pytest

from weilcalc.errors import DimensionMismatch
from weilcalc.infinitesimal import POINT, D, D_pow, induce_hom, std_map
from weilcalc.liecalc import (
    FORWARD,
    REVERSE,
    TransformationFamily,
    VectorField,
    add_fields_via_D2,
    ass_compose,
    commutator_family,
    commutator_restrictions,
    identity_family,
    lie_bracket,
    lift_field,
    neg_field,
    random_field,
    scale_field,
    strip_field,
    tensor_injections,
    verify_ass_laws,
    verify_lie_axioms,
)
from weilcalc.poly import Poly
from weilcalc.prolongation import PolyMap
from weilcalc.sampling import random_fraction

from conftest import field_corpus, oracle_bracket

W_D = D.algebra
W_DSQ = D_pow(2).algebra


def field(n, *comps):
    return VectorField.of([c if isinstance(c, Poly) else Poly.constant(n, c) for c in comps])


def x(n, i):
    return Poly.var(n, i - 1)


def test_lift_example():
    T = lift_field(field(2, 0, x(2, 1)))
    assert T.algebra == W_D
    assert T.coefficient(0, (0,)) == x(2, 1) and T.coefficient(0, (1,)).is_zero()
    assert T.coefficient(1, (0,)) == x(2, 2) and T.coefficient(1, (1,)) == x(2, 1)
    assert T.is_base_identity()


def test_lift_zero_is_identity():
    assert lift_field(VectorField.zero(3)) == identity_family(W_D, 3)


def test_strip_lift_round_trip():
    rng = random.Random(5)
    for _ in range(100):
        X = random_field(rng, rng.choice([1, 2, 3]))
        assert strip_field(lift_field(X)) == X


def test_plain_endomaps_compose_in_order():
    W1 = POINT.algebra
    f = TransformationFamily.from_polymap(W1, PolyMap.of([x(1, 1) ** 2]))
    g = TransformationFamily.from_polymap(W1, PolyMap.of([x(1, 1) + 1]))
    assert ass_compose(f, g, FORWARD).base_map() == PolyMap.of([x(1, 1) ** 2 + 1])
    assert ass_compose(f, g, REVERSE).base_map() == PolyMap.of([(x(1, 1) + 1) ** 2])


def test_lifted_composition_over_dsq():
    T = ass_compose(lift_field(field(1, 1)), lift_field(field(1, x(1, 1))), FORWARD)
    assert T.algebra == W_DSQ
    xx = x(1, 1)
    assert T.coefficient(0, (0, 0)) == xx
    assert T.coefficient(0, (1, 0)) == Poly.constant(1, 1)
    assert T.coefficient(0, (0, 1)) == xx
    assert T.coefficient(0, (1, 1)) == Poly.constant(1, 1)


def test_unit_laws():
    rng = random.Random(8)
    X = lift_field(random_field(rng, 2))
    Y = lift_field(random_field(rng, 2))
    inj1, inj2 = tensor_injections(X.algebra, Y.algebra)
    assert ass_compose(identity_family(W_D, 2), Y) == Y.act(inj2)
    assert ass_compose(X, identity_family(W_D, 2)) == X.act(inj1)
    I = identity_family(W_DSQ, 1)
    assert ass_compose(I, I) == identity_family(D_pow(4).algebra, 1)


@pytest.mark.parametrize("l, m", [(1, 1), (1, 2), (2, 1)])
def test_tensor_injections_are_projection_homs(l, m):
    inj1, inj2 = tensor_injections(D_pow(l).algebra, D_pow(m).algebra)
    src = D_pow(l + m)
    assert inj1 == induce_hom(std_map("proj_block", src=src, keep=list(range(l))))
    assert inj2 == induce_hom(std_map("proj_block", src=src, keep=list(range(l, l + m))))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        lie_bracket(VectorField.zero(1), VectorField.zero(2))
    with pytest.raises(DimensionMismatch):
        add_fields_via_D2(VectorField.zero(1), VectorField.zero(2))


# -- addition -------------------------------------------------------------------


def test_add_example():
    assert add_fields_via_D2(field(1, 1), field(1, x(1, 1))) == field(1, x(1, 1) + 1)


def test_add_zero_and_commutative(corpus):
    for X, Y in corpus:
        assert add_fields_via_D2(X, VectorField.zero(X.dim)) == X
        assert add_fields_via_D2(X, Y) == add_fields_via_D2(Y, X)


def test_scale_and_negate():
    rng = random.Random(12)
    X = random_field(rng, 2)
    s = random_fraction(rng)
    assert scale_field(s, X) == VectorField.of([c.scale(s) for c in X.components])
    assert neg_field(X) == VectorField.of([-c for c in X.components])


# -- commutator and bracket -----------------------------------------------------


def test_commutator_example():
    C = commutator_family(field(1, 1), field(1, x(1, 1)))
    assert C.algebra == W_DSQ
    assert C.support() == [(0, 0), (1, 1)]
    assert C.coefficient(0, (0, 0)) == x(1, 1)
    assert C.coefficient(0, (1, 1)) == Poly.constant(1, 1)


def test_commutator_of_equal_fields_is_identity():
    X = random_field(random.Random(3), 2)
    assert commutator_family(X, X) == identity_family(W_DSQ, 2)


def test_commutator_restrictions_are_identity():
    for X, Y in field_corpus(20, seed=4):
        C = commutator_family(X, Y)
        assert C.is_base_identity()
        ident = identity_family(W_D, X.dim)
        assert all(R == ident for R in commutator_restrictions(C))
        assert set(C.support()) <= {(0, 0), (1, 1)}


def test_bracket_examples():
    assert lie_bracket(field(2, 0, x(2, 1)), field(2, 1, 0)) == field(2, 0, -1)
    assert lie_bracket(field(1, 1), field(1, x(1, 1))) == field(1, 1)
    X = random_field(random.Random(1), 3)
    assert lie_bracket(X, X).is_zero()


def test_bracket_matches_oracle():
    for X, Y in field_corpus(30, seed=21):
        assert list(lie_bracket(X, Y).components) == oracle_bracket(X.components, Y.components)


def test_reverse_order_negates():
    for X, Y in field_corpus(10, seed=22):
        assert lie_bracket(X, Y, REVERSE) == neg_field(lie_bracket(X, Y, FORWARD))


def test_linear_fields_give_matrix_commutator():
    rng = random.Random(13)
    n = 3
    A = [[random_fraction(rng) for _ in range(n)] for _ in range(n)]
    B = [[random_fraction(rng) for _ in range(n)] for _ in range(n)]

    def linear(M):
        return VectorField.of([sum((x(n, j + 1).scale(M[i][j]) for j in range(n)), Poly.zero(n)) for i in range(n)])

    BA_AB = [[sum(B[i][k] * A[k][j] - A[i][k] * B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert lie_bracket(linear(A), linear(B)) == linear(BA_AB)


# -- verification suites --------------------------------------------------------


def test_lie_axioms_on_quadratic_fields():
    rng = random.Random(30)
    fields = [random_field(rng, 2, max_degree=2) for _ in range(3)]
    r = verify_lie_axioms(fields, scalars=(2, -3))
    assert r.passed, r.details
    assert r.witness["jacobi_residual"].is_zero()


def test_lie_axioms_with_zero_field():
    rng = random.Random(31)
    r = verify_lie_axioms([VectorField.zero(2), random_field(rng, 2), random_field(rng, 2)],
                          scalars=(Fraction(1, 2), 7, -1))
    assert r.passed


def test_ass_laws_on_lifted_fields():
    rng = random.Random(40)
    for n in (1, 2, 3):
        X, Y, Z = (lift_field(random_field(rng, n)) for _ in range(3))
        r = verify_ass_laws(X, Y, Z)
        assert r.passed, r.details
        assert len(r.details) == 6


def test_ass_laws_for_plain_endomaps():
    W1 = POINT.algebra
    rng = random.Random(41)
    fams = [TransformationFamily.from_polymap(W1, PolyMap.of([Poly(1, {(1,): 1, (2,): random_fraction(rng)})]))
            for _ in range(3)]
    assert verify_ass_laws(*fams).passed


def test_ass_laws_on_mixed_families():
    # families over W_D and W_{D^2} together
    rng = random.Random(42)
    X = lift_field(random_field(rng, 2))
    Y = ass_compose(lift_field(random_field(rng, 2)), lift_field(random_field(rng, 2)))
    Z = lift_field(random_field(rng, 2))
    assert verify_ass_laws(X, Y, Z).passed
