"""Exact Weil-algebra arithmetic and an infinitesimal calculus of vector fields.

The main entry points:

* :mod:`weilcalc.weil` for monomial-quotient Weil algebras and their elements,
* :mod:`weilcalc.infinitesimal` for infinitesimal objects, fabulous maps and
  the algebra homomorphisms they induce,
* :mod:`weilcalc.category` for pullback and equalizer certificates,
* :mod:`weilcalc.prolongation` for W-points of affine space and tangent vectors,
* :mod:`weilcalc.liecalc` for transformation families and the Lie bracket,
* :mod:`weilcalc.expr` and :mod:`weilcalc.cli` for parsing and the command line.
"""

from .category import (
    Cospan,
    Factorization,
    VerificationReport,
    check_joint_equalizer,
    check_pullback,
    d2_pullback_report,
    fiber_product,
    mult_equalizer_report,
)
from .errors import WeilError
from .expr import ExprSyntaxError, NegativeExponent, UnknownVariable, format_poly, parse_components, parse_expr
from .infinitesimal import (
    D,
    POINT,
    AlgebraHom,
    D_m,
    D_n,
    D_pow,
    FabulousMap,
    InfObject,
    compose_fab,
    identity_map,
    induce_hom,
    make_fab_map,
    make_inf,
    std_map,
    zero_map,
)
from .liecalc import (
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
    strip_field,
    verify_ass_laws,
    verify_lie_axioms,
)
from .poly import Poly, Scalar, as_scalar
from .prolongation import (
    PolyMap,
    TangentVector,
    WPoint,
    act_hom,
    check_microlinearity_D2,
    prolong_map,
    project_base,
    tangent,
    tangent_op,
    verify_module_axioms,
)
from .weil import (
    WeilAlgebra,
    WeilElement,
    augment,
    make_algebra,
    normal_form,
    ring_op,
    standard_catalog,
    tensor,
    verify_ring_axioms,
)

__version__ = "0.1.0"
