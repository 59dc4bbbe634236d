"""Certificates for finite limits of Weil algebras, by exact linear algebra.

Nothing here constructs a limit abstractly.  Given a candidate apex and its
legs, we compute the relevant subspace of the product, then check that the
mediating linear map is a bijection and that the subspace is closed under
multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence

from . import linalg
from .errors import AlgebraMismatch, BadParams, NotFactorable
from .infinitesimal import D, AlgebraHom, D_m, D_pow, augmentation_hom, induce_hom, std_map, zero_map
from .poly import Scalar
from .report import VerificationReport
from .weil import WeilAlgebra, WeilElement


@dataclass(frozen=True)
class Cospan:
    left: AlgebraHom
    right: AlgebraHom

    def __post_init__(self):
        if self.left.target != self.right.target:
            raise AlgebraMismatch("cospan legs must share a codomain")


@dataclass
class FiberProduct:
    """``{(a, b) : left(a) = right(b)}`` inside ``A x B``, as a basis of coefficient pairs."""

    cospan: Cospan
    basis: List[List[Scalar]]
    closed_under_mult: bool

    @property
    def dim(self) -> int:
        return len(self.basis)

    def split(self, vec):
        n = self.cospan.left.source.dim
        A, B = self.cospan.left.source, self.cospan.right.source
        return A.from_vector(vec[:n]), B.from_vector(vec[n:])


def _pair_vec(a: WeilElement, b: WeilElement) -> List[Scalar]:
    return list(a.vec) + list(b.vec)


def fiber_product(c: Cospan) -> FiberProduct:
    A, B, C = c.left.source, c.right.source, c.left.target
    # kernel of (a, b) -> left(a) - right(b)
    rows = [
        list(c.left.matrix[i]) + [-x for x in c.right.matrix[i]]
        for i in range(C.dim)
    ]
    basis = linalg.nullspace(rows, A.dim + B.dim)
    closed = True
    pairs = [(A.from_vector(v[:A.dim]), B.from_vector(v[A.dim:])) for v in basis]
    for a1, b1 in pairs:
        for a2, b2 in pairs:
            if not linalg.in_span(basis, _pair_vec(a1 * a2, b1 * b2)):
                closed = False
                break
        if not closed:
            break
    return FiberProduct(c, basis, closed)


def check_pullback(c: Cospan, apex: WeilAlgebra, proj1: AlgebraHom, proj2: AlgebraHom) -> VerificationReport:
    """Is ``apex`` with legs ``proj1, proj2`` a pullback of the cospan?"""
    if proj1.source != apex or proj2.source != apex:
        raise AlgebraMismatch("projections must start at the apex")
    if proj1.target != c.left.source or proj2.target != c.right.source:
        raise AlgebraMismatch("projections must land in the cospan's sources")
    fp = fiber_product(c)
    report = VerificationReport(False, expected_dim=fp.dim, actual_dim=apex.dim)
    report.details["fiber_product_closed"] = fp.closed_under_mult

    # homomorphisms agree iff they agree on generators
    for g in apex.gens():
        lhs, rhs = c.left(proj1(g)), c.right(proj2(g))
        if lhs != rhs:
            report.witness = {"non_commuting_generator": g, "left": lhs, "right": rhs}
            report.details["commutes"] = False
            return report
    report.details["commutes"] = True

    images = [_pair_vec(proj1(e), proj2(e)) for e in (apex.basis_element(m) for m in apex.basis)]
    mediating_rank = linalg.rank(images, c.left.source.dim + c.right.source.dim) if images else 0
    injective = mediating_rank == apex.dim
    report.details["injective"] = injective
    report.details["surjective"] = mediating_rank == fp.dim
    report.passed = injective and apex.dim == fp.dim and fp.closed_under_mult
    if report.passed:
        report.witness = {"apex_basis": list(apex.basis), "images": images}
    elif apex.dim != fp.dim:
        report.witness = {"reason": f"apex has dimension {apex.dim}, fiber product {fp.dim}"}
    else:
        report.witness = {"reason": "mediating map is not injective"}
    return report


def equalizer_basis(parallel: Sequence[AlgebraHom]) -> List[List[Scalar]]:
    """Basis of ``{a : h(a) equal for all h in parallel}``."""
    first = parallel[0]
    A = first.source
    rows = []
    for h in parallel[1:]:
        if h.source != A or h.target != first.target:
            raise AlgebraMismatch("parallel arrows must share source and target")
        for r1, r2 in zip(first.matrix, h.matrix):
            rows.append([x - y for x, y in zip(r1, r2)])
    return linalg.nullspace(rows, A.dim)


def check_joint_equalizer(cone: AlgebraHom, parallel: Sequence[AlgebraHom]) -> VerificationReport:
    """Is ``cone: L -> A`` the joint equalizer of the parallel arrows ``A -> B``?"""
    if len(parallel) < 2:
        raise BadParams("a joint equalizer needs at least two parallel arrows")
    A = cone.target
    if any(h.source != A for h in parallel):
        raise AlgebraMismatch("parallel arrows must start where the cone ends")
    eq = equalizer_basis(parallel)
    image = list(cone.columns)
    img_rank = linalg.rank(image, A.dim) if image else 0
    injective = img_rank == cone.source.dim
    contained = all(linalg.in_span(eq, col) for col in image)
    report = VerificationReport(
        False,
        expected_dim=len(eq),
        actual_dim=cone.source.dim,
        details={"injective": injective, "image_in_equalizer": contained},
    )
    report.passed = injective and contained and img_rank == len(eq)
    red, _ = linalg.rref(eq, A.dim) if eq else ([], [])
    report.details["equalizer_basis"] = [A.from_vector(v) for v in red]
    if not contained:
        bad = next(cone.source.basis_element(m) for m, col in zip(cone.source.basis, image)
                   if not linalg.in_span(eq, col))
        report.witness = {"separating_element": bad, "image": cone(bad)}
    else:
        report.witness = {"equalizer_basis": report.details["equalizer_basis"]}
    return report


class Factorization:
    """Preimages under an injective homomorphism ``h: L -> A``.

    ``preimage`` returns the unique ``l`` with ``h(l) = a``, or raises
    :class:`NotFactorable` when ``a`` is outside the image.
    """

    def __init__(self, hom: AlgebraHom):
        self.hom = hom
        try:
            self.left_inverse = linalg.left_inverse(hom.columns, hom.target.dim)
        except ValueError:
            raise NotFactorable("homomorphism is not injective; factorizations are not unique") from None

    def preimage_vec(self, vec: Sequence[Scalar]) -> List[Scalar]:
        pre = linalg.matvec(self.left_inverse, vec)
        back = [Scalar(0)] * self.hom.target.dim
        for c, col in zip(pre, self.hom.columns):
            if c:
                for i, v in enumerate(col):
                    back[i] += c * v
        if back != list(vec):
            raise NotFactorable("element is not in the image of the homomorphism")
        return pre

    def preimage(self, a: WeilElement) -> WeilElement:
        return self.hom.source.from_vector(self.preimage_vec(a.vec))


# -- the two standard diagrams ---------------------------------------------


def d2_pullback_report() -> VerificationReport:
    """``W_D(2)`` over the cospan ``W_D -> Q <- W_D`` with legs from ``d -> (d,0)``, ``d -> (0,d)``."""
    WD = D.algebra
    cospan = Cospan(augmentation_hom(WD), augmentation_hom(WD))
    legs = (induce_hom(std_map("incl", i=1, k=2)), induce_hom(std_map("incl", i=2, k=2)))
    return check_pullback(cospan, D_m(2).algebra, *legs)


def mult_equalizer_report() -> VerificationReport:
    """``W_D -> W_{D^2}`` from ``(d1,d2) -> d1*d2`` against the restrictions to ``(d,0)``, ``(0,d)``, ``(0,0)``."""
    parallel = [
        induce_hom(std_map("incl", i=1, k=2, into="D^k")),
        induce_hom(std_map("incl", i=2, k=2, into="D^k")),
        induce_hom(zero_map(D, D_pow(2))),
    ]
    return check_joint_equalizer(induce_hom(std_map("mult")), parallel)
