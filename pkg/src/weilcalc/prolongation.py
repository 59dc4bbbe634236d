"""Weil prolongation of affine n-space and the tangent-vector module.

The model object is ``Q^n`` with polynomial maps.  For a Weil algebra ``W``, a
point of ``Q^n (x) W`` is an n-tuple of elements of ``W`` (a :class:`WPoint`),
and a polynomial map acts on such tuples by substitution.  That is the
truncated Taylor expansion of the map.

Tangent vectors are W-points over ``W_D``.  Their module operations are
computed only through the homomorphisms induced by the maps ``+_D``, ``0_D``,
``-_D`` and ``xi_D``; the direction arithmetic never enters directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

from . import linalg
from .report import VerificationReport
from .errors import AlgebraMismatch, BaseMismatch, DimensionMismatch
from .infinitesimal import D, AlgebraHom, FabulousMap, InfObject, D_m, induce_hom, std_map
from .poly import as_scalar, Poly, Scalar
from .sampling import random_element, random_fraction
from .weil import WeilAlgebra, WeilElement, augment


@dataclass(frozen=True)
class PolyMap:
    """A polynomial map ``Q^dim_in -> Q^dim_out``."""

    dim_in: int
    dim_out: int
    components: Tuple[Poly, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.dim_out:
            raise DimensionMismatch(f"expected {self.dim_out} components, got {len(self.components)}")
        if any(c.nvars != self.dim_in for c in self.components):
            raise DimensionMismatch(f"components must be polynomials in {self.dim_in} variables")

    @classmethod
    def of(cls, components: Sequence[Poly]) -> "PolyMap":
        components = tuple(components)
        if not components:
            raise DimensionMismatch("a map needs at least one component; use PolyMap(n, 0, ()) otherwise")
        return cls(components[0].nvars, len(components), components)

    @classmethod
    def identity(cls, n: int) -> "PolyMap":
        return cls(n, n, tuple(Poly.var(n, i) for i in range(n)))

    def after(self, other: "PolyMap") -> "PolyMap":
        """``self o other``."""
        if other.dim_out != self.dim_in:
            raise DimensionMismatch("maps are not composable")
        return PolyMap(
            other.dim_in,
            self.dim_out,
            tuple(c.compose(other.components, nvars=other.dim_in) for c in self.components),
        )

    def __call__(self, point: Sequence) -> Tuple[Scalar, ...]:
        return tuple(c.evaluate([as_scalar(x) for x in point]) for c in self.components)


@dataclass(frozen=True)
class WPoint:
    """A point of ``Q^n (x) W``: one element of ``algebra`` per coordinate."""

    algebra: WeilAlgebra
    coords: Tuple[WeilElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        for c in self.coords:
            if c.algebra != self.algebra:
                raise AlgebraMismatch("all coordinates must share one Weil algebra")

    @classmethod
    def of(cls, algebra: WeilAlgebra, coords: Sequence) -> "WPoint":
        coords = [c if isinstance(c, WeilElement) else algebra.scalar(c) for c in coords]
        return cls(algebra, tuple(coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def base(self) -> Tuple[Scalar, ...]:
        return tuple(augment(c) for c in self.coords)


# tangent vectors are W-points over this algebra
W_D = D.algebra


def tangent(base: Sequence, direction: Sequence) -> WPoint:
    """``base + eps*direction`` as a point of ``Q^n (x) W_D``."""
    if len(base) != len(direction):
        raise DimensionMismatch("base and direction differ in length")
    eps = W_D.gen(0)
    return WPoint(W_D, tuple(W_D.scalar(b) + eps * as_scalar(v) for b, v in zip(base, direction)))


def direction(t: WPoint) -> Tuple[Scalar, ...]:
    """The eps-coefficients of a tangent vector."""
    if t.algebra != W_D:
        raise AlgebraMismatch("not a tangent vector: algebra is not W_D")
    return tuple(c.coeff((1,)) for c in t.coords)


TangentVector = WPoint


class Prolongation:
    """``f (x) W``: the action of a polynomial map on W-points."""

    def __init__(self, f: PolyMap, algebra: WeilAlgebra):
        self.f = f
        self.algebra = algebra

    def __call__(self, p: WPoint) -> WPoint:
        if p.dim != self.f.dim_in:
            raise DimensionMismatch(f"map expects {self.f.dim_in} coordinates, point has {p.dim}")
        if p.algebra != self.algebra:
            raise AlgebraMismatch("point lives over a different Weil algebra")
        W = self.algebra
        return WPoint(W, tuple(c.evaluate(p.coords, one=W.one(), zero=W.zero()) for c in self.f.components))


def prolong_map(f: PolyMap, algebra: WeilAlgebra) -> Prolongation:
    return Prolongation(f, algebra)


def act_hom(h: AlgebraHom, p: WPoint) -> WPoint:
    """``id (x) h``: apply an algebra homomorphism to every coordinate."""
    if p.algebra != h.source:
        raise AlgebraMismatch("point does not live over the homomorphism's source")
    return WPoint(h.target, tuple(h(c) for c in p.coords))


def project_base(p: WPoint) -> Tuple[Scalar, ...]:
    return p.base()


@lru_cache(maxsize=256)
def std_hom(name: str, **params) -> AlgebraHom:
    """Cached ``induce_hom(std_map(name, **params))``."""
    return induce_hom(std_map(name, **params))


def glue_D2(t1: WPoint, t2: WPoint) -> WPoint:
    """The point of ``Q^n (x) W_D(2)`` whose two restrictions are ``t1`` and ``t2``.

    Splits coefficients: ``(a + b X, a + c X) -> a + b X1 + c X2``.
    """
    if t1.base() != t2.base():
        raise BaseMismatch(f"tangent vectors sit over different points {t1.base()} and {t2.base()}")
    if t1.dim != t2.dim:
        raise DimensionMismatch("tangent vectors of different dimension")
    W2 = D_m(2).algebra
    x1, x2 = W2.gens()
    coords = tuple(
        W2.scalar(b) + x1 * v + x2 * w
        for b, v, w in zip(t1.base(), direction(t1), direction(t2))
    )
    return WPoint(W2, coords)


def tangent_add(t1: WPoint, t2: WPoint) -> WPoint:
    return act_hom(std_hom("plus_D"), glue_D2(t1, t2))


def tangent_zero(base: Sequence) -> WPoint:
    W1 = InfObject(()).algebra
    return act_hom(std_hom("zero_D"), WPoint.of(W1, [as_scalar(b) for b in base]))


def tangent_neg(t: WPoint) -> WPoint:
    return act_hom(std_hom("neg_D"), t)


def tangent_scale(xi, t: WPoint) -> WPoint:
    return act_hom(std_hom("scale_D", xi=as_scalar(xi)), t)


def tangent_op(kind: str, *vectors: WPoint, xi=None, base=None) -> WPoint:
    if kind == "add":
        return tangent_add(*vectors)
    if kind == "neg":
        return tangent_neg(*vectors)
    if kind == "scale":
        return tangent_scale(xi, *vectors)
    if kind == "zero":
        if base is None:
            base = vectors[0].base()
        return tangent_zero(base)
    raise ValueError(f"unknown tangent operation {kind!r}")


def _coord_matrix(h: AlgebraHom, n: int):
    """Matrix of ``id (x) h`` on the concatenated coefficient vectors of n coordinates."""
    rows = []
    for i in range(n):
        for r in range(h.target.dim):
            row = [Scalar(0)] * (n * h.source.dim)
            for j in range(h.source.dim):
                row[i * h.source.dim + j] = h.columns[j][r]
            rows.append(row)
    return rows


def check_microlinearity_D2(n: int, samples: int = 100, seed: int = 0,
                            apex: InfObject | None = None,
                            legs: Tuple[FabulousMap, FabulousMap] | None = None) -> VerificationReport:
    """Check that ``Q^n (x) W_apex`` is the fiber product of two copies of ``Q^n (x) W_D``.

    By default the apex is ``D(2)`` with legs ``d -> (d, 0)`` and ``d -> (0, d)``.
    The check is symbolic (rank of the coefficient map against the dimension
    of base-matching pairs), followed by randomized round trips.
    """
    if n < 1:
        raise DimensionMismatch("n must be at least 1")
    if apex is None:
        apex = D_m(2)
        legs = (std_map("incl", i=1, k=2), std_map("incl", i=2, k=2))
    h1, h2 = induce_hom(legs[0]), induce_hom(legs[1])
    P = apex.algebra
    m1 = _coord_matrix(h1, n)
    m2 = _coord_matrix(h2, n)
    mediating = m1 + m2  # rows: pair coefficients; columns: apex coefficients
    pair_len = len(mediating)
    # base-matching pairs: constant coefficients agree coordinatewise
    constraint = []
    for i in range(n):
        row = [Scalar(0)] * pair_len
        row[i * W_D.dim] = Scalar(1)
        row[n * W_D.dim + i * W_D.dim] = Scalar(-1)
        constraint.append(row)
    matching_dim = len(linalg.nullspace(constraint, pair_len))
    cols = linalg.transpose(mediating)
    rk = linalg.rank(cols, pair_len) if cols else 0
    lands_in_matching = all(not any(linalg.matvec(constraint, col)) for col in cols)
    symbolic = rk == n * P.dim and rk == matching_dim and lands_in_matching
    report = VerificationReport(
        False,
        expected_dim=matching_dim,
        actual_dim=n * P.dim,
        details={"symbolic": symbolic, "rank": rk, "lands_in_matching_pairs": lands_in_matching},
    )

    rng = random.Random(seed)
    failures = 0
    try:
        inverse = linalg.left_inverse(cols, pair_len)
    except ValueError:
        inverse = None
    for _ in range(samples):
        base = [random_fraction(rng) for _ in range(n)]
        t1 = tangent(base, [random_fraction(rng) for _ in range(n)])
        t2 = tangent(base, [random_fraction(rng) for _ in range(n)])
        pair = [x for t in (t1, t2) for c in t.coords for x in c.vec]
        ok = inverse is not None
        if ok:
            pre = linalg.matvec(inverse, pair)
            glued = WPoint(P, tuple(P.from_vector(pre[i * P.dim:(i + 1) * P.dim]) for i in range(n)))
            ok = act_hom(h1, glued) == t1 and act_hom(h2, glued) == t2
        if ok and apex == D_m(2):
            ok = glue_D2(t1, t2) == glued
        q = WPoint(P, tuple(random_element(rng, P) for _ in range(n)))
        if ok:
            back = [x for t in (act_hom(h1, q), act_hom(h2, q)) for c in t.coords for x in c.vec]
            ok = linalg.matvec(inverse, back) == [x for c in q.coords for x in c.vec]
        if not ok:
            failures += 1
            if report.witness is None:
                report.witness = {"pair": (t1, t2)}
    report.details["samples"] = samples
    report.details["sample_failures"] = failures
    report.passed = symbolic and failures == 0
    return report


def random_tangent_triple(rng: random.Random, n: int, bound: int = 9):
    base = [random_fraction(rng, bound) for _ in range(n)]
    return tuple(tangent(base, [random_fraction(rng, bound) for _ in range(n)]) for _ in range(3))


def verify_module_axioms(n: int, trials: int = 100, seed: int = 0) -> VerificationReport:
    """The Q-module laws of tangent vectors at a point, on random triples.

    Every operation goes through :func:`tangent_op`, so through induced homs.
    The first failing triple, if any, is kept as the witness.
    """
    if n < 1:
        raise DimensionMismatch("n must be at least 1")
    rng = random.Random(seed)
    laws = ("associative", "commutative", "unit", "inverse", "distributive_scalars", "distributive_vectors")
    counts = dict.fromkeys(laws, 0)
    report = VerificationReport(False)
    for _ in range(trials):
        v, w, u = random_tangent_triple(rng, n)
        a, b = random_fraction(rng), random_fraction(rng)
        zero = tangent_zero(v.base())
        results = {
            "associative": tangent_add(tangent_add(v, w), u) == tangent_add(v, tangent_add(w, u)),
            "commutative": tangent_add(v, w) == tangent_add(w, v),
            "unit": tangent_add(v, zero) == v and tangent_add(zero, v) == v,
            "inverse": tangent_add(v, tangent_neg(v)) == zero,
            "distributive_scalars": tangent_scale(a + b, v) == tangent_add(tangent_scale(a, v), tangent_scale(b, v)),
            "distributive_vectors": tangent_scale(a, tangent_add(v, w))
            == tangent_add(tangent_scale(a, v), tangent_scale(a, w)),
        }
        for law, ok in results.items():
            if not ok:
                counts[law] += 1
                if report.witness is None:
                    report.witness = {"law": law, "vectors": (v, w, u), "scalars": (a, b)}
    report.details = {law: counts[law] == 0 for law in laws}
    report.details["trials"] = trials
    report.passed = all(counts[law] == 0 for law in laws)
    return report
