"""Vector fields as infinitesimal transformations, and their Lie bracket.

A transformation family over a Weil algebra ``W`` is a self-map of ``Q^n``
whose polynomial coefficients live in ``W``.  A vector field ``f`` becomes
the family ``x -> x + eps*f(x)`` over ``W_D``.  Families over ``W_A`` and
``W_B`` compose into a family over ``W_A (x) W_B`` after each is extended
along the corresponding tensor injection.  The bracket is read off the
group commutator of two such families over ``D^2``.

Order convention: ``ass_compose(X, Y, "forward")`` applies ``X`` first and
``Y`` second.  With it the bracket of ``f`` and ``g`` is the field
``sum_j f_j*dg/dx_j - g_j*df/dx_j``; the ``"reverse"`` order flips its sign.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Sequence, Tuple

from .category import Factorization
from .report import VerificationReport
from .errors import AlgebraMismatch, DimensionMismatch, NotFactorable, WeilError
from .infinitesimal import D, AlgebraHom, D_pow, induce_hom, zero_map
from .poly import as_scalar, Poly, Scalar
from .prolongation import PolyMap, std_hom
from .weil import WeilAlgebra, tensor

FORWARD = "forward"
REVERSE = "reverse"
W_D = D.algebra


class WPoly:
    """A polynomial in ``nvars`` space variables with coefficients in ``algebra``.

    Stored as ``{basis index of algebra: rational polynomial}``, i.e. as an
    element of ``W (x) Q[x]``.
    """

    __slots__ = ("algebra", "nvars", "parts")

    def __init__(self, algebra: WeilAlgebra, nvars: int, parts: Dict[int, Poly]):
        self.algebra = algebra
        self.nvars = nvars
        self.parts = {k: p for k, p in parts.items() if not p.is_zero()}

    @classmethod
    def from_poly(cls, algebra: WeilAlgebra, p: Poly) -> "WPoly":
        return cls(algebra, p.nvars, {0: p})

    def part(self, mono) -> Poly:
        idx = self.algebra.index.get(tuple(mono))
        if idx is None:
            return Poly.zero(self.nvars)
        return self.parts.get(idx, Poly.zero(self.nvars))

    def __eq__(self, other):
        if not isinstance(other, WPoly):
            return NotImplemented
        return self.algebra == other.algebra and self.nvars == other.nvars and self.parts == other.parts

    def __add__(self, other: "WPoly") -> "WPoly":
        out = dict(self.parts)
        for k, p in other.parts.items():
            out[k] = out[k] + p if k in out else p
        return WPoly(self.algebra, self.nvars, out)

    def __mul__(self, other):
        if not isinstance(other, WPoly):
            s = as_scalar(other)
            return WPoly(self.algebra, self.nvars, {k: p.scale(s) for k, p in self.parts.items()})
        table = self.algebra.mul_table()
        out: Dict[int, Poly] = {}
        for a, p in self.parts.items():
            row = table[a]
            for b, q in other.parts.items():
                k = row[b]
                if k is not None:
                    pq = p * q
                    out[k] = out[k] + pq if k in out else pq
        return WPoly(self.algebra, self.nvars, out)

    def shift(self, b: int) -> "WPoly":
        """Multiply by the basis monomial with index ``b``."""
        table = self.algebra.mul_table()
        out: Dict[int, Poly] = {}
        for a, p in self.parts.items():
            k = table[a][b]
            if k is not None:
                out[k] = out[k] + p if k in out else p
        return WPoly(self.algebra, self.nvars, out)

    def act(self, h: AlgebraHom) -> "WPoly":
        """Apply ``h`` to the coefficients."""
        if h.source != self.algebra:
            raise AlgebraMismatch("homomorphism does not start at the coefficient algebra")
        out: Dict[int, Poly] = {}
        for a, p in self.parts.items():
            for k, v in enumerate(h.columns[a]):
                if v:
                    term = p.scale(v)
                    out[k] = out[k] + term if k in out else term
        return WPoly(h.target, self.nvars, out)

    def augmented(self) -> Poly:
        return self.parts.get(0, Poly.zero(self.nvars))


def _substitute(p: Poly, args: Sequence[WPoly], algebra: WeilAlgebra, nvars: int) -> WPoly:
    one = WPoly(algebra, nvars, {0: Poly.constant(nvars, 1)})
    zero = WPoly(algebra, nvars, {})
    return p.evaluate(args, one=one, zero=zero)


class _TaylorSubstitution:
    """Substitute ``args = a + N`` into polynomials, with ``N`` nilpotent.

    ``p(a + N) = sum over alpha of (d^alpha p)(a) * N^alpha / alpha!``, which
    terminates because products of more than ``max_deg`` nilpotents vanish.
    This is the same polynomial as direct substitution but avoids expanding
    high powers of ``a + N``.
    """

    def __init__(self, args: Sequence[WPoly]):
        self.algebra = W = args[0].algebra
        self.nvars = n = args[0].nvars
        self.base = [a.augmented() for a in args]
        self.identity_base = all(b == Poly.var(n, j) for j, b in enumerate(self.base))
        nil = [WPoly(W, n, {k: q for k, q in a.parts.items() if k != 0}) for a in args]
        top = max((sum(m) for m in W.basis), default=0)
        # (alpha, N^alpha / alpha!) for every alpha with non-vanishing power
        self.powers = []
        one = WPoly(W, n, {0: Poly.constant(n, 1)})

        def walk(alpha, start, power, size):
            self.powers.append((tuple(alpha), power))
            if size == top:
                return
            for j in range(start, n):
                if not nil[j].parts:
                    continue
                nxt = power * nil[j]
                if not nxt.parts:
                    continue
                alpha[j] += 1
                walk(alpha, j, nxt * (1 / Scalar(alpha[j])), size + 1)
                alpha[j] -= 1

        walk([0] * n, 0, one, 0)

    def __call__(self, p: Poly) -> WPoly:
        W, n = self.algebra, self.nvars
        acc: Dict[int, Poly] = {}
        deg = p.total_degree()
        for alpha, power in self.powers:
            if sum(alpha) > deg:
                continue
            q = p
            for j, e in enumerate(alpha):
                for _ in range(e):
                    q = q.diff(j)
                    if q.is_zero():
                        break
                if q.is_zero():
                    break
            if q.is_zero():
                continue
            if not self.identity_base:
                q = q.compose(self.base, nvars=n)
            for k, r in power.parts.items():
                t = q * r
                acc[k] = acc[k] + t if k in acc else t
        return WPoly(W, n, acc)


class TransformationFamily:
    """A ``W``-parametrized polynomial self-map of ``Q^dim``."""

    def __init__(self, algebra: WeilAlgebra, dim: int, components: Sequence[WPoly]):
        components = tuple(components)
        if len(components) != dim:
            raise DimensionMismatch(f"expected {dim} components, got {len(components)}")
        for c in components:
            if c.algebra != algebra or c.nvars != dim:
                raise AlgebraMismatch("component does not match the family's algebra or dimension")
        self.algebra = algebra
        self.dim = dim
        self.components = components

    @classmethod
    def from_polymap(cls, algebra: WeilAlgebra, f: PolyMap) -> "TransformationFamily":
        if f.dim_in != f.dim_out:
            raise DimensionMismatch("a transformation family needs a self-map")
        return cls(algebra, f.dim_in, [WPoly.from_poly(algebra, c) for c in f.components])

    def coefficient(self, i: int, mono) -> Poly:
        """The polynomial multiplying the basis monomial ``mono`` in component ``i``."""
        return self.components[i].part(mono)

    def base_map(self) -> PolyMap:
        return PolyMap(self.dim, self.dim, tuple(c.augmented() for c in self.components))

    def is_base_identity(self) -> bool:
        return self.base_map() == PolyMap.identity(self.dim)

    def support(self):
        """Basis monomials carrying a non-zero coefficient in some component."""
        idx = sorted({k for c in self.components for k in c.parts})
        return [self.algebra.basis[k] for k in idx]

    def act(self, h: AlgebraHom) -> "TransformationFamily":
        """``id (x) h`` on coefficients; restricting along a map ``phi`` is ``act(W_phi)``."""
        return TransformationFamily(h.target, self.dim, [c.act(h) for c in self.components])

    def after(self, other: "TransformationFamily") -> "TransformationFamily":
        """``self o other`` over a common algebra: apply ``other`` first."""
        if other.algebra != self.algebra:
            raise AlgebraMismatch("families live over different algebras")
        if other.dim != self.dim:
            raise DimensionMismatch("families act on spaces of different dimension")
        W, n = self.algebra, self.dim
        sub = _TaylorSubstitution(other.components)
        out = []
        for comp in self.components:
            acc = WPoly(W, n, {})
            for b, p in comp.parts.items():
                acc = acc + sub(p).shift(b)
            out.append(acc)
        return TransformationFamily(W, n, out)

    def __eq__(self, other):
        if not isinstance(other, TransformationFamily):
            return NotImplemented
        return self.algebra == other.algebra and self.dim == other.dim and self.components == other.components

    def __repr__(self):
        from .expr import format_monomial

        return f"TransformationFamily(dim={self.dim}, support={[format_monomial(m, 'd') for m in self.support()]})"


@dataclass(frozen=True)
class VectorField:
    dim: int
    f: PolyMap

    @classmethod
    def of(cls, components: Sequence[Poly]) -> "VectorField":
        pm = PolyMap.of(components)
        if pm.dim_in != pm.dim_out:
            raise DimensionMismatch("a vector field needs one component per coordinate")
        return cls(pm.dim_in, pm)

    @classmethod
    def zero(cls, n: int) -> "VectorField":
        return cls(n, PolyMap(n, n, tuple(Poly.zero(n) for _ in range(n))))

    @property
    def components(self) -> Tuple[Poly, ...]:
        return self.f.components

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)


def _check_dims(*fields):
    dims = {X.dim for X in fields}
    if len(dims) != 1:
        raise DimensionMismatch(f"vector fields of different dimensions {sorted(dims)}")


def lift_field(X: VectorField) -> TransformationFamily:
    """``x -> x + eps*f(x)`` over ``W_D``."""
    n = X.dim
    comps = [WPoly(W_D, n, {0: Poly.var(n, i), 1: X.components[i]}) for i in range(n)]
    return TransformationFamily(W_D, n, comps)


def strip_field(T: TransformationFamily) -> VectorField:
    """Inverse of :func:`lift_field`: read the eps-coefficients back."""
    if T.algebra != W_D:
        raise AlgebraMismatch("only families over W_D are vector fields")
    if not T.is_base_identity():
        raise WeilError("family does not restrict to the identity map")
    return VectorField(T.dim, PolyMap(T.dim, T.dim, tuple(T.coefficient(i, (1,)) for i in range(T.dim))))


def identity_family(W: WeilAlgebra, n: int) -> TransformationFamily:
    return TransformationFamily.from_polymap(W, PolyMap.identity(n))


def tensor_injections(A: WeilAlgebra, B: WeilAlgebra):
    """The homomorphisms ``A -> A (x) B`` and ``B -> A (x) B``.

    They are the ones induced by the two projections of a product of
    infinitesimal objects.
    """
    T = tensor(A, B)
    gens = T.gens()
    return (
        AlgebraHom(A, T, gens[:A.num_vars]),
        AlgebraHom(B, T, gens[A.num_vars:]),
    )


def ass_compose(X: TransformationFamily, Y: TransformationFamily, order: str = FORWARD) -> TransformationFamily:
    """Compose families over ``W_A`` and ``W_B`` into one over ``W_A (x) W_B``."""
    if X.dim != Y.dim:
        raise DimensionMismatch("families act on spaces of different dimension")
    inj1, inj2 = tensor_injections(X.algebra, Y.algebra)
    Xe, Ye = X.act(inj1), Y.act(inj2)
    if order == FORWARD:
        return Ye.after(Xe)
    if order == REVERSE:
        return Xe.after(Ye)
    raise ValueError(f"order must be {FORWARD!r} or {REVERSE!r}")


def ass_compose_all(families: Sequence[TransformationFamily], order: str = FORWARD) -> TransformationFamily:
    """Iterated composition, grouped from the left."""
    result = families[0]
    for fam in families[1:]:
        result = ass_compose(result, fam, order)
    return result


def add_fields_via_D2(X: VectorField, Y: VectorField, order: str = FORWARD) -> VectorField:
    """Sum of two fields through ``D^2 -> D(2) <- D``."""
    _check_dims(X, Y)
    F = ass_compose(lift_field(X), lift_field(Y), order)
    G = F.act(std_hom("d2_in_dsq"))
    return strip_field(G.act(std_hom("plus_D")))


def scale_field(xi, X: VectorField) -> VectorField:
    return strip_field(lift_field(X).act(std_hom("scale_D", xi=as_scalar(xi))))


def neg_field(X: VectorField) -> VectorField:
    return strip_field(lift_field(X).act(std_hom("neg_D")))


def commutator_family(X: VectorField, Y: VectorField, order: str = FORWARD) -> TransformationFamily:
    """``(X, Y, X, Y)`` composed over ``D^4`` and restricted along ``(d1, d2, -d1, -d2)``."""
    _check_dims(X, Y)
    lx, ly = lift_field(X), lift_field(Y)
    quad = ass_compose_all([lx, ly, lx, ly], order)
    assert quad.algebra == D_pow(4).algebra
    return quad.act(std_hom("comm_quad"))


def commutator_restrictions(C: TransformationFamily):
    """Restrictions of a ``D^2`` family along ``d -> (d, 0)``, ``d -> (0, d)`` and ``d -> (0, 0)``."""
    homs = [
        std_hom("incl", i=1, k=2, into="D^k"),
        std_hom("incl", i=2, k=2, into="D^k"),
        _zero_into_dsq(),
    ]
    return [C.act(h) for h in homs]


@lru_cache(maxsize=None)
def _zero_into_dsq() -> AlgebraHom:
    return induce_hom(zero_map(D, D_pow(2)))


@lru_cache(maxsize=None)
def _mult_factorization() -> Factorization:
    return Factorization(std_hom("mult"))


def factor_family(T: TransformationFamily, fac: Factorization) -> TransformationFamily:
    """The unique family ``S`` with ``S.act(fac.hom) == T``; raises if none exists."""
    h = fac.hom
    if T.algebra != h.target:
        raise AlgebraMismatch("family does not live over the homomorphism's target")
    n = T.dim
    L = fac.left_inverse
    out = []
    for comp in T.components:
        # the left inverse applied to the coefficient polynomials, then checked
        parts = {}
        for r, row in enumerate(L):
            acc = Poly.zero(n)
            for k, p in comp.parts.items():
                if row[k]:
                    acc = acc + p.scale(row[k])
            parts[r] = acc
        pre = WPoly(h.source, n, parts)
        if pre.act(h) != comp:
            raise NotFactorable("family does not factor through the homomorphism")
        out.append(pre)
    return TransformationFamily(h.source, n, out)


def lie_bracket(X: VectorField, Y: VectorField, order: str = FORWARD) -> VectorField:
    """The field through which the commutator family factors along ``(d1, d2) -> d1*d2``."""
    C = commutator_family(X, Y, order)
    return strip_field(factor_family(C, _mult_factorization()))


# -- verification suites ---------------------------------------------------


def _sum_fields(fields: Sequence[VectorField], order: str = FORWARD) -> VectorField:
    total = fields[0]
    for F in fields[1:]:
        total = add_fields_via_D2(total, F, order)
    return total


def verify_lie_axioms(fields: Sequence[VectorField], scalars: Sequence = (2, -3),
                      order: str = FORWARD) -> VerificationReport:
    """Exact check of bilinearity, alternation, antisymmetry and the Jacobi identity.

    Bilinearity is tested for every cyclically adjacent pair of ``scalars``.
    Each bracket is computed once; repeated pairs reuse the result.
    """
    X, Y, Z = fields
    _check_dims(X, Y, Z)
    scalars = [as_scalar(s) for s in scalars]
    if len(scalars) < 2:
        raise WeilError("bilinearity needs at least two scalars")
    pairs = list(zip(scalars, scalars[1:] + scalars[:1])) if len(scalars) > 2 else [tuple(scalars)]
    memo: Dict[Tuple[VectorField, VectorField], VectorField] = {}

    def br(P, Q):
        if (P, Q) not in memo:
            memo[(P, Q)] = lie_bracket(P, Q, order)
        return memo[(P, Q)]

    def add(*fs):
        return _sum_fields(fs, order)

    left = right = True
    for a, b in pairs:
        comb = add(scale_field(a, X), scale_field(b, Y))
        left = left and br(comb, Z) == add(scale_field(a, br(X, Z)), scale_field(b, br(Y, Z)))
        right = right and br(Z, comb) == add(scale_field(a, br(Z, X)), scale_field(b, br(Z, Y)))
    details = {
        "bilinear_left": left,
        "bilinear_right": right,
        "alternation": all(br(F, F).is_zero() for F in (X, Y, Z)),
        "antisymmetry": all(add(br(P, Q), br(Q, P)).is_zero() for P, Q in ((X, Y), (Y, Z), (Z, X))),
    }
    jacobi = add(br(X, br(Y, Z)), br(Y, br(Z, X)), br(Z, br(X, Y)))
    details["jacobi"] = jacobi.is_zero()
    return VerificationReport(all(details.values()), witness={"jacobi_residual": jacobi}, details=details)


def verify_ass_laws(X: TransformationFamily, Y: TransformationFamily, Z: TransformationFamily) -> VerificationReport:
    """Associativity of ``ass_compose`` in both orders, and the unit laws for ``X, Y``."""
    details = {}
    for order in (FORWARD, REVERSE):
        lhs = ass_compose(ass_compose(X, Y, order), Z, order)
        rhs = ass_compose(X, ass_compose(Y, Z, order), order)
        details[f"associative_{order}"] = lhs == rhs
    inj1, inj2 = tensor_injections(X.algebra, Y.algebra)
    IX = identity_family(X.algebra, X.dim)
    IY = identity_family(Y.algebra, Y.dim)
    for order in (FORWARD, REVERSE):
        details[f"left_unit_{order}"] = ass_compose(IX, Y, order) == Y.act(inj2)
        details[f"right_unit_{order}"] = ass_compose(X, IY, order) == X.act(inj1)
    return VerificationReport(all(details.values()), details=details)


def random_field(rng: random.Random, n: int, max_degree: int = 3, bound: int = 9) -> VectorField:
    from .sampling import random_polys

    return VectorField.of(random_polys(rng, n, n, max_degree=max_degree, bound=bound))
