"""Infinitesimal objects, pointed polynomial maps between them, and induced homomorphisms.

An infinitesimal object is a finite product of blocks ``D(m)_n`` and is known
only through its Weil algebra.  A map ``phi: A -> B`` between two of them is
a tuple of polynomials in A's variables, one per variable of B.  It induces
an algebra homomorphism ``W_phi: W_B -> W_A`` in the opposite direction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Sequence, Tuple

from .errors import (
    AlgebraMismatch,
    BadParams,
    CompositionMismatch,
    IllFormed,
    InvalidBlock,
    NotPointed,
    UnknownName,
)
from .poly import as_scalar, Poly, Scalar
from .weil import WeilAlgebra, WeilElement, normal_form, tensor_all, truncated


class InfObject:
    """A product of ``D(m)_n`` blocks; the empty product is the point ``1``."""

    def __init__(self, blocks: Sequence[Tuple[int, int]] = ()):
        blocks = tuple((int(m), int(n)) for m, n in blocks)
        for m, n in blocks:
            if m < 1 or n < 1:
                raise InvalidBlock(f"block D({m})_{n} needs m >= 1 and n >= 1")
        self.blocks = blocks
        self.algebra: WeilAlgebra = tensor_all(truncated(m, n) for m, n in blocks)

    @property
    def num_vars(self) -> int:
        return self.algebra.num_vars

    def block_offsets(self):
        offsets, acc = [], 0
        for m, _ in self.blocks:
            offsets.append(acc)
            acc += m
        return offsets

    def __mul__(self, other: "InfObject") -> "InfObject":
        return InfObject(self.blocks + other.blocks)

    def __eq__(self, other):
        return isinstance(other, InfObject) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"InfObject({self.name})"

    @property
    def name(self) -> str:
        if not self.blocks:
            return "1"
        parts = []
        i = 0
        while i < len(self.blocks):
            j = i
            while j < len(self.blocks) and self.blocks[j] == self.blocks[i]:
                j += 1
            m, n = self.blocks[i]
            base = "D" if m == 1 else f"D({m})"
            if n > 1:
                base += f"_{n}"
            parts.append(base if j - i == 1 else f"{base}^{j - i}")
            i = j
        return "x".join(parts)


def make_inf(blocks: Sequence[Tuple[int, int]]) -> InfObject:
    return InfObject(blocks)


POINT = InfObject(())
D = InfObject([(1, 1)])


def D_n(n: int) -> InfObject:
    return InfObject([(1, n)])


def D_m(m: int, n: int = 1) -> InfObject:
    """``D(m)_n``; with the default order this is ``D(m)``."""
    return InfObject([(m, n)])


def D_pow(k: int) -> InfObject:
    """``D^k``: k independent first-order infinitesimals."""
    return InfObject([(1, 1)] * k)


class AlgebraHom:
    """A unital algebra homomorphism given by the images of the source generators."""

    def __init__(self, source: WeilAlgebra, target: WeilAlgebra, images: Sequence[WeilElement]):
        images = tuple(images)
        if len(images) != source.num_vars:
            raise BadParams(f"need {source.num_vars} generator images, got {len(images)}")
        for img in images:
            if img.algebra != target:
                raise AlgebraMismatch("generator image does not lie in the target algebra")
            if img.vec[0]:
                raise NotPointed("generator images must be nilpotent (zero augmentation)")
        self.source = source
        self.target = target
        self.images = images
        for g in source.ideal_gens:
            if not self._eval_monomial(g).is_zero():
                raise IllFormed(f"ideal generator {g} does not map to zero", generator=g)
        # column j is the image of source.basis[j]
        self.columns = tuple(self._eval_monomial(m).vec for m in source.basis)

    def _eval_monomial(self, mono) -> WeilElement:
        out = self.target.one()
        for img, e in zip(self.images, mono):
            for _ in range(e):
                out = out * img
        return out

    @property
    def matrix(self):
        """``dim(target) x dim(source)`` matrix on the bases, as a tuple of rows."""
        return tuple(tuple(col[i] for col in self.columns) for i in range(self.target.dim))

    def __call__(self, a: WeilElement) -> WeilElement:
        if a.algebra != self.source:
            raise AlgebraMismatch("element does not lie in the source algebra")
        out = [Scalar(0)] * self.target.dim
        for c, col in zip(a.vec, self.columns):
            if c:
                for i, v in enumerate(col):
                    if v:
                        out[i] += c * v
        return WeilElement(self.target, tuple(out))

    def basis_image(self, j: int) -> Tuple[Scalar, ...]:
        return self.columns[j]

    def after(self, other: "AlgebraHom") -> "AlgebraHom":
        """``self o other``: apply ``other`` first."""
        if other.target != self.source:
            raise CompositionMismatch("homomorphisms are not composable")
        return AlgebraHom(other.source, self.target, [self(img) for img in other.images])

    def __eq__(self, other):
        if not isinstance(other, AlgebraHom):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.source, self.target, self.images))

    def __repr__(self):
        return f"AlgebraHom(dim {self.source.dim} -> dim {self.target.dim}, images={list(self.images)})"


def identity_hom(A: WeilAlgebra) -> AlgebraHom:
    return AlgebraHom(A, A, A.gens())


def augmentation_hom(A: WeilAlgebra) -> AlgebraHom:
    """``A -> W_1``: kill every nilpotent."""
    point = WeilAlgebra(0, ())
    return AlgebraHom(A, point, [point.zero()] * A.num_vars)


@dataclass(frozen=True, eq=False)
class FabulousMap:
    """A pointed polynomial map ``source -> target``; build with :func:`make_fab_map`."""

    source: InfObject
    target: InfObject
    components: Tuple[Poly, ...]

    def __eq__(self, other):
        if not isinstance(other, FabulousMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.source, self.target, self.components))

    def __repr__(self):
        from .expr import format_poly

        comps = ", ".join(format_poly(c, "d") for c in self.components)
        return f"FabulousMap({self.source.name} -> {self.target.name}: ({comps}))"


def make_fab_map(src: InfObject, dst: InfObject, components: Sequence[Poly]) -> FabulousMap:
    """Validate and build a pointed map; components are stored in normal form."""
    components = tuple(components)
    if len(components) != dst.num_vars:
        raise BadParams(f"{dst.name} has {dst.num_vars} coordinates, got {len(components)} components")
    A = src.algebra
    reduced = []
    for j, c in enumerate(components):
        if c.nvars != src.num_vars:
            raise BadParams(f"component {j + 1} is not a polynomial in {src.num_vars} variables")
        if c.constant_term():
            raise NotPointed(f"component {j + 1} has non-zero constant term {c.constant_term()}")
        reduced.append(normal_form(c, A))
    for g in sorted(dst.algebra.ideal_gens):
        value = A.one()
        for elem, e in zip(reduced, g):
            for _ in range(e):
                value = value * elem
        if not value.is_zero():
            raise IllFormed(
                f"generator {g} of the target ideal does not vanish on {src.name}", generator=g
            )
    return FabulousMap(src, dst, tuple(r.to_poly() for r in reduced))


def induce_hom(phi: FabulousMap) -> AlgebraHom:
    """``W_phi: W_target -> W_source`` sending the j-th generator to the j-th component."""
    A = phi.source.algebra
    return AlgebraHom(phi.target.algebra, A, [normal_form(c, A) for c in phi.components])


def compose_fab(f: FabulousMap, g: FabulousMap) -> FabulousMap:
    """``g o f``: apply ``f`` first."""
    if f.target != g.source:
        raise CompositionMismatch(f"cannot follow a map into {f.target.name} by one from {g.source.name}")
    nv = f.source.num_vars
    comps = [c.compose(f.components, nvars=nv) for c in g.components]
    return make_fab_map(f.source, g.target, comps)


# -- the standard catalogue --------------------------------------------------


def _vars(obj: InfObject):
    return [Poly.var(obj.num_vars, i) for i in range(obj.num_vars)]


def _zero(obj: InfObject) -> Poly:
    return Poly.zero(obj.num_vars)


def identity_map(obj: InfObject) -> FabulousMap:
    return make_fab_map(obj, obj, _vars(obj))


def zero_map(src: InfObject, dst: InfObject) -> FabulousMap:
    """The constant map onto the base point of ``dst``."""
    return make_fab_map(src, dst, [_zero(src)] * dst.num_vars)


def _target(k: int, into: str) -> InfObject:
    if into == "D(k)":
        return D_m(k)
    if into == "D^k":
        return D_pow(k)
    raise BadParams(f"'into' must be 'D(k)' or 'D^k', not {into!r}")


def _plus_D():
    (x,) = _vars(D)
    return make_fab_map(D, D_m(2), [x, x])


def _zero_D():
    return zero_map(D, POINT)


def _neg_D():
    (x,) = _vars(D)
    return make_fab_map(D, D, [-x])


def _scale_D(xi=None):
    if xi is None:
        raise BadParams("scale_D needs a scalar 'xi'")
    (x,) = _vars(D)
    return make_fab_map(D, D, [x * as_scalar(xi)])


def _incl(i=None, k=2, into="D(k)"):
    if i is None or not 1 <= i <= k:
        raise BadParams(f"incl needs 1 <= i <= k, got i={i}, k={k}")
    (x,) = _vars(D)
    return make_fab_map(D, _target(k, into), [x if j == i else _zero(D) for j in range(1, k + 1)])


def _proj(src=None, i=None):
    """``(d_1..d_k) -> d_i`` into ``D``."""
    if src is None or i is None or not 1 <= i <= src.num_vars:
        raise BadParams("proj needs a source object and a coordinate 1 <= i <= num_vars")
    return make_fab_map(src, D, [_vars(src)[i - 1]])


def _proj_block(src=None, keep=None):
    """Projection of a product onto the sub-product of the blocks listed in ``keep``."""
    if src is None or keep is None:
        raise BadParams("proj_block needs 'src' and the block indices 'keep'")
    keep = list(keep)
    if any(not 0 <= b < len(src.blocks) for b in keep):
        raise BadParams(f"block indices {keep} out of range for {src.name}")
    xs = _vars(src)
    offsets = src.block_offsets()
    comps = []
    for b in keep:
        m = src.blocks[b][0]
        comps.extend(xs[offsets[b]:offsets[b] + m])
    return make_fab_map(src, InfObject([src.blocks[b] for b in keep]), comps)


def _eps12():
    d1, d2 = _vars(D_m(2))
    return make_fab_map(D_m(2), D_m(3), [d1, d2, d2])


def _eps23():
    d1, d2 = _vars(D_m(2))
    return make_fab_map(D_m(2), D_m(3), [d1, d1, d2])


def _swap_tau():
    d1, d2 = _vars(D_m(2))
    return make_fab_map(D_m(2), D_m(2), [d2, d1])


def _diag(k=None, into="D(k)"):
    if k is None or k < 1:
        raise BadParams("diag needs k >= 1")
    (x,) = _vars(D)
    return make_fab_map(D, _target(k, into), [x] * k)


def _mult():
    d1, d2 = _vars(D_pow(2))
    return make_fab_map(D_pow(2), D, [d1 * d2])


def _comm_quad():
    d1, d2 = _vars(D_pow(2))
    return make_fab_map(D_pow(2), D_pow(4), [d1, d2, -d1, -d2])


def _d2_in_dsq():
    return make_fab_map(D_m(2), D_pow(2), _vars(D_m(2)))


def _lincomb(xi1=None, xi2=None):
    """``(d1, d2) -> xi1*d1 + xi2*d2`` from ``D(2)`` to ``D``."""
    if xi1 is None or xi2 is None:
        raise BadParams("lincomb needs 'xi1' and 'xi2'")
    d1, d2 = _vars(D_m(2))
    return make_fab_map(D_m(2), D, [d1 * as_scalar(xi1) + d2 * as_scalar(xi2)])


def _scale_D2(xi=None):
    """``(d1, d2) -> (xi*d1, xi*d2)`` on ``D(2)``."""
    if xi is None:
        raise BadParams("scale_D2 needs a scalar 'xi'")
    d1, d2 = _vars(D_m(2))
    xi = as_scalar(xi)
    return make_fab_map(D_m(2), D_m(2), [d1 * xi, d2 * xi])


_STD: Dict[str, Callable[..., FabulousMap]] = {
    "plus_D": _plus_D,
    "zero_D": _zero_D,
    "neg_D": _neg_D,
    "scale_D": _scale_D,
    "incl": _incl,
    "proj": _proj,
    "proj_block": _proj_block,
    "eps12": _eps12,
    "eps23": _eps23,
    "swap_tau": _swap_tau,
    "diag": _diag,
    "mult": _mult,
    "comm_quad": _comm_quad,
    "d2_in_dsq": _d2_in_dsq,
    "lincomb": _lincomb,
    "scale_D2": _scale_D2,
}


def std_map(name: str, **params) -> FabulousMap:
    """Look up a named map; parameters are passed as keywords (e.g. ``xi=3``)."""
    try:
        builder = _STD[name]
    except KeyError:
        raise UnknownName(f"no standard map named {name!r}") from None
    try:
        return builder(**params)
    except TypeError as exc:
        raise BadParams(f"{name}: {exc}") from None


def std_map_names():
    return sorted(_STD)
