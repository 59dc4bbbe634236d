"""Weil algebras presented as monomial quotients of polynomial rings.

Every algebra here has the form ``Q[X_1..X_m] / I`` with ``I`` generated by
monomials and containing a pure power of each ``X_i``.  Normal form modulo
such an ideal is plain deletion of the monomials lying in ``I``, so all
arithmetic is exact and finite.
"""

from __future__ import annotations

import itertools
from typing import Dict, FrozenSet, Iterable, Mapping, Sequence, Tuple

from .errors import (
    AlgebraMismatch,
    NonNilpotentVariable,
    VariableCountMismatch,
    ZeroDegreeGenerator,
)
from .poly import as_scalar, divides, grlex_key, is_scalar, Monomial, Poly, Scalar
from .report import VerificationReport


class WeilAlgebra:
    """A finite-dimensional monomial quotient ``Q[X_1..X_m] / (ideal_gens)``.

    Instances are immutable and compared structurally.  ``basis`` lists the
    standard monomials in ascending graded-lex order; ``basis[0]`` is always
    the constant monomial.
    """

    def __init__(self, num_vars: int, ideal_gens: Iterable[Sequence[int]]):
        gens = frozenset(tuple(int(e) for e in g) for g in ideal_gens)
        for g in gens:
            if len(g) != num_vars:
                raise VariableCountMismatch(f"generator {g} does not have {num_vars} exponents")
            if any(e < 0 for e in g):
                raise ValueError(f"generator {g} has a negative exponent")
            if sum(g) == 0:
                raise ZeroDegreeGenerator("the constant monomial cannot generate the ideal")
        bounds = []
        for i in range(num_vars):
            pure = [g[i] for g in gens if sum(g) == g[i]]
            if not pure:
                raise NonNilpotentVariable(f"no pure power of X{i + 1} lies in the ideal")
            bounds.append(min(pure))

        self.num_vars = num_vars
        self.ideal_gens: FrozenSet[Monomial] = gens
        candidates = itertools.product(*(range(b) for b in bounds))
        self.basis: Tuple[Monomial, ...] = tuple(
            sorted((m for m in candidates if not self.in_ideal(m)), key=grlex_key)
        )
        self.index: Dict[Monomial, int] = {m: i for i, m in enumerate(self.basis)}
        self._mul = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def in_ideal(self, mono: Monomial) -> bool:
        return any(divides(g, mono) for g in self.ideal_gens)

    def mul_table(self):
        """``table[i][j]`` is the basis index of ``basis[i]*basis[j]`` or ``None`` if it vanishes."""
        if self._mul is None:
            table = []
            for a in self.basis:
                row = []
                for b in self.basis:
                    m = tuple(x + y for x, y in zip(a, b))
                    row.append(self.index.get(m))
                table.append(row)
            self._mul = table
        return self._mul

    def _key(self):
        return (self.num_vars, self.ideal_gens)

    def __eq__(self, other):
        if not isinstance(other, WeilAlgebra):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        from .expr import format_monomial

        gens = ", ".join(format_monomial(g, "X") for g in sorted(self.ideal_gens, key=grlex_key))
        return f"WeilAlgebra(num_vars={self.num_vars}, ideal=({gens}), dim={self.dim})"

    # -- element constructors -------------------------------------------

    def zero(self) -> "WeilElement":
        return WeilElement(self, (Scalar(0),) * self.dim)

    def one(self) -> "WeilElement":
        return self.scalar(1)

    def scalar(self, c) -> "WeilElement":
        coeffs = [Scalar(0)] * self.dim
        coeffs[0] = as_scalar(c)
        return WeilElement(self, tuple(coeffs))

    def gen(self, i: int) -> "WeilElement":
        """The class of ``X_{i+1}`` (0-based index)."""
        mono = tuple(1 if j == i else 0 for j in range(self.num_vars))
        return self.basis_element(mono)

    def gens(self):
        return [self.gen(i) for i in range(self.num_vars)]

    def basis_element(self, mono: Monomial) -> "WeilElement":
        coeffs = [Scalar(0)] * self.dim
        idx = self.index.get(tuple(mono))
        if idx is not None:
            coeffs[idx] = Scalar(1)
        return WeilElement(self, tuple(coeffs))

    def element(self, coeffs: Mapping[Monomial, object]) -> "WeilElement":
        """Build an element from a monomial-to-coefficient map, reducing as needed."""
        return normal_form(Poly(self.num_vars, coeffs), self)

    def from_vector(self, vec: Sequence) -> "WeilElement":
        if len(vec) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(vec)}")
        return WeilElement(self, tuple(as_scalar(c) for c in vec))


class WeilElement:
    """An element of a :class:`WeilAlgebra`, stored densely on the basis."""

    __slots__ = ("algebra", "vec")

    def __init__(self, algebra: WeilAlgebra, vec: Tuple[Scalar, ...]):
        self.algebra = algebra
        self.vec = vec

    @property
    def coeffs(self) -> Dict[Monomial, Scalar]:
        """Non-zero coefficients keyed by basis monomial."""
        return {m: c for m, c in zip(self.algebra.basis, self.vec) if c}

    def coeff(self, mono: Monomial) -> Scalar:
        idx = self.algebra.index.get(tuple(mono))
        return self.vec[idx] if idx is not None else Scalar(0)

    def to_poly(self) -> Poly:
        return Poly._raw(self.algebra.num_vars, self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.vec)

    def __bool__(self):
        return not self.is_zero()

    def _check(self, other: "WeilElement"):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatch("operands live in different Weil algebras")

    def _lift(self, other):
        if isinstance(other, WeilElement):
            self._check(other)
            return other
        return self.algebra.scalar(other)

    def __eq__(self, other):
        if isinstance(other, WeilElement):
            return self.algebra == other.algebra and self.vec == other.vec
        if is_scalar(other):
            return self == self.algebra.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.algebra, self.vec))

    def __add__(self, other):
        other = self._lift(other)
        return WeilElement(self.algebra, tuple(a + b for a, b in zip(self.vec, other.vec)))

    __radd__ = __add__

    def __neg__(self):
        return WeilElement(self.algebra, tuple(-a for a in self.vec))

    def __sub__(self, other):
        other = self._lift(other)
        return WeilElement(self.algebra, tuple(a - b for a, b in zip(self.vec, other.vec)))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, s) -> "WeilElement":
        s = as_scalar(s)
        return WeilElement(self.algebra, tuple(a * s for a in self.vec))

    def __mul__(self, other):
        if not isinstance(other, WeilElement):
            return self.scale(other)
        self._check(other)
        table = self.algebra.mul_table()
        out = [Scalar(0)] * self.algebra.dim
        other_nz = [(j, b) for j, b in enumerate(other.vec) if b]
        for i, a in enumerate(self.vec):
            if not a:
                continue
            row = table[i]
            for j, b in other_nz:
                k = row[j]
                if k is not None:
                    out[k] += a * b
        return WeilElement(self.algebra, tuple(out))

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.algebra.one()
        for _ in range(k):
            result = result * self
        return result

    def __repr__(self):
        from .expr import format_poly

        return f"WeilElement({format_poly(self.to_poly(), prefix='X')})"


def make_algebra(num_vars: int, ideal_gens: Iterable[Sequence[int]]) -> WeilAlgebra:
    """Build ``Q[X_1..X_num_vars] / (ideal_gens)``; raises if some variable is not nilpotent."""
    return WeilAlgebra(num_vars, ideal_gens)


def normal_form(poly: Poly, algebra: WeilAlgebra) -> WeilElement:
    """Reduce ``poly`` modulo the algebra's monomial ideal."""
    if poly.nvars != algebra.num_vars:
        raise VariableCountMismatch(
            f"polynomial has {poly.nvars} variables, algebra has {algebra.num_vars}"
        )
    coeffs = [Scalar(0)] * algebra.dim
    index = algebra.index
    for m, c in poly.terms.items():
        idx = index.get(m)
        if idx is not None:
            coeffs[idx] += c
    return WeilElement(algebra, tuple(coeffs))


def augment(a: WeilElement) -> Scalar:
    """Coefficient of the constant monomial: the projection ``W -> Q``."""
    return a.vec[0]


def tensor(A: WeilAlgebra, B: WeilAlgebra) -> WeilAlgebra:
    """``A (x) B``: B's variables are renumbered after A's and the ideals are joined."""
    pad_a = (0,) * B.num_vars
    pad_b = (0,) * A.num_vars
    gens = [g + pad_a for g in A.ideal_gens] + [pad_b + g for g in B.ideal_gens]
    return WeilAlgebra(A.num_vars + B.num_vars, gens)


def tensor_all(algebras: Iterable[WeilAlgebra]) -> WeilAlgebra:
    result = WeilAlgebra(0, ())
    for a in algebras:
        result = tensor(result, a)
    return result


def truncated(num_vars: int, order: int) -> WeilAlgebra:
    """``Q[X_1..X_m]`` modulo all monomials of degree ``order + 1``."""
    gens = [m for m in itertools.product(range(order + 2), repeat=num_vars) if sum(m) == order + 1]
    return WeilAlgebra(num_vars, gens)


def standard_catalog(max_dim: int = 27) -> Dict[str, WeilAlgebra]:
    """Named algebras used throughout the test-suite, up to ``max_dim``."""
    cat = {"W_1": WeilAlgebra(0, ())}
    for n in range(1, 6):
        cat[f"W_D_{n}"] = truncated(1, n)
    for m in range(2, 5):
        for n in range(1, 3):
            cat[f"W_D({m})_{n}"] = truncated(m, n)
    d = truncated(1, 1)
    for k in range(2, 5):
        cat[f"W_D^{k}"] = tensor_all([d] * k)
    d2 = truncated(1, 2)
    cat["W_D_2^3"] = tensor_all([d2] * 3)
    cat["W_D(2)(x)W_D"] = tensor(truncated(2, 1), d)
    cat["W_D_2(x)W_D(2)_2"] = tensor(d2, truncated(2, 2))
    cat["W_mixed"] = WeilAlgebra(2, [(3, 0), (0, 2), (2, 1)])
    return {k: v for k, v in cat.items() if v.dim <= max_dim}


def ring_op(kind: str, a: WeilElement, b=None) -> WeilElement:
    """Dispatch ``add``, ``mul``, ``neg`` or ``scale`` by name."""
    if kind == "add":
        return a + a._lift(b)
    if kind == "mul":
        return a * a._lift(b)
    if kind == "neg":
        return -a
    if kind == "scale":
        return a.scale(b)
    raise ValueError(f"unknown ring operation {kind!r}")


RING_LAWS = (
    "associative", "commutative", "distributive", "unit",
    "augment_multiplicative", "augment_additive", "nilpotent_basis",
    "normal_form_idempotent", "normal_form_linear",
)


def verify_ring_axioms(A: WeilAlgebra, trials: int = 100, seed: int = 0) -> VerificationReport:
    """Exact ring, augmentation and normal-form laws on random elements of ``A``."""
    import random

    from .sampling import random_fraction, random_element, random_poly

    rng = random.Random(seed)
    failures = dict.fromkeys(RING_LAWS, 0)
    report = VerificationReport(False, expected_dim=A.dim, actual_dim=len(A.basis))
    nil = all(
        (A.basis_element(m) ** A.dim).is_zero() for m in A.basis if sum(m) > 0
    )
    if not nil:
        failures["nilpotent_basis"] += 1
    for _ in range(trials):
        a, b, c = (random_element(rng, A) for _ in range(3))
        s = random_fraction(rng)
        p = random_poly(rng, A.num_vars, max_degree=3)
        q = random_poly(rng, A.num_vars, max_degree=3)
        checks = {
            "associative": (a * b) * c == a * (b * c),
            "commutative": a * b == b * a,
            "distributive": a * (b + c) == a * b + a * c,
            "unit": a * A.one() == a,
            "augment_multiplicative": augment(a * b) == augment(a) * augment(b),
            "augment_additive": augment(a + b) == augment(a) + augment(b),
            "normal_form_idempotent": normal_form(normal_form(p, A).to_poly(), A) == normal_form(p, A),
            "normal_form_linear": normal_form(p + q.scale(s), A) == normal_form(p, A) + normal_form(q, A).scale(s),
        }
        for law, ok in checks.items():
            if not ok:
                failures[law] += 1
                if report.witness is None:
                    report.witness = {"law": law, "elements": (a, b, c)}
    report.details = {law: failures[law] == 0 for law in RING_LAWS}
    report.passed = all(report.details.values())
    return report
