"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is a tuple of non-negative exponents, one per variable.  A
:class:`Poly` maps monomials to non-zero :data:`Scalar`
(``gmpy2.mpq``) coefficients; the zero polynomial has no terms.
Multiplication and composition are delegated to FLINT.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Tuple

import flint
from gmpy2 import mpq

Monomial = Tuple[int, ...]
# exact rationals; mpq compares and hashes equal to the matching Fraction
Scalar = mpq
_MPQ = type(mpq())


def as_scalar(value) -> mpq:
    if isinstance(value, _MPQ):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass an int, Fraction or 'p/q' string")
    if isinstance(value, (int, Fraction, str)):
        return mpq(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def is_scalar(value) -> bool:
    return isinstance(value, (int, Fraction, _MPQ)) and not isinstance(value, bool)


def degree(mono: Monomial) -> int:
    return sum(mono)


def divides(a: Monomial, b: Monomial) -> bool:
    """True if monomial ``a`` divides monomial ``b``."""
    return all(x <= y for x, y in zip(a, b))


def grlex_key(mono: Monomial):
    """Ascending graded order: by degree, then x1-heavy monomials first."""
    return (sum(mono), tuple(-e for e in mono))


def unit_monomial(nvars: int, i: int, power: int = 1) -> Monomial:
    return tuple(power if j == i else 0 for j in range(nvars))


@lru_cache(maxsize=None)
def _ctx(nvars: int):
    return flint.fmpq_mpoly_ctx.get(("x", nvars), "deglex")


def _to_fmpq(c: mpq):
    return flint.fmpq(int(c.numerator), int(c.denominator))


def _from_fmpq(c) -> mpq:
    return mpq(int(c.p), int(c.q))


class Poly:
    """Immutable sparse polynomial over the rationals in ``nvars`` variables.

    Arithmetic runs on a FLINT ``fmpq_mpoly``; ``terms`` is the same data as a
    ``{monomial: mpq}`` dict, built on first use.
    """

    __slots__ = ("nvars", "_f", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        clean: Dict[Monomial, mpq] = {}
        if terms:
            for mono, c in terms.items():
                if len(mono) != nvars:
                    raise ValueError(f"monomial {mono} does not have {nvars} exponents")
                if any(e < 0 for e in mono):
                    raise ValueError(f"monomial {mono} has a negative exponent")
                c = as_scalar(c)
                if c:
                    m = tuple(mono)
                    clean[m] = clean.get(m, 0) + c
        clean = {m: c for m, c in clean.items() if c}
        self.nvars = nvars
        self._f = _ctx(nvars).from_dict({m: _to_fmpq(c) for m, c in clean.items()})
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Monomial, mpq]) -> "Poly":
        # trusted constructor: terms already normalized, zero coefficients dropped
        p = cls._wrap(nvars, _ctx(nvars).from_dict({m: _to_fmpq(c) for m, c in terms.items()}))
        p._terms = terms
        return p

    @classmethod
    def _wrap(cls, nvars: int, f) -> "Poly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._f = f
        p._terms = None
        p._hash = None
        return p

    @property
    def terms(self) -> Dict[Monomial, mpq]:
        if self._terms is None:
            self._terms = {m: _from_fmpq(c) for m, c in zip(self._f.monoms(), self._f.coeffs())}
        return self._terms

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._wrap(nvars, _ctx(nvars).from_dict({}))

    @classmethod
    def constant(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        """The i-th variable (0-based)."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        return cls._wrap(nvars, _ctx(nvars).gens()[i])

    @classmethod
    def monomial(cls, mono: Monomial, c=1) -> "Poly":
        return cls(len(mono), {tuple(mono): c})

    # -- inspection -----------------------------------------------------

    def is_zero(self) -> bool:
        return self._f.is_zero()

    def __bool__(self) -> bool:
        return not self._f.is_zero()

    def coeff(self, mono: Monomial) -> mpq:
        return self.terms.get(tuple(mono), mpq(0))

    def constant_term(self) -> mpq:
        return self.coeff((0,) * self.nvars)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if self._f.is_zero():
            return -1
        return int(self._f.total_degree())

    def monomials(self):
        """Monomials in ascending graded order."""
        return sorted(self.terms, key=grlex_key)

    def items(self):
        return ((m, self.terms[m]) for m in self.monomials())

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._f == other._f
        if is_scalar(other):
            return self == Poly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        from .expr import format_poly

        return f"Poly({self.nvars}, {format_poly(self)!r})"

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        return Poly.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        return Poly._wrap(self.nvars, self._f + other._f)

    __radd__ = __add__

    def __neg__(self):
        return Poly._wrap(self.nvars, -self._f)

    def __sub__(self, other):
        return Poly._wrap(self.nvars, self._f - self._coerce(other)._f)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, s) -> "Poly":
        s = as_scalar(s)
        if not s:
            return Poly.zero(self.nvars)
        return Poly._wrap(self.nvars, self._f * _to_fmpq(s))

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._coerce(other)
        return Poly._wrap(self.nvars, self._f * other._f)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- calculus and substitution --------------------------------------

    def diff(self, i: int) -> "Poly":
        """Partial derivative with respect to variable ``i`` (0-based)."""
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        return Poly._wrap(self.nvars, self._f.derivative(i))

    def map_monomials(self, fn, nvars: int) -> "Poly":
        """Re-index monomials through ``fn`` (used for renumbering variables)."""
        out: Dict[Monomial, mpq] = {}
        for m, c in self.terms.items():
            k = fn(m)
            out[k] = out.get(k, 0) + c
        return Poly._raw(nvars, {m: c for m, c in out.items() if c})

    def embed(self, nvars: int, offset: int = 0) -> "Poly":
        """View this polynomial in ``nvars`` variables, shifting indices by ``offset``."""
        if offset + self.nvars > nvars:
            raise ValueError("embedding does not fit")
        pad_left = (0,) * offset
        pad_right = (0,) * (nvars - offset - self.nvars)
        return Poly._raw(nvars, {pad_left + m + pad_right: c for m, c in self.terms.items()})

    def evaluate(self, values, one=None, zero=None):
        """Evaluate at ``values`` taken from any commutative ring.

        ``one`` and ``zero`` supply the ring's identities when they cannot be
        built from plain integers (e.g. Weil-algebra elements).
        """
        values = list(values)
        if len(values) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(values)}")
        if one is None:
            one = 1
        acc = zero if zero is not None else 0
        powers = [[one] for _ in values]
        for m, c in self.terms.items():
            term = None
            for i, e in enumerate(m):
                if not e:
                    continue
                cache = powers[i]
                while len(cache) <= e:
                    cache.append(cache[-1] * values[i])
                term = cache[e] if term is None else term * cache[e]
            if term is None:
                term = one
            acc = acc + term * c
        return acc

    def compose(self, args: Iterable["Poly"], nvars: int | None = None) -> "Poly":
        """Substitute polynomials for the variables.

        ``nvars`` names the variable count of the result; it is required only
        when there are no arguments to read it from.
        """
        args = list(args)
        if nvars is None:
            if not args:
                raise ValueError("nvars is required when composing a constant")
            nvars = args[0].nvars
        if len(args) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(args)}")
        if any(not isinstance(a, Poly) or a.nvars != nvars for a in args):
            raise ValueError(f"arguments must be polynomials in {nvars} variables")
        if not args:
            return Poly.constant(nvars, self.constant_term())
        return Poly._wrap(nvars, self._f.compose(*(a._f for a in args), ctx=_ctx(nvars)))
