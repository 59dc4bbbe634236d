"""Seeded random generators for exact test data."""

from __future__ import annotations

import itertools
import random
from typing import List

from .poly import Poly, Scalar
from .weil import WeilAlgebra, WeilElement


def random_fraction(rng: random.Random, bound: int = 9, nonzero: bool = False) -> Scalar:
    """Numerator in ``[-bound, bound]``, denominator in ``[1, bound]``."""
    while True:
        c = Scalar(rng.randint(-bound, bound), rng.randint(1, bound))
        if c or not nonzero:
            return c


def random_poly(rng: random.Random, nvars: int, max_degree: int = 3, bound: int = 9,
                density: float = 0.5) -> Poly:
    """A random polynomial of total degree at most ``max_degree``."""
    terms = {}
    for mono in itertools.product(range(max_degree + 1), repeat=nvars):
        if sum(mono) <= max_degree and rng.random() < density:
            terms[mono] = random_fraction(rng, bound)
    return Poly(nvars, terms)


def random_polys(rng: random.Random, count: int, nvars: int, **kw) -> List[Poly]:
    return [random_poly(rng, nvars, **kw) for _ in range(count)]


def random_element(rng: random.Random, algebra: WeilAlgebra, bound: int = 9) -> WeilElement:
    return algebra.from_vector([random_fraction(rng, bound) for _ in range(algebra.dim)])
