"""Shared oracles.  Everything here is computed with sympy or by brute force,
never with the library's own arithmetic."""

import itertools
import random
from fractions import Fraction

import pytest
import sympy as sp

from weilcalc.liecalc import random_field
from weilcalc.poly import Poly


def to_sympy(p: Poly, symbols):
    return sum(
        (sp.Rational(int(c.numerator), int(c.denominator)) * sp.prod([s ** e for s, e in zip(symbols, m)])
         for m, c in p.terms.items()),
        sp.Integer(0),
    )


def from_sympy(expr, symbols) -> Poly:
    sp_poly = sp.Poly(sp.expand(expr), *symbols)
    terms = {tuple(m): Fraction(int(c.p), int(c.q)) for m, c in sp_poly.terms()}
    return Poly(len(symbols), terms)


def frac(r) -> Fraction:
    """A sympy rational as a Fraction (mpq and sympy numbers do not compare)."""
    r = sp.Rational(r)
    return Fraction(int(r.p), int(r.q))


def rat(c):
    return sp.Rational(int(c.numerator), int(c.denominator))


def xs(n):
    return sp.symbols(f"x1:{n + 1}")


def oracle_bracket(f, g):
    """``sum_j f_j dg_i/dx_j - g_j df_i/dx_j`` computed with sympy's sparse polynomials."""
    n = len(f)
    x = xs(n)

    def sym(p):
        terms = {m: rat(c) for m, c in p.terms.items()}
        return sp.Poly.from_dict(terms, *x, domain=sp.QQ) if terms else sp.Poly(0, *x, domain=sp.QQ)

    F = [sym(p) for p in f]
    G = [sym(p) for p in g]
    out = []
    for i in range(n):
        e = sp.Poly(0, *x, domain=sp.QQ)
        for j in range(n):
            e = e + F[j] * G[i].diff(x[j]) - G[j] * F[i].diff(x[j])
        terms = {tuple(m): Fraction(int(c.numerator), int(c.denominator)) for m, c in e.terms() if c != 0}
        out.append(Poly(n, terms))
    return out


def brute_force_basis(num_vars, gens):
    """Standard monomials by scanning a box large enough to contain all of them."""
    if num_vars == 0:
        return [()]
    bound = [max(g[i] for g in gens if sum(g) == g[i]) for i in range(num_vars)]
    out = []
    for m in itertools.product(*(range(b) for b in bound)):
        if not any(all(a >= b for a, b in zip(m, g)) for g in gens):
            out.append(m)
    return out


def field_corpus(count, seed=0, dims=(1, 2, 3)):
    """Seeded pairs of random fields: degree <= 3, numerators and denominators <= 9."""
    rng = random.Random(seed)
    pairs = []
    for _ in range(count):
        n = rng.choice(dims)
        pairs.append((random_field(rng, n), random_field(rng, n)))
    return pairs


@pytest.fixture(scope="session")
def corpus():
    return field_corpus(100)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(line)
