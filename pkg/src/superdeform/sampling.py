"""Seeded random generators and the randomized algebra-law suite.

Everything takes an explicit ``random.Random`` so runs are reproducible from
a seed; the CLI exposes the suite through ``verify algebra --seed N``.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .contact import ContactElement, jacobi_defect, poisson
from .grassmann import Parity, SuperFunction, XPoly, monomials
from .operators import DiffOperator
from .reports import VerificationReport

__all__ = [
    "random_xpoly", "random_superfunction", "random_homogeneous",
    "random_operator", "random_cochain1", "random_params_dict",
    "run_algebra_suite",
]

_DENOMS = (1, 1, 1, 2, 3)


def _rand_scalar(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-4, 4), rng.choice(_DENOMS))


def random_xpoly(rng: random.Random, max_degree: int) -> XPoly:
    n = rng.randint(0, max_degree + 1)
    return XPoly(tuple(_rand_scalar(rng) for _ in range(n)))


def random_superfunction(rng: random.Random, max_degree: int,
                         parity=None) -> SuperFunction:
    f0 = f1 = f2 = f12 = XPoly.zero()
    if parity in (None, Parity.EVEN):
        f0 = random_xpoly(rng, max_degree)
        f12 = random_xpoly(rng, max_degree)
    if parity in (None, Parity.ODD):
        f1 = random_xpoly(rng, max_degree)
        f2 = random_xpoly(rng, max_degree)
    return SuperFunction(f0, f1, f2, f12)


def random_homogeneous(rng: random.Random, max_degree: int) -> SuperFunction:
    par = Parity(rng.randint(0, 1))
    f = random_superfunction(rng, max_degree, par)
    if f.is_zero():
        return SuperFunction.theta(1) if par else SuperFunction.one()
    return f


def random_operator(rng: random.Random, source_weight, target_weight,
                    max_order: int, max_degree: int,
                    parity=None) -> DiffOperator:
    par = Parity(rng.randint(0, 1)) if parity is None else Parity(parity)
    terms = {}
    for _ in range(rng.randint(1, 4)):
        midx = (rng.randint(0, max_order), rng.randint(0, 1), rng.randint(0, 1))
        coeff_par = Parity((par + midx[1] + midx[2]) % 2)
        f = random_superfunction(rng, max_degree, coeff_par)
        if f.is_zero():
            continue
        terms[midx] = terms[midx] + f if midx in terms else f
    return DiffOperator(source_weight, target_weight, terms)


def random_cochain1(rng: random.Random, source_weight, target_weight,
                    max_order: int, max_degree: int, parity=Parity.EVEN):
    from .cohomology import Cochain1
    from .contact import BASIS_ORDER, BASIS_PARITY
    values = {}
    for label in BASIS_ORDER:
        vp = Parity((parity + BASIS_PARITY[label]) % 2)
        values[label] = random_operator(rng, source_weight, target_weight,
                                        max_order, max_degree, vp)
    return Cochain1(source_weight, target_weight, parity, values)


def random_params_dict(rng: random.Random, m: int, K: int,
                       lo: int = -2, hi: int = 2) -> dict:
    """Dense random coefficient families for the resonant case 2d = m."""
    fams = {"a": {}, "b": {}, "c": {}, "d_": {}, "e": {}}
    for k in range(m - K, m + 1):
        for fam in ("a", "b"):
            v = rng.randint(lo, hi)
            if v:
                fams[fam][k] = Fraction(v)
    for k in range(1, m + 1):
        for fam in ("c", "d_", "e"):
            v = rng.randint(lo, hi)
            if v:
                fams[fam][k] = Fraction(v)
    return fams


def run_algebra_suite(seed: int = 0, cases: int = 1000) -> VerificationReport:
    """Exhaustive and randomized algebra laws at a fixed seed.

    Exhaustive on monomials x^p * theta-slot, p <= 8: eta_i o eta_i = -d/dx,
    eta_1 eta_2 + eta_2 eta_1 = 0, d_i o d_i = 0.  Randomized (`cases` each):
    supercommutativity, associativity, graded Leibniz for d_i and eta_i,
    graded antisymmetry and Jacobi for the bracket.
    """
    rng = random.Random(seed)
    report = VerificationReport(f"algebra laws (seed={seed}, cases={cases})")

    bad = 0
    for f in monomials(8):
        for i in (1, 2):
            if f.eta_bar(i).eta_bar(i) != -f.d_x():
                bad += 1
            if f.d_theta(i).d_theta(i):
                bad += 1
        if f.eta_bar(1).eta_bar(2) + f.eta_bar(2).eta_bar(1):
            bad += 1
    report.add("exhaustive monomial identities (p <= 8)", bad == 0, failures=bad)

    bad = 0
    for _ in range(cases):
        f = random_homogeneous(rng, 6)
        g = random_homogeneous(rng, 6)
        sign = -1 if (f.parity() and g.parity()) else 1
        if f * g != (g * f).scale(sign):
            bad += 1
    report.add("supercommutativity", bad == 0, failures=bad)

    bad = 0
    for _ in range(cases):
        f = random_superfunction(rng, 6)
        g = random_superfunction(rng, 6)
        h = random_superfunction(rng, 6)
        if (f * g) * h != f * (g * h):
            bad += 1
    report.add("associativity", bad == 0, failures=bad)

    bad = 0
    for _ in range(cases):
        f = random_homogeneous(rng, 5)
        g = random_superfunction(rng, 5)
        sign = -1 if f.parity() else 1
        for i in (1, 2):
            if (f * g).d_theta(i) != f.d_theta(i) * g + (f * g.d_theta(i)).scale(sign):
                bad += 1
            if (f * g).eta_bar(i) != f.eta_bar(i) * g + (f * g.eta_bar(i)).scale(sign):
                bad += 1
        if (f * g).d_x() != f.d_x() * g + f * g.d_x():
            bad += 1
    report.add("graded Leibniz (d_theta, eta, d_x)", bad == 0, failures=bad)

    bad = 0
    for _ in range(cases):
        f = ContactElement(random_homogeneous(rng, 4))
        g = ContactElement(random_homogeneous(rng, 4))
        sign = -1 if (f.parity and g.parity) else 1
        if poisson(f, g).f + poisson(g, f).f.scale(sign):
            bad += 1
    report.add("graded antisymmetry of the bracket", bad == 0, failures=bad)

    bad = 0
    for _ in range(max(1, cases // 5)):
        f = ContactElement(random_homogeneous(rng, 4))
        g = ContactElement(random_homogeneous(rng, 4))
        h = ContactElement(random_homogeneous(rng, 4))
        if not jacobi_defect(f, g, h).is_zero():
            bad += 1
    report.add("graded Jacobi on random triples", bad == 0, failures=bad)

    return report
