"""Random inputs shared by the test modules."""

import random
from fractions import Fraction
from itertools import combinations

from poisson_kit.forms import KChain, KForm
from poisson_kit.poly import Gaussian, Polynomial, monomials_of_degree
from poisson_kit import poisson as ps


def rand_coeff(rng, gaussian=False):
    c = Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2, 3]))
    if gaussian and rng.random() < 0.5:
        return Gaussian(c, rng.randint(-2, 2))
    return c


def rand_poly(ring, rng, max_deg=2, terms=3, gaussian=False, degrees=None) -> Polynomial:
    degrees = list(range(max_deg + 1)) if degrees is None else list(degrees)
    out = {}
    for _ in range(terms):
        d = rng.choice(degrees)
        m = rng.choice(monomials_of_degree(ring.n, d))
        out[m] = out.get(m, 0) + rand_coeff(rng, gaussian)
    return Polynomial.from_terms(ring, out)


def rand_form(ring, k, rng, max_deg=2, terms=2, density=0.6, cls=KForm, gaussian=False):
    coeffs = {}
    for idx in combinations(range(ring.n), k):
        if rng.random() < density:
            coeffs[idx] = rand_poly(ring, rng, max_deg, terms, gaussian)
    return cls(ring, k, coeffs)


def rand_chain(ring, k, rng, max_deg=2, terms=2, density=0.6):
    return rand_form(ring, k, rng, max_deg, terms, density, cls=KChain)


def example_structures():
    """Named Poisson structures used across the suite (n <= 4)."""
    return {
        "sl2": ps.sl2(),
        "so3": ps.so3(),
        "aff1": ps.aff1(),
        "plane_u1u2": ps.plane_structure("u1*u2"),
        "plane_sq": ps.plane_structure("u1^2 + u2^2"),
        "canonical_plane": ps.plane_structure("1"),
        "zero3": ps.zero_structure(3),
        "cotangent2": ps.canonical_cotangent(2),
        "magnetic2": ps.magnetic_cotangent(2, {(0, 1): "q1^2 + q2"}),
    }


def rng(seed=0):
    return random.Random(seed)
