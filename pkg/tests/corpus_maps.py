"""Polynomial maps used across the asymptotic tests, with hand-derived answers."""

import random

from asymih.parse import parse_map, parse_poly
from asymih.poly import Poly, PolyMap

VARS = ("x", "y")

# map literal -> defining polynomials of the asymptotic set, derived by hand:
# for F=(x, x^a*y) the fibre over (y1, y2) is x=y1, y=y2/y1^a, which escapes
# exactly when y1 = 0; for F=(x*y, x*y^2) one has y = y2/y1, x = y1^2/y2;
# for F=(x + x^2*y^2, x*y) one has x = y1 - y2^2, so y = y2/(y1 - y2^2).
NON_PROPER_MAPS = {
    "F=(x, x*y)": ["y1"],
    "F=(x, x^2*y)": ["y1"],
    "F=(x*y, y)": ["y2"],
    "F=(x*y, x*y^2)": ["y1", "y2"],
    "F=(x + x^2*y^2, x*y)": ["y2^2 - y1"],
}

PROPER_MAPS = ["F=(x, y)", "F=(x^2, y)", "F=(x, y + x^3)", "F=(x + y^2, y)",
               "F=(x, x*y + y^2)", "F=(x^2 + y, y^3 + x)"]


def _linear(rng):
    while True:
        a, b, c, d = (rng.randint(-2, 2) for _ in range(4))
        if a * d - b * c:
            break
    e, f = rng.randint(-2, 2), rng.randint(-2, 2)
    x, y = (Poly.variable(v, VARS) for v in VARS)
    return PolyMap([x * a + y * b + e, x * c + y * d + f], VARS)


def _triangular(rng, vertical: bool):
    x, y = (Poly.variable(v, VARS) for v in VARS)
    a = rng.choice([-2, -1, 1, 2])
    b = rng.randint(-2, 2)
    if vertical:
        return PolyMap([x, y + x ** 2 * a + b], VARS)
    return PolyMap([x + y ** 2 * a + b, y], VARS)


def automorphisms(n=12, seed=2024):
    """Seeded random compositions L o T o L o T' of linear and quadratic triangular maps.

    T and T' shear in different directions, so each member has total degree 4.
    """
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        v = rng.random() < 0.5
        F = _linear(rng).compose(_triangular(rng, v).compose(_linear(rng).compose(_triangular(rng, not v))))
        out.append(F)
    return out
