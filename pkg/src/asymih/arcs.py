"""Monomial arcs at infinity and the directions they may escape along.

An arc ``gamma(t) = (c1 t^q1, c2 t^q2)`` with some ``q_j < 0`` leaves every
compact set as ``t -> 0+``.  Substituting it into a polynomial gives a
Laurent polynomial in ``t``; its limit is read off exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .elim import factor, poly_gcd
from .gaussrat import GaussRat, ONE, ZERO, as_gauss
from .poly import Poly, PolyMap

__all__ = [
    "INF",
    "MonomialArc",
    "DirectionSet",
    "laurent_substitute",
    "arc_limit",
    "asymptotic_directions",
    "leading_direction",
    "escape_cone_check",
    "lowest_order_face",
]


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"


INF = _Infinity()


@dataclass(frozen=True)
class MonomialArc:
    exponents: tuple
    coefficients: tuple

    def __post_init__(self):
        exps = tuple(int(q) for q in self.exponents)
        coeffs = tuple(as_gauss(c) for c in self.coefficients)
        if len(exps) != len(coeffs):
            raise ValueError("exponent and coefficient counts differ")
        if not exps or min(exps) >= 0:
            raise ValueError(f"arc with exponents {exps} does not escape to infinity")
        if any(not c for c in coeffs):
            raise ValueError("arc coefficients must be nonzero")
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "coefficients", coeffs)

    def __str__(self):
        return ", ".join(f"({c}) t^{q}" for c, q in zip(self.coefficients, self.exponents))

    def to_json(self):
        return {"exponents": list(self.exponents),
                "coefficients": [c.to_json() for c in self.coefficients],
                "text": str(self)}

    @classmethod
    def from_json(cls, doc):
        return cls(tuple(doc["exponents"]), tuple(GaussRat.from_json(c) for c in doc["coefficients"]))


def laurent_substitute(f: Poly, arc: MonomialArc) -> dict:
    """f(gamma(t)) as a map  t-exponent -> coefficient (zeros dropped)."""
    if len(f.vars) != len(arc.exponents):
        raise ValueError("arc dimension does not match the polynomial's variables")
    out: dict = {}
    for e, c in f.terms.items():
        k = sum(a * q for a, q in zip(e, arc.exponents))
        val = c
        for a, cj in zip(e, arc.coefficients):
            if a:
                val = val * cj ** a
        out[k] = out.get(k, ZERO) + val
    return {k: v for k, v in out.items() if v}


def _limit_of(series: dict):
    if any(k < 0 for k in series):
        return INF
    return series.get(0, ZERO)


def arc_limit(F: PolyMap, arc: MonomialArc) -> tuple:
    """Exact limit of F(gamma(t)) as t -> 0+, coordinate-wise (INF if divergent)."""
    return tuple(_limit_of(laurent_substitute(c, arc)) for c in F.components)


def leading_direction(arc: MonomialArc) -> tuple:
    """Projective limit of gamma(t)/|gamma(t)|: the coefficients of the most negative powers."""
    qmin = min(arc.exponents)
    return tuple(c if q == qmin else ZERO for c, q in zip(arc.coefficients, arc.exponents))


def normalize_direction(d: Sequence) -> tuple:
    d = tuple(as_gauss(x) for x in d)
    lead = next((x for x in d if x), None)
    if lead is None:
        raise ValueError("the zero vector is not a direction")
    return tuple(x / lead for x in d)


@dataclass
class DirectionSet:
    """Common projective zeros of the initial forms of a map."""

    forms: tuple
    points: list = field(default_factory=list)   # [(direction, multiplicity)]
    n_irrational: int = 0
    degenerate: bool = False

    def contains(self, d: Sequence) -> bool:
        d = tuple(as_gauss(x) for x in d)
        if not any(d):
            raise ValueError("the zero vector is not a direction")
        return all(not f(*d) for f in self.forms if not f.is_constant())

    def is_empty(self) -> bool:
        return not self.points and not self.n_irrational and not self.degenerate

    def to_json(self):
        return {
            "forms": [str(f) for f in self.forms],
            "points": [{"direction": [c.to_json() for c in d],
                        "text": "[" + ":".join(str(c) for c in d) + "]",
                        "multiplicity": m} for d, m in self.points],
            "n_irrational": self.n_irrational,
            "degenerate": self.degenerate,
        }


def asymptotic_directions(F: PolyMap) -> DirectionSet:
    """Directions a with F^_1(a) = F^_2(a) = 0 (initial forms), in P^1 over Q(i).

    Two binary forms share projective zeros exactly along their gcd, so the
    set is read off from the linear factors of that gcd; higher-degree
    irreducible factors are counted in ``n_irrational``.
    """
    if len(F.source_vars) != 2:
        raise NotImplementedError("direction sets are implemented for maps of C^2")
    if any(c.is_zero() for c in F.components):
        raise ValueError("map has a zero component")
    forms = tuple(c.initial_form() for c in F.components)
    if any(f.is_constant() for f in forms):
        return DirectionSet(forms=forms, degenerate=True)
    g = poly_gcd(*forms)
    out = DirectionSet(forms=forms)
    if g.is_constant():
        return out
    x, y = F.source_vars
    for q, mult in factor(g)[1]:
        if q.degree() == 1:
            a = q.terms.get((1, 0), ZERO)
            b = q.terms.get((0, 1), ZERO)
            out.points.append((normalize_direction((-b, a)), mult))
        else:
            out.n_irrational += q.degree() * mult
    out.points.sort(key=lambda pm: tuple((c.re, c.im) for c in pm[0]))
    return out


def escape_cone_check(F: PolyMap, arc: MonomialArc) -> bool:
    """Does the escape direction of ``arc`` lie on every non-constant initial form?

    Holds for every arc whose image converges; ``False`` signals a broken
    arc or a bug upstream.  Raises ``ValueError`` when the image diverges,
    since the statement is then vacuous.
    """
    lim = arc_limit(F, arc)
    if any(v is INF for v in lim):
        raise ValueError("arc image diverges; the cone condition only applies to convergent images")
    a = leading_direction(arc)
    return all(not f(*a) for f in (c.initial_form() for c in F.components) if not f.is_constant())


def lowest_order_face(f: Poly, exponents: Sequence[int]):
    """(minimal weighted order, support points attaining it) for weight ``exponents``."""
    if f.is_zero():
        return None, []
    orders = {e: sum(a * q for a, q in zip(e, exponents)) for e in f.terms}
    m = min(orders.values())
    return m, sorted(e for e, o in orders.items() if o == m)
