"""Elimination toolkit: Sylvester resultants, factoring and exact root finding.

Resultants are determinants of Sylvester matrices computed by fraction-free
(Bareiss) elimination over the polynomial ring.  Factoring and gcds over
Q(i) are delegated to SymPy's ``QQ_I`` domain.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from .gaussrat import GaussRat, ONE, ZERO, as_gauss
from .poly import Poly

__all__ = [
    "sylvester_matrix",
    "bareiss_det",
    "resultant",
    "to_sympy",
    "from_sympy",
    "factor",
    "squarefree_factors",
    "poly_gcd",
    "univariate_roots",
    "common_roots",
    "solve_points",
]


# -- resultants -----------------------------------------------------------

def sylvester_matrix(f: Poly, g: Poly, var: str):
    f, g = f._unified(g)
    m, n = f.degree_in(var), g.degree_in(var)
    fc, gc = f.coeffs_in(var), g.coeffs_in(var)
    zero = Poly.zero(f.vars)
    size = m + n
    rows = []
    for r in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[r + (m - k)] = fc.get(k, zero)
        rows.append(row)
    for r in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[r + (n - k)] = gc.get(k, zero)
        rows.append(row)
    return rows


def bareiss_det(rows, vars: Sequence[str] = ()):
    """Determinant of a square matrix with Poly entries, fraction-free."""
    n = len(rows)
    if n == 0:
        return Poly.constant(ONE, vars)
    a = [list(r) for r in rows]
    sign = 1
    prev = None
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return Poly.zero(a[0][0].vars)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                val = a[i][j] * piv
                if not aik.is_zero() and not a[k][j].is_zero():
                    val = val - aik * a[k][j]
                if prev is not None and not val.is_zero():
                    val = val.div_exact(prev)
                a[i][j] = val
            a[i][k] = Poly.zero(piv.vars)
        prev = piv
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant(f: Poly, g: Poly, var: str) -> Poly:
    """Res_var(f, g) as the Sylvester determinant; ``var`` is dropped from the ring."""
    if f.is_zero() and g.is_zero():
        raise ValueError("resultant of two zero polynomials")
    f, g = f._unified(g)
    ring = tuple(v for v in f.vars if v != var)
    if f.is_zero() or g.is_zero():
        return Poly.zero(ring)
    m, n = f.degree_in(var), g.degree_in(var)
    if m == 0:
        return (f ** n).with_vars(ring)
    if n == 0:
        return (g ** m).with_vars(ring)
    det = bareiss_det(sylvester_matrix(f, g, var), f.vars)
    return det.with_vars(ring)


# -- SymPy bridge -----------------------------------------------------------

def _sym(x: Fraction):
    return sympy.Rational(x.numerator, x.denominator)


def to_sympy(p: Poly) -> sympy.Poly:
    gens = sympy.symbols(p.vars) if p.vars else (sympy.Symbol("_c"),)
    if not p.vars:
        data = {(0,): _sym(c.re) + sympy.I * _sym(c.im) for c in p.terms.values()}
    else:
        data = {e: _sym(c.re) + sympy.I * _sym(c.im) for e, c in p.terms.items()}
    if not isinstance(gens, (tuple, list)):
        gens = (gens,)
    return sympy.Poly.from_dict(data or {(0,) * len(gens): 0}, gens, domain="QQ_I")


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def from_sympy(sp: sympy.Poly, vars: Sequence[str]) -> Poly:
    names = [str(g) for g in sp.gens]
    terms = {}
    for monom, c in sp.rep.terms():
        if not c:
            continue
        terms[monom] = GaussRat(_frac(c.x), _frac(c.y))
    if names == ["_c"]:
        return Poly.constant(terms.get((0,), ZERO), vars)
    return Poly(names, terms).with_vars(vars)


def factor(p: Poly):
    """Irreducible factors over Q(i): (unit, [(monic factor, multiplicity), ...]).

    Factors are normalised to leading coefficient 1 and sorted by their
    printed form, so the output is canonical.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.is_constant():
        return p.constant_term(), []
    unit, facs = to_sympy(p).factor_list()
    out = []
    for fs, mult in facs:
        q = from_sympy(fs, p.vars)
        if q.is_constant():
            continue
        out.append((q.monic(), mult))
    out.sort(key=lambda fm: (fm[0].degree(), str(fm[0])))
    lead = p.leading_term()[1]
    prod_lead = ONE
    for q, m in out:
        prod_lead = prod_lead * q.leading_term()[1] ** m
    return lead / prod_lead, out


def squarefree_factors(p: Poly) -> list:
    """Distinct non-constant irreducible factors (multiplicity dropped)."""
    if p.is_zero() or p.is_constant():
        return []
    return [q for q, _ in factor(p)[1]]


def poly_gcd(*polys: Poly) -> Poly:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("gcd of zero polynomials")
    ring = polys[0].vars
    for p in polys[1:]:
        ring = ring + tuple(v for v in p.vars if v not in ring)
    g = to_sympy(polys[0].with_vars(ring))
    for p in polys[1:]:
        g = g.gcd(to_sympy(p.with_vars(ring)))
    return from_sympy(g, ring).monic()


# -- exact roots ------------------------------------------------------------

def univariate_roots(p: Poly, var: str):
    """Roots in Q(i) of a univariate polynomial, with multiplicities.

    Returns (roots, n_irrational) where roots is a sorted list of
    (root, multiplicity) and n_irrational counts roots outside Q(i)
    (with multiplicity).
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has every value as a root")
    _, facs = factor(p)
    roots = []
    other = 0
    for q, mult in facs:
        d = q.degree_in(var)
        if d == 1:
            cs = q.coeffs_in(var)
            roots.append((-(cs.get(0, Poly.zero(q.vars)).constant_term()) / cs[1].constant_term(), mult))
        else:
            other += d * mult
    roots.sort(key=lambda rm: _root_key(rm[0]))
    return roots, other


def _root_key(r: GaussRat):
    return (abs(r.re) + abs(r.im), r.re, r.im)


def common_roots(polys: Sequence[Poly], var: str) -> list:
    """Common roots in Q(i) of univariate polynomials (zero polys ignored)."""
    nz = [p for p in polys if not p.is_zero()]
    if not nz:
        raise ValueError("all polynomials vanish identically")
    g = poly_gcd(*nz)
    if g.is_constant():
        return []
    return [r for r, _ in univariate_roots(g, var)[0]]


_TRIAL_VALUES = [GaussRat(v) for v in (1, -1, 2, -2, 3, -3)] + [GaussRat(0, 1), GaussRat(0, -1)]


def solve_points(polys: Sequence[Poly], vars: Sequence[str], nonzero: Sequence[bool] = (),
                 limit: int = 8):
    """Find points of Q(i)^2 on the common zero set of ``polys``.

    ``vars`` names the two unknowns; ``nonzero[j]`` demands the j-th
    coordinate be nonzero.  Curve components (factors dividing every
    equation) are probed at small trial values of one coordinate; isolated
    points come from resultant elimination.  Every returned point has been
    verified by substitution.  An empty result is not a proof that no
    solution exists.
    """
    vars = tuple(vars)
    if len(vars) != 2:
        raise ValueError("solve_points works in exactly two unknowns")
    nonzero = tuple(nonzero) + (False,) * (2 - len(nonzero))
    u, v = vars
    eqs = [p.with_vars(vars) for p in polys if not p.with_vars(vars).is_zero()]
    found: list = []

    def ok(pt):
        if any(nonzero[j] and not pt[j] for j in range(2)):
            return False
        return all(not e(*pt) for e in eqs)

    def add(pt):
        if pt not in found and ok(pt):
            found.append(pt)

    if any(e.is_constant() for e in eqs):
        return []
    if not eqs:
        return [(ONE, ONE)]

    base = eqs[0]
    for h in squarefree_factors(base):
        if all(h.divides(e) for e in eqs[1:]):
            _points_on_curve(h, u, v, add, limit)
        else:
            others = [e for e in eqs[1:] if not h.divides(e)]
            _isolated_points(h, others, u, v, add)
        if len(found) >= limit:
            break
    return found[:limit]


def _points_on_curve(h: Poly, u: str, v: str, add, limit: int):
    if h.degree_in(v) == 0:
        for r, _ in univariate_roots(h.with_vars((u,)), u)[0]:
            for t in [ONE] + _TRIAL_VALUES:
                add((r, t))
        return
    if h.degree_in(u) == 0:
        for r, _ in univariate_roots(h.with_vars((v,)), v)[0]:
            for t in [ONE] + _TRIAL_VALUES:
                add((t, r))
        return
    for t in _TRIAL_VALUES:
        hv = h.eval_partial({u: t})
        if hv.is_zero():
            continue
        for r, _ in univariate_roots(hv.with_vars((v,)), v)[0]:
            add((t, r))
    for t in _TRIAL_VALUES:
        hu = h.eval_partial({v: t})
        if hu.is_zero():
            continue
        for r, _ in univariate_roots(hu.with_vars((u,)), u)[0]:
            add((r, t))


def _isolated_points(h: Poly, others: Sequence[Poly], u: str, v: str, add):
    if h.degree_in(v) == 0:
        us = [r for r, _ in univariate_roots(h.with_vars((u,)), u)[0]]
    else:
        elim = [resultant(h, e, v) for e in others]
        elim = [r for r in elim if not r.is_zero()]
        if not elim:
            return
        us = common_roots([r.with_vars((u,)) for r in elim], u)
    for a in us:
        sub = [p.eval_partial({u: a}).with_vars((v,)) for p in [h, *others]]
        if all(s.is_zero() for s in sub):
            for t in [ONE] + _TRIAL_VALUES:
                add((a, t))
            continue
        for b in common_roots(sub, v):
            add((a, b))
