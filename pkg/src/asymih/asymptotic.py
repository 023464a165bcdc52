"""Asymptotic (non-properness) set of polynomial maps C^2 -> C^2.

Candidates come from elimination: for each source coordinate x_j the
resultant R_j = Res_{x_other}(F1 - y1, F2 - y2) bounds x_j on a fibre, and a
root can only run off to infinity where its leading coefficient in x_j
vanishes.  Candidates are then certified with explicit monomial arcs or
refuted at random sample points.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arcs import INF, MonomialArc, arc_limit, escape_cone_check, lowest_order_face
from .elim import resultant, solve_points, squarefree_factors, univariate_roots
from .gaussrat import GaussRat, ONE, ZERO, as_gauss
from .poly import Poly, PolyMap, jacobian_det

__all__ = [
    "TARGET_VARS",
    "CERTIFIED",
    "CANDIDATE",
    "REFUTED",
    "PROPER",
    "NON_PROPER",
    "UNKNOWN",
    "NotGenericallyFinite",
    "Witness",
    "Component",
    "AlgebraicSet",
    "fiber_resultants",
    "jelonek_candidates",
    "candidate_exponents",
    "certify_point",
    "sample_points",
    "jelonek_set",
    "is_proper",
    "uniruled_witness",
    "critical_values",
]

TARGET_VARS = ("y1", "y2")

CERTIFIED, CANDIDATE, REFUTED = "certified", "candidate", "refuted"
PROPER, NON_PROPER, UNKNOWN = "proper", "non_proper", "unknown"

_STATUS_RANK = {REFUTED: 0, CANDIDATE: 1, CERTIFIED: 2}


class NotGenericallyFinite(ValueError):
    pass


@dataclass(frozen=True)
class Witness:
    arc: MonomialArc
    target: tuple

    def verify(self, F: PolyMap) -> bool:
        return arc_limit(F, self.arc) == tuple(self.target)

    def to_json(self):
        return {"arc": self.arc.to_json(), "target": [c.to_json() for c in self.target],
                "target_text": "(" + ", ".join(str(c) for c in self.target) + ")"}


@dataclass
class Component:
    equations: tuple
    status: str = CANDIDATE
    witnesses: list = field(default_factory=list)
    samples: list = field(default_factory=list)
    note: str = ""

    @property
    def poly(self) -> Poly:
        return self.equations[0]

    def is_curve(self) -> bool:
        return len(self.equations) == 1 and not self.equations[0].is_constant()

    def contains(self, point) -> bool:
        return all(not e(*point) for e in self.equations)

    def key(self):
        return (len(self.equations), tuple((e.degree(), str(e)) for e in self.equations))

    def to_json(self):
        return {
            "equations": [str(e) for e in self.equations],
            "status": self.status,
            "witnesses": [w.to_json() for w in self.witnesses],
            "samples": self.samples,
            "note": self.note,
        }


@dataclass
class AlgebraicSet:
    ambient_vars: tuple = TARGET_VARS
    components: list = field(default_factory=list)

    def sort(self):
        self.components.sort(key=Component.key)
        return self

    def by_status(self, status: str) -> list:
        return [c for c in self.components if c.status == status]

    def is_empty(self) -> bool:
        return not self.components

    def find(self, poly: Poly):
        target = poly.with_vars(self.ambient_vars).monic()
        for c in self.components:
            if len(c.equations) == 1 and c.poly.monic() == target:
                return c
        return None

    def to_json(self):
        return {"ambient_vars": list(self.ambient_vars),
                "components": [c.to_json() for c in self.components]}


# -- elimination ------------------------------------------------------------

def _check_plane_map(F: PolyMap):
    if F.n != 2 or len(F.source_vars) != 2:
        raise NotImplementedError("only maps C^2 -> C^2 are supported")
    clash = set(F.source_vars) & set(TARGET_VARS)
    if clash:
        raise ValueError(f"source variables {sorted(clash)} clash with target coordinates")


def fiber_resultants(F: PolyMap) -> tuple:
    """(R_1, R_2): R_j = Res_{x_other}(F1 - y1, F2 - y2) in (x_j, y1, y2)."""
    _check_plane_map(F)
    ring = F.source_vars + TARGET_VARS
    g1 = F[0].with_vars(ring) - Poly.variable("y1", ring)
    g2 = F[1].with_vars(ring) - Poly.variable("y2", ring)
    x1, x2 = F.source_vars
    r1 = resultant(g1, g2, x2).with_vars((x1,) + TARGET_VARS)
    r2 = resultant(g1, g2, x1).with_vars((x2,) + TARGET_VARS)
    return r1, r2


def _generic_finiteness(F: PolyMap):
    if jacobian_det(F).is_zero():
        raise NotGenericallyFinite(f"{F} has identically vanishing Jacobian")
    rs = fiber_resultants(F)
    if all(r.is_zero() for r in rs):
        raise NotGenericallyFinite(f"both fibre resultants of {F} vanish")
    return rs


def jelonek_candidates(F: PolyMap) -> AlgebraicSet:
    """Irreducible factors of lc_1 * lc_2 as candidate components."""
    rs = _generic_finiteness(F)
    lcs = []
    for xj, r in zip(F.source_vars, rs):
        if r.is_zero() or r.degree_in(xj) == 0:
            continue
        lcs.append(r.leading_coeff_in(xj).with_vars(TARGET_VARS))
    seen = []
    for lc in lcs:
        for h in squarefree_factors(lc):
            if h not in seen:
                seen.append(h)
    return AlgebraicSet(TARGET_VARS, [Component((h,)) for h in seen]).sort()


# -- arc search ---------------------------------------------------------------

def candidate_exponents(F: PolyMap, y0: Sequence, max_exp: int) -> list:
    """Exponent pairs passing the Newton-polygon cancellation test, in search order.

    For G_i = F_i - y0_i the lowest t-order under the weight q must be
    positive, or attained by at least two support points so the lowest
    terms can cancel.
    """
    y0 = [as_gauss(v) for v in y0]
    gs = [c - v for c, v in zip(F.components, y0)]
    out = []
    rng = range(-max_exp, max_exp + 1)
    for q in itertools.product(rng, repeat=len(F.source_vars)):
        if min(q) >= 0:
            continue
        ok = True
        for g in gs:
            if g.is_zero():
                continue
            m, face = lowest_order_face(g, q)
            if m > 0:
                continue
            if len(face) < 2:
                ok = False
                break
        if ok:
            out.append(q)
    out.sort(key=lambda q: (max(abs(v) for v in q), sum(abs(v) for v in q), tuple(-v for v in q)))
    return out


_COEFF_VARS = ("c1", "c2")


def _arc_equations(F: PolyMap, y0, q) -> list:
    """Polynomials in (c1, c2) whose common zeros give F(gamma) -> y0."""
    eqs = []
    for comp, v in zip(F.components, y0):
        g = comp - v
        by_order: dict = {}
        for e, c in g.terms.items():
            k = sum(a * w for a, w in zip(e, q))
            if k > 0:
                continue
            by_order.setdefault(k, {})[e] = c
        for k in sorted(by_order):
            eqs.append(Poly(_COEFF_VARS, by_order[k]))
    return eqs


def certify_point(F: PolyMap, y0: Sequence, max_exp: int = 4):
    """A monomial arc escaping to infinity whose image tends to ``y0``, or None.

    None is a refusal of the bounded search, not a proof that ``y0`` lies
    outside the asymptotic set.
    """
    if max_exp < 1:
        raise ValueError("max_exp must be at least 1")
    y0 = tuple(as_gauss(v) for v in y0)
    if len(y0) != F.n:
        raise ValueError("target point has the wrong dimension")
    for q in candidate_exponents(F, y0, max_exp):
        eqs = _arc_equations(F, y0, q)
        for c in solve_points(eqs, _COEFF_VARS, nonzero=(True, True), limit=1):
            arc = MonomialArc(q, c)
            if arc_limit(F, arc) == y0:
                return Witness(arc, y0)
    return None


# -- sampling -------------------------------------------------------------------

def _random_rational(rng: random.Random) -> GaussRat:
    return GaussRat(Fraction(rng.randint(-12, 12), rng.randint(1, 4)))


def sample_points(h: Poly, n: int, rng: random.Random, max_tries: int = 60) -> list:
    """Up to ``n`` distinct Q(i)-points of the plane curve h = 0.

    Each try intersects the curve with a random rational line (alternating
    vertical, horizontal and slanted) and keeps the rational intersection
    points; irrational ones are skipped.
    """
    u, v = h.vars if len(h.vars) == 2 else TARGET_VARS
    h = h.with_vars((u, v))
    pts: list = []
    s = Poly.variable("s", ("s",))
    for k in range(max_tries):
        if len(pts) >= n:
            break
        r = _random_rational(rng)
        kind = k % 3
        if kind == 0:
            line = (Poly.constant(r, ("s",)), s)
        elif kind == 1:
            line = (s, Poly.constant(r, ("s",)))
        else:
            slope = _random_rational(rng)
            line = (s, s * slope + r)
        restricted = h.subs({u: line[0], v: line[1]}).with_vars(("s",))
        if restricted.is_zero():
            t = _random_rational(rng)
            roots = [t]
        elif restricted.is_constant():
            continue
        else:
            roots = [rt for rt, _ in univariate_roots(restricted, "s")[0]]
        for t in roots:
            pt = (line[0](t), line[1](t))
            if pt not in pts and not h(*pt):
                pts.append(pt)
    return pts[:n]


def _point_text(pt) -> str:
    return "(" + ", ".join(str(c) for c in pt) + ")"


def _escape_status(prims, y0) -> str:
    """'escape', 'bounded' or 'inconclusive' from content-free fibre resultants."""
    verdicts = []
    for xj, p in prims:
        if p is None:
            verdicts.append("inconclusive")
            continue
        spec = p.eval_partial(dict(zip(TARGET_VARS, y0)))
        if spec.is_zero():
            verdicts.append("inconclusive")
            continue
        lc = p.leading_coeff_in(xj)(**{xj: ZERO, **dict(zip(TARGET_VARS, y0))})
        verdicts.append("bounded" if lc else "escape")
    if "escape" in verdicts:
        return "escape"
    if all(v == "bounded" for v in verdicts):
        return "bounded"
    return "inconclusive"


def _primitive_along(r: Poly, h: Poly):
    if r.is_zero():
        return None
    h = h.with_vars(r.vars) if set(h.used_vars()) <= set(r.vars) else h
    while h.divides(r):
        r = r.div_exact(h)
    return r


def jelonek_set(F: PolyMap, samples: int = 3, max_exp: int = 4, seed: int = 0) -> AlgebraicSet:
    """Candidates upgraded to ``certified`` by arcs or ``refuted`` at sample points."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    cand = jelonek_candidates(F)
    rs = fiber_resultants(F)
    for comp in cand.components:
        h = comp.poly
        rng = random.Random(f"{seed}|{h}")
        pts = sample_points(h, samples, rng)
        prims = [(xj, _primitive_along(r, h)) for xj, r in zip(F.source_vars, rs)]
        bounded_everywhere = bool(pts)
        for pt in pts:
            w = certify_point(F, pt, max_exp)
            entry = {"point": _point_text(pt)}
            if w is not None:
                if not w.verify(F) or not escape_cone_check(F, w.arc):
                    raise AssertionError(f"unsound witness {w.arc} for {F}")
                comp.witnesses.append(w)
                entry["outcome"] = "witness"
                entry["arc"] = str(w.arc)
                bounded_everywhere = False
            else:
                esc = _escape_status(prims, pt)
                entry["outcome"] = "refused"
                entry["fiber_escape"] = esc
                if esc != "bounded":
                    bounded_everywhere = False
            comp.samples.append(entry)
        if comp.witnesses:
            comp.status = CERTIFIED
        elif bounded_everywhere:
            comp.status = REFUTED
        else:
            comp.status = CANDIDATE
            if not pts:
                comp.note = "no rational sample points found"
    return cand.sort()


def is_proper(F: PolyMap, samples: int = 3, max_exp: int = 4, seed: int = 0) -> str:
    S = jelonek_set(F, samples, max_exp, seed)
    return verdict_of(S)


def verdict_of(S: AlgebraicSet) -> str:
    if S.by_status(CERTIFIED):
        return NON_PROPER
    if S.by_status(CANDIDATE):
        return UNKNOWN
    return PROPER


# -- rational curves through points -------------------------------------------

def uniruled_witness(S: AlgebraicSet, component, point, param: str = "s"):
    """Polynomial parametrisation (phi1, phi2) of a line or parabola through ``point``.

    Returns None ("unknown") for degree >= 3 or conics without a polynomial
    parametrisation.
    """
    if isinstance(component, int):
        component = S.components[component]
    if isinstance(component, Poly):
        found = S.find(component)
        component = found if found is not None else Component((component,), CERTIFIED)
    if component.status != CERTIFIED:
        raise ValueError("uniruledness witnesses are only produced for certified components")
    h = component.poly.with_vars(S.ambient_vars)
    p = tuple(as_gauss(c) for c in point)
    if h(*p):
        raise ValueError(f"point {_point_text(p)} is not on {h}")
    u, v = S.ambient_vars
    s = Poly.variable(param, (param,))
    d = h.degree()
    gu = h.derivative(u)(*p)
    gv = h.derivative(v)(*p)
    if d == 1:
        direction = (-h.terms.get((0, 1), ZERO), h.terms.get((1, 0), ZERO))
        return tuple(s * dj + pj for dj, pj in zip(direction, p))
    if d != 2:
        return None
    a = h.terms.get((2, 0), ZERO)
    b = h.terms.get((1, 1), ZERO)
    c = h.terms.get((0, 2), ZERO)
    if b * b - a * c * 4:
        return None  # quadratic part not a square: no point at infinity of multiplicity 2
    w = (-b / (a * 2), ONE) if a else (ONE, ZERO)
    vel = (gv, -gu)
    if not any(vel):
        return None
    quad = a * vel[0] * vel[0] + b * vel[0] * vel[1] + c * vel[1] * vel[1]
    slope_w = gu * w[0] + gv * w[1]
    if not slope_w:
        return None
    lam = -quad / slope_w
    phi = tuple(s * s * (lam * wj) + s * vj + pj for wj, vj, pj in zip(w, vel, p))
    if not h.subs({u: phi[0], v: phi[1]}).is_zero():
        return None
    return phi


# -- critical values ----------------------------------------------------------------

def critical_values(F: PolyMap, samples: int = 4, seed: int = 0) -> AlgebraicSet:
    """A set containing K0(F) = F(Sing F), with components certified by forward images.

    Each irreducible factor g of the Jacobian is eliminated against
    F1 - y1 and F2 - y2.  A component is certified when F maps a rational
    point of g = 0 onto it, and refuted when sampled points of g = 0 never
    land on it.
    """
    _check_plane_map(F)
    jac = jacobian_det(F)
    if jac.is_zero():
        raise NotGenericallyFinite(f"{F} has identically vanishing Jacobian")
    out: dict = {}
    x, y = F.source_vars
    ring = F.source_vars + TARGET_VARS
    g1 = F[0].with_vars(ring) - Poly.variable("y1", ring)
    g2 = F[1].with_vars(ring) - Poly.variable("y2", ring)
    for g in squarefree_factors(jac):
        gr = g.with_vars(ring)
        e, o = (x, y) if g.degree_in(x) > 0 else (y, x)
        a = resultant(g1, gr, e)
        b = resultant(g2, gr, e)
        comps = []
        if a.degree_in(o) > 0 or b.degree_in(o) > 0:
            r = resultant(a, b, o).with_vars(TARGET_VARS)
            if r.is_zero():
                continue
            comps = [(h,) for h in squarefree_factors(r)]
        else:
            fa = squarefree_factors(a.with_vars(TARGET_VARS))
            fb = squarefree_factors(b.with_vars(TARGET_VARS))
            comps = [(p, q) for p in fa for q in fb]
        rng = random.Random(f"{seed}|{g}")
        src = sample_points(g.with_vars(F.source_vars), samples, rng)
        images = [F(*pt) for pt in src]
        for eqs in comps:
            hits = [(pt, im) for pt, im in zip(src, images) if all(not h(*im) for h in eqs)]
            if hits:
                status = CERTIFIED
            elif src:
                status = REFUTED
            else:
                status = CANDIDATE
            key = tuple(str(h) for h in eqs)
            comp = out.get(key)
            if comp is None:
                comp = out[key] = Component(eqs, status)
            elif _STATUS_RANK[status] > _STATUS_RANK[comp.status]:
                comp.status = status
            for pt, im in hits:
                comp.samples.append({"preimage": _point_text(pt), "point": _point_text(im),
                                     "singular_factor": str(g)})
            if status == REFUTED and not comp.note:
                comp.note = "spurious elimination factor"
    return AlgebraicSet(TARGET_VARS, list(out.values())).sort()
