"""Sparse multivariate polynomials over Q(i).

A :class:`Poly` carries an ordered tuple of variable names and a map from
exponent vectors to :class:`~asymih.gaussrat.GaussRat` coefficients.  Zero
coefficients are never stored.  Binary operations on polynomials with
different variable tuples first merge the tuples (left operand's order,
then the new names of the right operand in order).
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil
from typing import Iterable, Mapping, Sequence

from .gaussrat import GaussRat, ONE, ZERO, as_gauss

__all__ = ["Poly", "PolyMap", "NEG_INF", "LojBound", "lojasiewicz_bound", "jacobian_det"]


class _NegInf:
    """Degree of the zero polynomial.

    Orders below every integer; refuses arithmetic so it can't leak into
    degree sums unnoticed.
    """

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "-inf"

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("asymih.NEG_INF")

    def _no_arith(self, *_):
        raise ArithmeticError("arithmetic on the degree of the zero polynomial")

    __add__ = __radd__ = __sub__ = __rsub__ = __mul__ = __rmul__ = _no_arith


NEG_INF = _NegInf()


def _order_key(exp: tuple) -> tuple:
    # graded lex: total degree first, then lex on the exponent vector
    return (sum(exp), exp)


class Poly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, object] | None = None):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError(f"repeated variable names in {vars}")
        n = len(vars)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not match variables {vars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent {exp}")
            c = as_gauss(c)
            if c:
                clean[exp] = clean.get(exp, ZERO) + c
                if not clean[exp]:
                    del clean[exp]
        self.vars = vars
        self.terms = clean
        self._hash = None

    @classmethod
    def _make(cls, vars: tuple, terms: dict) -> "Poly":
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c, vars: Sequence[str] = ()) -> "Poly":
        vars = tuple(vars)
        c = as_gauss(c)
        return cls._make(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def variable(cls, name: str, vars: Sequence[str] | None = None) -> "Poly":
        vars = tuple(vars) if vars is not None else (name,)
        if name not in vars:
            raise ValueError(f"{name!r} not among {vars}")
        exp = tuple(1 if v == name else 0 for v in vars)
        return cls._make(vars, {exp: ONE})

    @classmethod
    def zero(cls, vars: Sequence[str] = ()) -> "Poly":
        return cls._make(tuple(vars), {})

    # -- variable bookkeeping ---------------------------------------------
    def with_vars(self, vars: Sequence[str]) -> "Poly":
        """Re-express in ``vars``; every variable actually used must be present."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        used = self.used_vars()
        missing = [v for v in used if v not in vars]
        if missing:
            raise ValueError(f"variables {missing} not in target ring {vars}")
        pos = [self.vars.index(v) if v in self.vars else None for v in vars]
        terms = {}
        for exp, c in self.terms.items():
            terms[tuple(exp[j] if j is not None else 0 for j in pos)] = c
        return Poly._make(vars, terms)

    def used_vars(self) -> tuple:
        return tuple(v for j, v in enumerate(self.vars) if any(e[j] for e in self.terms))

    def _unified(self, other: "Poly"):
        if self.vars == other.vars:
            return self, other
        vars = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.with_vars(vars), other.with_vars(vars)

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.constant(as_gauss(other), self.vars)

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> GaussRat:
        return self.terms.get((0,) * len(self.vars), ZERO)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    # -- degrees ------------------------------------------------------------
    def degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: str):
        if not self.terms:
            return NEG_INF
        if var not in self.vars:
            return 0
        j = self.vars.index(var)
        return max(e[j] for e in self.terms)

    def __len__(self):
        return len(self.terms)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        a, b = self._unified(other)
        terms = dict(a.terms)
        for exp, c in b.terms.items():
            s = terms.get(exp)
            if s is None:
                terms[exp] = c
            else:
                s = s + c
                if s:
                    terms[exp] = s
                else:
                    del terms[exp]
        return Poly._make(a.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._make(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_gauss(other)
            if not c:
                return Poly.zero(self.vars)
            return Poly._make(self.vars, {e: v * c for e, v in self.terms.items()})
        a, b = self._unified(other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        terms: dict = {}
        get = terms.get
        for e1, c1 in b.terms.items():
            for e2, c2 in a.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                prev = get(e)
                terms[e] = c1 * c2 if prev is None else prev + c1 * c2
        return Poly._make(a.vars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Poly.constant(ONE, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        return self * as_gauss(c)

    def leading_term(self):
        """(exponent, coefficient) of the graded-lex largest term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=_order_key)
        return exp, self.terms[exp]

    def div_exact(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises ``ArithmeticError`` otherwise."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        a, b = self._unified(other)
        if b.is_constant():
            return a * b.constant_term().inverse()
        lexp, lc = b.leading_term()
        inv = lc.inverse()
        rem = dict(a.terms)
        quot = {}
        bterms = list(b.terms.items())
        while rem:
            rexp = max(rem, key=_order_key)
            qexp = tuple(x - y for x, y in zip(rexp, lexp))
            if any(e < 0 for e in qexp):
                raise ArithmeticError("division is not exact")
            qc = rem[rexp] * inv
            quot[qexp] = qc
            for e, c in bterms:
                t = tuple(x + y for x, y in zip(e, qexp))
                v = rem.get(t, ZERO) - c * qc
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return Poly._make(a.vars, quot)

    def divides(self, other: "Poly") -> bool:
        try:
            other.div_exact(self)
        except ArithmeticError:
            return False
        return True

    # -- structure ----------------------------------------------------------
    def homogeneous_component(self, d: int) -> "Poly":
        return Poly._make(self.vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def initial_form(self) -> "Poly":
        """Top-degree homogeneous part."""
        if not self.terms:
            raise ValueError("the zero polynomial has no initial form")
        return self.homogeneous_component(self.degree())

    def coeffs_in(self, var: str) -> dict:
        """Map k -> coefficient of var^k, each a Poly in the same ring."""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        j = self.vars.index(var)
        out: dict = {}
        for e, c in self.terms.items():
            k = e[j]
            out.setdefault(k, {})[e[:j] + (0,) + e[j + 1:]] = c
        return {k: Poly._make(self.vars, t) for k, t in out.items()}

    def leading_coeff_in(self, var: str) -> "Poly":
        cs = self.coeffs_in(var)
        if not cs:
            return Poly.zero(self.vars)
        return cs[max(cs)]

    def derivative(self, var: str) -> "Poly":
        if var not in self.vars:
            return Poly.zero(self.vars)
        j = self.vars.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[j]:
                terms[e[:j] + (e[j] - 1,) + e[j + 1:]] = c * e[j]
        return Poly._make(self.vars, terms)

    # -- evaluation ---------------------------------------------------------
    def __call__(self, *point, **named) -> GaussRat:
        """Evaluate at a full point (positional in ``vars`` order, or by name)."""
        if point:
            if len(point) == 1 and isinstance(point[0], (list, tuple)):
                point = tuple(point[0])
            if len(point) != len(self.vars):
                raise ValueError(f"expected {len(self.vars)} coordinates")
            vals = [as_gauss(v) for v in point]
        else:
            vals = [as_gauss(named[v]) if v in named else None for v in self.vars]
        total = ZERO
        powers = [dict() for _ in vals]
        for e, c in self.terms.items():
            t = c
            for j, k in enumerate(e):
                if k:
                    if vals[j] is None:
                        raise ValueError(f"no value for variable {self.vars[j]!r}")
                    pj = powers[j].get(k)
                    if pj is None:
                        pj = powers[j][k] = vals[j] ** k
                    t = t * pj
            total = total + t
        return total

    def subs(self, mapping: Mapping[str, object]) -> "Poly":
        """Substitute polynomials (or scalars) for variables.

        The result lives in the union of the remaining variables and the
        variables of the substituted polynomials; substituted names are dropped
        when they no longer occur.
        """
        images = {}
        for v, val in mapping.items():
            if v not in self.vars:
                continue
            images[v] = val if isinstance(val, Poly) else Poly.constant(as_gauss(val))
        keep = tuple(v for v in self.vars if v not in images)
        ring = keep
        for img in images.values():
            ring = ring + tuple(v for v in img.vars if v not in ring)
        images = {v: img.with_vars(ring) for v, img in images.items()}
        keep_pos = [(self.vars.index(v), ring.index(v)) for v in keep]
        sub_pos = [(self.vars.index(v), images[v]) for v in images]
        cache: dict = {}
        result = Poly.zero(ring)
        for e, c in self.terms.items():
            base = [0] * len(ring)
            for src, dst in keep_pos:
                base[dst] = e[src]
            t = Poly._make(ring, {tuple(base): c})
            for src, img in sub_pos:
                k = e[src]
                if k:
                    key = (src, k)
                    pw = cache.get(key)
                    if pw is None:
                        pw = cache[key] = img ** k
                    t = t * pw
            result = result + t
        return result

    def eval_partial(self, values: Mapping[str, object]) -> "Poly":
        """Fix some variables at scalar values; the variable tuple is kept."""
        pos = {self.vars.index(v): as_gauss(x) for v, x in values.items() if v in self.vars}
        terms: dict = {}
        for e, c in self.terms.items():
            t = c
            ne = list(e)
            for j, x in pos.items():
                if e[j]:
                    t = t * x ** e[j]
                    ne[j] = 0
            ne = tuple(ne)
            s = terms.get(ne, ZERO) + t
            if s:
                terms[ne] = s
            else:
                terms.pop(ne, None)
        return Poly._make(self.vars, terms)

    def univariate_coeffs(self, var: str) -> list:
        """Dense coefficient list (constant first) of a polynomial in ``var`` only."""
        others = [v for v in self.used_vars() if v != var]
        if others:
            raise ValueError(f"polynomial involves {others} besides {var!r}")
        if not self.terms:
            return []
        deg = self.degree_in(var)
        out = [ZERO] * (deg + 1)
        for k, c in self.coeffs_in(var).items():
            out[k] = c.constant_term()
        return out

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self * self.leading_term()[1].inverse()

    def content_normalized(self) -> "Poly":
        """Scalar multiple with leading coefficient 1, for canonical comparison."""
        return self.monic()

    # -- comparison / hashing -------------------------------------------------
    def _canon(self):
        used = self.used_vars()
        idx = [self.vars.index(v) for v in used]
        return frozenset(
            (tuple((used[k], e[j]) for k, j in enumerate(idx) if e[j]), c) for e, c in self.terms.items()
        )

    def __eq__(self, other):
        if isinstance(other, Poly):
            if self.vars == other.vars:
                return self.terms == other.terms
            return self._canon() == other._canon()
        try:
            c = as_gauss(other)
        except TypeError:
            return NotImplemented
        return self.is_constant() and self.constant_term() == c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._canon())
        return self._hash

    # -- printing -------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: _order_key(ec[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for k, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                v if p == 1 else f"{v}^{p}" for v, p in zip(self.vars, e) if p
            )
            neg, body = _coeff_body(c)
            if mono:
                body = mono if body == "1" else f"{body}*{mono}"
            if k == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r}, vars={self.vars})"


def _coeff_body(c: GaussRat):
    """(negative?, printed magnitude) so that terms join with +/-."""
    re, im = c.re, c.im
    if not im:
        return re < 0, str(abs(re))
    if not re:
        mag = abs(im)
        return im < 0, "i" if mag == 1 else f"{mag}*i"
    if re < 0 and im < 0:
        return True, f"({-c})"
    return False, f"({c})"


class PolyMap:
    """A polynomial map given by its components over common source variables."""

    __slots__ = ("components", "source_vars")

    def __init__(self, components: Iterable[Poly], source_vars: Sequence[str] | None = None):
        comps = list(components)
        if not comps:
            raise ValueError("a polynomial map needs at least one component")
        if source_vars is None:
            source_vars = comps[0].vars
            for c in comps[1:]:
                source_vars = source_vars + tuple(v for v in c.vars if v not in source_vars)
        source_vars = tuple(source_vars)
        self.components = tuple(c.with_vars(source_vars) for c in comps)
        self.source_vars = source_vars

    @property
    def n(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, k):
        return self.components[k]

    def __call__(self, *point):
        return tuple(c(*point) for c in self.components)

    def compose(self, inner: "PolyMap") -> "PolyMap":
        """self o inner (inner's components substituted for self's variables)."""
        if len(inner.components) != len(self.source_vars):
            raise ValueError("dimension mismatch in composition")
        mapping = dict(zip(self.source_vars, inner.components))
        return PolyMap([c.subs(mapping).with_vars(inner.source_vars) for c in self.components],
                       inner.source_vars)

    def initial_forms(self) -> tuple:
        return tuple(c.initial_form() for c in self.components)

    def __eq__(self, other):
        return isinstance(other, PolyMap) and self.source_vars == other.source_vars and \
            self.components == other.components

    def __hash__(self):
        return hash((self.source_vars, self.components))

    def __str__(self):
        return "F=(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self):
        return f"PolyMap({str(self)!r})"


def jacobian_det(F: PolyMap) -> Poly:
    """Determinant of the formal Jacobian matrix (dF_i/dx_j)."""
    n = len(F.source_vars)
    if F.n != n:
        raise ValueError(f"Jacobian determinant needs a square map, got {F.n} components in {n} variables")
    rows = [[c.derivative(v) for v in F.source_vars] for c in F.components]
    return _det_expand(rows, F.source_vars)


def _det_expand(rows, vars):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = Poly.zero(vars)
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det_expand(minor, vars)
        total = total + term if j % 2 == 0 else total - term
    return total


class LojBound:
    """Exact growth bound |f(x)| <= c * (1 + |x|^2)^p.

    Values are measured with |a + bi| <= |a| + |b|, and |x|^2 is the sum of
    the squared moduli of the coordinates.
    """

    __slots__ = ("c", "p")

    def __init__(self, c: Fraction, p: int):
        if c < 0:
            raise ValueError("bound constant must be non-negative")
        self.c = Fraction(c)
        self.p = int(p)

    def holds_at(self, f: Poly, point: Sequence) -> bool:
        val = f(*point).magnitude_bound()
        sq = sum((as_gauss(x).norm() for x in point), Fraction(0))
        return val <= self.c * (1 + sq) ** self.p

    def __eq__(self, other):
        return isinstance(other, LojBound) and (self.c, self.p) == (other.c, other.p)

    def __repr__(self):
        return f"LojBound(c={self.c}, p={self.p})"


def lojasiewicz_bound(f: Poly) -> LojBound:
    if f.is_zero():
        return LojBound(Fraction(0), 0)
    # |x_j|_1 <= sqrt(2) |x_j|, so a monomial of degree k is bounded by
    # 2^(k/2) (1 + |x|^2)^(k/2) in the measured magnitude
    p = ceil(f.degree() / 2)
    c = sum((coef.magnitude_bound() for coef in f.terms.values()), Fraction(0))
    return LojBound(c * 2 ** p, p)
