"""Exact sparse linear algebra over Q.

Vectors are dicts ``index -> int`` (or ``Fraction`` for echelon output).
Column reduction is fraction-free: entries stay integral and each update
divides out the common content, so growth stays small on boundary
matrices.  Pivots are the largest nonzero row index of a column, which
makes every result independent of dict iteration order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

__all__ = ["ColumnReducer", "rank", "kernel", "rref", "image_in", "apply_columns"]


def _content(*vecs) -> int:
    g = 0
    for v in vecs:
        for x in v.values():
            g = gcd(g, x)
            if g == 1:
                return 1
    return g


def _combine(a: int, v: dict, b: int, w: dict) -> dict:
    """a*v - b*w with zeros dropped."""
    out = {k: a * x for k, x in v.items()} if a != 1 else dict(v)
    for k, y in w.items():
        val = out.get(k, 0) - b * y
        if val:
            out[k] = val
        else:
            out.pop(k, None)
    return out


class ColumnReducer:
    """Incremental integer column reduction with optional transform tracking."""

    def __init__(self, track: bool = False):
        self.track = track
        self.pivots: dict = {}     # row -> (reduced column, transform)

    def reduce(self, v: dict, t: dict | None = None):
        v = {k: x for k, x in v.items() if x}
        while v:
            r = max(v)
            hit = self.pivots.get(r)
            if hit is None:
                break
            pv, pt = hit
            a, b = pv[r], v[r]
            g = gcd(a, b)
            a, b = a // g, b // g
            if a < 0:
                a, b = -a, -b
            v = _combine(a, v, b, pv)
            if t is not None:
                t = _combine(a, t, b, pt)
            c = _content(v, t) if t is not None else _content(v)
            if c > 1:
                v = {k: x // c for k, x in v.items()}
                if t is not None:
                    t = {k: x // c for k, x in t.items()}
        return v, t

    def add(self, v: dict, label=None):
        """Reduce ``v``; store it as a new pivot if independent.

        Returns (independent?, transform) where the transform records ``v``'s
        reduced form as a combination of the labels added so far (only when
        tracking).
        """
        t = {label: 1} if self.track else None
        v, t = self.reduce(v, t)
        if v:
            self.pivots[max(v)] = (v, t)
            return True, t
        return False, t

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(cols: Iterable[dict]) -> int:
    red = ColumnReducer()
    for c in cols:
        red.add(c)
    return red.rank


def kernel(cols: Sequence[dict]) -> list:
    """Integer basis of {t : sum_j t_j cols[j] = 0}, as sparse vectors over column indices."""
    red = ColumnReducer(track=True)
    out = []
    for j, c in enumerate(cols):
        indep, t = red.add(c, j)
        if not indep:
            if t[max(t)] < 0:
                t = {k: -x for k, x in t.items()}
            out.append(t)
    return out


def rref(vectors: Iterable[dict]) -> list:
    """Reduced row echelon basis of the span (pivot = smallest index, pivot entry 1)."""
    basis: dict = {}
    for v in vectors:
        v = {k: Fraction(x) for k, x in v.items() if x}
        for p in sorted(basis):
            if p in v:
                c = v[p]
                for k, x in basis[p].items():
                    val = v.get(k, 0) - c * x
                    if val:
                        v[k] = val
                    else:
                        v.pop(k, None)
        if not v:
            continue
        p = min(v)
        inv = 1 / v[p]
        v = {k: x * inv for k, x in v.items()}
        for q, w in basis.items():
            if p in w:
                c = w[p]
                for k, x in v.items():
                    val = w.get(k, 0) - c * x
                    if val:
                        w[k] = val
                    else:
                        w.pop(k, None)
        basis[p] = v
    return [basis[p] for p in sorted(basis)]


def apply_columns(cols: Sequence[dict], vec: dict) -> dict:
    """sum_j vec[j] * cols[j]."""
    out: dict = {}
    for j, a in vec.items():
        for k, x in cols[j].items():
            val = out.get(k, 0) + a * x
            if val:
                out[k] = val
            else:
                out.pop(k, None)
    return out


def image_in(red: ColumnReducer, v: dict) -> bool:
    """Is ``v`` in the span of the columns already added to ``red``?"""
    rem, _ = red.reduce(v)
    return not rem
