"""Builders for the triangulations used by the corpus.

Every builder returns a :class:`SimplicialComplex` with sorted vertex
labels, so results are reproducible and can be dumped to JSON verbatim.
"""

from __future__ import annotations

import itertools
from typing import Mapping, Sequence

from .topology import SimplicialComplex, _maximal_of

__all__ = [
    "simplex",
    "sphere",
    "torus",
    "projective_plane",
    "pinched_torus",
    "cone",
    "suspension",
    "product",
    "glue",
    "disk",
]


def simplex(n: int) -> SimplicialComplex:
    """The closed n-simplex with its boundary sphere marked as ``boundary``."""
    top = tuple(range(n + 1))
    bd = list(itertools.combinations(top, n))
    return SimplicialComplex([top], n + 1, {"boundary": bd}, "boundary")


def sphere(n: int) -> SimplicialComplex:
    """Boundary of the (n+1)-simplex."""
    return SimplicialComplex(list(itertools.combinations(range(n + 2), n + 1)), n + 2)


def torus() -> SimplicialComplex:
    """Minimal 7-vertex torus."""
    tops = set()
    for i in range(7):
        tops.add(tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))))
        tops.add(tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))))
    return SimplicialComplex(sorted(tops), 7)


def projective_plane() -> SimplicialComplex:
    """Minimal 6-vertex real projective plane."""
    tops = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
            (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5)]
    return SimplicialComplex(tops, 6)


def pinched_torus() -> SimplicialComplex:
    """Sphere with its two poles identified (vertex 0 is the pinch point).

    Vertices 1-3 and 4-6 form two parallel triangles joined by a
    triangulated annulus; each triangle is coned off to vertex 0.
    """
    a, b = (1, 2, 3), (4, 5, 6)
    tops = []
    for k in range(3):
        a0, a1 = a[k], a[(k + 1) % 3]
        b0, b1 = b[k], b[(k + 1) % 3]
        tops += [(0, a0, a1), (0, b0, b1), (a0, a1, b1), (a0, b0, b1)]
    return SimplicialComplex([tuple(sorted(t)) for t in tops], 7, {"pinch": [(0,)]})


def cone(X: SimplicialComplex, keep: bool = True) -> SimplicialComplex:
    """Cone with apex V (the new last vertex); base subcomplexes are kept."""
    apex = X.n_vertices
    tops = [s + (apex,) for s in X.maximal_simplices()]
    subs = {name: _maximal_of(sims) for name, sims in X.subcomplexes.items()} if keep else {}
    subs["apex"] = [(apex,)]
    subs["base"] = X.maximal_simplices()
    return SimplicialComplex(tops, apex + 1, subs)


def disk() -> SimplicialComplex:
    """Triangulated 2-disk: cone over the boundary of a triangle (apex 3)."""
    D = cone(sphere(1), keep=False)
    return SimplicialComplex(D.maximal_simplices(), 4,
                             {"center": [(3,)], "boundary": sphere(1).maximal_simplices()}, "boundary")


def suspension(X: SimplicialComplex) -> SimplicialComplex:
    """Suspension with poles V and V+1 (named subcomplex ``poles``)."""
    n, s = X.n_vertices, X.n_vertices + 1
    tops = [t + (n,) for t in X.maximal_simplices()] + [t + (s,) for t in X.maximal_simplices()]
    return SimplicialComplex(tops, n + 2, {"poles": [(n,), (s,)]})


def _staircases(p: tuple, q: tuple, width: int):
    """Staircase triangulation of the prism on sorted simplices p, q."""
    a, b = len(p) - 1, len(q) - 1
    for moves in itertools.combinations(range(a + b), a):
        i = j = 0
        path = [p[0] * width + q[0]]
        for step in range(a + b):
            if step in moves:
                i += 1
            else:
                j += 1
            path.append(p[i] * width + q[j])
        yield tuple(path)


def product(X: SimplicialComplex, Y: SimplicialComplex) -> SimplicialComplex:
    """Staircase triangulation of X x Y; vertex (u, v) gets label u*|V(Y)| + v.

    Subcomplexes are carried as ``name x Y`` (prefixed ``L.``) and
    ``X x name`` (prefixed ``R.``).  A boundary marker is produced from the
    factors' markers.
    """
    w = Y.n_vertices
    tops = [path for p in X.maximal_simplices() for q in Y.maximal_simplices()
            for path in _staircases(p, q, w)]

    def prod_of(xs, ys):
        return [path for p in xs for q in ys for path in _staircases(p, q, w)]

    subs = {}
    for name, sims in X.subcomplexes.items():
        subs["L." + name] = prod_of(_maximal_of(sims), Y.maximal_simplices())
    for name, sims in Y.subcomplexes.items():
        subs["R." + name] = prod_of(X.maximal_simplices(), _maximal_of(sims))
    boundary = None
    parts = []
    if X.boundary:
        parts += subs["L." + X.boundary]
    if Y.boundary:
        parts += subs["R." + Y.boundary]
    if parts:
        subs["boundary"] = parts
        boundary = "boundary"
    return SimplicialComplex(tops, X.n_vertices * w, subs, boundary)


def glue(X: SimplicialComplex, Y: SimplicialComplex, identify: Mapping[int, int],
         subcomplexes: Mapping[str, Sequence] | None = None, boundary: bool = True):
    """Disjoint union of X and Y with Y's vertex v identified to X's vertex identify[v].

    Y's remaining vertices are numbered after X's.  Returns (complex, map
    of Y-vertices to new labels).  Raises if the identification would
    create a degenerate simplex.  With ``boundary`` set, the new boundary
    marker consists of the codimension-one faces lying in exactly one top
    simplex.
    """
    ymap = {}
    nxt = X.n_vertices
    for v in range(Y.n_vertices):
        if v in identify:
            ymap[v] = identify[v]
        else:
            ymap[v] = nxt
            nxt += 1
    tops = list(X.maximal_simplices())
    for t in Y.maximal_simplices():
        u = tuple(sorted(ymap[v] for v in t))
        if len(set(u)) != len(u):
            raise ValueError(f"gluing collapses simplex {list(t)}")
        tops.append(u)
    subs = dict(subcomplexes or {})
    Z = SimplicialComplex(tops, nxt, subs)
    if boundary:
        n = Z.dim
        cof: dict = {}
        for t in Z.simplices[n]:
            for j in range(n + 1):
                f = t[:j] + t[j + 1:]
                cof[f] = cof.get(f, 0) + 1
        bd = [f for f, c in cof.items() if c == 1]
        if bd:
            subs["boundary"] = bd
            Z = SimplicialComplex(tops, nxt, subs, "boundary")
    return Z, ymap
