"""Independent reference computations used by the tests.

Nothing here goes through the package's own linear algebra or allowability
code: ranks and null spaces come from SymPy's DomainMatrix over QQ, and
allowability is evaluated from the definition by intersecting a simplex's
faces with the filtration members.
"""

from __future__ import annotations

import itertools

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix


def _all_faces(tops):
    out = set()
    for t in tops:
        t = tuple(sorted(t))
        for k in range(1, len(t) + 1):
            out.update(itertools.combinations(t, k))
    return out


def chain_groups(tops):
    faces = _all_faces(tops)
    dim = max(len(s) for s in faces) - 1
    return [sorted(s for s in faces if len(s) == d + 1) for d in range(dim + 1)]


def dense_boundary(groups, i, rows=None, cols=None):
    """Dense matrix of the i-th boundary, optionally restricted to row/column subsets."""
    rows = groups[i - 1] if rows is None else rows
    cols = groups[i] if cols is None else cols
    ridx = {s: k for k, s in enumerate(rows)}
    data = [[QQ(0)] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        for k in range(len(s)):
            f = s[:k] + s[k + 1:]
            if f in ridx:
                data[ridx[f]][j] = QQ((-1) ** k)
    return DomainMatrix(data, (len(rows), len(cols)), QQ)


def mat_rank(M: DomainMatrix) -> int:
    if M.shape[0] == 0 or M.shape[1] == 0:
        return 0
    return M.rank()


def betti_oracle(tops):
    g = chain_groups(tops)
    n = len(g) - 1
    r = [0] * (n + 2)
    for i in range(1, n + 1):
        r[i] = mat_rank(dense_boundary(g, i))
    return [len(g[i]) - r[i] - r[i + 1] for i in range(n + 1)]


def intersection_dim(simplex, member_faces):
    """dim of the largest face of ``simplex`` lying in the member (None if empty)."""
    s = tuple(sorted(simplex))
    for k in range(len(s), 0, -1):
        for f in itertools.combinations(s, k):
            if f in member_faces:
                return k - 1
    return None


def allowable_oracle(simplex, i, members, p, m):
    """members[j] = set of simplices of X_j (as sorted tuples)."""
    for k in range(2, m + 1):
        d = intersection_dim(simplex, members.get(m - k, set()))
        if d is not None and d > i - k + p[k - 2]:
            return False
    return True


def _nullspace_cols(M: DomainMatrix, ncols: int):
    if M.shape[0] == 0:
        return [[QQ(1) if a == b else QQ(0) for a in range(ncols)] for b in range(ncols)]
    ns = M.nullspace()
    return [list(r) for r in ns.to_list()]


def ih_oracle(tops, level_vertices, p, m=None):
    """IH ranks from the definition, dense linear algebra over QQ.

    ``level_vertices[j]`` is the vertex set of X_j for j < m (missing j
    means X_j = X_{j-1}).
    """
    g = chain_groups(tops)
    m = len(g) - 1 if m is None else m
    members = {}
    prev = set()
    for j in range(m):
        vs = set(level_vertices.get(j, ())) or None
        if vs is None:
            members[j] = prev
        else:
            members[j] = {s for d in g for s in d if set(s) <= vs}
        prev = members[j]
    allow = [[s for s in g[i] if allowable_oracle(s, i, members, p, m)] for i in range(m + 1)]
    ic = []
    for i in range(m + 1):
        A = allow[i]
        if i == 0:
            ic.append([[QQ(1) if a == b else QQ(0) for a in range(len(A))] for b in range(len(A))])
            continue
        bad = [s for s in g[i - 1] if s not in set(allow[i - 1])]
        M = dense_boundary(g, i, rows=bad, cols=A)
        ic.append(_nullspace_cols(M, len(A)) if A else [])
    ranks = [0] * (m + 2)
    for i in range(1, m + 1):
        if not ic[i]:
            continue
        D = dense_boundary(g, i, cols=allow[i])
        B = DomainMatrix([list(r) for r in ic[i]], (len(ic[i]), len(allow[i])), QQ).transpose()
        ranks[i] = mat_rank(D * B)
    return [len(ic[i]) - ranks[i] - ranks[i + 1] for i in range(m + 1)]


def sympy_poly(text, gens=("x", "y")):
    syms = sympy.symbols(gens)
    loc = {str(s): s for s in syms}
    loc["i"] = sympy.I
    return sympy.expand(sympy.sympify(text.replace("^", "**"), locals=loc))


def sympy_resultant(f_text, g_text, var, gens):
    syms = sympy.symbols(gens)
    loc = {str(s): s for s in syms}
    loc["i"] = sympy.I
    f = sympy.sympify(f_text.replace("^", "**"), locals=loc)
    g = sympy.sympify(g_text.replace("^", "**"), locals=loc)
    return sympy.expand(sympy.resultant(f, g, loc[var]))


def sympy_arc_limit(components_text, coeffs, exps, gens=("x", "y")):
    """Limit as t -> 0+ of F(c1 t^q1, c2 t^q2) via SymPy series."""
    t = sympy.Symbol("t", positive=True)
    syms = sympy.symbols(gens)
    loc = {str(s): s for s in syms}
    loc["i"] = sympy.I
    sub = {s: c * t ** q for s, c, q in zip(syms, coeffs, exps)}
    out = []
    for text in components_text:
        e = sympy.expand(sympy.sympify(text.replace("^", "**"), locals=loc).subs(sub))
        lim = sympy.limit(e, t, 0, "+")
        out.append(lim)
    return out
