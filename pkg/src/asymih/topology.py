"""Finite simplicial complexes, rational homology and pseudomanifold checks."""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import ColumnReducer, rank

__all__ = [
    "ComplexError",
    "SimplicialComplex",
    "BoundaryMatrix",
    "load_complex",
    "boundary_matrix",
    "betti",
    "euler_characteristic",
    "PMReport",
    "validate_pseudomanifold",
    "orientation",
    "barycentric_subdivision",
]


class ComplexError(ValueError):
    pass


def _faces(s: tuple):
    for k in range(1, len(s) + 1):
        yield from itertools.combinations(s, k)


class SimplicialComplex:
    """An abstract simplicial complex on vertices 0..V-1.

    ``simplices[d]`` is the sorted list of d-simplices (sorted vertex
    tuples); ``index[d]`` maps each to its position, which is the basis order
    used by boundary matrices.  Named subcomplexes are stored as sets of
    simplices closed under faces.
    """

    def __init__(self, top_simplices: Iterable[Sequence[int]], n_vertices: int | None = None,
                 subcomplexes: Mapping[str, Iterable[Sequence[int]]] | None = None,
                 boundary: str | None = None):
        tops = []
        for s in top_simplices:
            s = tuple(int(v) for v in s)
            if not s:
                raise ComplexError("empty simplex")
            if len(set(s)) != len(s):
                raise ComplexError(f"simplex {list(s)} repeats a vertex")
            if list(s) != sorted(s):
                raise ComplexError(f"simplex {list(s)} is not sorted")
            tops.append(s)
        used = {v for s in tops for v in s}
        if n_vertices is None:
            n_vertices = max(used) + 1 if used else 0
        if used and (min(used) < 0 or max(used) >= n_vertices):
            raise ComplexError(f"vertex index out of range 0..{n_vertices - 1}")
        all_s: set = set()
        for s in tops:
            if s not in all_s:
                all_s.update(_faces(s))
        all_s.update((v,) for v in range(n_vertices))
        self.n_vertices = n_vertices
        self.dim = max((len(s) - 1 for s in all_s), default=-1)
        self.simplices = [[] for _ in range(self.dim + 1)]
        for s in all_s:
            self.simplices[len(s) - 1].append(s)
        for lst in self.simplices:
            lst.sort()
        self.index = [{s: k for k, s in enumerate(lst)} for lst in self.simplices]
        self.subcomplexes: dict = {}
        for name, sims in (subcomplexes or {}).items():
            self.add_subcomplex(name, sims)
        if boundary is not None and boundary not in self.subcomplexes:
            raise ComplexError(f"boundary refers to unknown subcomplex {boundary!r}")
        self.boundary = boundary
        self._maximal = None

    # -- basic queries --------------------------------------------------------
    def add_subcomplex(self, name: str, sims: Iterable[Sequence[int]]):
        closed: set = set()
        for s in sims:
            s = tuple(sorted(int(v) for v in s))
            if not self.contains(s):
                raise ComplexError(f"subcomplex {name!r} refers to {list(s)}, which is not a simplex")
            closed.update(_faces(s))
        self.subcomplexes[name] = frozenset(closed)

    def contains(self, s: Sequence[int]) -> bool:
        s = tuple(s)
        d = len(s) - 1
        return 0 <= d <= self.dim and s in self.index[d]

    def count(self, d: int) -> int:
        return len(self.simplices[d]) if 0 <= d <= self.dim else 0

    def all_simplices(self):
        for lst in self.simplices:
            yield from lst

    def __len__(self):
        return sum(len(lst) for lst in self.simplices)

    def f_vector(self) -> list:
        return [len(lst) for lst in self.simplices]

    def maximal_simplices(self) -> list:
        if self._maximal is None:
            covered = set()
            for d in range(1, self.dim + 1):
                for s in self.simplices[d]:
                    covered.update(itertools.combinations(s, d))
            self._maximal = [s for s in self.all_simplices() if s not in covered]
        return self._maximal

    def cofaces_top(self, s: tuple) -> list:
        ss = set(s)
        return [t for t in self.maximal_simplices() if ss <= set(t)]

    def vertices_of(self, name: str) -> frozenset:
        return frozenset(s[0] for s in self.subcomplexes[name] if len(s) == 1)

    @property
    def boundary_marker(self):
        return self.subcomplexes.get(self.boundary) if self.boundary else None

    def full_subcomplex(self, vertices: Iterable[int]) -> frozenset:
        vs = set(vertices)
        return frozenset(s for s in self.all_simplices() if set(s) <= vs)

    def is_full(self, sims: Iterable[tuple]) -> bool:
        sims = frozenset(sims)
        vs = {s[0] for s in sims if len(s) == 1}
        return sims == self.full_subcomplex(vs)

    def link(self, s: Sequence[int]):
        """Link of ``s`` as a complex on relabelled vertices, plus the relabelling."""
        s = tuple(s)
        ss = set(s)
        pieces = [tuple(v for v in t if v not in ss) for t in self.maximal_simplices() if ss <= set(t)]
        pieces = [p for p in pieces if p]
        verts = sorted({v for p in pieces for v in p})
        relabel = {v: k for k, v in enumerate(verts)}
        return SimplicialComplex([tuple(relabel[v] for v in p) for p in pieces], len(verts)), verts

    # -- chains ---------------------------------------------------------------
    def boundary_columns(self, i: int) -> list:
        """Columns of the i-th boundary map as sparse {row: +-1} dicts."""
        if i < 1 or i > self.dim:
            raise ComplexError(f"boundary degree {i} outside 1..{self.dim}")
        idx = self.index[i - 1]
        cols = []
        for s in self.simplices[i]:
            col = {}
            for j in range(i + 1):
                col[idx[s[:j] + s[j + 1:]]] = -1 if j % 2 else 1
            cols.append(col)
        return cols

    def chain_boundary(self, i: int, chain: Mapping[tuple, object]) -> dict:
        """Boundary of an i-chain given as {simplex: coefficient}."""
        out: dict = {}
        for s, c in chain.items():
            if i == 0:
                continue
            for j in range(i + 1):
                f = s[:j] + s[j + 1:]
                val = out.get(f, 0) + (-c if j % 2 else c)
                if val:
                    out[f] = val
                else:
                    out.pop(f, None)
        return out

    # -- serialisation --------------------------------------------------------
    def to_doc(self) -> dict:
        doc = {"vertices": self.n_vertices,
               "top_simplices": [list(s) for s in sorted(self.maximal_simplices(), key=lambda t: (len(t), t))]}
        if self.subcomplexes:
            doc["subcomplexes"] = {name: [list(s) for s in _maximal_of(sims)]
                                   for name, sims in sorted(self.subcomplexes.items())}
        if self.boundary:
            doc["boundary"] = self.boundary
        return doc

    def dump(self) -> str:
        """Canonical text form for golden comparisons."""
        lines = [f"vertices {self.n_vertices}", "f-vector " + " ".join(map(str, self.f_vector()))]
        for s in sorted(self.maximal_simplices(), key=lambda t: (len(t), t)):
            lines.append("top " + " ".join(map(str, s)))
        for name, sims in sorted(self.subcomplexes.items()):
            for s in _maximal_of(sims):
                lines.append(f"sub {name} " + " ".join(map(str, s)))
        if self.boundary:
            lines.append(f"boundary {self.boundary}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.n_vertices == other.n_vertices and \
            self.simplices == other.simplices

    def __hash__(self):
        return hash((self.n_vertices, tuple(map(tuple, self.simplices))))

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, f={self.f_vector()})"


def _maximal_of(sims) -> list:
    sims = set(sims)
    covered = set()
    for s in sims:
        if len(s) > 1:
            covered.update(itertools.combinations(s, len(s) - 1))
    return sorted((s for s in sims if s not in covered), key=lambda t: (len(t), t))


def load_complex(doc) -> SimplicialComplex:
    """Build a complex from its document form (dict, JSON text, or path)."""
    if isinstance(doc, str):
        text = doc
        if not text.lstrip().startswith("{"):
            with open(text) as fh:
                text = fh.read()
        doc = json.loads(text)
    if "top_simplices" not in doc:
        raise ComplexError("document lacks 'top_simplices'")
    return SimplicialComplex(doc["top_simplices"], doc.get("vertices"),
                             doc.get("subcomplexes"), doc.get("boundary"))


# -- homology -------------------------------------------------------------------

@dataclass
class BoundaryMatrix:
    nrows: int
    ncols: int
    columns: list

    def to_dense(self) -> list:
        m = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                m[i][j] = Fraction(x)
        return m

    def rank(self) -> int:
        return rank(self.columns)

    def compose(self, other: "BoundaryMatrix") -> "BoundaryMatrix":
        """self * other."""
        from .linalg import apply_columns
        return BoundaryMatrix(self.nrows, other.ncols, [apply_columns(self.columns, c) for c in other.columns])

    def is_zero(self) -> bool:
        return all(not c for c in self.columns)


def boundary_matrix(X: SimplicialComplex, i: int) -> BoundaryMatrix:
    cols = X.boundary_columns(i)
    return BoundaryMatrix(X.count(i - 1), X.count(i), cols)


def _boundary_ranks(X: SimplicialComplex) -> list:
    ranks = [0] * (X.dim + 2)
    for i in range(1, X.dim + 1):
        ranks[i] = rank(X.boundary_columns(i))
    return ranks


def betti(X: SimplicialComplex) -> list:
    """Rational Betti numbers b_0..b_dim."""
    if X.dim < 0:
        return []
    r = _boundary_ranks(X)
    return [X.count(i) - r[i] - r[i + 1] for i in range(X.dim + 1)]


def euler_characteristic(X: SimplicialComplex) -> int:
    return sum((-1) ** d * n for d, n in enumerate(X.f_vector()))


# -- pseudomanifold checks --------------------------------------------------------

@dataclass
class PMReport:
    is_pure: bool
    sing_codim_ok: bool
    detected_singular_simplices: list = field(default_factory=list)
    reasons: dict = field(default_factory=dict)

    @property
    def singular_set(self) -> set:
        return set(self.detected_singular_simplices)

    @property
    def is_manifold_like(self) -> bool:
        return self.is_pure and not self.detected_singular_simplices

    def to_json(self):
        return {"is_pure": self.is_pure, "sing_codim_ok": self.sing_codim_ok,
                "detected_singular_simplices": [list(s) for s in self.detected_singular_simplices],
                "reasons": {" ".join(map(str, s)): r for s, r in self.reasons.items()}}


def _sphere_betti(k: int) -> list:
    if k == 0:
        return [2]
    return [1] + [0] * (k - 1) + [1]


def _disk_betti(k: int) -> list:
    return [1] + [0] * k


def validate_pseudomanifold(X: SimplicialComplex) -> PMReport:
    """Purity, codimension-one branching and link homology checks.

    A simplex of dimension d <= n-2 is flagged when its link does not have
    the rational homology of S^(n-d-1) (interior) or of a disk (simplices in
    the boundary marker).  Link homology is a necessary condition for
    manifold points, not a full homeomorphism test.
    """
    n = X.dim
    if n < 1:
        raise ComplexError("pseudomanifold checks need dimension >= 1")
    maximal = X.maximal_simplices()
    is_pure = all(len(s) == n + 1 for s in maximal)
    bmark = X.boundary_marker or frozenset()
    cof = {s: 0 for s in X.simplices[n - 1]}
    for t in X.simplices[n]:
        for j in range(n + 1):
            cof[t[:j] + t[j + 1:]] += 1
    singular = []
    reasons = {}
    for s, c in cof.items():
        want = 1 if s in bmark else 2
        if c != want:
            singular.append(s)
            reasons[s] = f"in {c} top simplices (expected {want})"
    for d in range(n - 1):
        k = n - d - 1
        for s in X.simplices[d]:
            L, _ = X.link(s)
            b = betti(L) if L.dim >= 0 else []
            b = b + [0] * (k + 1 - len(b))
            on_boundary = s in bmark
            want = _disk_betti(k) if on_boundary else _sphere_betti(k)
            if L.dim != k or b[:k + 1] != want or any(b[k + 1:]):
                singular.append(s)
                reasons[s] = f"link Betti {b} (expected {want})"
    singular.sort(key=lambda t: (len(t), t))
    codim_ok = all(n - (len(s) - 1) >= 2 for s in singular)
    return PMReport(is_pure, is_pure and codim_ok, singular, reasons)


def orientation(X: SimplicialComplex):
    """Coherent signs for the top simplices, or None when none exists.

    Requires every (n-1)-simplex to lie in at most two top simplices.
    """
    n = X.dim
    tops = X.simplices[n]
    owners: dict = {}
    for t in tops:
        for j in range(n + 1):
            owners.setdefault(t[:j] + t[j + 1:], []).append((t, -1 if j % 2 else 1))
    if any(len(v) > 2 for v in owners.values()):
        return None
    sign: dict = {}
    for start in tops:
        if start in sign:
            continue
        sign[start] = 1
        queue = deque([start])
        while queue:
            t = queue.popleft()
            for j in range(n + 1):
                f = t[:j] + t[j + 1:]
                for u, eps_u in owners[f]:
                    if u == t:
                        continue
                    eps_t = -1 if j % 2 else 1
                    want = -sign[t] * eps_t * eps_u
                    if u in sign:
                        if sign[u] != want:
                            return None
                    else:
                        sign[u] = want
                        queue.append(u)
    return sign


def has_boundary(X: SimplicialComplex) -> bool:
    n = X.dim
    cof: dict = {}
    for t in X.simplices[n]:
        for j in range(n + 1):
            f = t[:j] + t[j + 1:]
            cof[f] = cof.get(f, 0) + 1
    return any(c == 1 for c in cof.values()) or any(len(s) < n + 1 for s in X.maximal_simplices())


def barycentric_subdivision(X: SimplicialComplex):
    """First barycentric subdivision.

    Returns (X', labels) where ``labels[v]`` is the simplex of X whose
    barycentre is vertex v of X'.  Named subcomplexes and the boundary
    marker are carried over.
    """
    labels = sorted(X.all_simplices(), key=lambda s: (len(s), s))
    vid = {s: k for k, s in enumerate(labels)}

    def flags(top):
        out = []
        for perm in itertools.permutations(top):
            chain = [tuple(sorted(perm[:k])) for k in range(1, len(perm) + 1)]
            out.append(tuple(sorted(vid[c] for c in chain)))
        return out

    tops = set()
    for t in X.maximal_simplices():
        tops.update(flags(t))
    subs = {}
    for name, sims in X.subcomplexes.items():
        sub_tops = set()
        for t in _maximal_of(sims):
            sub_tops.update(flags(t))
        subs[name] = sorted(sub_tops)
    Y = SimplicialComplex(sorted(tops), len(labels), subs, X.boundary)
    return Y, labels
