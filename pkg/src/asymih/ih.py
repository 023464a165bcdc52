"""Simplicial intersection homology with arbitrary perversities.

A filtration is a chain of full subcomplexes, stored by vertex sets; since
each member is full, the part of a simplex lying in ``X_j`` is the face
spanned by its vertices in ``X_j``, which makes allowability a vertex
count.  Chains of the intersection complex are integer kernels of the
boundary map projected to the non-allowable coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .linalg import kernel, rank, rref
from .topology import (ComplexError, SimplicialComplex, barycentric_subdivision, has_boundary,
                       load_complex, orientation)

__all__ = [
    "Perversity",
    "standard_perversities",
    "all_perversities",
    "perversity_from_name",
    "Filtration",
    "FiltrationError",
    "AllowableBasis",
    "allowable_simplices",
    "ic_complex",
    "ih_betti",
    "DualityReport",
    "duality_check",
    "independence_check",
    "load_filtration",
    "is_allowable",
    "chain_is_allowable",
    "intersection_cycles",
    "complementary_pairs",
]


@dataclass(frozen=True)
class Perversity:
    """Values (p_2, ..., p_m) for ambient dimension m."""

    m: int
    values: tuple

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if self.m < 2:
            raise ValueError("perversities need ambient dimension >= 2")
        if len(vals) != self.m - 1:
            raise ValueError(f"perversity for m={self.m} needs {self.m - 1} values, got {len(vals)}")
        if vals[0] != 0:
            raise ValueError("a perversity starts with p_2 = 0")
        for a, b in zip(vals, vals[1:]):
            if b - a not in (0, 1):
                raise ValueError(f"perversity steps must be 0 or 1: {vals}")

    def __getitem__(self, k: int) -> int:
        return self.values[k - 2]

    def __le__(self, other: "Perversity") -> bool:
        return self.m == other.m and all(a <= b for a, b in zip(self.values, other.values))

    def __add__(self, other: "Perversity") -> tuple:
        return tuple(a + b for a, b in zip(self.values, other.values))

    def complement(self) -> "Perversity | None":
        """t - p when that is again a perversity."""
        top = standard_perversities(self.m)["top"]
        try:
            return Perversity(self.m, tuple(t - a for t, a in zip(top.values, self.values)))
        except ValueError:
            return None

    def __str__(self):
        return "(" + ",".join(map(str, self.values)) + ")"


def standard_perversities(m: int) -> dict:
    if m < 2:
        raise ValueError("perversities need ambient dimension >= 2")
    ks = range(2, m + 1)
    return {
        "zero": Perversity(m, tuple(0 for _ in ks)),
        "lower_middle": Perversity(m, tuple((k - 2) // 2 for k in ks)),
        "upper_middle": Perversity(m, tuple((k - 1) // 2 for k in ks)),
        "top": Perversity(m, tuple(k - 2 for k in ks)),
    }


_SHORT = {"0": "zero", "m": "lower_middle", "n": "upper_middle", "t": "top"}


def perversity_from_name(name: str, m: int) -> Perversity:
    """'0', 'm', 'n', 't', a long name, or comma-separated values."""
    std = standard_perversities(m)
    key = _SHORT.get(name, name)
    if key in std:
        return std[key]
    try:
        vals = tuple(int(v) for v in name.split(","))
    except ValueError:
        raise ValueError(f"unknown perversity {name!r}") from None
    return Perversity(m, vals)


def all_perversities(m: int) -> list:
    out = []
    for steps in itertools.product((0, 1), repeat=m - 2):
        vals = [0]
        for s in steps:
            vals.append(vals[-1] + s)
        out.append(Perversity(m, tuple(vals)))
    return out


class FiltrationError(ValueError):
    pass


class Filtration:
    """Closed filtration X_0 <= ... <= X_m = X by full subcomplexes.

    ``levels[i]`` is the vertex set of X_i.  With ``validate`` off the
    member conditions are not checked (used to build deliberately broken
    inputs for negative tests).
    """

    def __init__(self, base: SimplicialComplex, levels: Mapping[int, Iterable[int]] | Sequence,
                 validate: bool = True):
        self.base = base
        m = base.dim
        self.m = m
        if not isinstance(levels, Mapping):
            levels = dict(enumerate(levels))
        full = frozenset(range(base.n_vertices))
        out = []
        prev: frozenset = frozenset()
        for i in range(m + 1):
            if i == m:
                cur = full
            elif i in levels:
                cur = frozenset(int(v) for v in levels[i])
            else:
                cur = prev
            out.append(cur)
            prev = cur
        self.levels = tuple(out)
        if validate:
            self.validate()

    def member(self, i: int) -> frozenset:
        if i < 0:
            return frozenset()
        return self.base.full_subcomplex(self.levels[min(i, self.m)])

    def validate(self):
        m = self.m
        for i in range(m):
            if not self.levels[i] <= self.levels[i + 1]:
                raise FiltrationError(f"X_{i} is not contained in X_{i + 1}")
        dims = []
        for i in range(m + 1):
            stratum = self.member(i) - self.member(i - 1)
            d = max((len(s) - 1 for s in stratum), default=None)
            dims.append(d)
            if d is not None and d != i:
                raise FiltrationError(f"stratum X_{i} - X_{i - 1} has dimension {d}, expected {i} or empty")
            top = max((len(s) - 1 for s in self.member(i)), default=-1)
            if top > i:
                raise FiltrationError(f"X_{i} has dimension {top} > {i}")
        if m >= 2 and self.levels[m - 1] != self.levels[m - 2]:
            raise FiltrationError("codimension-one stratum X_{m-1} - X_{m-2} must be empty")

    def strata_dims(self) -> list:
        """Indices i with a nonempty stratum X_i - X_{i-1}."""
        return [i for i in range(self.m + 1) if self.member(i) - self.member(i - 1)]

    @property
    def singular_vertices(self) -> frozenset:
        return self.levels[self.m - 2] if self.m >= 2 else frozenset()

    def subdivide(self):
        """Induced filtration on the barycentric subdivision, and the vertex labels."""
        Y, labels = barycentric_subdivision(self.base)
        levels = {i: [v for v, s in enumerate(labels) if set(s) <= self.levels[i]]
                  for i in range(self.m)}
        return Filtration(Y, levels), labels

    def to_doc(self) -> dict:
        doc = self.base.to_doc()
        subs = doc.setdefault("subcomplexes", {})
        idx = {}
        for i in range(self.m):
            if i == 0 or self.levels[i] != self.levels[i - 1]:
                if not self.levels[i]:
                    continue
                name = f"X{i}"
                subs[name] = [list(s) for s in _tops_of(self.member(i))]
                idx[str(i)] = name
        doc["filtration"] = {"indices": idx}
        return doc

    def __repr__(self):
        return f"Filtration(m={self.m}, levels={[sorted(l) for l in self.levels[:-1]]})"


def _tops_of(sims) -> list:
    from .topology import _maximal_of
    return _maximal_of(sims)


def load_filtration(doc, subdivide_if_needed: bool = True) -> Filtration:
    """Filtration from a document with ``filtration: {indices: {i: name}}``.

    When a named member is not a full subcomplex the complex is subdivided
    once, which makes every induced subcomplex full.
    """
    if isinstance(doc, str):
        import json
        text = doc
        if not text.lstrip().startswith("{"):
            with open(text) as fh:
                text = fh.read()
        doc = json.loads(text)
    X = load_complex(doc)
    spec = (doc.get("filtration") or {}).get("indices", {})
    names = {int(i): name for i, name in spec.items()}
    for i, name in names.items():
        if name not in X.subcomplexes:
            raise ComplexError(f"filtration index {i} refers to unknown subcomplex {name!r}")
        if not 0 <= i < X.dim:
            raise FiltrationError(f"filtration index {i} outside 0..{X.dim - 1}")
    if not all(X.is_full(X.subcomplexes[n]) for n in names.values()):
        if not subdivide_if_needed:
            raise FiltrationError("filtration members are not full subcomplexes")
        X, _ = barycentric_subdivision(X)
    return Filtration(X, {i: X.vertices_of(n) for i, n in names.items()})


# -- allowability ---------------------------------------------------------------

def _check_pair(filt: Filtration, p: Perversity):
    if p.m != filt.m:
        raise ValueError(f"perversity is for m={p.m} but the filtration has m={filt.m}")


def is_allowable(filt: Filtration, p: Perversity, s: Sequence[int], i: int) -> bool:
    for k in range(2, filt.m + 1):
        lev = filt.levels[filt.m - k]
        d = sum(1 for v in s if v in lev) - 1
        if d >= 0 and d > i - k + p[k]:
            return False
    return True


def allowable_simplices(filt: Filtration, p: Perversity, i: int) -> list:
    _check_pair(filt, p)
    if not 0 <= i <= filt.m:
        raise ValueError(f"degree {i} outside 0..{filt.m}")
    return [s for s in filt.base.simplices[i] if is_allowable(filt, p, s, i)] if i <= filt.base.dim else []


def chain_is_allowable(filt: Filtration, p: Perversity, chain: Mapping[tuple, object], i: int) -> bool:
    return all(is_allowable(filt, p, s, i) for s, c in chain.items() if c)


@dataclass
class AllowableBasis:
    degree: int
    allowable_simplices: list
    vectors: list                     # integer kernel vectors, simplex -> int
    _echelon: list | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def ic_basis(self) -> list:
        """Basis in reduced echelon form (ordered by simplex index, pivot 1)."""
        if self._echelon is None:
            self._echelon = rref(self.vectors)
        return self._echelon


def ic_complex(filt: Filtration, p: Perversity) -> list:
    """IC_i for i = 0..m as :class:`AllowableBasis` objects."""
    _check_pair(filt, p)
    X = filt.base
    allow = [set(allowable_simplices(filt, p, i)) for i in range(filt.m + 1)]
    out = []
    for i in range(filt.m + 1):
        A = [s for s in X.simplices[i] if s in allow[i]]
        if i == 0:
            vecs = [{s: 1} for s in A]
        else:
            idx = X.index[i - 1]
            bad = {idx[f] for f in X.simplices[i - 1] if f not in allow[i - 1]}
            cols = []
            for s in A:
                cols.append({idx[s[:j] + s[j + 1:]]: (-1 if j % 2 else 1)
                             for j in range(i + 1) if idx[s[:j] + s[j + 1:]] in bad})
            vecs = [{A[j]: c for j, c in t.items()} for t in kernel(cols)]
        out.append(AllowableBasis(i, A, [{X.index[i][s]: c for s, c in v.items()} for v in vecs]))
    # boundaries of IC_{i+1} land in IC_i: their support must be allowable
    for i in range(1, filt.m + 1):
        down = X.simplices[i - 1]
        for v in out[i].vectors:
            bd = _boundary_indexed(X, i, v)
            if any(down[r] not in allow[i - 1] for r in bd):
                raise AssertionError(f"boundary of an IC_{i} chain leaves the allowable set")
    return out


def _boundary_indexed(X: SimplicialComplex, i: int, v: Mapping[int, int]) -> dict:
    sims, idx = X.simplices[i], X.index[i - 1]
    out: dict = {}
    for col, c in v.items():
        s = sims[col]
        for j in range(i + 1):
            r = idx[s[:j] + s[j + 1:]]
            val = out.get(r, 0) + (-c if j % 2 else c)
            if val:
                out[r] = val
            else:
                out.pop(r, None)
    return out


def ih_betti(filt: Filtration, p: Perversity, ic: list | None = None) -> list:
    """Ranks of IH_0 .. IH_m."""
    if ic is None:
        ic = ic_complex(filt, p)
    X = filt.base
    r = [0] * (filt.m + 2)
    for i in range(1, filt.m + 1):
        r[i] = rank(_boundary_indexed(X, i, v) for v in ic[i].vectors)
    return [ic[i].dim - r[i] - r[i + 1] for i in range(filt.m + 1)]


def intersection_cycles(filt: Filtration, p: Perversity, i: int) -> list:
    """Basis of the (p, i)-cycles, as simplex-keyed integer chains."""
    ic = ic_complex(filt, p)
    X = filt.base
    vecs = ic[i].vectors
    if i == 0:
        return [{X.simplices[0][k]: c for k, c in v.items()} for v in vecs]
    cols = [_boundary_indexed(X, i, v) for v in vecs]
    out = []
    for t in kernel(cols):
        chain: dict = {}
        for j, a in t.items():
            for k, c in vecs[j].items():
                val = chain.get(k, 0) + a * c
                if val:
                    chain[k] = val
                else:
                    chain.pop(k, None)
        out.append({X.simplices[i][k]: c for k, c in chain.items()})
    return out


# -- duality and independence -------------------------------------------------

@dataclass
class DualityReport:
    status: str                    # "pass" | "fail" | "inapplicable"
    p: Perversity
    q: Perversity
    ranks_p: list = field(default_factory=list)
    ranks_q: list = field(default_factory=list)
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self):
        return {"status": self.status, "p": list(self.p.values), "q": list(self.q.values),
                "ranks_p": self.ranks_p, "ranks_q": self.ranks_q, "reason": self.reason}


def duality_check(filt: Filtration, p: Perversity, q: Perversity) -> DualityReport:
    """Compare IH_k^p with IH_{m-k}^q for complementary p, q."""
    _check_pair(filt, p)
    _check_pair(filt, q)
    top = standard_perversities(filt.m)["top"]
    if p + q != top.values:
        raise ValueError(f"perversities {p} and {q} are not complementary (sum must be {top})")
    X = filt.base
    if has_boundary(X):
        return DualityReport("inapplicable", p, q, reason="complex has boundary")
    if orientation(X) is None:
        return DualityReport("inapplicable", p, q, reason="complex is not orientable")
    rp = ih_betti(filt, p)
    rq = ih_betti(filt, q)
    ok = all(rp[k] == rq[filt.m - k] for k in range(filt.m + 1))
    return DualityReport("pass" if ok else "fail", p, q, rp, rq)


def complementary_pairs(m: int) -> list:
    out = []
    for p in all_perversities(m):
        q = p.complement()
        if q is not None:
            out.append((p, q))
    return out


def independence_check(filt_a: Filtration, filt_b: Filtration, p: Perversity) -> bool:
    if filt_a.base != filt_b.base:
        raise ValueError("filtrations live on different complexes")
    return ih_betti(filt_a, p) == ih_betti(filt_b, p)
