"""Catalog of polynomial maps paired with simplicial models, and the
end-to-end check that properness, H_2 and IH_2 agree.

The data directory defaults to the copy shipped inside the package and can
be redirected with the ``ASYMIH_DATA`` environment variable.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache

from .asymptotic import NON_PROPER, PROPER, UNKNOWN, is_proper
from .ih import (Filtration, chain_is_allowable, ih_betti, intersection_cycles, load_filtration,
                 standard_perversities)
from .linalg import ColumnReducer, image_in
from .parse import parse_map
from .poly import PolyMap
from .topology import PMReport, SimplicialComplex, betti, validate_pseudomanifold

__all__ = [
    "data_dir",
    "CatalogEntry",
    "EquivalenceReport",
    "ModelRejected",
    "ChainVector",
    "catalog",
    "get_entry",
    "load_model",
    "verify_equivalence",
    "verify_all",
    "even_strata_check",
    "singular_locus_contained",
    "allowable_arc_cycle",
    "arc_cycle_search",
]

DATA_ENV = "ASYMIH_DATA"


def data_dir() -> str:
    return os.environ.get(DATA_ENV) or os.path.join(os.path.dirname(__file__), "data")


def model_path(name: str) -> str:
    return os.path.join(data_dir(), "complexes", f"{name}.json")


def read_model_doc(name_or_path: str) -> dict:
    path = name_or_path if os.path.exists(name_or_path) else model_path(name_or_path)
    if not os.path.exists(path):
        raise FileNotFoundError(f"no complex named {name_or_path!r} (looked for {path})")
    with open(path) as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def _load_cached(path: str, mtime: float):
    with open(path) as fh:
        doc = json.load(fh)
    filt = load_filtration(doc)
    alts = []
    for a in doc.get("alt_filtrations", []):
        alts.append(load_filtration(dict(doc, filtration=a)))
    return filt, tuple(alts)


def load_model(name: str):
    """(filtration, alternative filtrations) for a named complex."""
    path = model_path(name)
    if not os.path.exists(path):
        raise FileNotFoundError(f"no complex named {name!r} in {data_dir()}")
    return _load_cached(path, os.path.getmtime(path))


@dataclass
class CatalogEntry:
    id: str
    kind: str                         # "map" | "control" | "negative"
    map_text: str | None
    model_name: str
    singular_label: str | None
    expected: dict
    notes: str = ""

    @property
    def map(self) -> PolyMap | None:
        return parse_map(self.map_text) if self.map_text else None

    @property
    def filtration(self) -> Filtration:
        return load_model(self.model_name)[0]

    @property
    def alt_filtrations(self) -> tuple:
        return load_model(self.model_name)[1]

    @property
    def model(self) -> SimplicialComplex:
        return self.filtration.base

    def labeled_locus(self) -> frozenset:
        if not self.singular_label:
            return frozenset()
        return self.model.subcomplexes[self.singular_label]

    def to_json(self):
        return {"id": self.id, "kind": self.kind, "map": self.map_text, "model": self.model_name,
                "singular_label": self.singular_label, "expected": self.expected, "notes": self.notes}


def catalog() -> list:
    path = os.path.join(data_dir(), "catalog.json")
    with open(path) as fh:
        doc = json.load(fh)
    return [CatalogEntry(e["id"], e["kind"], e.get("map"), e["model"], e.get("singular_label"),
                         e.get("expected", {}), e.get("notes", "")) for e in doc["entries"]]


def get_entry(entry_id: str) -> CatalogEntry:
    for e in catalog():
        if e.id == entry_id:
            return e
    raise KeyError(f"no catalog entry {entry_id!r}")


# -- structural checks ------------------------------------------------------------

def even_strata_check(filt: Filtration) -> bool:
    return all(i % 2 == 0 for i in filt.strata_dims())


def singular_locus_contained(report: PMReport, locus: frozenset) -> bool:
    return all(s in locus for s in report.detected_singular_simplices)


class ModelRejected(ValueError):
    def __init__(self, msg: str, report: PMReport):
        super().__init__(msg)
        self.report = report


# -- the equivalence --------------------------------------------------------------

@dataclass
class EquivalenceReport:
    entry_id: str
    kind: str
    verdict: str | None
    betti: list
    b2: int
    ih: dict                          # perversity name -> ranks
    ih2: dict                         # perversity name -> rank in degree 2
    consistent: bool
    per_perversity: dict = field(default_factory=dict)
    even_strata: bool = True
    singular_contained: bool = True
    expected_consistent: bool = True

    @property
    def as_expected(self) -> bool:
        return self.consistent == self.expected_consistent

    def to_json(self):
        return {
            "entry": self.entry_id,
            "kind": self.kind,
            "verdict": self.verdict,
            "betti": self.betti,
            "b2": self.b2,
            "ih": self.ih,
            "ih2": self.ih2,
            "consistent": self.consistent,
            "per_perversity": self.per_perversity,
            "even_strata": self.even_strata,
            "singular_contained": self.singular_contained,
            "expected_consistent": self.expected_consistent,
            "as_expected": self.as_expected,
        }


def _consistency(verdict, b2: int, ih2: dict) -> tuple:
    h_zero = b2 == 0
    ih_zero = all(r == 0 for r in ih2.values())
    per = {name: (r == 0) == h_zero for name, r in ih2.items()}
    ok = h_zero == ih_zero
    if verdict in (PROPER, NON_PROPER):
        ok = ok and (verdict == PROPER) == h_zero
    return ok, per


def verify_equivalence(entry: CatalogEntry, samples: int = 3, max_exp: int = 4,
                       seed: int = 0) -> EquivalenceReport:
    """Properness of the map, H_2 of the model, IH_2 for the standard perversities.

    Unknown verdicts are reported and leave only the topological half of
    the equivalence to decide consistency.
    """
    filt = entry.filtration
    X = filt.base
    pm = validate_pseudomanifold(X)
    if not (pm.is_pure and pm.sing_codim_ok):
        raise ModelRejected(f"model {entry.model_name!r} is not a pseudomanifold", pm)
    F = entry.map
    verdict = is_proper(F, samples, max_exp, seed) if F is not None else None
    b = betti(X)
    b2 = b[2] if len(b) > 2 else 0
    ih = {}
    for name, p in standard_perversities(filt.m).items():
        ih[name] = ih_betti(filt, p)
    ih2 = {name: (r[2] if len(r) > 2 else 0) for name, r in ih.items()}
    ok, per = _consistency(verdict, b2, ih2)
    return EquivalenceReport(
        entry.id, entry.kind, verdict, b, b2, ih, ih2, ok, per,
        even_strata_check(filt), singular_locus_contained(pm, entry.labeled_locus()),
        bool(entry.expected.get("consistent", True)))


def verify_all(samples: int = 3, max_exp: int = 4, seed: int = 0) -> list:
    return [verify_equivalence(e, samples, max_exp, seed) for e in catalog()]


# -- allowable 2-cycles --------------------------------------------------------------

@dataclass
class ChainVector:
    degree: int
    coefficients: dict               # simplex -> integer

    @property
    def support(self) -> list:
        return sorted(s for s, c in self.coefficients.items() if c)

    def vertices(self) -> set:
        return {v for s in self.support for v in s}

    def to_json(self):
        return {"degree": self.degree,
                "coefficients": [[list(s), c] for s, c in sorted(self.coefficients.items())]}


@dataclass
class ArcCycleResult:
    chain: ChainVector | None
    singular_meet: list
    diagnostic: str

    def to_json(self):
        return {"chain": self.chain.to_json() if self.chain else None,
                "singular_meet": self.singular_meet, "diagnostic": self.diagnostic}


def arc_cycle_search(filt: Filtration, verdict: str | None = None) -> ArcCycleResult:
    """Search the (top, 2)-allowable cycles for one that is not a boundary.

    Among candidates, cycles touching fewer singular vertices win, then
    smaller supports.
    """
    if verdict == PROPER:
        return ArcCycleResult(None, [], "map is proper; no cycle expected")
    if filt.m != 4:
        return ArcCycleResult(None, [], f"models of dimension {filt.m} are not searched")
    top = standard_perversities(4)["top"]
    X = filt.base
    cycles = intersection_cycles(filt, top, 2)
    if not cycles:
        return ArcCycleResult(None, [], "no allowable 2-cycles")
    red = ColumnReducer()
    for col in X.boundary_columns(3):
        red.add(col)
    sing = filt.levels[2]
    idx = X.index[2]

    def score(c):
        verts = {v for s in c for v in s}
        return (len(verts & sing), len(c), sorted(c))

    for c in sorted(cycles, key=score):
        vec = {idx[s]: x for s, x in c.items()}
        if not image_in(red, vec):
            if not chain_is_allowable(filt, top, c, 2):
                raise AssertionError("intersection cycle failed the allowability predicate")
            meet = sorted({v for s in c for v in s} & sing)
            return ArcCycleResult(ChainVector(2, dict(c)), meet, "found")
    return ArcCycleResult(None, [], "every allowable 2-cycle bounds")


def allowable_arc_cycle(entry: CatalogEntry, samples: int = 3, max_exp: int = 4, seed: int = 0):
    """A (top, 2)-allowable 2-cycle that is nonzero in H_2, or None."""
    F = entry.map
    verdict = is_proper(F, samples, max_exp, seed) if F is not None else None
    return arc_cycle_search(entry.filtration, verdict).chain
