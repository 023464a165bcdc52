"""Generator for the shipped complexes and catalog documents.

``python -m asymih.corpus [DIR]`` rewrites the data directory; a test
checks that the committed files match a fresh build byte for byte.
"""

from __future__ import annotations

import json
import os
import re
import sys

from . import constructions as K
from .topology import SimplicialComplex, _maximal_of

CATALOG_VERSION = 1


def _doc(X: SimplicialComplex, description: str, filtration: dict | None = None,
         alt: list | None = None, labels: dict | None = None) -> dict:
    doc = {"description": description}
    doc.update(X.to_doc())
    subs = doc.setdefault("subcomplexes", {})
    for name, sims in (labels or {}).items():
        subs[name] = [list(s) for s in sims]
    if not subs:
        del doc["subcomplexes"]
    doc["filtration"] = {"indices": {str(k): v for k, v in (filtration or {}).items()}}
    if alt:
        doc["alt_filtrations"] = [{"indices": {str(k): v for k, v in a.items()}} for a in alt]
    return doc


def _disk_gluing():
    """(S^2 x D) and (D x D), with S^2 x {centre} identified vertex-wise onto {p} x D.

    The gluing disk is a codimension-two singular stratum; the space
    retracts onto S^2, so H_2 has rank one.
    """
    S2, C = K.sphere(2), K.disk()
    A = K.product(S2, C)
    B = K.product(C, C)
    w = C.n_vertices
    centre = 3
    disk = [(0, 1, 3), (0, 2, 3), (1, 2, 3)]
    X, _ = K.glue(A, B, {v * w + centre: v for v in range(w)})
    return X, disk, centre


def build_complexes() -> dict:
    C = K.disk()
    ball = K.product(C, C)
    gl, disk, centre = _disk_gluing()
    out = {}
    out["sphere2"] = _doc(K.sphere(2), "boundary of the 3-simplex",
                          alt=[{0: "vertex"}], labels={"vertex": [(0,)]})
    out["torus"] = _doc(K.torus(), "minimal 7-vertex torus",
                        alt=[{0: "vertex"}], labels={"vertex": [(0,)]})
    out["projective_plane"] = _doc(K.projective_plane(), "minimal 6-vertex real projective plane")
    out["sphere3"] = _doc(K.sphere(3), "boundary of the 4-simplex")
    out["s1xs2"] = _doc(K.product(K.sphere(1), K.sphere(2)), "product of a circle and a 2-sphere")
    out["s2xs2"] = _doc(K.product(K.sphere(2), K.sphere(2)), "product of two 2-spheres")
    out["ball4"] = _doc(ball, "4-ball as the product of two triangulated disks")
    fold_disk = [s for s in ball.all_simplices() if all(v % C.n_vertices == 3 for v in s)]
    out["ball4_fold"] = _doc(ball, "4-ball with the disk D x {centre} as a codimension-two stratum",
                             filtration={2: "singular_locus"}, alt=[{}],
                             labels={"singular_locus": _maximal_of(fold_disk)})
    P = K.pinched_torus()
    out["pinched_torus"] = _doc(P, "2-sphere with its poles identified; vertex 0 is the pinch",
                                filtration={0: "pinch"})
    ST = K.suspension(K.torus())
    out["suspension_torus"] = _doc(ST, "suspension of the 7-vertex torus", filtration={0: "poles"})
    SY = K.suspension(K.product(K.sphere(1), K.sphere(2)))
    out["suspension_s1xs2"] = _doc(SY, "suspension of a circle times a 2-sphere", filtration={0: "poles"})
    SR = K.suspension(K.projective_plane())
    out["suspension_projective_plane"] = _doc(SR, "suspension of the real projective plane",
                                              filtration={0: "poles"})
    out["disk_gluing"] = _doc(
        gl, "S^2 x D and D x D glued along a 2-disk, which is the singular stratum",
        filtration={2: "singular_locus"}, alt=[{0: "centre", 2: "singular_locus"}],
        labels={"singular_locus": disk, "centre": [(centre,)]})
    return out


def build_catalog() -> dict:
    def entry(id, kind, model, map=None, proper=None, consistent=True, label="singular_locus", notes=""):
        return {"id": id, "kind": kind, "map": map, "model": model, "singular_label": label,
                "expected": {"proper": proper, "consistent": consistent}, "notes": notes}

    ball_note = "proper map; model is a 4-ball, matching a space homeomorphic to C^2"
    glue_note = ("surrogate model: a 4-pseudomanifold with a 2-disk singular stratum and rank-one H_2; "
                 "homeomorphism with the true space is not certified")
    entries = [
        entry("identity", "map", "ball4", "F=(x, y)", True, label=None, notes=ball_note),
        entry("triangular", "map", "ball4", "F=(x, y + x^3)", True, label=None, notes=ball_note),
        entry("shear_composite", "map", "ball4", "F=(x + y^2 + 2*x^2*y + x^4, y + x^2)", True,
              label=None, notes=ball_note),
        entry("fold", "map", "ball4_fold", "F=(x^2, y)", True,
              notes="proper map with critical values {y1=0}; the stratum carries the critical locus"),
        entry("blowup", "map", "disk_gluing", "F=(x, x*y)", False, notes=glue_note),
        entry("blowup_square", "map", "disk_gluing", "F=(x, x^2*y)", False, notes=glue_note),
        entry("blowup_swapped", "map", "disk_gluing", "F=(x*y, y)", False, notes=glue_note),
        entry("parabola", "map", "disk_gluing", "F=(x + x^2*y^2, x*y)", False, notes=glue_note),
        entry("torus", "control", "torus", label=None, notes="closed manifold, H_2 of rank one"),
        entry("sphere2", "control", "sphere2", label=None, notes="closed manifold"),
        entry("s2xs2", "control", "s2xs2", label=None, notes="closed 4-manifold, H_2 of rank two"),
        entry("pinched_torus", "control", "pinched_torus", label="pinch",
              notes="isolated singular point; IH_2 and H_2 both of rank one"),
        entry("mismatch_identity", "negative", "disk_gluing", "F=(x, y)", True, consistent=False,
              notes="proper map paired with a model having H_2 != 0"),
        entry("mismatch_blowup", "negative", "ball4", "F=(x, x*y)", False, consistent=False, label=None,
              notes="non-proper map paired with a contractible model"),
    ]
    return {"version": CATALOG_VERSION, "entries": entries}


_INT_LIST = re.compile(r"\[\s*(-?\d+(?:,\s*-?\d+)*)\s*\]")


def _dumps(doc) -> str:
    text = json.dumps(doc, indent=1)
    return _INT_LIST.sub(lambda m: "[" + ",".join(x.strip() for x in m.group(1).split(",")) + "]", text) + "\n"


def rendered_files() -> dict:
    files = {f"complexes/{name}.json": _dumps(doc) for name, doc in build_complexes().items()}
    files["catalog.json"] = _dumps(build_catalog())
    return files


def write(directory: str):
    for rel, text in rendered_files().items():
        path = os.path.join(directory, rel)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w") as fh:
            fh.write(text)


if __name__ == "__main__":
    write(sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "data"))
