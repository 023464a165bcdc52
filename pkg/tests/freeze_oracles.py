"""Recompute the frozen oracle ranks in golden/oracle_ranks.json.

Run from the tests directory: ``python freeze_oracles.py``.  Uses only the
dense reference code in ``oracles.py``; the package is consulted solely to
read the shipped complex documents.
"""

import json
import os

from oracles import betti_oracle, ih_oracle

from asymih.ih import standard_perversities
from asymih.models import read_model_doc

NAMES = ["sphere2", "torus", "projective_plane", "pinched_torus", "sphere3", "s1xs2",
         "suspension_torus", "suspension_projective_plane", "suspension_s1xs2", "ball4",
         "ball4_fold", "s2xs2", "disk_gluing"]


def levels_of(doc, filtration):
    return {int(i): sorted({v for s in doc["subcomplexes"][n] for v in s})
            for i, n in filtration["indices"].items()}


def freeze():
    out = {}
    for name in NAMES:
        doc = read_model_doc(name)
        tops = [tuple(s) for s in doc["top_simplices"]]
        b = betti_oracle(tops)
        m = len(b) - 1
        entry = {"betti": b, "ih": {}}
        filts = [doc["filtration"]] + doc.get("alt_filtrations", [])
        for k, f in enumerate(filts):
            lv = levels_of(doc, f)
            entry["ih"][str(k)] = {pn: ih_oracle(tops, lv, p.values)
                                   for pn, p in standard_perversities(m).items()} if m >= 2 else {}
        out[name] = entry
        print(name, entry["betti"], flush=True)
    path = os.path.join(os.path.dirname(os.path.abspath(__file__)), "golden", "oracle_ranks.json")
    with open(path, "w") as fh:
        json.dump(out, fh, indent=1, sort_keys=True)
        fh.write("\n")


if __name__ == "__main__":
    freeze()
