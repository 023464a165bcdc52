"""Command-line front end.

Every subcommand builds one report dictionary; ``--format json`` prints it
as a single document, ``--format text`` renders it for people.

Exit codes: 0 success, 1 an inconsistency was found, 2 bad input,
3 an ``unknown`` verdict under ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .arcs import INF, MonomialArc, arc_limit, asymptotic_directions, escape_cone_check
from .asymptotic import UNKNOWN, jelonek_set, verdict_of
from .ih import (FiltrationError, complementary_pairs, duality_check, ih_betti, load_filtration,
                 perversity_from_name, standard_perversities)
from .models import ModelRejected, catalog, get_entry, read_model_doc, verify_equivalence
from .parse import ParseError, parse_arc_literal, parse_map
from .topology import ComplexError, betti, euler_characteristic, validate_pseudomanifold

EXIT_OK, EXIT_INCONSISTENT, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2, 3
SCHEMA_VERSION = 1


class InputError(Exception):
    pass


def _read_literal(arg: str) -> str:
    if os.path.isfile(arg):
        with open(arg) as fh:
            return fh.read().strip()
    return arg


def _map_from(args):
    text = _read_literal(args.map)
    vars = tuple(v.strip() for v in args.vars.split(",")) if args.vars else ("x", "y")
    return parse_map(text, vars)


def _limit_json(v):
    return "inf" if v is INF else v.to_json()


# -- subcommands ----------------------------------------------------------------------

def cmd_jelonek(args):
    F = _map_from(args)
    S = jelonek_set(F, args.samples, args.max_exp, args.seed)
    verdict = verdict_of(S)
    res = {"map": str(F), "verdict": verdict, "set": S.to_json()}
    return res, (EXIT_UNKNOWN if args.strict and verdict == UNKNOWN else EXIT_OK)


def cmd_proper(args):
    F = _map_from(args)
    S = jelonek_set(F, args.samples, args.max_exp, args.seed)
    verdict = verdict_of(S)
    res = {"map": str(F), "verdict": verdict,
           "components": [{"equations": c["equations"], "status": c["status"]}
                          for c in S.to_json()["components"]]}
    return res, (EXIT_UNKNOWN if args.strict and verdict == UNKNOWN else EXIT_OK)


def cmd_initial_forms(args):
    F = _map_from(args)
    return {"map": str(F), "initial_forms": [str(f) for f in F.initial_forms()]}, EXIT_OK


def cmd_directions(args):
    F = _map_from(args)
    return {"map": str(F), "directions": asymptotic_directions(F).to_json()}, EXIT_OK


def cmd_arc_limit(args):
    F = _map_from(args)
    coeffs, exps = parse_arc_literal(_read_literal(args.arc))
    arc = MonomialArc(exps, coeffs)
    lim = arc_limit(F, arc)
    res = {"map": str(F), "arc": arc.to_json(), "limit": [_limit_json(v) for v in lim],
           "limit_text": "(" + ", ".join(str(v) for v in lim) + ")"}
    if all(v is not INF for v in lim):
        res["escape_cone"] = escape_cone_check(F, arc)
    else:
        res["escape_cone"] = None
    code = EXIT_INCONSISTENT if res["escape_cone"] is False else EXIT_OK
    return res, code


def _complex_doc(arg):
    try:
        return read_model_doc(arg)
    except FileNotFoundError as exc:
        raise InputError(str(exc)) from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{arg}: not valid JSON ({exc})") from None


def cmd_homology(args):
    doc = _complex_doc(args.complex)
    filt = load_filtration(doc)
    X = filt.base
    res = {"complex": args.complex, "dim": X.dim, "f_vector": X.f_vector(), "betti": betti(X),
           "euler_characteristic": euler_characteristic(X)}
    if X.dim >= 1:
        res["pseudomanifold"] = validate_pseudomanifold(X).to_json()
    return res, EXIT_OK


_SHORT_NAMES = {"0": "zero", "m": "lower_middle", "n": "upper_middle", "t": "top"}


def _perversities(args, m):
    names = args.perversity or ["0", "m", "n", "t"]
    out = []
    for name in names:
        if name == "custom":
            if not args.values:
                raise InputError("--perversity custom needs --values p2,...,pm")
            out.append(("custom", perversity_from_name(args.values, m)))
        else:
            p = perversity_from_name(name, m)
            key = _SHORT_NAMES.get(name, name)
            out.append((key if key in standard_perversities(m) else str(p), p))
    return out


def cmd_ih(args):
    doc = _complex_doc(args.complex)
    filt = load_filtration(doc)
    if filt.m < 2:
        raise InputError("intersection homology needs dimension >= 2")
    ranks = []
    for label, p in _perversities(args, filt.m):
        ranks.append({"perversity": label, "values": list(p.values), "ranks": ih_betti(filt, p)})
    res = {"complex": args.complex, "m": filt.m,
           "filtration": {str(i): sorted(filt.levels[i]) for i in range(filt.m)},
           "ih": ranks}
    return res, EXIT_OK


def cmd_duality(args):
    doc = _complex_doc(args.complex)
    filt = load_filtration(doc)
    if (args.p is None) != (args.q is None):
        raise InputError("--p and --q go together")
    if args.p is None:
        pairs = complementary_pairs(filt.m)
    else:
        pairs = [(perversity_from_name(args.p, filt.m), perversity_from_name(args.q, filt.m))]
    reports = [duality_check(filt, p, q).to_json() for p, q in pairs]
    failed = any(r["status"] == "fail" for r in reports)
    return {"complex": args.complex, "m": filt.m, "checks": reports}, (EXIT_INCONSISTENT if failed else EXIT_OK)


def cmd_verify_theorem(args):
    if args.all == bool(args.entry):
        raise InputError("give an entry id or --all")
    entries = catalog() if args.all else [get_entry(args.entry)]
    reports = [verify_equivalence(e, args.samples, args.max_exp, args.seed).to_json() for e in entries]
    code = EXIT_OK
    if any(not r["as_expected"] for r in reports):
        code = EXIT_INCONSISTENT
    elif args.strict and any(r["verdict"] == UNKNOWN for r in reports):
        code = EXIT_UNKNOWN
    return {"reports": reports, "all_as_expected": all(r["as_expected"] for r in reports)}, code


def cmd_catalog(args):
    return {"entries": [e.to_json() for e in catalog()]}, EXIT_OK


# -- text rendering -----------------------------------------------------------------

def _render_text(command: str, res: dict) -> str:
    lines = []
    if command in ("jelonek", "proper"):
        lines.append(f"{res['map']}: {res['verdict']}")
        comps = res["set"]["components"] if command == "jelonek" else res["components"]
        for c in comps:
            lines.append(f"  {' = 0, '.join(c['equations'])} = 0  [{c['status']}]")
            for w in c.get("witnesses", []):
                lines.append(f"    arc {w['arc']['text']} -> {w['target_text']}")
    elif command == "initial-forms":
        lines.append(f"{res['map']}")
        lines += [f"  {f}" for f in res["initial_forms"]]
    elif command == "directions":
        d = res["directions"]
        lines.append(f"{res['map']}: forms ({', '.join(d['forms'])})")
        if d["degenerate"]:
            lines.append("  degenerate: a component has constant initial form")
        for p in d["points"]:
            lines.append(f"  {p['text']}  multiplicity {p['multiplicity']}")
        if d["n_irrational"]:
            lines.append(f"  {d['n_irrational']} direction(s) outside Q(i)")
        if not d["points"] and not d["n_irrational"] and not d["degenerate"]:
            lines.append("  no directions")
    elif command == "arc-limit":
        lines.append(f"{res['map']} along {res['arc']['text']} -> {res['limit_text']}")
        if res["escape_cone"] is not None:
            lines.append(f"  escape direction on initial forms: {res['escape_cone']}")
    elif command == "homology":
        lines.append(f"{res['complex']}: dim {res['dim']}, f-vector {res['f_vector']}")
        lines.append(f"  betti {res['betti']}  euler {res['euler_characteristic']}")
        pm = res.get("pseudomanifold")
        if pm:
            sing = pm["detected_singular_simplices"]
            lines.append(f"  pure {pm['is_pure']}, singular codim ok {pm['sing_codim_ok']}, "
                         f"singular simplices {sing if sing else 'none'}")
    elif command == "ih":
        lines.append(f"{res['complex']}: m = {res['m']}")
        for r in res["ih"]:
            lines.append(f"  {r['perversity']} {tuple(r['values'])}: {tuple(r['ranks'])}")
    elif command == "duality":
        lines.append(f"{res['complex']}: m = {res['m']}")
        for r in res["checks"]:
            line = f"  p={tuple(r['p'])} q={tuple(r['q'])}: {r['status']}"
            if r["status"] == "inapplicable":
                line += f" ({r['reason']})"
            else:
                line += f"  {tuple(r['ranks_p'])} vs {tuple(r['ranks_q'])}"
            lines.append(line)
    elif command == "verify-theorem":
        for r in res["reports"]:
            ih2 = ",".join(str(v) for v in r["ih2"].values())
            lines.append(f"{r['entry']:<20} {r['kind']:<9} verdict={r['verdict'] or '-':<10} "
                         f"b2={r['b2']} ih2=({ih2}) consistent={r['consistent']} "
                         f"{'ok' if r['as_expected'] else 'UNEXPECTED'}")
    elif command == "catalog":
        for e in res["entries"]:
            lines.append(f"{e['id']:<20} {e['kind']:<9} {e['map'] or '-':<40} {e['model']}")
    else:
        lines.append(json.dumps(res, indent=2))
    return "\n".join(lines)


# -- argument parsing -----------------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--max-exp", type=_positive, default=4, help="largest |exponent| in arc search")
    common.add_argument("--samples", type=_positive, default=3, help="sample points per component")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--strict", action="store_true", help="exit 3 on unknown verdicts")
    common.add_argument("--vars", default=None, help="source variable names, comma separated")

    parser = argparse.ArgumentParser(prog="asymih", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    for name, func, help in (("jelonek", cmd_jelonek, "asymptotic set with witnesses"),
                             ("proper", cmd_proper, "properness verdict"),
                             ("initial-forms", cmd_initial_forms, "top-degree parts of the components"),
                             ("directions", cmd_directions, "common zeros of the initial forms")):
        add(name, func, help).add_argument("map", help="map literal such as 'F=(x, x*y)' or a file")
    p = add("arc-limit", cmd_arc_limit, "limit of F along a monomial arc")
    p.add_argument("map")
    p.add_argument("arc", help="arc literal such as '(1) t^1, (1) t^-1'")
    add("homology", cmd_homology, "Betti numbers and pseudomanifold checks").add_argument("complex")
    p = add("ih", cmd_ih, "intersection homology ranks")
    p.add_argument("complex")
    p.add_argument("--perversity", action="append", help="t, m, n, 0, custom, or comma-separated values")
    p.add_argument("--values", help="values for --perversity custom")
    p = add("duality", cmd_duality, "compare IH^p with IH^q in complementary degrees")
    p.add_argument("complex")
    p.add_argument("--p")
    p.add_argument("--q")
    p = add("verify-theorem", cmd_verify_theorem, "run the equivalence on catalog entries")
    p.add_argument("entry", nargs="?")
    p.add_argument("--all", action="store_true")
    p = add("catalog", cmd_catalog, "list catalog entries")
    p.add_argument("action", choices=("list",))
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    config = {"seed": args.seed, "max_exp": args.max_exp, "samples": args.samples, "strict": args.strict}
    try:
        res, code = args.func(args)
    except (InputError, ParseError, ComplexError, FiltrationError, ModelRejected, KeyError,
            ValueError, NotImplementedError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        if args.format == "json":
            doc = {"schema_version": SCHEMA_VERSION, "command": args.command, "config": config,
                   "exit_code": EXIT_INPUT, "error": str(msg)}
            out.write(json.dumps(doc, indent=2) + "\n")
        else:
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": args.command, "config": config,
               "exit_code": code, "result": res}
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(_render_text(args.command, res) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
