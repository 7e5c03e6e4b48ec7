"""Command line front end.

JSON (or CSV) goes to stdout, diagnostics to stderr.  Exit status is 0 on
success, 1 on a domain failure (invalid labeling, inapplicable bound,
construction that is not a [k]-RDF) and 2 on usage or capacity errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds, constructions, exact
from .errors import ApplicabilityError, CapacityError, ConstructionError, InputError
from .grid import GridSpec
from .labeling import Labeling, dumps, loads, validate, weight

FAMILIES = ("L", "U", "P", "S", "A", "C", "B", "D", "torus-efficient", "c4t-p2", "packing")


class UsageError(Exception):
    pass


def _emit(obj):
    sys.stdout.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _note(msg):
    print(msg, file=sys.stderr)


def _vertex_list(vs):
    return [list(v) for v in sorted(vs)]


def _parse_range(text: str) -> list[int]:
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; use N or LO:HI") from None
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required for this command")


def _bound_value(name, n, k):
    b = bounds.upper_bound(name, n, k)
    return b.value if b.applicable else None


def cmd_construct(args) -> int:
    fam = args.family
    check = not args.unchecked
    if fam == "packing":
        _need(args, "m", "n")
        vs = constructions.packing_pattern(args.m, args.n)
        doc = {"family": "cylinder", "m": args.m, "n": args.n, "packing": _vertex_list(vs)}
        summary = {"family": fam, "size": len(vs)}
        _write_doc(args, json.dumps(doc, separators=(",", ":")) + "\n", summary)
        return 0
    _need(args, "k")
    if fam == "torus-efficient":
        _need(args, "m", "n")
        lab = constructions.construct_toroidal_efficient(args.m, args.n, args.k, check)
        bound = (args.k + 1) * args.m * args.n // 5
    elif fam == "c4t-p2":
        _need(args, "t")
        lab = constructions.construct_c4t_p2(args.t, args.k, check)
        bound = 2 * (args.k + 1) * args.t
    else:
        _need(args, "n")
        lab = constructions.CONSTRUCTORS[fam](args.n, args.k, check)
        bound = _bound_value(fam, args.n, args.k)
    summary = {"family": fam, "weight": weight(lab), "bound": bound}
    _write_doc(args, dumps(lab), summary)
    return 0


def _write_doc(args, text, summary):
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit(summary)
    else:
        sys.stdout.write(text)
        _note(json.dumps(summary))


def cmd_verify(args) -> int:
    text = sys.stdin.read() if args.labeling == "-" else _read(args.labeling)
    lab = loads(text)
    if args.k is not None and args.k != lab.k:
        lab = Labeling(lab.spec, args.k, lab.values)
    bad = validate(lab)
    if not bad:
        _emit({"valid": True, "weight": weight(lab)})
        return 0
    _emit({"valid": False, "weight": weight(lab), "violations": [v.to_dict() for v in bad]})
    _note(f"{len(bad)} vertices violate the [{lab.k}]-RDF condition")
    return 1


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None


def cmd_exact(args) -> int:
    _need(args, "m", "n", "k")
    if args.brute_force:
        spec = GridSpec.torus(args.m, args.n) if args.torus else GridSpec.cylinder(args.m, args.n)
        kw = {} if args.budget is None else {"budget": args.budget}
        res = exact.brute_force(spec, args.k, **kw)
    else:
        solve = exact.solve_torus if args.torus else exact.solve_cylinder
        res = solve(
            args.m,
            args.n,
            args.k,
            want_witness=bool(args.witness),
            budget=args.budget,
            symmetry=args.symmetry,
        )
    if args.witness:
        with open(args.witness, "w", encoding="utf-8") as fh:
            fh.write(dumps(res.witness))
    _emit({"gamma_kR": res.value, "method": res.method.value, "states": res.states_explored})
    return 0


def cmd_compare(args) -> int:
    _need(args, "m")
    if args.m not in bounds.COLUMNS:
        raise UsageError(f"compare supports m in {{3, 4}}, got m={args.m}")
    rows = bounds.compare(args.m, _parse_range(args.k), _parse_range(args.n))
    if args.json:
        text = json.dumps([_row_doc(r) for r in rows], separators=(",", ":")) + "\n"
    else:
        text = bounds.rows_to_csv(rows, args.m)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for k, lo, hi, best in bounds.dominance_regions(rows):
        span = f"n={lo}" if lo == hi else f"n={lo}..{hi}"
        _note(f"k={k} {span}: best {'+'.join(best) or '-'}")
    return 0


def _row_doc(row):
    values = {c: row.values.get(c) for c in bounds.COLUMNS[row.m]}
    return {"m": row.m, "k": row.k, "n": row.n, "values": values, "best": list(row.best)}


def cmd_bounds(args) -> int:
    _need(args, "m", "n", "k")
    spec = GridSpec.torus(args.m, args.n) if args.torus else GridSpec.cylinder(args.m, args.n)
    out = {"lower": [_bound_doc(b) for b in bounds.lower_bounds(spec, args.k)]}
    if not args.torus and args.m in bounds.COLUMNS:
        out["upper"] = [_bound_doc(b) for b in bounds.upper_bounds(args.m, args.n, args.k)]
    _emit(out)
    return 0


def _bound_doc(b):
    doc = {"name": b.name, "applicable": b.applicable, "value": b.value, "condition": b.condition}
    if b.relaxed is not None:
        doc["relaxed"] = f"{b.relaxed.numerator}/{b.relaxed.denominator}"
    return doc


def _grid_args(args):
    _need(args, "m", "n")
    return GridSpec.torus(args.m, args.n) if args.torus else GridSpec.cylinder(args.m, args.n)


def cmd_eds(args) -> int:
    spec = _grid_args(args)
    found = exact.find_efficient_dominating_set(spec)
    doc = {"efficient": found is not None, "witness": _vertex_list(found) if found else None}
    if not spec.is_torus:
        doc["theorem"] = exact.eds_theorem_predicts(spec.m, spec.n)
    _emit(doc)
    return 0


def cmd_packing(args) -> int:
    res = exact.max_packing(_grid_args(args))
    _emit({"rho": res.value, "witness": _vertex_list(res.witness)})
    return 0


def cmd_gamma(args) -> int:
    res = exact.domination_number(_grid_args(args))
    _emit({"gamma": res.value, "witness": _vertex_list(res.witness)})
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kroman", description="[k]-Roman domination on cylindrical grids")
    sub = p.add_subparsers(dest="command", required=True)

    def grid_opts(sp, torus=True):
        sp.add_argument("--m", type=int)
        sp.add_argument("--n", type=int)
        if torus:
            sp.add_argument("--torus", action="store_true")

    sp = sub.add_parser("construct", help="build a labeling from one of the explicit patterns")
    sp.add_argument("--family", required=True, choices=FAMILIES)
    grid_opts(sp, torus=False)
    sp.add_argument("--t", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--output", "-o")
    sp.add_argument("--unchecked", action="store_true", help="skip the [k]-RDF self check")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="check a labeling JSON file")
    sp.add_argument("labeling", help="path, or - for stdin")
    sp.add_argument("--k", type=int)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("exact", help="exact [k]-Roman domination number")
    grid_opts(sp)
    sp.add_argument("--k", type=int)
    sp.add_argument("--witness")
    sp.add_argument("--budget", type=lambda s: int(float(s)))
    sp.add_argument("--symmetry", action="store_true")
    sp.add_argument("--brute-force", action="store_true")
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("compare", help="tabulate upper bounds and their minimizers as CSV")
    sp.add_argument("--m", type=int)
    sp.add_argument("--k", required=True)
    sp.add_argument("--n", required=True)
    sp.add_argument("--csv", help="write to this path instead of stdout")
    sp.add_argument("--json", action="store_true", help="emit JSON rows instead of CSV")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("bounds", help="all bounds for one instance")
    grid_opts(sp)
    sp.add_argument("--k", type=int)
    sp.set_defaults(func=cmd_bounds)

    for name, fn, text in (
        ("eds", cmd_eds, "search for an efficient dominating set"),
        ("packing", cmd_packing, "maximum packing number"),
        ("gamma", cmd_gamma, "domination number"),
    ):
        sp = sub.add_parser(name, help=text)
        grid_opts(sp)
        sp.set_defaults(func=fn)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ApplicabilityError, ConstructionError) as exc:
        _note(f"error: {exc}")
        viol = getattr(exc, "violations", None)
        if viol:
            _emit({"error": str(exc), "violations": [v.to_dict() for v in viol]})
        return 1
    except (UsageError, InputError, CapacityError) as exc:
        _note(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
