"""Command line interface: ``graphbraid <command> [--graph F | --fixture NAME] --n N``."""

from __future__ import annotations

import argparse
import sys

from .cli_io import DEFAULT_BUDGET, Report, digest, dumps, load_input, oracle_cubical_homology
from .errors import GraphBraidError

STRATEGIES = ("Valency2Ends", "BranchIncident", "PlanarWalk", "Bouquet")


def _input(args):
    sub = None if args.subdivide == "none" else args.subdivide
    return load_input(args.graph, args.fixture, args.n, args.strategy, sub)


def _dims(args, top: int) -> list[int]:
    return [args.dim] if args.dim is not None else list(range(top + 1))


def cmd_cells(args, inp):
    from .config_complex import cell_name, count_cells, critical_cells

    t, n = inp.tree, args.n
    out = {}
    for k in _dims(args, n):
        crit = critical_cells(t, n, k)
        out[str(k)] = {
            "cells": count_cells(t, n, k),
            "critical": len(crit),
            "critical_cells": [cell_name(t, c) for c in crit],
        }
    return out


def cmd_morse(args, inp):
    from .config_complex import cell_name
    from .morse_engine import build_morse_complex

    t, n = inp.tree, args.n
    top = args.maxdim if args.maxdim is not None else n
    mc = build_morse_complex(t, n, maxdim=top)
    bases = {str(k): [cell_name(t, c) for c in mc.bases[k]] for k in range(top + 1)}
    boundaries = {}
    for k in range(1, top + 1):
        M = mc.matrix(k)
        rows = mc.bases[k - 1]
        entries = {}
        for j, c in enumerate(mc.bases[k]):
            col = {cell_name(t, rows[i]): M[i][j] for i in range(len(rows)) if M[i][j]}
            entries[cell_name(t, c)] = col
        boundaries[str(k)] = entries
    return {"bases": bases, "boundaries": boundaries}


def _presentation(args, inp):
    from .presentations import named_script, presentation, tietze_simplify

    p = presentation(inp.tree, args.n)
    script = args.script or None
    if script == "auto":
        script = inp.script
    if script:
        p = tietze_simplify(p, named_script(script, inp.tree, args.n))
    return p


def cmd_present(args, inp):
    from .presentations import NotCommutatorRelated, is_commutator_related, phi_matrix

    p = _presentation(args, inp)
    out = {"presentation": p.to_json(), "generators": p.rank, "relators": len(p.relators)}
    out["commutator_related"] = is_commutator_related(p)
    if out["commutator_related"]:
        try:
            out["phi"] = phi_matrix(p).to_json(p.names)
        except NotCommutatorRelated:
            pass
    return out


def cmd_homology(args, inp):
    from .morse_engine import build_morse_complex

    n = args.n
    ks = _dims(args, n)
    mc = build_morse_complex(inp.tree, n, maxdim=min(n, max(ks) + 1), check=False)
    res = {str(k): mc.homology(k).to_json() for k in ks}
    return res[str(args.dim)] if args.dim is not None else res


def cmd_cohomology(args, inp):
    from .config_complex import cell_name, parse_cell
    from .morse_engine import build_morse_complex
    from .z2_cohomology import cup, cup_graph, cup_graph_from_presentation, flag_and_triangle_check

    t, n = inp.tree, args.n
    if args.pairs:
        out = []
        for pair in args.pairs:
            a, b = (parse_cell(t, x) for x in pair.split(":"))
            prod = cup(t, a, b, n)
            out.append({"pair": [cell_name(t, a), cell_name(t, b)], "product": sorted(cell_name(t, c) for c in prod)})
        return {"products": out}
    if args.script:
        lg = cup_graph_from_presentation(_presentation(args, inp))
    else:
        lg = cup_graph(t, n)
    res = {"cup_graph": lg.to_json()}
    if n >= 3:
        mc = build_morse_complex(t, n, maxdim=min(n, 4), check=False)
        res["triangle_check"] = flag_and_triangle_check(lg, mc.homology(3).betti).to_json()
    return res


def cmd_raag(args, inp):
    from .decision import is_raag

    script = args.script if args.script and args.script != "auto" else inp.script
    return is_raag(inp.graph, args.n, tree=inp.tree if inp.fixture or args.graph_is_tree else None, script=script).to_json()


def cmd_minor(args, inp):
    from .fixtures import fixture_tree
    from .graph_model import Graph, contains_subdivision, s0_pattern, t0_pattern
    from .cli_io import read_graph_file

    name = args.pattern
    if name == "T0":
        p = t0_pattern()
    elif name == "S0":
        p = s0_pattern()
    elif name.endswith(".json"):
        data = read_graph_file(name)
        p = Graph.from_json(data.get("graph", data))
    else:
        p = fixture_tree(name, args.n or 2).graph
    hit, w = contains_subdivision(inp.graph, p, want_witness=True)
    out = {"pattern": name, "contains": hit}
    if hit:
        out["witness"] = {
            "branch_map": {str(k): v for k, v in sorted(w.branch_map.items())},
            "paths": [list(x) for x in w.paths],
        }
    return out


def cmd_audit(args, inp):
    from .decision import planarity_torsion_audit

    tree = inp.tree if args.use_tree else None
    return planarity_torsion_audit(inp.graph, args.n, tree=tree).to_json()


def cmd_oracle(args, inp):
    from .morse_engine import build_morse_complex

    n = args.n
    top = args.maxdim if args.maxdim is not None else n
    mc = build_morse_complex(inp.tree, n, maxdim=min(n, top + 1), check=False)
    rows = {}
    ok = True
    for k in range(top + 1):
        morse = mc.homology(k)
        cube = oracle_cubical_homology(inp.tree.graph, n, k, budget=args.budget)
        same = (morse.betti, morse.torsion) == (cube.betti, cube.torsion)
        ok &= same
        rows[str(k)] = {"morse": morse.to_json(), "cubical": cube.to_json(), "match": same}
    return {"status": "match" if ok else "mismatch", "dims": rows}


COMMANDS = {
    "cells": cmd_cells,
    "morse": cmd_morse,
    "present": cmd_present,
    "homology": cmd_homology,
    "cohomology": cmd_cohomology,
    "raag": cmd_raag,
    "minor": cmd_minor,
    "planar-torsion": cmd_audit,
    "audit": cmd_audit,
    "oracle-compare": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="graph or tree JSON file")
    src.add_argument("--fixture", help="shipped fixture name")
    common.add_argument("--n", type=int, required=True, help="braid index")
    common.add_argument("--strategy", choices=STRATEGIES, default="Valency2Ends")
    common.add_argument("--subdivide", choices=("Strict", "Minimal", "none"), default="Strict")
    common.add_argument("--threads", type=int, default=1, help="accepted for compatibility; output is identical")

    parser = argparse.ArgumentParser(prog="graphbraid", description="Graph braid group computations.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("cells", parents=[common], help="cell and critical cell census")
    p.add_argument("--dim", type=int)
    p = sub.add_parser("morse", parents=[common], help="Morse complex bases and boundaries")
    p.add_argument("--maxdim", type=int)
    p = sub.add_parser("present", parents=[common], help="group presentation")
    p.add_argument("--script", help="Tietze script name, or 'auto' for the fixture's script")
    p = sub.add_parser("homology", parents=[common], help="integral homology")
    p.add_argument("--dim", type=int)
    p = sub.add_parser("cohomology", parents=[common], help="GF(2) cup products and cup graph")
    p.add_argument("--pairs", nargs="*", help="products to compute, as CELL:CELL")
    p.add_argument("--script", help="use the Phi route on a scripted presentation")
    p = sub.add_parser("raag", parents=[common], help="RAAG verdict")
    p.add_argument("--script")
    p = sub.add_parser("minor", parents=[common], help="topological minor containment")
    p.add_argument("--pattern", default="S0", help="T0, S0, a fixture name or a graph JSON file")
    for name in ("planar-torsion", "audit"):
        p = sub.add_parser(name, parents=[common], help="planarity versus torsion in H_1")
        p.add_argument("--use-tree", action="store_true", help="use the input tree instead of the default")
    p = sub.add_parser("oracle-compare", parents=[common], help="Morse versus cubical homology")
    p.add_argument("--maxdim", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return parser


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.n < 0:
        parser.print_usage(sys.stderr)
        print("graphbraid: error: --n must be non-negative", file=sys.stderr)
        return 2
    try:
        inp = _input(args)
        args.graph_is_tree = args.graph is not None and "tree_edges" in inp.source
        result = COMMANDS[args.command](args, inp)
    except GraphBraidError as exc:
        print(f"graphbraid: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "graph_is_tree", "threads")}
    rep = Report(args.command, digest(inp.source), params, result)
    out.write(dumps(rep))
    return 0


def main() -> None:
    sys.exit(run())
