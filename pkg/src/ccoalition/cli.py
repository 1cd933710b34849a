"""``cc`` command line: compute, verify and sweep."""
from __future__ import annotations

import argparse
import json
import sys

from .coalition import (
    DEFAULT_ORACLE_CAP,
    NotCoalitionPartition,
    OracleTooLarge,
    PartitionError,
    _oracle_cap,
    cc_oracle,
    validate_partition,
)
from .formulas import (
    Undecided,
    cc_auto,
    cc_complete_bipartite,
    cc_tree,
    cc_two_characterization,
    cc_unicyclic,
)
from .generators import c4_plus_e, complete, complete_bipartite, cycle, family_G, path, star
from .graph import Graph, GraphError, is_connected, parse_adjlist, vset
from .graph6 import Graph6Error, graph6_decode
from .sweep import FAMILIES, TSV_HEADER, OracleCache, Summary, run_sweep

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNDECIDED = 2
EXIT_INVALID = 3


class InputError(Exception):
    pass


def _cycle_report(g: Graph) -> dict:
    if g.n >= 3 and is_connected(g) and g.edge_count == g.n and all(g.degree(v) == 2 for v in range(g.n)):
        value = 4 if g.n == 4 else 3
        return {"applicable": True, "value": value, "case": "C4" if g.n == 4 else "other", "inputs": {"n": g.n}}
    return {"applicable": False, "value": None, "case": "not a cycle", "inputs": {}}


FORMULAS = {
    "tree": lambda g: cc_tree(g).to_json(),
    "cycle": _cycle_report,
    "unicyclic": lambda g: cc_unicyclic(g).to_json(),
    "cut-set": lambda g: cc_two_characterization(g).to_json(),
    "complete-bipartite": lambda g: cc_complete_bipartite(g).to_json(),
}


def _pair(text: str) -> tuple[int, int]:
    try:
        m, n = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected M,N") from None
    return m, n


def add_graph_args(p: argparse.ArgumentParser) -> None:
    src = p.add_argument_group("graph input (precedence: --graph6, --edges, --adjlist, family flags)")
    src.add_argument("--graph6", help="graph6 string")
    src.add_argument("--edges", help='vertex count then edge endpoints, e.g. "3 0 1 1 2"; a bare edge list infers n')
    src.add_argument("--adjlist", metavar="FILE", help="file holding n followed by edge endpoints")
    src.add_argument("--cycle", type=int, metavar="N")
    src.add_argument("--path", type=int, metavar="N")
    src.add_argument("--complete", type=int, metavar="N")
    src.add_argument("--star", type=int, metavar="K", help="K_{1,K}")
    src.add_argument("--bipartite", type=_pair, metavar="M,N")
    src.add_argument("--family-g", type=int, metavar="K", help="triangle with K pendants on one vertex")
    src.add_argument("--c4e", action="store_true", help="C4 with one pendant")


def parse_edges(text: str) -> Graph:
    """``"0 1 1 2"`` (pairs only, n inferred) or ``"n u v ..."`` (odd token count)."""
    try:
        values = [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise GraphError(f"bad edge list: {exc}") from None
    if len(values) % 2:
        return parse_adjlist(text.replace(",", " "))
    n = max(values, default=-1) + 1
    return Graph.from_edges(n, zip(values[::2], values[1::2]))


def read_graph(args: argparse.Namespace) -> Graph:
    try:
        if args.graph6 is not None:
            return graph6_decode(args.graph6)
        if args.edges is not None:
            return parse_edges(args.edges)
        if args.adjlist is not None:
            with open(args.adjlist) as fh:
                return parse_adjlist(fh.read())
        if args.cycle is not None:
            return cycle(args.cycle)
        if args.path is not None:
            return path(args.path)
        if args.complete is not None:
            return complete(args.complete)
        if args.star is not None:
            return star(args.star)
        if args.bipartite is not None:
            return complete_bipartite(*args.bipartite)
        if args.family_g is not None:
            return family_G(args.family_g)
        if args.c4e:
            return c4_plus_e()
    except (GraphError, OSError) as exc:
        raise InputError(str(exc)) from None
    raise InputError("no graph given; use --graph6, --edges, --adjlist or a family flag")


def _cap(args: argparse.Namespace) -> int:
    cap = _oracle_cap(args.max_oracle_n)
    if args.max_oracle_n is not None and args.max_oracle_n > DEFAULT_ORACLE_CAP:
        print(f"warning: oracle cap raised to {args.max_oracle_n}; runtime grows quickly beyond {DEFAULT_ORACLE_CAP}", file=sys.stderr)
    return cap


def _emit(doc: dict) -> None:
    print(json.dumps(doc, sort_keys=False))


def cmd_compute(args: argparse.Namespace) -> int:
    g = read_graph(args)
    cap = _cap(args)
    try:
        if args.method == "auto":
            _emit(cc_auto(g, cap).to_json())
        elif args.method == "oracle":
            _emit(cc_oracle(g, cap, workers=args.workers).to_json())
        else:
            report = FORMULAS[args.method](g)
            _emit(report)
            if not report["applicable"]:
                return EXIT_UNDECIDED
    except Undecided as exc:
        _emit({"error": "undecided", "message": str(exc), "lower_bound": exc.lower_bound})
        return EXIT_UNDECIDED
    except OracleTooLarge as exc:
        _emit({"error": "cap-exceeded", "message": str(exc)})
        return EXIT_UNDECIDED
    return EXIT_OK


def parse_partition(text: str) -> list[int]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"partition is not JSON: {exc}") from None
    if isinstance(doc, dict):
        doc = doc.get("cells")
    if not isinstance(doc, list) or not all(isinstance(c, list) and all(isinstance(v, int) and v >= 0 for v in c) for c in doc):
        raise InputError("partition must be a JSON list of lists of vertex ids")
    cells = []
    for c in doc:
        if len(set(c)) != len(c):
            raise InputError(f"cell {c} repeats a vertex")
        cells.append(vset(c))
    return cells


def cmd_verify(args: argparse.Namespace) -> int:
    g = read_graph(args)
    cells = parse_partition(args.partition)
    try:
        cert = validate_partition(g, cells)
    except PartitionError as exc:
        raise InputError(f"not a partition of V: {exc}") from None
    except NotCoalitionPartition as exc:
        _emit({"valid": False, "failing_cell": exc.cell, "message": str(exc)})
        return EXIT_INVALID
    _emit({"valid": True, "certificate": cert.to_json()})
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    cache = OracleCache(_cap(args))
    options = {}
    if args.family in ("trees", "unicyclic"):
        options["rule"] = args.rule
    if args.family in ("trees", "unicyclic", "zero-family", "cut-set", "cds-partition"):
        options["labelled"] = not args.dedup
        options["source"] = args.source
    summary = Summary()
    out = sys.stdout
    rows = []
    try:
        if args.format == "tsv":
            print(TSV_HEADER, file=out)
        for row in run_sweep(args.family, args.max_n, cache=cache, **options):
            summary.add(row)
            if args.disagreements_only and row.agree:
                continue
            if args.format == "tsv":
                print(row.tsv(), file=out)
            else:
                rows.append(row.to_json())
    except (GraphError, ValueError, OSError, Graph6Error) as exc:
        raise InputError(str(exc)) from None
    if args.format == "json":
        _emit({"family": args.family, "max_n": args.max_n, "rows": rows, "summary": summary.to_json()})
    doc = summary.to_json()
    doc["oracle_classes"] = cache.classes
    print(json.dumps(doc), file=sys.stderr)
    return EXIT_OK if summary.disagree == 0 else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cc", description="Connected coalition number tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_cap(p: argparse.ArgumentParser) -> None:
        p.add_argument("--max-oracle-n", type=int, default=None, help=f"oracle size cap (default $CC_ORACLE_CAP or {DEFAULT_ORACLE_CAP})")

    p = sub.add_parser("compute", help="compute CC of one graph")
    add_graph_args(p)
    p.add_argument("--method", default="auto", choices=["auto", "oracle", *FORMULAS])
    p.add_argument("--workers", type=int, default=1, help="processes for the oracle")
    with_cap(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="check a connected coalition partition")
    add_graph_args(p)
    p.add_argument("--partition", required=True, help='JSON list of cells, e.g. "[[0],[1],[2,3,4]]"')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="compare closed forms with the oracle over a family")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--rule", default="default", choices=["default", "auto"], help="formula for trees/unicyclic: the family rule or the dispatcher")
    p.add_argument("--format", default="tsv", choices=["tsv", "json"])
    p.add_argument("--dedup", action="store_true", help="one graph per isomorphism class instead of every labelled graph")
    p.add_argument("--source", metavar="FILE", help="graph6 file replacing built-in enumeration")
    p.add_argument("--disagreements-only", action="store_true")
    with_cap(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
