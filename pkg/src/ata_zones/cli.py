"""Command line interface: ``ata-zones <verb> ...``.

Exit codes for the deciding verbs (``sat``, ``empty``, ``modelcheck``):
0 empty / unsatisfiable, 1 non-empty / satisfiable, 2 inconclusive,
3 malformed input.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from .ata import accepting_run, format_config
from .emptiness import PRUNING_MODES, AtaSystem, ExploreConfig, explore
from .entailment import entailment_counterexample, node_entails_bounded
from .hardness import gen_hardness_instance, is_satisfiable, parse_dimacs
from .mtl import MtlSyntaxError, is_one_sided, parse_mtl, satisfied_by, translate, width_bound
from .product import ProductSystem
from .textio import ParseError, format_ata, format_word, parse_ata, parse_ta, parse_word
from .zones import dump_node, parse_node

EXIT_INPUT_ERROR = 3


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _config(args, prune=None) -> ExploreConfig:
    return ExploreConfig(pruning=prune or args.prune or "full", max_nodes=args.max_nodes,
                         order=args.order)


def _word_json(word):
    return [[str(Fraction(d)), a] for d, a in word]


def _report(verdict, system, args, out):
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(verdict.graph.to_dot(system.dump) + "\n")
    graph = verdict.graph
    if args.json:
        payload = {
            "status": verdict.status,
            "witness": None if verdict.witness is None else _word_json(verdict.witness),
            "nodes": len(graph.nodes),
            "edges": len(graph.edges),
            "reason": verdict.reason,
        }
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(f"{verdict.status}\n")
        if verdict.witness is not None:
            out.write(f"witness: {format_word(verdict.witness)}\n")
        if verdict.reason:
            out.write(f"reason: {verdict.reason}\n")
        out.write(f"nodes: {len(graph.nodes)}, edges: {len(graph.edges)}\n")
    return verdict.exit_code


def cmd_translate(args, out):
    f = parse_mtl(args.mtl, args.alphabet)
    t = translate(f, args.alphabet)
    if args.json:
        out.write(json.dumps({
            "ata": format_ata(t.ata),
            "locations": {name: text for name, text in sorted(t.describe.items())},
        }, sort_keys=True) + "\n")
    else:
        for name, text in sorted(t.describe.items()):
            out.write(f"# {name}: {text}\n")
        out.write(format_ata(t.ata))
    return 0


def cmd_width_bound(args, out):
    f = parse_mtl(args.mtl, args.alphabet)
    try:
        k = width_bound(f)
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT_ERROR
    out.write(json.dumps({"width_bound": k}) + "\n" if args.json else f"{k}\n")
    return 0


def cmd_sat(args, out):
    f = parse_mtl(args.mtl, args.alphabet)
    system = AtaSystem(translate(f, args.alphabet).ata)
    prune = args.prune or ("bounded" if is_one_sided(f) else "full")
    verdict = explore(system, _config(args, prune))
    if verdict.witness is not None and not satisfied_by(verdict.witness, f):
        raise RuntimeError("witness violates the formula")
    return _report(verdict, system, args, out)


def cmd_empty(args, out):
    system = AtaSystem(parse_ata(_read(args.ata)))
    return _report(explore(system, _config(args)), system, args, out)


def cmd_modelcheck(args, out):
    if (args.spec is None) == (args.mtl is None):
        raise ValueError("give exactly one of --spec and --mtl")
    ta = parse_ta(_read(args.ta))
    if args.spec is not None:
        spec = parse_ata(_read(args.spec))
    else:
        spec = translate(parse_mtl(args.mtl, sorted(ta.alphabet)), sorted(ta.alphabet)).ata
    system = ProductSystem(ta, spec)
    return _report(explore(system, _config(args)), system, args, out)


def cmd_simulate(args, out):
    ata = parse_ata(_read(args.ata))
    word = parse_word(args.word)
    run = accepting_run(ata, word)
    if args.json:
        steps = None if run is None else [
            {"delay": str(s.delay), "letter": s.letter, "after_delay": format_config(s.elapsed),
             "clauses": [str(c) for c in s.clauses], "config": format_config(s.config)}
            for s in run
        ]
        out.write(json.dumps({"accepted": run is not None, "initial": format_config(ata.initial_config()),
                              "run": steps}, sort_keys=True) + "\n")
    else:
        out.write("ACCEPTED\n" if run is not None else "REJECTED\n")
        if run is not None:
            out.write(f"  {format_config(ata.initial_config())}\n")
            for s in run:
                out.write(f"  --{s.delay}--> {format_config(s.elapsed)}\n")
                out.write(f"  --{s.letter}--> {format_config(s.config)}\n")
    return 0 if run is not None else 1


def cmd_entail(args, out):
    n1 = parse_node(_read(args.z))
    n2 = parse_node(_read(args.zprime))
    if args.bounded:
        holds, cex = node_entails_bounded(n1, n2, args.M), None
    else:
        cex = entailment_counterexample(n1, n2, args.M)
        holds = cex is None
    if args.json:
        payload = {"entails": holds}
        if cex:
            payload["counterexample"] = {str(v): str(val) for v, val in cex.items()}
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write("ENTAILS\n" if holds else "NOT-ENTAILS\n")
        if cex:
            out.write("counterexample: " + ", ".join(f"{v}={val}" for v, val in cex.items()) + "\n")
        elif not holds and not n1.inactive <= n2.inactive:
            out.write("inactive variables of the first node are not all inactive in the second\n")
    return 0 if holds else 1


def cmd_gen_hard(args, out):
    cnf = parse_dimacs(_read(args.cnf))
    inst = gen_hardness_instance(cnf)
    z_text, zp_text = dump_node(inst.z), dump_node(inst.z_prime)
    if args.out:
        for suffix, text in (("z", z_text), ("zprime", zp_text)):
            with open(f"{args.out}.{suffix}.zone", "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
    if args.json:
        out.write(json.dumps({"M": inst.M, "z": z_text, "zprime": zp_text,
                              "satisfiable": is_satisfiable(cnf) if args.check else None},
                             sort_keys=True) + "\n")
    else:
        out.write(f"M = {inst.M}\n")
        if args.check:
            out.write(f"satisfiable = {is_satisfiable(cnf)}\n")
        if not args.out:
            out.write("--- Z\n" + z_text + "\n--- Z'\n" + zp_text + "\n")
    return 0


class _Parser(argparse.ArgumentParser):
    # usage errors share the input-error code; 2 means inconclusive here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ata-zones", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="verb", required=True)

    def explore_opts(p):
        p.add_argument("--prune", choices=PRUNING_MODES, default=None,
                       help="default: full (sat uses bounded for one-sided formulas)")
        p.add_argument("--max-nodes", type=int, default=100_000)
        p.add_argument("--order", choices=("bfs", "dfs"), default="bfs")
        p.add_argument("--dot", metavar="FILE", help="write the zone graph in DOT format")
        p.add_argument("--jobs", type=int, default=1,
                       help="accepted for compatibility; exploration is sequential")
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("translate", help="translate an MTL formula into a 1-ATA")
    p.add_argument("--mtl", required=True)
    p.add_argument("--alphabet", nargs="*", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("width-bound", help="width bound of a one-sided formula")
    p.add_argument("--mtl", required=True)
    p.add_argument("--alphabet", nargs="*", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_width_bound)

    p = sub.add_parser("sat", help="satisfiability of an MTL formula over finite words")
    p.add_argument("--mtl", required=True)
    p.add_argument("--alphabet", nargs="*", default=None)
    explore_opts(p)
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("empty", help="emptiness of a 1-ATA")
    p.add_argument("--ata", required=True)
    explore_opts(p)
    p.set_defaults(func=cmd_empty)

    p = sub.add_parser("modelcheck", help="check a timed automaton against a 1-ATA of bad behaviours")
    p.add_argument("--ta", required=True)
    p.add_argument("--spec", "--ata", dest="spec", help="1-ATA file describing the bad behaviours")
    p.add_argument("--mtl", help="MTL formula describing the bad behaviours")
    explore_opts(p)
    p.set_defaults(func=cmd_modelcheck)

    p = sub.add_parser("simulate", help="run a 1-ATA on a timed word")
    p.add_argument("--ata", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("entail", help="decide entailment between two zone dumps")
    p.add_argument("--z", required=True)
    p.add_argument("--zprime", required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--bounded", action="store_true", help="identity map only")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_entail)

    p = sub.add_parser("gen-hard", help="zones encoding a monotone 3-SAT instance")
    p.add_argument("cnf")
    p.add_argument("--out", metavar="PREFIX", help="write PREFIX.z.zone and PREFIX.zprime.zone")
    p.add_argument("--check", action="store_true", help="also report satisfiability by brute force")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gen_hard)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args, out)
    except (ParseError, MtlSyntaxError, ValueError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
