"""Command-line interface.

Exit codes: 0 success, 1 error, 2 mathematical negative (not (C4,2K2)-free,
no linear resolution, no linear quotients found, or a failing suite case).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import graph as gr
from .homology import QQ, parse_field
from .monomial import MonomialIdeal, colon, cover_ideal, edge_ideal, parse_ideal, power
from .quotients import (
    LinearQuotientsCertificate,
    check_linear_quotients_order,
    find_linear_quotients,
    cover_power_order,
    replay_certificate,
)
from .resolution import DEFAULT_LATTICE_CAP, betti_table, has_linear_resolution, is_componentwise_linear
from .suites import (
    SuiteConfig,
    edge_order_starting_with,
    suite_reproduce,
    verify_colon_chain,
    verify_neighbor_bound,
)

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _write_json(path: str | None, data) -> None:
    if path:
        Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _graph(args) -> gr.Graph:
    if not args.graph:
        raise ValueError("--graph FILE is required")
    return gr.read_graph(args.graph)


def _ideal(args, apply_power: bool = True, apply_colon: bool = True) -> MonomialIdeal:
    if args.ideal:
        ideal = parse_ideal(Path(args.ideal).read_text(encoding="utf-8"))
    elif args.graph:
        g = gr.read_graph(args.graph)
        ideal = cover_ideal(g) if args.cover else edge_ideal(g)
    else:
        raise ValueError("one of --graph FILE or --ideal FILE is required")
    if apply_power and args.power:
        ideal = power(ideal, args.power)
    if apply_colon and args.by:
        ideal = colon(ideal, ideal.monomial(args.by))
    return ideal


def cmd_recognize(args) -> int:
    g = _graph(args)
    p, witness = gr.recognize_c4_2k2(g)
    if p is None:
        kind = "C4" if gr.find_induced(g.induced(witness), "C4") else "2K2"
        print(f"not (C4,2K2)-free: induced {kind} on {' '.join(sorted(witness, key=g.index))}")
        _write_json(args.json, {"free": False, "witness": sorted(witness, key=g.index), "pattern": kind})
        return EXIT_NEGATIVE
    data = {
        "free": True,
        "v1": sorted(p.v1, key=g.index),
        "v2": sorted(p.v2, key=g.index),
        "v3": list(p.c5_order),
    }
    print(f"V1: {' '.join(data['v1'])}")
    print(f"V2: {' '.join(data['v2'])}")
    print(f"V3: {' '.join(data['v3'])}")
    _write_json(args.json, data)
    return EXIT_OK


def cmd_covers(args) -> int:
    g = _graph(args)
    covers = gr.minimal_vertex_covers(g)
    p, _ = gr.recognize_c4_2k2(g)
    forms = {}
    if p is not None and p.v3 and not g.isolated():
        forms = {c: f for c, f in gr.classify_covers(g, p)}
    rows = []
    for c in covers:
        labels = sorted(c, key=g.index)
        f = forms.get(c)
        tag = f" [{f.kind.value} {' '.join(f.witness)}]" if f else ""
        print(" ".join(labels) + tag)
        rows.append({"cover": labels, "form": f.kind.value if f else None, "witness": list(f.witness) if f else None})
    _write_json(args.json, {"covers": rows})
    return EXIT_OK


def cmd_betti(args) -> int:
    ideal = _ideal(args)
    table = betti_table(ideal, args.field, args.cap, args.jobs, multigraded=args.multigraded)
    print(table.format())
    print(f"reg = {table.regularity}")
    data = table.to_json()
    if args.multigraded:
        data["multigraded"] = [[i, list(b), r] for (i, b), r in sorted(table.multigraded.items())]
    _write_json(args.json, data)
    return EXIT_OK


def cmd_reg(args) -> int:
    ideal = _ideal(args)
    table = betti_table(ideal, args.field, args.cap, args.jobs)
    print(table.regularity)
    _write_json(args.json, table.to_json())
    return EXIT_OK


def _print_ideal(args, ideal: MonomialIdeal) -> None:
    text = ideal.to_text()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    _write_json(args.json, ideal.to_json())


def cmd_power(args) -> int:
    if not args.power:
        raise ValueError("--power S is required")
    _print_ideal(args, _ideal(args))
    return EXIT_OK


def cmd_colon(args) -> int:
    if not args.by:
        raise ValueError("--by MONOMIAL is required")
    _print_ideal(args, _ideal(args))
    return EXIT_OK


def cmd_linres(args) -> int:
    ideal = _ideal(args)
    if args.componentwise:
        ok = is_componentwise_linear(ideal, args.field, args.cap)
    else:
        ok = has_linear_resolution(ideal, args.field, args.cap)
    print("true" if ok else "false")
    _write_json(args.json, {"linear": ok, "componentwise": args.componentwise})
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_linquo(args) -> int:
    ideal = _ideal(args)
    result = find_linear_quotients(ideal)
    if not result:
        print("no linear quotients order" + (" exists" if result is not None else " found (search inconclusive)"))
        return EXIT_NEGATIVE
    for m in result.ordered_gens:
        print(ideal.fmt(m))
    _write_json(args.json, result.to_json())
    return EXIT_OK


def cmd_coverpow(args) -> int:
    g = _graph(args)
    p, witness = gr.recognize_c4_2k2(g)
    if p is None:
        print(f"not (C4,2K2)-free: {' '.join(sorted(witness))}")
        return EXIT_NEGATIVE
    og = cover_power_order(g, p, args.power or 1)
    cert, _ = check_linear_quotients_order(og)
    for m, step in zip(og.order, ((),) + cert.step_colon_vars):
        colon_vars = " ".join(og.ideal.ring_vars[v] for v in step)
        print(og.ideal.fmt(m) + (f"   : ({colon_vars})" if colon_vars else ""))
    _write_json(args.json, cert.to_json())
    return EXIT_OK


def cmd_replay(args) -> int:
    cert = LinearQuotientsCertificate.from_json(json.loads(Path(args.cert).read_text(encoding="utf-8")))
    ideal = _ideal(args) if (args.ideal or args.graph) else None
    ok = replay_certificate(cert, ideal)
    print("valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_NEGATIVE


def _emit_report(args, report) -> int:
    for c in report.cases:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.case_id}: {c.claim} (computed {c.computed})")
    print(f"{sum(c.passed for c in report.cases)}/{len(report.cases)} passed")
    if args.json:
        Path(args.json).write_text(report.dumps() + "\n", encoding="utf-8")
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_colon_chain(args) -> int:
    g = _graph(args)
    order = edge_order_starting_with(g, tuple(args.first_edge.split(","))) if args.first_edge else None
    return _emit_report(args, verify_colon_chain(g, args.power or 1, order, args.field, args.jobs))


def cmd_neighbor_bound(args) -> int:
    return _emit_report(args, verify_neighbor_bound(_graph(args), args.jobs))


def cmd_reproduce(args) -> int:
    cfg = SuiteConfig.quick() if args.quick else SuiteConfig()
    return _emit_report(args, suite_reproduce(args.seed, cfg, args.jobs))


COMMANDS = {
    "recognize": (cmd_recognize, "decide (C4,2K2)-freeness and print the partition"),
    "covers": (cmd_covers, "list minimal vertex covers"),
    "betti": (cmd_betti, "graded Betti table"),
    "reg": (cmd_reg, "Castelnuovo-Mumford regularity"),
    "power": (cmd_power, "minimal generators of a power"),
    "colon": (cmd_colon, "colon ideal by a monomial"),
    "linres": (cmd_linres, "test for a linear resolution"),
    "linquo": (cmd_linquo, "search for a linear quotients order"),
    "coverpow": (cmd_coverpow, "linear quotients order on a cover ideal power"),
    "replay": (cmd_replay, "verify a linear quotients certificate"),
    "colon-chain": (cmd_colon_chain, "check the ordered colon ideals of an edge ideal power"),
    "neighbor-bound": (cmd_neighbor_bound, "check the neighbourhood regularity bound"),
    "reproduce": (cmd_reproduce, "run every reproduction check"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="idealis", description="Edge and cover ideals of graphs: Betti numbers, regularity, linear quotients.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--graph", metavar="FILE")
        p.add_argument("--ideal", metavar="FILE")
        p.add_argument("--cover", action="store_true", help="use the vertex cover ideal of --graph")
        p.add_argument("--power", type=int, metavar="S")
        p.add_argument("--by", metavar="MONOMIAL", help="take the colon by this monomial")
        p.add_argument("--field", type=parse_field, default=QQ, help="q or gfP (default q)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", metavar="OUT")
        p.add_argument("--cap", type=int, default=DEFAULT_LATTICE_CAP)
        p.add_argument("--jobs", type=int, default=1)
        if name in ("power", "colon"):
            p.add_argument("--out", metavar="FILE", help="also write the ideal text here")
        if name == "betti":
            p.add_argument("--multigraded", action="store_true")
        if name == "linres":
            p.add_argument("--componentwise", action="store_true")
        if name == "replay":
            p.add_argument("--cert", metavar="FILE", required=True)
        if name == "colon-chain":
            p.add_argument("--first-edge", metavar="U,V", help="start the edge order with this edge")
        if name == "reproduce":
            p.add_argument("--quick", action="store_true", help="smaller corpora")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command][0](args)
    except Exception as exc:  # reported as an infrastructure error
        print(f"idealis: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
