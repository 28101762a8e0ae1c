"""Command-line entry point.

Exit status: 0 success or verified, 1 semantic failure (irreversible gate,
non-injective spec, invalid circuit, mismatch), 2 usage or parse failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import circuit, gates, metrics
from .errors import (
    NetlistError,
    NotInjectiveError,
    ParseError,
    PrgKitError,
    UnknownGateError,
    WidthMismatchError,
)
from .truthtable import (
    BitWord,
    InputDomain,
    PartialSpec,
    format_pla,
    parse_domain,
    parse_partial_pla,
    table_equal_on,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# Published cost figures for the two BCD to excess-3 converters.
PUBLISHED = {
    "tsg-adder": (4, 9, 4),
    "prg-converter": (1, 0, 1),
    "improvement": ("400%", "900%", "400%"),
}
DEMO_LABELS = {"tsg-adder": "Full adder using TSG", "prg-converter": "Proposed PRG gate"}


class UsageError(Exception):
    pass


def _out(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _resolve_gate(ref: str, enforce_domain: bool = True) -> gates.GateDef:
    try:
        return gates.builtin(ref)
    except UnknownGateError:
        pass
    path = Path(ref)
    if not path.exists():
        raise UsageError(f"{ref!r} is neither a built-in gate ({', '.join(gates.BUILTIN_NAMES)}) nor a file")
    return gates.load_gate_spec(path, enforce_domain=enforce_domain)


def _registry(gate_files: list[str] | None) -> gates.GateRegistry:
    registry = gates.GateRegistry()
    for path in gate_files or ():
        registry.load(path)
    return registry


def _resolve_netlist(ref: str, registry: gates.GateRegistry) -> circuit.Netlist:
    if ref not in circuit.BUILTIN_NETLISTS and not Path(ref).exists():
        names = ", ".join(circuit.BUILTIN_NETLISTS)
        raise UsageError(f"{ref!r} is neither a built-in netlist ({names}) nor a file")
    return circuit.resolve_netlist(ref, registry)


def cmd_gate_verify(args) -> int:
    g = _resolve_gate(args.gate, enforce_domain=False)
    if args.domain:
        g = dataclasses.replace(g, declared_domain=parse_domain(args.domain, g.in_width))
    report = gates.verify_gate(g)
    print(f"{g.name}: {report.describe(g.in_width, g.out_width)}")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_gate_show(args) -> int:
    g = _resolve_gate(args.gate)
    if args.domain:
        g = dataclasses.replace(g, declared_domain=parse_domain(args.domain, g.in_width))
    _out(gates.dump_gate_spec(g), args.out)
    return EXIT_OK


def cmd_synth_prg(args) -> int:
    path = Path(args.spec)
    spec = parse_partial_pla(path.read_text(), source=str(path))
    if args.domain:
        domain = parse_domain(args.domain, spec.in_width)
        assigned = spec.assigned
        missing = [x for x in domain if x not in assigned]
        if missing:
            raise UsageError(f"spec does not assign input {missing[0]:0{spec.in_width}b}")
        spec = PartialSpec.from_mapping(spec.in_width, spec.out_width, {x: assigned[x] for x in domain})
    try:
        g = gates.synthesize_prg(spec, path.stem)
    except NotInjectiveError as exc:
        print(f"error: spec is not injective on its domain; {len(exc.collisions)} collision(s):", file=sys.stderr)
        for c in exc.collisions:
            print(f"  {c.format(spec.in_width, spec.out_width)}", file=sys.stderr)
        return EXIT_FAIL
    except WidthMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    n = spec.in_width
    filled = [x for x in range(len(g.table)) if x not in spec.domain]
    print(f"{g.name}: {len(spec.domain)} assigned row(s), {len(filled)} completed row(s)")
    for x in filled:
        print(f"  {x:0{n}b} -> {g.table[x]:0{n}b}")
    _out(gates.dump_gate_spec(g), args.out)
    return EXIT_OK


def cmd_circuit(args) -> int:
    n = _resolve_netlist(args.netlist, _registry(args.gate))
    if args.action == "simulate":
        if args.input is None:
            raise UsageError("circuit simulate needs --input <bits>")
        try:
            word = BitWord.parse(args.input)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if word.width != len(n.inputs):
            raise UsageError(f"{n.name} has {len(n.inputs)} inputs, --input has {word.width} bits")
        primary, garbage = circuit.simulate(n, word)
        if args.format == "csv":
            text = f"input,primary,garbage\n{word},{primary},{garbage}\n"
        else:
            text = f"primary: {primary}\ngarbage: {garbage if garbage.width else '(none)'}\n"
        _out(text, args.out)
    elif args.action == "table":
        _out(format_pla(circuit.to_truth_table(n)), args.out)
    else:
        rows = [(n.name, metrics.cost_report(n))]
        fmt = metrics.format_csv if args.format == "csv" else metrics.format_table
        _out(fmt(rows), args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    registry = _registry(args.gate)
    a = _resolve_netlist(args.baseline, registry)
    b = _resolve_netlist(args.proposed, registry)
    ra, rb = metrics.cost_report(a), metrics.cost_report(b)
    rows = [(a.name, ra), (b.name, rb)]
    fmt = metrics.format_csv if args.format == "csv" else metrics.format_table
    _out(fmt(rows, metrics.compare(ra, rb)), args.out)
    return EXIT_OK


def demo_table2() -> tuple[str, list[str]]:
    """Build both converters, check them, and render the comparison.

    Returns the report text and a list of mismatches against the
    published figures (empty when everything matches).
    """
    tsg = circuit.build_tsg_ripple_adder()
    prg = circuit.build_prg_converter()
    bcd = InputDomain.bcd()
    tsg_table, prg_table = circuit.to_truth_table(tsg), circuit.to_truth_table(prg)
    problems = []
    matches = sum(tsg_table[x] == prg_table[x] == x + 3 for x in bcd)
    if not table_equal_on(tsg_table, prg_table, bcd) or matches != len(bcd):
        problems.append(f"equivalence: only {matches}/{len(bcd)} BCD inputs give x+3 on both circuits")

    reports = {name: metrics.cost_report(n) for name, n in (("tsg-adder", tsg), ("prg-converter", prg))}
    comparison = metrics.compare(reports["tsg-adder"], reports["prg-converter"])
    for name, report in reports.items():
        got = (report.gates, report.garbage, report.delay)
        if got != PUBLISHED[name]:
            problems.append(f"{DEMO_LABELS[name]}: expected {PUBLISHED[name]}, got {got}")
    if comparison.percents() != PUBLISHED["improvement"]:
        problems.append(f"improvement: expected {PUBLISHED['improvement']}, got {comparison.percents()}")

    lines = ["BCD to excess-3 code converter: TSG ripple adder vs partial reversible gate", ""]
    lines.append(f"Functional equivalence on BCD inputs {{0..9}}: {matches}/{len(bcd)} rows match x+3")
    lines.append("")
    text = "\n".join(lines) + "\n"
    rows = [(DEMO_LABELS[name], r) for name, r in reports.items()]
    text += metrics.format_table(rows, comparison)
    if problems:
        text += "\nMISMATCH against published figures:\n" + "".join(f"  {p}\n" for p in problems)
    else:
        text += "\nAll figures match the published comparison.\n"
    return text, problems


def cmd_demo(args) -> int:
    text, problems = demo_table2()
    if args.format == "csv":
        tsg = metrics.cost_report(circuit.build_tsg_ripple_adder())
        prg = metrics.cost_report(circuit.build_prg_converter())
        text = metrics.format_csv([("tsg-adder", tsg), ("prg-converter", prg)], metrics.compare(tsg, prg))
    _out(text, args.out)
    if problems and args.format == "csv":
        for p in problems:
            print(f"mismatch: {p}", file=sys.stderr)
    return EXIT_FAIL if problems else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prgkit",
        description="Verify, synthesize, simulate, and cost reversible and partial reversible circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, domain=False, fmt=False, inp=False, gate_files=False):
        p.add_argument("--out", help="write output to this file instead of stdout")
        if domain:
            p.add_argument("--domain", help="input domain: comma list, lo..hi ranges, 'bcd', or 'all'")
        if fmt:
            p.add_argument("--format", choices=("text", "csv"), default="text")
        if inp:
            p.add_argument("--input", help="input bits, most significant first")
        if gate_files:
            p.add_argument("--gate", action="append", metavar="PATH", help="load a gate-spec file (repeatable)")

    gate = sub.add_parser("gate", help="inspect gates").add_subparsers(dest="action", required=True)
    p = gate.add_parser("verify", help="classify a gate as fully, partially, or not reversible")
    p.add_argument("gate", help="built-in gate name or gate-spec file")
    common(p, domain=True)
    p.set_defaults(func=cmd_gate_verify)
    p = gate.add_parser("show", help="print a gate-spec file")
    p.add_argument("gate")
    common(p, domain=True)
    p.set_defaults(func=cmd_gate_show)

    synth = sub.add_parser("synth", help="synthesize gates").add_subparsers(dest="action", required=True)
    p = synth.add_parser("prg", help="complete a partial spec to a reversible gate")
    p.add_argument("spec", help="PLA file; rows with '-' outputs are outside the domain")
    common(p, domain=True)
    p.set_defaults(func=cmd_synth_prg)

    circ = sub.add_parser("circuit", help="work with netlists")
    circ.add_argument("action", choices=("simulate", "table", "metrics"))
    circ.add_argument("netlist", help="'prg-converter', 'tsg-adder', or a netlist file")
    common(circ, fmt=True, inp=True, gate_files=True)
    circ.set_defaults(func=cmd_circuit)

    p = sub.add_parser("compare", help="compare the cost of two netlists")
    p.add_argument("baseline")
    p.add_argument("proposed")
    common(p, fmt=True, gate_files=True)
    p.set_defaults(func=cmd_compare)

    demo = sub.add_parser("demo", help="reproduce reference results")
    demo.add_argument("which", choices=("table2",))
    common(demo, fmt=True)
    demo.set_defaults(func=cmd_demo)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, UnknownGateError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotInjectiveError as exc:
        # a gate file whose declared domain collides is rejected at load
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NetlistError as exc:
        for v in exc.violations:
            print(f"error: {v}", file=sys.stderr)
        return EXIT_FAIL
    except (PrgKitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
