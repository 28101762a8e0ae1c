"""Fanout-free acyclic reversible netlists.

A netlist is a list of gate instances connected by named wires. Every wire
has exactly one driver (a primary input, a constant, or a gate output pin)
and at most one consumer. Gate outputs that are neither consumed nor
primary outputs are garbage.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import NetlistError, ParseError, WidthBoundError, WidthMismatchError
from .gates import GateDef, GateRegistry
from .truthtable import MAX_WIDTH, BitWord, TruthTable

DEFAULT_REGISTRY = GateRegistry()


def _natural_key(wire: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", wire)]


def wire_order(wires: Iterable[str]) -> list[str]:
    """Sort wire ids so that ``g2`` precedes ``g10``."""
    return sorted(wires, key=_natural_key)


@dataclass(frozen=True)
class GateInstance:
    gate: GateDef
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]


@dataclass(frozen=True)
class Netlist:
    name: str
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    constants: tuple[tuple[str, int], ...]
    instances: tuple[GateInstance, ...]
    garbage: tuple[str, ...]

    @property
    def constant_map(self) -> dict[str, int]:
        return dict(self.constants)


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    wire: str | None = None
    instance: int | None = None
    line: int | None = None

    def __str__(self) -> str:
        where = f"line {self.line}: " if self.line is not None else ""
        return f"{where}{self.kind}: {self.message}"


@dataclass(frozen=True)
class ValidationResult:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


def structural_garbage(n: Netlist) -> list[str]:
    """Gate outputs that are not consumed by a gate and not primary outputs."""
    consumed = {w for inst in n.instances for w in inst.inputs}
    primary = set(n.outputs)
    return wire_order(
        w for inst in n.instances for w in inst.outputs if w not in consumed and w not in primary
    )


def _instance_order(n: Netlist) -> list[int]:
    """Topological order of instance indices; raises CycleError."""
    driver = {w: i for i, inst in enumerate(n.instances) for w in inst.outputs}
    sorter = TopologicalSorter()
    for i, inst in enumerate(n.instances):
        sorter.add(i, *(driver[w] for w in inst.inputs if w in driver))
    return list(sorter.static_order())


def validate(n: Netlist) -> ValidationResult:
    """Check every structural rule and report all violations found."""
    out: list[Violation] = []

    for i, inst in enumerate(n.instances):
        g = inst.gate
        if len(inst.inputs) != g.in_width or len(inst.outputs) != g.out_width:
            out.append(Violation(
                "pin-count",
                f"gate #{i} ({g.name}) has {len(inst.inputs)}/{len(inst.outputs)} pins, "
                f"needs {g.in_width}/{g.out_width}",
                instance=i,
            ))

    drivers: Counter[str] = Counter(n.inputs)
    drivers.update(w for w, _ in n.constants)
    for inst in n.instances:
        drivers.update(inst.outputs)
    for w, count in drivers.items():
        if count > 1:
            out.append(Violation("multiple-drivers", f"wire {w!r} has {count} drivers", wire=w))
    for w, bit in n.constants:
        if bit not in (0, 1):
            out.append(Violation("bad-constant", f"constant {w!r} = {bit!r}", wire=w))

    consumers: Counter[str] = Counter()
    for inst in n.instances:
        consumers.update(inst.inputs)
    consumers.update(n.outputs)
    consumers.update(n.garbage)
    for w, count in consumers.items():
        if count > 1:
            out.append(Violation("fanout", f"wire {w!r} has {count} consumers", wire=w))
        if w not in drivers:
            out.append(Violation("undriven", f"wire {w!r} has no driver", wire=w))

    gate_outputs = {w for inst in n.instances for w in inst.outputs}
    for w in list(n.inputs) + [w for w, _ in n.constants]:
        if w not in consumers:
            out.append(Violation("dangling", f"source wire {w!r} is never used", wire=w))
    declared = set(n.garbage)
    for w in n.garbage:
        if w not in gate_outputs:
            out.append(Violation("garbage", f"garbage wire {w!r} is not a gate output", wire=w))
    for w in structural_garbage(n):
        if w not in declared:
            out.append(Violation("garbage", f"unused gate output {w!r} is not declared garbage", wire=w))

    try:
        _instance_order(n)
    except CycleError as exc:
        cycle = [i for i in exc.args[1] if isinstance(i, int)]
        out.append(Violation(
            "cycle",
            "gate instances form a cycle: " + " -> ".join(f"#{i}" for i in cycle),
            instance=cycle[0] if cycle else None,
        ))
    return ValidationResult(tuple(out))


def _require_valid(n: Netlist) -> None:
    result = validate(n)
    if not result:
        raise NetlistError(result.violations)


def _apply(gate: GateDef, bits: list[int]) -> tuple[int, ...]:
    word = gate.table[BitWord.from_bits(bits).value]
    return BitWord(word, gate.out_width).bits


def simulate(n: Netlist, word: BitWord | str | int) -> tuple[BitWord, BitWord]:
    """Evaluate ``n`` on one input word.

    Returns the primary outputs in declared order and the garbage outputs
    in wire-id order, both MSB first.
    """
    _require_valid(n)
    if isinstance(word, str):
        word = BitWord.parse(word)
    elif isinstance(word, int):
        word = BitWord(word, len(n.inputs))
    if word.width != len(n.inputs):
        raise WidthMismatchError(f"{n.name} has {len(n.inputs)} inputs, got a {word.width}-bit word")
    values: dict[str, int] = dict(zip(n.inputs, word.bits))
    values.update(n.constants)
    for i in _instance_order(n):
        inst = n.instances[i]
        result = _apply(inst.gate, [values[w] for w in inst.inputs])
        values.update(zip(inst.outputs, result))
    primary = BitWord.from_bits(values[w] for w in n.outputs)
    garbage = BitWord.from_bits(values[w] for w in structural_garbage(n))
    return primary, garbage


def to_truth_table(n: Netlist) -> TruthTable:
    """Primary-output table over all input words, by vectorised simulation."""
    _require_valid(n)
    width = len(n.inputs)
    if width > MAX_WIDTH or len(n.outputs) > MAX_WIDTH:
        raise WidthBoundError(f"{n.name} is too wide for exhaustive extraction")
    x = np.arange(1 << width, dtype=np.int64)
    values: dict[str, np.ndarray] = {
        w: (x >> (width - 1 - i)) & 1 for i, w in enumerate(n.inputs)
    }
    for w, bit in n.constants:
        values[w] = np.full(x.shape, bit, dtype=np.int64)
    for i in _instance_order(n):
        inst = n.instances[i]
        g = inst.gate
        index = np.zeros_like(x)
        for w in inst.inputs:
            index = (index << 1) | values[w]
        word = g.table.rows[index]
        for k, w in enumerate(inst.outputs):
            values[w] = (word >> (g.out_width - 1 - k)) & 1
    rows = np.zeros_like(x)
    for w in n.outputs:
        rows = (rows << 1) | values[w]
    return TruthTable(width, len(n.outputs), rows)


def depth(n: Netlist) -> int:
    """Unit delay: the most gate instances on any path to a boundary output."""
    _require_valid(n)
    level = {w: 0 for w in n.inputs}
    level.update((w, 0) for w, _ in n.constants)
    for i in _instance_order(n):
        inst = n.instances[i]
        here = max((level[w] for w in inst.inputs), default=0) + 1
        level.update((w, here) for w in inst.outputs)
    boundary = list(n.outputs) + structural_garbage(n)
    return max((level[w] for w in boundary), default=0)


class NetlistBuilder:
    """Incremental construction; :meth:`build` derives the garbage list
    from the structural rule and validates the result."""

    def __init__(self, name: str, registry: GateRegistry | None = None):
        self.name = name
        self.registry = registry or DEFAULT_REGISTRY
        self._inputs: list[str] = []
        self._outputs: list[str] = []
        self._constants: list[tuple[str, int]] = []
        self._instances: list[GateInstance] = []

    def input(self, *wires: str) -> NetlistBuilder:
        self._inputs.extend(wires)
        return self

    def constant(self, wire: str, bit: int) -> NetlistBuilder:
        self._constants.append((wire, int(bit)))
        return self

    def gate(self, gate: GateDef | str, inputs: Iterable[str], outputs: Iterable[str]) -> NetlistBuilder:
        if isinstance(gate, str):
            gate = self.registry[gate]
        self._instances.append(GateInstance(gate, tuple(inputs), tuple(outputs)))
        return self

    def output(self, *wires: str) -> NetlistBuilder:
        self._outputs.extend(wires)
        return self

    def build(self, *, check: bool = True) -> Netlist:
        draft = Netlist(
            self.name,
            tuple(self._inputs),
            tuple(self._outputs),
            tuple(self._constants),
            tuple(self._instances),
            (),
        )
        n = Netlist(
            draft.name, draft.inputs, draft.outputs, draft.constants, draft.instances,
            tuple(structural_garbage(draft)),
        )
        if check:
            _require_valid(n)
        return n


def build_prg_converter() -> Netlist:
    """BCD to excess-3 with a single partial reversible gate."""
    b = NetlistBuilder("prg-converter")
    b.input("x3", "x2", "x1", "x0")
    b.gate("PRG", ["x3", "x2", "x1", "x0"], ["y3", "y2", "y1", "y0"])
    b.output("y3", "y2", "y1", "y0")
    return b.build()


def build_tsg_ripple_adder(addend: int = 0b0011) -> Netlist:
    """Four TSG full adders adding a constant to a 4-bit word.

    Stage ``i`` binds TSG pins as A = x_i, B = addend bit i, C = 0,
    D = carry in; R is sum bit i, S the carry out, P and Q are garbage.
    The first carry in is a constant 0 and the last carry out is garbage.
    """
    if not 0 <= addend < 16:
        raise ValueError(f"addend {addend} is not a 4-bit value")
    b = NetlistBuilder("tsg-adder")
    b.input("x3", "x2", "x1", "x0")
    b.constant("c0", 0)
    for i in range(4):
        b.constant(f"k{i}", (addend >> i) & 1)
        b.constant(f"z{i}", 0)
        b.gate("TSG", [f"x{i}", f"k{i}", f"z{i}", f"c{i}"], [f"p{i}", f"q{i}", f"s{i}", f"c{i + 1}"])
    b.output("s3", "s2", "s1", "s0")
    return b.build()


BUILTIN_NETLISTS = {
    "prg-converter": build_prg_converter,
    "tsg-adder": build_tsg_ripple_adder,
}


# Netlist files


def dump_netlist(n: Netlist) -> str:
    lines = [
        f"name: {n.name}",
        f"inputs: {', '.join(n.inputs)}",
        f"outputs: {', '.join(n.outputs)}",
        "constants: " + ", ".join(f"{w}={bit}" for w, bit in n.constants),
        "gates:",
    ]
    for inst in n.instances:
        lines.append(f"  {inst.gate.name} {' '.join(inst.inputs)} -> {' '.join(inst.outputs)}")
    lines.append(f"garbage: {', '.join(n.garbage)}")
    return "\n".join(lines) + "\n"


def write_netlist(n: Netlist, path: str | Path) -> None:
    Path(path).write_text(dump_netlist(n))


_NETLIST_KEYS = ("name", "inputs", "outputs", "constants", "gates", "garbage")


def _wires(text: str) -> tuple[str, ...]:
    return tuple(w for w in text.replace(",", " ").split() if w)


def parse_netlist(
    text: str, source: str | None = None, registry: GateRegistry | None = None
) -> Netlist:
    """Parse netlist text and validate it.

    Structural violations are raised as :class:`NetlistError` with the
    line of the offending gate or wire declaration attached.
    """
    registry = registry or DEFAULT_REGISTRY
    fields: dict[str, tuple[int, str]] = {}
    gate_lines: list[tuple[int, str]] = []
    in_gates = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if in_gates and "->" in line:
            gate_lines.append((lineno, line))
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if not sep or key not in _NETLIST_KEYS:
            raise ParseError(f"expected one of {', '.join(_NETLIST_KEYS)}, got {line!r}", lineno, source)
        if key in fields:
            raise ParseError(f"duplicate field {key!r}", lineno, source)
        fields[key] = (lineno, value.strip())
        in_gates = key == "gates"
        if in_gates and value.strip():
            raise ParseError("gate lines start on the line after 'gates:'", lineno, source)
    for key in ("name", "inputs", "outputs"):
        if key not in fields:
            raise ParseError(f"missing field {key!r}", None, source)

    wire_line: dict[str, int] = {}

    def note(wires, lineno):
        for w in wires:
            wire_line.setdefault(w, lineno)

    inputs = _wires(fields["inputs"][1])
    note(inputs, fields["inputs"][0])
    outputs = _wires(fields["outputs"][1])
    constants = []
    if "constants" in fields:
        lineno, value = fields["constants"]
        for item in _wires(value):
            w, eq, bit = item.partition("=")
            if not eq or bit not in ("0", "1"):
                raise ParseError(f"constant must be 'wire=0' or 'wire=1', got {item!r}", lineno, source)
            constants.append((w, int(bit)))
        note((w for w, _ in constants), lineno)

    instances = []
    instance_line = []
    for lineno, line in gate_lines:
        lhs, _, rhs = line.partition("->")
        head = lhs.split()
        if not head:
            raise ParseError("gate line needs a gate name", lineno, source)
        try:
            gate = registry[head[0]]
        except KeyError as exc:
            raise ParseError(str(exc), lineno, source) from None
        outs = tuple(rhs.split())
        instances.append(GateInstance(gate, tuple(head[1:]), outs))
        instance_line.append(lineno)
        note(outs, lineno)
    garbage = _wires(fields["garbage"][1]) if "garbage" in fields else ()

    n = Netlist(fields["name"][1], inputs, outputs, tuple(constants), tuple(instances), garbage)
    result = validate(n)
    if not result:
        located = []
        for v in result.violations:
            line = None
            if v.instance is not None:
                line = instance_line[v.instance]
            elif v.wire is not None:
                line = wire_line.get(v.wire)
            located.append(Violation(v.kind, v.message, v.wire, v.instance, line))
        err = NetlistError(located)
        err.source = source
        raise err
    return n


def load_netlist(path: str | Path, registry: GateRegistry | None = None) -> Netlist:
    path = Path(path)
    return parse_netlist(path.read_text(), source=str(path), registry=registry)


def resolve_netlist(ref: str, registry: GateRegistry | None = None) -> Netlist:
    """A reserved built-in name or a path to a netlist file."""
    if ref in BUILTIN_NETLISTS:
        return BUILTIN_NETLISTS[ref]()
    return load_netlist(ref, registry)


def constant_count(n: Netlist) -> int:
    return len(n.constants)


def wire_kinds(n: Netlist) -> Mapping[str, str]:
    """Classify each wire as primary_input, constant, internal,
    primary_output, or garbage_output."""
    kinds: dict[str, str] = {}
    for w in n.inputs:
        kinds[w] = "primary_input"
    for w, bit in n.constants:
        kinds[w] = f"constant({bit})"
    for inst in n.instances:
        for w in inst.outputs:
            kinds[w] = "internal"
    for w in structural_garbage(n):
        kinds[w] = "garbage_output"
    for w in n.outputs:
        if kinds.get(w) in (None, "internal"):
            kinds[w] = "primary_output"
    return kinds
