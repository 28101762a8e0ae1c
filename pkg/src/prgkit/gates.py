"""Gate definitions: built-in reversible gates, the BCD partial reversible
gate, user gate files, and synthesis of new partial reversible gates."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Literal

from .errors import DuplicateGateError, NotInjectiveError, ParseError, UnknownGateError
from .truthtable import (
    Collision,
    InputDomain,
    PartialSpec,
    TruthTable,
    complete_to_permutation,
    format_domain,
    format_pla,
    is_bijective,
    is_injective_on,
    parse_domain,
    parse_pla,
)

Provenance = Literal["builtin", "user-file", "synthesized"]

_DEFAULT_IN = "ABCDEFGHIJKLMNOPQRST"
_DEFAULT_OUT = "PQRSTUVWXYZ"


def _labels(prefix: str, width: int) -> tuple[str, ...]:
    if width <= len(prefix):
        return tuple(prefix[:width])
    return tuple(f"{prefix[0]}{i}" for i in range(width))


@dataclass(frozen=True)
class GateDef:
    """A named gate: its truth table plus, for a partial reversible gate,
    the input domain on which it is claimed to be reversible."""

    name: str
    table: TruthTable
    declared_domain: InputDomain | None = None
    provenance: Provenance = "builtin"
    inputs: tuple[str, ...] = ()
    outputs: tuple[str, ...] = ()
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.name or any(c.isspace() for c in self.name):
            raise ValueError(f"invalid gate name {self.name!r}")
        if not self.inputs:
            object.__setattr__(self, "inputs", _labels(_DEFAULT_IN, self.table.in_width))
        if not self.outputs:
            object.__setattr__(self, "outputs", _labels(_DEFAULT_OUT, self.table.out_width))
        if len(self.inputs) != self.table.in_width:
            raise ValueError(f"{self.name}: {len(self.inputs)} input labels for width {self.table.in_width}")
        if len(self.outputs) != self.table.out_width:
            raise ValueError(f"{self.name}: {len(self.outputs)} output labels for width {self.table.out_width}")
        if self.declared_domain is not None and self.declared_domain.width != self.table.in_width:
            raise ValueError(f"{self.name}: domain width does not match input width")

    @property
    def in_width(self) -> int:
        return self.table.in_width

    @property
    def out_width(self) -> int:
        return self.table.out_width


# Built-in gate tables. Bit tuples are MSB first, matching the label order.

def _not(a):
    return (1 - a,)


def _cnot(a, b):
    return a, a ^ b


def _toffoli(a, b, c):
    return a, b, (a & b) ^ c


def _fredkin(a, b, c):
    # controlled swap of b and c
    return (a, c, b) if a else (a, b, c)


def _tsg(a, b, c, d):
    q = ((1 - a) & (1 - c)) ^ (1 - b)
    return a, q, q ^ d, (q & d) ^ ((a & b) ^ c)


# P,Q,R output columns of the BCD partial reversible gate, rows 0000..1111
# as printed. Only three output bits survive per row; S is reconstructed
# as NOT D, which is forced on 0..9 (x+3 alternates parity with x).
PRG_PQR_BITS = (
    "001", "010", "010", "011", "011", "100", "100", "101", "101", "110",
    "101", "001", "111", "000", "100", "010",
)


def _prg_table() -> TruthTable:
    rows = []
    for x, pqr in enumerate(PRG_PQR_BITS):
        s = 1 - (x & 1)
        rows.append((int(pqr, 2) << 1) | s)
    return TruthTable(4, 4, rows)


_PRG_NOTES = (
    "BCD to excess-3 partial reversible gate.",
    "P,Q,R columns as printed; S reconstructed as NOT D on all 16 rows.",
    "Rows 1010..1111 are not reversible under any choice of S:",
    "inputs 0111, 1000, 1010 share P,Q,R = 101.",
)


class GateVerificationError(RuntimeError):
    """A built-in gate failed its exhaustive self-check."""


def verify_tsg_table(table: TruthTable) -> None:
    """Check the adopted TSG table: bijective, and a full adder with C = 0.

    With ``C = 0`` the ``R`` output must be the sum bit and ``S`` the carry
    of ``A + B + D``.
    """
    if not is_bijective(table):
        raise GateVerificationError("TSG table is not a permutation of 16 words")
    for a in (0, 1):
        for b in (0, 1):
            for d in (0, 1):
                out = table[(a << 3) | (b << 2) | d]
                r, s = (out >> 1) & 1, out & 1
                if r + 2 * s != a + b + d:
                    raise GateVerificationError(
                        f"TSG with C=0 is not a full adder at A={a} B={b} D={d}"
                    )


def _make_builtins() -> dict[str, GateDef]:
    gates = [
        GateDef("NOT", TruthTable.from_bit_function(1, 1, _not), inputs=("A",), outputs=("P",)),
        GateDef("CNOT", TruthTable.from_bit_function(2, 2, _cnot)),
        GateDef("TOFFOLI", TruthTable.from_bit_function(3, 3, _toffoli)),
        GateDef("FREDKIN", TruthTable.from_bit_function(3, 3, _fredkin)),
        GateDef("TSG", TruthTable.from_bit_function(4, 4, _tsg)),
        GateDef("PRG", _prg_table(), declared_domain=InputDomain.bcd(), notes=_PRG_NOTES),
    ]
    verify_tsg_table(gates[4].table)
    for g in gates:
        if g.declared_domain is None and not is_bijective(g.table):
            raise GateVerificationError(f"built-in {g.name} is not bijective")
        if g.declared_domain is not None and not is_injective_on(g.table, g.declared_domain):
            raise GateVerificationError(f"built-in {g.name} is not injective on its domain")
    return {g.name: g for g in gates}


_BUILTINS = _make_builtins()
BUILTIN_NAMES = tuple(_BUILTINS)


def builtin(name: str) -> GateDef:
    try:
        return _BUILTINS[name.upper()]
    except KeyError:
        raise UnknownGateError(name) from None


@dataclass(frozen=True)
class GateReport:
    """Reversibility verdict for one gate."""

    status: Literal["fully_reversible", "partially_reversible", "irreversible"]
    domain: InputDomain | None = None
    collisions: tuple[Collision, ...] = ()

    @property
    def ok(self) -> bool:
        return self.status != "irreversible"

    def describe(self, in_width: int, out_width: int) -> str:
        if self.status == "fully_reversible":
            return "fully reversible"
        if self.status == "partially_reversible":
            return f"partially reversible on domain {format_domain(self.domain)}"
        lines = [f"irreversible: {len(self.collisions)} collision(s)"]
        lines += [f"  {c.format(in_width, out_width)}" for c in self.collisions]
        return "\n".join(lines)


def verify_gate(g: GateDef) -> GateReport:
    """Classify ``g`` as fully, partially, or not reversible.

    Collisions are reported over the declared domain when there is one,
    otherwise over all inputs. A non-square gate without a declared domain
    is irreversible even if its collision list is empty.
    """
    square = g.in_width == g.out_width
    if square and is_bijective(g.table):
        return GateReport("fully_reversible")
    domain = g.declared_domain if g.declared_domain is not None else InputDomain.full(g.in_width)
    verdict = is_injective_on(g.table, domain)
    if g.declared_domain is not None and verdict.injective:
        return GateReport("partially_reversible", domain=g.declared_domain)
    return GateReport("irreversible", domain=domain, collisions=verdict.collisions)


def synthesize_prg(spec: PartialSpec, name: str) -> GateDef:
    """Build a reversible gate that realizes ``spec`` on its domain.

    The table is the lexicographic permutation completion of ``spec``, so
    the result is a true permutation; the spec's domain is kept as the
    declared domain.
    """
    table = complete_to_permutation(spec, "lexicographic")
    filled = [x for x in range(len(table)) if x not in spec.domain]
    notes = [f"Synthesized from a partial spec on domain {format_domain(spec.domain)}."]
    if filled:
        notes.append("Out-of-domain rows filled by lexicographic completion.")
    return GateDef(name, table, declared_domain=spec.domain, provenance="synthesized", notes=tuple(notes))


# Gate-spec files


def dump_gate_spec(g: GateDef) -> str:
    lines = [f"# {note}" for note in g.notes]
    lines += [
        f"name: {g.name}",
        f"inputs: {', '.join(g.inputs)}",
        f"outputs: {', '.join(g.outputs)}",
    ]
    if g.declared_domain is not None:
        d = g.declared_domain
        if d == InputDomain.bcd():
            lines.append("domain: bcd")
        else:
            lines.append("domain: " + ", ".join(str(int(x)) for x in d.members))
    lines.append("table:")
    return "\n".join(lines) + "\n" + format_pla(g.table)


def write_gate_spec(g: GateDef, path: str | Path) -> None:
    Path(path).write_text(dump_gate_spec(g))


_GATE_KEYS = ("name", "inputs", "outputs", "domain", "table")


def _split_labels(text: str) -> tuple[str, ...]:
    return tuple(s.strip() for s in text.replace(",", " ").split() if s.strip())


def parse_gate_spec(
    text: str,
    source: str | None = None,
    provenance: Provenance = "user-file",
    *,
    enforce_domain: bool = True,
) -> GateDef:
    """Parse gate-spec text.

    Unless ``enforce_domain`` is false, a declared domain on which the
    table is not injective raises :class:`NotInjectiveError`.
    """
    fields: dict[str, tuple[int, str]] = {}
    notes: list[str] = []
    table_start = None
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if table_start is not None:
            break
        if not stripped:
            continue
        if stripped.startswith("#"):
            notes.append(stripped[1:].strip())
            continue
        key, sep, value = stripped.partition(":")
        key = key.strip().lower()
        if not sep or key not in _GATE_KEYS:
            raise ParseError(f"expected one of {', '.join(_GATE_KEYS)}, got {stripped!r}", lineno, source)
        if key in fields:
            raise ParseError(f"duplicate field {key!r}", lineno, source)
        fields[key] = (lineno, value.strip())
        if key == "table":
            table_start = lineno + 1
    for key in ("name", "table"):
        if key not in fields:
            raise ParseError(f"missing field {key!r}", None, source)
    if table_start is None:
        table_start = len(lines) + 1
    body = "\n".join(lines[table_start - 1 :])
    if fields["table"][1]:
        raise ParseError("table rows start on the line after 'table:'", fields["table"][0], source)
    table = parse_pla(body, first_line=table_start, source=source)

    kwargs = {}
    for key, width in (("inputs", table.in_width), ("outputs", table.out_width)):
        if key in fields:
            lineno, value = fields[key]
            labels = _split_labels(value)
            if len(labels) != width:
                raise ParseError(f"{key} lists {len(labels)} labels but the table has width {width}", lineno, source)
            if len(set(labels)) != len(labels):
                raise ParseError(f"duplicate {key} label", lineno, source)
            kwargs[key] = labels
    domain = None
    if "domain" in fields:
        lineno, value = fields["domain"]
        try:
            domain = parse_domain(value, table.in_width)
        except ValueError as exc:
            raise ParseError(f"bad domain: {exc}", lineno, source) from None
        verdict = is_injective_on(table, domain)
        if enforce_domain and not verdict:
            raise NotInjectiveError(f"gate {fields['name'][1]!r} is not injective on its declared domain", verdict.collisions)
    lineno, name = fields["name"]
    try:
        return GateDef(name, table, declared_domain=domain, provenance=provenance, notes=tuple(notes), **kwargs)
    except ValueError as exc:
        raise ParseError(str(exc), lineno, source) from None


def load_gate_spec(path: str | Path, *, enforce_domain: bool = True) -> GateDef:
    path = Path(path)
    return parse_gate_spec(path.read_text(), source=str(path), enforce_domain=enforce_domain)


class GateRegistry:
    """Name -> GateDef lookup, pre-populated with the built-ins.

    The first registration of a name wins; later ones raise.
    """

    def __init__(self, gates: Iterable[GateDef] | None = None):
        self._lock = threading.Lock()
        self._gates: dict[str, GateDef] = dict(_BUILTINS)
        for g in gates or ():
            self.register(g)

    def register(self, g: GateDef) -> GateDef:
        if g.declared_domain is not None:
            verdict = is_injective_on(g.table, g.declared_domain)
            if not verdict:
                raise NotInjectiveError(f"gate {g.name!r} is not injective on its declared domain", verdict.collisions)
        with self._lock:
            key = g.name.upper()
            if key in self._gates:
                raise DuplicateGateError(f"gate {g.name!r} is already registered")
            self._gates[key] = g
        return g

    def load(self, path: str | Path) -> GateDef:
        return self.register(load_gate_spec(path))

    def __getitem__(self, name: str) -> GateDef:
        try:
            return self._gates[name.upper()]
        except KeyError:
            raise UnknownGateError(name) from None

    def __contains__(self, name: str) -> bool:
        return name.upper() in self._gates

    def names(self) -> list[str]:
        return sorted(self._gates)
