"""Dense exhaustive truth tables and the checks built on them.

Input and output words are read most-significant bit first: in a 4-input
table with inputs ``A, B, C, D``, input ``A`` is bit 3 of the row index.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, NamedTuple

import numpy as np

from .errors import NotInjectiveError, ParseError, WidthBoundError, WidthMismatchError

MAX_WIDTH = 20
"""Largest input/output width handled by exhaustive enumeration."""

_DTYPE = np.int64


def _check_width(width: int, what: str = "width") -> int:
    width = int(width)
    if not 1 <= width <= MAX_WIDTH:
        raise WidthBoundError(f"{what} {width} outside 1..{MAX_WIDTH}")
    return width


def _frozen(values, dtype=_DTYPE) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True).reshape(-1)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class BitWord:
    """A fixed-width unsigned word.

    Width 0 is the empty word (used for circuits with no garbage outputs).
    """

    value: int
    width: int

    def __post_init__(self):
        if self.width < 0:
            raise ValueError(f"negative width {self.width}")
        if not 0 <= self.value < (1 << self.width) or (self.width == 0 and self.value):
            raise ValueError(f"value {self.value} does not fit in {self.width} bit(s)")

    @classmethod
    def parse(cls, text: str) -> BitWord:
        """Parse an MSB-first bit string such as ``"0101"``."""
        text = text.strip()
        if text and set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        return cls(int(text, 2) if text else 0, len(text))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitWord:
        bits = [int(b) for b in bits]
        value = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"not a bit: {b}")
            value = (value << 1) | b
        return cls(value, len(bits))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.width - 1 - i)) & 1 for i in range(self.width))

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b") if self.width else ""

    def __int__(self) -> int:
        return self.value


class Collision(NamedTuple):
    """Two distinct inputs (``first < second``) sharing one output."""

    first: int
    second: int
    output: int

    def format(self, in_width: int, out_width: int) -> str:
        return (
            f"{self.first:0{in_width}b}, {self.second:0{in_width}b} "
            f"-> {self.output:0{out_width}b}"
        )


@dataclass(frozen=True)
class InjectivityVerdict:
    """Outcome of an injectivity scan; truthy iff injective."""

    collisions: tuple[Collision, ...] = ()

    @property
    def injective(self) -> bool:
        return not self.collisions

    def __bool__(self) -> bool:
        return self.injective


@dataclass(frozen=True, eq=False)
class InputDomain:
    """A non-empty set of ``width``-bit input values, kept sorted."""

    width: int
    members: np.ndarray

    def __init__(self, width: int, members: Iterable[int]):
        width = _check_width(width)
        arr = np.sort(np.fromiter((int(m) for m in members), dtype=_DTYPE))
        if arr.size == 0:
            raise ValueError("input domain must be non-empty")
        if np.any(arr[1:] == arr[:-1]):
            dup = int(arr[1:][arr[1:] == arr[:-1]][0])
            raise ValueError(f"duplicate domain member {dup}")
        if arr[0] < 0 or arr[-1] >= (1 << width):
            raise ValueError(f"domain member out of range for width {width}")
        arr.flags.writeable = False
        object.__setattr__(self, "width", width)
        object.__setattr__(self, "members", arr)

    @classmethod
    def full(cls, width: int) -> InputDomain:
        return cls(width, range(1 << width))

    @classmethod
    def bcd(cls) -> InputDomain:
        """The ten BCD digit codes 0000..1001."""
        return cls(4, range(10))

    def complement(self) -> InputDomain:
        mask = np.ones(1 << self.width, dtype=bool)
        mask[self.members] = False
        return InputDomain(self.width, np.flatnonzero(mask))

    def __len__(self) -> int:
        return int(self.members.size)

    def __iter__(self):
        return (int(m) for m in self.members)

    def __contains__(self, x) -> bool:
        i = np.searchsorted(self.members, x)
        return bool(i < self.members.size and self.members[i] == x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, InputDomain):
            return NotImplemented
        return self.width == other.width and np.array_equal(self.members, other.members)

    def __hash__(self) -> int:
        return hash((self.width, self.members.tobytes()))

    def __repr__(self) -> str:
        return f"InputDomain({self.width}, {format_domain(self)})"


def format_domain(domain: InputDomain) -> str:
    """Compact text form, e.g. ``{0..9}`` or ``{0, 3..5}``."""
    parts = []
    members = [int(m) for m in domain.members]
    start = prev = members[0]
    for m in members[1:] + [None]:
        if m is not None and m == prev + 1:
            prev = m
            continue
        if start == prev:
            parts.append(str(start))
        elif prev == start + 1:
            parts.append(f"{start}, {prev}")
        else:
            parts.append(f"{start}..{prev}")
        if m is not None:
            start = prev = m
    return "{" + ", ".join(parts) + "}"


def parse_domain(text: str, width: int) -> InputDomain:
    """Parse ``bcd``, ``all``, or a comma list of values and ``lo..hi`` ranges.

    Values may be decimal or ``0b``-prefixed binary.
    """
    text = text.strip().strip("{}").strip()
    key = text.lower()
    if key == "bcd":
        if width != 4:
            raise ValueError(f"'bcd' domain needs width 4, got {width}")
        return InputDomain.bcd()
    if key == "all":
        return InputDomain.full(width)
    members: list[int] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if ".." in item:
            lo, hi = (int(v.strip(), 0) for v in item.split("..", 1))
            if hi < lo:
                raise ValueError(f"empty range {item!r}")
            members.extend(range(lo, hi + 1))
        else:
            members.append(int(item, 0))
    return InputDomain(width, members)


def _check_domain(domain: InputDomain, in_width: int) -> None:
    if domain.width != in_width:
        raise WidthMismatchError(f"domain width {domain.width} != input width {in_width}")


def _collisions(xs: np.ndarray, ys: np.ndarray) -> tuple[Collision, ...]:
    """All pairs of distinct ``xs`` sharing a ``ys`` value, sorted."""
    if xs.size < 2:
        return ()
    order = np.lexsort((xs, ys))
    xs_s, ys_s = xs[order], ys[order]
    same = ys_s[1:] == ys_s[:-1]
    if not same.any():
        return ()
    _, starts, counts = np.unique(ys_s, return_index=True, return_counts=True)
    found = []
    for start, count in zip(starts[counts > 1], counts[counts > 1]):
        group = xs_s[start : start + count]
        y = int(ys_s[start])
        found.extend(Collision(int(a), int(b), y) for a, b in combinations(group, 2))
    found.sort()
    return tuple(found)


@dataclass(frozen=True, eq=False)
class TruthTable:
    """Exhaustive ``in_width`` -> ``out_width`` mapping stored as ``2**in_width`` rows."""

    in_width: int
    out_width: int
    rows: np.ndarray

    def __init__(self, in_width: int, out_width: int, rows: Iterable[int]):
        in_width = _check_width(in_width, "input width")
        out_width = _check_width(out_width, "output width")
        arr = _frozen(list(rows) if not isinstance(rows, np.ndarray) else rows)
        if arr.size != 1 << in_width:
            raise ValueError(f"expected {1 << in_width} rows, got {arr.size}")
        if (arr.min() < 0 or arr.max() >= (1 << out_width)):
            bad = int(np.flatnonzero((arr < 0) | (arr >= (1 << out_width)))[0])
            raise ValueError(f"row {bad} value {int(arr[bad])} does not fit in {out_width} bit(s)")
        object.__setattr__(self, "in_width", in_width)
        object.__setattr__(self, "out_width", out_width)
        object.__setattr__(self, "rows", arr)

    @classmethod
    def from_function(cls, in_width: int, out_width: int, fn: Callable[[int], int]) -> TruthTable:
        return cls(in_width, out_width, [fn(x) for x in range(1 << in_width)])

    @classmethod
    def from_bit_function(cls, in_width: int, out_width: int, fn) -> TruthTable:
        """Build from ``fn(*input_bits) -> output_bits`` (both MSB first)."""

        def word(x: int) -> int:
            return BitWord.from_bits(fn(*BitWord(x, in_width).bits)).value

        return cls.from_function(in_width, out_width, word)

    @classmethod
    def identity(cls, width: int) -> TruthTable:
        return cls(width, width, np.arange(1 << width))

    def __getitem__(self, x: int) -> int:
        return int(self.rows[x])

    def __len__(self) -> int:
        return int(self.rows.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruthTable):
            return NotImplemented
        return (
            self.in_width == other.in_width
            and self.out_width == other.out_width
            and np.array_equal(self.rows, other.rows)
        )

    def __hash__(self) -> int:
        return hash((self.in_width, self.out_width, self.rows.tobytes()))

    def __repr__(self) -> str:
        head = ", ".join(str(int(r)) for r in self.rows[:8])
        more = ", ..." if self.rows.size > 8 else ""
        return f"TruthTable({self.in_width}, {self.out_width}, [{head}{more}])"


@dataclass(frozen=True, eq=False)
class PartialSpec:
    """An ``n`` -> ``m`` mapping defined only on ``domain``.

    ``outputs[i]`` is the value assigned to ``domain.members[i]``.
    """

    in_width: int
    out_width: int
    domain: InputDomain
    outputs: np.ndarray

    def __init__(self, in_width: int, out_width: int, domain: InputDomain, outputs: Iterable[int]):
        in_width = _check_width(in_width, "input width")
        out_width = _check_width(out_width, "output width")
        _check_domain(domain, in_width)
        arr = _frozen(list(outputs) if not isinstance(outputs, np.ndarray) else outputs)
        if arr.size != len(domain):
            raise ValueError(f"{len(domain)} domain members but {arr.size} outputs")
        if arr.min() < 0 or arr.max() >= (1 << out_width):
            raise ValueError(f"assigned output does not fit in {out_width} bit(s)")
        object.__setattr__(self, "in_width", in_width)
        object.__setattr__(self, "out_width", out_width)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "outputs", arr)

    @classmethod
    def from_mapping(cls, in_width: int, out_width: int, assigned: Mapping[int, int]) -> PartialSpec:
        domain = InputDomain(in_width, assigned.keys())
        return cls(in_width, out_width, domain, [assigned[int(x)] for x in domain.members])

    @classmethod
    def from_function(
        cls, in_width: int, out_width: int, domain: InputDomain, fn: Callable[[int], int]
    ) -> PartialSpec:
        return cls(in_width, out_width, domain, [fn(int(x)) for x in domain.members])

    @classmethod
    def from_table(cls, table: TruthTable, domain: InputDomain | None = None) -> PartialSpec:
        domain = domain if domain is not None else InputDomain.full(table.in_width)
        _check_domain(domain, table.in_width)
        return cls(table.in_width, table.out_width, domain, table.rows[domain.members])

    @property
    def assigned(self) -> Mapping[int, int]:
        return MappingProxyType(
            {int(x): int(y) for x, y in zip(self.domain.members, self.outputs)}
        )

    def is_total(self) -> bool:
        return len(self.domain) == 1 << self.in_width

    def collisions(self) -> tuple[Collision, ...]:
        return _collisions(self.domain.members, self.outputs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PartialSpec):
            return NotImplemented
        return (
            self.in_width == other.in_width
            and self.out_width == other.out_width
            and self.domain == other.domain
            and np.array_equal(self.outputs, other.outputs)
        )

    def __hash__(self) -> int:
        return hash((self.in_width, self.out_width, self.domain, self.outputs.tobytes()))


def is_bijective(t: TruthTable) -> bool:
    """True iff the rows of a square table form a permutation."""
    if t.in_width != t.out_width:
        raise WidthMismatchError(
            f"bijectivity needs equal widths, got {t.in_width} -> {t.out_width}"
        )
    seen = np.zeros(1 << t.out_width, dtype=bool)
    seen[t.rows] = True
    return bool(seen.all())


def is_injective_on(t: TruthTable, d: InputDomain) -> InjectivityVerdict:
    """Scan ``t`` restricted to ``d`` for inputs sharing an output.

    Every colliding pair is reported, sorted by ``(first, second)``.
    """
    _check_domain(d, t.in_width)
    return InjectivityVerdict(_collisions(d.members, t.rows[d.members]))


def invert(t: TruthTable) -> TruthTable:
    if not is_bijective(t):
        raise NotInjectiveError(
            "cannot invert a non-bijective table",
            _collisions(np.arange(len(t)), t.rows),
        )
    inv = np.empty_like(t.rows)
    inv[t.rows] = np.arange(len(t))
    return TruthTable(t.out_width, t.in_width, inv)


COMPLETION_STRATEGIES = ("lexicographic",)


def complete_to_permutation(spec: PartialSpec, strategy: str = "lexicographic") -> TruthTable:
    """Extend an injective square partial spec to a full permutation.

    With the ``lexicographic`` strategy the unassigned inputs, taken in
    increasing order, receive the unused outputs in increasing order.
    """
    if strategy not in COMPLETION_STRATEGIES:
        raise ValueError(f"unknown completion strategy {strategy!r}")
    if spec.in_width != spec.out_width:
        raise WidthMismatchError(
            f"completion needs equal widths, got {spec.in_width} -> {spec.out_width}"
        )
    clashes = spec.collisions()
    if clashes:
        raise NotInjectiveError("partial spec is not injective on its domain", clashes)
    size = 1 << spec.in_width
    rows = np.full(size, -1, dtype=_DTYPE)
    rows[spec.domain.members] = spec.outputs
    used = np.zeros(size, dtype=bool)
    used[spec.outputs] = True
    free_inputs = np.flatnonzero(rows < 0)
    rows[free_inputs] = np.flatnonzero(~used)
    return TruthTable(spec.in_width, spec.out_width, rows)


def _values_on(obj: TruthTable | PartialSpec, d: InputDomain) -> np.ndarray:
    if isinstance(obj, TruthTable):
        return obj.rows[d.members]
    pos = np.searchsorted(obj.domain.members, d.members)
    pos = np.minimum(pos, obj.domain.members.size - 1)
    missing = obj.domain.members[pos] != d.members
    if missing.any():
        raise ValueError(f"input {int(d.members[missing][0])} not in the partial spec's domain")
    return obj.outputs[pos]


def table_equal_on(
    a: TruthTable | PartialSpec, b: TruthTable | PartialSpec, d: InputDomain
) -> bool:
    """True iff ``a`` and ``b`` agree on every member of ``d``.

    Either side may be a :class:`PartialSpec` whose domain covers ``d``.
    """
    if a.in_width != b.in_width or a.out_width != b.out_width:
        raise WidthMismatchError(
            f"tables differ in shape: {a.in_width}->{a.out_width} vs {b.in_width}->{b.out_width}"
        )
    _check_domain(d, a.in_width)
    return bool(np.array_equal(_values_on(a, d), _values_on(b, d)))


# PLA-like text format


def format_pla(obj: TruthTable | PartialSpec) -> str:
    """Render as ``.i``/``.o`` header plus one row per input, ascending.

    Rows outside a partial spec's domain get ``-`` output bits.
    """
    n, m = obj.in_width, obj.out_width
    lines = [f".i {n}", f".o {m}"]
    if isinstance(obj, TruthTable):
        values = {x: int(y) for x, y in enumerate(obj.rows)}
    else:
        values = dict(obj.assigned)
    for x in range(1 << n):
        y = values.get(x)
        out = "-" * m if y is None else format(y, f"0{m}b")
        lines.append(f"{x:0{n}b} {out}")
    return "\n".join(lines) + "\n"


def _parse_pla_rows(text: str, first_line: int, source: str | None):
    n = m = None
    rows: list[tuple[int, int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=first_line):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("."):
            key, *rest = line.split()
            if key == ".e" or key == ".end":
                break
            if key not in (".i", ".o"):
                raise ParseError(f"unknown directive {key}", lineno, source)
            if len(rest) != 1 or not rest[0].isdigit():
                raise ParseError(f"{key} needs one integer argument", lineno, source)
            if rows:
                raise ParseError(f"{key} after table rows", lineno, source)
            value = int(rest[0])
            if not 1 <= value <= MAX_WIDTH:
                raise ParseError(f"{key} {value} outside 1..{MAX_WIDTH}", lineno, source)
            if key == ".i":
                n = value
            else:
                m = value
            continue
        if n is None or m is None:
            raise ParseError("table row before .i/.o header", lineno, source)
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected '<inputs> <outputs>', got {line!r}", lineno, source)
        ins, outs = parts
        if len(ins) != n or set(ins) - {"0", "1"}:
            raise ParseError(f"input field {ins!r} is not {n} bit(s)", lineno, source)
        if len(outs) != m or set(outs) - {"0", "1", "-"}:
            raise ParseError(f"output field {outs!r} is not {m} bit(s)", lineno, source)
        x = int(ins, 2)
        if x != len(rows):
            raise ParseError(
                f"row {ins} out of order; expected {len(rows):0{n}b}", lineno, source
            )
        rows.append((x, lineno, outs))
    if n is None or m is None:
        raise ParseError("missing .i/.o header", None, source)
    if len(rows) != 1 << n:
        raise ParseError(f"expected {1 << n} rows for .i {n}, got {len(rows)}", None, source)
    return n, m, rows


def parse_pla(text: str, *, first_line: int = 1, source: str | None = None) -> TruthTable:
    """Parse a fully specified table; ``-`` output bits are rejected."""
    n, m, rows = _parse_pla_rows(text, first_line, source)
    values = []
    for _, lineno, outs in rows:
        if "-" in outs:
            raise ParseError("'-' output bits are only allowed in partial specs", lineno, source)
        values.append(int(outs, 2))
    return TruthTable(n, m, values)


def parse_partial_pla(text: str, *, first_line: int = 1, source: str | None = None) -> PartialSpec:
    """Parse a partial spec: rows whose outputs are all ``-`` lie outside the domain."""
    n, m, rows = _parse_pla_rows(text, first_line, source)
    assigned = {}
    for x, lineno, outs in rows:
        if "-" in outs:
            if set(outs) != {"-"}:
                raise ParseError("a row must be fully specified or all '-'", lineno, source)
            continue
        assigned[x] = int(outs, 2)
    if not assigned:
        raise ParseError("partial spec assigns no rows", None, source)
    return PartialSpec.from_mapping(n, m, assigned)
