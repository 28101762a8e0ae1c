"""Cost reports for reversible netlists and improvement ratios between them."""

from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction

from .circuit import Netlist, depth, structural_garbage, validate
from .errors import NetlistError

RATIO_RULE = (
    "improvement ratio = baseline / proposed x 100%; "
    "when proposed is 0 the ratio is baseline x 100%"
)


@dataclass(frozen=True)
class CostReport:
    gates: int
    garbage: int
    constants: int
    delay: int

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"{f.name} must be a non-negative integer, got {value!r}")
        if self.delay > self.gates:
            raise ValueError(f"delay {self.delay} exceeds gate count {self.gates}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return self.gates, self.garbage, self.constants, self.delay


def cost_report(n: Netlist) -> CostReport:
    """Gate, garbage, constant, and unit-delay counts.

    Garbage is counted from the structural rule (unused non-primary gate
    outputs), not from the netlist's declared garbage list.
    """
    result = validate(n)
    if not result:
        raise NetlistError(result.violations)
    return CostReport(
        gates=len(n.instances),
        garbage=len(structural_garbage(n)),
        constants=len(n.constants),
        delay=depth(n),
    )


def improvement_ratio(baseline: int, proposed: int) -> Fraction:
    """Percentage ``baseline / proposed * 100``; ``baseline * 100`` if proposed is 0."""
    if proposed == 0:
        return Fraction(baseline * 100)
    return Fraction(baseline * 100, proposed)


def format_percent(value: Fraction) -> str:
    if value.denominator == 1:
        return f"{value.numerator}%"
    return f"{float(value):.2f}%"


@dataclass(frozen=True)
class Comparison:
    baseline: CostReport
    proposed: CostReport
    ratio_gates: Fraction
    ratio_garbage: Fraction
    ratio_delay: Fraction

    @property
    def zero_denominator(self) -> tuple[str, ...]:
        """Columns whose ratio used the proposed-is-zero convention."""
        return tuple(
            name for name in ("gates", "garbage", "delay") if getattr(self.proposed, name) == 0
        )

    def percents(self) -> tuple[str, str, str]:
        return (
            format_percent(self.ratio_gates),
            format_percent(self.ratio_garbage),
            format_percent(self.ratio_delay),
        )


def compare(baseline: CostReport, proposed: CostReport) -> Comparison:
    """Improvement of ``proposed`` over ``baseline``; constants are not compared."""
    return Comparison(
        baseline,
        proposed,
        improvement_ratio(baseline.gates, proposed.gates),
        improvement_ratio(baseline.garbage, proposed.garbage),
        improvement_ratio(baseline.delay, proposed.delay),
    )


CSV_HEADER = "name,gates,garbage,constants,delay"


def format_csv(rows: list[tuple[str, CostReport]], comparison: Comparison | None = None) -> str:
    lines = [CSV_HEADER]
    lines += [f"{name},{r.gates},{r.garbage},{r.constants},{r.delay}" for name, r in rows]
    if comparison is not None:
        g, gb, d = comparison.percents()
        lines.append(f"improvement,{g},{gb},,{d}")
    return "\n".join(lines) + "\n"


def format_table(rows: list[tuple[str, CostReport]], comparison: Comparison | None = None) -> str:
    """Aligned text table: one row per circuit, plus an improvement row."""
    header = ("", "Reversible gates", "Garbage outputs", "Unit delay", "Constant inputs")
    body = [(name, str(r.gates), str(r.garbage), str(r.delay), str(r.constants)) for name, r in rows]
    if comparison is not None:
        g, gb, d = comparison.percents()
        body.append(("Improvement ratio", g, gb, d, ""))
    table = [header] + body
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    lines = []
    for row in table:
        cells = [row[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(row[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
    if comparison is not None:
        lines.append("")
        lines.append(f"Note: {RATIO_RULE}.")
        if comparison.zero_denominator:
            lines.append("Zero-denominator convention applied to: " + ", ".join(comparison.zero_denominator) + ".")
        lines.append("Constant inputs are reported but not compared.")
    return "\n".join(lines) + "\n"
