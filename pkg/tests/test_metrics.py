from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prgkit.circuit import NetlistBuilder, build_prg_converter, build_tsg_ripple_adder
from prgkit.errors import NetlistError
from prgkit.metrics import (
    CostReport,
    compare,
    cost_report,
    format_csv,
    format_table,
    improvement_ratio,
)


def test_tsg_adder_cost():
    assert cost_report(build_tsg_ripple_adder()) == CostReport(gates=4, garbage=9, constants=9, delay=4)


def test_prg_converter_cost():
    assert cost_report(build_prg_converter()) == CostReport(gates=1, garbage=0, constants=0, delay=1)


def test_passthrough_cost():
    n = NetlistBuilder("wire").input("a").output("a").build()
    assert cost_report(n).as_tuple() == (0, 0, 0, 0)


def test_cost_rejects_invalid_netlist():
    b = NetlistBuilder("fan").input("a")
    b.gate("CNOT", ["a", "a"], ["p", "q"]).output("p", "q")
    with pytest.raises(NetlistError):
        cost_report(b.build(check=False))


def test_garbage_counted_structurally():
    # a stale declared garbage list must not influence the count
    import dataclasses

    n = build_tsg_ripple_adder()
    assert cost_report(dataclasses.replace(n, garbage=n.garbage)).garbage == 9
    with pytest.raises(NetlistError):
        cost_report(dataclasses.replace(n, garbage=n.garbage[:5]))


def test_cost_report_invariants():
    with pytest.raises(ValueError):
        CostReport(1, 0, 0, 2)
    with pytest.raises(ValueError):
        CostReport(-1, 0, 0, 0)


def test_published_comparison():
    c = compare(CostReport(4, 9, 9, 4), CostReport(1, 0, 0, 1))
    assert (c.ratio_gates, c.ratio_garbage, c.ratio_delay) == (400, 900, 400)
    assert c.percents() == ("400%", "900%", "400%")
    assert c.zero_denominator == ("garbage",)


def test_self_comparison():
    r = CostReport(3, 5, 2, 2)
    assert compare(r, r).percents() == ("100%", "100%", "100%")


def test_halving():
    c = compare(CostReport(2, 1, 0, 2), CostReport(1, 1, 0, 1))
    assert c.ratio_gates == 200 and c.ratio_delay == 200


def test_non_integer_ratio_formatting():
    assert improvement_ratio(2, 3) == Fraction(200, 3)
    c = compare(CostReport(2, 0, 0, 1), CostReport(3, 0, 0, 1))
    assert c.percents()[0] == "66.67%"


@given(
    st.integers(1, 50), st.integers(1, 50), st.integers(1, 50), st.integers(1, 50), st.integers(1, 20)
)
def test_ratios_scale_invariant(g1, gb1, g2, gb2, k):
    a = CostReport(g1, gb1, 0, 1)
    b = CostReport(g2, gb2, 0, 1)
    scaled = compare(CostReport(g1 * k, gb1 * k, 0, k), CostReport(g2 * k, gb2 * k, 0, k))
    plain = compare(a, b)
    assert (plain.ratio_gates, plain.ratio_garbage, plain.ratio_delay) == (
        scaled.ratio_gates,
        scaled.ratio_garbage,
        scaled.ratio_delay,
    )


def test_csv_output():
    rows = [("tsg-adder", CostReport(4, 9, 9, 4)), ("prg-converter", CostReport(1, 0, 0, 1))]
    text = format_csv(rows, compare(rows[0][1], rows[1][1]))
    assert text.splitlines() == [
        "name,gates,garbage,constants,delay",
        "tsg-adder,4,9,9,4",
        "prg-converter,1,0,0,1",
        "improvement,400%,900%,,400%",
    ]


def test_text_table_documents_ratio_rule():
    rows = [("old", CostReport(4, 9, 9, 4)), ("new", CostReport(1, 0, 0, 1))]
    text = format_table(rows, compare(rows[0][1], rows[1][1]))
    lines = text.splitlines()
    assert lines[0].split() == ["Reversible", "gates", "Garbage", "outputs", "Unit", "delay", "Constant", "inputs"]
    assert lines[3].split() == ["Improvement", "ratio", "400%", "900%", "400%"]
    assert "proposed is 0" in text
    assert "Zero-denominator convention applied to: garbage." in text
