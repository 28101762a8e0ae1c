"""
Two BCD to excess-3 converters as netlists
==========================================

Excess-3 is BCD plus 0011. One converter chains four TSG full adders with
the addend, the carry-in, and each adder's mode input held constant. The
other is a single partial reversible gate.
"""

from prgkit import (
    InputDomain,
    build_prg_converter,
    build_tsg_ripple_adder,
    depth,
    simulate,
    table_equal_on,
    to_truth_table,
)
from prgkit.circuit import dump_netlist, wire_kinds

adder = build_tsg_ripple_adder()
single = build_prg_converter()
print(dump_netlist(adder))

###############################################################################
# Wire roles in the ripple adder: nine constants in, four sums out, and
# nine gate outputs nobody reads.

kinds = wire_kinds(adder)
for kind in sorted(set(kinds.values())):
    print(f"{kind:16} {sorted(w for w, k in kinds.items() if k == kind)}")

###############################################################################
# Simulate one digit through both circuits.

for bits in ("0000", "0111", "1001"):
    a, garbage = simulate(adder, bits)
    b, _ = simulate(single, bits)
    print(f"{bits}: adder {a} (garbage {garbage}), PRG {b}")

###############################################################################
# Exhaustive tables agree on every BCD digit; the carry chain sets the depth.

same = table_equal_on(to_truth_table(adder), to_truth_table(single), InputDomain.bcd())
print("equivalent on BCD:", same)
print("depth:", depth(adder), "vs", depth(single))
