"""
Synthesizing partial reversible gates
=====================================

Any function that is one-to-one on a chosen set of inputs can be turned
into a reversible gate: keep the assigned rows and hand the unused output
words to the remaining inputs in increasing order.
"""

from prgkit import InputDomain, PartialSpec, builtin, synthesize_prg, table_equal_on, verify_gate
from prgkit.gates import dump_gate_spec

bcd = InputDomain.bcd()

###############################################################################
# Excess-3: the synthesized gate agrees with the built-in one on BCD inputs
# but, unlike it, is a full permutation.

excess3 = synthesize_prg(PartialSpec.from_function(4, 4, bcd, lambda x: x + 3), "EX3")
print("agrees with PRG on BCD:", table_equal_on(excess3.table, builtin("PRG").table, bcd))
print(verify_gate(excess3).describe(4, 4))
for x in range(10, 16):
    print(f"  filled {x:04b} -> {excess3.table[x]:04b}")

###############################################################################
# Nine's complement of a BCD digit, another digit-wise decimal operation.

nines = synthesize_prg(PartialSpec.from_function(4, 4, bcd, lambda x: 9 - x), "NINES")
print([nines.table[x] for x in range(10)])
print(dump_gate_spec(nines))

###############################################################################
# A function that merges inputs cannot be completed.

try:
    synthesize_prg(PartialSpec.from_function(4, 4, bcd, lambda x: x // 2), "HALF")
except ValueError as exc:
    print("rejected:", exc)
