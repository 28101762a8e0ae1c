"""
A gate that is reversible only on part of its inputs
====================================================

The BCD to excess-3 gate maps each 4-bit word to another 4-bit word.
Restricted to the ten BCD codes 0000..1001 it is one-to-one; on the six
unused codes it is not. This script shows both halves.
"""

from prgkit import InputDomain, builtin, is_bijective, is_injective_on, verify_gate

prg = builtin("PRG")
table = prg.table

###############################################################################
# The full table, with the BCD rows marked.

for x in range(16):
    mark = "bcd" if x < 10 else "   "
    print(f"{mark} {x:04b} -> {table[x]:04b}   ({x} -> {table[x]})")

###############################################################################
# On the BCD codes every row is x + 3, so no two inputs share an output.

print("x + 3 on 0..9:", all(table[x] == x + 3 for x in range(10)))
print("injective on BCD:", is_injective_on(table, InputDomain.bcd()).injective)

###############################################################################
# Over all 16 inputs the table is not a permutation. Every colliding pair
# is listed.

print("bijective:", is_bijective(table))
for c in is_injective_on(table, InputDomain.full(4)).collisions:
    print("  collision:", c.format(4, 4))

###############################################################################
# Three inputs share the same top three output bits, 101. Only two 4-bit
# words start with 101, so no choice of the last bit can separate them.

shared = [x for x in range(16) if table[x] >> 1 == 0b101]
print("inputs with P,Q,R = 101:", [f"{x:04b}" for x in shared])

###############################################################################
# The gate carries its declared domain, so the verdict is "partially
# reversible" rather than "irreversible".

print(verify_gate(prg).describe(4, 4))
