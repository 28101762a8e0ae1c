"""
Cost comparison
===============

Gate count, garbage outputs, constant inputs, and unit delay for both
converters, and the improvement ratios of the single-gate design.
"""

from prgkit import build_prg_converter, build_tsg_ripple_adder, compare, cost_report
from prgkit.cli import demo_table2
from prgkit.metrics import format_csv

baseline = cost_report(build_tsg_ripple_adder())
proposed = cost_report(build_prg_converter())
print(baseline)
print(proposed)

###############################################################################
# Ratios are baseline / proposed; a proposed count of zero falls back to
# baseline x 100%, which is how 9 garbage outputs against none reads 900%.

comparison = compare(baseline, proposed)
print(comparison.percents())
print(format_csv([("tsg-adder", baseline), ("prg-converter", proposed)], comparison))

###############################################################################
# The same report as ``prgkit demo table2`` prints, with its self-check.

text, problems = demo_table2()
print(text)
assert not problems
