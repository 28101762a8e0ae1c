"""Reversible and partial reversible logic: truth tables, gates, netlists, costs."""

from .circuit import (
    Netlist,
    NetlistBuilder,
    build_prg_converter,
    build_tsg_ripple_adder,
    depth,
    dump_netlist,
    load_netlist,
    parse_netlist,
    simulate,
    to_truth_table,
    validate,
)
from .errors import (
    NetlistError,
    NotInjectiveError,
    ParseError,
    PrgKitError,
    UnknownGateError,
    WidthMismatchError,
)
from .gates import (
    GateDef,
    GateRegistry,
    builtin,
    dump_gate_spec,
    load_gate_spec,
    parse_gate_spec,
    synthesize_prg,
    verify_gate,
)
from .metrics import CostReport, compare, cost_report
from .truthtable import (
    BitWord,
    InputDomain,
    PartialSpec,
    TruthTable,
    complete_to_permutation,
    invert,
    is_bijective,
    is_injective_on,
    table_equal_on,
)

__version__ = "0.1.0"
