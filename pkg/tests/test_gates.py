import dataclasses
import threading

import pytest

from prgkit.errors import DuplicateGateError, NotInjectiveError, ParseError, UnknownGateError
from prgkit.gates import (
    BUILTIN_NAMES,
    PRG_PQR_BITS,
    GateDef,
    GateRegistry,
    GateVerificationError,
    builtin,
    dump_gate_spec,
    load_gate_spec,
    parse_gate_spec,
    synthesize_prg,
    verify_gate,
    verify_tsg_table,
    write_gate_spec,
)
from prgkit.truthtable import (
    InputDomain,
    PartialSpec,
    TruthTable,
    format_pla,
    is_bijective,
    table_equal_on,
)

BCD = InputDomain.bcd()
# Reconstructed from the printed P,Q,R columns with S = NOT D.
PRG_ROWS = [3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 11, 2, 15, 0, 9, 4]


def full_adder(a, b, cin):
    total = a + b + cin
    return total & 1, total >> 1


def test_prg_frozen_rows():
    assert builtin("PRG").table.rows.tolist() == PRG_ROWS


@pytest.mark.parametrize("x,expected", [(0b0101, 0b1000), (0b1001, 0b1100), (0b0111, 0b1010)])
def test_prg_printed_rows(x, expected):
    assert builtin("PRG").table[x] == expected


def test_prg_is_excess3_on_bcd():
    t = builtin("PRG").table
    assert [t[x] for x in range(10)] == [x + 3 for x in range(10)]


def test_prg_s_column_is_not_d():
    t = builtin("PRG").table
    assert all((t[x] & 1) == 1 - (x & 1) for x in range(16))
    assert all(format(t[x] >> 1, "03b") == PRG_PQR_BITS[x] for x in range(16))


def test_pigeonhole_on_pqr_columns():
    # Any S column leaves 3 inputs competing for 2 words with P,Q,R = 101.
    sharing = [x for x, pqr in enumerate(PRG_PQR_BITS) if pqr == "101"]
    assert sharing == [0b0111, 0b1000, 0b1010]
    assert len(sharing) > 2


def test_prg_declared_domain():
    assert builtin("prg").declared_domain == BCD


def test_cnot():
    assert builtin("CNOT").table[0b10] == 0b11
    assert builtin("CNOT").table[0b01] == 0b01


def test_fredkin_swaps_when_control_set():
    t = builtin("FREDKIN").table
    assert t[0b101] == 0b110
    assert t[0b001] == 0b001


@pytest.mark.parametrize("name", [n for n in BUILTIN_NAMES if n != "PRG"])
def test_builtins_bijective(name):
    g = builtin(name)
    assert g.declared_domain is None
    assert sorted(g.table.rows.tolist()) == list(range(2**g.in_width))
    assert verify_gate(g).status == "fully_reversible"


def test_tsg_full_adder_embedding():
    t = builtin("TSG").table
    for a in (0, 1):
        for b in (0, 1):
            for d in (0, 1):
                p, q, r, s = (t[(a << 3) | (b << 2) | d] >> k & 1 for k in (3, 2, 1, 0))
                assert r == a ^ b ^ d
                assert s == (a & b) ^ ((a ^ b) & d)
                assert (r, s) == full_adder(a, b, d)


def test_tsg_check_rejects_broken_table():
    with pytest.raises(GateVerificationError):
        verify_tsg_table(TruthTable.identity(4))


def test_unknown_builtin():
    with pytest.raises(UnknownGateError):
        builtin("XOR")


def test_verify_prg_partial():
    report = verify_gate(builtin("PRG"))
    assert report.status == "partially_reversible"
    assert report.domain == BCD
    assert report.describe(4, 4) == "partially reversible on domain {0..9}"


def test_verify_prg_on_full_domain_irreversible():
    g = dataclasses.replace(builtin("PRG"), declared_domain=InputDomain.full(4))
    report = verify_gate(g)
    assert report.status == "irreversible"
    assert (0b1000, 0b1010, 0b1011) in report.collisions


def test_verify_toffoli():
    assert verify_gate(builtin("TOFFOLI")).status == "fully_reversible"


def test_verify_irreversible_without_domain():
    g = GateDef("AND2", TruthTable(2, 2, [0, 0, 0, 1]), provenance="user-file")
    report = verify_gate(g)
    assert not report.ok
    assert len(report.collisions) == 3


# gate-spec files


def test_prg_file_round_trip(tmp_path):
    path = tmp_path / "prg.gate"
    write_gate_spec(builtin("PRG"), path)
    text = path.read_text()
    assert text.startswith("# ")
    assert "domain: bcd" in text
    g = load_gate_spec(path)
    assert g.table == builtin("PRG").table
    assert g.declared_domain == BCD
    assert g.provenance == "user-file"
    assert g.inputs == ("A", "B", "C", "D")


def test_load_rejects_colliding_domain(tmp_path):
    g = dataclasses.replace(builtin("PRG"), declared_domain=InputDomain(4, [7, 8, 10]))
    path = tmp_path / "bad.gate"
    path.write_text(dump_gate_spec(g))
    with pytest.raises(NotInjectiveError) as exc:
        load_gate_spec(path)
    assert exc.value.collisions == ((8, 10, 11),)
    assert load_gate_spec(path, enforce_domain=False).declared_domain == InputDomain(4, [7, 8, 10])


def test_load_rejects_short_table(tmp_path):
    path = tmp_path / "short.gate"
    path.write_text("name: X\ntable:\n.i 2\n.o 2\n00 00\n01 01\n10 10\n")
    with pytest.raises(ParseError, match="expected 4 rows"):
        load_gate_spec(path)


@pytest.mark.parametrize(
    "text,line",
    [
        ("name: X\ncolour: red\ntable:\n.i 1\n.o 1\n0 1\n1 0\n", 2),
        ("name: X\ninputs: A, B\ntable:\n.i 1\n.o 1\n0 1\n1 0\n", 2),
        ("name: X\ntable:\n.i 1\n.o 1\n0 1\n1 2\n", 6),
        ("name: X\ndomain: 0, 5\ntable:\n.i 1\n.o 1\n0 1\n1 0\n", 2),
    ],
)
def test_gate_parse_errors_are_positional(text, line):
    with pytest.raises(ParseError) as exc:
        parse_gate_spec(text, source="g.gate")
    assert exc.value.line == line
    assert str(exc.value).startswith(f"g.gate:{line}:")


def test_gate_spec_missing_table():
    with pytest.raises(ParseError, match="missing field 'table'"):
        parse_gate_spec("name: X\n")


# synthesis


def test_synthesize_excess3_matches_prg_on_bcd():
    spec = PartialSpec.from_function(4, 4, BCD, lambda x: x + 3)
    g = synthesize_prg(spec, "EX3")
    assert table_equal_on(g.table, builtin("PRG").table, BCD)
    assert g.declared_domain == BCD
    assert verify_gate(g).status == "fully_reversible"


def test_synthesize_nines_complement():
    spec = PartialSpec.from_function(4, 4, BCD, lambda x: 9 - x)
    g = synthesize_prg(spec, "NINES")
    assert [g.table[x] for x in range(10)] == [9 - x for x in range(10)]
    assert is_bijective(g.table)
    # unused outputs 10..15 go to inputs 10..15 in order
    assert [g.table[x] for x in range(10, 16)] == list(range(10, 16))


def test_synthesize_constant_spec_fails():
    with pytest.raises(NotInjectiveError):
        synthesize_prg(PartialSpec.from_function(4, 4, BCD, lambda x: 0), "CONST")


def test_synthesized_gate_round_trips(tmp_path):
    spec = PartialSpec.from_function(4, 4, BCD, lambda x: 9 - x)
    g = synthesize_prg(spec, "NINES")
    path = tmp_path / "nines.gate"
    write_gate_spec(g, path)
    back = load_gate_spec(path)
    assert back.table == g.table
    assert back.declared_domain == g.declared_domain
    assert format_pla(back.table) in path.read_text()


# registry


def test_registry_first_registration_wins():
    reg = GateRegistry()
    g = GateDef("MINE", TruthTable.identity(2), provenance="user-file")
    reg.register(g)
    with pytest.raises(DuplicateGateError):
        reg.register(dataclasses.replace(g, table=TruthTable(2, 2, [1, 0, 3, 2])))
    assert reg["mine"].table == TruthTable.identity(2)


def test_registry_rejects_builtin_name_and_bad_domain():
    reg = GateRegistry()
    with pytest.raises(DuplicateGateError):
        reg.register(builtin("PRG"))
    bad = GateDef("P2", builtin("PRG").table, declared_domain=InputDomain.full(4))
    with pytest.raises(NotInjectiveError):
        reg.register(bad)
    assert "P2" not in reg


def test_registry_concurrent_registration():
    reg = GateRegistry()
    g = GateDef("RACE", TruthTable.identity(1))
    outcomes = []
    barrier = threading.Barrier(8)

    def worker():
        barrier.wait()
        try:
            reg.register(g)
            outcomes.append("ok")
        except DuplicateGateError:
            outcomes.append("dup")

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert sorted(outcomes) == ["dup"] * 7 + ["ok"]


def test_registry_load(tmp_path):
    spec = PartialSpec.from_function(4, 4, BCD, lambda x: 9 - x)
    path = tmp_path / "nines.gate"
    write_gate_spec(synthesize_prg(spec, "NINES"), path)
    reg = GateRegistry()
    reg.load(path)
    assert "NINES" in reg.names()
