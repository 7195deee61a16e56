import pytest

from g2chev.replay.elimination import (
    LedgerError,
    first_order_rank,
    load_ledger,
    parse_ledger,
    run_elimination,
)
from g2chev.replay.templates import FREE_VARS


@pytest.fixture(scope="module")
def ledger():
    return load_ledger()


@pytest.fixture(scope="module")
def skip_run(ledger):
    return run_elimination(ledger, d=2, on_failure="skip")


def test_shipped_ledger(ledger):
    assert len(ledger) == 100
    assert sorted(s.target for s in ledger) == sorted(FREE_VARS)
    first = ledger[0]
    assert (first.condition, first.row, first.col, first.target, first.expected_residue) == ("Con1", 14, 3, "y22", 0)
    assert any(s.target == "z33" and s.expected_residue == 1 for s in ledger)


@pytest.mark.parametrize("text", ["Con9 1 1 y1 1", "Con1 15 1 y1 1", "Con1 1 1 y15 0", "Con1 1 1 y1"])
def test_ledger_errors(text):
    with pytest.raises(LedgerError):
        parse_ledger(text)


def test_ledger_comments_and_notes():
    steps = parse_ledger("# header\n\nCon2 3 3 z33 1   # z33 = 1\n")
    assert len(steps) == 1 and steps[0].note == "z33 = 1"


def test_ledger_from_path(tmp_path):
    p = tmp_path / "ledger.txt"
    p.write_text("Con3 1 1 y1 1\n")
    assert load_ledger(p)[0].target == "y1"


def test_abort_identifies_blocked_step(ledger):
    for d in (2, 3):
        st = run_elimination(ledger, d=d)
        assert not st.completed
        assert str(st.failed_step) == "(Con1,1,1) -> y47"
        assert len(st.log) == 3
        assert st.log[-1].pivot == 0


def test_early_steps_have_unit_pivots(skip_run):
    by_target = {e.step.target: e for e in skip_run.log}
    assert by_target["y22"].pivot == 1 and by_target["y22"].rhs_check is True
    z33 = by_target["z33"]
    assert z33.pivot == 2 and not z33.fallback and z33.rhs_check is True
    assert by_target["y1"].pivot != 0


def test_skip_mode_blocked_steps(skip_run):
    blocked = [str(e.step) for e in skip_run.log if not e.pivot]
    assert blocked == ["(Con1,1,1) -> y47", "(Con2,10,10) -> z30", "(Con4,6,10) -> y52", "(Con5,3,5) -> z35"]
    assert skip_run.fallback_count == 20


def test_fallback_count_stable(ledger, skip_run):
    again = run_elimination(ledger, d=2, on_failure="skip")
    assert again.fallback_count == skip_run.fallback_count
    assert [e.used for e in again.log] == [e.used for e in skip_run.log]


def test_first_order_rank():
    fo = first_order_rank()
    assert (fo["unknowns"], fo["rank"]) == (100, 98)
    assert fo["modular_ranks"] == [98, 98, 98]
    assert len(fo["kernel"]) == 2
    pinned = first_order_rank(fixed=("y46", "y10"))
    assert (pinned["unknowns"], pinned["rank"]) == (98, 98)
