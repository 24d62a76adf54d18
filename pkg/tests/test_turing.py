import pytest
from hypothesis import given, settings, strategies as st

from limitca.turing import (BUILTIN_MACHINES, MachineError, TuringMachine,
                            machine_demo, machine_halt, machine_loop,
                            machine_marcher, machine_zigzag, tm_run_empty)


def test_builtins_validate():
    for name, mk in BUILTIN_MACHINES.items():
        m = mk()
        assert m.name == name
        assert m.final in m.states


def test_validation_rejects_bad_tables():
    with pytest.raises(MachineError):
        TuringMachine(("q", "f"), "q", "f", "_", ("_",),
                      {})          # non-total
    with pytest.raises(MachineError):
        TuringMachine(("q", "f"), "q", "f", "_", ("_",),
                      {("q", "_"): ("q", "_", "S"),
                       ("f", "_"): ("q", "_", "S")})   # final acts
    with pytest.raises(MachineError):
        TuringMachine(("q", "f"), "q", "f", "_", ("_",),
                      {("q", "_"): ("q", "_", "X")})   # bad move
    with pytest.raises(MachineError):
        TuringMachine(("q", "f"), "q", "f", "x", ("_",),
                      {("q", "_"): ("q", "_", "S")})   # blank undeclared


def test_halt_and_loop():
    assert tm_run_empty(machine_halt(), 10).halted
    assert tm_run_empty(machine_halt(), 10).steps_used == 1
    r = tm_run_empty(machine_loop(), 500)
    assert not r.halted and r.head_max_excursion == 0


def test_marcher_excursion_tracks_budget():
    r = tm_run_empty(machine_marcher(), 25)
    assert not r.halted
    assert r.head_max_excursion == 25


def test_space_cutoff():
    r = tm_run_empty(machine_marcher(), 100, space=7)
    assert r.space_exceeded and not r.halted
    assert r.steps_used <= 8


def test_left_edge_clamp():
    # a machine that only moves left never escapes cell 0
    m = TuringMachine(("q", "f"), "q", "f", "_", ("_",),
                      {("q", "_"): ("q", "_", "L")}, name="lefty")
    r = tm_run_empty(m, 50)
    assert r.head_max_excursion == 0 and not r.halted


def test_zigzag_survives_long_budgets():
    r = tm_run_empty(machine_zigzag(), 2000)
    assert not r.halted
    assert r.head_max_excursion > 10


def test_demo_halts_with_room():
    r = tm_run_empty(machine_demo(), 100)
    assert r.halted
    assert r.head_max_excursion == 6
    # and is stopped by a tight tape
    assert tm_run_empty(machine_demo(), 100, space=5).space_exceeded


@given(st.integers(min_value=0, max_value=60), st.integers(min_value=0, max_value=60))
@settings(max_examples=40, deadline=None)
def test_budget_monotone(b1, b2):
    """A halting result at a small budget persists at any larger one."""
    lo, hi = min(b1, b2), max(b1, b2)
    m = machine_demo()
    r_lo, r_hi = tm_run_empty(m, lo), tm_run_empty(m, hi)
    if r_lo.halted:
        assert r_hi.halted and r_hi.steps_used == r_lo.steps_used
    if not r_hi.halted:
        assert not r_lo.halted


@given(st.integers(min_value=1, max_value=200))
@settings(max_examples=30, deadline=None)
def test_excursion_bounded_by_steps(budget):
    for mk in (machine_marcher, machine_zigzag, machine_demo):
        r = tm_run_empty(mk(), budget)
        assert r.head_max_excursion <= budget
