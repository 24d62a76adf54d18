"""Single-tape Turing machines on a half-infinite tape.

The tape has a left edge at cell 0; a left move at the edge stays put
after performing its write and state change.  Machines must be total on
non-final states and have no outgoing transitions from the final state,
so a run either reaches the final state or goes on forever.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


class MachineError(Exception):
    pass


MOVES = ("L", "R", "S")


@dataclass(frozen=True)
class TuringMachine:
    states: tuple
    initial: str
    final: str
    blank: str
    tape_alphabet: tuple
    transitions: dict = field(hash=False)
    name: str = ""

    def __post_init__(self):
        self.validate()

    def validate(self):
        states = set(self.states)
        alpha = set(self.tape_alphabet)
        if len(states) != len(self.states):
            raise MachineError("duplicate state names")
        if len(alpha) != len(self.tape_alphabet):
            raise MachineError("duplicate tape symbols")
        if self.initial not in states:
            raise MachineError(f"initial state {self.initial!r} not declared")
        if self.final not in states:
            raise MachineError(f"final state {self.final!r} not declared")
        if self.blank not in alpha:
            raise MachineError(f"blank symbol {self.blank!r} not declared")
        for (q, a), (q2, b, mv) in self.transitions.items():
            if q not in states or q2 not in states:
                raise MachineError(f"transition uses undeclared state: {q!r} -> {q2!r}")
            if a not in alpha or b not in alpha:
                raise MachineError(f"transition uses undeclared symbol: {a!r} -> {b!r}")
            if mv not in MOVES:
                raise MachineError(f"bad move {mv!r}")
            if q == self.final:
                raise MachineError("transition leaving the final state")
        for q in self.states:
            if q == self.final:
                continue
            for a in self.tape_alphabet:
                if (q, a) not in self.transitions:
                    raise MachineError(f"missing transition for ({q!r}, {a!r})")

    def delta(self, q: str, a: str):
        return self.transitions[(q, a)]


@dataclass(frozen=True)
class TMRun:
    halted: bool
    steps_used: int
    head_max_excursion: int
    space_exceeded: bool = False


def tm_run_empty(m: TuringMachine, budget: int, space: Optional[int] = None) -> TMRun:
    """Run m from the empty tape for at most `budget` steps.

    Stops early when the head would need a cell at coordinate >= `space`;
    that outcome is reported distinctly via space_exceeded.
    """
    if budget < 0:
        raise MachineError("budget must be nonnegative")
    tape = {}
    head = 0
    q = m.initial
    excursion = 0
    for t in range(budget):
        if q == m.final:
            return TMRun(True, t, excursion)
        a = tape.get(head, m.blank)
        q, b, mv = m.delta(q, a)
        tape[head] = b
        if mv == "R":
            head += 1
        elif mv == "L":
            head = max(0, head - 1)
        if space is not None and head >= space:
            return TMRun(False, t + 1, excursion, space_exceeded=True)
        excursion = max(excursion, head)
    return TMRun(q == m.final, budget, excursion)


def machine_halt() -> TuringMachine:
    """Halts on its first step without moving."""
    return TuringMachine(
        states=("q0", "qf"), initial="q0", final="qf", blank="_",
        tape_alphabet=("_",),
        transitions={("q0", "_"): ("qf", "_", "S")},
        name="halt1")


def machine_loop() -> TuringMachine:
    """Spins in place forever."""
    return TuringMachine(
        states=("q0", "qf"), initial="q0", final="qf", blank="_",
        tape_alphabet=("_",),
        transitions={("q0", "_"): ("q0", "_", "S")},
        name="loop1")


def machine_marcher() -> TuringMachine:
    """Walks right forever, leaving a trail of 1s."""
    return TuringMachine(
        states=("go", "qf"), initial="go", final="qf", blank="_",
        tape_alphabet=("_", "1"),
        transitions={
            ("go", "_"): ("go", "1", "R"),
            ("go", "1"): ("go", "1", "R"),
        },
        name="marcher")


def machine_zigzag() -> TuringMachine:
    """Bounces between a marker at cell 0 and the growing right edge."""
    tr = {
        ("a", "_"): ("a2", "M", "R"),
        ("a", "1"): ("a2", "M", "R"),   # unreachable from empty tape, totality
        ("a", "M"): ("a2", "M", "R"),
        ("a2", "_"): ("b", "1", "L"),
        ("a2", "1"): ("a2", "1", "R"),
        ("a2", "M"): ("a2", "M", "R"),
        ("b", "1"): ("b", "1", "L"),
        ("b", "_"): ("b", "1", "L"),
        ("b", "M"): ("a2", "M", "R"),
    }
    return TuringMachine(
        states=("a", "a2", "b", "qf"), initial="a", final="qf", blank="_",
        tape_alphabet=("_", "1", "M"),
        transitions=tr, name="zigzag")


def machine_demo() -> TuringMachine:
    """Delays in place for 12 steps, walks 6 cells right, then halts.

    Chosen so that narrow carriers run out of time, middling ones run out
    of space, and roomy ones let it finish.
    """
    tr = {}
    for i in range(12):
        tr[(f"d{i}", "_")] = (f"d{i + 1}" if i < 11 else "w0", "_", "S")
        tr[(f"d{i}", "1")] = (f"d{i}", "1", "S")  # unreachable, totality only
    for j in range(6):
        tr[(f"w{j}", "_")] = (f"w{j + 1}" if j < 5 else "qf", "1", "R")
        tr[(f"w{j}", "1")] = (f"w{j}", "1", "R")
    states = tuple(f"d{i}" for i in range(12)) + tuple(f"w{j}" for j in range(6)) + ("qf",)
    return TuringMachine(
        states=states, initial="d0", final="qf", blank="_",
        tape_alphabet=("_", "1"),
        transitions=tr, name="demo")


BUILTIN_MACHINES = {
    "halt1": machine_halt,
    "loop1": machine_loop,
    "marcher": machine_marcher,
    "zigzag": machine_zigzag,
    "demo": machine_demo,
}
