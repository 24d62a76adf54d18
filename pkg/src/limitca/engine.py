"""Exact simulation of one-dimensional cellular automata on finite carriers.

Cell states are arbitrary hashable values (single-character strings for the
small built-in rules, interned integers for the machine-generated ones).
Two carrier modes stand in for the bi-infinite line: a cyclic array of L
cells, and a finite window padded on both sides by uniform backgrounds that
evolve like uniform configurations do.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence


class EngineError(Exception):
    pass


class Alphabet:
    """Finite ordered state set with unique display names.

    Values may be any hashable objects; ids are their dense positions.
    """

    def __init__(self, values: Sequence, names: Optional[Sequence[str]] = None):
        vals = list(values)
        if not vals:
            raise EngineError("alphabet must be nonempty")
        if names is None:
            names = [str(v) for v in vals]
        names = list(names)
        if len(names) != len(vals):
            raise EngineError("names and values differ in length")
        if len(set(names)) != len(names):
            raise EngineError("duplicate state names")
        if len(set(vals)) != len(vals):
            raise EngineError("duplicate state values")
        self._values = vals
        self._names = names
        self._id = {v: i for i, v in enumerate(vals)}

    @property
    def values(self) -> list:
        return list(self._values)

    @property
    def size(self) -> int:
        return len(self._values)

    def id_of(self, value) -> int:
        return self._id[value]

    def name_of(self, value) -> str:
        return self._names[self._id[value]]

    def value_of_name(self, name: str):
        try:
            return self._values[self._names.index(name)]
        except ValueError:
            raise EngineError(f"unknown state name {name!r}") from None

    def __contains__(self, value) -> bool:
        return value in self._id

    def sample(self, rng):
        return self._values[rng.randrange(len(self._values))]


class GrowingAlphabet:
    """State universe discovered on the fly.

    The compiled automata have state sets far too large to enumerate up
    front, so states are interned as the simulation produces them.  Ids are
    dense in discovery order; names are derived from the underlying
    structure, so they are stable regardless of discovery order.  A
    structured sampler stands in for enumeration where one is needed.
    """

    def __init__(self, namer: Callable, sampler: Optional[Callable] = None):
        self._namer = namer
        self._sampler = sampler
        self._structs: list = []
        self._ids: dict = {}

    def intern(self, struct) -> int:
        i = self._ids.get(struct)
        if i is None:
            i = len(self._structs)
            self._ids[struct] = i
            self._structs.append(struct)
        return i

    def struct_of(self, value: int):
        return self._structs[value]

    @property
    def values(self) -> list:
        # snapshot of what has been seen so far
        return list(range(len(self._structs)))

    @property
    def size(self) -> int:
        return len(self._structs)

    def name_of(self, value: int) -> str:
        return self._namer(self._structs[value])

    def __contains__(self, value) -> bool:
        return isinstance(value, int) and 0 <= value < len(self._structs)

    def sample(self, rng):
        if self._sampler is None:
            raise EngineError("alphabet has no sampler")
        return self.intern(self._sampler(rng))


@dataclass
class LocalRule:
    """Radius-r local map applied synchronously at every cell.

    `fn` must be a pure total function from (2r+1)-tuples of states to one
    state.  Evaluations are memoized per rule instance.
    """

    alphabet: object
    radius: int
    fn: Callable
    name: str = ""
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    def step_window(self, window: tuple):
        memo = self._memo
        v = memo.get(window)
        if v is None:
            v = self.fn(window)
            memo[window] = v
        return v


@dataclass(frozen=True)
class Configuration:
    """Assignment of states to cells, cyclic or windowed.

    Windowed mode keeps uniform left/right backgrounds beyond the stored
    window and remembers the absolute coordinate of cells[0] in `offset`,
    since the window grows as the rule's light cone widens.
    """

    cells: tuple
    mode: str = "cyclic"
    left_bg: object = None
    right_bg: object = None
    offset: int = 0

    def __post_init__(self):
        if self.mode not in ("cyclic", "windowed"):
            raise EngineError(f"bad configuration mode {self.mode!r}")
        if self.mode == "cyclic" and len(self.cells) < 1:
            raise EngineError("cyclic configuration needs at least one cell")

    def __len__(self):
        return len(self.cells)

    def at(self, i: int):
        """State at absolute coordinate i."""
        if self.mode == "cyclic":
            return self.cells[i % len(self.cells)]
        j = i - self.offset
        if j < 0:
            return self.left_bg
        if j >= len(self.cells):
            return self.right_bg
        return self.cells[j]


def cyclic(cells: Iterable) -> Configuration:
    return Configuration(tuple(cells), "cyclic")


def windowed(cells: Iterable, left_bg, right_bg=None, offset: int = 0) -> Configuration:
    if right_bg is None:
        right_bg = left_bg
    return Configuration(tuple(cells), "windowed", left_bg, right_bg, offset)


@dataclass(frozen=True)
class Word:
    """Finite pattern anchored at an absolute coordinate."""

    symbols: tuple
    anchor: int = 0

    def __len__(self):
        return len(self.symbols)


def occurs(w: Word, c: Configuration) -> bool:
    """True when every cell of c under the anchored word matches it."""
    return all(c.at(w.anchor + k) == s for k, s in enumerate(w.symbols))


def step(rule: LocalRule, c: Configuration) -> Configuration:
    r = rule.radius
    k = 2 * r + 1
    fn = rule.fn
    memo = rule._memo
    if c.mode == "cyclic":
        cells = c.cells
        n = len(cells)
        if r == 0:
            ext = cells
        else:
            reps = -(-r // n)  # wrap more than once for tiny cycles
            pad_l = (cells * reps)[-r:]
            pad_r = (cells * reps)[:r]
            ext = pad_l + cells + pad_r
        out = []
        ap = out.append
        for i in range(n):
            w = ext[i:i + k]
            v = memo.get(w)
            if v is None:
                v = fn(w)
                memo[w] = v
            ap(v)
        return Configuration(tuple(out), "cyclic")

    # windowed: the window grows by r per side, backgrounds evolve uniformly
    lb, rb = c.left_bg, c.right_bg
    ext = (lb,) * (2 * r) + c.cells + (rb,) * (2 * r)
    out = []
    ap = out.append
    for i in range(len(c.cells) + 2 * r):
        w = ext[i:i + k]
        v = memo.get(w)
        if v is None:
            v = fn(w)
            memo[w] = v
        ap(v)
    new_lb = rule.step_window((lb,) * k)
    new_rb = rule.step_window((rb,) * k)
    return Configuration(tuple(out), "windowed", new_lb, new_rb, c.offset - r)


@dataclass
class SpaceTimeDiagram:
    """Orbit of an initial configuration; rows[t] is the state at time t."""

    rows: list

    @property
    def steps(self) -> int:
        return len(self.rows) - 1

    def cell(self, t: int, i: int):
        return self.rows[t].at(i)


def run(rule: LocalRule, c: Configuration, steps: int) -> SpaceTimeDiagram:
    if steps < 0:
        raise EngineError("steps must be nonnegative")
    rows = [c]
    for _ in range(steps):
        c = step(rule, c)
        rows.append(c)
    return SpaceTimeDiagram(rows)


def run_until(rule: LocalRule, c: Configuration, predicate: Callable,
              max_steps: int):
    """Iterate until predicate(config) holds; returns (t, config) or (None, last)."""
    if predicate(c):
        return 0, c
    for t in range(1, max_steps + 1):
        c = step(rule, c)
        if predicate(c):
            return t, c
    return None, c


def _rotate(cells: tuple) -> tuple:
    return cells[1:] + cells[:1]


def shift_commutes(rule: LocalRule, L: int, samples: int = 10_000,
                   seed: int = 0) -> bool:
    """Check that stepping commutes with rotating a length-L cycle.

    Exhaustive when the state count allows it, sampled otherwise.  The raw
    rule function is applied directly (no memo) so that an impure fake rule
    injected by a test is actually exercised.
    """
    if L < 2 * rule.radius + 1:
        raise EngineError("cycle shorter than the rule neighborhood")
    values = rule.alphabet.values
    r = rule.radius
    k = 2 * r + 1
    fn = rule.fn

    def raw_step(cells):
        ext = cells[-r:] + cells + cells[:r] if r else cells
        return tuple(fn(ext[i:i + k]) for i in range(len(cells)))

    def check(cells):
        return raw_step(_rotate(cells)) == _rotate(raw_step(cells))

    n = len(values)
    if n and n ** L <= 1_000_000:
        return all(check(c) for c in itertools.product(values, repeat=L))
    import random
    rng = random.Random(seed)
    for _ in range(max(samples, 10_000)):
        cells = tuple(rule.alphabet.sample(rng) for _ in range(L))
        if not check(cells):
            return False
    return True


def enumerate_images(rule: LocalRule, n: int, depth: int = 1) -> set:
    """All length-n words that appear after `depth` synchronous steps.

    Brute force over every input word wide enough to determine the output;
    refuses inputs that would enumerate more than 10**7 words.
    """
    if n < 0 or depth < 1:
        raise EngineError("need n >= 0 and depth >= 1")
    values = rule.alphabet.values
    r = rule.radius
    k = 2 * r + 1
    width = n + 2 * r * depth
    if len(values) ** width > 10 ** 7:
        raise EngineError("image enumeration budget exceeded")
    out = set()
    sw = rule.step_window
    for u in itertools.product(values, repeat=width):
        w = u
        for _ in range(depth):
            w = tuple(sw(w[i:i + k]) for i in range(len(w) - 2 * r))
        out.add(w)
    return out
