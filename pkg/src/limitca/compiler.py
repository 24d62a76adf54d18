"""Hosting a machine inside the protected segments of the width-race core.

Given a payload rule F1 of radius 1, a start state x0, a fresh flood name,
and a machine M, the compiled automaton runs the width-race construction
and additionally keeps a shadow copy of F1 on every cell.  Cleared
segments wake with a simulated tape; a head starts next to each left
wall.  Every segment carries a binary step budget that overflows after
about 2**n ticks for a segment of wall distance n, at which point the
segment wipes itself; a head that runs out of room to the right wipes it
early.  A machine that reaches its final state floods the line with the
absorbing state instead.

The payload layer is arranged so that cell i at time t carries exactly
the t-step F1 image of the flattened start configuration (seed cells keep
their payload letter, everything else is taken to be x0) once the
machinery has left cell i for good, unless the flood got there first.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .counters import (BLANK_L0, SEED_L0, WALL_L0, B, CoreCtx,
                       ConstructionParams, GROUNDS, Inn, L0, Out, P, Pay, Q,
                       QN_STATE, READY, SEED, WALL, WEAK, core_step,
                       state_name)
from .engine import (Configuration, GrowingAlphabet, LocalRule, step)
from .turing import TuringMachine


@dataclass(frozen=True)
class UniformOrbit:
    """Trajectory of the all-x0 configuration under F1: x0, F1(x0), ...

    seq holds the preperiod followed by one full period, so
    len(seq) == preperiod + period.
    """
    preperiod: int
    period: int
    seq: tuple

    def value_at(self, t: int):
        if t < 0:
            raise ValueError("t must be nonnegative")
        if t < len(self.seq):
            return self.seq[t]
        return self.seq[self.preperiod + (t - self.preperiod) % self.period]


def uniform_orbit(f1: LocalRule, x0) -> UniformOrbit:
    """Follow x -> f1(x,x,x) from x0 until it cycles."""
    if x0 not in f1.alphabet:
        raise ValueError("x0 is not a state of the payload rule")
    seen = {}
    seq = []
    x = x0
    while x not in seen:
        seen[x] = len(seq)
        seq.append(x)
        x = f1.step_window((x, x, x))
    p = seen[x]
    return UniformOrbit(preperiod=p, period=len(seq) - p, seq=tuple(seq))


def budget(n: int) -> int:
    """Step allowance for a segment of wall distance n: 2**n + 4*n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > 62:
        raise ValueError("n > 62: budget would overflow common fixed widths")
    return 2 ** n + 4 * n


def phi(s, x0):
    """Flatten one initial cell: seeds keep their payload letter, the rest
    collapse to x0."""
    if s[0] == P and s[1].g == SEED:
        return s[2]
    return x0


@dataclass
class CompiledCA:
    """A machine-hosting automaton plus its build recipe."""

    rule: LocalRule
    ctx: CoreCtx
    params: ConstructionParams
    machine: TuringMachine
    payload: LocalRule
    payload_name: str
    qn: str
    x0: object
    orbit: UniformOrbit

    def encode(self, s) -> int:
        return self.rule.alphabet.intern(s)

    def decode(self, i: int):
        return self.rule.alphabet.struct_of(i)

    def l0_of(self, i: int) -> Optional[L0]:
        s = self.decode(i)
        return s[1] if s[0] == P else None

    def pi2(self, i: int):
        """Payload component of a state id; None for the flood state."""
        s = self.decode(i)
        return None if s[0] == Q else s[-1]

    @property
    def qn_id(self) -> int:
        return self.encode(QN_STATE)

    def config_from(self, cells, mode="cyclic") -> Configuration:
        ids = tuple(self.encode(s) for s in cells)
        if mode == "cyclic":
            return Configuration(ids, "cyclic")
        bg = self.encode((P, BLANK_L0, self.x0))
        return Configuration(ids, "windowed", bg, bg)

    def seed_config(self, length: int, seed_positions, junk=None,
                    seed_sigma=None, mode="cyclic") -> Configuration:
        """Seeds at the given positions; junk/seed_sigma map i -> payload."""
        pos = set(p % length for p in seed_positions)
        cells = []
        for i in range(length):
            if i in pos:
                x = self.x0 if seed_sigma is None else seed_sigma(i)
                cells.append((P, SEED_L0, x))
            else:
                x = self.x0 if junk is None else junk(i)
                cells.append((P, BLANK_L0, x))
        return self.config_from(cells, mode)


def compile_machine(machine: TuringMachine, payload: LocalRule, qn: str,
                    x0, params: ConstructionParams = ConstructionParams(),
                    payload_name: str = "custom") -> CompiledCA:
    """Build the two-layer automaton hosting `machine` over `payload`."""
    if payload.radius != 1:
        raise ValueError("payload rule must have radius 1")
    if x0 not in payload.alphabet:
        raise ValueError("x0 must be a payload state")
    pal = payload.alphabet
    pvals = tuple(pal.values)
    names = {pal.name_of(v) for v in pvals}
    if qn in names:
        raise ValueError("flood name collides with a payload state name")
    if any("|" in n or n == "" for n in names):
        raise ValueError("payload state names must be nonempty and '|'-free")

    orbit = uniform_orbit(payload, x0)
    ctx = CoreCtx(payload_on=True, tm=machine, d1=payload.step_window,
                  orbit_seq=orbit.seq, orbit_p=orbit.preperiod, x0=x0)

    def namer(s):
        return state_name(s, pal.name_of, qn)

    tape = tuple(machine.tape_alphabet)
    nstates = len(machine.states)

    def sampler(rng):
        roll = rng.random()
        if roll < 0.04:
            return QN_STATE
        x = pvals[rng.randrange(len(pvals))]
        if roll < 0.12:
            return (B, x)
        g = GROUNDS[rng.randrange(len(GROUNDS))]
        if g in (SEED, WALL, WEAK):
            return (P, L0(g, None, None, None, None, None, False), x)
        outs = (None, Out(False, 0), Out(True, 0))
        inns = (None, Inn(0), Inn(1), Inn(2))
        fr = outs[rng.randrange(3)]
        br = inns[rng.randrange(4)]
        fl = outs[rng.randrange(3)]
        bl = inns[rng.randrange(4)]
        ab = False
        pay = None
        if g == READY and rng.random() < 0.6:
            if rng.random() < 0.1:
                ab = True
            else:
                head = rng.randrange(nstates) if rng.random() < 0.3 else -1
                pay = Pay(tape[rng.randrange(len(tape))], head,
                          (-1, 0, 1)[rng.randrange(3)], rng.random() < 0.15,
                          rng.randrange(2))
        return (P, L0(g, pay, fr, br, fl, bl, ab), x)

    alphabet = GrowingAlphabet(namer, sampler=sampler)

    def fn(win):
        states = tuple(alphabet.struct_of(i) for i in win)
        return alphabet.intern(core_step(states, ctx))

    rule = LocalRule(alphabet, params.radius, fn,
                     name="compiled:" + (machine.name or "machine"))
    cca = CompiledCA(rule, ctx, params, machine, payload, payload_name,
                     qn, x0, orbit)
    # the handful of always-relevant states get stable low ids
    for s in ((P, BLANK_L0, x0), (P, SEED_L0, x0), (P, WALL_L0, x0), QN_STATE):
        cca.encode(s)
    return cca


def seed_distances(cells_are_seed, mode="cyclic"):
    n = len(cells_are_seed)
    seeds = [i for i in range(n) if cells_are_seed[i]]
    if not seeds:
        raise ValueError("no seeds: every protection bound is infinite")
    if mode == "cyclic":
        return [min(min(abs(i - s), n - abs(i - s)) for s in seeds)
                for i in range(n)]
    return [min(abs(i - s) for s in seeds) for i in range(n)]


@dataclass(frozen=True)
class ProjReport:
    ok: bool
    horizon: int
    checked: int
    violation: Optional[tuple]   # (t, i, got name, wanted name)
    qn_cells: int = 0            # flood sightings over the whole run


def verify_proj(cca: CompiledCA, c: Configuration, horizon: int) -> ProjReport:
    """Past each cell's machinery deadline, the payload layer must carry the
    exact F1 image of the flattened start, except where the flood sits."""
    import numpy as np

    if c.mode != "cyclic":
        raise ValueError("verify_proj expects a cyclic configuration")
    pal = cca.payload.alphabet
    pvals = tuple(pal.values)
    x0 = cca.x0
    cells = [cca.decode(v) for v in c.cells]
    is_seed = [s[0] == P and s[1].g == SEED for s in cells]
    dists = seed_distances(is_seed, c.mode)
    si = cca.params.slowness_inner
    bounds = np.array([si * d for d in dists], dtype=np.int64)

    n = len(cells)
    image = np.array([pal.id_of(phi(s, x0)) for s in cells], dtype=np.int64)
    fwin = cca.payload.step_window

    m = len(pvals)
    table = np.empty((m, m, m), dtype=np.int64)
    for a in range(m):
        for b in range(m):
            for cc in range(m):
                table[a, b, cc] = pal.id_of(fwin((pvals[a], pvals[b], pvals[cc])))

    pi2_cache: dict = {}

    def pi2_row(cfg):
        out = np.empty(n, dtype=np.int64)
        for i, v in enumerate(cfg.cells):
            pid = pi2_cache.get(v)
            if pid is None:
                x = cca.pi2(v)
                pid = -1 if x is None else pal.id_of(x)
                pi2_cache[v] = pid
            out[i] = pid
        return out

    def image_step(row):
        return table[np.roll(row, 1), row, np.roll(row, -1)]

    cur = c
    checked = 0
    qn_cells = 0
    got = pi2_row(cur)
    for t in range(horizon + 1):
        if t > 0:
            cur = step(cca.rule, cur)
            got = pi2_row(cur)
            image = image_step(image)
        qn_cells += int((got == -1).sum())
        live = t > bounds
        mism = live & (got != image) & (got != -1)
        checked += int(live.sum())
        if mism.any():
            i = int(np.argmax(mism))
            gname = cca.rule.alphabet.name_of(cur.cells[i])
            wname = pal.name_of(pvals[int(image[i])])
            return ProjReport(False, horizon, checked, (t, i, gname, wname),
                              qn_cells)
    return ProjReport(True, horizon, checked, None, qn_cells)


@dataclass(frozen=True)
class AbortReport:
    ok: bool
    rows: tuple     # (n, settle time or -1, budget(n))
    failure: Optional[str]


def verify_abort(cca: CompiledCA, n_max: int, n_min: int = 3) -> AbortReport:
    """Segments of wall distance n go quiet strictly before budget(n).

    For each n a two-seed ring is run until every interior cell of the
    tested segment is bare or flooded; that settle time must come strictly
    before budget(n), and the segment must have hosted a head at some point.
    """
    rows = []
    for n in range(n_min, n_max + 1):
        limit = budget(n)
        c = cca.seed_config(n + 8, [0, n])
        interior = range(1, n)
        saw_head = False
        settle = -1
        cur = c
        for t in range(1, limit + 1):
            cur = step(cca.rule, cur)
            quiet = True
            for i in interior:
                s = cca.decode(cur.cells[i])
                if s[0] == Q or s[0] == B:
                    continue
                quiet = False
                l0 = s[1]
                if l0.pay is not None and l0.pay.head >= 0:
                    saw_head = True
            if quiet:
                settle = t
                break
        rows.append((n, settle, limit))
        if settle < 0 or settle >= limit:
            return AbortReport(False, tuple(rows),
                               f"segment n={n} still active at budget {limit}")
        if not saw_head:
            return AbortReport(False, tuple(rows),
                               f"segment n={n} never hosted a head")
    return AbortReport(True, tuple(rows), None)
