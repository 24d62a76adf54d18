"""Bounded empirical probes of late-time behavior.

Nothing here decides membership in a limiting language; the probes report
horizon-bounded evidence only.  The enabling probe asks: does a pinned
word keep getting reproduced at the origin, at late times, no matter how
the initial neighborhood around it is extended?  Every tried extension
must reach the target during the tail half of the horizon for a Supported
verdict; a single extension that never does refutes at this horizon.

The census machinery records which words of a given length show up in an
observation window at late times across a randomized ensemble, and the
dichotomy experiment compares a machine-hosting automaton's late census
against its payload rule's.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .compiler import CompiledCA, budget, compile_machine, phi
from .counters import BLANK_L0, SEED_L0, P, build_counter_ca
from .engine import Configuration, LocalRule, Word, cyclic, occurs, step, windowed


class ProbeError(Exception):
    pass


SUPPORTED = "SupportedAtHorizon"
REFUTED = "RefutedAtHorizon"
INCONCLUSIVE = "Inconclusive"

_WORK_CAP = 50_000_000     # rough cell-update allowance per probe call


@dataclass(frozen=True)
class ProbeConfig:
    horizon: int = 64
    context_lengths: tuple = ((1, 1),)
    samples: int = 64
    window: int = 32
    seed: int = 0

    def __post_init__(self):
        if self.horizon < 1:
            raise ProbeError("horizon must be >= 1")
        if self.window < 1:
            raise ProbeError("window must be >= 1")
        if self.samples < 1:
            raise ProbeError("samples must be >= 1")
        for pair in self.context_lengths:
            lu, lw = pair
            if lu < 0 or lw < 0:
                raise ProbeError("context lengths must be nonnegative")


@dataclass(frozen=True)
class EnablingVerdict:
    status: str
    witnesses: tuple     # (u, w, t) per context; t = -1 marks a failure

    @property
    def supported(self) -> bool:
        return self.status == SUPPORTED


def _contexts(values, lu, lw, limit, rng):
    total = len(values) ** (lu + lw)
    if total <= limit:
        for u in itertools.product(values, repeat=lu):
            for w in itertools.product(values, repeat=lw):
                yield u, w
        return
    for _ in range(limit):
        u = tuple(values[rng.randrange(len(values))] for _ in range(lu))
        w = tuple(values[rng.randrange(len(values))] for _ in range(lw))
        yield u, w


def probe_enables(F: LocalRule, v: Word, s, cfg: ProbeConfig) -> EnablingVerdict:
    """Horizon-bounded check that v (anchored) enables the word s at 0.

    Every tried context (u left of v, w right of v) must show s at the
    origin for some t in [horizon/2, horizon], for at least one tried
    completion of the rest of the line.  Completions are the uniform
    fills plus randomized fills of the dependence cone.
    """
    values = tuple(F.alphabet.values)
    r = F.radius
    rng = random.Random(cfg.seed)
    H = cfg.horizon
    ts_lo = H // 2
    target = Word(tuple(s), 0)
    n_rand = cfg.samples
    fill = r * H + 1

    # the work estimate is coarse on purpose: refuse absurd calls early
    n_ctx = sum(min(len(values) ** (lu + lw), cfg.samples)
                for lu, lw in cfg.context_lengths)
    per_completion = H * (len(v) + 2 * fill + 2 * r * H)
    if n_ctx * (len(values) + n_rand) * per_completion > _WORK_CAP:
        raise ProbeError("probe budget exceeded; shrink horizon, contexts, "
                         "or samples")

    if not cfg.context_lengths:
        return EnablingVerdict(INCONCLUSIVE, ())

    witnesses = []
    status = SUPPORTED
    for lu, lw in cfg.context_lengths:
        for u, w in _contexts(values, lu, lw, cfg.samples, rng):
            base = tuple(u) + tuple(v.symbols) + tuple(w)
            off = v.anchor - len(u)
            hit = None
            for comp in range(len(values) + n_rand):
                if comp < len(values):
                    bg = values[comp]
                    c = windowed(base, bg, bg, off)
                else:
                    bg = values[rng.randrange(len(values))]
                    lf = tuple(values[rng.randrange(len(values))]
                               for _ in range(fill))
                    rf = tuple(values[rng.randrange(len(values))]
                               for _ in range(fill))
                    c = windowed(lf + base + rf, bg, bg, off - fill)
                cur = c
                for t in range(1, H + 1):
                    cur = step(F, cur)
                    if t >= ts_lo and occurs(target, cur):
                        hit = (u, w, t)
                        break
                if hit is None and ts_lo == 0 and occurs(target, c):
                    hit = (u, w, 0)
                if hit is not None:
                    break
            if hit is None:
                status = REFUTED
                witnesses.append((u, w, -1))
            else:
                witnesses.append(hit)
    if status == REFUTED:
        witnesses = [wt for wt in witnesses if wt[2] < 0]
    return EnablingVerdict(status, tuple(witnesses))


def _word_key(names) -> str:
    if all(len(n) == 1 for n in names):
        return "".join(names)
    return ",".join(names)


def uniform_config_sampler(F: LocalRule, length: int) -> Callable:
    """Random cyclic configurations drawn uniformly over the state set."""
    def sample(rng):
        return cyclic(tuple(F.alphabet.sample(rng) for _ in range(length)))
    return sample


def late_word_census(F: LocalRule, cfg: ProbeConfig, word_len: int,
                     sampler: Optional[Callable] = None) -> dict:
    """Which words of length word_len appear in the window at tail times.

    Counts are per-sample incidence: a word contributes at most 1 per
    sampled run, however often it recurs.  Deterministic given cfg.seed.
    """
    if word_len < 1:
        raise ProbeError("word_len must be >= 1")
    if word_len > cfg.window:
        raise ProbeError("word_len must not exceed the observation window")
    if sampler is None:
        sampler = uniform_config_sampler(F, cfg.window)
    rng = random.Random(cfg.seed)
    name_of = F.alphabet.name_of
    names_cache: dict = {}
    H = cfg.horizon
    ts_lo = H // 2
    table: dict = {}
    for _ in range(cfg.samples):
        c = sampler(rng)
        obs = min(cfg.window, len(c))
        seen = set()
        cur = c
        for t in range(H + 1):
            if t > 0:
                cur = step(F, cur)
            if t < ts_lo:
                continue
            row = cur.cells
            names = []
            for i in range(obs):
                v = row[i]
                nm = names_cache.get(v)
                if nm is None:
                    nm = name_of(v)
                    names_cache[v] = nm
                names.append(nm)
            for i in range(obs - word_len + 1):
                seen.add(_word_key(names[i:i + word_len]))
        for wkey in seen:
            table[wkey] = table.get(wkey, 0) + 1
    return table


def render_census(table: dict) -> str:
    lines = [f"{w} {c}" for w, c in sorted(table.items())]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# ensembles

def sample_seed_positions(rng, length: int, gap_cap: int) -> list:
    """Seed positions on a ring with every gap (wrap included) <= gap_cap."""
    if gap_cap < 1:
        raise ProbeError("gap_cap must be >= 1")
    if gap_cap >= length:
        raise ProbeError("gap_cap must be smaller than the ring")
    for _ in range(100):
        pos = [rng.randrange(gap_cap)]
        while True:
            nxt = pos[-1] + 1 + rng.randrange(gap_cap)
            if nxt >= length:
                break
            pos.append(nxt)
        wrap = pos[0] + length - pos[-1]
        if wrap <= gap_cap:
            return pos
    # rare: force the wrap gap legal by seeding the long arc's middle
    pos.append((pos[-1] + wrap // 2) % length)
    return sorted(pos)


def sample_standalone_config(rng, length: int, density: float = 1 / 16):
    """Seeds dropped independently at the given density; rerolled until at
    least one lands."""
    cca = build_counter_ca()
    while True:
        cells = [SEED_L0 if rng.random() < density else BLANK_L0
                 for i in range(length)]
        if any(l0.g == SEED_L0.g for l0 in cells):
            return cca.config_from_l0(cells)


def sample_compiled_config(cca: CompiledCA, rng, length: int,
                           gap_cap: int) -> Configuration:
    """Seeded start for a compiled automaton: capped gaps, random payload
    letters everywhere, no machinery and no flood."""
    pos = sample_seed_positions(rng, length, gap_cap)
    vals = tuple(cca.payload.alphabet.values)
    pick = lambda i: vals[rng.randrange(len(vals))]
    return cca.seed_config(length, pos, junk=pick, seed_sigma=pick)


def phi_config(cca: CompiledCA, c: Configuration) -> Configuration:
    """Flatten a compiled start configuration to its payload shadow."""
    cells = tuple(phi(cca.decode(v), cca.x0) for v in c.cells)
    if c.mode == "cyclic":
        return cyclic(cells)
    return windowed(cells, cca.x0, cca.x0, c.offset)


# ---------------------------------------------------------------------------
# the dichotomy experiment

ALL_QN = "AllQn"
MATCHES_PAYLOAD = "MatchesPayload"
MIXED = "Mixed"


@dataclass(frozen=True)
class DichotomyReport:
    verdict: str
    compiled_table: dict = field(hash=False)
    payload_table: dict = field(hash=False)


def dichotomy_experiment(M, F1: LocalRule, cfg: ProbeConfig,
                         word_len: int = 2, length: int = 128,
                         gap_cap: int = 8, qn: str = "qn",
                         x0=None) -> DichotomyReport:
    """Late censuses of the hosted automaton vs its payload rule.

    AllQn: every late window is pure flood.  MatchesPayload: late words
    coincide exactly with the payload rule's late words on the flattened
    starts.  Mixed: anything else, which signals a construction bug.
    """
    if x0 is None:
        x0 = F1.alphabet.values[0]
    wipe = budget(gap_cap) + 2 * gap_cap
    if wipe >= cfg.horizon // 2:
        raise ProbeError(
            f"horizon too small: cleanup bound {wipe} reaches the tail")
    cca = compile_machine(M, F1, qn, x0)
    rng = random.Random(cfg.seed)
    pairs = []
    for _ in range(cfg.samples):
        c = sample_compiled_config(cca, rng, length, gap_cap)
        pairs.append((c, phi_config(cca, c)))

    def pop_sampler(items):
        it = iter(items)
        return lambda rng: next(it)

    compiled_table = late_word_census(
        cca.rule, cfg, word_len, sampler=pop_sampler([p[0] for p in pairs]))
    payload_table = late_word_census(
        F1, cfg, word_len, sampler=pop_sampler([p[1] for p in pairs]))

    qn_word = _word_key((qn,) * word_len)
    if set(compiled_table) == {qn_word}:
        verdict = ALL_QN
    elif compiled_table == payload_table:
        verdict = MATCHES_PAYLOAD
    else:
        verdict = MIXED
    return DichotomyReport(verdict, compiled_table, payload_table)
