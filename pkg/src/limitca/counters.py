"""Width-measuring border pairs that clear and fence off regions of the line.

Seed cells (present only in the initial configuration) fire a pair of
borders in each direction that faces away from another seed: a fast outer
front moving one cell per tick, and a slow trailing edge moving one cell
every second tick.  The distance between the two encodes how long ago the
pair was launched, so when two opposing fronts collide the pair widths can
be raced against each other to decide which launch site was closer in
time.  Equal widths annihilate both pairs.  The younger pair survives and
resumes sweeping.

Seeds themselves turn into walls (or, when flanked by seeds on both sides,
directly into cleared ready cells).  A cleared cell optionally carries a
payload record: a simulated machine-tape cell plus one digit of a binary
step budget.  The payload machinery is switched off for the standalone
builder in this module and switched on by the compiler built on top of it.

Cell anatomy, layer 0:

    ground   '_' untouched, '*' seed, 'W' wall, 'w' weakened wall,
             'R' ready (cleared, in service)
    fr / fl  outer fronts moving right / left; may be frozen mid-collision
    br / bl  trailing edges; ph 0/1 is the move clock, ph 2 marks a
             trailing edge that was denied its move by a freeze
    ab       leftward erase flag used by the payload machinery
    pay      payload record (tape symbol, head state, budget digit,
             carry, local clock)

Every cell of the two-layer automata built from this core is one of
('P', layer0, x) with x the protected payload-layer state, ('B', x) with
layer 0 gone for good, or ('Q',), the absorbing flood state.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

from .engine import (Alphabet, Configuration, LocalRule, SpaceTimeDiagram,
                     step)

BLANK = "_"
SEED = "*"
WALL = "W"
WEAK = "w"
READY = "R"

GROUNDS = (BLANK, SEED, WALL, WEAK, READY)


class Pay(NamedTuple):
    sym: str
    head: int          # index into machine states, -1 for no head
    bit: int           # -1 no digit, else 0/1
    carry: bool
    clock: int


class Out(NamedTuple):
    frozen: bool
    th: int            # uniform-orbit clock carried for payload rewriting


class Inn(NamedTuple):
    ph: int            # 0/1 marching clock; 2 = parked after a denied move


class L0(NamedTuple):
    g: str
    pay: Optional[Pay]
    fr: Optional[Out]
    br: Optional[Inn]
    fl: Optional[Out]
    bl: Optional[Inn]
    ab: bool


BLANK_L0 = L0(BLANK, None, None, None, None, None, False)
SEED_L0 = L0(SEED, None, None, None, None, None, False)
WALL_L0 = L0(WALL, None, None, None, None, None, False)
READY_L0 = L0(READY, None, None, None, None, None, False)

P, B, Q = "P", "B", "Q"
QN_STATE = (Q,)


def l0_name(l0: L0) -> str:
    parts = [l0.g]
    if l0.fr is not None:
        parts.append((">F" if l0.fr.frozen else ">o") + str(l0.fr.th))
    if l0.br is not None:
        parts.append(">i" + str(l0.br.ph))
    if l0.fl is not None:
        parts.append(("<F" if l0.fl.frozen else "<o") + str(l0.fl.th))
    if l0.bl is not None:
        parts.append("<i" + str(l0.bl.ph))
    if l0.ab:
        parts.append("ab")
    if l0.pay is not None:
        p = l0.pay
        parts.append(f"p{p.sym},{p.head},{p.bit},{int(p.carry)},{p.clock}")
    return "+".join(parts)


@dataclass(frozen=True)
class ConstructionParams:
    """Speeds of the two border kinds, in ticks per cell, plus rule radius.

    Only the shipped combination is implemented; the fields exist so that
    callers state their assumption and get a loud error otherwise.
    """

    slowness_outer: int = 1
    slowness_inner: int = 2
    radius: int = 2

    def __post_init__(self):
        if (self.slowness_outer, self.slowness_inner, self.radius) != (1, 2, 2):
            raise ValueError(
                "unsupported parameters: this build implements "
                "slowness_outer=1, slowness_inner=2, radius=2")


def counter_width(k: int, params: ConstructionParams = ConstructionParams()) -> int:
    """Distance between a pair's outer front and trailing edge at age k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return k // params.slowness_inner


@dataclass
class CoreCtx:
    """Everything the transition needs beyond the five-cell window."""

    payload_on: bool
    tm: object                   # TuringMachine or None
    d1: Callable                 # radius-1 local map on payload states
    orbit_seq: tuple             # uniform orbit of x0 under d1
    orbit_p: int                 # preperiod length within orbit_seq
    x0: object
    q0_i: int = -1
    qf_i: int = -1
    blank_sym: str = ""
    states: tuple = ()
    state_i: dict = None

    def __post_init__(self):
        if self.tm is not None:
            self.states = tuple(self.tm.states)
            self.state_i = {q: i for i, q in enumerate(self.states)}
            self.q0_i = self.state_i[self.tm.initial]
            self.qf_i = self.state_i[self.tm.final]
            self.blank_sym = self.tm.blank

    def orb(self, th: int):
        return self.orbit_seq[th]

    def next_th(self, th: int) -> int:
        n = th + 1
        return n if n < len(self.orbit_seq) else self.orbit_p


def _wallish(l0) -> bool:
    return l0 is not None and (l0.g == WALL or l0.g == WEAK)


def _seed(l0) -> bool:
    return l0 is not None and l0.g == SEED


def _unparked_bl(l0) -> bool:
    return (l0 is not None and l0.bl is not None
            and not (l0.fl is not None and l0.fl.frozen))


def _unparked_br(l0) -> bool:
    return (l0 is not None and l0.br is not None
            and not (l0.fr is not None and l0.fr.frozen))


def _rank(ph: int) -> int:
    # parked trailing edges sort youngest-first: denied-move, then clock 1, then 0
    return 0 if ph == 2 else (1 if ph == 1 else 2)


def _outcome(frcell: L0, flcell: L0) -> str:
    """Race verdict at a frozen marker pair: wait/left/right/tie."""
    arr_l = frcell.br is not None
    arr_r = flcell.bl is not None
    if not arr_l and not arr_r:
        return "wait"
    if arr_l and not arr_r:
        return "left"
    if arr_r and not arr_l:
        return "right"
    rl, rr = _rank(frcell.br.ph), _rank(flcell.bl.ph)
    if rl == rr:
        return "tie"
    return "left" if rl < rr else "right"


def _fr_resolution(me: L0, right: Optional[L0]) -> str:
    """Fate word for a frozen right-moving front: hold/resume/vanish."""
    if me.fl is not None and me.fl.frozen:
        oc = _outcome(me, me)
    elif (right is not None and right.fl is not None and right.fl.frozen
          and not (right.fr is not None and right.fr.frozen)):
        oc = _outcome(me, right)
    else:
        return "resume"          # opponent gone without settling the race
    if oc == "wait":
        return "hold"
    if oc == "left":
        return "resume"
    return "vanish"


def _fl_resolution(me: L0, left: Optional[L0]) -> str:
    if me.fr is not None and me.fr.frozen:
        oc = _outcome(me, me)
    elif (left is not None and left.fr is not None and left.fr.frozen
          and not (left.fl is not None and left.fl.frozen)):
        oc = _outcome(left, me)
    else:
        return "resume"
    if oc == "wait":
        return "hold"
    if oc == "right":
        return "resume"
    return "vanish"


def _fr_fate(me: L0, ahead1: Optional[L0], ahead2: Optional[L0]) -> str:
    """Movement decision for the right-moving front in `me`.

    hold: stay frozen.  resume: unfreeze and step right.  freeze: stop in
    place.  jump: step right and freeze there.  move: step right.
    vanish: the front dies this tick.
    """
    if me.fr.frozen:
        return _fr_resolution(me, ahead1)
    if me.fl is not None:
        return "freeze"                       # opposing front in this very cell
    if me.bl is not None:
        return "vanish"                       # naked opposing edge right here
    if _wallish(ahead1) or _seed(ahead1):
        return "vanish"
    if ahead1 is not None and ahead1.fl is not None:
        return "freeze"
    if _unparked_bl(ahead1):
        return "vanish"
    if ahead2 is not None and ahead2.fl is not None:
        return "jump"
    if _unparked_bl(ahead2):
        return "vanish"
    return "move"


def _fl_fate(me: L0, ahead1: Optional[L0], ahead2: Optional[L0]) -> str:
    if me.fl.frozen:
        return _fl_resolution(me, ahead1)
    if me.fr is not None:
        return "freeze"
    if me.br is not None:
        return "vanish"
    if _wallish(ahead1) or _seed(ahead1):
        return "vanish"
    if ahead1 is not None and ahead1.fr is not None:
        return "freeze"
    if _unparked_br(ahead1):
        return "vanish"
    if ahead2 is not None and ahead2.fr is not None:
        return "jump"
    if _unparked_br(ahead2):
        return "vanish"
    return "move"


def _br_dies_staying(me: L0, ahead1: Optional[L0]) -> bool:
    return _unparked_bl(me) or _unparked_bl(ahead1)


def _br_dies_moving(me: L0, ahead1: Optional[L0], ahead2: Optional[L0]) -> bool:
    if _unparked_bl(me) or _unparked_bl(ahead1):
        return True
    return (_unparked_bl(ahead2) and ahead2.bl.ph == 1)


def _bl_dies_staying(me: L0, ahead1: Optional[L0]) -> bool:
    return _unparked_br(me) or _unparked_br(ahead1)


def _bl_dies_moving(me: L0, ahead1: Optional[L0], ahead2: Optional[L0]) -> bool:
    if _unparked_br(me) or _unparked_br(ahead1):
        return True
    return (_unparked_br(ahead2) and ahead2.br.ph == 1)


def _get_l0(s) -> Optional[L0]:
    return s[1] if s[0] == P else None


def _pi2(s):
    # payload-layer component; None for the flood state
    if s[0] == P or s[0] == B:
        return s[-1]
    return None


def core_step(win: tuple, ctx: CoreCtx):
    """One synchronous update of the center cell from its radius-2 window."""
    s_m2, s_m1, s_c, s_p1, s_p2 = win
    a2, a1, c0, b1, b2 = (_get_l0(s) for s in win)

    # ---- layer 0 objects -------------------------------------------------
    nfr = nbr = nfl = nbl = None
    arrive_l = arrive_r = False      # an outer front entered from that side
    th_l = th_r = 0                  # orbit clock of the entering front

    if c0 is not None and c0.fr is not None:
        fate = _fr_fate(c0, b1, b2)
        if fate == "hold":
            nfr = Out(True, ctx.next_th(c0.fr.th))
        elif fate == "freeze":
            nfr = Out(True, ctx.next_th(c0.fr.th))
    if a1 is not None and a1.fr is not None:
        fate = _fr_fate(a1, c0, b1)
        if fate in ("move", "resume"):
            nfr = Out(False, ctx.next_th(a1.fr.th))
            arrive_l, th_l = True, a1.fr.th
        elif fate == "jump":
            nfr = Out(True, ctx.next_th(a1.fr.th))
            arrive_l, th_l = True, a1.fr.th

    if c0 is not None and c0.fl is not None:
        fate = _fl_fate(c0, a1, a2)
        if fate == "hold":
            nfl = Out(True, ctx.next_th(c0.fl.th))
        elif fate == "freeze":
            nfl = Out(True, ctx.next_th(c0.fl.th))
    if b1 is not None and b1.fl is not None:
        fate = _fl_fate(b1, c0, a1)
        if fate in ("move", "resume"):
            nfl = Out(False, ctx.next_th(b1.fl.th))
            arrive_r, th_r = True, b1.fl.th
        elif fate == "jump":
            nfl = Out(True, ctx.next_th(b1.fl.th))
            arrive_r, th_r = True, b1.fl.th

    # trailing edges
    if c0 is not None and c0.br is not None:
        if c0.fr is not None and c0.fr.frozen:
            res = _fr_resolution(c0, b1)
            if res == "hold":
                nbr = c0.br
            elif res == "resume":
                nbr = Inn(0)
            # vanish: lost or tied along with the marker
        else:
            fr_fate = _fr_fate(c0, b1, b2) if c0.fr is not None else None
            if fr_fate == "freeze":
                nbr = Inn(2) if c0.br.ph == 1 else Inn(1)
            elif not _br_dies_staying(c0, b1) and c0.br.ph == 0:
                nbr = Inn(1)
            # ph 1 moves away; handled by the right neighbor
    if (a1 is not None and a1.br is not None and a1.br.ph == 1
            and not (a1.fr is not None and a1.fr.frozen)):
        fr_fate = _fr_fate(a1, c0, b1) if a1.fr is not None else None
        parking = ((c0 is not None and c0.fr is not None and c0.fr.frozen)
                   or fr_fate == "jump")
        if parking:
            dies = _unparked_bl(a1) or _unparked_bl(c0)
        else:
            dies = _br_dies_moving(a1, c0, b1)
        if fr_fate != "freeze" and not dies:
            if not (c0 is not None and c0.g in (WALL, WEAK, SEED)):
                nbr = Inn(0)

    if c0 is not None and c0.bl is not None:
        if c0.fl is not None and c0.fl.frozen:
            res = _fl_resolution(c0, a1)
            if res == "hold":
                nbl = c0.bl
            elif res == "resume":
                nbl = Inn(0)
        else:
            fl_fate = _fl_fate(c0, a1, a2) if c0.fl is not None else None
            if fl_fate == "freeze":
                nbl = Inn(2) if c0.bl.ph == 1 else Inn(1)
            elif not _bl_dies_staying(c0, a1) and c0.bl.ph == 0:
                nbl = Inn(1)
    if (b1 is not None and b1.bl is not None and b1.bl.ph == 1
            and not (b1.fl is not None and b1.fl.frozen)):
        fl_fate = _fl_fate(b1, c0, a1) if b1.fl is not None else None
        parking = ((c0 is not None and c0.fl is not None and c0.fl.frozen)
                   or fl_fate == "jump")
        if parking:
            dies = _unparked_br(b1) or _unparked_br(c0)
        else:
            dies = _bl_dies_moving(b1, c0, a1)
        if fl_fate != "freeze" and not dies:
            if not (c0 is not None and c0.g in (WALL, WEAK, SEED)):
                nbl = Inn(0)

    # seed launches override whatever drifted in; seeds only fire toward
    # non-seed neighbors, so being a non-seed next to one is the condition
    if c0 is None or c0.g != SEED:
        if _seed(a1):
            nfr, nbr = Out(False, ctx.next_th(0)), Inn(0)
            arrive_l, th_l = True, 0
        if _seed(b1):
            nfl, nbl = Out(False, ctx.next_th(0)), Inn(0)
            arrive_r, th_r = True, 0

    if c0 is not None and c0.g in (WALL, WEAK, SEED):
        # walls absorb trailing edges and kill fronts; seeds refuse arrivals
        nfr = nbr = nfl = nbl = None
        arrive_l = arrive_r = False

    has_obj = (nfr is not None or nbr is not None
               or nfl is not None or nbl is not None)

    # ---- flood ----------------------------------------------------------
    qn_near = s_m1[0] == Q or s_p1[0] == Q
    if s_c[0] == Q:
        if not has_obj:
            return QN_STATE
    elif qn_near and not has_obj and not (c0 is not None and c0.g == SEED):
        return QN_STATE

    # ---- payload layer ---------------------------------------------------
    d1 = ctx.d1
    x0 = ctx.x0

    def inval(s, fallback):
        v = _pi2(s)
        return v if v is not None else fallback

    # a sweeping front treats what lies ahead as virgin junk and substitutes
    # the uniform image for it, except where the neighbor demonstrably holds
    # swept data already: the opposing front's cell, a wall, or a seed
    real_l = (a1 is not None
              and (a1.fr is not None or a1.g in (WALL, WEAK, SEED)))
    real_r = (b1 is not None
              and (b1.fl is not None or b1.g in (WALL, WEAK, SEED)))

    if arrive_l and arrive_r:
        sig = d1((inval(s_m1, x0), ctx.orb(th_l), inval(s_p1, x0)))
    elif arrive_l:
        v = ctx.orb(th_l)
        sig = d1((inval(s_m1, x0), v, inval(s_p1, x0) if real_r else v))
    elif arrive_r:
        v = ctx.orb(th_r)
        sig = d1((inval(s_m1, x0) if real_l else v, v, inval(s_p1, x0)))
    else:
        lv, rv = inval(s_m1, x0), inval(s_p1, x0)
        cv = inval(s_c, x0)
        if c0 is not None:
            if c0.fr is not None and not c0.fr.frozen and not real_r:
                rv = ctx.orb(c0.fr.th)
            if c0.fl is not None and not c0.fl.frozen and not real_l:
                lv = ctx.orb(c0.fl.th)
            if c0.g == SEED:
                if not _seed(a1):
                    lv = x0
                if not _seed(b1):
                    rv = x0
        sig = d1((lv, cv, rv))

    # ---- ground and payload record --------------------------------------
    if s_c[0] == Q:
        # swept flood cell restarts as untouched ground under the new front
        return (P, L0(BLANK, None, nfr, nbr, nfl, nbl, False), sig)

    if s_c[0] == B:
        if has_obj:
            return (P, L0(BLANK, None, nfr, nbr, nfl, nbl, False), sig)
        return (B, sig)

    g = c0.g
    if arrive_l or arrive_r:
        return (P, L0(BLANK, None, nfr, nbr, nfl, nbl, False), sig)

    if g == SEED:
        flanked = _seed(a1) and _seed(b1)
        if flanked:
            if ctx.payload_on:
                spawn = not _seed(a2)
                pay = Pay(ctx.blank_sym, ctx.q0_i if spawn else -1,
                          0 if spawn else -1, False, 0)
            else:
                pay = None
            return (P, L0(READY, pay, None, None, None, None, False), sig)
        weak = (_seed(a1) and not _seed(a2)) or (_seed(b1) and not _seed(b2))
        return (P, L0(WEAK if weak else WALL, None, None, None, None, None, False), sig)

    if g in (WALL, WEAK):
        lh = (a1 is not None and a1.pay is not None and a1.pay.carry)
        rh = (b1 is not None and b1.ab)
        if g == WALL:
            if lh and rh:
                return (B, sig)
            if lh or rh:
                return (P, L0(WEAK, None, None, None, None, None, False), sig)
            return (P, L0(WALL, None, None, None, None, None, False), sig)
        if lh or rh:
            return (B, sig)
        return (P, L0(WEAK, None, None, None, None, None, False), sig)

    if g == BLANK:
        if (c0.br is not None or c0.bl is not None) and not has_obj:
            # the last trailing edge has left: the cell enters service
            if ctx.payload_on:
                spawn = _wallish(a1)
                pay = Pay(ctx.blank_sym, ctx.q0_i if spawn else -1,
                          0 if spawn else -1, False, 0)
            else:
                pay = None
            return (P, L0(READY, pay, None, None, None, None, False), sig)
        return (P, L0(BLANK, None, nfr, nbr, nfl, nbl, False), sig)

    # g == READY
    if c0.ab:
        if has_obj:
            return (P, L0(READY, None, nfr, nbr, nfl, nbl, False), sig)
        return (B, sig)

    flag_in = (b1 is not None and b1.ab and not has_obj)
    if flag_in:
        return (P, L0(READY, None, nfr, nbr, nfl, nbl, True), sig)

    if not ctx.payload_on or c0.pay is None:
        return (P, L0(READY, None, nfr, nbr, nfl, nbl, False), sig)

    pay = c0.pay
    sym, head = pay.sym, pay.head
    nab = False
    halt = False
    hit_token = False

    if head == ctx.qf_i:
        halt = True                          # junk can park a head on the
                                             # final state; no transition exists
    elif head >= 0:
        q2, s2, mv = ctx.tm.delta(ctx.states[head], sym)
        q2i = ctx.state_i[q2]
        if q2i == ctx.qf_i:
            halt = True
        elif mv == "S":
            sym, head = s2, q2i
        elif mv == "L":
            if _wallish(a1):
                sym, head = s2, q2i          # clamped at the carrier edge
            elif _free_for_head(a1):
                sym, head = s2, -1
            # else the whole transition waits
        else:  # R
            if _wallish(b1):
                head = -1                    # out of room: drop, hit the wall
                nab = True
                hit_token = True
            elif _free_for_head(b1):
                sym, head = s2, -1
            # else wait

    # a head stepping in from a neighbor; left donor has priority
    if head < 0 and not halt and _free_for_head(c0):
        if (a1 is not None and a1.pay is not None
                and a1.pay.head >= 0 and a1.pay.head != ctx.qf_i):
            aq2, _, amv = ctx.tm.delta(ctx.states[a1.pay.head], a1.pay.sym)
            if amv == "R" and ctx.state_i[aq2] != ctx.qf_i:
                head = ctx.state_i[aq2]
        if (head < 0 and b1 is not None and b1.pay is not None
                and b1.pay.head >= 0 and b1.pay.head != ctx.qf_i):
            bq2, _, bmv = ctx.tm.delta(ctx.states[b1.pay.head], b1.pay.sym)
            if bmv == "L" and not _wallish(c0) and ctx.state_i[bq2] != ctx.qf_i:
                head = ctx.state_i[bq2]

    # budget digit
    bit, carry = pay.bit, False
    incoming = (a1 is not None and a1.g == READY and a1.pay is not None
                and a1.pay.carry)
    pulse = _wallish(a1) and pay.clock == 1
    if incoming or pulse:
        if bit == 1:
            bit, carry = 0, True
            if _wallish(b1):
                nab = True                   # budget ran off the carrier edge
        else:
            bit = 1
    clock = 1 - pay.clock

    if halt:
        if has_obj:
            head = -1
        else:
            return QN_STATE

    npay = Pay(sym, head, bit, carry or hit_token, clock)
    return (P, L0(READY, npay, nfr, nbr, nfl, nbl, nab), sig)


def _free_for_head(l0: Optional[L0]) -> bool:
    """A head may step onto this cell: in service and no machinery on it."""
    return (l0 is not None and l0.g == READY and l0.pay is not None
            and l0.pay.head < 0 and not l0.ab
            and l0.fr is None and l0.br is None
            and l0.fl is None and l0.bl is None)


class StateInterner:
    """Dense integer ids for cell states, stable in first-seen order."""

    def __init__(self):
        self._by_state = {}
        self._states = []

    def intern(self, s) -> int:
        i = self._by_state.get(s)
        if i is None:
            i = len(self._states)
            self._by_state[s] = i
            self._states.append(s)
        return i

    def state_of(self, i: int):
        return self._states[i]

    def id_of(self, s) -> int:
        return self._by_state[s]

    def __len__(self):
        return len(self._states)

    def __contains__(self, s):
        return s in self._by_state


def state_name(s, sigma_name: Callable, qn_name: str) -> str:
    if s[0] == Q:
        return qn_name
    if s[0] == B:
        return sigma_name(s[1])
    l0, x = s[1], s[2]
    ln = l0_name(l0)
    xn = sigma_name(x)
    return ln if xn == "" else ln + "|" + xn


@dataclass
class CounterCA:
    """A built automaton plus the plumbing to plant and read configurations."""

    rule: LocalRule
    interner: StateInterner
    ctx: CoreCtx
    params: ConstructionParams

    def encode(self, s) -> int:
        return self.interner.intern(s)

    def decode(self, i: int):
        return self.interner.state_of(i)

    def l0_of(self, i: int) -> Optional[L0]:
        return _get_l0(self.interner.state_of(i))

    def config_from_l0(self, cells, mode="cyclic") -> Configuration:
        x = self.ctx.x0
        ids = tuple(self.encode((P, l0, x)) for l0 in cells)
        if mode == "cyclic":
            return Configuration(ids, "cyclic")
        bg = self.encode((P, BLANK_L0, x))
        return Configuration(ids, "windowed", bg, bg)

    def seed_config(self, length: int, seed_positions, mode="cyclic") -> Configuration:
        pos = set(p % length for p in seed_positions)
        cells = [SEED_L0 if i in pos else BLANK_L0 for i in range(length)]
        return self.config_from_l0(cells, mode)


def _enumerate_standalone_l0() -> list:
    outs = [None, Out(False, 0), Out(True, 0)]
    inns = [None, Inn(0), Inn(1), Inn(2)]
    states = []
    for g in GROUNDS:
        for fr in outs:
            for br in inns:
                for fl in outs:
                    for bl in inns:
                        if g in (SEED, WALL, WEAK) and (fr or br or fl or bl):
                            continue
                        states.append(L0(g, None, fr, br, fl, bl, False))
    return states


_BUILD_CACHE = {}


def build_counter_ca(params: ConstructionParams = ConstructionParams()) -> CounterCA:
    """The standalone width-race automaton: no payload, single protected state."""
    hit = _BUILD_CACHE.get(params)
    if hit is not None:
        return hit
    x0 = "."
    ctx = CoreCtx(payload_on=False, tm=None, d1=lambda w: x0,
                  orbit_seq=(x0,), orbit_p=0, x0=x0)
    interner = StateInterner()
    for l0 in _enumerate_standalone_l0():
        interner.intern((P, l0, x0))

    def namer(i):
        return state_name(interner.state_of(i), lambda x: "", "Qn")

    alphabet = Alphabet(tuple(range(len(interner))),
                        names=tuple(namer(i) for i in range(len(interner))))

    def fn(win):
        states = tuple(interner.state_of(i) for i in win)
        out = core_step(states, ctx)
        if out not in interner:
            raise ValueError("standalone transition left its state table: "
                             + repr(out))
        return interner.id_of(out)

    rule = LocalRule(alphabet, params.radius, fn, name="counters")
    cca = CounterCA(rule, interner, ctx, params)
    _BUILD_CACHE[params] = cca
    return cca


def compare_outcome(age_left: int, age_right: int) -> str:
    """Who survives when two pairs of these apparent ages meet: younger wins."""
    if age_left < 0 or age_right < 0:
        raise ValueError("ages must be nonnegative")
    if age_left < age_right:
        return "LeftSurvives"
    if age_right < age_left:
        return "RightSurvives"
    return "BothDie"


def simulate_comparison(age_left: int, age_right: int, dist: int,
                        params: ConstructionParams = ConstructionParams(),
                        max_steps: int = 0) -> str:
    """Plant two opposing pairs dist cells apart and report the survivor.

    dist is the cell distance between the two outer fronts (at least 0).
    """
    if dist < 0:
        raise ValueError("dist must be nonnegative")
    cca = build_counter_ca(params)
    wl = counter_width(age_left)
    wr = counter_width(age_right)
    margin = 8
    length = dist + wl + wr + 2 * margin
    fr_pos = wl + margin
    fl_pos = fr_pos + dist

    cells = [BLANK_L0 for _ in range(length)]

    def put(i, **kw):
        cells[i] = cells[i]._replace(**kw)

    put(fr_pos, fr=Out(False, 0))
    put(fr_pos - wl, br=Inn(1 - age_left % 2))
    put(fl_pos, fl=Out(False, 0))
    put(fl_pos + wr, bl=Inn(1 - age_right % 2))

    c = cca.config_from_l0(cells)
    if max_steps <= 0:
        max_steps = 2 * dist + 4 * max(age_left, age_right, 4) + 32
    seen_frozen = False
    for _ in range(max_steps):
        c = step(cca.rule, c)
        frs = fls = frozen = 0
        for i in c.cells:
            l0 = cca.l0_of(i)
            if l0 is None:
                continue
            if l0.fr is not None:
                frs += 1
                frozen += l0.fr.frozen
            if l0.fl is not None:
                fls += 1
                frozen += l0.fl.frozen
        if frozen:
            seen_frozen = True
        if seen_frozen and not frozen:
            if frs and not fls:
                return "LeftSurvives"
            if fls and not frs:
                return "RightSurvives"
            if not frs and not fls:
                return "BothDie"
            return "Unresolved"
        if not seen_frozen and frs == 0 and fls == 0:
            return "BothDie"
    raise RuntimeError("comparison did not resolve within %d steps" % max_steps)


@dataclass(frozen=True)
class Segment:
    """A wall-to-wall arc, in absolute coordinates with right > left."""
    left: int
    right: int

    @property
    def interior(self) -> int:
        return self.right - self.left - 1


def find_segments(cca: CounterCA, diagram: SpaceTimeDiagram, t: int) -> list:
    """Wall-bounded arcs at time t whose walls descend from time-0 seeds."""
    rows = diagram.rows
    if not 0 <= t < len(rows):
        raise ValueError("time index out of range")
    row0, row = rows[0], rows[t]
    n = len(row.cells)

    def ground(c, i):
        l0 = cca.l0_of(c.cells[i])
        return None if l0 is None else l0.g

    walls = [i for i in range(n)
             if ground(row, i) == WALL and ground(row0, i) == SEED]
    if not walls:
        return []
    segs = []
    if row.mode == "cyclic":
        for a, b in zip(walls, walls[1:]):
            segs.append(Segment(a, b))
        segs.append(Segment(walls[-1], walls[0] + n))
    else:
        for a, b in zip(walls, walls[1:]):
            segs.append(Segment(a, b))
    return segs


@dataclass(frozen=True)
class CrosscountReport:
    ok: bool
    horizon: int
    max_bound: int
    violation: Optional[tuple]    # (t, i, state name) or None


def verify_crosscount(c, params: ConstructionParams = ConstructionParams(),
                      horizon: int = 0) -> CrosscountReport:
    """Check that machinery at cell i is gone after twice its seed distance.

    c may be a Configuration over a CounterCA's ids or a sequence of L0
    records.  Raises if the configuration has no seeds at all, or if the
    horizon does not cover the largest bound implied by the seed spacing.
    """
    cca = build_counter_ca(params)
    if isinstance(c, Configuration):
        cells = [cca.l0_of(i) for i in c.cells]
        if any(x is None for x in cells):
            raise ValueError("configuration contains non layer-0 states")
        mode = c.mode
    else:
        cells = list(c)
        mode = "cyclic"
    n = len(cells)
    seeds = [i for i in range(n) if cells[i].g == SEED]
    if not seeds:
        raise ValueError("no seeds: every cell's bound is infinite")

    if mode == "cyclic":
        def dist(i):
            return min(min(abs(i - s), n - abs(i - s)) for s in seeds)
    else:
        def dist(i):
            return min(abs(i - s) for s in seeds)

    si = params.slowness_inner
    bounds = [si * dist(i) for i in range(n)]
    max_bound = max(bounds)
    if horizon <= 0:
        horizon = max_bound + 8
    if horizon < max_bound:
        raise ValueError("horizon %d below the largest implied bound %d"
                         % (horizon, max_bound))

    cfg = cca.config_from_l0(cells, mode)
    has_machinery = {}
    for idx in range(len(cca.interner)):
        l0 = cca.l0_of(idx)
        has_machinery[idx] = (l0 is not None and
                              (l0.fr is not None or l0.br is not None or
                               l0.fl is not None or l0.bl is not None))

    cur = cfg
    for t in range(1, horizon + 1):
        cur = step(cca.rule, cur)
        for i, v in enumerate(cur.cells):
            if has_machinery.get(v, False) and t > bounds[i]:
                name = cca.rule.alphabet.name_of(v)
                return CrosscountReport(False, horizon, max_bound, (t, i, name))
    return CrosscountReport(True, horizon, max_bound, None)
