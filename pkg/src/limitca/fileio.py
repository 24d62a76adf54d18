"""Text formats: rule tables, machine tables, traces, compiled manifests.

Parsers report positions as source:line:col and distinguish syntax from
semantic problems (conflicting or missing entries).  Serialization is
canonical, so parse(serialize(parse(text))) equals parse(text) and the
only information lost from the original text is its whitespace.
"""
from __future__ import annotations

import itertools
import re

from .classics import gliders_rule, min_rule, uniform_rule
from .compiler import CompiledCA, compile_machine, uniform_orbit
from .counters import ConstructionParams
from .engine import Alphabet, EngineError, LocalRule, SpaceTimeDiagram
from .render import _bounds
from .turing import MOVES, MachineError, TuringMachine


class ParseError(Exception):
    def __init__(self, message, source="<input>", line=None, col=None):
        self.source = source
        self.line = line
        self.col = col
        where = source
        if line is not None:
            where += f":{line}"
            if col is not None:
                where += f":{col}"
        super().__init__(f"{where}: {message}")


_TOKEN = re.compile(r"\S+")


def _lines(text):
    """(lineno, raw, [(token, col)]) for nonblank, noncomment lines."""
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
        if toks:
            yield n, raw, toks


def _take_headers(rows, keys, required, source):
    """Consume leading `key: values` lines; returns (headers, rest)."""
    out = {}
    rest = []
    for idx, (n, raw, toks) in enumerate(rows):
        word, col = toks[0]
        if word.endswith(":") and word[:-1] in keys:
            key = word[:-1]
            if key in out:
                raise ParseError(f"duplicate header {key!r}", source, n, col)
            out[key] = (n, [t for t in toks[1:]])
        else:
            rest = rows[idx:]
            break
    else:
        rest = []
    for key in required:
        if key not in out:
            raise ParseError(f"missing header {key!r}", source)
    return out, rest


def parse_rule(text: str, source: str = "<input>") -> LocalRule:
    """Read a radius-r lookup table; the table must cover every neighborhood."""
    rows = list(_lines(text))
    heads, rest = _take_headers(rows, ("name", "alphabet", "radius"),
                                ("alphabet", "radius"), source)
    n, toks = heads["alphabet"]
    names = [t for t, _ in toks]
    if not names:
        raise ParseError("empty alphabet", source, n)
    seen = set()
    for t, col in toks:
        if t in seen:
            raise ParseError(f"duplicate alphabet entry {t!r}", source, n, col)
        seen.add(t)
    n, toks = heads["radius"]
    if len(toks) != 1 or not toks[0][0].isdigit():
        raise ParseError("radius must be a single nonnegative integer",
                         source, n, toks[0][1] if toks else None)
    radius = int(toks[0][0])
    rule_name = " ".join(t for t, _ in heads["name"][1]) if "name" in heads else ""

    width = 2 * radius + 1
    table = {}
    for n, raw, toks in rest:
        if len(toks) != width + 2 or toks[width][0] != "->":
            raise ParseError(
                f"expected {width} states, '->', and a result state",
                source, n, toks[0][1])
        for t, col in toks[:width] + toks[-1:]:
            if t not in seen:
                raise ParseError(f"unknown state {t!r}", source, n, col)
        key = tuple(t for t, _ in toks[:width])
        if key in table:
            raise ParseError(
                f"conflicting entry for neighborhood {' '.join(key)}",
                source, n, toks[0][1])
        table[key] = toks[-1][0]

    total = len(names) ** width
    if len(table) != total:
        missing = next(w for w in itertools.product(names, repeat=width)
                       if w not in table)
        raise ParseError(
            f"non-total rule: {total - len(table)} neighborhoods missing, "
            f"first is {' '.join(missing)}", source)

    alpha = Alphabet(tuple(names))
    return LocalRule(alpha, radius, lambda w: table[w], name=rule_name)


def serialize_rule(rule: LocalRule) -> str:
    vals = tuple(rule.alphabet.values)
    width = 2 * rule.radius + 1
    if len(vals) ** width > 100_000:
        raise ParseError("rule table too large to write out; "
                         "use a compiled manifest instead")
    names = [rule.alphabet.name_of(v) for v in vals]
    lines = []
    if rule.name:
        lines.append(f"name: {rule.name}")
    lines.append("alphabet: " + " ".join(names))
    lines.append(f"radius: {rule.radius}")
    for win in itertools.product(vals, repeat=width):
        out = rule.step_window(win)
        lines.append(" ".join(rule.alphabet.name_of(v) for v in win)
                     + " -> " + rule.alphabet.name_of(out))
    return "\n".join(lines) + "\n"


def parse_tm(text: str, source: str = "<input>") -> TuringMachine:
    """Read a machine table: headers, then `q a -> q' b M` lines."""
    rows = list(_lines(text))
    heads, rest = _take_headers(
        rows, ("name", "states", "initial", "final", "blank", "tape"),
        ("states", "initial", "final", "blank"), source)

    def single(key):
        n, toks = heads[key]
        if len(toks) != 1:
            raise ParseError(f"header {key!r} takes exactly one value",
                             source, n)
        return toks[0][0]

    states = tuple(t for t, _ in heads["states"][1])
    initial, final, blank = single("initial"), single("final"), single("blank")
    declared = set(states)
    name = " ".join(t for t, _ in heads["name"][1]) if "name" in heads else ""

    tape = None
    if "tape" in heads:
        tape = tuple(t for t, _ in heads["tape"][1])

    transitions = {}
    symbols_seen = [blank]
    for n, raw, toks in rest:
        if len(toks) != 6 or toks[2][0] != "->":
            raise ParseError("expected `state symbol -> state symbol move`",
                             source, n, toks[0][1])
        (q, cq), (a, ca), _, (q2, cq2), (b, cb), (mv, cmv) = toks
        for s, col in ((q, cq), (q2, cq2)):
            if s not in declared:
                raise ParseError(f"unknown state {s!r}", source, n, col)
        if mv not in MOVES:
            raise ParseError(f"move must be one of {'/'.join(MOVES)}",
                             source, n, cmv)
        if tape is not None:
            for s, col in ((a, ca), (b, cb)):
                if s not in tape:
                    raise ParseError(f"unknown tape symbol {s!r}",
                                     source, n, col)
        if (q, a) in transitions:
            raise ParseError(f"conflicting transition for ({q}, {a})",
                             source, n, cq)
        transitions[(q, a)] = (q2, b, mv)
        for s in (a, b):
            if s not in symbols_seen:
                symbols_seen.append(s)

    if tape is None:
        tape = tuple(symbols_seen)
    try:
        return TuringMachine(states, initial, final, blank, tape,
                             transitions, name=name)
    except MachineError as e:
        msg = str(e)
        if msg.startswith("missing transition"):
            msg = "non-total machine: " + msg
        raise ParseError(msg, source)


def serialize_tm(m: TuringMachine) -> str:
    lines = []
    if m.name:
        lines.append(f"name: {m.name}")
    lines.append("states: " + " ".join(m.states))
    lines.append(f"initial: {m.initial}")
    lines.append(f"final: {m.final}")
    lines.append(f"blank: {m.blank}")
    lines.append("tape: " + " ".join(m.tape_alphabet))
    for q in m.states:
        for a in m.tape_alphabet:
            if (q, a) in m.transitions:
                q2, b, mv = m.transitions[(q, a)]
                lines.append(f"{q} {a} -> {q2} {b} {mv}")
    return "\n".join(lines) + "\n"


def serialize_trace(diagram: SpaceTimeDiagram, alphabet=None) -> str:
    """One line per time step, first line is t=0, state names separated
    by single spaces; windowed rows are padded out to a common span."""
    namer = alphabet.name_of if alphabet is not None \
        else (lambda v: v if isinstance(v, str) else str(v))
    lo, hi = _bounds(diagram.rows)
    lines = []
    for row in diagram.rows:
        lines.append(" ".join(namer(row.at(i)) for i in range(lo, hi)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# compiled manifests

_MAGIC = "compiled-ca v1"
_BUDGET_FORMULA = "2^n + 4n"


def payload_by_name(token: str) -> LocalRule:
    if token == "min":
        return min_rule()
    if token == "gliders":
        return gliders_rule()
    if token.startswith("uniform:"):
        return uniform_rule(token.split(":", 1)[1])
    raise KeyError(token)


def serialize_compiled(cca: CompiledCA) -> str:
    """A manifest from which compile_machine rebuilds the identical rule."""
    pal = cca.payload.alphabet
    p = cca.params
    lines = [
        _MAGIC,
        f"qn: {cca.qn}",
        f"x0: {pal.name_of(cca.x0)}",
        f"params: {p.slowness_outer} {p.slowness_inner} {p.radius}",
        f"budget: {_BUDGET_FORMULA}",
        "orbit: {} {} {}".format(
            cca.orbit.preperiod, cca.orbit.period,
            " ".join(pal.name_of(v) for v in cca.orbit.seq)),
        f"payload: {cca.payload_name}",
        "begin machine",
        serialize_tm(cca.machine).rstrip("\n"),
        "end machine",
    ]
    if cca.payload_name == "custom":
        lines += ["begin payload",
                  serialize_rule(cca.payload).rstrip("\n"),
                  "end payload"]
    return "\n".join(lines) + "\n"


def _block(raw_lines, start_mark, end_mark, source):
    """Text between marker lines, or (None, lines) when absent."""
    strip = [l.strip() for l in raw_lines]
    if start_mark not in strip:
        return None, raw_lines
    i = strip.index(start_mark)
    try:
        j = strip.index(end_mark, i)
    except ValueError:
        raise ParseError(f"unterminated {start_mark!r} block", source)
    rest = raw_lines[:i] + raw_lines[j + 1:]
    return "\n".join(raw_lines[i + 1:j]), rest


def parse_compiled(text: str, source: str = "<input>") -> CompiledCA:
    if not text.lstrip().startswith(_MAGIC.split()[0]):
        raise ParseError(f"not a compiled manifest (want leading {_MAGIC!r})",
                         source)
    raw = text.splitlines()
    machine_text, raw = _block(raw, "begin machine", "end machine", source)
    payload_text, raw = _block(raw, "begin payload", "end payload", source)
    if machine_text is None:
        raise ParseError("manifest has no machine block", source)

    rows = list(_lines("\n".join(raw)))
    if not rows or rows[0][2][0][0] != _MAGIC.split()[0]:
        raise ParseError(f"not a compiled manifest (want leading {_MAGIC!r})",
                         source)
    n, raw_line, toks = rows[0]
    if " ".join(t for t, _ in toks) != _MAGIC:
        raise ParseError(f"unsupported manifest version in {raw_line!r}",
                         source, n)
    heads, rest = _take_headers(
        rows[1:], ("qn", "x0", "params", "budget", "orbit", "payload"),
        ("qn", "x0", "params", "budget", "orbit", "payload"), source)
    if rest:
        n, raw_line, toks = rest[0]
        raise ParseError(f"unexpected line {raw_line.strip()!r}", source, n)

    def vals(key):
        return [t for t, _ in heads[key][1]]

    budget_text = " ".join(vals("budget"))
    if budget_text != _BUDGET_FORMULA:
        raise ParseError(f"unsupported budget formula {budget_text!r}",
                         source, heads["budget"][0])
    pnums = vals("params")
    if len(pnums) != 3 or not all(t.lstrip("-").isdigit() for t in pnums):
        raise ParseError("params wants three integers",
                         source, heads["params"][0])
    params = ConstructionParams(*(int(t) for t in pnums))

    ptok = " ".join(vals("payload"))
    if ptok == "custom":
        if payload_text is None:
            raise ParseError("custom payload without a payload block", source)
        payload = parse_rule(payload_text, source)
    else:
        if payload_text is not None:
            raise ParseError("payload block given for a named payload", source)
        try:
            payload = payload_by_name(ptok)
        except KeyError:
            raise ParseError(f"unknown payload {ptok!r}", source,
                             heads["payload"][0])

    machine = parse_tm(machine_text, source)
    x0_toks = vals("x0")
    if len(x0_toks) != 1:
        raise ParseError("x0 wants exactly one state name", source,
                         heads["x0"][0])
    try:
        x0 = payload.alphabet.value_of_name(x0_toks[0])
    except EngineError:
        raise ParseError(f"x0 {x0_toks[0]!r} is not a payload state", source,
                         heads["x0"][0])
    qn = " ".join(vals("qn"))

    try:
        cca = compile_machine(machine, payload, qn, x0, params,
                              payload_name=ptok)
    except ValueError as e:
        raise ParseError(str(e), source)

    ob = vals("orbit")
    want = [str(cca.orbit.preperiod), str(cca.orbit.period)] + \
        [payload.alphabet.name_of(v) for v in cca.orbit.seq]
    if ob != want:
        raise ParseError(
            "orbit line disagrees with the recomputed orbit "
            f"({' '.join(ob)} vs {' '.join(want)})", source, heads["orbit"][0])
    return cca
