"""Command-line front end.

Exit codes: 0 for success or a verified property, 1 for a property
violation found by a verify run, 2 for usage problems (bad flags, bad
files, bad state names).  Every command that draws random samples
requires an explicit --seed so results can be reproduced.
"""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .compiler import compile_machine, verify_abort, verify_proj
from .counters import BLANK_L0, SEED_L0, WALL_L0, P, build_counter_ca, \
    find_segments, verify_crosscount
from .engine import Configuration, EngineError, Word, cyclic, run, windowed
from .fileio import ParseError, parse_compiled, parse_rule, parse_tm, \
    payload_by_name, serialize_compiled, serialize_trace
from .probe import ProbeConfig, ProbeError, dichotomy_experiment, \
    late_word_census, probe_enables, render_census
from .render import RenderSpec, RenderError, layered_glyph, layered_rgb, render
from .turing import BUILTIN_MACHINES, MachineError, TuringMachine

_CLASSIC = ("min", "gliders")
_COLOR_CYCLE = ((255, 255, 255), (30, 30, 30), (220, 60, 50), (60, 120, 230),
                (70, 190, 100), (240, 200, 70), (160, 90, 200), (240, 140, 50))


class _Handle:
    """A resolved --rule argument: the rule plus its input conventions."""

    def __init__(self, kind, rule, alphabet, cca=None):
        self.kind = kind          # classic | counters | compiled
        self.rule = rule
        self.alphabet = alphabet
        self.cca = cca

    def parse_init(self, text: str, mode: str, bg: str) -> Configuration:
        toks = text.split() if any(ch.isspace() for ch in text) else list(text)
        if self.kind == "classic":
            cells = tuple(self.alphabet.value_of_name(t) for t in toks)
            if mode == "cyclic":
                return cyclic(cells)
            if bg is None:
                raise ParseError("windowed runs of this rule need --bg")
            return windowed(cells, self.alphabet.value_of_name(bg))
        if self.kind == "counters":
            l0s = []
            for t in toks:
                try:
                    l0s.append({"*": SEED_L0, "_": BLANK_L0,
                                "W": WALL_L0}[t])
                except KeyError:
                    raise ParseError(f"bad cell {t!r}: use * (seed), "
                                     "_ (blank), W (wall)")
            return self.cca.config_from_l0(l0s, mode)
        cells = []
        for t in toks:
            if t == "*":
                cells.append((P, SEED_L0, self.cca.x0))
            else:
                x = self.cca.payload.alphabet.value_of_name(t)
                cells.append((P, BLANK_L0, x))
        return self.cca.config_from(cells, mode)

    def ascii_palette(self):
        if self.kind == "classic":
            return lambda name: name if len(name) == 1 else None
        return layered_glyph

    def ppm_palette(self):
        if self.kind == "classic":
            alpha = self.alphabet

            def color(name):
                i = alpha.id_of(alpha.value_of_name(name))
                return _COLOR_CYCLE[i % len(_COLOR_CYCLE)]
            return color
        return layered_rgb


def resolve_rule(token: str) -> _Handle:
    if token in _CLASSIC or token.startswith("uniform:"):
        r = payload_by_name(token)
        return _Handle("classic", r, r.alphabet)
    if token == "counters":
        cca = build_counter_ca()
        return _Handle("counters", cca.rule, cca.rule.alphabet, cca)
    path = Path(token)
    if not path.is_file():
        raise ParseError(f"{token!r} is not a built-in rule or a file")
    text = path.read_text()
    if text.lstrip().startswith("compiled-ca"):
        cca = parse_compiled(text, str(path))
        return _Handle("compiled", cca.rule, cca.rule.alphabet, cca)
    r = parse_rule(text, str(path))
    return _Handle("classic", r, r.alphabet)


def resolve_machine(token: str) -> TuringMachine:
    mk = BUILTIN_MACHINES.get(token)
    if mk is not None:
        return mk()
    path = Path(token)
    if not path.is_file():
        raise ParseError(f"{token!r} is not a built-in machine or a file")
    return parse_tm(path.read_text(), str(path))


def resolve_payload(token: str):
    """(rule, recorded name) for --payload."""
    try:
        return payload_by_name(token), token
    except KeyError:
        pass
    path = Path(token)
    if not path.is_file():
        raise ParseError(f"{token!r} is not a built-in payload or a file")
    return parse_rule(path.read_text(), str(path)), "custom"


def _parse_contexts(text: str) -> tuple:
    out = []
    for part in text.split(";"):
        bits = part.split(",")
        if len(bits) != 2:
            raise ParseError(f"bad context spec {part!r}: want lu,lw")
        out.append((int(bits[0]), int(bits[1])))
    return tuple(out)


def _word_values(handle: _Handle, text: str) -> tuple:
    toks = text.split() if any(ch.isspace() for ch in text) else list(text)
    return tuple(handle.alphabet.value_of_name(t) for t in toks)


def _emit(data: bytes, out: str):
    if out is None or out == "-":
        # only text reaches stdout; binary formats demand a file
        sys.stdout.write(data.decode("ascii"))
    else:
        Path(out).write_bytes(data)


# ---------------------------------------------------------------------------
# subcommands

def cmd_run(args) -> int:
    h = resolve_rule(args.rule)
    c = h.parse_init(args.init, args.mode, args.bg)
    d = run(h.rule, c, args.steps)
    if args.trace:
        sys.stdout.write(serialize_trace(d, h.alphabet))
    else:
        last = d.rows[-1]
        names = [h.alphabet.name_of(v) for v in last.cells]
        sys.stdout.write(" ".join(names) + "\n")
    return 0


def cmd_render(args) -> int:
    h = resolve_rule(args.rule)
    c = h.parse_init(args.init, args.mode, args.bg)
    d = run(h.rule, c, args.steps)
    if args.palette:
        table = {}
        for part in args.palette.split(";"):
            name, _, val = part.partition("=")
            if args.format == "ppm":
                table[name] = tuple(int(x) for x in val.split(","))
            else:
                table[name] = val
        palette = table
    else:
        palette = h.ascii_palette() if args.format == "ascii" \
            else h.ppm_palette()
    spec = RenderSpec(args.format, palette, args.scale)
    data = render(d, spec, h.alphabet)
    if args.format == "ppm" and (args.out is None or args.out == "-"):
        raise ParseError("ppm output needs -o FILE")
    _emit(data, args.out)
    return 0


def cmd_compile(args) -> int:
    machine = resolve_machine(args.tm)
    payload, pname = resolve_payload(args.payload)
    try:
        x0 = payload.alphabet.value_of_name(args.x0)
    except EngineError:
        raise ParseError(f"--x0 {args.x0!r} is not a payload state")
    try:
        cca = compile_machine(machine, payload, args.qn, x0,
                              payload_name=pname)
    except ValueError as e:
        raise ParseError(str(e))
    _emit(serialize_compiled(cca).encode(), args.out)
    return 0


def cmd_probe_enables(args) -> int:
    h = resolve_rule(args.rule)
    v = Word(_word_values(h, args.word), args.anchor)
    s = _word_values(h, args.target)
    cfg = ProbeConfig(horizon=args.horizon,
                      context_lengths=_parse_contexts(args.contexts),
                      samples=args.samples, seed=args.seed)
    verdict = probe_enables(h.rule, v, s, cfg)
    print(verdict.status)
    for u, w, t in verdict.witnesses:
        un = " ".join(h.alphabet.name_of(x) for x in u) or "(empty)"
        wn = " ".join(h.alphabet.name_of(x) for x in w) or "(empty)"
        when = f"t={t}" if t >= 0 else "no time found"
        print(f"  context {un} | {wn}: {when}")
    return 0


def cmd_probe_census(args) -> int:
    h = resolve_rule(args.rule)
    cfg = ProbeConfig(horizon=args.horizon, samples=args.samples,
                      window=args.window, seed=args.seed)
    table = late_word_census(h.rule, cfg, args.word_len)
    print(render_census(table))
    return 0


def cmd_probe_dichotomy(args) -> int:
    machine = resolve_machine(args.tm)
    payload, _ = resolve_payload(args.payload)
    cfg = ProbeConfig(horizon=args.horizon, samples=args.samples,
                      window=args.window, seed=args.seed)
    rep = dichotomy_experiment(machine, payload, cfg, word_len=args.word_len,
                               length=args.length, gap_cap=args.gap_cap)
    print(rep.verdict)
    print("compiled:")
    print("  " + render_census(rep.compiled_table).replace("\n", "\n  "))
    print("payload:")
    print("  " + render_census(rep.payload_table).replace("\n", "\n  "))
    return 0


def cmd_verify_crosscount(args) -> int:
    from .probe import sample_standalone_config
    rng = random.Random(args.seed)
    for k in range(args.count):
        c = sample_standalone_config(rng, args.length, args.density)
        rep = verify_crosscount(c, horizon=args.horizon)
        if not rep.ok:
            t, i, name = rep.violation
            print(f"violation in sample {k}: cell {i} still busy at t={t} "
                  f"({name})")
            return 1
    print(f"crosscount ok: {args.count} configurations of length "
          f"{args.length}, horizon {args.horizon}")
    return 0


def cmd_verify_proj(args) -> int:
    from .probe import sample_compiled_config
    machine = resolve_machine(args.tm)
    payload, pname = resolve_payload(args.payload)
    x0 = payload.alphabet.values[0] if args.x0 is None else \
        payload.alphabet.value_of_name(args.x0)
    try:
        cca = compile_machine(machine, payload, args.qn, x0,
                              payload_name=pname)
    except ValueError as e:
        raise ParseError(str(e))
    rng = random.Random(args.seed)
    checked = 0
    for k in range(args.count):
        c = sample_compiled_config(cca, rng, args.length, args.gap_cap)
        rep = verify_proj(cca, c, args.horizon)
        if not rep.ok:
            t, i, got, want = rep.violation
            print(f"violation in sample {k}: cell {i} at t={t} shows "
                  f"{got!r}, payload run shows {want!r}")
            return 1
        checked += rep.checked
    print(f"projection ok: {args.count} runs, horizon {args.horizon}, "
          f"{checked} protected cell-states checked")
    return 0


def cmd_verify_abort(args) -> int:
    machine = resolve_machine(args.tm)
    payload, pname = resolve_payload(args.payload)
    x0 = payload.alphabet.values[0] if args.x0 is None else \
        payload.alphabet.value_of_name(args.x0)
    try:
        cca = compile_machine(machine, payload, args.qn, x0,
                              payload_name=pname)
    except ValueError as e:
        raise ParseError(str(e))
    rep = verify_abort(cca, args.n_max, args.n_min)
    print(f"{'n':>4} {'settle':>8} {'limit':>8}")
    for n, settle, limit in rep.rows:
        print(f"{n:>4} {settle:>8} {limit:>8}")
    if not rep.ok:
        print(f"FAILED: {rep.failure}")
        return 1
    print("abort ok: every carrier goes quiet strictly inside its limit")
    return 0


def cmd_verify_segments(args) -> int:
    cca = build_counter_ca()
    h = _Handle("counters", cca.rule, cca.rule.alphabet, cca)
    c = h.parse_init(args.init, "cyclic", None)
    horizon = args.horizon if args.horizon else 2 * len(c.cells) + 4
    d = run(cca.rule, c, horizon)

    def moving(row):
        for v in row.cells:
            l0 = cca.l0_of(v)
            if l0 is not None and (l0.fr or l0.br or l0.fl or l0.bl):
                return True
        return False

    busy = None
    for t in range(horizon, -1, -1):
        if moving(d.rows[t]):
            busy = t
            break
    if busy is not None and busy >= horizon:
        print(f"machinery still moving at t={horizon}")
        return 1
    settle = 0 if busy is None else busy + 1
    print(f"quiet from t={settle} (horizon {horizon})")
    segs = find_segments(cca, d, horizon)
    if not segs:
        print("no wall-to-wall segments (no surviving walls)")
        return 0
    for s in segs:
        print(f"  segment [{s.left}, {s.right}] interior {s.interior}")
    return 0


def cmd_examples(args) -> int:
    print("rules:")
    print("  min            two states; a cell drops to the minimum of its "
          "neighborhood")
    print("  gliders        left and right movers over a quiet background; "
          "head-on pairs vanish")
    print("  uniform:STATE  every cell becomes STATE")
    print("  counters       the width-race automaton: seeds grow walls, "
          "younger pairs win")
    print("machines:")
    for name, mk in sorted(BUILTIN_MACHINES.items()):
        doc = (mk.__doc__ or "").strip().splitlines()
        first = doc[0] if doc else ""
        print(f"  {name:<12} {first}")
    return 0


# ---------------------------------------------------------------------------

def _add_rule_init(p, steps_required=True):
    p.add_argument("--rule", required=True,
                   help="built-in name, rule file, or compiled manifest")
    p.add_argument("--init", required=True,
                   help="cell string ('101', '*__*') or space-separated names")
    p.add_argument("--mode", choices=("cyclic", "windowed"), default="cyclic")
    p.add_argument("--bg", default=None,
                   help="background state for windowed runs of table rules")
    p.add_argument("--steps", type=int, required=steps_required)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="limitca",
        description="Cellular automata with programmable late-time behavior.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a rule and print the trace or the "
                       "final row")
    _add_rule_init(p)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("render", help="draw a run as text or a PPM image")
    _add_rule_init(p)
    p.add_argument("--format", choices=("ascii", "ppm"), default="ascii")
    p.add_argument("--scale", type=int, default=1)
    p.add_argument("--palette", default=None,
                   help="overrides, e.g. '0=.;1=#' or '0=255,255,255;1=0,0,0'")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("compile", help="build the machine-hosting rule and "
                       "write its manifest")
    p.add_argument("--tm", required=True)
    p.add_argument("--payload", required=True)
    p.add_argument("--qn", required=True)
    p.add_argument("--x0", required=True)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("probe", help="sampled evidence about late-time "
                       "behavior")
    psub = p.add_subparsers(dest="probe_command", required=True)

    q = psub.add_parser("enables", help="does this word keep enabling the "
                        "target arbitrarily late?")
    q.add_argument("--rule", required=True)
    q.add_argument("--word", required=True)
    q.add_argument("--anchor", type=int, default=0)
    q.add_argument("--target", required=True)
    q.add_argument("--horizon", type=int, default=64)
    q.add_argument("--samples", type=int, default=64)
    q.add_argument("--contexts", default="1,1")
    q.add_argument("--seed", type=int, required=True)
    q.set_defaults(func=cmd_probe_enables)

    q = psub.add_parser("census", help="words seen in a window at late times")
    q.add_argument("--rule", required=True)
    q.add_argument("--word-len", type=int, default=2)
    q.add_argument("--horizon", type=int, default=64)
    q.add_argument("--window", type=int, default=32)
    q.add_argument("--samples", type=int, default=64)
    q.add_argument("--seed", type=int, required=True)
    q.set_defaults(func=cmd_probe_census)

    q = psub.add_parser("dichotomy", help="compare a compiled rule's late "
                        "words against its bare payload")
    q.add_argument("--tm", required=True)
    q.add_argument("--payload", required=True)
    q.add_argument("--word-len", type=int, default=2)
    q.add_argument("--length", type=int, default=128)
    q.add_argument("--gap-cap", type=int, default=8)
    q.add_argument("--horizon", type=int, default=1100)
    q.add_argument("--window", type=int, default=32)
    q.add_argument("--samples", type=int, default=20)
    q.add_argument("--seed", type=int, required=True)
    q.set_defaults(func=cmd_probe_dichotomy)

    p = sub.add_parser("verify", help="check construction properties; exit 1 "
                       "on violation")
    vsub = p.add_subparsers(dest="verify_command", required=True)

    q = vsub.add_parser("crosscount", help="machinery never outlives twice "
                        "its seed distance")
    q.add_argument("--count", type=int, default=20)
    q.add_argument("--length", type=int, default=128)
    q.add_argument("--density", type=float, default=1 / 16)
    q.add_argument("--horizon", type=int, default=512)
    q.add_argument("--seed", type=int, required=True)
    q.set_defaults(func=cmd_verify_crosscount)

    q = vsub.add_parser("proj", help="protected cells track the bare payload "
                        "exactly")
    q.add_argument("--tm", required=True)
    q.add_argument("--payload", required=True)
    q.add_argument("--qn", default="qn")
    q.add_argument("--x0", default=None)
    q.add_argument("--count", type=int, default=10)
    q.add_argument("--length", type=int, default=128)
    q.add_argument("--gap-cap", type=int, default=8)
    q.add_argument("--horizon", type=int, default=512)
    q.add_argument("--seed", type=int, required=True)
    q.set_defaults(func=cmd_verify_proj)

    q = vsub.add_parser("abort", help="carriers of every width go quiet "
                        "inside the time limit")
    q.add_argument("--tm", required=True)
    q.add_argument("--payload", required=True)
    q.add_argument("--qn", default="qn")
    q.add_argument("--x0", default=None)
    q.add_argument("--n-max", type=int, default=10)
    q.add_argument("--n-min", type=int, default=3)
    q.set_defaults(func=cmd_verify_abort)

    q = vsub.add_parser("segments", help="a seeded start goes quiet and "
                        "leaves wall-to-wall segments")
    q.add_argument("--init", required=True)
    q.add_argument("--horizon", type=int, default=0)
    q.set_defaults(func=cmd_verify_segments)

    p = sub.add_parser("examples", help="list built-in rules and machines")
    p.add_argument("what", choices=("list",))
    p.set_defaults(func=cmd_examples)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        return args.func(args)
    except (ParseError, ProbeError, RenderError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (EngineError, MachineError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
