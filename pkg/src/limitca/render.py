"""Space-time diagram rendering: plain text and binary PPM.

Both formats draw time upward: the most recent step is the first text
line, and the bottom pixel row of an image is the initial configuration.
Palettes are keyed by state name and may be callables for rule families
whose state sets are discovered at run time.
"""
from __future__ import annotations

from dataclasses import dataclass

from .engine import SpaceTimeDiagram


class RenderError(Exception):
    pass


ASCII = "ascii"
PPM = "ppm"


@dataclass(frozen=True)
class RenderSpec:
    format: str
    palette: object          # name -> glyph (ascii) or (r,g,b) (ppm); callable ok
    scale: int = 1

    def __post_init__(self):
        if self.format not in (ASCII, PPM):
            raise RenderError(f"unknown render format {self.format!r}")
        if self.scale < 1:
            raise RenderError("scale must be >= 1")


def _lookup(palette, name):
    if callable(palette):
        v = palette(name)
    else:
        try:
            v = palette.get(name)
        except AttributeError:
            raise RenderError("palette must be a mapping or a callable")
    if v is None:
        raise RenderError(f"no palette entry for state {name!r}")
    return v


def _bounds(rows):
    lo = hi = None
    for row in rows:
        a = 0 if row.mode == "cyclic" else row.offset
        b = a + len(row.cells)
        lo = a if lo is None else min(lo, a)
        hi = b if hi is None else max(hi, b)
    return lo, hi


def render(diagram: SpaceTimeDiagram, spec: RenderSpec, alphabet=None) -> bytes:
    """Byte-exact rendering of a diagram under the given palette."""
    rows = diagram.rows
    if not rows:
        raise RenderError("empty diagram")
    if alphabet is not None:
        namer = alphabet.name_of
    else:
        namer = lambda v: v if isinstance(v, str) else str(v)
    lo, hi = _bounds(rows)
    width = hi - lo

    glyph_cache: dict = {}

    def paint(v):
        g = glyph_cache.get(v)
        if g is None:
            g = _lookup(spec.palette, namer(v))
            glyph_cache[v] = g
        return g

    if spec.format == ASCII:
        lines = []
        for row in reversed(rows):
            chars = []
            for i in range(lo, hi):
                g = paint(row.at(i))
                if not isinstance(g, str) or len(g) != 1:
                    raise RenderError(
                        f"ascii glyphs must be single characters, got {g!r}")
                chars.append(g)
            lines.append("".join(chars))
        return ("\n".join(lines) + "\n").encode("ascii")

    s = spec.scale
    w, h = width * s, len(rows) * s
    out = bytearray(f"P6\n{w} {h}\n255\n".encode("ascii"))
    for row in reversed(rows):
        line = bytearray()
        for i in range(lo, hi):
            rgb = paint(row.at(i))
            try:
                r, g, b = rgb
            except (TypeError, ValueError):
                raise RenderError(f"ppm palette entries must be RGB triples, "
                                  f"got {rgb!r}")
            if not all(isinstance(x, int) and 0 <= x <= 255 for x in (r, g, b)):
                raise RenderError(f"RGB components must be ints in 0..255, "
                                  f"got {rgb!r}")
            line.extend(bytes((r, g, b)) * s)
        for _ in range(s):
            out.extend(line)
    return bytes(out)


# ---------------------------------------------------------------------------
# stock palettes for the layered automata, keyed by the structured names

def layered_glyph(name: str) -> str:
    """One terminal character per layered-automaton state, by priority:
    flood < walls < seeds < frozen markers < fronts < edges < flags < tape."""
    if name in ("Qn", "qn"):
        return "q"
    base = name.split("|", 1)[0]
    parts = base.split("+")
    g = parts[0]
    tags = parts[1:]
    if g == "*":
        return "*"
    if g == "W":
        return "W"
    if g == "w":
        return "w"
    if any(t.startswith((">F", "<F")) for t in tags):
        return "F"
    if any(t.startswith(">o") for t in tags):
        return ">"
    if any(t.startswith("<o") for t in tags):
        return "<"
    if any(t.startswith(">i") for t in tags):
        return "]"
    if any(t.startswith("<i") for t in tags):
        return "["
    if "ab" in tags:
        return "!"
    for t in tags:
        if t.startswith("p"):
            head = t[1:].split(",")[1]
            return "H" if head != "-1" else "r"
    if g == "R":
        return "R"
    if g == "_":
        return "."
    return name if len(name) == 1 else "?"


def layered_rgb(name: str) -> tuple:
    """Color scheme for layered-automaton images; payload letters tint the
    quiet cells."""
    if name in ("Qn", "qn"):
        return (0, 0, 0)
    base, _, sigma = name.partition("|")
    parts = base.split("+")
    g = parts[0]
    tags = parts[1:]
    if g == "*":
        return (255, 255, 255)
    if g == "W":
        return (90, 60, 20)
    if g == "w":
        return (150, 110, 60)
    if any(t.startswith((">F", "<F")) for t in tags):
        return (220, 40, 40)
    if any(t.startswith(">o") for t in tags):
        return (250, 150, 40)
    if any(t.startswith("<o") for t in tags):
        return (250, 210, 60)
    if any(t.startswith(">i") for t in tags):
        return (60, 130, 240)
    if any(t.startswith("<i") for t in tags):
        return (100, 200, 240)
    if "ab" in tags:
        return (200, 40, 200)
    for t in tags:
        if t.startswith("p"):
            head = t[1:].split(",")[1]
            if head != "-1":
                return (40, 200, 90)
    shade = {"0": 235, "1": 140, "<": 170, ">": 110}.get(sigma or base, 210)
    if g == "R":
        return (shade, 255 if shade > 200 else shade, 200)
    return (shade, shade, shade)
