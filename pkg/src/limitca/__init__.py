"""Cellular automata whose visible late-time behavior is programmable.

The package couples a small exact simulation engine with a construction
that hosts an arbitrary Turing machine inside a one-dimensional automaton
while leaving, or erasing, the long-run look of a chosen payload rule.
Sampling probes estimate which local patterns keep occurring at late
times from typical starts.
"""

from .engine import (Alphabet, Configuration, EngineError, GrowingAlphabet,
                     LocalRule, SpaceTimeDiagram, Word, cyclic,
                     enumerate_images, occurs, run, run_until,
                     shift_commutes, step, windowed)
from .classics import (gliders_limit_forbidden, gliders_rule,
                       min_limit_forbidden, min_rule, uniform_rule,
                       word_absent_from_images)
from .turing import (BUILTIN_MACHINES, MOVES, MachineError, TMRun,
                     TuringMachine, tm_run_empty)
from .counters import (ConstructionParams, CounterCA, CrosscountReport,
                       Segment, build_counter_ca, compare_outcome,
                       counter_width, find_segments, simulate_comparison,
                       verify_crosscount)
from .compiler import (AbortReport, CompiledCA, ProjReport, UniformOrbit,
                       budget, compile_machine, phi, seed_distances,
                       uniform_orbit, verify_abort, verify_proj)
from .probe import (DichotomyReport, EnablingVerdict, ProbeConfig,
                    ProbeError, dichotomy_experiment, late_word_census,
                    phi_config, probe_enables, render_census,
                    sample_compiled_config, sample_seed_positions,
                    sample_standalone_config)
from .render import RenderError, RenderSpec, layered_glyph, layered_rgb, render
from .fileio import (ParseError, parse_compiled, parse_rule, parse_tm,
                     payload_by_name, serialize_compiled, serialize_rule,
                     serialize_tm, serialize_trace)

__all__ = [n for n in dir() if not n.startswith("_")]
__version__ = "0.1.0"
