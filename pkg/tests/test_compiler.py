import random

import pytest

from limitca.classics import gliders_rule, min_rule, uniform_rule
from limitca.compiler import (UniformOrbit, budget, compile_machine, phi,
                              seed_distances, uniform_orbit, verify_abort,
                              verify_proj)
from limitca.counters import BLANK_L0, L0, P, Q, SEED, SEED_L0, WALL
from limitca.engine import run, run_until, step
from limitca.turing import BUILTIN_MACHINES


def loop_min():
    return compile_machine(BUILTIN_MACHINES["loop1"](), min_rule(), "qn", "0",
                           payload_name="min")


def loop_gliders():
    return compile_machine(BUILTIN_MACHINES["loop1"](), gliders_rule(),
                           "qn", "0", payload_name="gliders")


def halt_min():
    return compile_machine(BUILTIN_MACHINES["halt1"](), min_rule(), "qn", "0",
                           payload_name="min")


def test_uniform_orbits():
    assert uniform_orbit(min_rule(), "0") == UniformOrbit(0, 1, ("0",))
    assert uniform_orbit(min_rule(), "1") == UniformOrbit(0, 1, ("1",))
    assert uniform_orbit(gliders_rule(), "<") == UniformOrbit(0, 1, ("<",))
    u = uniform_rule("z")
    assert uniform_orbit(u, "z") == UniformOrbit(0, 1, ("z",))


def test_orbit_value_at():
    o = UniformOrbit(2, 3, ("a", "b", "c", "d", "e"))
    assert [o.value_at(t) for t in range(8)] == list("abcdecde")


def test_budget_values():
    assert budget(0) == 1
    assert budget(3) == 20
    assert budget(14) == 16440
    with pytest.raises(ValueError):
        budget(-1)
    with pytest.raises(ValueError):
        budget(63)


def test_phi():
    # flattening keeps seed letters and erases everything else
    assert phi((P, SEED_L0, "1"), "0") == "1"
    assert phi((P, BLANK_L0, "1"), "0") == "0"
    assert phi(("B", "<"), "0") == "0"
    assert phi(("Q",), "0") == "0"


def test_compile_rejects_bad_inputs():
    m = BUILTIN_MACHINES["loop1"]()
    with pytest.raises(ValueError):
        compile_machine(m, min_rule(), "0", "0")      # qn collides
    with pytest.raises(ValueError):
        compile_machine(m, min_rule(), "qn", "7")     # x0 not a state
    cca = build_big = compile_machine(m, min_rule(), "qn", "0")
    assert cca.qn_id == cca.encode((Q,))
    del build_big


def test_seed_distances_ring_and_line():
    d = seed_distances([True, False, False, False, True, False])
    assert d == [0, 1, 2, 1, 0, 1]
    d = seed_distances([False, True, False, False], mode="windowed")
    assert d == [1, 0, 1, 2]
    with pytest.raises(ValueError):
        seed_distances([False, False])


def test_halting_machine_floods_ring():
    cca = halt_min()
    c = cca.seed_config(24, [0, 9])
    qn = cca.qn_id
    t, last = run_until(cca.rule, c,
                        lambda cf: all(v == qn for v in cf.cells), 200)
    assert t == 14    # frozen from an instrumented run; exact by determinism
    assert all(v == qn for v in last.cells)


def test_flood_is_absorbing():
    cca = halt_min()
    qn = cca.qn_id
    from limitca.engine import Configuration
    c = Configuration((qn,) * 6, "cyclic")
    assert step(cca.rule, c).cells == (qn,) * 6


def test_looping_machine_never_floods_and_goes_bare():
    cca = loop_min()
    c = cca.seed_config(32, [0, 11, 21])
    # widest gap is 11, so machinery must clear by budget(11) + 2*11
    deadline = budget(11) + 22
    d = run(cca.rule, c, deadline + 40)
    qn = cca.qn_id
    for row in d.rows:
        assert qn not in row.cells
    bare_from = next(t for t, row in enumerate(d.rows)
                     if all(cca.decode(v)[0] == "B" for v in row.cells))
    assert bare_from <= deadline
    assert all(cca.decode(v) == ("B", "0") for v in d.rows[-1].cells)


def test_projection_tracks_payload_exactly():
    cca = loop_min()
    c = cca.seed_config(48, [0, 13, 29], junk=lambda i: "01"[i % 2])
    rep = verify_proj(cca, c, 160)
    assert rep.ok, rep.violation
    assert rep.checked > 1000


def test_projection_gliders_payload():
    cca = compile_machine(BUILTIN_MACHINES["loop1"](), gliders_rule(),
                          "qn", "0", payload_name="gliders")
    rng = random.Random(5)
    vals = ("0", "<", ">")
    c = cca.seed_config(40, [0, 9, 23],
                        junk=lambda i: vals[rng.randrange(3)])
    rep = verify_proj(cca, c, 140)
    assert rep.ok, rep.violation


def test_projection_heals_loose_junk():
    # a stray payload letter is junk: the sweep erases it before any cell's
    # deadline, so the report stays clean
    cca = loop_min()
    c = cca.seed_config(48, [0, 13, 29])
    cells = list(c.cells)
    cells[20] = cca.encode(("B", "1"))
    from limitca.engine import Configuration
    rep = verify_proj(cca, Configuration(tuple(cells), "cyclic"), 60)
    assert rep.ok


def test_projection_catches_sheltered_corruption():
    # a fake wall freezes the incoming sweep, so a junk glider parked behind
    # it survives and leaks into cleared territory past its deadline
    cca = loop_gliders()
    c = cca.seed_config(48, [0, 13, 29])
    cells = list(c.cells)
    wall = (P, L0(WALL, None, None, None, None, None, False), "0")
    cells[16] = cca.encode(wall)
    cells[22] = cca.encode(("B", "<"))
    from limitca.engine import Configuration
    rep = verify_proj(cca, Configuration(tuple(cells), "cyclic"), 80)
    assert not rep.ok
    t, i, got, want = rep.violation
    assert (t, i, want) == (7, 15, "0")
    assert got.endswith("|<")


def test_verify_abort_tables():
    rows = verify_abort(loop_min(), 8).rows
    assert rows == ((3, 14, 20), (4, 24, 32), (5, 42, 52), (6, 76, 88),
                    (7, 142, 156), (8, 272, 288))
    rows = verify_abort(halt_min(), 6).rows
    assert [(n, s) for n, s, _ in rows] == [(3, 5), (4, 6), (5, 6), (6, 7)]
    cca = compile_machine(BUILTIN_MACHINES["marcher"](), min_rule(),
                          "qn", "0", payload_name="min")
    rows = verify_abort(cca, 8).rows
    assert [(n, s) for n, s, _ in rows] == [(3, 7), (4, 10), (5, 12),
                                            (6, 15), (7, 17), (8, 20)]


def test_verify_abort_reports_ok():
    rep = verify_abort(loop_min(), 6)
    assert rep.ok and rep.failure is None


def test_compiled_rule_never_outputs_seeds():
    cca = loop_min()
    rng = random.Random(0)
    alpha = cca.rule.alphabet
    for _ in range(3000):
        win = tuple(alpha.sample(rng) for _ in range(5))
        out = cca.decode(cca.rule.step_window(win))
        assert not (out[0] == P and out[1].g == SEED)


def test_seed_config_modes():
    cca = loop_min()
    c = cca.seed_config(10, [3], mode="windowed")
    assert c.mode == "windowed"
    bg = cca.decode(c.left_bg)
    assert bg[0] == P and bg[1].g == "_"
