import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from limitca.classics import gliders_rule, min_rule
from limitca.engine import Word
from limitca.probe import (ALL_QN, INCONCLUSIVE, MATCHES_PAYLOAD, REFUTED,
                           SUPPORTED, ProbeConfig, ProbeError,
                           dichotomy_experiment, late_word_census,
                           probe_enables, render_census,
                           sample_seed_positions)
from limitca.turing import BUILTIN_MACHINES


def test_config_defaults_and_validation():
    cfg = ProbeConfig()
    assert (cfg.horizon, cfg.context_lengths, cfg.samples, cfg.window,
            cfg.seed) == (64, ((1, 1),), 64, 32, 0)
    with pytest.raises(ProbeError):
        ProbeConfig(horizon=0)
    with pytest.raises(ProbeError):
        ProbeConfig(samples=0)
    with pytest.raises(ProbeError):
        ProbeConfig(window=0)
    with pytest.raises(ProbeError):
        ProbeConfig(context_lengths=((1, -1),))


def test_erosion_refutes_a_pinned_one():
    """Any context holding a zero kills the origin for good, and no
    completion can help; only the all-ones context survives."""
    cfg = ProbeConfig(horizon=16, samples=8, seed=0)
    v = probe_enables(min_rule(), Word(("1",), 0), ("1",), cfg)
    assert v.status == REFUTED
    assert not v.supported
    # witnesses keep only the failing contexts
    assert all(t == -1 for _, _, t in v.witnesses)
    failed = {(u, w) for u, w, _ in v.witnesses}
    assert failed == {(("0",), ("0",)), (("0",), ("1",)), (("1",), ("0",))}


def test_erosion_supports_a_pinned_zero():
    cfg = ProbeConfig(horizon=16, context_lengths=((1, 1), (2, 2)),
                      samples=25, seed=0)
    v = probe_enables(min_rule(), Word(("0",), 0), ("0",), cfg)
    assert v.status == SUPPORTED
    assert len(v.witnesses) == 4 + 16
    assert all(t >= cfg.horizon // 2 for _, _, t in v.witnesses)


def test_gliders_support_a_colliding_pair():
    # random cone completions keep landing fresh pairs on the origin
    cfg = ProbeConfig(horizon=12, samples=500, seed=3)
    v = probe_enables(gliders_rule(), Word((">", "<"), 0), (">", "<"), cfg)
    assert v.status == SUPPORTED
    assert all(t >= 6 for _, _, t in v.witnesses)


def test_empty_contexts_are_inconclusive():
    cfg = ProbeConfig(horizon=8, context_lengths=(), samples=4, seed=0)
    v = probe_enables(min_rule(), Word(("0",), 0), ("0",), cfg)
    assert v.status == INCONCLUSIVE
    assert v.witnesses == ()


def test_probe_budget_guard():
    cfg = ProbeConfig(horizon=2000, samples=64, seed=0)
    with pytest.raises(ProbeError):
        probe_enables(min_rule(), Word(("0",), 0), ("0",), cfg)


def test_census_guards():
    cfg = ProbeConfig(horizon=8, samples=2, window=8, seed=0)
    with pytest.raises(ProbeError):
        late_word_census(min_rule(), cfg, 0)
    with pytest.raises(ProbeError):
        late_word_census(min_rule(), cfg, 9)


def test_census_frozen_tables():
    cfg = ProbeConfig(horizon=64, samples=25, window=32, seed=5)
    assert late_word_census(min_rule(), cfg, 2) == {"00": 25}
    assert late_word_census(gliders_rule(), cfg, 1) == {
        "0": 25, ">": 10, "<": 14}


def test_census_is_deterministic():
    cfg = ProbeConfig(horizon=32, samples=10, window=24, seed=7)
    a = late_word_census(gliders_rule(), cfg, 2)
    b = late_word_census(gliders_rule(), cfg, 2)
    assert a == b


def test_render_census_sorted_lines():
    out = render_census({"10": 3, "00": 7})
    assert out == "00 7\n10 3"


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**30), st.integers(8, 64), st.data())
def test_seed_positions_respect_the_gap_cap(seed, length, data):
    import random
    gap_cap = data.draw(st.integers(1, length - 1))
    pos = sample_seed_positions(random.Random(seed), length, gap_cap)
    assert pos == sorted(set(pos))
    assert all(0 <= p < length for p in pos)
    gaps = [b - a for a, b in zip(pos, pos[1:])]
    gaps.append(pos[0] + length - pos[-1])
    assert max(gaps) <= gap_cap


def test_seed_positions_guards():
    import random
    rng = random.Random(0)
    with pytest.raises(ProbeError):
        sample_seed_positions(rng, 16, 0)
    with pytest.raises(ProbeError):
        sample_seed_positions(rng, 16, 16)


def test_dichotomy_halting_machine_floods():
    cfg = ProbeConfig(horizon=700, samples=6, window=32, seed=11)
    rep = dichotomy_experiment(BUILTIN_MACHINES["halt1"](), min_rule(), cfg,
                               length=96, gap_cap=8)
    assert rep.verdict == ALL_QN
    assert rep.compiled_table == {"qn,qn": 6}


def test_dichotomy_looping_machine_matches_payload():
    cfg = ProbeConfig(horizon=700, samples=6, window=32, seed=11)
    rep = dichotomy_experiment(BUILTIN_MACHINES["loop1"](), min_rule(), cfg,
                               length=96, gap_cap=8)
    assert rep.verdict == MATCHES_PAYLOAD
    assert rep.compiled_table == rep.payload_table == {"00": 6}


def test_dichotomy_horizon_guard():
    # cleanup for gap_cap 8 needs budget(8) + 16 = 304 clear of the tail
    cfg = ProbeConfig(horizon=600, samples=2, window=32, seed=0)
    with pytest.raises(ProbeError):
        dichotomy_experiment(BUILTIN_MACHINES["loop1"](), min_rule(), cfg,
                             length=64, gap_cap=8)
