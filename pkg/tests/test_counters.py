import pytest
from hypothesis import given, settings, strategies as st

from limitca.counters import (BLANK, BLANK_L0, READY, SEED, SEED_L0, WALL,
                              WEAK, ConstructionParams, build_counter_ca,
                              compare_outcome, counter_width, find_segments,
                              simulate_comparison, verify_crosscount)
from limitca.engine import run, step


CCA = build_counter_ca()


def grounds(c):
    out = []
    for i in c.cells:
        l0 = CCA.l0_of(i)
        out.append(None if l0 is None else l0.g)
    return out


def test_params_locked():
    with pytest.raises(ValueError):
        ConstructionParams(slowness_outer=2)
    with pytest.raises(ValueError):
        ConstructionParams(radius=1)


def test_counter_width():
    assert [counter_width(k) for k in range(7)] == [0, 0, 1, 1, 2, 2, 3]
    with pytest.raises(ValueError):
        counter_width(-1)


def test_standalone_state_table_size():
    # the eager layer-0 closure; a transition out of it raises at once
    assert len(CCA.interner) == 291


def test_compare_outcome_table():
    assert compare_outcome(2, 5) == "LeftSurvives"
    assert compare_outcome(5, 2) == "RightSurvives"
    assert compare_outcome(3, 3) == "BothDie"
    with pytest.raises(ValueError):
        compare_outcome(-1, 0)


@pytest.mark.parametrize("al,ar", [(0, 0), (0, 1), (1, 0), (2, 2), (1, 4),
                                   (4, 1), (3, 5), (5, 3), (0, 6), (6, 6)])
def test_simulation_matches_prediction_spotgrid(al, ar):
    for dist in (2, 3, 7, 12):
        assert simulate_comparison(al, ar, dist) == compare_outcome(al, ar)


def test_seed_becomes_wall_when_alone():
    c = CCA.seed_config(16, [5])
    c1 = step(CCA.rule, c)
    g = grounds(c1)
    assert g[5] == WALL
    assert g.count(WALL) == 1


def test_adjacent_seeds_weaken():
    # a seed flanked on one side only becomes a weak wall
    c = CCA.seed_config(16, [5, 6])
    g = grounds(step(CCA.rule, c))
    assert g[5] == WEAK and g[6] == WEAK


def test_flanked_seed_is_ready_immediately():
    # the middle of a three-seed run is protected; its edges stand as
    # full walls since their outer flank is open and their inner is deep
    c = CCA.seed_config(16, [4, 5, 6])
    g = grounds(step(CCA.rule, c))
    assert g[5] == READY
    assert g[4] == WALL and g[6] == WALL


def test_no_seed_ground_after_time_zero():
    c = CCA.seed_config(24, [0, 7, 17])
    d = run(CCA.rule, c, 60)
    for row in d.rows[1:]:
        assert SEED not in grounds(row)


def test_fronts_launch_at_unit_speed():
    c = CCA.seed_config(32, [10])
    d = run(CCA.rule, c, 6)
    for t in (2, 4, 6):
        row = d.rows[t]
        l0r = CCA.l0_of(row.cells[10 + t])
        l0l = CCA.l0_of(row.cells[10 - t])
        assert l0r is not None and l0r.fr is not None
        assert l0l is not None and l0l.fl is not None


def test_quiet_ring_stays_quiet():
    c = CCA.config_from_l0([BLANK_L0] * 9)
    assert step(CCA.rule, c).cells == c.cells


@given(st.sets(st.integers(min_value=0, max_value=39), min_size=1, max_size=6),
       st.integers(min_value=40, max_value=40))
@settings(max_examples=25, deadline=None)
def test_machinery_gone_by_twice_length(seeds, L):
    """All moving parts are gone by 2L on any seeded ring."""
    c = CCA.seed_config(L, sorted(seeds))
    d = run(CCA.rule, c, 2 * L)
    last = d.rows[-1]
    for i in last.cells:
        l0 = CCA.l0_of(i)
        if l0 is not None:
            assert l0.fr is None and l0.br is None
            assert l0.fl is None and l0.bl is None


def test_crosscount_fixed_config():
    cells = [SEED_L0 if i in (0, 9, 21) else BLANK_L0 for i in range(32)]
    rep = verify_crosscount(cells)
    assert rep.ok
    assert rep.max_bound == 2 * 6   # farthest cell sits 6 from a seed


def test_crosscount_requires_seeds():
    with pytest.raises(ValueError):
        verify_crosscount([BLANK_L0] * 8)


def test_crosscount_rejects_small_horizon():
    cells = [SEED_L0 if i == 0 else BLANK_L0 for i in range(20)]
    with pytest.raises(ValueError):
        verify_crosscount(cells, horizon=3)


def test_find_segments_matches_surviving_walls():
    c = CCA.seed_config(10, [0, 4, 9])
    d = run(CCA.rule, c, 24)
    segs = find_segments(CCA, d, 24)
    # seeds 9 and 0 are adjacent on the ring, so only the wall at 4 survives
    assert len(segs) == 1
    assert (segs[0].left, segs[0].right) == (4, 14)
    assert segs[0].interior == 9
