"""Optimal k-sink dynamic program and subpath trackers."""

from __future__ import annotations

import random

import pytest

from pathevac.evac import eval_one_sink
from pathevac.model import (
    CostModel,
    InvalidInstanceError,
    PathInstance,
    Plan,
    Scenario,
)
from pathevac.optk import (
    SubpathTracker,
    optimal_k_sink,
    optimal_one_sink,
    solve_optimal_k_sink,
)
from pathevac.oracle import brute_optimal_k_sink

from conftest import rand_instance, rand_scenario

UNIT = PathInstance((0, 1, 2), (1, 1, 1), (1, 1, 1))
UNIT_S = Scenario((1, 1, 1))
HEAVY = PathInstance((0, 1, 2), (2, 2, 2), (2, 2, 2), capacity=2)
HEAVY_S = Scenario((2, 2, 2))


def test_one_sink_examples():
    assert optimal_one_sink(UNIT, UNIT_S, 0, 2, CostModel.SIMPLIFIED) == (2, 1)
    assert optimal_one_sink(HEAVY, HEAVY_S, 0, 2, CostModel.DISCRETE) == (1, 1)


def test_two_sinks_example():
    value, plan = optimal_k_sink(UNIT, UNIT_S, 2, CostModel.SIMPLIFIED)
    assert value == 2
    assert plan == Plan((1, 2), (0, 2))


def test_one_sink_per_vertex_is_free():
    value, plan = optimal_k_sink(UNIT, UNIT_S, 3, CostModel.SIMPLIFIED)
    assert value == 0
    assert plan == Plan((0, 1, 2), (0, 1, 2))


def test_input_validation():
    with pytest.raises(InvalidInstanceError):
        optimal_k_sink(PathInstance((0, 0), (1, 1), (1, 1)), Scenario((1, 1)), 1)
    with pytest.raises(ValueError):
        optimal_k_sink(UNIT, Scenario((1, 1)), 1)
    with pytest.raises(ValueError):
        optimal_k_sink(UNIT, UNIT_S, 0)
    with pytest.raises(ValueError):
        optimal_k_sink(UNIT, UNIT_S, 4)


def test_matches_brute_force_small():
    rng = random.Random(21)
    for _ in range(120):
        inst = rand_instance(rng, rng.randint(0, 9))
        s = rand_scenario(rng, inst)
        k = rng.randint(1, min(3, inst.n + 1))
        for cm in (CostModel.DISCRETE, CostModel.SIMPLIFIED):
            want, _ = brute_optimal_k_sink(inst, s, k, cm)
            got, plan = optimal_k_sink(inst, s, k, cm)
            assert got == want, (inst, s, k, cm)
            # the returned plan actually achieves the value
            worst = max(
                eval_one_sink(inst, s, l, r, y, cm)
                for (l, r), y in zip(plan.parts(), plan.sinks)
            )
            assert worst == got


def test_counters_bounded_linearly():
    rng = random.Random(22)
    for _ in range(20):
        inst = rand_instance(rng, rng.randint(4, 30))
        s = rand_scenario(rng, inst)
        k = rng.randint(1, 4)
        res = solve_optimal_k_sink(inst, s, k, CostModel.SIMPLIFIED)
        n = inst.n
        assert len(res.counters["j_increments_per_row"]) == k
        for inc in res.counters["j_increments_per_row"]:
            assert inc <= 2 * n
        assert res.counters["sink_moves"] <= 3 * k * (n + 1)


def test_with_table_reconstruction():
    rng = random.Random(23)
    inst = rand_instance(rng, 12)
    s = rand_scenario(rng, inst)
    res = solve_optimal_k_sink(inst, s, 3, CostModel.DISCRETE, with_table=True)
    assert res.table is not None
    assert res.table.T[2][inst.n] == res.value
    # table rows are the best q-part values for every prefix; they improve with q
    for q in (1, 2):
        for i in range(inst.n + 1):
            assert res.table.T[q][i] <= res.table.T[q - 1][i]


def test_tracker_window_matches_direct_eval():
    rng = random.Random(24)
    for _ in range(40):
        inst = rand_instance(rng, rng.randint(1, 10))
        s = rand_scenario(rng, inst)
        cm = rng.choice([CostModel.DISCRETE, CostModel.SIMPLIFIED])
        tr = SubpathTracker(inst, s, cm)
        n = inst.n
        # grow to the full path, then shrink from the left
        for i in range(n + 1):
            tr.append(i)
            want, _ = optimal_one_sink(inst, s, 0, i, cm)
            assert tr.theta() == want, ("grow", inst, s, cm, i)
        for j in range(n):
            tr.drop_left()
            want, _ = optimal_one_sink(inst, s, j + 1, n, cm)
            assert tr.theta() == want, ("shrink", inst, s, cm, j)
