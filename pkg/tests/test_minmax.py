"""Minmax-regret solvers: DP and nested binary search."""

from __future__ import annotations

import random

import pytest

from pathevac.minmax import (
    minmax_regret_bs,
    minmax_regret_dp,
    solve_minmax_regret_bs,
    solve_minmax_regret_dp,
)
from pathevac.model import PathInstance, validate_plan
from pathevac.oracle import brute_minmax_regret
from pathevac.regret import build_scenario_opt_cache, max_regret_of_plan

from conftest import rand_instance


def mk_uncertain(rng: random.Random, n: int, w_max: int = 8) -> PathInstance:
    return rand_instance(rng, n, w_max=w_max, capacities=(1,), taus=(1, 2))


def test_certain_weights_zero_regret():
    inst = PathInstance((0, 2, 3, 7), (2, 1, 3, 1), (2, 1, 3, 1))
    for k in (1, 2, 3, 4):
        dv, dplan = minmax_regret_dp(inst, k)
        sv, splan = minmax_regret_bs(inst, k)
        assert dv == sv == 0
        assert validate_plan(inst, dplan) == []
        assert validate_plan(inst, splan) == []


def test_single_vertex():
    inst = PathInstance((0,), (2,), (5,))
    assert minmax_regret_dp(inst, 1)[0] == 0
    assert minmax_regret_bs(inst, 1)[0] == 0


def test_matches_brute_force():
    rng = random.Random(61)
    for _ in range(30):
        inst = mk_uncertain(rng, rng.randint(0, 7), w_max=6)
        k = rng.randint(1, min(3, inst.n + 1))
        want, _ = brute_minmax_regret(inst, k)
        dv, dplan = minmax_regret_dp(inst, k)
        sv, splan = minmax_regret_bs(inst, k)
        assert dv == want, (inst, k)
        assert sv == want, (inst, k)
        cache = build_scenario_opt_cache(inst, k)
        assert max_regret_of_plan(inst, dplan, cache)[0] == dv
        assert max_regret_of_plan(inst, splan, cache)[0] == sv


def test_dp_equals_bs_medium():
    rng = random.Random(62)
    for _ in range(15):
        inst = mk_uncertain(rng, rng.randint(8, 25))
        k = rng.randint(1, 3)
        dv, dplan = minmax_regret_dp(inst, k)
        sv, _ = minmax_regret_bs(inst, k)
        assert dv == sv, (inst, k)
        assert validate_plan(inst, dplan) == []


def test_solvers_are_deterministic():
    rng = random.Random(63)
    inst = mk_uncertain(rng, 15)
    assert minmax_regret_dp(inst, 3) == minmax_regret_dp(inst, 3)
    assert minmax_regret_bs(inst, 3) == minmax_regret_bs(inst, 3)


def test_dp_counters_and_table():
    rng = random.Random(64)
    inst = mk_uncertain(rng, 20)
    res = solve_minmax_regret_dp(inst, 4, with_table=True)
    n = inst.n
    incs = res.counters["j_increments_per_row"]
    assert len(incs) == 4
    assert incs[0] == 0
    for v in incs[1:]:
        assert v <= n
    assert res.table is not None
    assert res.table.M[4, n] == res.value
    # more parts never hurt (both rows are defined for i >= q-1)
    for q in (2, 3, 4):
        for i in range(q - 1, n + 1):
            assert res.table.M[q, i] <= res.table.M[q - 1, i]


def test_bs_counters_present():
    rng = random.Random(65)
    inst = mk_uncertain(rng, 18)
    res = solve_minmax_regret_bs(inst, 3)
    for key in ("rlr_evals", "solve_evals", "probe_steps", "opt_scenarios"):
        assert key in res.counters
        assert res.counters[key] >= 0


def test_shared_cache_paths():
    rng = random.Random(66)
    inst = mk_uncertain(rng, 10)
    cache = build_scenario_opt_cache(inst, 2)
    a = solve_minmax_regret_dp(inst, 2, cache=cache)
    b = solve_minmax_regret_bs(inst, 2, opt_cache=cache)
    assert a.value == b.value
    with pytest.raises(ValueError):
        solve_minmax_regret_dp(inst, 3, cache=cache)
    with pytest.raises(ValueError):
        solve_minmax_regret_bs(inst, 3, opt_cache=cache)


def test_k_validation():
    inst = PathInstance((0, 1), (1, 1), (2, 2))
    with pytest.raises(ValueError):
        minmax_regret_dp(inst, 0)
    with pytest.raises(ValueError):
        minmax_regret_dp(inst, 3)
    with pytest.raises(ValueError):
        minmax_regret_bs(inst, 3)
