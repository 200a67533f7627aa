"""
Interval uncertainty, candidate scenarios, and plan regret
==========================================================

When each vertex weight is only known to lie in an interval, a plan is
judged by its regret under a scenario: its evacuation time minus the best
time any k-sink plan could have achieved for that same scenario.

The worst case over the whole weight box is always attained on one of the
O(n^2) scenarios that set a contiguous run of vertices to their upper
bounds and everything else to its lower bound — and for a fixed plan, on
one of the O(n) runs anchored at a part boundary.  That turns worst-case
analysis into table lookups.
"""

import random

import numpy as np

from pathevac import (
    Plan,
    ScenarioDescriptor,
    build_lookup_tables,
    build_scenario_opt_cache,
    compute_rji,
    enumerate_global_candidates,
    enumerate_partition_candidates,
    max_regret_of_plan,
    realize_scenario,
    regret_of_plan,
)
from pathevac.model import PathInstance

rng = random.Random(3)

# --- an instance with genuinely uncertain weights --------------------------------

n = 12
coords = [0]
for _ in range(n):
    coords.append(coords[-1] + rng.randint(1, 5))
wminus = tuple(rng.randint(1, 8) for _ in range(n + 1))
wplus = tuple(lo + rng.randint(0, 10) for lo in wminus)
inst = PathInstance(tuple(coords), wminus, wplus, capacity=1, tau=1)
print(f"n={n}; weight intervals like {list(zip(wminus, wplus))[:4]} ...")

# --- the candidate scenarios -------------------------------------------------------

cands = enumerate_global_candidates(inst)
print(f"\n{len(cands)} global candidate scenarios "
      f"(= (n+2)(n+3)/2 = {(n + 2) * (n + 3) // 2})")
d = ScenarioDescriptor(3, 7)
s = realize_scenario(inst, d)
print(f"candidate {tuple(d)} realizes to weights {s.weights}")

# --- optimal times for every candidate, in one vectorized sweep --------------------

k = 3
cache = build_scenario_opt_cache(inst, k)  # batch engine over all candidates
print(f"\noptimal {k}-sink time per candidate: "
      f"min {int(cache.array[cache.array > -(1 << 61)].min())}, "
      f"max {int(cache.array.max())}")
assert cache.get((0, 0)) == int(cache.values[0, 0])

# --- regret of one concrete plan -----------------------------------------------------

plan = Plan(boundaries=(4, 9, n), sinks=(2, 7, 11))
r = regret_of_plan(inst, plan, s, cache=cache, d=d)
print(f"\nplan parts {plan.parts()}, sinks {plan.sinks}")
print(f"regret under candidate {tuple(d)}: {r}")

value, witness = max_regret_of_plan(inst, plan, cache)
print(f"worst-case regret {value}, attained by candidate {tuple(witness)}")
per_part = enumerate_partition_candidates(inst, plan)
print(f"(checked {len(per_part)} part-anchored candidates, not the full box)")
ws = realize_scenario(inst, witness)
assert regret_of_plan(inst, plan, ws, cache=cache) == value

# --- the lookup tables behind the fast path ------------------------------------------

tables = build_lookup_tables(inst)
t_sink = 6
row = tables.lrow(0, t_sink)
print(f"\nleft-side times of sink {t_sink} as the upper-bound run grows: "
      f"{[int(v) for v in row]}")
assert row[0] == tables.lminus(0, t_sink)  # empty run = all lower bounds
assert np.all(np.diff(row) >= 0)  # more pessimism never finishes earlier

# --- minimal worst-case regret of every subpath ---------------------------------------

rji = compute_rji(inst, cache, tables)
print(f"\nR[j, i] holds the best single-sink worst-case regret of each "
      f"subpath; R[0, {n}] = {rji.regret(0, n)} "
      f"(best sink {rji.sink_of(0, n)})")
print(f"sweep work: {rji.counters['sink_evals']} sink evaluations, "
      f"{rji.counters['sink_moves']} pointer moves")
