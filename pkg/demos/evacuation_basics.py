"""
Evacuation times on a path: sides, sinks, plans, and the simulator
==================================================================

A path network has vertices at integer coordinates; each vertex holds a
number of evacuees; every edge moves at most `capacity` people per time unit
and costs `tau` time per unit length.  Everyone walks to the sink assigned to
their part of the path.

This walkthrough evaluates one small instance every way the library can,
and cross-checks the closed-form times against a discrete-event simulation.
"""

from pathevac import (
    CostModel,
    PathInstance,
    Plan,
    Scenario,
    Side,
    eval_all_sinks,
    eval_one_sink,
    eval_plan,
    eval_side,
    simulate_evacuation,
)

# --- a five-vertex instance with one congested cluster ----------------------

inst = PathInstance(
    coords=(0, 2, 3, 4, 9),
    wminus=(4, 1, 6, 2, 3),
    wplus=(4, 1, 6, 2, 3),  # point intervals: weights are certain here
    capacity=2,
    tau=1,
)
s = Scenario((4, 1, 6, 2, 3))
print(f"instance: coords={inst.coords} weights={s.weights} "
      f"capacity={inst.capacity} tau={inst.tau}")

# --- one sink, seen from each side ------------------------------------------

sink = 2
left = eval_side(inst, s, 0, inst.n, sink, Side.LEFT, CostModel.DISCRETE)
right = eval_side(inst, s, 0, inst.n, sink, Side.RIGHT, CostModel.DISCRETE)
total = eval_one_sink(inst, s, 0, inst.n, sink, CostModel.DISCRETE)
print(f"\nsink at vertex {sink}:")
print(f"  left side finishes at  t={left.time} (critical vertex {left.argmax_index})")
print(f"  right side finishes at t={right.time} (critical vertex {right.argmax_index})")
print(f"  overall: {total}")
assert total == max(left.time, right.time)

# --- every sink at once -------------------------------------------------------

times = eval_all_sinks(inst, s, 0, inst.n, CostModel.DISCRETE)
print(f"\nevacuation time per sink position: {times}")
best = min(range(len(times)), key=times.__getitem__)
print(f"best single sink is vertex {best} with time {times[best]}")

# --- the simulator agrees, tick for tick -------------------------------------

for y in range(inst.n + 1):
    sim = simulate_evacuation(inst, s, 0, inst.n, y)
    assert sim == times[y], (y, sim, times[y])
print("discrete-event simulation matches the closed form at every sink")

# --- two cost models -----------------------------------------------------------

# The simplified model treats each unit of weight as one time unit of queue
# drain (capacity folded in as 1) and skips the final-unit adjustment; with
# capacity 1 it is exactly the discrete time plus one when both sides are
# occupied.
unit = PathInstance((0, 1, 2), (1, 1, 1), (1, 1, 1))
us = Scenario((1, 1, 1))
disc = eval_one_sink(unit, us, 0, 2, 1, CostModel.DISCRETE)
simp = eval_one_sink(unit, us, 0, 2, 1, CostModel.SIMPLIFIED)
print(f"\nunit path, middle sink: discrete={disc} simplified={simp}")
assert simp == disc + 1

# --- plans: several parts, several sinks ---------------------------------------

plan = Plan(boundaries=(2, 4), sinks=(2, 4))
value, worst_part = eval_plan(inst, s, plan, CostModel.DISCRETE)
print(f"\nplan with parts {plan.parts()} and sinks {plan.sinks}:")
print(f"  finishes at t={value}; the slowest part is {worst_part}")

everyone_home = Plan(tuple(range(inst.n + 1)), tuple(range(inst.n + 1)))
assert eval_plan(inst, s, everyone_home, CostModel.DISCRETE) == (0, 0)
print("a sink at every vertex evacuates instantly, as it should")
