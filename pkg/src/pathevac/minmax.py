"""Minmax-regret k-sink planning (simplified cost model).

Two independent solvers compute a plan minimizing worst-case regret over the
candidate scenario set:

* :func:`minmax_regret_dp` — dynamic programming over part right-ends on top
  of the precomputed subpath-regret matrix R[j, i] (see
  :func:`pathevac.regret.compute_rji`).  Row scans exploit that the
  minimizing split point only moves right as the subpath grows, so each DP
  row costs O(n) pointer movement.
* :func:`minmax_regret_bs` — nested binary search.  The value of an optimal
  ``i``-part cover of a prefix is non-decreasing in the prefix end, while
  the regret of the final part is non-increasing in its left end, so the
  optimal split bracketing can be found by bisection at every level.  Its
  subpath regrets are computed from scratch (per-scenario evaluation folds),
  making it a structurally different cross-check for the DP solver.

Both return exact integer values and concrete plans.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .evac import eval_all_sinks
from .model import (
    CostModel,
    PathInstance,
    Plan,
    ScenarioDescriptor,
    realize_scenario,
)
from .optk import optimal_k_sink
from .regret import (
    RjiMatrix,
    ScenarioOptCache,
    build_scenario_opt_cache,
    compute_rji,
)

__all__ = [
    "MmrDpTable",
    "MmrResult",
    "solve_minmax_regret_dp",
    "minmax_regret_dp",
    "solve_minmax_regret_bs",
    "minmax_regret_bs",
]

_POS = np.int64(1 << 62)


@dataclass
class MmrDpTable:
    """DP state: M[q, i] = best worst-case regret of q parts covering [0, i]."""

    M: np.ndarray
    argJ: np.ndarray


@dataclass
class MmrResult:
    value: int
    plan: Plan
    counters: dict = field(default_factory=dict)
    table: Optional[MmrDpTable] = None


def _validate(inst: PathInstance, k: int) -> None:
    inst.require_valid()
    if not 1 <= k <= inst.n + 1:
        raise ValueError(f"k={k} out of range 1..{inst.n + 1}")


# ---------------------------------------------------------------------------
# Dynamic-programming solver
# ---------------------------------------------------------------------------


def solve_minmax_regret_dp(
    inst: PathInstance,
    k: int,
    cache: Optional[ScenarioOptCache] = None,
    rji: Optional[RjiMatrix] = None,
    with_table: bool = False,
) -> MmrResult:
    """Minmax-regret plan via dynamic programming over the R matrix.

    Recurrence: M(q, i) = min over j in [q-1, i] of
    max(M(q-1, j-1), R[j, i]), with M(1, i) = R[0, i].  The inner objective
    is the max of a non-decreasing and a non-increasing sequence in j, so
    the rightmost minimizing j is found by advancing a per-row pointer that
    never retreats (ties advance).
    """
    _validate(inst, k)
    n = inst.n
    if cache is None:
        cache = build_scenario_opt_cache(inst, k)
    elif cache.k != k:
        raise ValueError(f"cache built for k={cache.k}, solver needs k={k}")
    if rji is None:
        rji = compute_rji(inst, cache)
    R = rji.R

    M = np.full((k + 1, n + 1), _POS, dtype=np.int64)
    argJ = np.full((k + 1, n + 1), -1, dtype=np.int64)
    M[1] = R[0]
    argJ[1] = 0
    increments = [0]
    for q in range(2, k + 1):
        jc = q - 1
        prev = M[q - 1]
        inc = 0
        for i in range(q - 1, n + 1):
            cur = max(int(prev[jc - 1]), int(R[jc, i]))
            while jc < i:
                nxt = max(int(prev[jc]), int(R[jc + 1, i]))
                if nxt <= cur:
                    jc += 1
                    cur = nxt
                    inc += 1
                else:
                    break
            M[q, i] = cur
            argJ[q, i] = jc
        increments.append(inc)

    value = int(M[k, n])

    # Reconstruct the partition right-to-left, sinks from the R matrix sweep.
    ends: list[int] = []
    sinks: list[int] = []
    i = n
    for q in range(k, 0, -1):
        j = int(argJ[q, i])
        ends.append(i)
        sinks.append(int(rji.sink[j, i]))
        i = j - 1
    if i != -1:
        raise RuntimeError("partition reconstruction did not consume the path")
    ends.reverse()
    sinks.reverse()
    plan = Plan(tuple(ends), tuple(sinks))

    # Internal consistency: the plan's parts must reproduce the DP value.
    lo = 0
    worst = None
    for e, _y in zip(ends, sinks):
        rv = int(R[lo, e])
        worst = rv if worst is None else max(worst, rv)
        lo = e + 1
    assert worst == value, (worst, value)

    counters = {
        "j_increments_per_row": increments,
        "j_increments_total": sum(increments),
        "rji_sink_evals": rji.counters.get("sink_evals"),
        "rji_sink_moves": rji.counters.get("sink_moves"),
    }
    table = MmrDpTable(M=M, argJ=argJ) if with_table else None
    return MmrResult(value=value, plan=plan, counters=counters, table=table)


def minmax_regret_dp(inst: PathInstance, k: int) -> tuple[int, Plan]:
    """Minmax-regret value and plan (dynamic-programming solver)."""
    res = solve_minmax_regret_dp(inst, k)
    return res.value, res.plan


# ---------------------------------------------------------------------------
# Nested binary-search solver
# ---------------------------------------------------------------------------


def solve_minmax_regret_bs(
    inst: PathInstance,
    k: int,
    opt_cache: Optional[ScenarioOptCache] = None,
) -> MmrResult:
    """Minmax-regret plan via nested binary search over split points.

    Subpath regrets are evaluated directly: for part [l, r], fold the
    per-sink evacuation times of every part-anchored candidate scenario and
    take the minimum over sinks.  Scenario optima default to per-scenario
    dynamic-program runs (independent of the batch cache); pass
    ``opt_cache`` to share precomputed optima instead.
    """
    _validate(inst, k)
    if opt_cache is not None and opt_cache.k != k:
        raise ValueError(f"cache built for k={opt_cache.k}, solver needs k={k}")
    n = inst.n
    counters = {"rlr_evals": 0, "solve_evals": 0, "probe_steps": 0, "opt_scenarios": 0}

    opt_memo: dict[ScenarioDescriptor, int] = {}

    def opt_of(d: ScenarioDescriptor) -> int:
        v = opt_memo.get(d)
        if v is None:
            if opt_cache is not None:
                v = opt_cache.get(d)
            else:
                s = realize_scenario(inst, d)
                v, _ = optimal_k_sink(inst, s, k, CostModel.SIMPLIFIED)
            counters["opt_scenarios"] += 1
            opt_memo[d] = v
        return v

    rlr_memo: dict[tuple[int, int], tuple[int, int]] = {}

    def rlr(l: int, r: int) -> tuple[int, int]:
        """(min worst-case regret of part [l, r], leftmost minimizing sink)."""
        got = rlr_memo.get((l, r))
        if got is not None:
            return got
        counters["rlr_evals"] += 1
        seen: set[tuple[int, int]] = set()
        cands: list[ScenarioDescriptor] = []
        for m in range(l, r + 2):
            for d in ((l, m), (m, r + 1)):
                if d not in seen:
                    seen.add(d)
                    cands.append(ScenarioDescriptor(*d))
        acc: Optional[list[int]] = None
        for d in cands:
            s = realize_scenario(inst, d)
            o = opt_of(d)
            evs = eval_all_sinks(inst, s, l, r, CostModel.SIMPLIFIED)
            if acc is None:
                acc = [e - o for e in evs]
            else:
                for idx, e in enumerate(evs):
                    v = e - o
                    if v > acc[idx]:
                        acc[idx] = v
        assert acc is not None
        v = min(acc)
        res = (v, l + acc.index(v))
        rlr_memo[(l, r)] = res
        return res

    solve_memo: dict[tuple[int, int], tuple[int, tuple[int, ...], tuple[int, ...]]] = {}

    def solve(i: int, rend: int) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
        """Best cover of [0, rend] by i parts: (value, part ends, sinks)."""
        key = (i, rend)
        got = solve_memo.get(key)
        if got is not None:
            return got
        counters["solve_evals"] += 1
        if i == 1:
            v, y = rlr(0, rend)
            res = (v, (rend,), (y,))
        else:
            # Last part is [ell, rend]; prefix value grows with ell while the
            # last part's regret shrinks, so bisect to the crossing.
            lo, hi = i - 1, rend
            while hi - lo >= 2:
                m = (lo + hi) // 2
                counters["probe_steps"] += 1
                if solve(i - 1, m - 1)[0] >= rlr(m, rend)[0]:
                    hi = m
                else:
                    lo = m
            best: Optional[tuple[int, tuple[int, ...], tuple[int, ...]]] = None
            for ell in sorted({lo, hi}):
                gv, ge, gs = solve(i - 1, ell - 1)
                hv, hy = rlr(ell, rend)
                v = max(gv, hv)
                if best is None or v < best[0]:
                    best = (v, ge + (rend,), gs + (hy,))
            assert best is not None
            res = best
        solve_memo[key] = res
        return res

    value, ends, sinks = solve(k, n)
    plan = Plan(ends, sinks)
    return MmrResult(value=value, plan=plan, counters=dict(counters))


def minmax_regret_bs(inst: PathInstance, k: int) -> tuple[int, Plan]:
    """Minmax-regret value and plan (nested binary-search solver)."""
    res = solve_minmax_regret_bs(inst, k)
    return res.value, res.plan
