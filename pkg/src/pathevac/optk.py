"""Optimal k-sink placement on a path via monotone dynamic programming.

T(q, i) = min over j of max(T(q-1, j-1), w(j, i)), where w(j, i) is the best
one-sink evacuation time of the subpath [j, i].  Both w and T are monotone in
their endpoints, so each DP row is filled with a single left-to-right scan in
which the candidate split point j only moves right (at most 2n tracker
increments per row), and w(j, i) values come from incremental subpath trackers
backed by Bi-Heaps instead of being recomputed.

A tracker maintains the rightmost optimal sink of its subpath: the one-sink
time is max(theta_L, theta_R) with theta_L non-decreasing and theta_R
non-increasing in the sink position, so advancing the sink while the next
position is no worse (ties included) lands exactly on the rightmost minimizer,
and appends/left-drops only ever push that minimizer further right.
"""

from __future__ import annotations

from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Optional

from .biheap import BiHeap
from .evac import eval_all_sinks
from .model import (
    CostModel,
    InvalidInstanceError,
    PathInstance,
    Plan,
    Scenario,
    validate_instance,
)

__all__ = [
    "SubpathTracker",
    "OptDpTable",
    "OptKResult",
    "optimal_one_sink",
    "optimal_k_sink",
    "solve_optimal_k_sink",
]


def _prefix_weights(s: Scenario) -> list[int]:
    """pw[z] = total weight of vertices [0, z); pw has length n+2."""
    pw = [0] * (len(s.weights) + 1)
    acc = 0
    for z, w in enumerate(s.weights):
        acc += w
        pw[z + 1] = acc
    return pw


def optimal_one_sink(
    inst: PathInstance,
    s: Scenario,
    lo: int,
    hi: int,
    cm: str = CostModel.DISCRETE,
) -> tuple[int, int]:
    """Best one-sink evacuation time of [lo, hi] and its leftmost optimal sink."""
    times = eval_all_sinks(inst, s, lo, hi, cm)
    best = min(times)
    return best, lo + times.index(best)


class SubpathTracker:
    """w(j, i) under append-right / drop-left updates, general cost model.

    Keeps two Bi-Heaps: the left heap holds (prefix weight W(j..t), distance)
    pairs for vertices t < sink, the right heap (suffix weight W(t..i),
    distance) pairs for t > sink, so each side's evacuation time is that
    side's max cost (minus 1 in the discrete model; 0 when empty).  Sink
    probing is commit-and-undo: move right, re-measure, move back if worse.
    """

    def __init__(
        self,
        inst: PathInstance,
        s: Scenario,
        cm: str,
        start: int = 0,
        pw: Optional[list[int]] = None,
    ):
        self.x = inst.coords
        self.tau = inst.tau
        self.c = 1 if cm == CostModel.SIMPLIFIED else inst.capacity
        self.discrete = cm == CostModel.DISCRETE
        self.w = s.weights
        self.pw = pw if pw is not None else _prefix_weights(s)
        self.j = start
        self.i = start - 1
        self.y = start
        self.hl = BiHeap(self.c)
        self.hr = BiHeap(self.c)
        self.hl_handle: dict[int, int] = {}
        self.hr_handle: dict[int, int] = {}
        self.sink_moves = 0
        self.drops = 0

    def theta(self) -> int:
        """Current w(j, i): best one-sink time of the tracked subpath."""
        if self.j > self.i:
            return 0
        d = 1 if self.discrete else 0
        ml = self.hl.max_entry()
        mr = self.hr.max_entry()
        tl = ml[0] - d if ml is not None else 0
        tr = mr[0] - d if mr is not None else 0
        return tl if tl >= tr else tr

    def append(self, v: int) -> None:
        """Extend the subpath to [j, v] (v must be the next vertex, i+1)."""
        if self.j > self.i:
            self.i = v
            self.y = v
            return
        self.i = v
        self.hr.add_w(self.w[v])
        self.hr_handle[v] = self.hr.insert(
            self.w[v], (self.x[v] - self.x[self.y]) * self.tau
        )
        self._settle()

    def drop_left(self) -> None:
        """Shrink the subpath to [j+1, i]."""
        self.drops += 1
        if self.j > self.i:
            raise RuntimeError("drop_left on an empty tracker")
        if self.j == self.i:
            self.j += 1
            return
        if self.y == self.j:
            self._move_right()
        self.hl.delete(self.hl_handle.pop(self.j))
        self.hl.add_w(-self.w[self.j])
        self.j += 1
        self._settle()

    def _move_right(self) -> None:
        y = self.y
        ell = (self.x[y + 1] - self.x[y]) * self.tau
        self.hl.add_l(ell)
        self.hl_handle[y] = self.hl.insert(self.pw[y + 1] - self.pw[self.j], ell)
        self.hr.delete(self.hr_handle.pop(y + 1))
        self.hr.add_l(-ell)
        self.y = y + 1
        self.sink_moves += 1

    def _move_left(self) -> None:
        y = self.y
        ell = (self.x[y] - self.x[y - 1]) * self.tau
        self.hl.delete(self.hl_handle.pop(y - 1))
        self.hl.add_l(-ell)
        self.hr.add_l(ell)
        self.hr_handle[y] = self.hr.insert(self.pw[self.i + 1] - self.pw[y], ell)
        self.y = y - 1

    def _settle(self) -> None:
        cur = self.theta()
        while self.y < self.i:
            self._move_right()
            nxt = self.theta()
            if nxt <= cur:
                cur = nxt
            else:
                self._move_left()
                break


class _FastTracker:
    """Unit-capacity specialization: one lazy max-heap per side, O(1) probes.

    With c == 1 a pair's cost is W + L, so AddW/AddL collapse into a single
    side offset and a sink-move probe needs only the side maxima, computable
    without committing the move.
    """

    __slots__ = (
        "x", "tau", "w", "pw", "dadj", "j", "i", "y",
        "sL", "sR", "hl", "hr", "aliveL", "aliveR",
        "sink_moves", "drops",
    )

    def __init__(self, inst, s, discrete: bool, start: int, pw: list[int]):
        self.x = inst.coords
        self.tau = inst.tau
        self.w = s.weights
        self.pw = pw
        self.dadj = 1 if discrete else 0
        self.j = start
        self.i = start - 1
        self.y = start
        self.sL = 0
        self.sR = 0
        self.hl: list[tuple[int, int]] = []  # (sideoffset - cost, vertex)
        self.hr: list[tuple[int, int]] = []
        n1 = len(self.x)
        self.aliveL = bytearray(n1)
        self.aliveR = bytearray(n1)
        self.sink_moves = 0
        self.drops = 0

    def theta(self) -> int:
        if self.j > self.i:
            return 0
        hl = self.hl
        al = self.aliveL
        while hl and not al[hl[0][1]]:
            heappop(hl)
        hr = self.hr
        ar = self.aliveR
        while hr and not ar[hr[0][1]]:
            heappop(hr)
        tl = (self.sL - hl[0][0] - self.dadj) if hl else 0
        tr = (self.sR - hr[0][0] - self.dadj) if hr else 0
        return tl if tl >= tr else tr

    def append(self, v: int) -> None:
        if self.j > self.i:
            self.i = v
            self.y = v
            return
        self.i = v
        self.sR += self.w[v]
        cost = self.w[v] + (self.x[v] - self.x[self.y]) * self.tau
        heappush(self.hr, (self.sR - cost, v))
        self.aliveR[v] = 1
        self._settle()

    def drop_left(self) -> None:
        self.drops += 1
        if self.j > self.i:
            raise RuntimeError("drop_left on an empty tracker")
        if self.j == self.i:
            self.j += 1
            return
        if self.y == self.j:
            self._move_right()
        self.aliveL[self.j] = 0
        self.sL -= self.w[self.j]
        self.j += 1
        self._settle()

    def _move_right(self) -> None:
        x = self.x
        y = self.y
        ell = (x[y + 1] - x[y]) * self.tau
        self.sL += ell
        cost = self.pw[y + 1] - self.pw[self.j] + ell
        heappush(self.hl, (self.sL - cost, y))
        self.aliveL[y] = 1
        self.aliveR[y + 1] = 0
        self.sR -= ell
        self.y = y + 1
        self.sink_moves += 1

    def _settle(self) -> None:
        cur = self.theta()
        x = self.x
        tau = self.tau
        pw = self.pw
        dadj = self.dadj
        while self.y < self.i:
            y = self.y
            ell = (x[y + 1] - x[y]) * tau
            # Left side if the sink moved to y+1: all current items shift by
            # +ell and vertex y joins at cost W(j..y) + ell.
            hl = self.hl
            al = self.aliveL
            while hl and not al[hl[0][1]]:
                heappop(hl)
            lmax = pw[y + 1] - pw[self.j] + ell
            if hl:
                v = self.sL - hl[0][0] + ell
                if v > lmax:
                    lmax = v
            tl = lmax - dadj
            # Right side if the sink moved: vertex y+1 leaves, rest shift -ell.
            hr = self.hr
            ar = self.aliveR
            while hr and not ar[hr[0][1]]:
                heappop(hr)
            popped = None
            if hr and hr[0][1] == y + 1:
                popped = heappop(hr)
                while hr and not ar[hr[0][1]]:
                    heappop(hr)
            tr = (self.sR - hr[0][0] - ell - dadj) if hr else 0
            if popped is not None:
                heappush(hr, popped)
            nxt = tl if tl >= tr else tr
            if nxt <= cur:
                self._move_right()
                cur = nxt
            else:
                break


@dataclass
class OptDpTable:
    """DP rows for inspection: T[q-1][i], argJ[q-1][i] (the rightmost
    minimizing split), argSink[q-1][i] (the tracker's settled sink)."""

    T: list[list[int]]
    argJ: list[list[int]]
    argSink: list[list[int]]


@dataclass
class OptKResult:
    value: int
    plan: Plan
    counters: dict
    table: Optional[OptDpTable] = None


def solve_optimal_k_sink(
    inst: PathInstance,
    s: Scenario,
    k: int,
    cm: str = CostModel.DISCRETE,
    with_table: bool = False,
) -> OptKResult:
    """Optimal k-sink plan for a fixed scenario; O(k n log n)."""
    CostModel.check(cm)
    violations = validate_instance(inst)
    if violations:
        raise InvalidInstanceError("; ".join(violations))
    n = inst.n
    if len(s.weights) != n + 1:
        raise ValueError("scenario length does not match instance")
    if not (1 <= k <= n + 1):
        raise ValueError(f"k out of range: k={k}, n={n}")

    pw = _prefix_weights(s)
    fast = cm == CostModel.SIMPLIFIED or inst.capacity == 1
    discrete = cm == CostModel.DISCRETE

    def new_tracker(start: int):
        if fast:
            return _FastTracker(inst, s, discrete, start, pw)
        return SubpathTracker(inst, s, cm, start, pw)

    rows_T: list[list[int]] = []
    rows_J: list[list[int]] = []
    rows_S: list[list[int]] = []
    row_incr: list[int] = []
    sink_moves = 0

    ta = new_tracker(0)
    t1 = [0] * (n + 1)
    s1 = [0] * (n + 1)
    for i in range(n + 1):
        ta.append(i)
        t1[i] = ta.theta()
        s1[i] = ta.y
    rows_T.append(t1)
    rows_J.append([0] * (n + 1))
    rows_S.append(s1)
    row_incr.append(0)
    sink_moves += ta.sink_moves

    for _q in range(2, k + 1):
        tprev = rows_T[-1]
        ta = new_tracker(0)
        tb = new_tracker(1)
        tq = [0] * (n + 1)
        jq = [0] * (n + 1)
        sq = [0] * (n + 1)
        jc = 0
        for i in range(n + 1):
            ta.append(i)
            if i:
                tb.append(i)
            fc = ta.theta()
            cur = fc if jc == 0 else max(tprev[jc - 1], fc)
            while jc < i:
                fn = tb.theta()
                tp = tprev[jc]
                nxt = tp if tp >= fn else fn
                if nxt <= cur:
                    ta.drop_left()
                    tb.drop_left()
                    jc += 1
                    cur = nxt
                else:
                    break
            tq[i] = cur
            jq[i] = jc
            sq[i] = ta.y
        rows_T.append(tq)
        rows_J.append(jq)
        rows_S.append(sq)
        row_incr.append(ta.drops + tb.drops)
        sink_moves += ta.sink_moves + tb.sink_moves

    value = rows_T[k - 1][n]

    bounds: list[int] = []
    sinks: list[int] = []
    i = n
    for q in range(k, 0, -1):
        j = rows_J[q - 1][i]
        _t, y = optimal_one_sink(inst, s, j, i, cm)
        bounds.append(i)
        sinks.append(y)
        i = j - 1
    if i != -1:
        raise RuntimeError("DP reconstruction did not consume the whole path")
    plan = Plan(tuple(reversed(bounds)), tuple(reversed(sinks)))

    counters = {
        "j_increments_per_row": row_incr,
        "sink_moves": sink_moves,
    }
    table = OptDpTable(rows_T, rows_J, rows_S) if with_table else None
    return OptKResult(value, plan, counters, table)


def optimal_k_sink(
    inst: PathInstance,
    s: Scenario,
    k: int,
    cm: str = CostModel.DISCRETE,
) -> tuple[int, Plan]:
    """Minimum k-sink evacuation time for scenario s, with an optimal plan."""
    res = solve_optimal_k_sink(inst, s, k, cm)
    return res.value, res.plan
