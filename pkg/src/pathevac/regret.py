"""Regret evaluation for k-sink plans under interval-uncertain weights.

The simplified cost model is used throughout this module: worst-case
candidate scenarios are the O(n^2) "contiguous upper-bound window"
assignments, and the regret of a plan under a scenario is its evacuation
time minus the best achievable k-sink time for that same scenario.

Main pieces:

* :class:`ScenarioOptCache` / :func:`build_scenario_opt_cache` — optimal
  k-sink times for candidate scenarios, backed either by the vectorized
  batch engine or by the per-scenario dynamic program.
* :func:`regret_of_plan` / :func:`max_regret_of_plan` — regret of a plan
  under one scenario, and its worst case over all candidate scenarios.
* :class:`EvacLookupTables` / :func:`build_lookup_tables` — one-sided
  evacuation times of extreme scenarios, with O(length) whole-row
  evaluation and O(1) all-lower-bound queries.
* :func:`compute_rji` — the matrix R[j, i] of minimal worst-case regrets of
  single-sink subpaths [j, i], with the minimizing sink per cell.
* Binary dump/load helpers for both the cache and the matrix.

All quantities are exact int64 integers.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from ._batch import NEG, ScenarioBatchEngine, _SparseMax
from .evac import Side, eval_plan, eval_side
from .model import (
    CostModel,
    PathInstance,
    Plan,
    Scenario,
    ScenarioDescriptor,
    realize_scenario,
)
from .optk import optimal_k_sink
from .scenario_gen import enumerate_partition_candidates

__all__ = [
    "ScenarioOptCache",
    "build_scenario_opt_cache",
    "detect_descriptor",
    "regret_of_plan",
    "max_regret_of_plan",
    "EvacLookupTables",
    "build_lookup_tables",
    "RjiMatrix",
    "compute_rji",
    "dump_rji",
    "load_rji",
    "dump_opt_cache",
    "load_opt_cache",
]

_UNSET = np.int64(NEG)


# ---------------------------------------------------------------------------
# Scenario-optimum cache
# ---------------------------------------------------------------------------


class ScenarioOptCache:
    """Optimal k-sink times (simplified model), indexed by scenario descriptor.

    Values are computed lazily per descriptor (or in bulk via
    :meth:`ensure` / :meth:`complete`) and stored in a dense
    ``(n+2) x (n+2)`` int64 matrix at ``[t1, t2]``.

    ``engine="batch"`` uses the vectorized all-scenario solver;
    ``engine="reference"`` runs the per-scenario dynamic program instead,
    which is slower but entirely independent — useful for cross-checking.
    """

    def __init__(self, inst: PathInstance, k: int, engine: str = "batch"):
        inst.require_valid()
        if not 1 <= k <= inst.n + 1:
            raise ValueError(f"k={k} out of range 1..{inst.n + 1}")
        if engine not in ("batch", "reference"):
            raise ValueError(f"unknown engine {engine!r}")
        self.inst = inst
        self.k = k
        self.engine = engine
        n = inst.n
        self.values = np.full((n + 2, n + 2), _UNSET, dtype=np.int64)
        self._batch: Optional[ScenarioBatchEngine] = None

    # -- internals ----------------------------------------------------------

    def _batch_engine(self) -> ScenarioBatchEngine:
        if self._batch is None:
            self._batch = ScenarioBatchEngine(self.inst)
        return self._batch

    def _compute(self, t1a: np.ndarray, t2a: np.ndarray) -> np.ndarray:
        if self.engine == "batch":
            return self._batch_engine().solve(self.k, t1a, t2a)
        out = np.empty(t1a.shape[0], dtype=np.int64)
        for idx in range(t1a.shape[0]):
            d = ScenarioDescriptor(int(t1a[idx]), int(t2a[idx]))
            s = realize_scenario(self.inst, d)
            out[idx], _ = optimal_k_sink(self.inst, s, self.k, CostModel.SIMPLIFIED)
        return out

    # -- public API -----------------------------------------------------------

    def ensure(self, t1s, t2s) -> None:
        """Compute any still-missing entries among the given descriptors."""
        t1a = np.asarray(t1s, dtype=np.int64)
        t2a = np.asarray(t2s, dtype=np.int64)
        if t1a.size == 0:
            return
        n = self.inst.n
        if np.any((t1a < 0) | (t1a > t2a) | (t2a > n + 1)):
            raise ValueError("descriptor out of range")
        missing = self.values[t1a, t2a] == _UNSET
        if not np.any(missing):
            return
        m1 = t1a[missing]
        m2 = t2a[missing]
        # Deduplicate so each lane is solved once.
        flat = np.unique(m1 * np.int64(n + 2) + m2)
        u1, u2 = flat // (n + 2), flat % (n + 2)
        self.values[u1, u2] = self._compute(u1, u2)

    def complete(self) -> None:
        """Fill every valid descriptor (all t1 <= t2)."""
        n = self.inst.n
        t1a, t2a = np.triu_indices(n + 2)
        self.ensure(t1a, t2a)

    def get(self, d: Union[ScenarioDescriptor, Sequence[int]]) -> int:
        """Optimal k-sink time for scenario descriptor ``d``."""
        t1, t2 = int(d[0]), int(d[1])
        n = self.inst.n
        if not 0 <= t1 <= t2 <= n + 1:
            raise ValueError(f"descriptor ({t1}, {t2}) out of range")
        if self.values[t1, t2] == _UNSET:
            self.ensure(np.array([t1]), np.array([t2]))
        return int(self.values[t1, t2])

    @property
    def array(self) -> np.ndarray:
        """The complete value matrix (forces computation of all entries)."""
        self.complete()
        return self.values


def build_scenario_opt_cache(
    inst: PathInstance,
    k: int,
    engine: str = "batch",
    fill: str = "all",
) -> ScenarioOptCache:
    """Build a :class:`ScenarioOptCache`; ``fill="all"`` precomputes every entry."""
    if fill not in ("all", "lazy"):
        raise ValueError(f"unknown fill mode {fill!r}")
    cache = ScenarioOptCache(inst, k, engine=engine)
    if fill == "all":
        cache.complete()
    return cache


def detect_descriptor(inst: PathInstance, s: Scenario) -> Optional[ScenarioDescriptor]:
    """Descriptor (t1, t2) whose realization equals ``s``, or None.

    A scenario realized from some window always detects (possibly as a
    different, equivalent descriptor when interval endpoints coincide).
    """
    n = inst.n
    w = s.weights
    if len(w) != n + 1:
        return None
    wm, wp = inst.wminus, inst.wplus
    diff = [i for i in range(n + 1) if w[i] != wm[i]]
    if not diff:
        return ScenarioDescriptor(0, 0)
    t1, t2 = diff[0], diff[-1] + 1
    for i in range(n + 1):
        want = wp[i] if t1 <= i < t2 else wm[i]
        if w[i] != want:
            return None
    return ScenarioDescriptor(t1, t2)


# ---------------------------------------------------------------------------
# Plan regret
# ---------------------------------------------------------------------------


def regret_of_plan(
    inst: PathInstance,
    plan: Plan,
    s: Scenario,
    cache: Optional[ScenarioOptCache] = None,
    d: Optional[ScenarioDescriptor] = None,
) -> int:
    """Regret of ``plan`` under scenario ``s`` (simplified model).

    This is the plan's evacuation time minus the optimal ``plan.k``-sink
    time for the same scenario.  A cache (with matching k) answers the
    optimal time when the scenario matches a descriptor; otherwise the
    dynamic program computes it directly.
    """
    time, _ = eval_plan(inst, s, plan, CostModel.SIMPLIFIED)
    opt: Optional[int] = None
    if cache is not None and cache.k == plan.k:
        dd = d if d is not None else detect_descriptor(inst, s)
        if dd is not None:
            opt = cache.get(dd)
    if opt is None:
        opt, _ = optimal_k_sink(inst, s, plan.k, CostModel.SIMPLIFIED)
    return time - opt


def max_regret_of_plan(
    inst: PathInstance,
    plan: Plan,
    cache: Optional[ScenarioOptCache] = None,
) -> tuple[int, ScenarioDescriptor]:
    """Worst-case regret of ``plan`` over all candidate scenarios.

    Returns ``(value, witness)`` where ``witness`` is the first candidate
    descriptor (in per-part enumeration order) attaining the maximum.
    """
    cands = enumerate_partition_candidates(inst, plan.boundaries)
    if cache is None:
        cache = ScenarioOptCache(inst, plan.k, engine="batch")
    elif cache.k != plan.k:
        raise ValueError(f"cache built for k={cache.k}, plan has k={plan.k}")
    cache.ensure(
        np.array([d.t1 for _, d in cands], dtype=np.int64),
        np.array([d.t2 for _, d in cands], dtype=np.int64),
    )
    best: Optional[int] = None
    witness: Optional[ScenarioDescriptor] = None
    for _part, d in cands:
        s = realize_scenario(inst, d)
        time, _ = eval_plan(inst, s, plan, CostModel.SIMPLIFIED)
        reg = time - cache.get(d)
        if best is None or reg > best:
            best, witness = reg, d
    assert best is not None and witness is not None
    return best, witness


# ---------------------------------------------------------------------------
# One-sided extreme-scenario lookup tables
# ---------------------------------------------------------------------------


class EvacLookupTables:
    """One-sided evacuation times of extreme scenarios (simplified model).

    For a sink t inside a part, the worst candidate scenarios assign upper
    weight bounds to a run touching one end of the part.  Two row families
    cover them:

    * ``Ltab(l, m, t)``: left side [l, t-1] of sink t with upper bounds on
      [l, m) and lower bounds on [m, t-1]; domain ``l <= m <= t``.
    * ``Rtab(t, m, r)``: right side [t+1, r] of sink t with lower bounds on
      (t, m) and upper bounds on [m, r]; domain ``t < m <= r``.

    ``lrow`` / ``rrow`` produce a whole row (all m) in O(length) time via
    running prefix/suffix maxima.  ``lminus`` / ``rminus`` answer
    all-lower-bound sides in O(1) from sparse tables.  With
    ``materialize=True`` all rows are stored in dense 3-d arrays (memory
    O(n^3) — small inputs only).  With ``validate=True`` every row produced
    is checked against the direct per-scenario side evaluation, falling
    back to the direct value on mismatch and counting the event in
    ``validation_mismatches``.
    """

    def __init__(
        self,
        inst: PathInstance,
        materialize: bool = False,
        validate: bool = False,
    ):
        inst.require_valid()
        self.inst = inst
        self.materialized = materialize
        self.validate = validate
        self.validation_mismatches = 0
        n = inst.n
        x = np.asarray(inst.coords, dtype=np.int64)
        self._xt = x * inst.tau
        wm = np.asarray(inst.wminus, dtype=np.int64)
        wp = np.asarray(inst.wplus, dtype=np.int64)
        self._pm0 = np.zeros(n + 2, dtype=np.int64)
        self._pm0[1:] = np.cumsum(wm)
        self._pp0 = np.zeros(n + 2, dtype=np.int64)
        self._pp0[1:] = np.cumsum(wp)
        # max over z of (prefix-lower through z) - x_z  /  x_z - (prefix-lower before z)
        self._st_lm = _SparseMax(self._pm0[1:] - self._xt)
        self._st_rm = _SparseMax(self._xt - self._pm0[:-1])
        self._lmat: Optional[np.ndarray] = None
        self._rmat: Optional[np.ndarray] = None
        if materialize:
            self._lmat = np.full((n + 1, n + 1, n + 1), NEG, dtype=np.int64)
            self._rmat = np.full((n + 1, n + 1, n + 1), NEG, dtype=np.int64)
            for l in range(n + 1):
                for t in range(l, n + 1):
                    self._lmat[l, l : t + 1, t] = self.lrow(l, t)
            for t in range(n + 1):
                for r in range(t + 1, n + 1):
                    self._rmat[t, t + 1 : r + 1, r] = self.rrow(t, r)

    # -- scalar single-point queries -----------------------------------------

    def _q(self, st: _SparseMax, a: int, b: int) -> int:
        return int(st.query(np.array([a]), np.array([b]))[0])

    def lminus(self, l: int, t: int) -> int:
        """Left-side time of sink t from l with all weights at lower bounds."""
        if not 0 <= l <= t <= self.inst.n:
            raise ValueError(f"left range ({l}, {t}) out of range")
        if t == l:
            return 0
        return int(self._xt[t] - self._pm0[l]) + self._q(self._st_lm, l, t - 1)

    def rminus(self, t: int, r: int) -> int:
        """Right-side time of sink t through r with all weights at lower bounds."""
        if not 0 <= t <= r <= self.inst.n:
            raise ValueError(f"right range ({t}, {r}) out of range")
        if r == t:
            return 0
        return int(self._pm0[r + 1] - self._xt[t]) + self._q(self._st_rm, t + 1, r)

    # -- whole rows -----------------------------------------------------------

    def lrow(self, l: int, t: int) -> np.ndarray:
        """All ``Ltab(l, m, t)`` for m in [l, t], as an int64 array."""
        if not 0 <= l <= t <= self.inst.n:
            raise ValueError(f"left range ({l}, {t}) out of range")
        if t == l:
            return np.zeros(1, dtype=np.int64)
        z = np.arange(l, t)
        base = self._xt[t] - self._xt[z]
        # upper-bound region value per vertex, cumulative from the left
        v1 = base + self._pp0[z + 1] - self._pp0[l]
        pre = np.maximum.accumulate(v1)
        # lower-bound region value per vertex, cumulative from the right
        u = base + self._pm0[z + 1]
        suf = np.maximum.accumulate(u[::-1])[::-1]
        m_all = np.arange(l, t + 1)
        length = t - l
        left_part = np.where(
            m_all > l, pre[np.maximum(m_all - 1 - l, 0)], NEG
        )
        right_part = np.where(
            m_all < t,
            suf[np.minimum(m_all - l, length - 1)]
            - self._pm0[m_all]
            + self._pp0[m_all]
            - self._pp0[l],
            NEG,
        )
        out = np.maximum(left_part, right_part)
        if self.validate:
            out = self._validated(out, self._direct_lrow(l, t))
        return out

    def rrow(self, t: int, r: int) -> np.ndarray:
        """All ``Rtab(t, m, r)`` for m in [t+1, r], as an int64 array."""
        if not 0 <= t <= r <= self.inst.n:
            raise ValueError(f"right range ({t}, {r}) out of range")
        if r == t:
            return np.zeros(0, dtype=np.int64)
        z = np.arange(t + 1, r + 1)
        base = self._xt[z] - self._xt[t]
        v1 = base + self._pp0[r + 1] - self._pp0[z]
        suf = np.maximum.accumulate(v1[::-1])[::-1]
        u = base - self._pm0[z]
        pre = np.maximum.accumulate(u)
        m_all = np.arange(t + 1, r + 1)
        right_part = suf[m_all - (t + 1)]
        left_part = np.where(
            m_all > t + 1,
            pre[np.maximum(m_all - t - 2, 0)]
            + self._pm0[m_all]
            + self._pp0[r + 1]
            - self._pp0[m_all],
            NEG,
        )
        out = np.maximum(right_part, left_part)
        if self.validate:
            out = self._validated(out, self._direct_rrow(t, r))
        return out

    # -- scalar table accessors -----------------------------------------------

    def Ltab(self, l: int, m: int, t: int) -> int:
        """Left side [l, t-1] of sink t: upper bounds on [l, m), lower beyond."""
        if not 0 <= l <= m <= t <= self.inst.n:
            raise ValueError(f"left table index ({l}, {m}, {t}) out of range")
        if self._lmat is not None:
            return int(self._lmat[l, m, t])
        return int(self.lrow(l, t)[m - l])

    def Rtab(self, t: int, m: int, r: int) -> int:
        """Right side [t+1, r] of sink t: lower bounds on (t, m), upper from m on."""
        if not 0 <= t < m <= r <= self.inst.n:
            raise ValueError(f"right table index ({t}, {m}, {r}) out of range")
        if self._rmat is not None:
            return int(self._rmat[t, m, r])
        return int(self.rrow(t, r)[m - t - 1])

    # -- validation fallbacks ---------------------------------------------------

    def _direct_lrow(self, l: int, t: int) -> np.ndarray:
        inst = self.inst
        out = np.empty(t - l + 1, dtype=np.int64)
        for m in range(l, t + 1):
            w = list(inst.wminus)
            w[l:m] = inst.wplus[l:m]
            res = eval_side(inst, Scenario(w), l, t, t, Side.LEFT, CostModel.SIMPLIFIED)
            out[m - l] = res.time
        return out

    def _direct_rrow(self, t: int, r: int) -> np.ndarray:
        inst = self.inst
        out = np.empty(r - t, dtype=np.int64)
        for m in range(t + 1, r + 1):
            w = list(inst.wminus)
            w[m : r + 1] = inst.wplus[m : r + 1]
            res = eval_side(inst, Scenario(w), t, r, t, Side.RIGHT, CostModel.SIMPLIFIED)
            out[m - t - 1] = res.time
        return out

    def _validated(self, got: np.ndarray, want: np.ndarray) -> np.ndarray:
        if got.shape == want.shape and np.array_equal(got, want):
            return got
        self.validation_mismatches += int(np.count_nonzero(got != want))
        return want


def build_lookup_tables(
    inst: PathInstance,
    materialize: bool = False,
    validate: bool = False,
) -> EvacLookupTables:
    """Build :class:`EvacLookupTables` for an instance."""
    return EvacLookupTables(inst, materialize=materialize, validate=validate)


# ---------------------------------------------------------------------------
# Minimal worst-case regret of every subpath: the R matrix
# ---------------------------------------------------------------------------


@dataclass
class RjiMatrix:
    """R[j, i] = min over sinks of the worst-case regret of subpath [j, i].

    ``R`` and ``sink`` are (n+1) x (n+1) int64 arrays, valid where j <= i
    (other cells hold a large-negative / -1 sentinel).  ``sink[j, i]`` is
    the minimizing sink position actually selected (the sweep keeps the
    rightmost minimizer).  Regrets are signed; R[j, j] equals minus the
    optimal time of the all-lower-bounds scenario.
    """

    R: np.ndarray
    sink: np.ndarray
    counters: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.R.shape[0] - 1

    def regret(self, j: int, i: int) -> int:
        if not 0 <= j <= i <= self.n:
            raise ValueError(f"subpath ({j}, {i}) out of range")
        return int(self.R[j, i])

    def sink_of(self, j: int, i: int) -> int:
        if not 0 <= j <= i <= self.n:
            raise ValueError(f"subpath ({j}, {i}) out of range")
        return int(self.sink[j, i])


def compute_rji(
    inst: PathInstance,
    cache: ScenarioOptCache,
    tables: Optional[EvacLookupTables] = None,
    check_invariants: bool = False,
) -> RjiMatrix:
    """Compute the full matrix of minimal worst-case subpath regrets.

    For part [l, r] with sink t, every worst-case candidate is dominated by
    one that is left-anchored (upper bounds on [l, i), i <= t, rest lower)
    or right-anchored (upper bounds on [i, r], i > t, rest lower), so each
    sink evaluation is two table rows plus an all-lower term.  Per row l the
    minimizing sink only moves right as r grows; a tie-advancing sweep keeps
    the rightmost minimizer, so total sink movement is O(n) per row.

    ``check_invariants=True`` additionally verifies, per cell, that the
    swept sink attains the true minimum over all sinks, and that R is
    monotone under part growth (small inputs only — O(n^4) work).
    """
    inst.require_valid()
    if cache.inst is not inst and cache.inst != inst:
        raise ValueError("cache was built for a different instance")
    n = inst.n
    if tables is None:
        tables = build_lookup_tables(inst)
    cache.complete()
    vals = cache.values
    R = np.full((n + 1, n + 1), NEG, dtype=np.int64)
    sink = np.full((n + 1, n + 1), -1, dtype=np.int64)
    evals = 0
    moves = 0

    for l in range(n + 1):
        lrow_cache: dict[int, np.ndarray] = {}

        def part_regret(t: int, r: int) -> int:
            nonlocal evals
            evals += 1
            lr = lrow_cache.get(t)
            if lr is None:
                lr = tables.lrow(l, t)
                lrow_cache[t] = lr
            rm = tables.rminus(t, r)
            # left-anchored candidates (l, i), i in [l, t]
            left_evac = np.maximum(lr, rm)
            best = int(np.max(left_evac - vals[l, l : t + 1]))
            if t < r:
                # right-anchored candidates (i, r+1), i in [t+1, r]
                rr = tables.rrow(t, r)
                lm = tables.lminus(l, t)
                right_evac = np.maximum(rr, lm)
                cand = int(np.max(right_evac - vals[t + 1 : r + 1, r + 1]))
                if cand > best:
                    best = cand
            return best

        t = l
        for r in range(l, n + 1):
            cur = part_regret(t, r)
            while t < r:
                nxt = part_regret(t + 1, r)
                if nxt <= cur:
                    t += 1
                    cur = nxt
                    moves += 1
                else:
                    break
            R[l, r] = cur
            sink[l, r] = t

        if check_invariants:
            for r in range(l, n + 1):
                full = [part_regret(tt, r) for tt in range(l, r + 1)]
                assert R[l, r] == min(full), (l, r, R[l, r], full)
                assert full[int(sink[l, r]) - l] == R[l, r]

    if check_invariants:
        for j in range(n + 1):
            for i in range(j, n):
                assert R[j, i] <= R[j, i + 1], ("grow right", j, i)
        for j in range(1, n + 1):
            for i in range(j, n + 1):
                assert R[j, i] <= R[j - 1, i], ("grow left", j, i)
        for j in range(n + 1):
            for i in range(j, n):
                assert sink[j, i] <= sink[j, i + 1], ("sink monotone", j, i)

    counters = {"sink_evals": evals, "sink_moves": moves, "rows": n + 1}
    return RjiMatrix(R=R, sink=sink, counters=counters)


# ---------------------------------------------------------------------------
# Binary serialization (versioned header, little-endian int64 payloads)
# ---------------------------------------------------------------------------

_RJI_MAGIC = b"PVRJI\x00\x00\x01"
_CACHE_MAGIC = b"PVOPT\x00\x00\x01"


def _write_i64(f, *vals: int) -> None:
    f.write(struct.pack("<" + "q" * len(vals), *vals))


def _read_i64(f, count: int) -> tuple[int, ...]:
    raw = f.read(8 * count)
    if len(raw) != 8 * count:
        raise ValueError("truncated file")
    return struct.unpack("<" + "q" * count, raw)


def _read_matrix(f, rows: int, cols: int) -> np.ndarray:
    raw = f.read(8 * rows * cols)
    if len(raw) != 8 * rows * cols:
        raise ValueError("truncated file")
    return np.frombuffer(raw, dtype="<i8").reshape(rows, cols).astype(np.int64)


def dump_rji(m: RjiMatrix, path: str) -> None:
    """Write an :class:`RjiMatrix` to a binary file (counters not stored)."""
    rows = m.R.shape[0]
    with open(path, "wb") as f:
        f.write(_RJI_MAGIC)
        _write_i64(f, rows)
        f.write(m.R.astype("<i8").tobytes())
        f.write(m.sink.astype("<i8").tobytes())


def load_rji(path: str) -> RjiMatrix:
    """Read an :class:`RjiMatrix` written by :func:`dump_rji`."""
    with open(path, "rb") as f:
        magic = f.read(8)
        if magic != _RJI_MAGIC:
            raise ValueError(f"bad magic for R matrix file: {magic!r}")
        (rows,) = _read_i64(f, 1)
        if rows <= 0:
            raise ValueError(f"bad matrix size {rows}")
        R = _read_matrix(f, rows, rows)
        sink = _read_matrix(f, rows, rows)
    return RjiMatrix(R=R, sink=sink, counters={})


def dump_opt_cache(cache: ScenarioOptCache, path: str) -> None:
    """Write a fully computed :class:`ScenarioOptCache` to a binary file."""
    cache.complete()
    n = cache.inst.n
    with open(path, "wb") as f:
        f.write(_CACHE_MAGIC)
        _write_i64(f, n, cache.k)
        f.write(cache.values.astype("<i8").tobytes())


def load_opt_cache(path: str, inst: PathInstance) -> ScenarioOptCache:
    """Read a cache written by :func:`dump_opt_cache` for the same instance."""
    with open(path, "rb") as f:
        magic = f.read(8)
        if magic != _CACHE_MAGIC:
            raise ValueError(f"bad magic for scenario cache file: {magic!r}")
        n, k = _read_i64(f, 2)
        if n != inst.n:
            raise ValueError(f"cache is for n={n}, instance has n={inst.n}")
        values = _read_matrix(f, n + 2, n + 2)
    cache = ScenarioOptCache(inst, k, engine="batch")
    cache.values = values
    return cache
