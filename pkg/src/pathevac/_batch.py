"""Vectorized optimal k-sink evacuation times for many scenarios at once.

Used to build the scenario-optimum cache over all O(n^2) candidate scenarios
(simplified cost model).  Strategy: per-scenario binary search on the answer
V, with a vectorized greedy feasibility check — repeatedly extend the current
part as far right as possible subject to both sides of its best sink meeting
V — executed simultaneously for every scenario lane.

A candidate scenario (t1, t2) takes upper weight bounds on [t1, t2) and lower
bounds elsewhere, so every prefix-sum/profile quantity it needs decomposes
into at most three segments of four static arrays; range maxima over those
come from O(n log n) sparse tables, giving O(1) work per probe and lane.
All arithmetic is int64-exact.
"""

from __future__ import annotations

import numpy as np

from .model import PathInstance

__all__ = ["ScenarioBatchEngine", "NEG"]

NEG = -(1 << 62)


class _SparseMax:
    """Static range-maximum over an int64 array with vectorized queries."""

    def __init__(self, arr: np.ndarray):
        n = arr.shape[0]
        levels = max(1, n.bit_length())
        st = np.full((levels, n), NEG, dtype=np.int64)
        st[0] = arr
        span = 1
        for j in range(1, levels):
            m = n - 2 * span + 1
            if m > 0:
                st[j, :m] = np.maximum(st[j - 1, :m], st[j - 1, span:span + m])
            span *= 2
        self.st = st
        lg = np.zeros(n + 1, dtype=np.int64)
        for i in range(2, n + 1):
            lg[i] = lg[i >> 1] + 1
        self.lg = lg

    def query(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise max over [a, b]; NEG where a > b."""
        valid = a <= b
        aa = np.where(valid, a, 0)
        bb = np.where(valid, b, 0)
        j = self.lg[bb - aa + 1]
        span = np.left_shift(np.int64(1), j)
        out = np.maximum(self.st[j, aa], self.st[j, bb - span + 1])
        return np.where(valid, out, NEG)


class ScenarioBatchEngine:
    """Optimal k-sink times (simplified model) for batches of (t1, t2) lanes."""

    def __init__(self, inst: PathInstance):
        n = inst.n
        x = np.asarray(inst.coords, dtype=np.int64)
        wm = np.asarray(inst.wminus, dtype=np.int64)
        wp = np.asarray(inst.wplus, dtype=np.int64)
        tau = int(inst.tau)
        xt = x * tau
        pm0 = np.zeros(n + 2, dtype=np.int64)
        pm0[1:] = np.cumsum(wm)
        dp0 = np.zeros(n + 2, dtype=np.int64)
        dp0[1:] = np.cumsum(wp - wm)
        self.n = n
        self.xt = xt
        self.pm0 = pm0
        self.dp0 = dp0
        # Left profile A_s(z) = (scenario prefix weight through z) - x_z*tau and
        # right profile B_s(z) = x_z*tau - (prefix weight through z-1), each
        # expressed via two static arrays (all-lower / all-upper-so-far).
        self.stA1 = _SparseMax(pm0[1:] - xt)
        self.stA2 = _SparseMax(pm0[1:] + dp0[1:] - xt)
        self.stB1 = _SparseMax(xt - pm0[:-1])
        self.stB2 = _SparseMax(xt - pm0[:-1] - dp0[:-1])
        self._rounds = max(1, (n + 1).bit_length())

    # -- scenario-parameterized primitives (all arguments are int64 arrays) --

    def _pw(self, z, t1, t2):
        """Prefix weight through vertex z (z may be -1) under scenario (t1, t2)."""
        zc = np.clip(z, t1 - 1, t2 - 1)
        return self.pm0[z + 1] + self.dp0[zc + 1] - self.dp0[t1]

    def _rmax_a(self, a, b, t1, t2):
        s1 = self.stA1.query(a, np.minimum(b, t1 - 1))
        s2 = self.stA2.query(np.maximum(a, t1), np.minimum(b, t2 - 1)) - self.dp0[t1]
        s3 = self.stA1.query(np.maximum(a, t2), b) + (self.dp0[t2] - self.dp0[t1])
        return np.maximum(np.maximum(s1, s2), s3)

    def _rmax_b(self, a, b, t1, t2):
        s1 = self.stB1.query(a, np.minimum(b, t1))
        s2 = self.stB2.query(np.maximum(a, t1 + 1), np.minimum(b, t2)) + self.dp0[t1]
        s3 = self.stB1.query(np.maximum(a, t2 + 1), b) - (self.dp0[t2] - self.dp0[t1])
        return np.maximum(np.maximum(s1, s2), s3)

    def theta_l(self, pos, t, t1, t2):
        """Left-side time of sink t for the part starting at pos (0 if t == pos)."""
        rm = self._rmax_a(pos, t - 1, t1, t2)
        val = self.xt[t] + rm - self._pw(pos - 1, t1, t2)
        return np.where(t > pos, val, 0)

    def theta_r(self, t, e, t1, t2):
        """Right-side time of sink t for the part ending at e (0 if e == t)."""
        rm = self._rmax_b(t + 1, e, t1, t2)
        val = self._pw(e, t1, t2) - self.xt[t] + rm
        return np.where(e > t, val, 0)

    # -- solver ---------------------------------------------------------------

    def _feasible(self, k, v, t1, t2):
        """Per lane: can k parts each finish within v?  (greedy extension)."""
        n = self.n
        size = v.shape[0]
        pos = np.zeros(size, dtype=np.int64)
        full_n = np.full(size, n, dtype=np.int64)
        for _ in range(min(k, n + 1)):
            active = pos <= n
            posc = np.where(active, pos, n)
            # Largest sink t with left side within v (t = posc always works).
            tlo = posc.copy()
            thi = full_n.copy()
            for _r in range(self._rounds):
                m = (tlo + thi + 1) >> 1
                ok = self.theta_l(posc, m, t1, t2) <= v
                tlo = np.where(ok, m, tlo)
                thi = np.where(ok, thi, m - 1)
            tl = tlo
            # Largest part end e whose best sink min(e, tl) meets v on the right.
            elo = posc.copy()
            ehi = full_n.copy()
            for _r in range(self._rounds):
                m = (elo + ehi + 1) >> 1
                tp = np.minimum(m, tl)
                ok = self.theta_r(tp, m, t1, t2) <= v
                elo = np.where(ok, m, elo)
                ehi = np.where(ok, ehi, m - 1)
            pos = np.where(active, elo + 1, pos)
        return pos > n

    def solve(self, k: int, t1s, t2s) -> np.ndarray:
        """Optimal k-sink time (simplified model) for every lane (t1, t2)."""
        t1 = np.ascontiguousarray(np.asarray(t1s, dtype=np.int64))
        t2 = np.ascontiguousarray(np.asarray(t2s, dtype=np.int64))
        if t1.shape != t2.shape:
            raise ValueError("t1s and t2s must have equal shapes")
        if t1.size == 0:
            return np.zeros(0, dtype=np.int64)
        if np.any((t1 < 0) | (t1 > t2) | (t2 > self.n + 1)):
            raise ValueError("descriptor out of range")
        n = self.n
        size = t1.shape[0]
        lo = np.zeros(size, dtype=np.int64)
        hi = (self.xt[n] - self.xt[0]) + self._pw(np.full(size, n), t1, t2)
        while True:
            open_ = lo < hi
            if not np.any(open_):
                break
            v = (lo + hi) >> 1
            ok = self._feasible(k, v, t1, t2)
            hi = np.where(open_ & ok, v, hi)
            lo = np.where(open_ & ~ok, v + 1, lo)
        return lo
