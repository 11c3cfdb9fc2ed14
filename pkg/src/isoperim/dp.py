"""Exact P and Q over a range via the helper minima p(n;k), sigma(n;k), q(n;k).

The tables are filled one column (fixed k) at a time with numpy.  Column k of p
only reads columns k-1, k-2 and l-2 for those l whose block {l, ..., k} fits
in the volume range, so a sliding window of recent columns is enough to drive
the recurrence.  Finished columns are folded into a run-length store keyed by
n, which keeps every cell queryable in roughly O(N) memory because p(n; .) and
q(n; .) change value only a handful of times as k grows.

A cell-by-cell fill into plain 2-D arrays (``build_dense_tables``) is kept
for small N and used to validate the compressed layout.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .numeric import f_of, triangular
from .values import ValueTable

log = logging.getLogger(__name__)

#: Sentinel strictly above every feasible value.  Sums of the form
#: INF + k + l stay inside int32 for any N we could hold in memory.
INF = 1 << 30
_DTYPE = np.int32

DEFAULT_MEMORY_BUDGET_MB = 2048


class MemoryBudgetError(MemoryError):
    pass


class TableCoverageError(LookupError):
    pass


def _saturate(x: int) -> int:
    return INF if x >= INF else x


class RunLengthTable:
    """Values h(n; k) stored as, for each n, the list of (k, value) change points."""

    def __init__(self, name: str, N: int, k_lo: int, below: np.ndarray):
        self.name = name
        self.N = N
        self.k_lo = k_lo
        self.k_hi = k_lo
        self._below = below.astype(_DTYPE)
        self._keys = np.full((2, N + 1), k_lo, dtype=np.int32)
        self._vals = np.zeros((2, N + 1), dtype=_DTYPE)
        self._vals[0] = self._below
        self._count = np.ones(N + 1, dtype=np.int32)
        self._last = self._below.copy()

    def push(self, k: int, column: np.ndarray) -> None:
        if k != self.k_hi + 1:
            raise ValueError(f"{self.name}: columns must arrive in order")
        changed = np.flatnonzero(column != self._last)
        if changed.size:
            layer = self._count[changed]
            need = int(layer.max()) + 1
            if need > self._keys.shape[0]:
                grow = need - self._keys.shape[0]
                self._keys = np.vstack([self._keys, np.zeros((grow, self.N + 1), np.int32)])
                self._vals = np.vstack([self._vals, np.zeros((grow, self.N + 1), _DTYPE)])
            self._keys[layer, changed] = k
            self._vals[layer, changed] = column[changed]
            self._count[changed] += 1
            self._last[changed] = column[changed]
        self.k_hi = k

    def get(self, n: int, k: int) -> int:
        if n < 0:
            return INF
        if n > self.N:
            raise TableCoverageError(f"{self.name}({n}; {k}) lies outside the table (N = {self.N})")
        if k < self.k_lo:
            return int(self._below[n])
        k = min(k, self.k_hi)
        for r in range(int(self._count[n]) - 1, -1, -1):
            if self._keys[r, n] <= k:
                return int(self._vals[r, n])
        raise AssertionError("unreachable: first run starts at k_lo")

    def runs(self, n: int) -> list[tuple[int, int]]:
        c = int(self._count[n])
        return [(int(self._keys[r, n]), int(self._vals[r, n])) for r in range(c)]

    def max_runs(self) -> int:
        return int(self._count.max())

    def nbytes(self) -> int:
        return self._keys.nbytes + self._vals.nbytes + self._count.nbytes


class BandedTable:
    """Column k kept only for n in [k, min(T(k), N)]; every other cell is infinite.

    Used for sigma, which changes value with nearly every k and so does not
    run-length compress.
    """

    def __init__(self, name: str, N: int):
        self.name = name
        self.N = N
        self._cols: list[np.ndarray] = []  # index k >= 0

    def push(self, k: int, column: np.ndarray) -> None:
        if k < 0:
            return
        if k != len(self._cols):
            raise ValueError(f"{self.name}: columns must arrive in order")
        hi = min(triangular(k), self.N)
        self._cols.append(column[k : hi + 1].copy())

    def get(self, n: int, k: int) -> int:
        if n < 0 or k < 0:
            return INF
        if n > self.N:
            raise TableCoverageError(f"{self.name}({n}; {k}) lies outside the table (N = {self.N})")
        if k >= len(self._cols):
            return INF  # k > N >= n
        col = self._cols[k]
        i = n - k
        return int(col[i]) if 0 <= i < col.shape[0] else INF

    def nbytes(self) -> int:
        return sum(c.nbytes for c in self._cols)


def banded_cells(N: int) -> int:
    return sum(min(triangular(k), N) - k + 1 for k in range(N + 1))


class DenseTable:
    """Plain 2-D storage, rows n in [0, N], columns k in [k_lo, N]."""

    def __init__(self, name: str, data: np.ndarray, k_lo: int, below: np.ndarray):
        self.name = name
        self.N = data.shape[0] - 1
        self.k_lo = k_lo
        self.k_hi = k_lo + data.shape[1] - 1
        self.data = data
        self._below = below

    def get(self, n: int, k: int) -> int:
        if n < 0:
            return INF
        if n > self.N:
            raise TableCoverageError(f"{self.name}({n}; {k}) lies outside the table (N = {self.N})")
        if k < self.k_lo:
            return int(self._below[n])
        return int(self.data[n, min(k, self.k_hi) - self.k_lo])


@dataclass
class HelperTables:
    N: int
    p: RunLengthTable | DenseTable
    sigma: BandedTable | DenseTable
    q: RunLengthTable | DenseTable
    P: np.ndarray
    Q: np.ndarray
    stored: bool = True

    def _need(self, name: str, n: int, k: int) -> None:
        if not self.stored:
            raise TableCoverageError(f"{name}({n}; {k}) requested but helper tables were not kept (store=False)")

    def p_at(self, n: int, k: int) -> int:
        self._need("p", n, k)
        return self.p.get(n, k)

    def q_at(self, n: int, k: int) -> int:
        self._need("q", n, k)
        return self.q.get(n, k)

    def sigma_at(self, n: int, k: int) -> int:
        self._need("sigma", n, k)
        # k > n: the set would have to contain k, whose volume alone exceeds n
        if n >= 0 and k > n:
            return INF
        return self.sigma.get(n, k)


def _empty_only(N: int) -> np.ndarray:
    col = np.full(N + 1, INF, dtype=_DTYPE)
    col[0] = 0
    return col


def _lowest_block_start(k: int, N: int) -> int:
    """Least l >= 0 with T(k) - T(l-1) <= N (the block {l..k} fits in volume N)."""
    excess = triangular(k) - N
    if excess <= 0:
        return 0
    # want T(l-1) >= excess
    m = f_of(excess)
    return m + 1


def _relax(col: np.ndarray, src: np.ndarray, shift: int, add: int) -> None:
    n1 = col.shape[0]
    if shift >= n1:
        return
    np.minimum(col[shift:], src[: n1 - shift] + add, out=col[shift:])


def window_columns(N: int) -> int:
    """Peak number of p columns held by the sliding window."""
    peak = 3
    for k in range(1, N + 1):
        keep_from = max(-2, min(k - 1, _lowest_block_start(k + 1, N) - 2))
        peak = max(peak, k - keep_from + 1)
    return peak


def estimate_footprint(N: int, store: bool = True, runs: int = 4) -> int:
    """Rough bytes needed by ``build_helper_tables``."""
    cells = N + 1
    window = window_columns(N) + 6
    total = window * cells * 4 + 2 * cells * 8
    if store:
        total += 2 * runs * cells * 8 + 2 * cells * 12 + 4 * banded_cells(N)
    return total


def _check_budget(N: int, store: bool, budget_mb: float) -> None:
    need = estimate_footprint(N, store)
    if need > budget_mb * 2**20:
        raise MemoryBudgetError(
            f"helper tables for N = {N} need about {need / 2**20:.0f} MiB, "
            f"over the {budget_mb:.0f} MiB budget"
        )


def _p_columns(N: int):
    """Yield (k, column of p(.; k)) for k = -2 .. N."""
    base = _empty_only(N)
    cols = {-2: base, -1: base, 0: base}
    for k in (-2, -1, 0):
        yield k, base
    for k in range(1, N + 1):
        tk = triangular(k)
        col = cols[k - 1].copy()
        _relax(col, cols[k - 2], k, k)  # block {k} alone, k-1 absent
        # block {l, ..., k} with l-1 absent; descending l until the block outgrows N
        for l in range(k - 1, -1, -1):
            shift = tk - triangular(l - 1)
            if shift > N:
                break
            _relax(col, cols[l - 2], shift, k + l)
        np.minimum(col, INF, out=col)
        cols[k] = col
        keep_from = min(k - 1, _lowest_block_start(k + 1, N) - 2)
        for old in [j for j in cols if j < keep_from]:
            del cols[old]
        yield k, col


def _sigma_q_columns(N: int):
    """Yield (k, sigma column, q column) for k = -3 .. N."""
    q_base = _empty_only(N)
    inf_col = np.full(N + 1, INF, dtype=_DTYPE)
    sig = {-3: inf_col, -2: inf_col, -1: inf_col}
    q = {-3: q_base, -2: q_base, -1: q_base}
    for k in (-3, -2, -1):
        yield k, inf_col, q_base
    for k in range(0, N + 1):
        s = np.full(N + 1, INF, dtype=_DTYPE)
        if k <= N:
            s[k] = 2 * k  # boundary data: sigma(0;0) = 0, sigma(k;k) = 2k
        if k >= 2 and k < N:
            m = N - k  # n = k+1 .. N  <->  n-k = 1 .. m
            a = q[k - 3][1 : m + 1] + (k - 1)
            b = sig[k - 2][1 : m + 1]
            c = sig[k - 1][1 : m + 1] - k
            best = np.minimum(np.minimum(a, b), c) + (k + 1)
            s[k + 1 :] = np.minimum(best, INF)
        qc = np.minimum(q[k - 1], s)
        qc[0] = 0
        sig[k] = s
        q[k] = qc
        for old in [j for j in sig if j < k - 3]:
            del sig[old], q[old]
        yield k, s, qc


def build_helper_tables(
    N: int, store: bool = True, memory_budget_mb: float = DEFAULT_MEMORY_BUDGET_MB
) -> HelperTables:
    """Fill p, sigma and q for volumes 0..N and read off P and Q.

    With ``store=False`` only P and Q are kept; the helper tables are left empty
    (queries then fail), which is what range sweeps want.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    _check_budget(N, store, memory_budget_mb)
    below = _empty_only(N)
    p_tab = RunLengthTable("p", N, -2, below)
    s_tab = BandedTable("sigma", N)
    q_tab = RunLengthTable("q", N, -3, below)
    P = np.zeros(N + 1, dtype=np.int64)
    Q = np.zeros(N + 1, dtype=np.int64)

    for k, col in _p_columns(N):
        if k >= 0:
            P[k] = col[k]
        if store and k > -2:
            p_tab.push(k, col)
    for k, s, qc in _sigma_q_columns(N):
        if k >= 0:
            Q[k] = qc[k]
        if store and k > -3:
            s_tab.push(k, s)
            q_tab.push(k, qc)
    if np.any(P >= INF) or np.any(Q >= INF):
        raise AssertionError("infinite P or Q for a feasible volume")
    log.debug("helper tables N=%d: p runs<=%d q runs<=%d", N, p_tab.max_runs(), q_tab.max_runs())
    return HelperTables(N, p_tab, s_tab, q_tab, P, Q, stored=store)


def build_dense_tables(N: int) -> HelperTables:
    """Cell-by-cell fill of all three helpers into 2-D arrays.  O(N^3); small N only."""
    K = N + 4  # columns k = -3 .. N
    below = _empty_only(N)
    p = np.full((N + 1, K), INF, dtype=np.int64)
    sig = np.full((N + 1, K), INF, dtype=np.int64)
    q = np.full((N + 1, K), INF, dtype=np.int64)

    def P_(n, k):
        if n < 0:
            return INF
        if n == 0:
            return 0
        if k <= 0:
            return INF
        return int(p[n, k + 3])

    def S_(n, k):
        if n < 0 or k < 0 or k > n:
            return INF
        return int(sig[n, k + 3])

    def Q_(n, k):
        if n < 0:
            return INF
        if n == 0:
            return 0
        if k <= 0:
            return INF
        return int(q[n, k + 3])

    for n in range(N + 1):
        for k in range(-3, N + 1):
            c = k + 3
            # p
            if n == 0:
                p[n, c] = 0
            elif k >= 1:
                best = min(P_(n, k - 1), k + P_(n - k, k - 2))
                for l in range(k):
                    rest = n - (k * (k + 1) - l * (l - 1)) // 2
                    best = min(best, k + l + P_(rest, l - 2))
                p[n, c] = _saturate(best)
            # sigma
            if n == 0 and k == 0:
                sig[n, c] = 0
            elif n == k and n >= 1:
                sig[n, c] = 2 * n
            elif n >= 2 and 2 <= k < n:
                best = min(k - 1 + Q_(n - k, k - 3), S_(n - k, k - 2), S_(n - k, k - 1) - k)
                sig[n, c] = _saturate(k + 1 + best)
            # q, as a min over sigma(n; l) for 1 <= l <= k
            if n == 0:
                q[n, c] = 0
            elif k >= 1:
                q[n, c] = min(Q_(n, k - 1), S_(n, k))
    P = np.array([p[n, n + 3] for n in range(N + 1)], dtype=np.int64)
    Q = np.array([q[n, n + 3] for n in range(N + 1)], dtype=np.int64)
    return HelperTables(
        N,
        DenseTable("p", p, -3, below),
        DenseTable("sigma", sig, -3, np.full(N + 1, INF)),
        DenseTable("q", q, -3, below),
        P,
        Q,
    )


def compute_values(N: int, memory_budget_mb: float = DEFAULT_MEMORY_BUDGET_MB) -> ValueTable:
    """P[0..N] and Q[0..N] in one sweep, without keeping the helper tables."""
    t = build_helper_tables(N, store=False, memory_budget_mb=memory_budget_mb)
    return ValueTable(N, t.P, t.Q, "dp")


def compute_P_range(N: int, tables: HelperTables | None = None) -> ValueTable:
    """P(n) = min{p(n; n-1), n}, P(0) = 0."""
    if tables is None:
        tables = build_helper_tables(N, store=True)
    if tables.N < N:
        raise TableCoverageError(f"tables reach {tables.N}, need {N}")
    P = np.zeros(N + 1, dtype=np.int64)
    for n in range(1, N + 1):
        P[n] = min(tables.p_at(n, n - 1), n)
    return ValueTable(N, P, None, "dp")


def compute_Q_range(N: int, tables: HelperTables | None = None) -> ValueTable:
    """Q(n) = min over 1 <= l <= n of sigma(n; l), Q(0) = 0."""
    if tables is None:
        tables = build_helper_tables(N, store=True)
    if tables.N < N:
        raise TableCoverageError(f"tables reach {tables.N}, need {N}")
    Q = np.zeros(N + 1, dtype=np.int64)
    for n in range(1, N + 1):
        Q[n] = tables.q_at(n, n)
    return ValueTable(N, None, Q, "dp")


def direct_P(n: int, tables: HelperTables, pruning_cap: int | None = None) -> int:
    """Minimise over the largest element m of the set, n >= 2.

    Each candidate is at least m, so the scan stops once m reaches the best value
    found (``pruning_cap`` seeds that value; default n, from the singleton {n}).
    """
    if n < 2:
        raise ValueError("direct_P needs n >= 2")
    best = n if pruning_cap is None else pruning_cap
    m = f_of(n)  # smaller m cannot hold volume n
    while m < best:
        rest = triangular(m) - n
        cand = min(m + tables.q_at(rest, m - 2), tables.sigma_at(rest, m - 1))
        best = min(best, cand)
        m += 1
    return best


def direct_Q(n: int, tables: HelperTables, pruning_cap: int | None = None) -> int:
    """Same scan for the complement perimeter; default cap 2n from {n}."""
    if n < 2:
        raise ValueError("direct_Q needs n >= 2")
    best = 2 * n if pruning_cap is None else pruning_cap
    m = f_of(n)
    while 1 + m < best:
        rest = triangular(m) - n
        best = min(best, 1 + m + tables.p_at(rest, m - 1))
        m += 1
    return best


def structural_violations(N: int) -> list[str]:
    """Stream every column and check the shape the helper minima must have.

    p and q never increase with k; all three helpers are infinite once T(k) < n
    (no subset of {0..k} is heavy enough); p(n; k) stops changing for k >= n;
    sigma(k; k) = 2k.
    """
    problems: list[str] = []
    n = np.arange(N + 1)
    prev = None
    for k, col in _p_columns(N):
        if k >= 1:
            heavy = n > triangular(k)
            if np.any(col[heavy] != INF):
                problems.append(f"p(n; {k}) finite for some n > T({k})")
            if np.any(col > prev):
                problems.append(f"p(.; {k}) exceeds p(.; {k - 1})")
            if np.any(col[:k] != prev[:k]):
                problems.append(f"p(n; {k}) changed for some n < {k}")
        prev = col
    prev_q = None
    for k, s, qc in _sigma_q_columns(N):
        if k < 1:
            prev_q = qc
            continue
        heavy = n > triangular(k)
        if s[k] != 2 * k:
            problems.append(f"sigma({k}; {k}) = {s[k]} != {2 * k}")
        if np.any(s[heavy] != INF) or np.any(qc[heavy] != INF):
            problems.append(f"sigma or q finite at k = {k} for some n > T({k})")
        if np.any(qc > prev_q):
            problems.append(f"q(.; {k}) exceeds q(.; {k - 1})")
        prev_q = qc
    return problems
