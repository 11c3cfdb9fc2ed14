"""Named verification suites shared by ``isoperim verify`` and the acceptance tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import analysis, dp, oracle
from .fast import ExceptionTable, default_table, fast_range, quasi_explicit_P, quasi_explicit_Q
from .numeric import MAX_N, f_array, f_of, f_ceiling_form, f_nearest_form, f_shifted_ceiling_form, g_array, triangular


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str = ""
    failures: list = field(default_factory=list)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def _result(name, failures, detail=""):
    return SuiteResult(name, not failures, detail, failures[:50])


def oracle_vs_dp(max_n: int = 60) -> SuiteResult:
    t = dp.build_helper_tables(max_n, store=False)
    bad = []
    for n in range(max_n + 1):
        bp, bq = oracle.brute_P(n), oracle.brute_Q(n)
        if (bp, bq) != (t.P[n], t.Q[n]):
            bad.append((n, bp, bq, int(t.P[n]), int(t.Q[n])))
    return _result("oracle = dp", bad, f"0..{max_n}")


def published_rows(N: int = 2000, table: ExceptionTable | None = None) -> SuiteResult:
    table = default_table() if table is None else table
    v = dp.compute_values(N)
    bad = [
        (n, r.P, r.Q, int(v.P[n]), int(v.Q[n]))
        for n, r in sorted(table.records.items())
        if n <= N and (r.P, r.Q) != (v.P[n], v.Q[n])
    ]
    rows = sum(1 for n in table.records if n <= N)
    return _result("dp reproduces exception-table rows", bad, f"{rows} rows with n <= {N}")


def exception_regeneration(N: int = 2000, table: ExceptionTable | None = None) -> SuiteResult:
    table = default_table() if table is None else table
    regen = analysis.regenerate_exceptions(N, dp.compute_values(N))
    d = analysis.diff_exceptions(regen, table, N)
    bad = [(k, v) for k, v in d.items() if v]
    return _result("regenerated exceptions = table", bad, f"{len(regen)} records to {N}")


def fast_vs_dp(N: int = 2000, table: ExceptionTable | None = None) -> SuiteResult:
    v, fr = dp.compute_values(N), fast_range(N, table)
    bad = np.flatnonzero((v.P != fr.P) | (v.Q != fr.Q)).tolist()
    return _result("fast = dp", bad, f"0..{N}")


def quasi_vs_fast(samples: int = 100_000, top: int = 10**12, seed: int = 20110101,
                  table: ExceptionTable | None = None) -> SuiteResult:
    from .fast import fast_P, fast_Q

    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        n = rng.randint(0, min(top, MAX_N))
        qp, qq = quasi_explicit_P(n, table), quasi_explicit_Q(n, table)
        if qp != fast_P(n, table) or qq != fast_Q(n, table) or not -1 <= qq - qp <= 2:
            bad.append(n)
    return _result("quasi-explicit = fast", bad, f"{samples} random n <= {top}")


def direct_vs_dp(N: int = 2000) -> SuiteResult:
    t = dp.build_helper_tables(N)
    wide = t
    bad = []
    for n in range(2, N + 1):
        while True:
            # scans for small n can read volumes above N; widen the tables when they do
            try:
                got = dp.direct_P(n, wide), dp.direct_Q(n, wide)
                break
            except dp.TableCoverageError:
                wide = dp.build_helper_tables(2 * wide.N)
        if got != (t.P[n], t.Q[n]):
            bad.append(n)
    return _result("direct = dp", bad, f"2..{N}")


def bounds(N: int = 10**6, table: ExceptionTable | None = None) -> SuiteResult:
    r = analysis.check_bounds(N, values=fast_range(N, table))
    return _result("proven bounds", r.violations, f"1..{N}, {len(r.checked)} inequalities")


def window(N: int = 10**6, table: ExceptionTable | None = None) -> SuiteResult:
    r = analysis.check_window(fast_range(N, table))
    return _result("-1 <= Q - P <= 2", r.violations, f"0..{N}")


def structure(N_dp: int = 2000, N_fg: int = 10**6) -> SuiteResult:
    bad: list = list(dp.structural_violations(N_dp))
    n = np.arange(1, N_fg + 1, dtype=np.int64)
    f, g = f_array(n), g_array(n)
    if np.any(f * (f + 1) // 2 - g != n) or np.any(g < 0) or np.any(g >= f):
        bad.append("f/g decomposition invariant")
    for k in range(N_fg + 1):
        a = f_of(k)
        if not a == f_ceiling_form(k) == f_shifted_ceiling_form(k) == f_nearest_form(k):
            bad.append(("f representations", k))
    orbit = analysis.check_orbit_bound(N_fg, 6)
    bad.extend(orbit.violations)
    return _result("structural invariants", bad, f"tables to {N_dp}, f/g and orbits to {N_fg}")


def reflection(N: int = 2000, table: ExceptionTable | None = None) -> SuiteResult:
    rows = f_of(N + 1)  # rows 0 .. rows-1 end at or below N
    while triangular(rows - 1) > N:
        rows -= 1
    r = analysis.check_row_reflection(rows, fast_range(triangular(rows - 1), table), table)
    return _result("triangle row reflection", r.violations, f"{rows} rows, {len(r.skipped)} skipped")


ASYMPTOTIC_POINTS = (10**4, 10**6, 10**8, 10**10, 10**12)


def asymptotics(points=ASYMPTOTIC_POINTS, table: ExceptionTable | None = None) -> SuiteResult:
    from .fast import fast_P

    bad = []
    for n in points:
        ratio, _, upper = analysis.asymptotic_ratio(n, fast_P(n, table))
        if not 1 - 1e-2 < ratio < upper:
            bad.append((n, str(ratio), str(upper)))
    return _result("P(n) / sqrt(2n) envelope", bad, f"n in {list(points)}")


def run_all(max_n: int = 2000, oracle_max: int = 60, big: int = 10**6, samples: int = 100_000,
            cross: set[str] | None = None, table: ExceptionTable | None = None, jobs: int = 1) -> list[SuiteResult]:
    """Every suite; ``cross`` limits engine cross-checks to pairs among the named engines."""
    cross = cross or {"brute", "dp", "fast", "direct", "quasi"}
    tasks = []
    if {"brute", "dp"} <= cross:
        tasks.append(lambda: oracle_vs_dp(min(oracle_max, max_n)))
    if "dp" in cross:
        tasks.append(lambda: published_rows(max_n, table))
        tasks.append(lambda: exception_regeneration(max_n, table))
        tasks.append(lambda: structure(max_n, big))
    if {"dp", "fast"} <= cross:
        tasks.append(lambda: fast_vs_dp(max_n, table))
    if {"dp", "direct"} <= cross:
        tasks.append(lambda: direct_vs_dp(max_n))
    if {"fast", "quasi"} <= cross:
        tasks.append(lambda: quasi_vs_fast(samples, table=table))
    if "fast" in cross:
        tasks.append(lambda: bounds(big, table))
        tasks.append(lambda: window(big, table))
        tasks.append(lambda: reflection(max_n, table))
        tasks.append(lambda: asymptotics(table=table))
    if jobs <= 1:
        return [t() for t in tasks]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda t: t(), tasks))
