"""Verification suites over tabulated P/Q values, plus figure data.

Inequalities involving square roots are decided with integer predicates
(squaring both sides).  The one bound that mixes fourth roots and iterated
logarithms is screened in float64 against a lowered right-hand side and every
row that does not clear the screen is re-decided with interval arithmetic, so
a false claim can never pass.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

import mpmath
import numpy as np

from .fast import ExceptionRecord, ExceptionTable, default_table, fast_range
from .numeric import f_array, f_of, g_array, g_of, triangular
from .values import ValueTable

SERIES = ("P_minus_f", "Q_minus_f_minus_1", "FG", "raw_P", "raw_Q")


@dataclass
class BoundReport:
    n_max: int
    violations: list[tuple[int, str, int, str]] = field(default_factory=list)
    checked: dict[str, int] = field(default_factory=dict)
    skipped: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, name: str, ns, lhs, rhs) -> None:
        for n, a, b in zip(ns, lhs, rhs):
            self.violations.append((int(n), name, int(a), str(b)))

    def to_json(self) -> str:
        d = asdict(self)
        d["pass"] = self.passed
        return json.dumps(d, sort_keys=True)


def values_for(N: int, engine: str = "fast", table: ExceptionTable | None = None) -> ValueTable:
    if engine == "fast":
        return fast_range(N, table)
    if engine == "dp":
        from .dp import compute_values

        return compute_values(N)
    raise ValueError(f"engine {engine!r} cannot tabulate a range")


def regenerate_exceptions(N: int, values: ValueTable | None = None) -> list[ExceptionRecord]:
    """Every n <= N at which either recursive identity fails, from DP values."""
    if values is None:
        values = values_for(N, "dp")
    P, Q = values.P[: N + 1], values.Q[: N + 1]
    n = np.arange(N + 1)
    f, g = f_array(n), g_array(n)
    p_fail = P != f + Q[g]
    q_fail = Q != 1 + f + P[g]
    return [
        ExceptionRecord(int(k), int(P[k]), int(Q[k]), bool(p_fail[k]), bool(q_fail[k]))
        for k in np.flatnonzero(p_fail | q_fail)
    ]


def diff_exceptions(regenerated: list[ExceptionRecord], table: ExceptionTable, N: int) -> dict:
    """Compare regenerated records with the table rows up to N."""
    mine = {r.n: r for r in regenerated}
    theirs = {n: r for n, r in table.records.items() if n <= N}
    return {
        "extra": sorted(set(mine) - set(theirs)),
        "missing": sorted(set(theirs) - set(mine)),
        "changed": sorted(n for n in set(mine) & set(theirs) if mine[n] != theirs[n]),
    }


# --- bounds -------------------------------------------------------------------

_TWO_34 = 2.0**0.75


def _upper_rhs_float(n: np.ndarray) -> np.ndarray:
    nf = n.astype(np.float64)
    return np.sqrt(2 * nf) + (_TWO_34 * nf**0.25 + 1) * (np.log2(np.log2(nf / 2)) - 1) + 7


def upper_rhs_interval(n: int, dps: int = 40):
    """Interval enclosing sqrt(2n) + (2^(3/4) n^(1/4) + 1)(log2 log2(n/2) - 1) + 7."""
    iv = mpmath.iv
    saved = iv.dps
    iv.dps = dps
    try:
        x = iv.mpf(n)
        two = iv.mpf(2)
        ln2 = iv.log(two)
        loglog = iv.log(iv.log(x / 2) / ln2) / ln2
        fourth_root = iv.sqrt(iv.sqrt(x))
        return iv.sqrt(2 * x) + (iv.exp(iv.mpf(3) / 4 * ln2) * fourth_root + 1) * (loglog - 1) + 7
    finally:
        iv.dps = saved


def _check_upper(report: BoundReport, name: str, n: np.ndarray, vals: np.ndarray) -> None:
    rhs = _upper_rhs_float(n)
    # float64 error here is a few ulps of the largest term; 1e-9 relative dwarfs it
    lowered = rhs - 1e-9 * (np.abs(rhs) + 8 * np.sqrt(n) + 8) - 1e-9
    suspect = np.flatnonzero(vals > lowered)
    for i in suspect:
        enclosure = upper_rhs_interval(int(n[i]))
        if not vals[i] <= enclosure.a:
            report.violations.append((int(n[i]), name, int(vals[i]), str(enclosure)))
    report.checked[name] = int(n.size)


def check_bounds(N: int, engine: str = "fast", values: ValueTable | None = None) -> BoundReport:
    """Evaluate every proven inequality on P and Q for 1 <= n <= N."""
    if values is None:
        values = values_for(N, engine)
    P, Q = values.P[: N + 1], values.Q[: N + 1]
    report = BoundReport(N)
    n = np.arange(1, N + 1, dtype=np.int64)
    p, q = P[1:], Q[1:]
    f, g = f_array(n), g_array(n)

    def check(name, ns, ok, lhs, rhs):
        bad = ~ok
        report.add(name, ns[bad], lhs[bad], rhs[bad])
        report.checked[name] = int(ok.size)

    # sqrt(2n) - 1/2 < P  <=>  (2P + 1)^2 > 8n
    check("P > sqrt(2n) - 1/2", n, (2 * p + 1) ** 2 > 8 * n, p, 8 * n)
    # sqrt(2n) + 1/2 < Q  <=>  2Q - 1 > 0 and (2Q - 1)^2 > 8n
    check("Q > sqrt(2n) + 1/2", n, (2 * q - 1 > 0) & ((2 * q - 1) ** 2 > 8 * n), q, 8 * n)
    check("P >= f(n)", n, p >= f, p, f)
    check("Q >= f(n) + 1", n, q >= f + 1, q, f + 1)
    check("P <= f(n) + Q(g(n))", n, p <= f + Q[g], p, f + Q[g])
    check("Q <= 1 + f(n) + P(g(n))", n, q <= 1 + f + P[g], q, 1 + f + P[g])

    big = n > 2
    ns = n[big]
    _check_upper(report, "P <= asymptotic upper bound", ns, p[big])
    _check_upper(report, "Q <= asymptotic upper bound", ns, q[big])

    ge2 = n >= 2
    ns = n[ge2]
    fs, gs, ps, qs = f[ge2], g[ge2], p[ge2], q[ge2]
    s = gs + fs + 1
    x = ps - fs
    ok_p = (x >= Q[gs]) | (x >= fs - 2) | ((2 * x - 3 >= 0) & ((2 * x - 3) ** 2 >= 8 * s))
    check("P >= f + min{Q(g), sqrt(2(g+f+1)) + 3/2, f - 2}", ns, ok_p, ps, fs)
    y = qs - 1 - fs
    ok_q = (y >= P[gs]) | ((2 * y - 1 >= 0) & ((2 * y - 1) ** 2 >= 8 * s))
    check("Q >= 1 + f + min{P(g), sqrt(2(g+f+1)) + 1/2}", ns, ok_q, qs, fs)
    report.violations.sort()
    return report


def check_window(values: ValueTable) -> BoundReport:
    """-1 <= Q(n) - P(n) <= 2 on the whole table."""
    d = values.Q - values.P
    report = BoundReport(values.N)
    bad = np.flatnonzero((d < -1) | (d > 2))
    report.add("-1 <= Q - P <= 2", bad, d[bad], ["[-1, 2]"] * bad.size)
    report.checked["-1 <= Q - P <= 2"] = values.N + 1
    return report


def check_orbit_bound(N: int, max_iter: int = 6) -> BoundReport:
    """g^L(n) <= 2 (n/2)^(1/2^L), i.e. g^L(n)^(2^L) <= n 2^(2^L - 1), for n <= N, L <= max_iter."""
    report = BoundReport(N)
    n = np.arange(N + 1, dtype=np.int64)
    x = n.copy()
    logn = np.log2(np.maximum(n, 1).astype(np.float64))
    for L in range(max_iter + 1):
        e = 2**L
        lhs = np.where(x > 0, e * np.log2(np.maximum(x, 1).astype(np.float64)), -np.inf)
        rhs = logn + (e - 1)
        # clear passes in log space; anything within the margin is decided exactly
        unsure = np.flatnonzero(~(lhs < rhs - 1e-9) & (x > 0))
        for i in unsure:
            xi, ni = int(x[i]), int(n[i])
            if not xi**e <= ni * 2 ** (e - 1):
                report.violations.append((ni, f"g^{L}(n) orbit bound", xi, f"2*({ni}/2)^(1/{e})"))
        report.checked[f"g^{L}(n) orbit bound"] = N + 1
        x = g_array(x)
    return report


def asymptotic_ratio(n: int, P: int, dps: int = 50) -> tuple[mpmath.mpf, mpmath.mpf, mpmath.mpf]:
    """(P / sqrt(2n), 1 - 1/(2 sqrt(2n)), 1 + u(n)) with u the upper-bound slack over sqrt(2n)."""
    with mpmath.workdps(dps):
        root = mpmath.sqrt(2 * mpmath.mpf(n))
        slack = (mpmath.mpf(2) ** 0.75 * mpmath.mpf(n) ** 0.25 + 1) * (mpmath.log(mpmath.log(mpmath.mpf(n) / 2, 2), 2) - 1) + 7
        return P / root, 1 - 1 / (2 * root), 1 + slack / root


# --- triangles ----------------------------------------------------------------


@dataclass
class TriangleArray:
    series: str
    rows: list[list]


def row_range(r: int) -> range:
    """The n with f(n) = r, in increasing order (row 0 holds only n = 0)."""
    if r == 0:
        return range(0, 1)
    return range(triangular(r - 1) + 1, triangular(r) + 1)


def triangle(series: str, row_count: int, values: ValueTable | None = None) -> TriangleArray:
    if series not in SERIES:
        raise ValueError(f"unknown series {series!r}")
    if row_count < 1:
        raise ValueError("row_count must be >= 1")
    top = triangular(row_count - 1)
    if values is None and series != "FG":
        values = fast_range(top)
    rows = []
    for r in range(row_count):
        row = []
        for n in row_range(r):
            if series == "FG":
                row.append((f_of(n), g_of(n)))
            elif series == "P_minus_f":
                row.append(int(values.P[n]) - f_of(n))
            elif series == "Q_minus_f_minus_1":
                row.append(int(values.Q[n]) - f_of(n) - 1)
            elif series == "raw_P":
                row.append(int(values.P[n]))
            else:
                row.append(int(values.Q[n]))
        rows.append(row)
    return TriangleArray(series, rows)


def check_row_reflection(
    row_count: int, values: ValueTable | None = None, table: ExceptionTable | None = None
) -> BoundReport:
    """Rows of P - f read right to left reproduce Q(0), Q(1), ...; rows of Q - f - 1 reproduce P.

    Entries whose n has the relevant identity failing in the exception table are
    skipped and listed in ``skipped``.
    """
    table = default_table() if table is None else table
    top = triangular(row_count - 1)
    if values is None:
        values = fast_range(top, table)
    report = BoundReport(top)
    skipped = set()
    count = 0
    for r in range(row_count):
        for n in row_range(r):
            t = g_of(n)  # right-to-left position within the row
            f = f_of(n)
            count += 1
            if table.p_override(n) is not None:
                skipped.add(n)
            elif values.P[n] - f != values.Q[t]:
                report.violations.append((n, "P(n) - f(n) = Q(t)", int(values.P[n] - f), str(values.Q[t])))
            if table.q_override(n) is not None:
                skipped.add(n)
            elif values.Q[n] - f - 1 != values.P[t]:
                report.violations.append((n, "Q(n) - f(n) - 1 = P(t)", int(values.Q[n] - f - 1), str(values.P[t])))
    report.checked["row reflection"] = count
    report.skipped = sorted(skipped)
    return report


def emit_drift_series(N: int, series: str, values: ValueTable | None = None) -> str:
    """CSV with columns n,value,drift where drift is P - f or Q - f - 1."""
    if series not in ("P", "Q"):
        raise ValueError("series must be 'P' or 'Q'")
    if values is None:
        values = fast_range(N)
    n = np.arange(N + 1)
    f = f_array(n)
    vals = values.P[: N + 1] if series == "P" else values.Q[: N + 1]
    drift = vals - f if series == "P" else vals - f - 1
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["n", "value", "drift"])
    for row in zip(n.tolist(), vals.tolist(), drift.tolist()):
        w.writerow(row)
    return out.getvalue()
