"""Exception-seeded evaluation of P and Q in O(log log n) steps.

Off a finite exception set,

    P(n) = f(n) + Q(g(n))        Q(n) = 1 + f(n) + P(g(n)),

so P and Q are evaluated by walking the g-orbit of n, alternating between the
two functions, until an exceptional value is reached.
"""

from __future__ import annotations

import csv
import hashlib
import io
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .numeric import EXCEPTION_CEILING, check_ceiling, f_of, g_of, g_orbit, triangular
from .values import ValueTable

ENV_VAR = "ISOPERIM_EXCEPTIONS"
CSV_HEADER = ["n", "P", "Q", "p_exc", "q_exc"]
EMBEDDED_SHA256 = "ec0757629ec8d12e7f74fbc700b2b4e5406809bbdd72b0236b304fee22ba1fc2"


class ExceptionTableError(ValueError):
    pass


@dataclass(frozen=True)
class ExceptionRecord:
    n: int
    P: int
    Q: int
    p_identity_fails: bool
    q_identity_fails: bool


@dataclass(frozen=True)
class ExceptionTable:
    records: dict[int, ExceptionRecord]
    source: str

    @property
    def max_n(self) -> int:
        return max(self.records)

    def __contains__(self, n: int) -> bool:
        return n in self.records

    def __len__(self) -> int:
        return len(self.records)

    def p_override(self, n: int) -> int | None:
        rec = self.records.get(n)
        return rec.P if rec is not None and rec.p_identity_fails else None

    def q_override(self, n: int) -> int | None:
        rec = self.records.get(n)
        return rec.Q if rec is not None and rec.q_identity_fails else None

    def counts(self) -> dict[str, int]:
        recs = self.records.values()
        return {
            "rows": len(self.records),
            "rows_with_failure": sum(r.p_identity_fails or r.q_identity_fails for r in recs),
            "failing_identities": sum(r.p_identity_fails + r.q_identity_fails for r in recs),
            "p_failures": sum(r.p_identity_fails for r in recs),
            "q_failures": sum(r.q_identity_fails for r in recs),
        }

    def to_csv(self) -> str:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for n in sorted(self.records):
            r = self.records[n]
            w.writerow([r.n, r.P, r.Q, int(r.p_identity_fails), int(r.q_identity_fails)])
        return out.getvalue()


def _parse(text: str, source: str) -> list[ExceptionRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [c.strip() for c in rows[0]] != CSV_HEADER:
        raise ExceptionTableError(f"{source}:1: header must be {','.join(CSV_HEADER)}")
    records = []
    prev = -1
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        try:
            n, P, Q, pe, qe = (int(c) for c in row)
        except ValueError:
            raise ExceptionTableError(f"{source}:{lineno}: expected five integers, got {row}") from None
        if pe not in (0, 1) or qe not in (0, 1):
            raise ExceptionTableError(f"{source}:{lineno}: flags must be 0 or 1")
        if n <= prev:
            raise ExceptionTableError(f"{source}:{lineno}: rows must be sorted by n without repeats")
        if min(n, P, Q) < 0:
            raise ExceptionTableError(f"{source}:{lineno}: negative entry")
        prev = n
        records.append(ExceptionRecord(n, P, Q, bool(pe), bool(qe)))
    return records


def _validate(records: list[ExceptionRecord]) -> None:
    if not records or records[0].n != 0 or (records[0].P, records[0].Q) != (0, 0):
        raise ExceptionTableError("table must start with the row n=0, P=0, Q=0")
    seen: dict[int, ExceptionRecord] = {}
    partial = ExceptionTable(seen, "validation")
    for rec in records:
        if not 0 <= rec.Q - rec.P <= 2:
            raise ExceptionTableError(f"n={rec.n}: Q - P = {rec.Q - rec.P} outside [0, 2]")
        if rec.n == 0:
            # g fixes 0: the P identity reads P(0) = Q(0), the Q identity fails
            p_fails, q_fails = rec.P != rec.Q, rec.Q != 1 + rec.P
        else:
            # g(n) < n, so every value the identities mention is already pinned
            f, g = f_of(rec.n), g_of(rec.n)
            p_fails = rec.P != f + _evaluate(g, "Q", partial)
            q_fails = rec.Q != 1 + f + _evaluate(g, "P", partial)
        if (p_fails, q_fails) != (rec.p_identity_fails, rec.q_identity_fails):
            raise ExceptionTableError(
                f"n={rec.n}: flags (p_exc={int(rec.p_identity_fails)}, q_exc={int(rec.q_identity_fails)}) "
                f"disagree with the identities (p fails={p_fails}, q fails={q_fails})"
            )
        if not (p_fails or q_fails):
            raise ExceptionTableError(f"n={rec.n}: both identities hold, row is not an exception")
        seen[rec.n] = rec


def load_exception_table(source: str | Path | None = None) -> ExceptionTable:
    """Load and validate an exception table.

    ``source`` is a CSV path, or ``None``/``"embedded"`` for the packaged copy
    (overridden by the ``ISOPERIM_EXCEPTIONS`` environment variable when set).
    """
    if source is None:
        source = os.environ.get(ENV_VAR) or "embedded"
    if str(source) == "embedded":
        raw = resources.files("isoperim").joinpath("data/exceptions.csv").read_bytes()
        digest = hashlib.sha256(raw).hexdigest()
        if digest != EMBEDDED_SHA256:
            raise ExceptionTableError(f"embedded table checksum mismatch ({digest})")
        text, name = raw.decode("utf-8"), "embedded"
    else:
        text, name = Path(source).read_text(encoding="utf-8"), str(source)
    records = _parse(text, name)
    _validate(records)
    return ExceptionTable({r.n: r for r in records}, name)


_default_table: ExceptionTable | None = None


def default_table() -> ExceptionTable:
    global _default_table
    if _default_table is None:
        _default_table = load_exception_table()
    return _default_table


def _resolve(table: ExceptionTable | None) -> ExceptionTable:
    return default_table() if table is None else table


def _evaluate(n: int, which: str, table: ExceptionTable) -> int:
    # walk the orbit; each non-exceptional step contributes f (P) or 1 + f (Q)
    total = 0
    while True:
        if which == "P":
            hit = table.p_override(n)
            if hit is not None:
                return total + hit
            total += f_of(n)
            which = "Q"
        else:
            hit = table.q_override(n)
            if hit is not None:
                return total + hit
            total += 1 + f_of(n)
            which = "P"
        nxt = g_of(n)
        if nxt == n == 0 and which == "P":
            # g fixes 0; a second pass through 0 would loop forever
            raise ExceptionTableError("orbit reached 0 without a pinned value")
        n = nxt


def fast_P(n: int, table: ExceptionTable | None = None) -> int:
    check_ceiling(n)
    return _evaluate(n, "P", _resolve(table))


def fast_Q(n: int, table: ExceptionTable | None = None) -> int:
    check_ceiling(n)
    return _evaluate(n, "Q", _resolve(table))


def fast_range(N: int, table: ExceptionTable | None = None) -> ValueTable:
    """P and Q for 0..N, filled row by row (all n sharing f(n)) with numpy."""
    table = _resolve(table)
    P = np.zeros(N + 1, dtype=np.int64)
    Q = np.zeros(N + 1, dtype=np.int64)
    keys = np.array(sorted(table.records), dtype=np.int64)
    r = 1
    while triangular(r - 1) + 1 <= N:
        lo, hi = triangular(r - 1) + 1, min(triangular(r), N)
        g = triangular(r) - np.arange(lo, hi + 1)
        P[lo : hi + 1] = r + Q[g]
        Q[lo : hi + 1] = 1 + r + P[g]
        for n in keys[(keys >= lo) & (keys <= hi)]:
            rec = table.records[int(n)]
            if rec.p_identity_fails:
                P[n] = rec.P
            if rec.q_identity_fails:
                Q[n] = rec.Q
        r += 1
    return ValueTable(N, P, Q, "fast")


def _quasi_explicit(n: int, which: str, table: ExceptionTable) -> int:
    orbit = g_orbit(n, EXCEPTION_CEILING)
    phi, base = orbit.phi, orbit.base
    s = orbit.row_sum()
    same = fast_P if which == "P" else fast_Q
    other = fast_Q if which == "P" else fast_P
    if phi % 2 == 0:
        return same(base, table) + s + phi // 2
    if which == "P":
        return other(base, table) + s + (phi - 1) // 2
    return other(base, table) + s + (phi + 1) // 2


def quasi_explicit_P(n: int, table: ExceptionTable | None = None) -> int:
    """P(n) from the orbit length phi(n) and the value at the first iterate <= 149,894."""
    check_ceiling(n)
    return _quasi_explicit(n, "P", _resolve(table))


def quasi_explicit_Q(n: int, table: ExceptionTable | None = None) -> int:
    check_ceiling(n)
    return _quasi_explicit(n, "Q", _resolve(table))


def _shift(n: int, which: str, table: ExceptionTable) -> int | None:
    if n < 2:
        raise ValueError("shift identities need n >= 2")
    f, g = f_of(n), g_of(n)
    if g >= f - 1:
        return None
    override = table.p_override if which == "P" else table.q_override
    if override(n) is not None or override(n - f) is not None:
        return None
    return 1 + (fast_P if which == "P" else fast_Q)(n - f, table)


def shift_P(n: int, table: ExceptionTable | None = None) -> int | None:
    """1 + P(n - f(n)) when g(n) < f(n) - 1 and neither n nor n - f(n) is exceptional for P."""
    return _shift(n, "P", _resolve(table))


def shift_Q(n: int, table: ExceptionTable | None = None) -> int | None:
    return _shift(n, "Q", _resolve(table))


def _double_step(n: int, which: str, table: ExceptionTable) -> int | None:
    g = g_of(n)
    # two applications of the identities: P at n then Q at g(n), or Q then P
    first, second = (table.p_override, table.q_override) if which == "P" else (table.q_override, table.p_override)
    if first(n) is not None or second(g) is not None:
        return None
    g2 = g_of(g)
    tail = (fast_P if which == "P" else fast_Q)(g2, table)
    return 1 + f_of(n) + f_of(g) + tail


def double_step_P(n: int, table: ExceptionTable | None = None) -> int | None:
    """1 + f(n) + f(g(n)) + P(g(g(n))), when n and g(n) are non-exceptional."""
    return _double_step(n, "P", _resolve(table))


def double_step_Q(n: int, table: ExceptionTable | None = None) -> int | None:
    return _double_step(n, "Q", _resolve(table))
