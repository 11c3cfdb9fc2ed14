import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from isoperim import dp, fast
from isoperim.fast import ExceptionTableError, load_exception_table
from isoperim.numeric import EXCEPTION_CEILING, MAX_N, f_of, g_of


@pytest.fixture(scope="module")
def table():
    return load_exception_table("embedded")


@pytest.fixture(scope="module")
def dp_values():
    return dp.compute_values(20_000)


def test_embedded_rows(table):
    assert table.max_n == EXCEPTION_CEILING
    r0, r154, r2 = table.records[0], table.records[154], table.records[2]
    assert (r0.P, r0.Q) == (0, 0)
    assert (r154.P, r154.Q, r154.p_identity_fails, r154.q_identity_fails) == (28, 28, True, True)
    assert (r2.P, r2.Q, r2.p_identity_fails, r2.q_identity_fails) == (2, 4, True, False)
    c = table.counts()
    assert c["rows"] == c["rows_with_failure"] == 177


def test_roundtrip_csv(table, tmp_path):
    path = tmp_path / "t.csv"
    path.write_text(table.to_csv())
    again = load_exception_table(path)
    assert again.records == table.records


def _write(tmp_path, text):
    path = tmp_path / "bad.csv"
    path.write_text(text)
    return path


@pytest.mark.parametrize("text,msg", [
    ("n,P\n0,0\n", "header"),
    ("n,P,Q,p_exc,q_exc\n0,0,0,0,1\n2,2,x,1,0\n", ":3:"),
    ("n,P,Q,p_exc,q_exc\n0,0,0,0,1\n2,2,4,1,0\n2,2,4,1,0\n", "sorted"),
    ("n,P,Q,p_exc,q_exc\n2,2,4,1,0\n", "n=0"),
    ("n,P,Q,p_exc,q_exc\n0,0,0,0,1\n2,2,4,1,1\n", "disagree"),
    ("n,P,Q,p_exc,q_exc\n0,0,0,0,1\n2,2,5,1,1\n", r"Q - P"),
    ("n,P,Q,p_exc,q_exc\n0,0,0,0,1\n2,2,4,1,0\n5,5,5,0,0\n", "not an exception"),
])
def test_loader_rejects(tmp_path, text, msg):
    with pytest.raises(ExceptionTableError, match=msg):
        load_exception_table(_write(tmp_path, text))


def test_env_override(tmp_path, monkeypatch, table):
    # a truncated table is still self-consistent; it just stops seeding above 30
    rows = [line for line in table.to_csv().splitlines() if not line[0].isdigit() or int(line.split(",")[0]) <= 30]
    path = _write(tmp_path, "\n".join(rows) + "\n")
    monkeypatch.setenv(fast.ENV_VAR, str(path))
    small = load_exception_table()
    assert small.max_n == 29 and small.source == str(path)
    assert fast.fast_P(29, small) == 14
    monkeypatch.setenv(fast.ENV_VAR, str(tmp_path / "missing.csv"))
    with pytest.raises(OSError):
        load_exception_table()


def test_values(table):
    assert fast.fast_P(8, table) == 7
    assert fast.fast_Q(92, table) == 23
    assert fast.fast_P(29, table) == 14
    n = 150_000
    assert fast.fast_P(n, table) == f_of(n) + fast.fast_Q(g_of(n), table)


def test_range_matches_dp(table, dp_values):
    fr = fast.fast_range(20_000, table)
    assert np.array_equal(fr.P, dp_values.P) and np.array_equal(fr.Q, dp_values.Q)
    for n in range(0, 20_001, 997):
        assert (fast.fast_P(n, table), fast.fast_Q(n, table)) == (dp_values.P[n], dp_values.Q[n])


def test_ceiling(table):
    with pytest.raises(ValueError):
        fast.fast_P(MAX_N + 1, table)
    assert fast.fast_P(MAX_N, table) > 0


@settings(max_examples=300)
@given(st.integers(0, 10**15))
def test_quasi_explicit_agrees(n):
    assert fast.quasi_explicit_P(n) == fast.fast_P(n)
    assert fast.quasi_explicit_Q(n) == fast.fast_Q(n)


def test_quasi_explicit_below_ceiling(table):
    for n in (0, 1, 154, 5000, EXCEPTION_CEILING):
        assert fast.quasi_explicit_P(n, table) == fast.fast_P(n, table)


def test_shift_identity(table, dp_values):
    applicable = 0
    for n in range(2, 20_001):
        s = fast.shift_P(n, table)
        if s is not None:
            applicable += 1
            assert s == dp_values.P[n]
        s = fast.shift_Q(n, table)
        if s is not None:
            assert s == dp_values.Q[n]
    assert applicable > 15_000
    with pytest.raises(ValueError):
        fast.shift_P(1, table)


def test_shift_guard_first_in_row(table):
    for f in range(3, 60):
        n = f * (f - 1) // 2 + 1  # first entry of row f: g = f - 1
        assert fast.shift_P(n, table) is None and fast.shift_Q(n, table) is None


def test_double_step(table, dp_values):
    for n in range(0, 20_001):
        for which, fn in (("P", fast.double_step_P), ("Q", fast.double_step_Q)):
            v = fn(n, table)
            if v is not None:
                assert v == (dp_values.P if which == "P" else dp_values.Q)[n]
    n = 150_000
    assert (fast.double_step_P(n, table) is not None) == (table.q_override(g_of(n)) is None)


def test_random_large_window():
    rng = random.Random(7)
    for _ in range(2000):
        n = rng.randint(0, 10**17)
        assert -1 <= fast.fast_Q(n) - fast.fast_P(n) <= 2
