import json

import numpy as np
import pytest

from isoperim import analysis, dp
from isoperim.fast import fast_range
from isoperim.numeric import f_of
from isoperim.values import ValueTable


@pytest.fixture(scope="module")
def values():
    return fast_range(100_000)


def test_bounds_pass(values):
    rep = analysis.check_bounds(100_000, values=values)
    assert rep.passed, rep.violations[:5]
    assert len(rep.checked) == 10
    assert json.loads(rep.to_json())["pass"] is True


def test_bounds_catch_injected_violation(values):
    P = values.P.copy()
    P[5000] = f_of(5000) - 1
    rep = analysis.check_bounds(100_000, values=ValueTable(100_000, P, values.Q.copy(), "fast"))
    names = {v[1] for v in rep.violations if v[0] == 5000}
    assert "P >= f(n)" in names and "P > sqrt(2n) - 1/2" in names
    assert not rep.passed


def test_float_screen_escalates(monkeypatch):
    # values sitting exactly at floor(bound) are legal; a pessimistic float screen
    # marks them suspect and the interval enclosure must clear them
    n = np.arange(3, 400, dtype=np.int64)
    exact = np.array([int(analysis.upper_rhs_interval(int(x)).a) for x in n])
    honest = analysis._upper_rhs_float
    monkeypatch.setattr(analysis, "_upper_rhs_float", lambda m: honest(m) - 0.75)
    rep = analysis.BoundReport(400)
    analysis._check_upper(rep, "upper", n, exact)
    assert rep.passed
    analysis._check_upper(rep, "upper", n, exact + 1)
    assert len(rep.violations) == n.size


def test_interval_encloses_float():
    for n in (3, 10, 1000, 10**6, 10**12):
        iv = analysis.upper_rhs_interval(n)
        x = analysis._upper_rhs_float(np.array([n]))[0]
        assert float(iv.a) - 1e-6 <= x <= float(iv.b) + 1e-6


def test_window(values):
    assert analysis.check_window(values).passed
    Q = values.Q.copy()
    Q[77] = values.P[77] + 3
    rep = analysis.check_window(ValueTable(values.N, values.P.copy(), Q, "fast"))
    assert [v[0] for v in rep.violations] == [77]


def test_orbit_bound():
    rep = analysis.check_orbit_bound(200_000, 6)
    assert rep.passed and len(rep.checked) == 7


def test_regenerate_small():
    regen = analysis.regenerate_exceptions(30, dp.compute_values(30))
    assert {0, 2, 4, 7, 8, 11, 16, 17, 29} <= {r.n for r in regen}
    assert next(r for r in regen if r.n == 17).P == 11
    r154 = next(r for r in analysis.regenerate_exceptions(200) if r.n == 154)
    assert r154.p_identity_fails and r154.q_identity_fails


def test_diff_detects_changes():
    from isoperim.fast import default_table

    regen = analysis.regenerate_exceptions(300)
    assert not any(analysis.diff_exceptions(regen, default_table(), 300).values())
    d = analysis.diff_exceptions(regen[:-1], default_table(), 300)
    assert d["missing"] and not d["extra"]


def test_triangles():
    t = analysis.triangle("P_minus_f", 6)
    assert t.rows[3] == [1, 2, 0] and t.rows[4] == [2, 3, 2, 0]
    assert analysis.triangle("Q_minus_f_minus_1", 1).rows[0] == [-1]
    assert analysis.triangle("FG", 6).rows[5] == [(5, 4), (5, 3), (5, 2), (5, 1), (5, 0)]
    with pytest.raises(ValueError):
        analysis.triangle("nope", 3)


def test_row_reflection():
    assert analysis.check_row_reflection(2).passed
    rep = analysis.check_row_reflection(63)
    assert rep.passed and rep.skipped


def test_asymptotic_ratio():
    from isoperim.fast import fast_P

    for n in (10**4, 10**8, 10**12):
        ratio, lower, upper = analysis.asymptotic_ratio(n, fast_P(n))
        assert lower < ratio < upper


def test_drift_series():
    text = analysis.emit_drift_series(10, "Q")
    lines = text.splitlines()
    assert lines[0] == "n,value,drift" and lines[1] == "0,0,-1" and len(lines) == 12
    with pytest.raises(ValueError):
        analysis.emit_drift_series(10, "R")
