import json
import math

import pytest

import contact_bounds as cb

COMPRESSION = """
[system]
example = compression
[body1]
C1 = 1
a1 = 0.81
[body2]
C2 = 1
a2 = 0.81
"""


def test_compression_interval():
    r = cb.load_interval_compression(1.0, 1.0, 0.81, 0.81)
    assert r.tau_lo == pytest.approx(-0.2439, abs=1e-12)
    assert r.tau_hi == 0.0
    assert not r.empty
    assert r.regime == cb.Regime.Closed


def test_identity_stretch_is_empty():
    assert cb.load_interval_compression(1.0, 1.0, 1.0, 1.0).empty


def test_cohesive_and_bending():
    assert cb.load_interval_cohesive(1.0, 1.0, 1.0, 1.0, 0.5).tau_hi == 0.5
    open_ = cb.load_interval_cohesive(1.0, 1.0, 0.81, 0.81, 0.3, contact_closed=False)
    assert (open_.tau_lo, open_.tau_hi, open_.regime) == (0.3, 0.3, cb.Regime.Open)
    b = cb.load_interval_bending(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0)
    assert b.tau_lo == pytest.approx(-(1 / math.sqrt(3) - 0.5), abs=1e-14)


def test_numeric_and_oracle_agree():
    p = cb.ExampleParams(C1=1.3, C2=0.8, a1=0.7, a2=0.9)
    cf = cb.closed_form_interval(cb.Example.Compression, p)
    n = cb.numeric_load_bounds(cb.Example.Compression, p)
    lo, hi = cb.oracle_bracket(cb.Example.Compression, p)
    o = cb.brute_force_oracle(cb.Example.Compression, p, 1000)
    assert n.tau_lo == pytest.approx(cf.tau_lo, abs=1e-6)
    assert o.tau_lo == pytest.approx(cf.tau_lo, abs=2 * (hi - lo) / 1000)


def test_errors_are_raised():
    with pytest.raises(cb.Error, match="InvalidParameters"):
        cb.load_interval_compression(-1.0, 1.0, 0.8, 0.8)
    with pytest.raises(cb.Error, match="InfeasibleProblem"):
        cb.numeric_load_bounds(cb.Example.Compression, cb.ExampleParams())


def test_piola_at_identity():
    eye = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    P = cb.piola_stress(2.0, eye, 0.5)
    assert P[0][0] == pytest.approx(1.5)
    assert P[0][1] == 0.0
    assert cb.strain_energy(2.0, eye) == pytest.approx(0.0)


def test_window_and_criteria():
    lo, hi = cb.triaxial_pressure_window(1.0, 0.81)
    assert (lo, hi) == pytest.approx((-0.9, 0.9))
    r = cb.triaxial_criteria(1.0, 1.0, 0.0, probe_count=100)
    assert r["primal_ok"] and r["complementary_ok"]


def test_run_and_verify():
    report = json.loads(cb.run_config(COMPRESSION))
    assert report["closed_form"]["tau_lo"] == pytest.approx(-0.2439, abs=1e-12)
    passed, text = cb.verify_config(COMPRESSION, "report")
    assert passed
    assert text == cb.verify_config(COMPRESSION, "report")[1]
    assert set(json.loads(cb.verify_config(COMPRESSION)[1])["warnings"]) <= set(cb.warning_vocabulary())


def test_sweep_csv():
    rows = cb.sweep_csv(COMPRESSION, "a1", 0.5, 0.99, 5).splitlines()
    assert rows[0] == "param,tau_lo,tau_hi,empty,regime,error"
    assert len(rows) == 6
    with pytest.raises(cb.Error, match="ValidationError"):
        cb.sweep_csv(COMPRESSION, "a1", 0.5, 0.99, 1)
