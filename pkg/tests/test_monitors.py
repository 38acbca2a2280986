import math

import numpy as np
import pytest

from blowup_lab.grids import Field, Grid1D, first_dirichlet_eigenpair
from blowup_lab.monitors import (
    MonitorError,
    MonitorSeries,
    analyticity_radius,
    check_max_principle,
    check_monotone,
    check_ode_inequality,
    check_riccati_bound,
    evaluate,
    make_monitor,
    write_series_csv,
)
from blowup_lab.operators import BoundaryCondition

BC = BoundaryCondition


def test_series_requires_strictly_increasing_time():
    s = MonitorSeries("x")
    s.append(0.0, 1.0)
    s.append(0.5, 2.0)
    with pytest.raises(MonitorError):
        s.append(0.5, 3.0)


def test_evaluate_mass_example():
    g = Grid1D(0.0, 2 * math.pi, 2048)
    u = Field.from_function(g, lambda x: np.sin(x / 2))
    _, val = evaluate("mass", u, 0.0)
    assert val == pytest.approx(4.0, abs=1e-6)


def test_evaluate_grad_sup_example():
    g = Grid1D(0.0, math.pi, 256)
    u = Field.from_function(g, np.sin)
    _, val = evaluate("grad_sup", u, 0.0, bc=BC.Dirichlet)
    assert val == pytest.approx(1.0, abs=1e-3)


def test_evaluate_weighted_and_ks_energy():
    g = Grid1D(0.0, math.pi, 1024)
    phi = first_dirichlet_eigenpair(g).phi1
    _, z = evaluate("weighted", phi, 0.0, weight=phi)
    assert z == pytest.approx(math.pi / 2, abs=1e-5)
    u = Field.from_function(g, np.cos)
    _, e = evaluate("ks_energy", u, 0.0, bc=BC.NeumannKS)
    assert e == pytest.approx(math.pi / 2, abs=1e-3)


def test_evaluate_pure_and_deterministic():
    g = Grid1D(0.0, math.pi, 128)
    u = Field.from_function(g, np.sin)
    v1 = evaluate("l2", u, 0.0)[1]
    v2 = evaluate("l2", u, 0.0)[1]
    assert v1 == v2


def test_analyticity_radius_synthetic_decay():
    n = 256
    g = Grid1D(0.0, 2 * math.pi, n, "periodic")
    k = np.arange(n // 2 + 1, dtype=float)
    uh = np.zeros(n // 2 + 1, dtype=complex)
    uh[: n // 2] = np.exp(-0.5 * k[: n // 2])
    u = Field(g, np.fft.irfft(uh * n, n=n))
    assert analyticity_radius(u) == pytest.approx(0.5, rel=0.05)


def test_analyticity_radius_unresolved_spectrum():
    g = Grid1D(0.0, 2 * math.pi, 64, "periodic")
    u = Field.from_function(g, np.sin)  # single mode below the fit band
    with pytest.raises(MonitorError, match="unresolved spectrum"):
        analyticity_radius(u)


def test_analyticity_radius_requires_periodic():
    u = Field.from_function(Grid1D(0.0, math.pi, 64), np.sin)
    with pytest.raises(MonitorError):
        analyticity_radius(u)


def _series(pairs, name="s"):
    s = MonitorSeries(name)
    for t, v in pairs:
        s.append(t, v)
    return s


def test_check_max_principle_constant_series():
    s = _series([(0.0, 2.0), (1.0, 2.0), (2.0, 2.0)], "sup")
    res = check_max_principle(s, 2.0, tol=1e-6)
    assert res.holds
    assert res.worst_margin == pytest.approx(1e-6 * 2.0)


def test_check_max_principle_violation():
    s = _series([(0.0, 1.0), (1.0, 1.5)], "sup")
    res = check_max_principle(s, 1.0, tol=1e-6)
    assert not res.holds
    assert res.worst_t == 1.0


def test_check_riccati_bound_not_applicable():
    s = _series([(0.0, -0.1), (1.0, -0.2)])
    res = check_riccati_bound(s, nu=0.1, tol=1e-3)
    assert res.applicable is False and res.holds


def test_check_riccati_bound_synthetic_violator():
    y0 = -math.pi / 2
    ts = np.linspace(0.0, 3.0, 30)
    s = _series([(float(t), 2.0 * (t / 8.0 + 1.0 / y0) ** (-1.0)) for t in ts])
    res = check_riccati_bound(s, nu=0.1, tol=1e-3)
    assert res.applicable and not res.holds


def test_check_riccati_bound_on_exact_hyperbola():
    y0 = -math.pi / 2
    ts = np.linspace(0.0, 4.0, 50)
    s = _series([(float(t), (t / 8.0 + 1.0 / y0) ** (-1.0)) for t in ts])
    res = check_riccati_bound(s, nu=0.1, tol=1e-3)
    assert res.holds


def test_ks_mass_constant_series_violates():
    s = _series([(0.1 * i, 4.0) for i in range(10)], "mass")
    res = check_ode_inequality(s, "ks_mass", tol=1e-2, lam1=0.25, vol=2 * math.pi)
    assert not res.holds


def test_ks_mass_on_exact_riccati_solution():
    # m(t) = m0/(1 - lam1 m0 t/(2 vol)) satisfies the ODE with equality
    lam1, vol, m0 = 0.25, 2 * math.pi, 4.0
    c = lam1 * m0 / (2.0 * vol)
    ts = np.linspace(0.0, 2.0, 200)
    s = _series([(float(t), m0 / (1.0 - c * t)) for t in ts], "mass")
    res = check_ode_inequality(s, "ks_mass", tol=1e-2, lam1=lam1, vol=vol)
    assert res.holds


def test_titi_energy_integrated_form():
    ts = np.linspace(0.0, 5.0, 100)
    ok = _series([(float(t), 2.0 * math.exp(0.5 * t)) for t in ts], "e")
    assert check_ode_inequality(ok, "titi_energy", tol=1e-3).holds
    bad = _series([(float(t), 2.0 * math.exp(1.5 * t)) for t in ts], "e")
    assert not check_ode_inequality(bad, "titi_energy", tol=1e-3).holds


def test_check_monotone():
    inc = _series([(0.0, 1.0), (1.0, 2.0), (2.0, 3.0)])
    assert check_monotone(inc, "increasing", strict=True).holds
    dip = _series([(0.0, 1.0), (1.0, 0.5)])
    assert not check_monotone(dip, "increasing").holds
    tiny_dip = _series([(0.0, 1.0), (1.0, 1.0 - 1e-9)])
    assert check_monotone(tiny_dip, "increasing", rel_tol=1e-6).holds


def test_write_series_csv_format(tmp_path):
    s = _series([(0.0, 1.0 / 3.0), (0.1, 2.0 / 3.0)], "sup")
    path = tmp_path / "sup.csv"
    write_series_csv(s, path)
    raw = path.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().split("\n")
    assert lines[0] == "t,sup"
    assert lines[1] == "0,0.33333333333333331"
    assert not lines[1].endswith(",")
    # round-trip at full precision
    t, v = lines[2].split(",")
    assert float(v) == 2.0 / 3.0


def test_make_monitor_names():
    m = make_monitor("sup", name="supnorm")
    g = Grid1D(0.0, math.pi, 32)
    assert m.name == "supnorm"
    assert m(Field.from_function(g, np.sin), 0.0) == pytest.approx(1.0, abs=1e-2)
