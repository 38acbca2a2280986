import math

import numpy as np
import pytest
from scipy.special import gamma

from blowup_lab.grids import Grid1D
from blowup_lab.inequalities import (
    InequalityError,
    constant_chain,
    counterexample_ratio,
    phi_negative_power_integral,
    randomized_weighted_poincare_test,
)

GRID = Grid1D(0.0, math.pi, 2048)


def test_phi_integral_alpha_half_beta_oracle():
    # int_0^pi sin(x)^(-1/2) dx = sqrt(pi) Gamma(1/4) / Gamma(3/4)
    oracle = math.sqrt(math.pi) * gamma(0.25) / gamma(0.75)
    value, converged = phi_negative_power_integral(0.5)
    assert converged
    assert value == pytest.approx(oracle, rel=1e-3)


def test_phi_integral_alpha_third_beta_oracle():
    oracle = math.sqrt(math.pi) * gamma(1.0 / 3.0) / gamma(5.0 / 6.0)
    value, converged = phi_negative_power_integral(1.0 / 3.0)
    assert converged
    assert value == pytest.approx(oracle, rel=1e-3)


def test_phi_integral_small_alpha_near_pi():
    value, converged = phi_negative_power_integral(0.01)
    assert converged
    assert value == pytest.approx(math.pi, rel=0.02)


def test_phi_integral_divergence_at_alpha_one():
    value, converged = phi_negative_power_integral(1.0)
    assert not converged
    coarse, _ = phi_negative_power_integral(1.0, refinement_levels=3)
    assert value > coarse  # keeps growing under refinement


def test_phi_integral_monotone_in_alpha():
    values = [phi_negative_power_integral(a)[0] for a in (0.1, 0.3, 0.5, 0.7)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_phi_integral_rejects_nonpositive_alpha():
    with pytest.raises(InequalityError):
        phi_negative_power_integral(0.0)


def test_counterexample_ratio_exceeds_bound_and_grows():
    prev = -math.inf
    for eps in (1e-2, 1e-3, 1e-4):
        ratio, bound = counterexample_ratio(eps)
        assert bound == pytest.approx(9 * math.pi**2 / 128 * math.log(1 / eps), rel=1e-12)
        assert ratio >= bound
        assert ratio > prev
        prev = ratio


def test_counterexample_ratio_domain():
    with pytest.raises(InequalityError):
        counterexample_ratio(1.0)
    with pytest.raises(InequalityError):
        counterexample_ratio(0.0)


def test_constant_chain_p4_pinned_values():
    chain = constant_chain(4.0, GRID)
    assert chain.lambda1 == pytest.approx(1.0, rel=1e-12)
    # C_prime = (int sin^(-1/3))^(3/4) with the Beta-function oracle
    oracle = (math.sqrt(math.pi) * gamma(1.0 / 3.0) / gamma(5.0 / 6.0)) ** 0.75
    assert chain.C_prime == pytest.approx(oracle, rel=1e-3)
    assert chain.C_poincare == pytest.approx(math.pi / 2)
    assert chain.C_weighted == pytest.approx(
        (chain.C_poincare * chain.C_prime) ** (-4.0), rel=1e-12
    )
    assert chain.K == pytest.approx((2.0 / chain.C_weighted) ** (1.0 / 3.0), rel=1e-12)
    assert chain.K == pytest.approx(9.7, abs=0.1)


def test_constant_chain_p3_finite_positive():
    chain = constant_chain(3.0, GRID)
    for v in (chain.C_prime, chain.C_poincare, chain.C_weighted, chain.K):
        assert math.isfinite(v) and v > 0


def test_constant_chain_rejects_small_p():
    with pytest.raises(InequalityError, match="p > 2"):
        constant_chain(2.0, GRID)


def test_constant_chain_grows_toward_p2():
    # the negative-power integral inflates as p -> 2+, so K does too
    assert constant_chain(2.2, GRID).K > constant_chain(4.0, GRID).K


def test_constant_chain_continuity_in_p():
    for p in (2.5, 4.0, 6.0, 8.0):
        k0 = constant_chain(p, GRID).K
        k1 = constant_chain(p + 1e-3, GRID).K
        assert abs(k1 - k0) / k0 < 5e-3


def test_randomized_fuzz_never_violates():
    chain = constant_chain(4.0, GRID)
    res = randomized_weighted_poincare_test(4.0, chain, trials=200, seed=7)
    assert res.holds
    assert res.worst_margin >= 0.0


def test_randomized_fuzz_deterministic():
    chain = constant_chain(4.0, GRID)
    r1 = randomized_weighted_poincare_test(4.0, chain, trials=50, seed=3)
    r2 = randomized_weighted_poincare_test(4.0, chain, trials=50, seed=3)
    assert r1.worst_margin == r2.worst_margin
    assert r1.worst_t == r2.worst_t


def test_randomized_fuzz_requires_trials():
    chain = constant_chain(4.0, GRID)
    with pytest.raises(InequalityError):
        randomized_weighted_poincare_test(4.0, chain, trials=0, seed=1)


def test_single_mode_inequality_margin():
    # v = phi1 itself: C_weighted |int phi1^2|^4 <= int |phi1'|^4 phi1
    chain = constant_chain(4.0, GRID)
    x = GRID.nodes
    h = GRID.h
    w = np.ones_like(x)
    w[0] = w[-1] = 0.5
    phi = np.sin(x)
    lhs = chain.C_weighted * abs(h * np.sum(w * phi * phi)) ** 4
    rhs = h * np.sum(w * np.abs(np.cos(x)) ** 4 * phi)
    assert lhs <= rhs
