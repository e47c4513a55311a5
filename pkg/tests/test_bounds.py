import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

import oracles
from udcp.bounds import (
    Interval,
    best_bound,
    binary_entropy,
    classic_bound,
    entropy_half_bound_check,
    largest_fixed_point,
    main_bound,
    main_coefficients,
    minimize_on_grid,
    recompute_beta_bound,
    warmup_bound,
    warmup_constant,
)
from udcp.bounds.pipelines import main_rhs, warmup_rhs
from udcp.errors import UDCPError, ValidationError


# -- entropy ---------------------------------------------------------------


def test_entropy_values():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == binary_entropy(1.0) == 0.0
    assert binary_entropy(0.25) == pytest.approx(float(oracles.entropy_mp(0.25)), abs=1e-15)
    assert binary_entropy(0.25) == pytest.approx(0.811278, abs=5e-7)
    for x in np.linspace(0.01, 0.49, 25):
        assert binary_entropy(x) == pytest.approx(binary_entropy(1 - x), abs=1e-15)
    with pytest.raises(ValidationError):
        binary_entropy(1.5)


def test_entropy_margin():
    assert entropy_half_bound_check(0.5) == pytest.approx(1 - 0.5 / math.log(2))
    assert entropy_half_bound_check(0.5) == pytest.approx(0.27865, abs=5e-6)
    small = entropy_half_bound_check(1e-4)
    mpmath.mp.dps = 50
    x = mpmath.mpf("1e-4")
    oracle = 1 - 2 / mpmath.log(2) * x**2 - oracles.entropy_mp(mpmath.mpf("0.5") + x)
    assert small > 0
    assert small == pytest.approx(float(oracle), rel=1e-6)
    for k in range(1, 501):
        assert entropy_half_bound_check(0.001 * k) > 0
    with pytest.raises(ValidationError):
        entropy_half_bound_check(0.0)


# -- interval arithmetic ---------------------------------------------------


def test_interval_encloses_mpmath():
    mpmath.mp.dps = 60
    rng = np.random.default_rng(0)
    for _ in range(200):
        a, b = sorted(rng.random(2) * 3)
        c, d = sorted(rng.random(2) * 3 - 1)
        x, y = Interval(a, b), Interval(c, d)
        for pick in rng.random((4, 2)):
            u = mpmath.mpf(a) + (mpmath.mpf(b) - a) * pick[0]
            v = mpmath.mpf(c) + (mpmath.mpf(d) - c) * pick[1]
            for iv, exact in ((x + y, u + v), (x - y, u - v), (x * y, u * v), (x.sqrt(), mpmath.sqrt(u))):
                assert mpmath.mpf(iv.lo) <= exact <= mpmath.mpf(iv.hi)


def test_interval_constants():
    mpmath.mp.dps = 60
    ln2 = Interval.ln2()
    assert mpmath.mpf(ln2.lo) < mpmath.log(2) < mpmath.mpf(ln2.hi)
    third = Interval.exact(Fraction(1, 3))
    assert Fraction(third.lo) < Fraction(1, 3) < Fraction(third.hi)
    assert Interval.exact("0.5").width == 0
    with pytest.raises(ValueError):
        Interval(-1.0, 1.0).sqrt()


# -- solvers ---------------------------------------------------------------


def test_fixed_point_solver():
    x, _ = largest_fixed_point(lambda b: 1 - b / 2, 0.0, 1.0)
    assert x == pytest.approx(2 / 3, abs=1e-12)
    assert x >= 2 / 3
    with pytest.raises(UDCPError):
        largest_fixed_point(lambda b: -5.0, 0.0, 1.0)


def test_grid_minimiser():
    x, v = minimize_on_grid(lambda t: (t - 0.31234) ** 2, 0.0, 1.0)
    assert x == pytest.approx(0.31234, abs=1e-6)
    x, _ = minimize_on_grid(lambda t: t, 0.0, 1.0)
    assert x == 0.0


# -- classic and warm-up ---------------------------------------------------


def test_classic():
    assert classic_bound(0) == 0.5
    assert classic_bound(0.01) == 0.51
    assert classic_bound(1) == 1.0


def test_warmup_at_paper_rho():
    rep = warmup_bound(0.0, 0.3838)
    assert rep.beta_bound == pytest.approx(0.4777, abs=5e-5)
    assert rep.terms["cross_coefficient"] == pytest.approx(0.7676, abs=1e-12)
    assert rep.terms["constant_term"] == pytest.approx(warmup_constant(0.3838))


def test_warmup_rho_zero():
    assert warmup_bound(0.0, 0.0).terms["fixed_point"] == pytest.approx(math.log2(3) - 1, abs=1e-11)


def test_warmup_optimised():
    rep = warmup_bound(0.0)
    assert rep.beta_bound == pytest.approx(0.4777, abs=1e-4)
    assert rep.inputs.rho == pytest.approx(0.3838, abs=0.01)
    grid = min(warmup_bound(0.0, r).terms["fixed_point"] for r in np.arange(0, 0.999, 1e-3))
    assert rep.terms["fixed_point"] <= grid + 1e-12


def test_warmup_matches_closed_form():
    for eps in (0.0, 1e-4, 1e-3, 0.005):
        for rho in (0.1, 0.3838, 0.7):
            fp = warmup_bound(eps, rho).terms["fixed_point"]
            assert fp == pytest.approx(oracles.warmup_closed_form(eps, rho), abs=1e-11)
            # The map is decreasing in beta, so beta = fp is the unique crossing.
            assert warmup_rhs(fp - 1e-6, eps, rho) > fp - 1e-6
            assert warmup_rhs(fp + 1e-6, eps, rho) < fp + 1e-6


def test_warmup_capped_by_classic():
    rep = warmup_bound(0.01)
    assert rep.terms["fixed_point"] > classic_bound(0.01)
    assert rep.beta_bound == classic_bound(0.01)
    assert rep.winner == "classic"


# -- main bound ------------------------------------------------------------


def test_main_constant():
    rep = main_bound(0.0, 0.654)
    assert rep.beta_bound == pytest.approx(0.4228, abs=5e-5)
    assert rep.winner == "main"
    assert rep.terms["eq2_constant"] == pytest.approx(0.2861421, abs=1e-6)
    assert rep.terms["eq2_lambda_coefficient"] == pytest.approx(0.2733156, abs=1e-6)
    assert rep.terms["eq2_cross_coefficient"] == pytest.approx(1.308, abs=1e-12)
    assert rep.terms["eq2_sqrt_epsilon_coefficient"] == pytest.approx(0.33691, abs=5e-6)


def test_main_linear_form_matches_rhs():
    for rho in (0.3, 0.654, 0.8):
        c = main_coefficients(rho)
        for eps in (0.0, 0.004):
            for lam in (0.45, 0.5, 0.55):
                for pi in (0.3, 0.4):
                    lin = (
                        c["constant"]
                        + c["lambda_coefficient"] * lam
                        + c["epsilon_coefficient"] * eps
                        + c["sqrt_epsilon_coefficient"] * math.sqrt(eps)
                        + c["cross_coefficient"] * math.sqrt(eps * (lam - pi))
                    )
                    assert lin == pytest.approx(main_rhs(pi, eps, rho, lam), abs=1e-14)


def test_main_at_one_percent_reports_winner():
    rep = main_bound(0.01)
    assert rep.beta_bound < 0.4228 + math.sqrt(0.01)
    assert rep.beta_bound <= 0.51
    assert rep.winner in ("main", "warmup", "classic")
    assert rep.beta_bound == min(rep.terms["main_raw"], rep.terms["warmup_bound"], rep.terms["classic_bound"])


def test_main_fallback_and_errors():
    rep = main_bound(0.2)
    assert rep.winner == "classic" and rep.terms["fallback"]
    with pytest.raises(ValidationError):
        main_bound(0.2, allow_fallback=False)
    with pytest.raises(ValidationError):
        main_bound(-0.1)
    with pytest.raises(ValidationError):
        warmup_bound(0.0, 1.0)


def test_lambda_override():
    low = main_bound(0.005, 0.654, lam=0.45)
    assert low.inputs.lam == 0.45
    assert low.terms["lambda"] == 0.45


def test_dominance_and_monotone_sweep():
    prev = {"warmup": -1.0, "main": -1.0}
    for eps in np.linspace(0, 0.01, 41):
        eps = float(eps)
        w = warmup_bound(eps).beta_bound
        m = main_bound(eps).beta_bound
        c = classic_bound(eps)
        assert m <= w + 1e-9 and w <= c + 1e-9
        assert w >= prev["warmup"] - 1e-9 and m >= prev["main"] - 1e-9
        prev = {"warmup": w, "main": m}


def test_reports_recompute_from_terms():
    for eps in (0.0, 0.003, 0.01, 0.3):
        for rep in (warmup_bound(eps), main_bound(eps), best_bound(eps)):
            assert recompute_beta_bound(rep) == rep.beta_bound
            assert rep.asymptotic and not rep.certified
            assert rep.to_json()["beta_bound"] == rep.beta_bound


def test_headline_form_below_the_band():
    # beta <= 0.4228 + sqrt(eps) is reproduced up to eps = 0.00697...
    for eps in np.linspace(0, 0.0069, 24):
        assert best_bound(float(eps)).beta_bound < 0.4228 + math.sqrt(eps)
    for eps in (0.0072, 0.008, 0.01):
        assert best_bound(eps).beta_bound < 0.4228 + math.sqrt(eps)


def test_headline_form_gap_band():
    # Between the point where the optimised main bound crosses 0.4228 + sqrt(eps)
    # and the point where 1/2 + eps does, neither bound reaches the headline form.
    eps = 0.00705
    rep = best_bound(eps)
    excess = rep.beta_bound - (0.4228 + math.sqrt(eps))
    assert 0 < excess < 1e-4


def test_rhs_is_decreasing_in_pi():
    for pi in np.linspace(0.3, 0.5, 20):
        assert main_rhs(pi, 0.005, 0.654, 0.55) >= main_rhs(pi + 0.001, 0.005, 0.654, 0.55)
