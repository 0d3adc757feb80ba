import math

import numpy as np
import pytest

from copson import (
    OptimizerConfig,
    WeightFamily,
    brute_force_oracle,
    estimate_schedule,
    extremal_probe,
    minimize_ratio,
    ratio_functional,
    stationarity_check,
)
from copson.best_constant import lhs_gradient, ratio_gradient
from copson.inequality import copson_lhs

from oracles import central_difference, golden_min

UNIT = WeightFamily.unit()
PD2 = WeightFamily.power_diff(2)


def test_probe_single_term():
    assert extremal_probe(UNIT, 0.3, 1e-3, 1) == pytest.approx(1.0, rel=1e-15)


@pytest.mark.parametrize("p", [0.1, 0.25, 0.5])
def test_probe_matches_direct_evaluation(family, p):
    N = 400
    x = np.arange(1, N + 1, dtype=float) ** (-1 / p - 1e-3)
    assert extremal_probe(family, p, 1e-3, N) == pytest.approx(ratio_functional(family, x, p), rel=1e-12)


def test_probe_survives_underflow():
    # n**(-1/p) underflows double for p = 0.01 beyond n = 2
    v = extremal_probe(UNIT, 0.01, 1e-3, 5000)
    assert math.isfinite(v) and (0.01 / 0.99) ** 0.01 <= v <= 1


def test_minimize_single_term():
    assert minimize_ratio(UNIT, 0.4, OptimizerConfig(N=1)).value == 1.0


def test_two_terms_half_below_one():
    r = minimize_ratio(UNIT, 0.5, OptimizerConfig(N=2))
    _, ref = golden_min(lambda s: ((s + 1) ** 0.5 + 2**-0.5) / (s**0.5 + 1), 1, 1000)
    assert r.value < 1
    assert r.value == pytest.approx(ref, abs=1e-9)
    assert r.value == pytest.approx(0.9659, abs=1e-4)
    # the minimiser is close to x = (14, 1)
    assert r.x[0] / r.x[1] == pytest.approx(14, abs=0.1)


def test_brute_force_two_terms():
    o = brute_force_oracle(UNIT, 0.5, 2)
    _, ref = golden_min(lambda s: ((s + 1) ** 0.5 + 2**-0.5) / (s**0.5 + 1), 1, 1000)
    assert o.value == pytest.approx(ref, abs=1e-6)
    assert ratio_functional(UNIT, o.x, 0.5) == pytest.approx(o.value, rel=1e-12)
    assert brute_force_oracle(UNIT, 0.3, 1).value == 1.0
    with pytest.raises(ValueError):
        brute_force_oracle(UNIT, 0.3, 4)
    with pytest.raises(ValueError):
        brute_force_oracle(UNIT, 0.3, 2, resolution=100)


def test_brute_force_agrees_with_minimizer_quarter():
    o = brute_force_oracle(UNIT, 0.25, 2)
    r = minimize_ratio(UNIT, 0.25, OptimizerConfig(N=2))
    assert abs(o.value - r.value) <= 1e-4


def test_stationarity_examples(rng):
    assert stationarity_check(UNIT, [3.0], 0.4) == 0.0
    o = brute_force_oracle(UNIT, 0.5, 2)
    assert stationarity_check(UNIT, o.x, 0.5) <= 1e-3
    with pytest.raises(ValueError):
        stationarity_check(UNIT, [1.0, 0.0], 0.5)


def test_gradient_vs_finite_differences(family, rng):
    for _ in range(10):
        x = rng.uniform(0.2, 2.0, size=20)
        p = rng.uniform(0.1, 0.9)
        g = ratio_gradient(family, x, p)
        fd = central_difference(lambda z: math.log(ratio_functional(family, z, p)), x)
        assert np.max(np.abs(g - fd)) <= 1e-5
        gl = lhs_gradient(family, x, p)
        fdl = central_difference(lambda z: copson_lhs(family, z, p), x)
        assert np.max(np.abs(gl - fdl)) <= 1e-5


def test_gradient_orthogonal_to_scaling(rng):
    x = rng.uniform(0.1, 1, 50)
    g = ratio_gradient(PD2, x, 0.3)
    assert abs(g @ x) <= 1e-12 * np.linalg.norm(g) * np.linalg.norm(x) * 50


def test_upper_bound_soundness():
    N, p = 200, 0.25
    r = minimize_ratio(UNIT, p, OptimizerConfig(N=N))
    assert r.value <= extremal_probe(UNIT, p, 1e-3, N)
    assert r.value <= r.initial_value
    assert r.value <= ratio_functional(UNIT, np.ones(N), p)
    assert min(r.trace) == pytest.approx(r.value)


@pytest.mark.parametrize("p", np.linspace(0.05, 0.95, 10).tolist())
def test_validity_floor(p):
    r = minimize_ratio(UNIT, p, OptimizerConfig(N=60, max_iters=3000))
    assert r.value >= p**p - 1e-6


@pytest.mark.parametrize("fam,L,p", [(UNIT, 1, 0.1), (UNIT, 1, 0.3), (PD2, 0.5, 0.0625),
                                     (WeightFamily.power_kernel(2), 0.5, 0.05)])
def test_certified_region_consistency(fam, L, p):
    r = minimize_ratio(fam, p, OptimizerConfig(N=100, max_iters=5000))
    assert r.value >= (p / (L - p)) ** p - 1e-4


def test_deterministic_and_seeded():
    cfg = OptimizerConfig(N=30, init="random", seed=7, max_iters=500)
    a, b = minimize_ratio(PD2, 0.3, cfg), minimize_ratio(PD2, 0.3, cfg)
    assert a.value == b.value and np.array_equal(a.x, b.x) and a.trace == b.trace
    c = minimize_ratio(PD2, 0.3, OptimizerConfig(N=30, init="random", seed=8, max_iters=500))
    assert c.trace[0] != a.trace[0]


def test_fixed_step_rule_decreases():
    r = minimize_ratio(UNIT, 0.5, OptimizerConfig(N=5, step_rule="fixed", step=0.5,
                                                   init="uniform", max_iters=2000))
    assert r.value < r.initial_value
    assert np.sum(r.x**0.5) == pytest.approx(1.0)


def test_schedule():
    out = estimate_schedule(UNIT, 0.25, (20, 40), OptimizerConfig(N=1, max_iters=2000))
    assert [e.x.size for e in out] == [20, 40]
    assert out[1].value <= out[0].value + 1e-9


def test_config_validation():
    for bad in (dict(N=0), dict(N=3, step_rule="adam"), dict(N=3, init="zeros"), dict(N=3, eps=0)):
        with pytest.raises(ValueError):
            OptimizerConfig(**bad)
