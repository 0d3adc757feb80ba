import json
import math
from fractions import Fraction as F

import numpy as np
import pytest

from copson import (
    WeightFamily,
    a1,
    a2,
    check_cond_16,
    check_cond_17,
    check_cond_115,
    p_116,
    p_L,
    theorem1_applicable,
    theorem1_certificate,
    theorem1prime_certificate,
    relaxed_chain,
    thresholds,
)
from copson.conditions import cond_16_margins

UNIT = WeightFamily.unit()
PD2 = WeightFamily.power_diff(2)


def test_cond16_first_term_by_hand():
    m = cond_16_margins(UNIT, 1.0, 1 / 3, 1)[0]
    # lhs = 2, rhs = 2^(3/2) - (1/2)^2 * 2^(3/2)
    assert m == pytest.approx(2**1.5 * 0.75 - 2, abs=1e-14)
    assert m == pytest.approx(0.12132, abs=1e-5)


def test_cond16_levin_steckin_scan():
    c = check_cond_16(UNIT, 1.0, 1 / 3, 10**5)
    assert c.passed and c.N == 10**5


def test_cond16_fails_for_large_p():
    c = check_cond_16(UNIT, 1.0, 0.9, 10)
    assert not c.passed and c.min_margin < 0


def test_cond16_tie_at_minus_tol_fails():
    m = cond_16_margins(UNIT, 1.0, 0.9, 3).min()
    assert not check_cond_16(UNIT, 1.0, 0.9, 3, tol=-m).passed
    assert check_cond_16(UNIT, 1.0, 0.9, 3, tol=-m * 1.0001).passed


def test_cond17_examples():
    c = check_cond_17(UNIT, 1.0, 100)
    assert c.passed and c.details["sup_estimate"] == 1
    c = check_cond_17(PD2, 0.5, 10**6)
    assert c.passed and c.details["sup_estimate"] == pytest.approx(0.5, abs=1e-6)
    assert not check_cond_17(PD2, 0.4, 1000).passed


def test_relaxed_gap_examples():
    # L + 2M = 1 sits outside the admissible domain
    with pytest.raises(ValueError):
        check_cond_115(UNIT, 0.9, 0.05, 1000)
    c = check_cond_115(UNIT, 0.9, 0.04, 1000)
    assert not c.passed and c.argmin_n == 1000
    assert check_cond_115(PD2, 0.55, 0.1, 10**4).passed
    with pytest.raises(ValueError):
        check_cond_115(PD2, 0.45, 0.1, 10)
    with pytest.raises(ValueError):
        check_cond_115(PD2, 0.7, 0.2, 10)


def test_certificate_json_roundtrip():
    c = check_cond_16(PD2, 0.5, 0.0625, 100)
    d = json.loads(c.to_json())
    assert set(d) >= {"condition_id", "params", "N", "tol", "passed", "min_margin", "argmin_n"}
    assert d["condition_id"] == "COND_1_6" and d["N"] == 100 and d["tol"] == 1e-9


def test_nonfinite_reported_as_failure():
    # a huge jump in the weights makes lambda_{n+1}/Lambda_{n+1}^(-r) blow up
    fam = WeightFamily.custom([1.0, 1e-300, 1.0])
    c = check_cond_16(fam, 1.0, 0.2, 2)
    assert not c.passed


def test_a1_exact():
    assert a1(1, F(1, 3)) == 2
    assert isinstance(a1(1, F(1, 3)), F)
    assert a1(100, 0.3) < 0


def test_a2_by_hand():
    # 15/16 + 105/64 - 705/1024 - 497/512 + 17/128
    assert a2(F(1, 2), F(1, 16)) == F(1077, 1024)
    assert a2(0.5, 0.0625) == pytest.approx(1.05176, abs=1e-5)


def test_rational_vs_float():
    for L in np.linspace(0.05, 3, 50):
        for p in np.linspace(0.01, 0.95, 50):
            if L <= p:
                continue
            Lf, pf = F(float(L)), F(float(p))
            for fn in (a1, a2):
                exact = float(fn(Lf, pf))
                approx = fn(float(L), float(p))
                assert approx == pytest.approx(exact, rel=1e-9, abs=1e-12)


def test_a2_nonnegative_on_pL_curve():
    for k in range(1, 100):
        L = F(k, 100)
        assert a2(L, L * L / 4) >= 0


def test_thresholds():
    assert p_L(0.5) == 0.0625
    assert p_L(F(1, 2)) == F(1, 16)
    assert p_116(0.8, 0.05) == pytest.approx(0.0727272727, abs=1e-9)
    pl, p16 = thresholds(0.6, 0.19)
    assert pl == pytest.approx(0.09)
    assert p16 == pytest.approx(0.6 * 0.2 / (4 * 1.39))
    with pytest.raises(ValueError):
        p_116(0.4, 0.1)
    with pytest.raises(ValueError):
        p_L(1.0)


def test_either_threshold_branch_can_win():
    L, M = F(4, 5), F(1, 20)
    assert p_116(L, M) == L * (2 * L - 1) / (4 * (2 * L + M))
    L, M = F(9, 10), F(49, 1000)
    assert p_116(L, M) == L * (1 - L - 2 * M) / (2 * (1 - L - M))


def test_polynomial_branch_examples():
    d = theorem1_applicable(1, F(1, 3))
    assert d.applicable and d.branch == 1 and d.a1 == 2
    d = theorem1_applicable(0.5, 0.0625)
    assert d.applicable and d.branch == 2 and d.a2 == pytest.approx(1.0518, abs=1e-4)
    d = theorem1_applicable(1, 0.5)
    assert not d.applicable and "1/3" in d.reason
    assert not theorem1_applicable(0.5, 0.2).applicable
    assert not theorem1_applicable(100, 0.3).applicable
    assert theorem1_certificate(1, F(1, 3)).passed


def test_small_p_certificates():
    c = theorem1prime_certificate(PD2, 0.5, 0.0625, 10**4)
    assert c.passed
    assert not theorem1prime_certificate(PD2, 0.5, 0.07, 10**4).passed
    c = theorem1prime_certificate(PD2, 0.55, 0.01, 10**4, M=0.1)
    assert c.passed and c.details["base_condition"] == "COND_1_15"


def test_chain_follows_from_final_thresholds(rng):
    checked = 0
    while checked < 500:
        L = rng.uniform(0.5, 1)
        M = rng.uniform(0, (1 - L) / 2)
        if not (0 < M and L + 2 * M < 1 and L > 0.5):
            continue
        p = rng.uniform(0, 1) * p_116(L, M)
        if p <= 0:
            continue
        s = relaxed_chain(L, M, p)
        assert s["threshold_first"] >= 0 and s["threshold_second"] >= 0
        assert s["k_positive"] >= 0 and s["exponent_positive"] > 0
        for key in ("slope_factor", "bound_one", "bound_p", "bound_ratio", "mixed_terms"):
            assert s[key] >= -1e-12, key
        checked += 1
