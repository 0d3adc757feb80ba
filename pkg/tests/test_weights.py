import math

import numpy as np
import pytest

from copson import WeightFamily, l_gap, parse_family, partial_sum, sup_l_gap, weight
from copson.weights import l_gaps

from oracles import direct_partial_sums


def test_weight_examples():
    assert weight(WeightFamily.unit(), 5) == 1
    assert weight(WeightFamily.power_diff(2), 3) == pytest.approx(5, rel=1e-15)
    assert weight(WeightFamily.power_kernel(3), 4) == pytest.approx(16, rel=1e-15)


def test_partial_sum_examples():
    assert partial_sum(WeightFamily.power_diff(2), 3) == 9
    assert partial_sum(WeightFamily.unit(), 7) == 7
    assert partial_sum(WeightFamily.power_kernel(3), 3) == math.fsum([1, 4, 9])


def test_l_gap_examples():
    assert l_gap(WeightFamily.unit(), 1) == 1
    assert l_gap(WeightFamily.unit(), 1234) == 1
    assert l_gap(WeightFamily.power_diff(2), 1) == pytest.approx(4 / 3 - 1, rel=1e-14)
    assert l_gap(WeightFamily.power_kernel(3), 1) == pytest.approx(0.25, rel=1e-14)


def test_unit_gap_is_exactly_one():
    assert np.all(l_gaps(WeightFamily.unit(), 5000) == 1.0)


def test_sup_gap_unit():
    s = sup_l_gap(WeightFamily.unit(), 100)
    assert s.estimate == 1 and s.monotone


def test_sup_gap_powerdiff_matches_closed_form():
    N = 10**6
    s = sup_l_gap(WeightFamily.power_diff(2), N)
    assert abs(s.estimate - 0.5) < 1e-6
    # gap(n) = (2n^2 - 1)/(4n^2 - 1) for alpha = 2
    n = np.arange(1, 2001, dtype=float)
    closed = (2 * n**2 - 1) / (4 * n**2 - 1)
    np.testing.assert_allclose(l_gaps(WeightFamily.power_diff(2), 2000), closed, rtol=1e-12)
    assert s.monotone


def test_sup_gap_powerkernel3():
    s = sup_l_gap(WeightFamily.power_kernel(3), 10**6)
    assert abs(s.estimate - 1 / 3) < 1e-5


def test_increment_matches_weight(family):
    N = 2000
    Lam = family.partial_sums(N)
    lam = family.weights(N)
    np.testing.assert_allclose(np.diff(Lam), lam[1:], rtol=1e-12)


@pytest.mark.parametrize("alpha", [1.0, 1.5, 2.0, 2.7])
def test_powerdiff_closed_form_vs_direct(alpha):
    fam = WeightFamily.power_diff(alpha)
    N = 10**4
    direct = direct_partial_sums(fam.weights(N).tolist())
    np.testing.assert_allclose(fam.partial_sums(N), direct, rtol=1e-10)
    assert fam.partial_sum(N) == N**alpha


def test_powerkernel_prefix_sums_vs_fsum():
    fam = WeightFamily.power_kernel(2.5)
    lam = fam.weights(3000)
    direct = direct_partial_sums(lam.tolist())
    np.testing.assert_allclose(fam.partial_sums(3000), direct, rtol=1e-15)
    # cache extension keeps earlier entries
    np.testing.assert_array_equal(fam.partial_sums(5000)[:3000], fam.partial_sums(3000))


@pytest.mark.parametrize("fam,alpha", [(WeightFamily.power_diff(a), a) for a in (1, 1.3, 2, 3.5)]
                         + [(WeightFamily.power_kernel(a), a) for a in (2, 2.5, 4)])
def test_gap_bounded_by_inverse_alpha(fam, alpha):
    assert np.max(l_gaps(fam, 10**5)) <= 1 / alpha + 1e-9


def test_rejects_bad_families():
    with pytest.raises(ValueError):
        WeightFamily.power_diff(0.5)
    with pytest.raises(ValueError):
        WeightFamily.custom([1, 0, 2])
    with pytest.raises(IndexError):
        WeightFamily.custom([1, 2]).weights(3)


def test_parse_family(tmp_path):
    assert parse_family("unit") == WeightFamily.unit()
    assert parse_family("powerdiff:2") == WeightFamily.power_diff(2)
    assert parse_family("powerkernel:3") == WeightFamily.power_kernel(3)
    f = tmp_path / "w.txt"
    f.write_text("1\n# comment\n2.5\n\n0.5\n")
    fam = parse_family(f"custom:{f}")
    np.testing.assert_array_equal(fam.weights(3), [1, 2.5, 0.5])
    np.testing.assert_array_equal(fam.partial_sums(3), [1, 3.5, 4])
    for bad in ("foo", "powerdiff", "powerdiff:x", "unit:3"):
        with pytest.raises(ValueError):
            parse_family(bad)
