import math

import numpy as np
import pytest

import sawspec as sw
from sawspec import distribution as dist

EG_HALF = math.exp(0.5772156649015329) / 2.0


@pytest.fixture(scope="module")
def dist_ck(ck_10007):
    return dist.from_ck_vector(ck_10007)


@pytest.fixture(scope="module")
def dist_spec(spec_10007):
    return dist.from_spectrum(spec_10007)


class TestConstruction:
    def test_scales(self, dist_ck, dist_spec):
        assert dist_ck.scale == pytest.approx(EG_HALF, abs=1e-14)
        assert dist_spec.scale == pytest.approx(EG_HALF, abs=1e-14)
        d = dist.make_distribution("R", [0.1, -0.2])
        assert d.scale == pytest.approx(3 * math.exp(0.5772156649015329) / math.pi**2)

    def test_sample_counts(self, dist_ck, dist_spec):
        assert dist_ck.n == 10007 - 1
        assert dist_spec.n == 10007 - 1

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            dist.make_distribution("C", [])

    def test_bad_label_rejected(self):
        with pytest.raises(ValueError):
            dist.make_distribution("Z", [1.0])


class TestEcdf:
    def test_limits(self, dist_ck):
        assert dist.ecdf_scaled(dist_ck, 1e9) == 1.0
        assert dist.ecdf_scaled(dist_ck, -1e9) == 0.0

    def test_median_exact(self, dist_ck, dist_spec):
        assert dist.ecdf_scaled(dist_ck, 0.0) == 0.5
        assert dist.ecdf_scaled(dist_spec, 0.0) == 0.5

    def test_monotone(self, dist_ck):
        xs = np.linspace(-3, 3, 41)
        vals = [dist.ecdf_scaled(dist_ck, x) for x in xs]
        assert all(a <= b for a, b in zip(vals, vals[1:]))

    def test_symmetry_pointwise(self, dist_ck):
        q = 10007
        for x in (0.5, 1.0, 2.0):
            gap = abs(
                dist.ecdf_scaled(dist_ck, x) + dist.ecdf_scaled(dist_ck, -x) - 1.0
            )
            assert gap <= 2.0 / math.sqrt(q)

    def test_permutation_stability(self, ck_10007):
        base = dist.from_ck_vector(ck_10007)
        rng = np.random.default_rng(0)
        shuffled = dist.make_distribution(
            "C", rng.permutation(ck_10007.samples.copy())
        )
        for x in (-1.0, 0.0, 0.3, 2.2):
            assert dist.ecdf_scaled(base, x) == dist.ecdf_scaled(shuffled, x)


class TestTails:
    def test_beyond_extremes(self, dist_ck):
        assert dist.tail_frequency(dist_ck, 1e9, "upper") == 0.0
        assert dist.tail_frequency(dist_ck, 1e9, "lower") == 0.0

    def test_two_sided_balance(self, dist_ck):
        q = 10007
        up = dist.tail_frequency(dist_ck, 1.0, "upper")
        lo = dist.tail_frequency(dist_ck, 1.0, "lower")
        assert abs(up - lo) <= 2.0 / math.sqrt(q)

    def test_monotone_decay(self, dist_ck):
        up = [dist.tail_frequency(dist_ck, x, "upper") for x in (0.5, 1.0, 2.0)]
        assert up[0] >= up[1] >= up[2]

    def test_bad_side(self, dist_ck):
        with pytest.raises(ValueError):
            dist.tail_frequency(dist_ck, 1.0, "sideways")


class TestExtremes:
    def test_odd_pairing(self, dist_ck):
        mn, amn, mx, amx = dist.extremes(dist_ck)
        assert mx == -mn
        assert amn + amx == 10007

    def test_report_ratio(self, dist_ck):
        rep = dist.extreme_report(dist_ck, 10007)
        assert 0.0 < rep["max_over_loglog_scale"] <= 1.2


class TestAlmostPeriod:
    def test_zero_shift(self, dist_ck):
        assert dist.almost_period_stat(dist_ck, 0) == 0.0

    def test_requires_index(self):
        d = dist.make_distribution("C", [1.0, -1.0])
        with pytest.raises(ValueError):
            dist.almost_period_stat(d, 1)

    def test_small_shift_smaller_than_generic(self, dist_ck):
        # 60 is a multiple of everything below 7; 61 is not
        s60 = dist.almost_period_stat(dist_ck, 60)
        s61 = dist.almost_period_stat(dist_ck, 61)
        assert s60 < s61

    def test_double_shift_bound_shape(self, dist_ck):
        s60 = dist.almost_period_stat(dist_ck, 60)
        s120 = dist.almost_period_stat(dist_ck, 120)
        assert s120 <= 2.0 * 4.0 * s60


class TestSummary:
    def test_spectrum_second_moment(self, dist_spec):
        second = sw.empirical_moments(dist_spec.samples, 2)[1]
        assert second == pytest.approx(5 * math.pi**2 / 144, rel=0.05)

    def test_summary_fields(self, dist_ck):
        s = dist.summary(dist_ck)
        assert set(s) == {
            "label",
            "count",
            "scale",
            "min",
            "max",
            "moments",
            "symmetry_stat",
        }
        assert len(s["moments"]) == 6
        assert s["symmetry_stat"] <= 3.0 / math.sqrt(10007)

    def test_histogram(self, dist_ck):
        counts, edges = dist.histogram(dist_ck)
        assert counts.sum() == dist_ck.n
        assert len(edges) == len(counts) + 1
