import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import sawspec as sw
from sawspec.dedekind import dedekind_values


class TestDedekindSum:
    def test_known_values(self):
        # s_q(1) = (q-1)(q-2)/(12q); s_5(2) = 0 by the direct hand sum
        assert sw.dedekind_sum(5, 1) == Fraction(1, 5)
        assert sw.dedekind_sum(5, 1, "direct") == Fraction(1, 5)
        assert sw.dedekind_sum(5, 2) == 0
        assert sw.dedekind_sum(5, 2, "direct") == 0
        assert sw.dedekind_sum(7, 1) == Fraction(5, 14)

    def test_oddness(self):
        assert sw.dedekind_sum(7, 6) == -sw.dedekind_sum(7, 1)
        for q in (11, 13, 101):
            for a in (1, 2, 5):
                assert sw.dedekind_sum(q, q - a) == -sw.dedekind_sum(q, a)

    def test_rejects_zero_class(self):
        with pytest.raises(ValueError):
            sw.dedekind_sum(7, 0)
        with pytest.raises(ValueError):
            sw.dedekind_sum(7, 14)

    def test_methods_agree_exactly_small(self):
        for q in (3, 5, 7, 11, 13):
            for a in range(1, q):
                assert sw.dedekind_sum(q, a, "direct") == sw.dedekind_sum(q, a)

    @given(st.integers(min_value=2, max_value=400))
    @settings(max_examples=60, deadline=None)
    def test_reciprocity_random(self, k):
        for h in range(1, k):
            if math.gcd(h, k) == 1:
                lhs = sw.dedekind_sum_pair(h, k) + sw.dedekind_sum_pair(k, h)
                rhs = Fraction(-1, 4) + (
                    Fraction(h, k) + Fraction(k, h) + Fraction(1, h * k)
                ) / 12
                assert lhs == rhs
                break

    def test_float_descent_matches_exact(self):
        from sawspec.dedekind import _dedekind_float

        for q in (101, 1009, 10007):
            for a in (1, 7, q // 2, q - 3):
                assert _dedekind_float(a, q) == pytest.approx(
                    float(sw.dedekind_sum(q, a)), abs=1e-10
                )


class TestSpectrum:
    def test_zero_mode(self, spec_101_naive):
        assert spec_101_naive.values[0] == 0.0

    def test_naive_vs_chirpz(self, spec_101_naive):
        cz = sw.spectrum_all(101, "chirp-z")
        assert np.max(np.abs(spec_101_naive.values - cz.values)) <= 1e-9

    def test_exact_oddness_of_stored_values(self, spec_1009):
        v = spec_1009.values
        q = spec_1009.q
        for t in (1, 2, 17, 500):
            assert v[q - t] == -v[t]

    def test_inverse_dft_recovers_sums(self, spec_101_naive):
        q = spec_101_naive.q
        shat = 1j * spec_101_naive.values
        back = np.fft.fft(shat)  # sum_t shat(t) e(-at/q)
        direct = dedekind_values(q)
        assert np.max(np.abs(back.real - direct)) <= 1e-9
        assert np.max(np.abs(back.imag)) <= 1e-9

    def test_parseval(self, spec_1009):
        direct = dedekind_values(spec_1009.q)
        lhs = float(np.sum(spec_1009.values**2))
        rhs = float(np.mean(direct**2))
        assert lhs == pytest.approx(rhs, rel=1e-8)

    def test_resource_cap(self):
        from sawspec.errors import ResourceLimitError

        with pytest.raises(ResourceLimitError):
            sw.spectrum_all(10007, max_q=9999)


class TestTruncatedRoute:
    def test_purely_imaginary(self):
        v = sw.spectrum_point_truncated(101, 7, 101**2)
        assert v.real == 0.0

    def test_error_contract_scan(self, spec_101_naive):
        q = 101
        x = q * q
        worst = max(
            abs(sw.spectrum_point_truncated(q, t, x).imag - spec_101_naive.values[t])
            for t in range(1, q)
        )
        assert worst <= 10 * q / x

    def test_converges_in_x(self, spec_101_naive):
        q = 101
        errs = [
            abs(
                sw.spectrum_point_truncated(q, 3, x).imag
                - spec_101_naive.values[3]
            )
            for x in (q, q**2, 50 * q**2)
        ]
        assert errs[2] < errs[0]
        assert errs[2] <= 10 * q / (50 * q**2)

    def test_rejects_zero_class(self):
        with pytest.raises(ValueError):
            sw.spectrum_point_truncated(101, 0, 100)


class TestCharacterRoute:
    def test_q3_closed_form(self):
        table = sw.build_table(3, a_series_cutoff=100)
        v = sw.spectrum_point_characters(3, 1, table)
        assert v.imag == pytest.approx(1.0 / (18.0 * math.sqrt(3.0)), abs=1e-14)
        assert abs(v.real) <= 1e-14

    def test_agrees_with_dft_all_t(self, spec_101_naive, table_101):
        q = 101
        worst = max(
            abs(
                sw.spectrum_point_characters(q, t, table_101).imag
                - spec_101_naive.values[t]
            )
            for t in range(1, q)
        )
        assert worst <= 1e-8

    def test_oddness_from_route(self, table_101):
        for t in (1, 5, 33):
            a = sw.spectrum_point_characters(101, t, table_101)
            b = sw.spectrum_point_characters(101, 101 - t, table_101)
            assert b.imag == pytest.approx(-a.imag, abs=1e-13)


class TestThreeRouteAgreement1009:
    def test_char_route(self, spec_1009, table_1009):
        q = 1009
        worst = max(
            abs(
                sw.spectrum_point_characters(q, t, table_1009).imag
                - spec_1009.values[t]
            )
            for t in range(1, q)
        )
        assert worst <= 1e-8

    def test_truncated_route_sampled(self, spec_1009):
        q = 1009
        x = q * q
        rng = np.random.default_rng(3)
        for t in rng.integers(1, q, 25):
            err = abs(
                sw.spectrum_point_truncated(q, int(t), x).imag
                - spec_1009.values[int(t)]
            )
            assert err <= 10 * q / x
