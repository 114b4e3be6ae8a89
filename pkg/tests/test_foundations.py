import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from sawspec.foundations import (
    build_sieves,
    coeff_a,
    coeff_a_floats,
    coeff_b,
    constant_C,
    fejer_kernel,
    mod_inverse,
    psi,
    psi_array,
    psi_smoothed,
)

TWIN_DOUBLED = 1.3203236316937392  # 2 * prod_{p>=3} (1 - (p-1)^-2)


class TestPsi:
    def test_integer_values(self):
        assert psi(0.0) == 0.0
        assert psi(7.0) == 0.0
        assert psi(-3.0) == 0.0
        assert psi(10.0, plus=True) == 0.5

    def test_quarter_points(self):
        assert psi(0.25) == -0.25
        assert psi(-0.25) == 0.25
        assert psi(0.75) == 0.25

    def test_half_integers_vanish(self):
        assert psi(0.5) == 0.0
        assert psi(2.5) == 0.0
        assert psi(-1.5) == 0.0

    @given(st.floats(min_value=-1e9, max_value=1e9, allow_nan=False))
    def test_oddness_exact(self, x):
        assert psi(x) + psi(-x) == 0.0

    @given(st.floats(min_value=-1e3, max_value=1e3))
    def test_periodicity(self, x):
        # stay away from the jump at integers, where x + 1.0 can round
        # across the discontinuity
        assume(abs(x - round(x)) > 1e-9)
        assert psi(x + 1.0) == pytest.approx(psi(x), abs=5e-13)

    @given(st.floats(min_value=-1e6, max_value=1e6))
    def test_range(self, x):
        assert -0.5 <= psi(x) <= 0.5

    def test_array_agrees_with_scalar(self):
        xs = np.array([-2.5, -0.3, 0.0, 0.125, 1.0, 3.7])
        assert np.array_equal(psi_array(xs), [psi(float(x)) for x in xs])
        assert psi_array(np.array(4.0), plus=True) == 0.5


class TestSmoothing:
    def test_vanishes_at_zero(self):
        for N in (1, 5, 40):
            assert psi_smoothed(N, 0.0) == 0.0

    def test_single_term_value(self):
        # N=1: -(1/2) sin(2 pi x)/pi at x = 1/4
        assert psi_smoothed(1, 0.25) == pytest.approx(-1.0 / (2 * math.pi), abs=1e-15)

    def test_bounded_by_half(self):
        x = np.linspace(-2, 2, 1501)
        for N in (1, 7, 100):
            assert np.max(np.abs(psi_smoothed(N, x))) <= 0.5 + 1e-12

    def test_approximation_rate(self):
        # |psi_N - psi| <= c min(1, 1/(N ||x||)); measured c just under 1/2
        x = np.linspace(-2.3, 2.3, 4001) + 1e-4
        dist = np.abs(x - np.round(x))
        for N in (1, 8, 64, 512):
            err = np.abs(psi_smoothed(N, x) - psi_array(x))
            bound = np.minimum(1.0, 1.0 / (N * dist))
            assert np.max(err / bound) <= 1.0

    def test_fejer_nonnegative_dense_grid(self):
        x = np.linspace(-1.5, 1.5, 20001)
        for N in (1, 3, 17):
            vals = fejer_kernel(N, x)
            assert np.min(vals) >= -1e-12
            assert fejer_kernel(N, 0.0) == N + 1
            assert fejer_kernel(N, 2.0) == N + 1


class TestModular:
    def test_examples(self):
        assert mod_inverse(3, 7) == 5
        assert mod_inverse(1, 97) == 1
        assert mod_inverse(96, 97) == 96

    def test_rejects_zero_class(self):
        with pytest.raises(ValueError):
            mod_inverse(0, 11)
        with pytest.raises(ValueError):
            mod_inverse(22, 11)

    @given(st.integers(min_value=1, max_value=10**6))
    def test_inverse_property(self, a):
        q = 10007
        if a % q:
            assert a * mod_inverse(a, q) % q == 1


def _phi_trial(n):
    out = n
    d = 2
    while d * d <= n:
        if n % d == 0:
            out -= out // d
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out -= out // n
    return out


def _mu_trial(n):
    mu = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            mu = -mu
        d += 1
    if n > 1:
        mu = -mu
    return mu


def _totient_sum_recursive(N, cache):
    # Phi(N) = N(N+1)/2 - sum_{d>=2} Phi(N//d): independent of any sieve
    if N in cache:
        return cache[N]
    total = N * (N + 1) // 2
    d = 2
    while d <= N:
        top = N // d
        d_hi = N // top
        total -= (d_hi - d + 1) * _totient_sum_recursive(top, cache)
        d = d_hi + 1
    cache[N] = total
    return total


class TestSieves:
    def test_examples(self, sieves_1m):
        assert sieves_1m.euler_phi[10] == 4
        assert sieves_1m.mobius[10] == 1
        assert sieves_1m.euler_phi[9] == 6
        assert sieves_1m.mobius[9] == 0

    def test_prime_rows(self, sieves_1m):
        for p in (2, 3, 101, 999983):
            assert sieves_1m.smallest_prime_factor[p] == p
            assert sieves_1m.euler_phi[p] == p - 1
            assert sieves_1m.mobius[p] == -1

    def test_against_trial_division(self, sieves_1m):
        rng = np.random.default_rng(7)
        sample = list(range(2, 2000)) + list(rng.integers(2000, 10**6, 300))
        for n in sample:
            n = int(n)
            assert sieves_1m.euler_phi[n] == _phi_trial(n)
            assert sieves_1m.mobius[n] == _mu_trial(n)

    def test_totient_prefix_against_recursive_identity(self, sieves_1m):
        total = int(np.sum(sieves_1m.euler_phi[: 10**6 + 1]))
        assert total == _totient_sum_recursive(10**6, {})

    def test_factorize(self, sieves_1m):
        assert sieves_1m.factorize(360) == [(2, 3), (3, 2), (5, 1)]
        assert sieves_1m.factorize(1) == []

    def test_resource_cap(self):
        from sawspec.errors import ResourceLimitError

        with pytest.raises(ResourceLimitError):
            build_sieves(10**7, max_limit=10**6)


class TestCoefficients:
    def test_a_examples(self):
        assert coeff_a(2) == Fraction(-1, 2)
        assert coeff_a(9) == Fraction(-1, 3)
        assert coeff_a(8) == 0
        assert coeff_a(1) == 1
        assert coeff_a(3) == Fraction(2, 3)

    def test_b_examples(self):
        assert coeff_b(3) == 1
        assert coeff_b(9) == 0
        assert coeff_b(15) == Fraction(1, 3)
        assert coeff_b(2) == 0
        assert coeff_b(1) == 1

    def test_b_equals_convolution_of_a(self, sieves_1m):
        # b(n) = sum_{uv=n} a(u)/v exactly, for every n <= 1e4
        for n in range(1, 10_001):
            conv = Fraction(0)
            d = 1
            while d * d <= n:
                if n % d == 0:
                    conv += coeff_a(d, sieves_1m) * Fraction(d, n)
                    if d * d != n:
                        conv += coeff_a(n // d, sieves_1m) * Fraction(n // d, n)
                d += 1
            assert conv == coeff_b(n, sieves_1m), n

    def test_float_tables_match_exact(self, sieves_1m):
        a = coeff_a_floats(3000, sieves_1m)
        for n in (1, 2, 3, 4, 8, 9, 15, 45, 105, 2048, 2310):
            assert a[n] == pytest.approx(float(coeff_a(n)), abs=1e-15)

    def test_abs_a_tail_exponent(self, sieves_1m):
        # partial sums of |a| approach their limit like N^(-1/2+eps);
        # the fitted slope must be at most -0.4
        a = np.abs(coeff_a_floats(10**5, sieves_1m))
        partial = np.cumsum(a)
        p = sieves_1m.primes().astype(float)
        p = p[p >= 3]
        limit = 1.5 * float(np.prod(1.0 + 3.0 / (p * (p - 2.0))))
        grid = [100, 1000, 10_000, 100_000]
        tails = [limit - partial[N] for N in grid]
        assert all(t > 0 for t in tails)
        slope = np.polyfit(np.log(grid), np.log(tails), 1)[0]
        assert slope <= -0.4


class TestConstant:
    def test_value_and_bound(self):
        value, bound = constant_C()
        assert bound < 1e-9
        assert value == pytest.approx(TWIN_DOUBLED, abs=2e-9)
        assert abs(value - TWIN_DOUBLED) <= bound

    def test_single_factor_exclusion(self):
        base, _ = constant_C()
        excl3, _ = constant_C(excluded_prime=3)
        assert excl3 / base == pytest.approx(4.0 / 3.0, rel=1e-14)

    def test_exclusion_beyond_cutoff_is_noop(self):
        base, bound = constant_C(tolerance=1e-6)
        far, _ = constant_C(excluded_prime=2**31 - 1, tolerance=1e-6)
        assert abs(far - base) <= 1e-6
