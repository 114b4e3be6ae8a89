"""Sawtooth kernels, sieve tables, and the multiplicative coefficients a(n), b(n).

Everything downstream (Dedekind spectra, bias constants, correlation
integrals, totient error moments) consumes these primitives.  Exact
identities are carried by ``fractions.Fraction``; float paths exist for
the bulk/vectorized consumers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ResourceLimitError

__all__ = [
    "psi",
    "psi_array",
    "psi_smoothed",
    "fejer_kernel",
    "mod_inverse",
    "inverse_table",
    "SieveTables",
    "build_sieves",
    "CoefficientSeries",
    "build_coefficient_series",
    "coeff_a",
    "coeff_b",
    "coeff_a_floats",
    "coeff_b_floats",
    "coeff_b_fractions",
    "constant_C",
]


# ---------------------------------------------------------------------------
# sawtooth and Fejer machinery


def psi(x: float, plus: bool = False) -> float:
    """Centered sawtooth: {x} - 1/2 off integers, 0 at integers.

    ``plus=True`` returns 1/2 at integers instead of 0.  The value is
    computed from |x| with the sign restored afterwards, so the oddness
    psi(-x) == -psi(x) is exact in floating point, not just up to
    rounding.
    """
    if x == math.floor(x):
        return 0.5 if plus else 0.0
    sign = 1.0
    if x < 0.0:
        x = -x
        sign = -1.0
    return sign * (x - math.floor(x) - 0.5)


def psi_array(x: np.ndarray, plus: bool = False) -> np.ndarray:
    """Vectorized :func:`psi` (same integer conventions, exact oddness)."""
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    return np.where(
        x == np.floor(x),
        0.5 if plus else 0.0,
        np.sign(x) * ((ax - np.floor(ax)) - 0.5),
    )


def psi_smoothed(N: int, x) -> float | np.ndarray:
    """Fejer-smoothed sawtooth of order N.

    Equals i * sum_{0<|k|<=N} e(kx) (1 - |k|/(N+1)) / (2 pi k), folded to the
    real sine series -sum_k (1 - k/(N+1)) sin(2 pi k x)/(pi k).  Bounded by
    1/2 in absolute value.
    """
    if N < 1:
        raise ValueError("smoothing order must be >= 1")
    k = np.arange(1, N + 1, dtype=float)
    weights = (1.0 - k / (N + 1.0)) / (math.pi * k)
    xs = np.asarray(x, dtype=float)
    vals = -np.sin(2.0 * math.pi * np.multiply.outer(xs, k)) @ weights
    return float(vals) if np.ndim(x) == 0 else vals


def fejer_kernel(N: int, x) -> float | np.ndarray:
    """Order-N Fejer kernel; nonnegative, equals N + 1 at integers.

    Evaluated through the distance to the nearest integer, which keeps the
    sin ratio well conditioned arbitrarily close to the poles of sin(pi x).
    """
    if N < 0:
        raise ValueError("order must be >= 0")
    xs = np.asarray(x, dtype=float)
    d = xs - np.rint(xs)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.sin(math.pi * (N + 1) * d) / np.sin(math.pi * d)
    vals = np.where(d == 0.0, float(N + 1), ratio**2 / (N + 1.0))
    return float(vals) if np.ndim(x) == 0 else vals


# ---------------------------------------------------------------------------
# modular arithmetic


def mod_inverse(a: int, q: int) -> int:
    """Multiplicative inverse of a modulo q (q prime), in [1, q-1]."""
    if q < 2:
        raise ValueError("modulus must be >= 2")
    if a % q == 0:
        raise ValueError(f"{a} is not invertible mod {q}")
    return pow(a, -1, q)


def inverse_table(q: int) -> np.ndarray:
    """Table of inverses mod prime q: entry a holds a^-1, entry 0 holds 0."""
    inv = np.zeros(q, dtype=np.int64)
    if q > 1:
        inv[1] = 1
    for i in range(2, q):
        inv[i] = (-(q // i) * inv[q % i]) % q
    return inv


# ---------------------------------------------------------------------------
# sieves


@dataclass(frozen=True)
class SieveTables:
    """Smallest-prime-factor, totient and Mobius tables on [0, limit]."""

    limit: int
    smallest_prime_factor: np.ndarray
    euler_phi: np.ndarray
    mobius: np.ndarray

    def factorize(self, n: int) -> list[tuple[int, int]]:
        """Prime factorization of n <= limit via the SPF table."""
        if not 1 <= n <= self.limit:
            raise ValueError(f"n={n} outside sieve range [1, {self.limit}]")
        spf = self.smallest_prime_factor
        out: list[tuple[int, int]] = []
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out

    def primes(self) -> np.ndarray:
        idx = np.arange(self.limit + 1, dtype=np.int64)
        return np.nonzero(self.smallest_prime_factor == idx)[0][1:]  # drop 0==0


def build_sieves(limit: int, max_limit: int = 200_000_000) -> SieveTables:
    """Build SPF/phi/mu tables up to ``limit``.

    phi and mu are filled by one vectorized pass per prime; the SPF table
    is the factorization workhorse for the multiplicative coefficients.
    """
    if limit < 2:
        raise ValueError("limit must be >= 2")
    if limit > max_limit:
        raise ResourceLimitError(
            f"sieve limit {limit} exceeds configured cap {max_limit}"
        )
    n = limit + 1
    spf = np.zeros(n, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            seg = spf[p * p :: p]
            seg[seg == 0] = p
    untouched = spf == 0
    untouched[:2] = False
    spf[untouched] = np.nonzero(untouched)[0]

    phi = np.arange(n, dtype=np.int64)
    mu = np.ones(n, dtype=np.int8)
    mu[0] = 0
    idx = np.arange(n, dtype=np.int64)
    for p in np.nonzero(spf == idx)[0]:
        if p < 2:
            continue
        p = int(p)
        phi[p::p] -= phi[p::p] // p
        mu[p::p] = -mu[p::p]
        mu[p * p :: p * p] = 0
    phi[0] = 0
    return SieveTables(limit, spf, phi, mu)


# ---------------------------------------------------------------------------
# the multiplicative coefficients a(n) and b(n)

_A_CACHE: dict[int, Fraction] = {}
_B_CACHE: dict[int, Fraction] = {}


def _trial_factorize(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def _factorize(n: int, sieves: SieveTables | None) -> list[tuple[int, int]]:
    if sieves is not None and n <= sieves.limit:
        return sieves.factorize(n)
    return _trial_factorize(n)


def _a_prime_power(p: int, e: int) -> Fraction:
    if p == 2:
        return Fraction(-1, 2) if e == 1 else Fraction(0)
    if e == 1:
        return Fraction(2, p * (p - 2))
    if e == 2:
        return Fraction(-1, p * (p - 2))
    return Fraction(0)


def coeff_a(n: int, sieves: SieveTables | None = None) -> Fraction:
    """Multiplicative coefficient a(n): a(2) = -1/2, a(p) = 2/(p(p-2)),
    a(p^2) = -1/(p(p-2)), zero on higher prime powers (and on 2^v, v >= 2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n in _A_CACHE:
        return _A_CACHE[n]
    val = Fraction(1)
    for p, e in _factorize(n, sieves):
        val *= _a_prime_power(p, e)
        if not val:
            break
    _A_CACHE[n] = val
    return val


def coeff_b(n: int, sieves: SieveTables | None = None) -> Fraction:
    """Dirichlet convolution b = a * (1/id): zero unless n is odd and
    squarefree, with b(p) = 1/(p-2) on odd primes."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n in _B_CACHE:
        return _B_CACHE[n]
    val = Fraction(1)
    for p, e in _factorize(n, sieves):
        if p == 2 or e > 1:
            val = Fraction(0)
            break
        val *= Fraction(1, p - 2)
    _B_CACHE[n] = val
    return val


def coeff_a_floats(limit: int, sieves: SieveTables | None = None) -> np.ndarray:
    """a(n) for n = 0..limit as float64 (a[0] = 0), built multiplicatively."""
    if sieves is None or sieves.limit < limit:
        sieves = build_sieves(max(limit, 4))
    a = np.ones(limit + 1)
    a[0] = 0.0
    if limit >= 2:
        a[2::2] *= -0.5
    if limit >= 4:
        a[4::4] = 0.0
    for p in sieves.primes():
        p = int(p)
        if p == 2 or p > limit:
            continue
        a[p::p] *= 2.0 / (p * (p - 2))
        if p * p <= limit:
            a[p * p :: p * p] *= -0.5
        if p * p * p <= limit:
            a[p * p * p :: p * p * p] = 0.0
    return a


def coeff_b_floats(limit: int, sieves: SieveTables | None = None) -> np.ndarray:
    """b(n) for n = 0..limit as float64 (zero off odd squarefree support)."""
    if sieves is None or sieves.limit < limit:
        sieves = build_sieves(max(limit, 4))
    b = np.ones(limit + 1)
    b[0] = 0.0
    if limit >= 2:
        b[2::2] = 0.0
    for p in sieves.primes():
        p = int(p)
        if p == 2 or p > limit:
            continue
        b[p::p] /= p - 2
        if p * p <= limit:
            b[p * p :: p * p] = 0.0
    return b


def coeff_b_fractions(limit: int, sieves: SieveTables | None = None) -> list[Fraction]:
    """b(n) for n = 0..limit as exact rationals."""
    if sieves is None or sieves.limit < limit:
        sieves = build_sieves(max(limit, 4))
    return [Fraction(0)] + [coeff_b(n, sieves) for n in range(1, limit + 1)]


@dataclass(frozen=True)
class CoefficientSeries:
    """a(n), b(n) up to a cutoff plus the Euler-product constant."""

    cutoff: int
    a_values: np.ndarray
    b_values: np.ndarray
    constant: float
    constant_error_bound: float


def build_coefficient_series(
    cutoff: int,
    sieves: SieveTables | None = None,
    excluded_prime: int | None = None,
    tolerance: float = 1e-9,
) -> CoefficientSeries:
    c, bound = constant_C(excluded_prime, tolerance)
    return CoefficientSeries(
        cutoff,
        coeff_a_floats(cutoff, sieves),
        coeff_b_floats(cutoff, sieves),
        c,
        bound,
    )


# ---------------------------------------------------------------------------
# the Euler-product constant 2 * prod_{p >= 3} (1 - 1/(p-1)^2)


def _tail_log_bound(P: int) -> float:
    # sum_{p > P} -log(1 - 1/(p-1)^2) <= 1.35 * 2 / ((P-1) log P),
    # via pi(x) < 1.26 x / log x and partial summation.
    return 2.7 / ((P - 1) * math.log(P))


@lru_cache(maxsize=None)
def _base_product(P: int) -> float:
    """prod over odd primes p <= P of (1 - 1/(p-1)^2), odd-only sieve."""
    # odd-only sieve: entry i represents 2i + 3
    size = (P - 1) // 2
    is_prime = np.ones(size, dtype=bool)
    for i in range(math.isqrt(P) // 2 + 1):
        if is_prime[i]:
            p = 2 * i + 3
            start = (p * p - 3) // 2
            is_prime[start::p] = False
    p_vals = 2.0 * np.nonzero(is_prime)[0] + 3.0
    return float(np.prod(1.0 - 1.0 / (p_vals - 1.0) ** 2))


@lru_cache(maxsize=None)
def _product_limit_for(tolerance: float) -> int:
    P = 1 << 17
    while 1.4 * math.expm1(_tail_log_bound(P)) > tolerance and P < (1 << 29):
        P *= 2
    return P


def constant_C(
    excluded_prime: int | None = None, tolerance: float = 1e-9
) -> tuple[float, float]:
    """Truncated Euler product 2 prod_{p>=3, p != excluded} (1 - 1/(p-1)^2).

    Returns ``(value, bound)`` where ``bound`` certifies
    |value - limit| <= bound via a pi(x)-based estimate of the omitted tail.
    The default tolerance drives the product out to ~2e8.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    P = _product_limit_for(tolerance)
    value = 2.0 * _base_product(P)
    if excluded_prime is not None and excluded_prime >= 3 and excluded_prime <= P:
        value /= 1.0 - 1.0 / (excluded_prime - 1.0) ** 2
    bound = value * math.expm1(_tail_log_bound(P))
    return value, bound
