"""Segmented prime sieve, consecutive-prime residue census, and the
observed-vs-predicted reports for the pattern frequency conjecture."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bias import Pattern, c1_pattern, c2_pattern
from .characters import CharacterTable, is_prime
from .errors import ResourceLimitError

__all__ = [
    "prime_array",
    "primes_with_successors",
    "PatternCensus",
    "pattern_census",
    "log_integral",
    "conjecture_report",
]

EULER_GAMMA = 0.5772156649015328606


def prime_array(limit: int) -> np.ndarray:
    """All primes <= limit (plain numpy sieve)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.nonzero(flags)[0].astype(np.int64)


def _segmented_primes(limit: int, segment: int = 1 << 22) -> np.ndarray:
    if limit <= segment:
        return prime_array(limit)
    base = prime_array(math.isqrt(limit))
    chunks = [base]
    lo = int(base[-1]) + 1 if len(base) else 2
    lo = max(lo, math.isqrt(limit) + 1)
    start = math.isqrt(limit) + 1
    for seg_lo in range(start, limit + 1, segment):
        seg_hi = min(seg_lo + segment - 1, limit)
        flags = np.ones(seg_hi - seg_lo + 1, dtype=bool)
        for p in base:
            p = int(p)
            first = max(p * p, ((seg_lo + p - 1) // p) * p)
            if first > seg_hi:
                continue
            flags[first - seg_lo :: p] = False
        chunks.append(np.nonzero(flags)[0].astype(np.int64) + seg_lo)
    return np.concatenate(chunks)


def primes_with_successors(x: int, extra: int) -> tuple[np.ndarray, int]:
    """All primes <= x plus at least ``extra`` primes beyond; returns the
    array and the count of primes <= x."""
    margin = 200 * (extra + 1) + 2000
    while True:
        ps = _segmented_primes(x + margin)
        n_main = int(np.searchsorted(ps, x, side="right"))
        if len(ps) - n_main >= extra:
            return ps, n_main
        margin *= 2


@dataclass(frozen=True)
class PatternCensus:
    """Counts of observed residue r-tuples along consecutive primes."""

    x: int
    q: int
    r: int
    counts: dict[tuple[int, ...], int]
    total_windows: int

    def count(self, residues) -> int:
        key = tuple(a % self.q for a in residues)
        return self.counts.get(key, 0)


def pattern_census(x: int, q: int, r: int, x_cap: int = 1_000_000_000) -> PatternCensus:
    """Census of residue patterns over windows of r consecutive primes.

    A window starts at every p_n <= x (successors may exceed x); windows
    containing the prime q itself (residue 0) are not counted anywhere.
    """
    if r < 1:
        raise ValueError("pattern length must be >= 1")
    if x < 2:
        raise ValueError("x must be >= 2")
    if not is_prime(q):
        raise ValueError("q must be prime")
    if x > x_cap:
        raise ResourceLimitError(f"x = {x} exceeds configured cap {x_cap}")
    ps, n_main = primes_with_successors(x, r - 1)
    res = (ps % q).astype(np.int64)
    if n_main == 0:
        return PatternCensus(x, q, r, {}, 0)
    windows = np.lib.stride_tricks.sliding_window_view(res, r)[:n_main]
    valid = (windows != 0).all(axis=1)
    windows = windows[valid]
    if q**r < 2**62:
        weights = q ** np.arange(r, dtype=np.int64)
        codes = windows @ weights
        uniq, cnt = np.unique(codes, return_counts=True)
        counts: dict[tuple[int, ...], int] = {}
        for code, c in zip(uniq.tolist(), cnt.tolist()):
            digits = []
            for _ in range(r):
                digits.append(code % q)
                code //= q
            counts[tuple(digits)] = int(c)
    else:
        counts = {}
        for row in windows:
            key = tuple(int(v) for v in row)
            counts[key] = counts.get(key, 0) + 1
    return PatternCensus(x, q, r, counts, int(valid.sum()))


# ---------------------------------------------------------------------------
# logarithmic integral


def _li_quadrature(x: float) -> float:
    # for small x: int_0^x dt/log t, smooth (integrand -> 0 at t = 0)
    nodes, weights = np.polynomial.legendre.leggauss(64)
    t = (nodes + 1.0) * (x / 2.0)
    w = weights * (x / 2.0)
    return float(np.sum(w / np.log(t)))


def _li_ei_series(x: float) -> float:
    # Ei(log x) = gamma + log|log x| + sum z^n/(n n!); principal value for x > 1
    z = math.log(x)
    total = 0.0
    term = 1.0
    for n in range(1, 200):
        term *= z / n
        inc = term / n
        total += inc
        if abs(inc) < 1e-18 * (1.0 + abs(total)):
            break
    return EULER_GAMMA + math.log(abs(z)) + total


def _li_ramanujan(x: float) -> float:
    z = math.log(x)
    root = math.sqrt(x)
    total = 0.0
    u = z  # z^n / (n! 2^(n-1)) at n = 1
    h = 1.0  # sum of odd reciprocals up to floor((n-1)/2) terms
    n = 1
    while n < 800:
        if n % 2 == 1 and n > 1:
            h += 1.0 / n
        term = ((-1.0) ** (n - 1)) * u * h
        total += term
        if abs(u) * h * root < 1e-17 * (1.0 + abs(total) * root):
            break
        u *= z / (2.0 * (n + 1))
        n += 1
    return EULER_GAMMA + math.log(abs(z)) + root * total


def log_integral(x: float) -> float:
    """Principal-value logarithmic integral li(x), absolute error <~ 1e-8.

    Ramanujan's series for x >= 2, the Ei power series on (0.01, 2), and
    direct quadrature below that; li(0) = 0 and x = 1 is outside the domain.
    """
    if x < 0:
        raise ValueError("li is defined for x >= 0")
    if x == 0:
        return 0.0
    if x == 1:
        raise ValueError("li has a non-integrable singularity at x = 1")
    if x < 0.01:
        return _li_quadrature(x)
    if x < 2.0:
        return _li_ei_series(x)
    return _li_ramanujan(x)


# ---------------------------------------------------------------------------
# conjecture comparison reports


def conjecture_report(
    x: int,
    q: int,
    pattern: Pattern,
    table: CharacterTable | None = None,
    census: PatternCensus | None = None,
) -> dict:
    """Observed census count against the main term and its first- and
    second-order corrections; residuals are normalized by li(x)/(phi^r log x).

    This is a conjecture comparison, not a verification: the error term of
    the underlying asymptotic is reported, never certified.
    """
    r = pattern.r
    if census is None:
        census = pattern_census(x, q, r)
    if census.q != q or census.r != r or census.x != x:
        raise ValueError("census does not match the requested report")
    observed = census.count(pattern.residues)
    phi = q - 1
    main = log_integral(x) / phi**r
    c1 = c1_pattern(pattern)
    if r >= 2:
        if table is None:
            raise ValueError("second-order term needs a character table")
        c2 = c2_pattern(pattern, table)
    else:
        c2 = 0.0
    lx = math.log(x)
    llx = math.log(lx)
    pred0 = main
    pred1 = main * (1.0 + c1 * llx / lx)
    pred2 = main * (1.0 + c1 * llx / lx + c2 / lx)
    norm = main / lx
    return {
        "x": x,
        "q": q,
        "pattern": list(pattern.residues),
        "observed": observed,
        "main_term": main,
        "c1": c1,
        "c2": c2,
        "prediction_order0": pred0,
        "prediction_order1": pred1,
        "prediction_order2": pred2,
        "residual_order0": (observed - pred0) / norm,
        "residual_order1": (observed - pred1) / norm,
        "residual_order2": (observed - pred2) / norm,
    }
