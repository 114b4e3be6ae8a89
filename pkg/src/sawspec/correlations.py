"""Mean values of products of sawtooths at rationally related arguments.

The central object is the correlation integral over one common period,
an exactly rational quantity.  It vanishes for an odd number of factors,
has a gcd closed form for pairs, and admits a single-prime reduction that
shrinks the period before the exact piecewise-polynomial integration.
A lattice-sum estimator and the discrete mod-q correlation provide
independent numerical routes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .errors import ResourceLimitError
from .foundations import mod_inverse

__all__ = [
    "CorrelationKey",
    "reduce_correlation",
    "b_exact",
    "b_lattice_estimate",
    "discrete_correlation",
    "MAX_FACTORS",
]

MAX_FACTORS = 8


@dataclass(frozen=True)
class CorrelationKey:
    """Canonical memo key: sorted reduced moduli, the scalar extracted by
    single-prime reductions, and the period (lcm) of the reduced tuple."""

    moduli: tuple[int, ...]
    extracted_scalar: Fraction
    period: int


def _lcm_all(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out


def _factorize_small(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def reduce_correlation(moduli) -> CorrelationKey:
    """Apply the single-prime reduction until every prime dividing one
    modulus divides at least two of them; track the extracted 1/p factors."""
    mods = [int(n) for n in moduli]
    if not mods or any(n < 1 for n in mods):
        raise ValueError("moduli must be positive integers")
    factored = [_factorize_small(n) for n in mods]
    counts: dict[int, int] = {}
    for f in factored:
        for p in f:
            counts[p] = counts.get(p, 0) + 1
    scalar = Fraction(1)
    for i, f in enumerate(factored):
        for p, e in f.items():
            if counts[p] == 1:
                mods[i] //= p**e
                scalar *= Fraction(1, p**e)
    reduced = tuple(sorted(mods))
    return CorrelationKey(reduced, scalar, _lcm_all(reduced))


def _poly_int_bound(moduli, ell: int, period: int) -> int:
    bound = 1
    for n in moduli:
        bound *= n + 2
    return bound * (ell + 1) * 2520 * max(period, 1)


def _integrate_reduced(moduli: tuple[int, ...], period: int) -> Fraction:
    """Exact mean of prod psi(x/n_j) over [0, period): on each unit interval
    the integrand is one degree-ell polynomial, integrated in integers."""
    ell = len(moduli)
    weight_lcm = math.lcm(*range(1, ell + 2))
    weights = [weight_lcm // (i + 1) for i in range(ell + 1)]
    denom = weight_lcm * period
    for n in moduli:
        denom *= 2 * n

    if _poly_int_bound(moduli, ell, period) < 2**62:
        m = np.arange(period, dtype=np.int64)
        coeffs = [np.ones(period, dtype=np.int64)]
        for n in moduli:
            e = 2 * (m % n) - n
            nxt = [np.zeros(period, dtype=np.int64) for _ in range(len(coeffs) + 1)]
            for i, c in enumerate(coeffs):
                nxt[i] += c * e
                nxt[i + 1] += 2 * c
            coeffs = nxt
        num = sum(int(np.sum(c)) * w for c, w in zip(coeffs, weights))
        return Fraction(num, denom)

    # big-coefficient fallback in plain Python integers
    total = 0
    for m in range(period):
        coeffs = [1]
        for n in moduli:
            e = 2 * (m % n) - n
            nxt = [0] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i] += c * e
                nxt[i + 1] += 2 * c
            coeffs = nxt
        total += sum(c * w for c, w in zip(coeffs, weights))
    return Fraction(total, denom)


_B_CACHE: dict[tuple[int, ...], Fraction] = {}


def b_exact(moduli, lcm_cap: int = 1_000_000) -> Fraction:
    """Exact correlation integral of the sawtooths psi(x/n_j).

    Zero for an odd number of factors; gcd(n1,n2)^2/(12 n1 n2) for pairs;
    otherwise reduced and integrated exactly over one period of the reduced
    tuple (the full product of the moduli is a multiple of that period, so
    the means agree).
    """
    mods = tuple(int(n) for n in moduli)
    if not mods or any(n < 1 for n in mods):
        raise ValueError("moduli must be positive integers")
    ell = len(mods)
    if ell % 2 == 1:
        return Fraction(0)
    if ell == 2:
        g = math.gcd(mods[0], mods[1])
        return Fraction(g * g, 12 * mods[0] * mods[1])
    if ell > MAX_FACTORS:
        raise ResourceLimitError(f"integration degree capped at {MAX_FACTORS}")
    key = reduce_correlation(mods)
    if key.period > lcm_cap:
        raise ResourceLimitError(
            f"reduced period {key.period} exceeds cap {lcm_cap}"
        )
    cached = _B_CACHE.get(key.moduli)
    if cached is None:
        cached = _integrate_reduced(key.moduli, key.period)
        _B_CACHE[key.moduli] = cached
    return key.extracted_scalar * cached


def b_lattice_estimate(
    moduli, K: int, enumeration_budget: int = 20_000_000
) -> float:
    """Lattice-sum route: (i/2pi)^ell sum over nonzero |k_j| <= K with
    sum k_j/n_j = 0 of 1/(k_1 ... k_ell); defined for an even number of
    factors (the exact value is zero for odd counts)."""
    mods = [int(n) for n in moduli]
    ell = len(mods)
    if ell % 2 == 1:
        raise ValueError("lattice estimator is defined for an even factor count")
    if ell < 2:
        raise ValueError("need at least two moduli")
    if K < 1:
        raise ValueError("K must be >= 1")
    if (2 * K) ** (ell - 1) > enumeration_budget:
        raise ResourceLimitError("lattice enumeration exceeds budget")

    # solve for the coordinate with the largest modulus (tightest
    # integrality constraint), enumerate the rest
    order = sorted(range(ell), key=lambda i: mods[i])
    free = [mods[i] for i in order[:-1]]
    n_last = mods[order[-1]]
    D = _lcm_all(free)
    mult = [D // n for n in free]
    ks = np.concatenate([np.arange(-K, 0), np.arange(1, K + 1)])

    total = 0.0
    last_mult = mult[-1]
    for head in product(ks.tolist(), repeat=ell - 2):
        base = sum(k * m for k, m in zip(head, mult[:-1]))
        s = base + ks * last_mult
        num = n_last * s
        k_last = -(num // D)
        ok = (num % D == 0) & (np.abs(k_last) <= K) & (k_last != 0)
        if not np.any(ok):
            continue
        prod_head = 1.0
        for k in head:
            prod_head *= float(k)
        total += (
            float(np.sum(1.0 / (ks[ok].astype(float) * k_last[ok].astype(float))))
            / prod_head
        )
    sign = -1.0 if (ell // 2) % 2 else 1.0
    return sign * total / (2.0 * math.pi) ** ell


def discrete_correlation(q: int, moduli) -> float:
    """(1/q) sum_{k mod q} prod_j psi(k inv(n_j)/q), the mod-q analogue of
    the correlation integral; requires K = prod/min < q/ell."""
    mods = [int(n) for n in moduli]
    ell = len(mods)
    if any(n < 1 for n in mods):
        raise ValueError("moduli must be positive integers")
    if any(n % q == 0 for n in mods):
        raise ValueError("moduli must be coprime to q")
    K = 1
    for n in mods:
        K *= n
    K //= min(mods)
    if K >= q / ell:
        raise ValueError(f"requires prod/min = {K} < q/ell = {q / ell:g}")
    k = np.arange(1, q, dtype=np.int64)
    acc = np.ones(q - 1)
    for n in mods:
        inv = mod_inverse(n, q)
        acc *= ((k * inv) % q) / q - 0.5
    return float(np.sum(acc)) / q


def prop_bound_parts(moduli) -> tuple[int, int]:
    """Split prod n_j = r * s with r squarefree, s squarefull, gcd(r,s) = 1."""
    total: dict[int, int] = {}
    for n in moduli:
        for p, e in _factorize_small(int(n)).items():
            total[p] = total.get(p, 0) + e
    r = s = 1
    for p, e in total.items():
        if e == 1:
            r *= p
        else:
            s *= p**e
    return r, s
