"""Prime-race bias constants for patterns of consecutive primes mod q.

The first-order constant penalizes immediate repetitions and is elementary.
The second-order pair constant has an explicit diagonal closed form and a
character-sum expression off the diagonal; its large-q behaviour is carried
by the odd-character average C(k), computed here by two independent routes
(character products, truncated sawtooth series).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .characters import CharacterTable
from .errors import ResourceLimitError
from .foundations import SieveTables, coeff_b_floats, constant_C, mod_inverse

__all__ = [
    "Pattern",
    "CkVector",
    "ck_point",
    "ck_all",
    "c1_pattern",
    "c2_pair",
    "c2_pattern",
]


@dataclass(frozen=True)
class Pattern:
    """A residue pattern (a_1, ..., a_r) mod q, each a_i coprime to q."""

    q: int
    residues: tuple[int, ...]

    def __post_init__(self):
        if len(self.residues) < 1:
            raise ValueError("pattern must have length >= 1")
        if any(a % self.q == 0 for a in self.residues):
            raise ValueError("pattern residues must be coprime to q")

    @property
    def r(self) -> int:
        return len(self.residues)


@dataclass(frozen=True)
class CkVector:
    """C(k) for k = 1..q-1.  ``values`` has length q with entry 0 unused
    (NaN); the stored table is exactly odd: values[q-k] == -values[k]."""

    q: int
    values: np.ndarray
    method: str
    truncation: dict = field(default_factory=dict)

    @property
    def samples(self) -> np.ndarray:
        return self.values[1:]

    def value(self, k: int) -> float:
        k %= self.q
        if k == 0:
            raise ValueError("C(0) is outside the domain")
        return float(self.values[k])


def c1_pattern(pattern: Pattern) -> float:
    """First-order constant: (phi(q)/2)((r-1)/phi(q) - #immediate repeats)."""
    q, res = pattern.q, pattern.residues
    phi = q - 1
    repeats = sum(
        1 for i in range(len(res) - 1) if (res[i] - res[i + 1]) % q == 0
    )
    return (phi / 2.0) * ((len(res) - 1) / phi - repeats)


# ---------------------------------------------------------------------------
# C(k)


def _ck_products(table: CharacterTable) -> np.ndarray:
    M = table.q - 1
    P = table.l_zero * table.l_one * table.a_chi
    P[0] = 0.0
    P[2::2] = 0.0  # even characters carry l_zero = 0 already; keep it exact
    return P


def _ck_char_raw(table: CharacterTable, k: int) -> float:
    ctx = table.context
    M = table.q - 1
    P = _ck_products(table)
    j = np.arange(1, M, 2)
    phases = np.exp((-2j * math.pi / M) * (j * int(ctx.index[k % table.q]) % M))
    val = np.sum(phases * P[j]) / M
    if abs(val.imag) > 1e-10 * max(1.0, abs(val.real)):
        raise ArithmeticError("character sum for C(k) not real enough")
    return float(val.real)


def ck_point(
    q: int,
    k: int,
    method: str = "characters",
    table: CharacterTable | None = None,
    cutoff: int | None = None,
    sieves: SieveTables | None = None,
) -> float:
    """One bias value C(k) by the chosen route.

    ``characters`` averages chi_bar(k) L(0,chi) L(1,chi) A_{q,chi} over odd
    characters; ``truncated`` evaluates -C sum_{n <= N} b(n) psi(k inv(2n)/q).
    Both are antisymmetrized over k <-> q-k so oddness is exact.
    """
    if k % q == 0:
        raise ValueError("k must be nonzero mod q")
    if method == "characters":
        if table is None or table.q != q:
            raise ValueError("characters route needs a table built for q")
        return 0.5 * (_ck_char_raw(table, k) - _ck_char_raw(table, q - k))
    if method == "truncated":
        N = cutoff if cutoff is not None else max(1000, q)
        b = coeff_b_floats(N, sieves)
        c_q, _ = constant_C(excluded_prime=q)
        ns = np.nonzero(b)[0]
        ns = ns[ns % q != 0]
        bw = b[ns]

        def raw(kk: int) -> float:
            total = 0.0
            for n, w in zip(ns.tolist(), bw.tolist()):
                r = (kk * mod_inverse(2 * n, q)) % q
                total += w * (r / q - 0.5)
            return -c_q * total

        return 0.5 * (raw(k % q) - raw(q - k % q))
    raise ValueError(f"unknown method {method!r}")


def ck_all(
    q: int,
    method: str = "characters",
    table: CharacterTable | None = None,
    cutoff: int | None = None,
    sieves: SieveTables | None = None,
    max_q: int = 2_000_000,
) -> CkVector:
    """The full vector of bias values C(k), k = 1..q-1.

    The character route is a single DFT of the per-character products over
    the cyclic group, rearranged through the discrete-log table; the
    truncated route accumulates the sawtooth series over all k at once.
    """
    if q > max_q:
        raise ResourceLimitError(f"q = {q} exceeds configured cap {max_q}")
    if method == "characters":
        if table is None or table.q != q:
            raise ValueError("characters route needs a table built for q")
        ctx = table.context
        M = q - 1
        P = _ck_products(table)
        spectrum = np.fft.fft(P) / M  # entry i is C at the residue g^i
        max_im = float(np.max(np.abs(spectrum.imag)))
        if max_im > 1e-10 * max(1.0, float(np.max(np.abs(spectrum.real)))):
            raise ArithmeticError("C(k) character average not real enough")
        values = np.empty(q)
        values[ctx.powers] = spectrum.real
        meta = {"a_series_cutoff": table.cutoff}
    elif method == "truncated":
        N = cutoff if cutoff is not None else max(1000, q)
        b = coeff_b_floats(N, sieves)
        c_q, _ = constant_C(excluded_prime=q)
        ns = np.nonzero(b)[0]
        ns = ns[ns % q != 0]
        k = np.arange(q, dtype=np.int64)
        acc = np.zeros(q)
        for n in ns.tolist():
            inv2n = mod_inverse(2 * n, q)
            acc += b[n] * (((k * inv2n) % q) / q - 0.5)
        values = -c_q * acc
        meta = {"series_cutoff": N}
    else:
        raise ValueError(f"unknown method {method!r}")

    rev = np.roll(values[::-1], 1)  # rev[k] = values[(q-k) % q]
    defect = float(np.max(np.abs((values + rev)[1:])))
    if defect > 1e-10:
        raise ArithmeticError(f"C(k) oddness defect {defect:g} above 1e-10")
    values = (values - rev) / 2.0
    values[0] = np.nan
    return CkVector(q, values, method, meta)


# ---------------------------------------------------------------------------
# c2


def c2_pair(q: int, a: int, b: int, table: CharacterTable) -> float:
    """Second-order pair constant c2(q;(a,b)).

    Diagonal pairs have the closed form ((q-2)/2) log(q/2pi); otherwise the
    nonprincipal-character sum with the (chi_bar(b) - chi_bar(a))/phi
    correction term is evaluated from the table.
    """
    if a % q == 0 or b % q == 0:
        raise ValueError("a, b must be coprime to q")
    if table.q != q:
        raise ValueError("character table was built for a different modulus")
    if (a - b) % q == 0:
        return (q - 2) / 2.0 * math.log(q / (2.0 * math.pi))
    ctx = table.context
    M = q - 1
    j = np.arange(1, M, 2)  # only odd characters contribute (l_zero else 0)

    def chibar(x: int) -> np.ndarray:
        return np.exp((-2j * math.pi / M) * (j * int(ctx.index[x % q]) % M))

    coef = chibar(b - a) + (chibar(b) - chibar(a)) / M
    total = np.sum(coef * table.l_zero[j] * table.l_one[j] * table.a_chi[j])
    val = 0.5 * math.log(2.0 * math.pi / q) + (q / M) * total
    if abs(val.imag) > 1e-8 * max(1.0, abs(val.real)):
        raise ArithmeticError("c2 character sum not real enough")
    return float(val.real)


def c2_pattern(pattern: Pattern, table: CharacterTable) -> float:
    """Second-order constant for patterns of length r >= 2, composed from
    consecutive pairs plus the gap-j repeat corrections."""
    q, res = pattern.q, pattern.residues
    r = len(res)
    if r < 2:
        raise ValueError("c2 needs a pattern of length >= 2")
    total = sum(c2_pair(q, res[i], res[i + 1], table) for i in range(r - 1))
    phi = q - 1
    for jgap in range(1, r - 1):
        matches = sum(
            1 for i in range(r - jgap - 1) if (res[i] - res[i + jgap + 1]) % q == 0
        )
        total += (phi / 2.0) * (1.0 / jgap) * ((r - 1 - jgap) / phi - matches)
    return total
