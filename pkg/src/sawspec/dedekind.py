"""Dedekind sums over a prime modulus and their discrete Fourier transform.

The transform s_hat_q(t) = (1/q) sum_a s_q(a) e(at/q) is purely imaginary
and odd in t.  Three independent routes are provided: the definitional DFT
(naive or chirp-z accelerated), a Dirichlet-character identity, and a
truncated sawtooth series with an O(q/x) error contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ResourceLimitError
from .foundations import inverse_table

__all__ = [
    "dedekind_sum",
    "dedekind_sum_pair",
    "dedekind_values",
    "Spectrum",
    "spectrum_all",
    "spectrum_point_truncated",
    "spectrum_point_characters",
]


# ---------------------------------------------------------------------------
# exact Dedekind sums


def _dedekind_direct(h: int, k: int) -> Fraction:
    # sum_{x mod k} psi(x/k) psi(hx/k), folded to one integer accumulation:
    # psi(x/k) = (2x - k)/(2k) for 0 < x < k.
    total = 0
    for x in range(1, k):
        hx = (h * x) % k
        if hx:
            total += (2 * x - k) * (2 * hx - k)
    return Fraction(total, 4 * k * k)


def _dedekind_reciprocity(h: int, k: int) -> Fraction:
    # Euclidean descent through the reciprocity law, O(log k) exact steps.
    h %= k
    total = Fraction(0)
    sign = 1
    while h:
        total += sign * (Fraction(h * h + k * k + 1, 12 * h * k) - Fraction(1, 4))
        h, k = k % h, h
        sign = -sign
    return total


def _dedekind_float(h: int, k: int) -> float:
    h %= k
    total = 0.0
    sign = 1.0
    while h:
        total += sign * ((h * h + k * k + 1) / (12.0 * h * k) - 0.25)
        h, k = k % h, h
        sign = -sign
    return total


def dedekind_sum_pair(h: int, k: int, method: str = "reciprocity") -> Fraction:
    """Classical Dedekind sum s(h, k) for any modulus k >= 1, gcd(h, k) = 1."""
    if k < 1:
        raise ValueError("modulus must be >= 1")
    if math.gcd(h, k) != 1:
        raise ValueError(f"gcd({h}, {k}) != 1")
    if method == "direct":
        return _dedekind_direct(h % k, k)
    if method == "reciprocity":
        return _dedekind_reciprocity(h, k)
    raise ValueError(f"unknown method {method!r}")


def dedekind_sum(q: int, a: int, method: str = "reciprocity") -> Fraction:
    """Exact s_q(a) for prime q and a coprime to q.

    ``method='direct'`` is the O(q) definitional sum, ``'reciprocity'``
    the O(log q) descent; they agree exactly.
    """
    if a % q == 0:
        raise ValueError(f"a = {a} is not a reduced residue mod {q}")
    return dedekind_sum_pair(a % q, q, method)


def dedekind_values(q: int) -> np.ndarray:
    """s_q(a) for a = 0..q-1 as float64 (a = 0 entry is 0)."""
    vals = np.zeros(q)
    half = (q + 1) // 2
    for a in range(1, half):
        vals[a] = _dedekind_float(a, q)
    # oddness s_q(q - a) = -s_q(a) fills the upper half exactly
    for a in range(half, q):
        vals[a] = -vals[q - a]
    return vals


# ---------------------------------------------------------------------------
# spectra


@dataclass(frozen=True)
class Spectrum:
    """Imaginary parts of s_hat_q(t) for t = 0..q-1 (the transform is purely
    imaginary).  ``values`` is exactly odd: values[(q-t) % q] == -values[t]."""

    q: int
    values: np.ndarray
    method: str

    def point(self, t: int) -> complex:
        return complex(0.0, self.values[t % self.q])


def _dft_positive_naive(x: np.ndarray, block: int = 256) -> np.ndarray:
    """X_t = sum_a x_a e(+at/q) by blocked outer products, O(q^2)."""
    q = len(x)
    a = np.arange(q)
    out = np.empty(q, dtype=complex)
    for lo in range(0, q, block):
        t = np.arange(lo, min(lo + block, q))
        phases = np.exp((2j * math.pi / q) * (np.outer(t, a) % q))
        out[lo : lo + len(t)] = phases @ x
    return out


def _dft_positive_chirpz(x: np.ndarray) -> np.ndarray:
    """Same transform via Bluestein: at = (a^2 + t^2 - (t-a)^2)/2 embeds the
    prime-length DFT in a power-of-two linear convolution."""
    q = len(x)
    idx = np.arange(q, dtype=np.int64)
    # work with squares reduced mod 2q so the phase argument stays small
    sq = (idx * idx) % (2 * q)
    chirp = np.exp((1j * math.pi / q) * sq)
    u = x * chirp
    L = 1 << (2 * q - 1).bit_length()
    kernel = np.zeros(L, dtype=complex)
    kernel[:q] = np.conj(chirp)
    kernel[L - q + 1 :] = np.conj(chirp[1:][::-1])
    conv = np.fft.ifft(np.fft.fft(u, L) * np.fft.fft(kernel))
    return chirp * conv[:q]


def spectrum_all(q: int, algorithm: str = "chirp-z", max_q: int = 2_000_000) -> Spectrum:
    """Full transform of the Dedekind sums mod q by DFT.

    The naive route is the quadratic-time oracle; chirp-z runs in
    O(q log q).  The real part is asserted negligible and dropped, and the
    stored imaginary part is antisymmetrized so oddness holds exactly.
    """
    if q < 3:
        raise ValueError("q must be an odd prime >= 3")
    if q > max_q:
        raise ResourceLimitError(f"q = {q} exceeds configured cap {max_q}")
    s = dedekind_values(q)
    if algorithm == "naive":
        transform = _dft_positive_naive(s)
    elif algorithm == "chirp-z":
        transform = _dft_positive_chirpz(s)
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    shat = transform / q
    scale = max(1.0, float(np.max(np.abs(shat))))
    max_re = float(np.max(np.abs(shat.real)))
    if max_re > 1e-12 * scale * math.log(q + 2):
        raise ArithmeticError(f"spectrum real part {max_re:g} above budget")
    im = shat.imag
    rev = np.roll(im[::-1], 1)  # rev[t] = im[(q - t) % q]
    if float(np.max(np.abs(im + rev))) > 1e-10 * scale:
        raise ArithmeticError("spectrum oddness defect above 1e-10")
    values = (im - rev) / 2.0
    values[0] = 0.0
    return Spectrum(q, values, algorithm)


def spectrum_point_truncated(
    q: int, t: int, x: float, chunk: int = 1 << 22
) -> complex:
    """Truncated series (1/(pi i)) sum_{n<=x, (n,q)=1} psi(t inv(n)/q)/n.

    Error contract: |result - s_hat_q(t)| = O(q/x).
    """
    if t % q == 0:
        raise ValueError("t must be coprime to q")
    if x < 1:
        raise ValueError("x must be >= 1")
    inv = inverse_table(q)
    total = 0.0
    top = int(x)
    for lo in range(1, top + 1, chunk):
        n = np.arange(lo, min(lo + chunk, top + 1), dtype=np.int64)
        nm = n % q
        keep = nm != 0
        n = n[keep]
        r = (t * inv[nm[keep]]) % q
        total += float(np.sum((r / q - 0.5) / n))
    # 1/(pi i) = -i/pi, so the value is purely imaginary by construction
    return complex(0.0, -total / math.pi)


def spectrum_point_characters(q: int, t: int, table) -> complex:
    """Character-sum route: (-1/(pi i phi(q))) sum_{chi odd} chi_bar(t) L(0,chi) L(1,chi)."""
    if t % q == 0:
        raise ValueError("t must be coprime to q")
    ctx = table.context
    if ctx.q != q:
        raise ValueError("character table was built for a different modulus")
    M = q - 1
    j = np.arange(1, M, 2)
    phases = np.exp((-2j * math.pi / M) * j * int(ctx.index[t % q]))
    total = np.sum(phases * table.l_zero[j] * table.l_one[j])
    # -1/(pi i) = i/pi
    return complex(1j / math.pi / M * total)
