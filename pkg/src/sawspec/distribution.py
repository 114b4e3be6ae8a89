"""Empirical distribution statistics for the bias/spectrum/totient datasets.

One sample container serves the three label conventions; the scaling
constant (e^gamma/2 for the bias and spectrum datasets, 3 e^gamma/pi^2 for
the totient error) is applied at query time, never baked into samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "EULER_GAMMA",
    "EmpiricalDistribution",
    "make_distribution",
    "from_ck_vector",
    "from_spectrum",
    "ecdf_scaled",
    "tail_frequency",
    "extremes",
    "extreme_report",
    "almost_period_stat",
    "symmetry_statistic",
    "histogram",
    "summary",
]

EULER_GAMMA = 0.5772156649015328606
_EG = math.exp(EULER_GAMMA)

DEFAULT_SCALES = {"C": _EG / 2.0, "s": _EG / 2.0, "R": 3.0 * _EG / math.pi**2}


@dataclass(frozen=True)
class EmpiricalDistribution:
    """Labeled sample set with a query-time scale.

    ``index`` carries the residue labels when the samples come from a
    residue-indexed table (k = 1..q-1 in that order), which the shift
    statistic requires.
    """

    label: str
    samples: np.ndarray
    scale: float
    index: np.ndarray | None = None
    _sorted: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        if self.label not in DEFAULT_SCALES:
            raise ValueError(f"label must be one of {tuple(DEFAULT_SCALES)}")
        samples = np.asarray(self.samples, dtype=float)
        if samples.size == 0:
            raise ValueError("empty sample set")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "_sorted", np.sort(samples))

    @property
    def n(self) -> int:
        return self.samples.size


def make_distribution(label, samples, scale=None, index=None) -> EmpiricalDistribution:
    if label not in DEFAULT_SCALES:
        raise ValueError(f"label must be one of {tuple(DEFAULT_SCALES)}")
    if scale is None:
        scale = DEFAULT_SCALES[label]
    return EmpiricalDistribution(label, np.asarray(samples, float), scale, index)


def from_ck_vector(vec) -> EmpiricalDistribution:
    """Dataset of the bias values C(k), k = 1..q-1."""
    return make_distribution("C", vec.samples, index=np.arange(1, vec.q))


def from_spectrum(spec) -> EmpiricalDistribution:
    """Dataset of pi*i*s_hat_q(t) (real numbers), t = 1..q-1."""
    samples = -math.pi * spec.values[1:]
    return make_distribution("s", samples, index=np.arange(1, spec.q))


def ecdf_scaled(dist: EmpiricalDistribution, x: float) -> float:
    """Fraction of samples <= scale * x (right-continuous ECDF)."""
    pos = np.searchsorted(dist._sorted, dist.scale * x, side="right")
    return pos / dist.n


def tail_frequency(dist: EmpiricalDistribution, x: float, side: str = "upper") -> float:
    """Fraction of samples >= scale*x (upper) or <= -scale*x (lower)."""
    if side == "upper":
        pos = np.searchsorted(dist._sorted, dist.scale * x, side="left")
        return (dist.n - pos) / dist.n
    if side == "lower":
        pos = np.searchsorted(dist._sorted, -dist.scale * x, side="right")
        return pos / dist.n
    raise ValueError("side must be 'upper' or 'lower'")


def extremes(dist: EmpiricalDistribution) -> tuple[float, int, float, int]:
    """(min, argmin, max, argmax); arg labels come from ``index`` when set."""
    i_min = int(np.argmin(dist.samples))
    i_max = int(np.argmax(dist.samples))
    lab = dist.index if dist.index is not None else np.arange(dist.n)
    return (
        float(dist.samples[i_min]),
        int(lab[i_min]),
        float(dist.samples[i_max]),
        int(lab[i_max]),
    )


def extreme_report(dist: EmpiricalDistribution, q: int) -> dict:
    """Extremes plus the ratio max / ((e^gamma/2) log log q), report only."""
    mn, amn, mx, amx = extremes(dist)
    denom = (_EG / 2.0) * math.log(math.log(q))
    return {
        "min": mn,
        "argmin": amn,
        "max": mx,
        "argmax": amx,
        "max_over_loglog_scale": mx / denom,
    }


def almost_period_stat(dist: EmpiricalDistribution, m: int) -> float:
    """Mean squared shift difference (1/#pairs) sum_k |v(k) - v(k+m)|^2.

    Requires a residue-indexed dataset (samples in k-order 1..q-1); pairs
    whose shifted index lands on the missing residue 0 are skipped and the
    average renormalized over the remaining pairs.
    """
    if dist.index is None:
        raise ValueError("shift statistic needs a residue-indexed dataset")
    v = dist.samples
    q = dist.n + 1
    k = np.arange(1, q)
    shifted = (k + m) % q
    keep = shifted != 0
    diffs = v[k[keep] - 1] - v[shifted[keep] - 1]
    return float(np.sum(diffs * diffs)) / int(np.sum(keep))


def symmetry_statistic(dist: EmpiricalDistribution, xs) -> float:
    """sup over the grid of |ecdf(x) + ecdf(-x) - 1|."""
    return max(abs(ecdf_scaled(dist, x) + ecdf_scaled(dist, -x) - 1.0) for x in xs)


def histogram(dist: EmpiricalDistribution, bins="fd"):
    """Counts and edges; Freedman-Diaconis binning unless overridden."""
    counts, edges = np.histogram(dist.samples, bins=bins)
    return counts, edges


def summary(dist: EmpiricalDistribution, ell_max: int = 6, grid=None) -> dict:
    from .moments import empirical_moments

    if grid is None:
        grid = np.linspace(0.1, 3.0, 30)
    mn, amn, mx, amx = extremes(dist)
    return {
        "label": dist.label,
        "count": dist.n,
        "scale": dist.scale,
        "min": mn,
        "max": mx,
        "moments": empirical_moments(dist.samples, ell_max),
        "symmetry_stat": symmetry_statistic(dist, grid),
    }
