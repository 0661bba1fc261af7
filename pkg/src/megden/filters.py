"""Orthonormal analysis filter pairs for the three supported wavelet families.

All filters are stored in the orthonormal convention (sum(h) = sqrt(2),
sum(h^2) = 1), so the cascaded transform preserves energy and perfect
reconstruction needs no per-level gain. ``classical_convention`` rescales
to the normalizations the families are usually tabulated in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "Family",
    "FilterPair",
    "MAX_ADJUSTED_HAAR_ZEROS",
    "adjusted_haar_freq_magnitude",
    "classical_convention",
    "make_adjusted_haar",
    "make_coiflet1",
    "make_daubechies4",
    "make_filter",
    "qmf_highpass",
]

_SQRT2 = math.sqrt(2.0)

# Guard against absurd filter lengths (2n + 2 taps for n interior zero pairs).
MAX_ADJUSTED_HAAR_ZEROS = 64


class Family(Enum):
    """Supported wavelet families, keyed by their CLI names."""

    DAUBECHIES4 = "db4"
    COIFLET1 = "coif1"
    ADJUSTED_HAAR = "ahaar"


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class FilterPair:
    """Low-pass/high-pass analysis pair for one wavelet family.

    ``param`` is the adjusted-Haar zero count n (2n zeros sit between the
    two nonzero taps); it is 0 for the other families. The high-pass is
    always the alternating flip g[k] = (-1)^k h[L-1-k] of the low-pass.
    """

    family: Family
    param: int
    lowpass: np.ndarray
    highpass: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "lowpass", _frozen(self.lowpass))
        object.__setattr__(self, "highpass", _frozen(self.highpass))

    def __len__(self) -> int:
        return self.lowpass.size

    def validate(self, tol: float = 1e-12) -> None:
        """Raise ValueError if any orthonormal-pair invariant is violated."""
        h, g = self.lowpass, self.highpass
        n = h.size
        if n == 0 or n % 2:
            raise ValueError(f"filter length must be even and positive, got {n}")
        if g.size != n:
            raise ValueError("lowpass/highpass lengths differ")
        if abs(float(h.sum()) - _SQRT2) > tol:
            raise ValueError(f"sum(h) = {float(h.sum())!r}, expected sqrt(2)")
        if abs(float(h @ h) - 1.0) > tol:
            raise ValueError(f"sum(h^2) = {float(h @ h)!r}, expected 1")
        if abs(float(g.sum())) > tol:
            raise ValueError(f"sum(g) = {float(g.sum())!r}, expected 0")
        for m in range(1, n // 2):
            corr = float(h[: n - 2 * m] @ h[2 * m :])
            if abs(corr) > tol:
                raise ValueError(f"double-shift correlation at offset {2 * m} is {corr!r}")
        if not np.array_equal(g, qmf_highpass(h)):
            raise ValueError("highpass is not the alternating flip of lowpass")
        if self.family is Family.ADJUSTED_HAAR:
            if n != 2 * self.param + 2 or np.count_nonzero(h[1:-1]):
                raise ValueError("adjusted-Haar taps must be [1, 0 x 2n, 1]/sqrt(2)")


def qmf_highpass(lowpass) -> np.ndarray:
    """Derive the quadrature mirror high-pass: g[k] = (-1)^k h[L-1-k]."""
    h = np.asarray(lowpass, dtype=np.float64)
    if h.ndim != 1 or h.size == 0 or h.size % 2:
        raise ValueError(f"lowpass must be a non-empty even-length vector, got shape {h.shape}")
    g = h[::-1].copy()
    g[1::2] = -g[1::2]
    return g


def make_daubechies4() -> FilterPair:
    """Four-tap Daubechies filter with two vanishing wavelet moments."""
    s3 = math.sqrt(3.0)
    h = np.array([1.0 + s3, 3.0 + s3, 3.0 - s3, 1.0 - s3]) / (4.0 * _SQRT2)
    return FilterPair(Family.DAUBECHIES4, 0, h, qmf_highpass(h))


def make_coiflet1() -> FilterPair:
    """Six-tap coiflet with vanishing moments on both the wavelet and scaling side.

    Closed form in sqrt(7); the defining moment conditions are verified
    numerically in the test suite rather than trusted from tables.
    """
    s7 = math.sqrt(7.0)
    h = np.array(
        [s7 - 3.0, 1.0 - s7, 14.0 - 2.0 * s7, 14.0 + 2.0 * s7, 5.0 + s7, 1.0 - s7]
    ) / (16.0 * _SQRT2)
    return FilterPair(Family.COIFLET1, 0, h, qmf_highpass(h))


def make_adjusted_haar(n: int) -> FilterPair:
    """Haar low-pass with 2n interior zeros: [1, 0 x 2n, 1]/sqrt(2)."""
    if not 0 <= n <= MAX_ADJUSTED_HAAR_ZEROS:
        raise ValueError(
            f"adjusted-Haar zero count must be in 0..{MAX_ADJUSTED_HAAR_ZEROS}, got {n}"
        )
    h = np.zeros(2 * n + 2)
    h[0] = h[-1] = 1.0 / _SQRT2
    return FilterPair(Family.ADJUSTED_HAAR, n, h, qmf_highpass(h))


def make_filter(family: Family, param: int = 0) -> FilterPair:
    """Build the filter pair for ``family``; ``param`` is the adjusted-Haar zero count."""
    if family is Family.ADJUSTED_HAAR:
        return make_adjusted_haar(param)
    if param != 0:
        raise ValueError(f"{family.value} takes no zero-count parameter, got {param}")
    if family is Family.DAUBECHIES4:
        return make_daubechies4()
    return make_coiflet1()


def classical_convention(pair: FilterPair) -> tuple[np.ndarray, np.ndarray]:
    """Rescale a pair to its classical textbook normalization.

    Daubechies and coiflet taps are usually tabulated summing to 2; the
    Haar-family kernel is usually written with a 0.5 prefactor (summing
    to 1). Returns (lowpass, highpass) in that convention.
    """
    scale = 1.0 / _SQRT2 if pair.family is Family.ADJUSTED_HAAR else _SQRT2
    return pair.lowpass * scale, pair.highpass * scale


def adjusted_haar_freq_magnitude(n: int, omega: float) -> float:
    """Frequency magnitude sin^2((2n+1)w/4) / |(2n+1)w/4| of the adjusted Haar wavelet.

    Bounded above by 4/((2n+1)|w|) because sin^2 <= 1; the zero count n
    tightens the envelope by the factor 2n+1. The closed form is singular
    at w = 0, so zero is rejected rather than special-cased.
    """
    if n < 0:
        raise ValueError(f"zero count n must be non-negative, got {n}")
    w = float(omega)
    if w == 0.0:
        raise ValueError("omega must be nonzero")
    x = (2 * n + 1) * w / 4.0
    return math.sin(x) ** 2 / abs(x)
