"""Haar and Schauder scaling functions, their mother wavelets, and dyadic copies.

All functions here are piecewise linear with dyadic breakpoints, so they are
stored exactly as breakpoints plus one affine piece per interval.  Supports are
right-open: ``f(a) = piece value`` at a left endpoint, ``f(b) = 0`` at the right
endpoint of the support.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InvalidArgumentError, InvalidFilterError

SQRT2 = math.sqrt(2.0)

_CHECK_POINTS = 1024
_CHECK_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class PiecewiseLinearFunction:
    """Compactly supported function, affine on each ``[b[i], b[i+1][``.

    Args:
        breakpoints: strictly increasing, length ``m + 1``.
        slopes, intercepts: length ``m``; piece ``i`` is ``slopes[i] * x + intercepts[i]``.
    """

    breakpoints: np.ndarray
    slopes: np.ndarray
    intercepts: np.ndarray
    name: str = ""

    def __post_init__(self):
        b = np.array(self.breakpoints, dtype=float)
        s = np.array(self.slopes, dtype=float)
        c = np.array(self.intercepts, dtype=float)
        if b.ndim != 1 or b.size < 2:
            raise ValueError("need at least two breakpoints")
        if not np.all(np.diff(b) > 0):
            raise ValueError("breakpoints must be strictly increasing")
        if s.shape != (b.size - 1,) or c.shape != (b.size - 1,):
            raise ValueError("one slope and one intercept per interval")
        if not (np.all(np.isfinite(b)) and np.all(np.isfinite(s)) and np.all(np.isfinite(c))):
            raise ValueError("non-finite piece data")
        for arr in (b, s, c):
            arr.setflags(write=False)
        object.__setattr__(self, "breakpoints", b)
        object.__setattr__(self, "slopes", s)
        object.__setattr__(self, "intercepts", c)

    @property
    def support(self) -> tuple[float, float]:
        return float(self.breakpoints[0]), float(self.breakpoints[-1])

    @property
    def width(self) -> float:
        a, b = self.support
        return b - a

    def piece_index(self, x):
        """Index of the piece containing ``x``, or -1 outside the support."""
        x = np.asarray(x, dtype=float)
        idx = np.searchsorted(self.breakpoints, x, side="right") - 1
        return np.where((idx >= 0) & (idx < self.slopes.size), idx, -1)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        idx = self.piece_index(x)
        inside = idx >= 0
        safe = np.where(inside, idx, 0)
        val = self.slopes[safe] * x + self.intercepts[safe]
        out = np.where(inside, val, 0.0)
        return float(out) if out.ndim == 0 else out

    def copy(self, level: int, shift: int) -> PiecewiseLinearFunction:
        """The dyadic copy ``2^{j/2} f(2^j x - k)`` as a new exact object."""
        scale = 2.0 ** level
        amp = 2.0 ** (level / 2)
        return PiecewiseLinearFunction(
            (self.breakpoints + shift) / scale,
            amp * scale * self.slopes,
            amp * (self.intercepts - self.slopes * shift),
            name=f"{self.name}[{level},{shift}]",
        )

    def dyadic_depth(self) -> int:
        """Smallest ``q >= 0`` with every breakpoint in ``2^{-q} Z``."""
        for q in range(53):
            scaled = self.breakpoints * 2.0 ** q
            if np.all(scaled == np.round(scaled)):
                return q
        raise ValueError("breakpoints are not dyadic rationals")


def linear_combination(terms, name: str = "") -> PiecewiseLinearFunction:
    """Exact ``sum(c * f for c, f in terms)`` over the merged breakpoint set."""
    terms = [(float(c), f) for c, f in terms]
    if not terms:
        raise ValueError("empty combination")
    knots = np.unique(np.concatenate([f.breakpoints for _, f in terms]))
    mids = 0.5 * (knots[:-1] + knots[1:])
    slopes = np.zeros(mids.size)
    intercepts = np.zeros(mids.size)
    for c, f in terms:
        idx = f.piece_index(mids)
        inside = idx >= 0
        slopes[inside] += c * f.slopes[idx[inside]]
        intercepts[inside] += c * f.intercepts[idx[inside]]
    return PiecewiseLinearFunction(knots, slopes, intercepts, name=name)


HAAR_SCALING = PiecewiseLinearFunction([0.0, 1.0], [0.0], [1.0], name="haar")
SCHAUDER_SCALING = PiecewiseLinearFunction(
    [-1.0, 0.0, 1.0], [1.0, -1.0], [1.0, 1.0], name="schauder"
)


def eval_haar_scaling(x):
    """Indicator of ``[0, 1[``."""
    return HAAR_SCALING(x)


def eval_schauder_scaling(x):
    """Hat ``(1 - |x|)`` on ``[-1, 1[``."""
    return SCHAUDER_SCALING(x)


def refine(scaling: PiecewiseLinearFunction, taps) -> PiecewiseLinearFunction:
    """``sum_k taps[k] * sqrt(2) * scaling(2x - k)``."""
    return linear_combination(
        [(c, scaling.copy(1, k)) for k, c in sorted(taps.items())],
        name=f"{scaling.name}~",
    )


def two_scale_residual(scaling: PiecewiseLinearFunction, lowpass, n: int = _CHECK_POINTS) -> float:
    """Max deviation of ``scaling`` from its filter-refined version on an ``n``-point grid."""
    if not any(lowpass.taps.values()):
        return float(np.max(np.abs(scaling(np.linspace(*scaling.support, n, endpoint=False)))))
    refined = refine(scaling, lowpass.taps)
    lo = min(scaling.support[0], refined.support[0])
    hi = max(scaling.support[1], refined.support[1])
    x = np.linspace(lo - 0.25, hi + 0.25, n)
    return float(np.max(np.abs(scaling(x) - refined(x))))


def derive_mother(scaling: PiecewiseLinearFunction, lowpass) -> PiecewiseLinearFunction:
    """Mother wavelet ``psi = sum_k g_k sqrt(2) phi(2x - k)`` with ``g_k = (-1)^k h_{1-k}``.

    Raises InvalidFilterError when ``lowpass`` does not reproduce ``scaling``
    through the 2-scale relation.
    """
    from .filters import derive_highpass_scalar

    resid = two_scale_residual(scaling, lowpass)
    if not resid <= _CHECK_TOL:
        raise InvalidFilterError(
            f"filter does not satisfy the 2-scale relation of {scaling.name or 'scaling'} "
            f"(residual {resid:.3g})"
        )
    g = derive_highpass_scalar(lowpass)
    psi = refine(scaling, g.taps)
    return PiecewiseLinearFunction(psi.breakpoints, psi.slopes, psi.intercepts,
                                   name=f"{scaling.name}-psi")


@functools.cache
def haar_wavelet() -> PiecewiseLinearFunction:
    from .filters import haar_scalar_filter

    return derive_mother(HAAR_SCALING, haar_scalar_filter())


@functools.cache
def schauder_wavelet() -> PiecewiseLinearFunction:
    from .filters import schauder_scalar_filter

    return derive_mother(SCHAUDER_SCALING, schauder_scalar_filter())


def named_function(name: str) -> PiecewiseLinearFunction:
    """Lookup used by the CLI: ``haar``, ``schauder``, ``haar-psi``, ``schauder-psi``."""
    table = {
        "haar": lambda: HAAR_SCALING,
        "schauder": lambda: SCHAUDER_SCALING,
        "haar-psi": haar_wavelet,
        "schauder-psi": schauder_wavelet,
    }
    try:
        return table[name]()
    except KeyError:
        raise InvalidArgumentError(f"unknown function {name!r}; expected one of {sorted(table)}") from None


class CopyIndex(NamedTuple):
    level: int
    shift: int


def eval_copy(f: PiecewiseLinearFunction, idx: CopyIndex, x):
    j, k = idx
    return 2.0 ** (j / 2) * f(2.0 ** j * np.asarray(x, dtype=float) - k)


def copy_support(f: PiecewiseLinearFunction, idx: CopyIndex) -> tuple[float, float]:
    """Right-open support ``[(a + k) / 2^j, (b + k) / 2^j[`` of the copy."""
    j, k = idx
    a, b = f.support
    return (a + k) / 2.0 ** j, (b + k) / 2.0 ** j
