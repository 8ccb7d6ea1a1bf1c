"""Projection, multifilter cascade, and synthesis.

Coefficient sequences hold one ``(r, 2)`` matrix per position ``k``: row ``i``
is channel ``i``, column 0 the Haar component and column 1 the Schauder
component.  One analysis step maps level ``j + 1`` to level ``j``::

    approx[s] = sum_l fine[l] @ H[l - 2s]
    detail[s] = sum_l fine[l] @ G[l - 2s]

and synthesis inverts it with ``fine[s] = sum_l approx[l] @ H[s - 2l] + detail[l] @ G[s - 2l]``.
Signals are extended by zero outside their domain.

When both components are active the pyramid is initialised in two stages:
the Schauder branch analyses the signal, and the Haar branch analyses what the
Schauder pyramid fails to reproduce.  Synthesis sums the two branches, so the
Haar branch (which reconstructs perfectly) corrects the Schauder branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bases import (
    HAAR_SCALING,
    SCHAUDER_SCALING,
    PiecewiseLinearFunction,
    haar_wavelet,
    schauder_wavelet,
)
from .errors import InvalidArgumentError, InvalidSignalError
from .filters import HAAR, SCHAUDER, MatrixFilter, MultiFilterBank, build_haar_schauder_bank, column_bank


def scaling_family() -> tuple[PiecewiseLinearFunction, PiecewiseLinearFunction]:
    return (HAAR_SCALING, SCHAUDER_SCALING)


def wavelet_family() -> tuple[PiecewiseLinearFunction, PiecewiseLinearFunction]:
    return (haar_wavelet(), schauder_wavelet())


def _family(name) -> tuple[PiecewiseLinearFunction, ...]:
    if name in ("phi", "scaling"):
        return scaling_family()
    if name in ("psi", "wavelet"):
        return wavelet_family()
    if isinstance(name, PiecewiseLinearFunction):
        return (name,)
    return tuple(name)


@dataclass(frozen=True, eq=False)
class MultiSignal:
    """``r`` channels sampled on a shared uniform grid over ``[t0, t1]``."""

    samples: np.ndarray
    t0: float
    t1: float

    def __post_init__(self):
        x = np.array(self.samples, dtype=float)
        if x.ndim == 1:
            x = x[None, :]
        if x.ndim != 2 or x.shape[0] < 1:
            raise InvalidSignalError("samples must be a 1-D or (channels, n) array")
        if x.shape[1] < 2:
            raise InvalidSignalError(f"need at least 2 samples per channel, got {x.shape[1]}")
        if not np.all(np.isfinite(x)):
            raise InvalidSignalError("samples contain NaN or infinity")
        t0, t1 = float(self.t0), float(self.t1)
        if not (math.isfinite(t0) and math.isfinite(t1) and t1 > t0):
            raise InvalidSignalError(f"invalid domain [{t0}, {t1}]")
        x.setflags(write=False)
        object.__setattr__(self, "samples", x)
        object.__setattr__(self, "t0", t0)
        object.__setattr__(self, "t1", t1)

    @classmethod
    def from_function(cls, func, t0: float, t1: float, n: int) -> MultiSignal:
        t = np.linspace(t0, t1, n)
        return cls(np.atleast_2d(func(t)), t0, t1)

    @property
    def r(self) -> int:
        return self.samples.shape[0]

    @property
    def n(self) -> int:
        return self.samples.shape[1]

    @property
    def dt(self) -> float:
        return (self.t1 - self.t0) / (self.n - 1)

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(self.t0, self.t1, self.n)


@dataclass(frozen=True)
class QuadratureSpec:
    """``exact`` integrates piecewise-quadratic integrands with Simpson's rule
    on every breakpoint interval (exact up to rounding); ``gauss`` uses
    ``nodes`` Gauss-Legendre points per interval."""

    mode: str = "exact"
    nodes: int = 3

    def __post_init__(self):
        if self.mode not in ("exact", "gauss"):
            raise InvalidArgumentError(f"unknown quadrature mode {self.mode!r}")
        if self.mode == "gauss" and self.nodes < 2:
            raise InvalidArgumentError("gauss quadrature needs at least 2 nodes")

    def rule(self) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and weights on ``[0, 1]``."""
        if self.mode == "exact":
            return np.array([0.0, 0.5, 1.0]), np.array([1.0, 4.0, 1.0]) / 6.0
        x, w = np.polynomial.legendre.leggauss(self.nodes)
        return 0.5 * (x + 1.0), 0.5 * w


@dataclass(frozen=True, eq=False)
class CoefficientSequence:
    """Coefficient matrices for positions ``kmin .. kmin + len - 1`` at one level."""

    level: int
    kmin: int
    coeffs: np.ndarray  # (npos, r, 2)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.ndim != 3 or c.shape[2] != 2:
            raise ValueError("coeffs must have shape (positions, r, 2)")
        if not np.all(np.isfinite(c)):
            raise ValueError("non-finite coefficients")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "level", int(self.level))
        object.__setattr__(self, "kmin", int(self.kmin))

    @classmethod
    def zeros(cls, level: int, kmin: int, kmax: int, r: int) -> CoefficientSequence:
        return cls(level, kmin, np.zeros((max(kmax - kmin + 1, 0), r, 2)))

    @property
    def kmax(self) -> int:
        return self.kmin + self.coeffs.shape[0] - 1

    @property
    def r(self) -> int:
        return self.coeffs.shape[1]

    def __len__(self):
        return self.coeffs.shape[0]

    def positions(self) -> np.ndarray:
        return np.arange(self.kmin, self.kmax + 1)

    def get(self, k: int) -> np.ndarray:
        if self.kmin <= k <= self.kmax:
            return self.coeffs[k - self.kmin]
        return np.zeros((self.r, 2))

    def dense(self, kmin: int, kmax: int) -> np.ndarray:
        """Coefficients on ``kmin .. kmax``, zero-filled outside the stored range."""
        out = np.zeros((kmax - kmin + 1, self.r, 2))
        lo, hi = max(kmin, self.kmin), min(kmax, self.kmax)
        if lo <= hi:
            out[lo - kmin:hi - kmin + 1] = self.coeffs[lo - self.kmin:hi - self.kmin + 1]
        return out

    def with_coeffs(self, coeffs) -> CoefficientSequence:
        return CoefficientSequence(self.level, self.kmin, coeffs)


@dataclass(frozen=True, eq=False)
class Pyramid:
    """Approximation at the coarse level plus details for every level up to the finest."""

    approximation: CoefficientSequence
    details: tuple  # CoefficientSequence, ascending level
    t0: float
    t1: float
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "details", tuple(self.details))
        for i, d in enumerate(self.details):
            if d.level != self.coarse_level + i:
                raise ValueError("detail levels must be contiguous from the coarse level")
            if d.r != self.approximation.r:
                raise ValueError("all sequences must share the channel count")

    @property
    def coarse_level(self) -> int:
        return self.approximation.level

    @property
    def finest_level(self) -> int:
        return self.coarse_level + len(self.details)

    @property
    def r(self) -> int:
        return self.approximation.r


def default_finest_level(signal: MultiSignal) -> int:
    """Smallest level whose dyadic cells are no wider than the sample spacing."""
    return math.ceil(math.log2(signal.n / (signal.t1 - signal.t0)))


def index_range(functions, level: int, t0: float, t1: float) -> tuple[int, int]:
    """Positions ``k`` whose copy support meets ``[t0, t1[`` (union over components).

    Returns ``(kmin, kmax)``; the range is empty when ``kmin > kmax``.
    """
    if not t1 > t0:
        raise InvalidArgumentError("need t1 > t0")
    scale = 2.0 ** level
    lo, hi = math.inf, -math.inf
    for f in _family(functions):
        a, b = f.support
        lo = min(lo, math.floor(t0 * scale - b) + 1)
        hi = max(hi, math.ceil(t1 * scale - a) - 1)
    return int(lo), int(hi)


def _project_pwl(knots, values, f: PiecewiseLinearFunction, level: int,
                 kmin: int, kmax: int, quad: QuadratureSpec) -> np.ndarray:
    """Inner products of a continuous piecewise-linear function with copies of ``f``.

    ``knots`` (m,) and ``values`` (r, m) define the function on
    ``[knots[0], knots[-1]]``; it is zero elsewhere.  Returns ``(npos, r)``.
    """
    r = values.shape[0]
    out = np.zeros((kmax - kmin + 1, r))
    if kmax < kmin:
        return out
    step = 2.0 ** -(level + f.dyadic_depth())
    lo, hi = knots[0], knots[-1]
    dyadic = np.arange(math.ceil(lo / step), math.floor(hi / step) + 1) * step
    u = np.union1d(knots, dyadic)
    a, b = u[:-1], u[1:]
    width = b - a
    nodes, weights = quad.rule()
    x = a[:, None] + width[:, None] * nodes[None, :]
    gx = np.stack([np.interp(x, knots, v) for v in values])  # (r, p, q)

    scale = 2.0 ** level
    amp = 2.0 ** (level / 2)
    y_mid = scale * 0.5 * (a + b)
    fa, fb = f.support
    k_first = np.floor(y_mid - fb).astype(np.int64) + 1
    for offset in range(int(math.ceil(fb - fa)) + 1):
        k = k_first + offset
        piece = f.piece_index(y_mid - k)
        ok = (piece >= 0) & (k >= kmin) & (k <= kmax)
        if not np.any(ok):
            continue
        kk = k[ok]
        s = f.slopes[piece[ok]][:, None]
        c = f.intercepts[piece[ok]][:, None]
        copy_vals = amp * (s * (scale * x[ok] - kk[:, None]) + c)
        contrib = (gx[:, ok, :] * copy_vals[None]) @ weights * width[ok][None, :]
        for ch in range(r):
            out[:, ch] += np.bincount(kk - kmin, weights=contrib[ch], minlength=out.shape[0])
    return out


def _signal_pwl(signal: MultiSignal):
    return signal.grid, signal.samples


def project(signal: MultiSignal, family="phi", level: int = 0,
            quad: QuadratureSpec | None = None, columns=(HAAR, SCHAUDER)) -> CoefficientSequence:
    """Coefficients ``<F, component copy>`` of the piecewise-linear interpolant of ``signal``.

    ``family`` is ``"phi"`` (scaling functions) or ``"psi"`` (mother wavelets);
    column ``i`` of each matrix uses component ``i`` of that family.  Columns
    not listed in ``columns`` are left at zero.
    """
    quad = quad or QuadratureSpec()
    knots, values = _signal_pwl(signal)
    return _project_knots(knots, values, _family(family), level, signal.t0, signal.t1, quad, columns)


def _project_knots(knots, values, funcs, level, t0, t1, quad, columns) -> CoefficientSequence:
    kmin, kmax = index_range(funcs, level, t0, t1)
    seq = np.zeros((max(kmax - kmin + 1, 0), values.shape[0], 2))
    for col in columns:
        seq[:, :, col] = _project_pwl(knots, values, funcs[col], level, kmin, kmax, quad)
    return CoefficientSequence(level, kmin, seq)


def _ceil_half(a: int) -> int:
    return -((-a) // 2)


def _analysis(fine: CoefficientSequence, f: MatrixFilter) -> CoefficientSequence:
    lo, hi = f.support
    if hi < lo or len(fine) == 0:
        return CoefficientSequence.zeros(fine.level - 1, 0, -1, fine.r)
    smin = _ceil_half(fine.kmin - hi)
    smax = (fine.kmax - lo) // 2
    out = np.zeros((smax - smin + 1, fine.r, 2))
    for m, tap in f.nonzero_items():
        # fine index l = 2s + m must lie in [kmin, kmax]
        s_lo = max(smin, _ceil_half(fine.kmin - m))
        s_hi = min(smax, (fine.kmax - m) // 2)
        if s_hi < s_lo:
            continue
        l0 = 2 * s_lo + m - fine.kmin
        rows = fine.coeffs[l0:l0 + 2 * (s_hi - s_lo) + 1:2]
        out[s_lo - smin:s_hi - smin + 1] += (rows.reshape(-1, 2) @ tap).reshape(rows.shape)
    return CoefficientSequence(fine.level - 1, smin, out)


def decompose_step(fine: CoefficientSequence, bank: MultiFilterBank):
    """One analysis step: returns ``(approx, detail)`` at level ``fine.level - 1``."""
    return _analysis(fine, bank.lowpass), _analysis(fine, bank.highpass)


def reconstruct_step(approx: CoefficientSequence, detail: CoefficientSequence,
                     bank: MultiFilterBank) -> CoefficientSequence:
    if approx.r != detail.r:
        raise InvalidArgumentError(f"channel mismatch: {approx.r} vs {detail.r}")
    if approx.level != detail.level:
        raise InvalidArgumentError(f"level mismatch: {approx.level} vs {detail.level}")
    parts = [(seq, f) for seq, f in ((approx, bank.lowpass), (detail, bank.highpass))
             if len(seq) and f.support[1] >= f.support[0]]
    if not parts:
        return CoefficientSequence.zeros(approx.level + 1, 0, -1, approx.r)
    lo = min(2 * seq.kmin + f.support[0] for seq, f in parts)
    hi = max(2 * seq.kmax + f.support[1] for seq, f in parts)
    out = np.zeros((hi - lo + 1, approx.r, 2))
    for seq, f in parts:
        n = len(seq)
        flat = seq.coeffs.reshape(-1, 2)
        for m, tap in f.nonzero_items():
            start = 2 * seq.kmin + m - lo
            out[start:start + 2 * n - 1:2] += (flat @ tap).reshape(seq.coeffs.shape)
    return CoefficientSequence(approx.level + 1, lo, out)


def cascade(fine: CoefficientSequence, bank: MultiFilterBank, levels: int) -> tuple:
    """Apply ``levels`` analysis steps; returns ``(coarse_approx, details_ascending)``."""
    details = []
    approx = fine
    for _ in range(levels):
        approx, d = decompose_step(approx, bank)
        details.append(d)
    return approx, tuple(reversed(details))


def reconstruct(pyramid: Pyramid, bank: MultiFilterBank) -> CoefficientSequence:
    """Run the synthesis cascade back to the finest level."""
    approx = pyramid.approximation
    for d in pyramid.details:
        approx = reconstruct_step(approx, d, bank)
    return approx


def _evaluate_sequence(seq: CoefficientSequence, funcs, t: np.ndarray, columns=(HAAR, SCHAUDER)) -> np.ndarray:
    """``sum_k sum_col seq[k][:, col] * copy_col(t)`` as an ``(r, len(t))`` array."""
    out = np.zeros((seq.r, t.size))
    if len(seq) == 0 or t.size == 0:
        return out
    scale = 2.0 ** seq.level
    amp = 2.0 ** (seq.level / 2)
    y = scale * t
    for col in columns:
        f = funcs[col]
        fa, fb = f.support
        k_first = np.floor(y - fb).astype(np.int64) + 1
        for offset in range(int(math.ceil(fb - fa)) + 1):
            k = k_first + offset
            ok = (k >= seq.kmin) & (k <= seq.kmax)
            if not np.any(ok):
                continue
            vals = amp * f(y[ok] - k[ok])
            out[:, ok] += seq.coeffs[k[ok] - seq.kmin, :, col].T * vals
    return out


def synthesize(pyramid: Pyramid, grid, include_details: bool = True,
               columns=(HAAR, SCHAUDER)) -> np.ndarray:
    """Evaluate ``A + sum(D)`` (or ``A`` alone) on ``grid``; returns ``(r, len(grid))``.

    Components are summed over columns.  Points outside ``[t0, t1]`` give 0.
    """
    t = np.asarray(grid, dtype=float).ravel()
    out = _evaluate_sequence(refine_pyramid(pyramid, include_details), scaling_family(), t, columns)
    out[:, (t < pyramid.t0) | (t > pyramid.t1)] = 0.0
    return out


def refine_pyramid(pyramid: Pyramid, include_details: bool = True) -> CoefficientSequence:
    """Scaling coefficients at the finest level of the same function ``A + sum(D)``.

    Uses the two-scale relations of the Haar and Schauder components, which
    are exact whatever bank produced the pyramid, so one sequence evaluation
    replaces one per level.
    """
    bank = build_haar_schauder_bank()
    approx = pyramid.approximation
    for d in pyramid.details:
        if not include_details:
            d = CoefficientSequence.zeros(d.level, 0, -1, d.r)
        approx = reconstruct_step(approx, d, bank)
    return approx


def _validate_levels(signal: MultiSignal, levels: int):
    if not isinstance(levels, (int, np.integer)) or levels < 1:
        raise InvalidArgumentError(f"levels must be a positive integer, got {levels!r}")
    if levels > math.log2(signal.n):
        raise InvalidArgumentError(
            f"levels={levels} exceeds log2(sample count)={math.log2(signal.n):.3g}")


def _schauder_residual(signal: MultiSignal, schauder_pyr: Pyramid):
    """Knots and values of ``F - S`` on the domain, ``S`` the Schauder-branch synthesis.

    ``S`` is continuous and linear between points of ``2^-J Z`` (J the finest
    level), so sampling it there together with the signal knots is exact.
    """
    step = 2.0 ** -schauder_pyr.finest_level
    dyadic = np.arange(math.ceil(signal.t0 / step), math.floor(signal.t1 / step) + 1) * step
    knots = np.union1d(signal.grid, dyadic)
    s_vals = synthesize(schauder_pyr, knots, columns=(SCHAUDER,))
    f_vals = np.stack([np.interp(knots, signal.grid, v) for v in signal.samples])
    return knots, f_vals - s_vals


def decompose(signal: MultiSignal, bank: MultiFilterBank | None = None, levels: int = 1,
              quad: QuadratureSpec | None = None, finest_level: int | None = None) -> Pyramid:
    """Project at the finest level and run ``levels`` analysis steps.

    The finest level defaults to :func:`default_finest_level`.
    """
    bank = bank or build_haar_schauder_bank()
    quad = quad or QuadratureSpec()
    _validate_levels(signal, levels)
    jf = default_finest_level(signal) if finest_level is None else int(finest_level)
    cols = bank.active_columns
    phi = scaling_family()
    knots, values = _signal_pwl(signal)
    init = "projection"

    if SCHAUDER in cols and HAAR in cols:
        init = "schauder+haar-residual"
        s_only = _project_knots(knots, values, phi, jf, signal.t0, signal.t1, quad, (SCHAUDER,))
        s_bank = column_bank(bank, SCHAUDER)
        approx, details = cascade(s_only, s_bank, levels)
        s_pyr = Pyramid(approx, details, signal.t0, signal.t1)
        r_knots, r_values = _schauder_residual(signal, s_pyr)
        h_only = _project_knots(r_knots, r_values, phi, jf, signal.t0, signal.t1, quad, (HAAR,))
        fine = s_only.with_coeffs(s_only.coeffs + h_only.coeffs)
    else:
        fine = _project_knots(knots, values, phi, jf, signal.t0, signal.t1, quad, cols)

    approx, details = cascade(fine, bank, levels)
    prov = {
        "bank": bank.name,
        "boundary": "zero",
        "quadrature": quad.mode if quad.mode == "exact" else f"gauss-{quad.nodes}",
        "initialization": init,
        "method": "filters",
    }
    return Pyramid(approx, details, signal.t0, signal.t1, prov)


def direct_decompose(signal: MultiSignal, bank: MultiFilterBank | None = None, levels: int = 1,
                     quad: QuadratureSpec | None = None, finest_level: int | None = None) -> Pyramid:
    """Same pyramid as :func:`decompose`, but every coefficient is a direct integral.

    No filters are applied: each level's approximation and detail
    coefficients are projections of the signal onto that level's copies.
    """
    bank = bank or build_haar_schauder_bank()
    quad = quad or QuadratureSpec()
    _validate_levels(signal, levels)
    jf = default_finest_level(signal) if finest_level is None else int(finest_level)
    cols = bank.active_columns
    j0 = jf - levels
    knots, values = _signal_pwl(signal)
    phi, psi = scaling_family(), wavelet_family()

    def direct(kn, vals, columns):
        approx = _project_knots(kn, vals, phi, j0, signal.t0, signal.t1, quad, columns)
        details = [_project_knots(kn, vals, psi, j, signal.t0, signal.t1, quad, columns)
                   for j in range(j0, jf)]
        return approx, details

    init = "projection"
    if SCHAUDER in cols and HAAR in cols:
        init = "schauder+haar-residual"
        sa, sd = direct(knots, values, (SCHAUDER,))
        r_knots, r_values = _schauder_residual(signal, Pyramid(sa, sd, signal.t0, signal.t1))
        ha, hd = direct(r_knots, r_values, (HAAR,))
        approx = sa.with_coeffs(sa.coeffs + ha.coeffs)
        details = [s.with_coeffs(s.coeffs + h.coeffs) for s, h in zip(sd, hd)]
    else:
        approx, details = direct(knots, values, cols)
    prov = {
        "bank": bank.name,
        "boundary": "zero",
        "quadrature": quad.mode if quad.mode == "exact" else f"gauss-{quad.nodes}",
        "initialization": init,
        "method": "direct",
    }
    return Pyramid(approx, details, signal.t0, signal.t1, prov)


SINGLE_COLUMNS = {"haar": HAAR, "schauder": SCHAUDER}


def single_wavelet_pipeline(signal: MultiSignal, which: str, levels: int,
                            quad: QuadratureSpec | None = None,
                            finest_level: int | None = None) -> Pyramid:
    """:func:`decompose` restricted to one component of the Haar-Schauder bank."""
    try:
        col = SINGLE_COLUMNS[which]
    except KeyError:
        raise InvalidArgumentError(f"which must be 'haar' or 'schauder', got {which!r}") from None
    bank = column_bank(build_haar_schauder_bank(), col)
    return decompose(signal, bank, levels, quad, finest_level)


def level_approximation(signal: MultiSignal, bank: MultiFilterBank, level: int,
                        quad: QuadratureSpec | None = None, direct: bool = False):
    """Level-``J`` reconstruction of a signal on its own grid.

    Projects at level ``J + 1`` and runs one analysis step, so
    ``F_J = A_J + D_J``.  Returns ``(A_J, F_J, pyramid)`` with the two arrays
    shaped ``(r, n)``.
    """
    fn = direct_decompose if direct else decompose
    pyr = fn(signal, bank, 1, quad, finest_level=level + 1)
    t = signal.grid
    return synthesize(pyr, t, include_details=False), synthesize(pyr, t), pyr
