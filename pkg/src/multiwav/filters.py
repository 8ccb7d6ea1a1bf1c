"""Scalar filters, the 2x2 Haar-Schauder multifilter bank, and a reconstruction probe.

Column/row 0 of every matrix tap is the Haar component, column/row 1 the
Schauder component.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._json import dumps
from .errors import InvalidArgumentError

INV_SQRT2 = 1.0 / math.sqrt(2.0)

HAAR = 0
SCHAUDER = 1


@dataclass(frozen=True)
class ScalarFilter:
    taps: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(k): float(v) for k, v in self.taps.items()}
        object.__setattr__(self, "taps", dict(sorted(clean.items())))

    def tap(self, k: int) -> float:
        return self.taps.get(k, 0.0)

    @property
    def support(self) -> tuple[int, int]:
        nz = [k for k, v in self.taps.items() if v != 0.0]
        if not nz:
            return (0, -1)
        return min(nz), max(nz)

    def __eq__(self, other):
        if not isinstance(other, ScalarFilter):
            return NotImplemented
        keys = set(self.taps) | set(other.taps)
        return all(self.tap(k) == other.tap(k) for k in keys)


@dataclass(frozen=True, eq=False)
class MatrixFilter:
    """Finitely supported sequence of 2x2 matrices."""

    taps: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, m in sorted(self.taps.items()):
            arr = np.array(m, dtype=float)
            if arr.shape != (2, 2):
                raise ValueError(f"tap {k} is not 2x2")
            arr.setflags(write=False)
            clean[int(k)] = arr
        object.__setattr__(self, "taps", clean)

    def tap(self, k: int) -> np.ndarray:
        m = self.taps.get(k)
        return np.zeros((2, 2)) if m is None else m

    @cached_property
    def support(self) -> tuple[int, int]:
        nz = [k for k, m in self.taps.items() if np.any(m != 0.0)]
        if not nz:
            return (0, -1)
        return min(nz), max(nz)

    @cached_property
    def _nonzero(self) -> tuple:
        lo, hi = self.support
        return tuple((k, self.tap(k)) for k in range(lo, hi + 1))

    def nonzero_items(self):
        return list(self._nonzero)

    def entry(self, row: int, col: int) -> ScalarFilter:
        return ScalarFilter({k: m[row, col] for k, m in self.taps.items()})


@dataclass(frozen=True, eq=False)
class MultiFilterBank:
    lowpass: MatrixFilter
    highpass: MatrixFilter
    name: str = "custom"

    def __post_init__(self):
        lo, hi = self.lowpass.support
        glo, ghi = self.highpass.support
        ks = set(range(min(lo, 1 - hi, glo), max(hi, 1 - lo, ghi) + 1))
        for l in ks:
            if not np.array_equal(self.highpass.tap(l), (-1.0) ** l * self.lowpass.tap(1 - l)):
                raise ValueError(f"highpass tap {l} violates G_l = (-1)^l H_(1-l)")

    @classmethod
    def from_lowpass(cls, lowpass: MatrixFilter, name: str = "custom") -> MultiFilterBank:
        return cls(lowpass, derive_highpass_matrix(lowpass), name=name)

    @property
    def active_columns(self) -> tuple[int, ...]:
        cols = []
        for c in (HAAR, SCHAUDER):
            if any(np.any(m[:, c] != 0.0) or np.any(m[c, :] != 0.0)
                   for m in self.lowpass.taps.values()):
                cols.append(c)
        return tuple(cols)

    def to_json(self) -> str:
        def block(f):
            return {str(k): m + 0.0 for k, m in f.nonzero_items()}

        return dumps({"H": block(self.lowpass), "G": block(self.highpass)})


def haar_scalar_filter() -> ScalarFilter:
    return ScalarFilter({0: INV_SQRT2, 1: INV_SQRT2})


def schauder_scalar_filter() -> ScalarFilter:
    return ScalarFilter({-1: INV_SQRT2 / 2, 0: INV_SQRT2, 1: INV_SQRT2 / 2})


def derive_highpass_scalar(h: ScalarFilter) -> ScalarFilter:
    """``g_k = (-1)^k h_{1-k}``."""
    return ScalarFilter({1 - k: (-1.0) ** (1 - k) * v for k, v in h.taps.items()})


def derive_highpass_matrix(h: MatrixFilter) -> MatrixFilter:
    return MatrixFilter({1 - k: (-1.0) ** (1 - k) * m for k, m in h.taps.items()})


def build_haar_schauder_bank(as_printed: bool = False) -> MultiFilterBank:
    """The diagonal Haar-Schauder bank with taps at ``k = -1, 0, 1``.

    ``H_0 = I / sqrt(2)`` and the Schauder entry is ``1 / (2 sqrt(2))`` at
    ``k = +-1``.  The Haar entry of ``H_1`` is ``1 / sqrt(2)``, which is what
    ``chi_[0,1[`` requires.  ``as_printed=True`` returns the matrices with that
    entry set to 0 (so ``H_-1 == H_1``); that variant does not satisfy the
    2-scale relation for the Haar component and is kept for reference only.
    """
    side = np.array([[0.0, 0.0], [0.0, INV_SQRT2 / 2]])
    h1 = side.copy()
    if not as_printed:
        h1[HAAR, HAAR] = INV_SQRT2
    low = MatrixFilter({-1: side, 0: INV_SQRT2 * np.eye(2), 1: h1})
    return MultiFilterBank.from_lowpass(low, name="haar-schauder-printed" if as_printed else "haar-schauder")


def column_bank(bank: MultiFilterBank, column: int) -> MultiFilterBank:
    """Sub-bank acting on one component only (other row and column zeroed)."""
    mask = np.zeros((2, 2))
    mask[column, column] = 1.0
    low = MatrixFilter({k: m * mask for k, m in bank.lowpass.taps.items()})
    label = "haar" if column == HAAR else "schauder"
    return MultiFilterBank.from_lowpass(low, name=f"{bank.name}:{label}")


def named_bank(name: str) -> MultiFilterBank:
    full = build_haar_schauder_bank()
    table = {
        "haar-schauder": lambda: full,
        "haar-schauder-printed": lambda: build_haar_schauder_bank(as_printed=True),
        "haar": lambda: column_bank(full, HAAR),
        "schauder": lambda: column_bank(full, SCHAUDER),
    }
    try:
        return table[name]()
    except KeyError:
        raise InvalidArgumentError(f"unknown bank {name!r}; expected one of {sorted(table)}") from None


def _periodic_analysis(x: np.ndarray, f: MatrixFilter) -> np.ndarray:
    n = x.shape[0]
    out = np.zeros((n // 2,) + x.shape[1:])
    s = np.arange(n // 2)
    for m, tap in f.nonzero_items():
        out += x[(2 * s + m) % n] @ tap
    return out


def _periodic_synthesis(a: np.ndarray, d: np.ndarray, bank: MultiFilterBank) -> np.ndarray:
    half = a.shape[0]
    n = 2 * half
    out = np.zeros((n,) + a.shape[1:])
    l = np.arange(half)
    for coeffs, f in ((a, bank.lowpass), (d, bank.highpass)):
        for m, tap in f.nonzero_items():
            np.add.at(out, (2 * l + m) % n, coeffs @ tap)
    return out


def pr_defect(bank: MultiFilterBank, n: int) -> float:
    """Max deviation of analysis-then-synthesis from identity on unit sequences.

    Each probe is a length-``n`` periodic sequence of 1x2 matrices with a single
    unit entry in one active component.
    """
    if n < 4 or n % 2:
        raise InvalidArgumentError(f"n must be an even integer >= 4, got {n}")
    worst = 0.0
    for col in bank.active_columns:
        for m in range(n):
            e = np.zeros((n, 1, 2))
            e[m, 0, col] = 1.0
            a = _periodic_analysis(e, bank.lowpass)
            d = _periodic_analysis(e, bank.highpass)
            back = _periodic_synthesis(a, d, bank)
            worst = max(worst, float(np.max(np.abs(back - e))))
    return worst
