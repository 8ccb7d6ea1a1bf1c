"""NAQE error metric, level-wise error tables, and the runtime comparison harness."""

from __future__ import annotations

import os
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .errors import InvalidArgumentError, UndefinedMetricError
from .filters import HAAR, SCHAUDER, build_haar_schauder_bank, column_bank
from .transform import (
    MultiSignal,
    QuadratureSpec,
    decompose,
    direct_decompose,
    level_approximation,
    synthesize,
)


def naqe(approx, reference) -> float:
    """Normalized average quadratic error ``sum((a - f)^2) / sum(f^2)``."""
    a = np.asarray(approx, dtype=float).ravel()
    f = np.asarray(reference, dtype=float).ravel()
    if a.size != f.size:
        raise InvalidArgumentError(f"length mismatch: {a.size} vs {f.size}")
    if f.size == 0:
        raise InvalidArgumentError("empty input")
    denom = float(np.dot(f, f))
    if denom == 0.0:
        raise UndefinedMetricError("reference signal is identically zero")
    diff = a - f
    return float(np.dot(diff, diff)) / denom


def channel_naqe(approx, reference) -> float:
    """Mean of per-channel NAQE for ``(r, n)`` arrays."""
    a = np.atleast_2d(np.asarray(approx, dtype=float))
    f = np.atleast_2d(np.asarray(reference, dtype=float))
    if a.shape != f.shape:
        raise InvalidArgumentError(f"shape mismatch: {a.shape} vs {f.shape}")
    return float(np.mean([naqe(x, y) for x, y in zip(a, f)]))


@dataclass(frozen=True)
class ErrorReport:
    method: str
    level: int
    naqe: float
    n: int
    seconds: float
    rank: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)


# name -> (component column or None for both, direct projection?)
METHODS = {
    "haar-wavelet": (HAAR, True),
    "haar-filters": (HAAR, False),
    "schauder-wavelet": (SCHAUDER, True),
    "schauder-filters": (SCHAUDER, False),
    "multiwavelet": (None, True),
    "multiwavelet-filters": (None, False),
}
ALIASES = {"haar": "haar-filters", "schauder": "schauder-filters"}
ECG_METHODS = ("haar", "schauder", "multiwavelet-filters")


def resolve_method(name: str):
    """Returns ``(bank, direct)`` for a method label."""
    key = ALIASES.get(name, name)
    try:
        col, direct = METHODS[key]
    except KeyError:
        known = sorted(set(METHODS) | set(ALIASES))
        raise InvalidArgumentError(f"unknown method {name!r}; expected one of {known}") from None
    bank = build_haar_schauder_bank()
    if col is not None:
        bank = column_bank(bank, col)
    return bank, direct


def worker_count() -> int:
    """Worker cap from ``MULTIWAV_THREADS`` (0 or unset: one per CPU)."""
    raw = os.environ.get("MULTIWAV_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise InvalidArgumentError(f"MULTIWAV_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise InvalidArgumentError("MULTIWAV_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def error_table(signal: MultiSignal, methods, levels, quad: QuadratureSpec | None = None,
                workers: int | None = None) -> list[ErrorReport]:
    """NAQE of the level-``J`` reconstruction ``F_J`` for every (method, level).

    Reports come back in ``methods`` x ``levels`` order regardless of how many
    workers evaluate them.
    """
    cells = [(m, int(j)) for m in methods for j in levels]
    for m, _ in cells:
        resolve_method(m)

    def run(cell):
        m, j = cell
        bank, direct = resolve_method(m)
        start = time.perf_counter()
        _, fj, _ = level_approximation(signal, bank, j, quad, direct=direct)
        elapsed = time.perf_counter() - start
        return ErrorReport(m, j, channel_naqe(fj, signal.samples), signal.n, elapsed)

    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(cells) <= 1:
        return [run(c) for c in cells]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, cells))


def run_pipeline(signal: MultiSignal, method: str, levels: int,
                 quad: QuadratureSpec | None = None, finest_level: int | None = None) -> np.ndarray:
    """Decompose ``levels`` steps with ``method`` and synthesize on the signal grid."""
    bank, direct = resolve_method(method)
    fn = direct_decompose if direct else decompose
    pyr = fn(signal, bank, levels, quad, finest_level)
    return synthesize(pyr, signal.grid)


def bench(signal: MultiSignal, methods, repetitions: int = 5, levels: int = 1,
          quad: QuadratureSpec | None = None, finest_level: int | None = None) -> list[ErrorReport]:
    """Median wall time of :func:`run_pipeline` per method.

    Measured sections run sequentially in the calling thread.  ``rank`` orders
    methods by median time (1 = fastest).  Duplicate method names are timed
    independently.
    """
    if repetitions < 3:
        raise InvalidArgumentError(f"repetitions must be >= 3, got {repetitions}")
    for m in methods:
        resolve_method(m)
    rows = []
    for m in methods:
        times = []
        recon = None
        for _ in range(repetitions):
            start = time.perf_counter()
            recon = run_pipeline(signal, m, levels, quad, finest_level)
            times.append(time.perf_counter() - start)
        rows.append((m, channel_naqe(recon, signal.samples), statistics.median(times)))
    order = sorted(range(len(rows)), key=lambda i: (rows[i][2], i))
    ranks = {i: pos + 1 for pos, i in enumerate(order)}
    return [ErrorReport(m, levels, e, signal.n, t, ranks[i]) for i, (m, e, t) in enumerate(rows)]
