"""Kyte-Doolittle hydropathy profiles and transmembrane-helix segment detection."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import InvalidArgumentError, ParseError
from .filters import MultiFilterBank, build_haar_schauder_bank
from .metrics import naqe
from .transform import MultiSignal, decompose, synthesize

# One-decimal scale as tabulated with the hydrophobicity categories.
KYTE_DOOLITTLE = MappingProxyType({
    "I": 4.5, "V": 4.2, "L": 3.8, "F": 2.8, "C": 2.5, "M": 1.9, "A": 1.8,
    "G": -0.4, "T": -0.7, "S": -0.8, "W": -0.9, "Y": -1.3, "P": -1.6,
    "H": -3.2, "Q": -3.5, "N": -3.5, "E": -3.5, "D": -3.5, "K": -3.9, "R": -4.0,
})

CATEGORIES = MappingProxyType({
    **{aa: "Hydrophobic" for aa in "IVLFCMA"},
    **{aa: "Neutral" for aa in "GTSWYP"},
    **{aa: "Hydrophilic" for aa in "HQNEDKR"},
})

TERMINATORS = ".*"


def category(score: float) -> str:
    if score >= 1.8:
        return "Hydrophobic"
    if score <= -3.2:
        return "Hydrophilic"
    return "Neutral"


@dataclass(frozen=True)
class ProteinSequence:
    residues: str
    source: str = ""

    def __len__(self):
        return len(self.residues)


@dataclass(frozen=True, eq=False)
class HydropathySeries:
    """Per-position hydropathy.

    ``window`` is 0 for the raw residue series.  ``offset`` is the 0-based
    residue index that ``values[0]`` is centred on; ``length`` is the residue
    count of the source sequence.
    """

    values: np.ndarray
    window: int = 0
    offset: int = 0
    length: int = field(default=-1)

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        if self.length < 0:
            object.__setattr__(self, "length", v.size + 2 * self.offset)

    def __len__(self):
        return self.values.size

    @property
    def centers(self) -> np.ndarray:
        """1-based residue index of every value."""
        return np.arange(self.values.size) + self.offset + 1


@dataclass(frozen=True)
class TMHSegment:
    start: int  # 1-based, inclusive
    end: int
    peak: float

    @property
    def length(self) -> int:
        return self.end - self.start + 1

    def to_dict(self) -> dict:
        return {"start": self.start, "end": self.end, "peak": self.peak}


def parse_protein(text: str, source: str = "") -> ProteinSequence:
    """One-letter residues from free text; whitespace is ignored, case folded.

    A single trailing ``.`` or ``*`` terminator is accepted.  Any other
    character outside the 20 scale codes raises ParseError with its 1-based
    position among the non-whitespace characters.
    """
    chars = "".join(text.split()).upper()
    if chars and chars[-1] in TERMINATORS:
        chars = chars[:-1]
    for pos, ch in enumerate(chars, start=1):
        if ch not in KYTE_DOOLITTLE:
            raise ParseError(f"invalid residue {ch!r} at position {pos}", position=pos)
    if not chars:
        raise ParseError("empty sequence")
    return ProteinSequence(chars, source)


def to_hydropathy(seq: ProteinSequence, scale=KYTE_DOOLITTLE) -> HydropathySeries:
    return HydropathySeries(np.array([scale[aa] for aa in seq.residues]), 0, 0, len(seq))


def sliding_window(series: HydropathySeries, w: int) -> HydropathySeries:
    """Centred moving average over ``w`` (odd) consecutive values."""
    if w < 1 or w % 2 == 0:
        raise InvalidArgumentError(f"window must be an odd positive integer, got {w}")
    if w > len(series):
        raise InvalidArgumentError(f"window {w} exceeds series length {len(series)}")
    means = sliding_window_view(series.values, w).mean(axis=1)
    return HydropathySeries(means, w, series.offset + w // 2, series.length)


def _as_signal(series: HydropathySeries) -> MultiSignal:
    return MultiSignal(series.values, 0.0, float(len(series) - 1))


def multiwavelet_smooth(series: HydropathySeries, level: int,
                        bank: MultiFilterBank | None = None) -> HydropathySeries:
    """Approximation part of a ``level``-step Haar-Schauder decomposition, on the integer grid."""
    if level < 1:
        raise InvalidArgumentError(f"level must be >= 1, got {level}")
    if len(series) < 2:
        raise InvalidArgumentError("series too short to decompose")
    sig = _as_signal(series)
    pyr = decompose(sig, bank or build_haar_schauder_bank(), level)
    smooth = synthesize(pyr, sig.grid, include_details=False)[0]
    return HydropathySeries(smooth, series.window, series.offset, series.length)


def detect_tmh(series: HydropathySeries, threshold: float = 1.8, min_len: int = 12,
               merge_gap: int = 3) -> list[TMHSegment]:
    """Suprathreshold runs mapped to residue intervals.

    Each run of values ``> threshold`` covers the residues of its windows
    (centre +- ``window // 2``, clipped to the sequence).  Intervals separated
    by at most ``merge_gap`` residues are merged; those shorter than
    ``min_len`` are dropped.
    """
    if not np.isfinite(threshold):
        raise InvalidArgumentError("threshold must be finite")
    if min_len < 1 or merge_gap < 0:
        raise InvalidArgumentError("need min_len >= 1 and merge_gap >= 0")
    v = series.values
    above = np.concatenate([[False], v > threshold, [False]])
    edges = np.flatnonzero(np.diff(above.astype(np.int8)))
    half = series.window // 2
    last = series.length - 1 if series.length > 0 else v.size - 1 + series.offset
    runs = []
    for lo, hi in zip(edges[::2], edges[1::2] - 1):
        start = max(series.offset + lo - half, 0)
        end = min(series.offset + hi + half, last)
        runs.append([int(start), int(end), float(v[lo:hi + 1].max())])

    merged = []
    for run in runs:
        if merged and run[0] - merged[-1][1] - 1 <= merge_gap:
            merged[-1][1] = max(merged[-1][1], run[1])
            merged[-1][2] = max(merged[-1][2], run[2])
        else:
            merged.append(run)
    return [TMHSegment(s + 1, e + 1, p) for s, e, p in merged if e - s + 1 >= min_len]


def predict_tmh(seq: ProteinSequence, window: int = 19, level: int = 6, threshold: float = 1.8,
                min_len: int = 12, merge_gap: int = 3) -> list[TMHSegment]:
    """Window, smooth with the multiwavelet approximation, then detect segments."""
    profile = sliding_window(to_hydropathy(seq), window)
    smooth = multiwavelet_smooth(profile, level)
    return detect_tmh(smooth, threshold, min_len, merge_gap)


def reconstruction_report(series: HydropathySeries, levels) -> list[tuple[int, float]]:
    """Round-trip NAQE (all details kept) for each decomposition depth."""
    levels = list(levels)
    if not levels:
        raise InvalidArgumentError("levels must be non-empty")
    sig = _as_signal(series)
    bank = build_haar_schauder_bank()
    out = []
    for j in levels:
        pyr = decompose(sig, bank, j)
        out.append((int(j), naqe(synthesize(pyr, sig.grid)[0], series.values)))
    return out
