"""CSV/JSON formats and atomic file output.

Signal CSV: header ``t,ch0[,ch1,...]``, one row per sample, ``.`` decimal
separator, uniform ``t`` grid.  JSON output has a fixed key order and floats
written with 17 significant digits, so identical inputs give identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from ._json import dumps, format_float
from .errors import InvalidSignalError, ParseError
from .transform import CoefficientSequence, MultiSignal, Pyramid

PYRAMID_FORMAT = "multiwav-pyramid"
PYRAMID_VERSION = 1

_GRID_RTOL = 1e-6


def atomic_write(path, text: str) -> Path:
    """Write ``text`` to a temp file beside ``path`` and rename it into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def signal_csv_text(t, values, names=None, index: str = "t") -> str:
    values = np.atleast_2d(np.asarray(values, dtype=float))
    names = names or [f"ch{i}" for i in range(values.shape[0])]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([index, *names])
    for i, ti in enumerate(np.asarray(t, dtype=float)):
        w.writerow([format_float(ti), *(format_float(v) for v in values[:, i])])
    return buf.getvalue()


def write_signal_csv(path, t, values, names=None) -> Path:
    return atomic_write(path, signal_csv_text(t, values, names))


def read_columns_csv(path) -> tuple[list[str], np.ndarray]:
    """Header and float rows of a CSV file.  Errors carry 1-based line numbers."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or not rows[0]:
        raise ParseError(f"{path}: missing header", position=1)
    header = [h.strip() for h in rows[0]]
    data = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise ParseError(f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}",
                             position=lineno)
        try:
            data.append([float(c) for c in row])
        except ValueError:
            raise ParseError(f"{path}:{lineno}: non-numeric field in {row!r}", position=lineno) from None
    return header, np.array(data, dtype=float).reshape(-1, len(header))


def read_signal_csv(path) -> MultiSignal:
    header, data = read_columns_csv(path)
    if header[0].lower() != "t" or len(header) < 2:
        raise ParseError(f"{path}: header must be 't,ch0[,ch1,...]'", position=1)
    if data.shape[0] < 2:
        raise InvalidSignalError(f"{path}: need at least 2 samples, got {data.shape[0]}")
    t = data[:, 0]
    steps = np.diff(t)
    off = (steps <= 0) | (np.abs(steps - steps[0]) > _GRID_RTOL * abs(steps[0]))
    if np.any(off):
        bad = int(np.argmax(off)) + 3  # header is line 1, row i + 1 is line i + 3
        raise ParseError(f"{path}:{bad}: time column is not a uniform increasing grid", position=bad)
    return MultiSignal(data[:, 1:].T, t[0], t[-1])


def _sequence_to_dict(seq: CoefficientSequence) -> dict:
    return {
        "level": seq.level,
        "k_min": seq.kmin,
        "k_max": seq.kmax,
        "coefficients": [m.tolist() for m in seq.coeffs],
    }


def _sequence_from_dict(d: dict, r: int) -> CoefficientSequence:
    coeffs = np.array(d["coefficients"], dtype=float).reshape(-1, r, 2)
    seq = CoefficientSequence(d["level"], d["k_min"], coeffs)
    if seq.kmax != d["k_max"]:
        raise ParseError(f"k_max {d['k_max']} does not match {len(coeffs)} stored positions")
    return seq


def pyramid_to_dict(pyr: Pyramid) -> dict:
    return {
        "format": PYRAMID_FORMAT,
        "version": PYRAMID_VERSION,
        "channels": pyr.r,
        "domain": [pyr.t0, pyr.t1],
        "coarse_level": pyr.coarse_level,
        "finest_level": pyr.finest_level,
        "approximation": _sequence_to_dict(pyr.approximation),
        "details": [_sequence_to_dict(d) for d in pyr.details],
        "provenance": dict(pyr.provenance),
    }


def pyramid_from_dict(d: dict) -> Pyramid:
    try:
        if d.get("format") != PYRAMID_FORMAT:
            raise ParseError(f"not a pyramid document (format={d.get('format')!r})")
        r = int(d["channels"])
        t0, t1 = d["domain"]
        approx = _sequence_from_dict(d["approximation"], r)
        details = [_sequence_from_dict(x, r) for x in d["details"]]
        return Pyramid(approx, details, float(t0), float(t1), dict(d.get("provenance", {})))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed pyramid document: {exc}") from exc


def write_pyramid(path, pyr: Pyramid) -> Path:
    return atomic_write(path, dumps(pyramid_to_dict(pyr)))


def read_pyramid(path) -> Pyramid:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}: invalid JSON ({exc.msg})", position=exc.lineno) from exc
    return pyramid_from_dict(doc)
