"""Bundled fixtures: the coronavirus strain and a synthetic ECG trace.

The ECG CSV is produced by :func:`synthetic_ecg` with the defaults below;
``python -m multiwav.data`` rewrites it.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

import numpy as np

from .transform import MultiSignal

STRAIN_FILE = "sars_hanoi_strain.txt"
ECG_FILE = "ecg_synthetic.csv"

ECG_SEED = 20030
ECG_RATE = 128.0  # Hz
ECG_DURATION = 10.0  # s

# (relative time in the beat [s], amplitude [mV], width [s]) for P, Q, R, S, T
_WAVES = (
    (-0.20, 0.15, 0.025),
    (-0.03, -0.12, 0.010),
    (0.00, 1.10, 0.014),
    (0.03, -0.25, 0.012),
    (0.26, 0.32, 0.045),
)


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("multiwav") / "fixtures" / name))


def strain_text() -> str:
    return fixture_path(STRAIN_FILE).read_text()


def synthetic_ecg(seed: int = ECG_SEED, rate: float = ECG_RATE, duration: float = ECG_DURATION,
                  heart_rate: float = 72.0, noise: float = 0.01) -> MultiSignal:
    """Sum of Gaussian P-QRS-T pulses with slight RR jitter, baseline wander and noise."""
    rng = np.random.default_rng(seed)
    n = int(round(duration * rate)) + 1
    t = np.linspace(0.0, duration, n)
    rr = 60.0 / heart_rate
    beats = []
    tb = 0.35
    while tb < duration + 0.5:
        beats.append(tb)
        tb += rr * (1.0 + 0.04 * rng.standard_normal())
    x = np.zeros(n)
    for b in beats:
        for rel, amp, width in _WAVES:
            x += amp * np.exp(-0.5 * ((t - b - rel) / width) ** 2)
    x += 0.05 * np.sin(2 * np.pi * 0.3 * t + rng.uniform(0, 2 * np.pi))
    x += noise * rng.standard_normal(n)
    return MultiSignal(x, 0.0, duration)


def load_ecg() -> MultiSignal:
    from .io import read_signal_csv

    return read_signal_csv(fixture_path(ECG_FILE))


def write_ecg_fixture(path=None) -> Path:
    from .io import write_signal_csv

    sig = synthetic_ecg()
    path = Path(path) if path else fixture_path(ECG_FILE)
    write_signal_csv(path, sig.grid, sig.samples)
    return path


if __name__ == "__main__":
    print(write_ecg_fixture())
