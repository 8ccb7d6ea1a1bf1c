"""Timing the filter-bank pipeline against direct Schauder projection at every level."""

import numpy as np

from multiwav.metrics import bench
from multiwav.transform import MultiSignal

sig = MultiSignal.from_function(np.sin, 0.0, 2 * np.pi, 16384)

# Direct projection redoes the quadrature per level; the cascade reuses one projection.
for levels in (2, 6, 10):
    rows = bench(sig, ["multiwavelet-filters", "schauder-wavelet"], repetitions=5, levels=levels)
    print(f"levels={levels:2d}  " + "  ".join(f"{r.method} {r.seconds * 1e3:7.1f} ms" for r in rows))
