"""Approximating sin(t) on [0, 2pi] with each basis, and how the error falls with J."""

import numpy as np

from multiwav.metrics import error_table, naqe, resolve_method
from multiwav.transform import MultiSignal, level_approximation

sig = MultiSignal.from_function(np.sin, 0.0, 2 * np.pi, 50)

# A_J keeps only the coarse approximation, F_J adds the details back.
for method in ("haar", "schauder", "multiwavelet-filters"):
    bank, direct = resolve_method(method)
    a, f, _ = level_approximation(sig, bank, 1, direct=direct)
    print(f"{method:22s} NAQE(A_1) {naqe(a, sig.samples):.3e}  NAQE(F_1) {naqe(f, sig.samples):.3e}")

# Error table for J = 1..3; the multiwavelet drops fastest.
for row in error_table(sig, ["haar", "schauder", "multiwavelet-filters"], [1, 2, 3]):
    print(f"{row.method:22s} J={row.level}  {row.naqe:.3e}")
