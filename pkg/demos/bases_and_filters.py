"""Scaling functions, their wavelets, and the two-component filter bank."""

import numpy as np

from multiwav.bases import (
    HAAR_SCALING,
    SCHAUDER_SCALING,
    CopyIndex,
    copy_support,
    haar_wavelet,
    schauder_wavelet,
    two_scale_residual,
)
from multiwav.filters import (
    HAAR,
    SCHAUDER,
    build_haar_schauder_bank,
    column_bank,
    haar_scalar_filter,
    pr_defect,
    schauder_scalar_filter,
)

# The box and the hat each tile the line: integer translates sum to one.
x = np.linspace(-3, 3, 13)
print("box partition :", sum(HAAR_SCALING(x - k) for k in range(-5, 6)))
print("hat partition :", sum(SCHAUDER_SCALING(x - k) for k in range(-5, 6)))

# Each satisfies an exact two-scale relation with its scalar filter.
print("box 2-scale residual:", two_scale_residual(HAAR_SCALING, haar_scalar_filter()))
print("hat 2-scale residual:", two_scale_residual(SCHAUDER_SCALING, schauder_scalar_filter()))

# Mother wavelets come from g_k = (-1)^k h_(1-k).
for name, psi in (("haar psi", haar_wavelet()), ("schauder psi", schauder_wavelet())):
    print(f"{name:13s} support {psi.support}, copy (j=2, k=3) support {copy_support(psi, CopyIndex(2, 3))}")

# The bank is diagonal; column 0 is Haar, column 1 Schauder.
bank = build_haar_schauder_bank()
for k in (-1, 0, 1):
    print(f"H_{k:+d} =", bank.lowpass.tap(k).tolist())

# Only the Haar column reconstructs perfectly; the hat is interpolatory, not orthogonal.
print("pr_defect full    :", pr_defect(bank, 64))
print("pr_defect haar    :", pr_defect(column_bank(bank, HAAR), 64))
print("pr_defect schauder:", pr_defect(column_bank(bank, SCHAUDER), 64))
