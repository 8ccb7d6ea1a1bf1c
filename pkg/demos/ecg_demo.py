"""Multi-level approximation of the bundled synthetic ECG record."""

from multiwav import data
from multiwav.metrics import ECG_METHODS, error_table

ecg = data.load_ecg()
print(f"{ecg.n} samples on [{ecg.t0}, {ecg.t1}] s, {ecg.r} channel(s)")

rows = error_table(ecg, ECG_METHODS, [1, 2, 3, 4])
print(f"{'J':>3}" + "".join(f"{m:>24}" for m in ECG_METHODS))
for j in (1, 2, 3, 4):
    cells = {r.method: r.naqe for r in rows if r.level == j}
    print(f"{j:>3}" + "".join(f"{cells[m]:>24.4e}" for m in ECG_METHODS))
