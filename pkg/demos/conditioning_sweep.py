"""Finite sections and reconstruction, admissible versus inadmissible shifts.

For an admissible shift the section condition numbers settle at a small
constant. When the symbol vanishes they grow roughly linearly in N. The
reconstruction runs solve the truncated sampling system by least squares
from seeded random coefficients.

    python3 demos/conditioning_sweep.py
"""

from shiftcis.exactset import analyze
from shiftcis.operatorlab import SplineConfig, condition_sweep, reconstruct_experiment

SECTIONS = (16, 32, 64, 128, 256)


def sections():
    print("section condition numbers, N = " + ", ".join(map(str, SECTIONS)))
    for m in (2, 3):
        for alpha in (0.3, 0.5, 0.75):
            conds = [r.cond for r in condition_sweep(SplineConfig(m, alpha), SECTIONS)]
            print(f"  m = {m}, alpha = {alpha:<4}: " + "  ".join(f"{c:9.3g}" for c in conds))


def reconstruction():
    print("\nreconstruction, N = 32, 64, 128 (rms error / system cond):")
    for m in (2, 3):
        for alpha in (0.3, 0.75):
            reps = [reconstruct_experiment(m, alpha, N) for N in (32, 64, 128)]
            cells = "  ".join(f"{r.rms_error:.1e}/{r.cond:.1e}" for r in reps)
            print(f"  spline m = {m}, alpha = {alpha:<4}: {cells}")
    ts, _, _ = analyze([("-1/2", "1/2")])
    for alpha in (0.3, 0.75):
        reps = [reconstruct_experiment(ts, alpha, N) for N in (32, 64, 128)]
        cells = "  ".join(f"{r.rms_error:.1e}/{r.cond:.1e}" for r in reps)
        print(f"  sinc,         alpha = {alpha:<4}: {cells}")


if __name__ == "__main__":
    sections()
    reconstruction()
