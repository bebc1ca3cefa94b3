"""Spline samples on a + N0 joined with alpha + a + N^-: when are they complete?

The verdict comes from counting zeros and poles of the symbol inside the unit
disc, and a sampled winding number checks the count. The table should show
CIS exactly for |alpha| < 1/2 whatever the spline order.

    python3 demos/spline_verdicts.py
"""

import numpy as np

from shiftcis.operatorlab import SplineConfig, cis_classify_spline, half_shift, theta_coeffs, theta_values
from shiftcis.splinekernel import gm_poly, zero_split

ALPHAS = (-1.25, -0.75, -0.4, 0.0, 0.3, 0.49, 0.5, 0.6, 1.2)


def verdict_table():
    print("alpha  " + "  ".join(f"m={m}" for m in range(2, 9)))
    for alpha in ALPHAS:
        row = []
        for m in range(2, 9):
            v = cis_classify_spline(SplineConfig(m, alpha))
            row.append("CIS" if v.cis else ("0" if v.reason == "SymbolVanishes" else f"{v.index:+d}"))
        print(f"{alpha:+.2f}  " + "  ".join(f"{c:>3}" for c in row))
    print("(CIS = complete; 0 = symbol vanishes; +k/-k = nonzero index)")


def zero_counts():
    print("\nzeros of G_6(., beta) inside / outside the unit circle:")
    for beta in ("1/10", "3/10", "9/20", "1/2", "11/20", "7/10", "9/10"):
        s = zero_split(gm_poly(6, beta))
        print(f"  beta = {beta:>5}: {s.inside} inside, {s.on_circle} on, {s.outside} outside")


def interpolant():
    print("\nfundamental interpolant on the lattice a + n, m = 4:")
    table = theta_coeffs(4)
    n = np.arange(-4, 5)
    vals = theta_values(table, float(half_shift(4)) + n)
    print("  " + " ".join(f"{v:+.1e}" for v in vals))
    print(f"  coefficients decay like {table.ratio:.3f}^|v|")


if __name__ == "__main__":
    verdict_table()
    zero_counts()
    interpolant()
