"""Which shifts turn integer samples of a transversal generator into a complete interpolation set?

For each bundled set we print the admissible shifts as exact intervals, then
walk a few shifts through the three independent index computations and the
symbol curve's distance from the origin.

    python3 demos/admissible_shifts.py
"""

from fractions import Fraction
from pathlib import Path

from shiftcis.exactset import admissible_region, congruence_decompose, format_rational, index_formula, transversal_from_json
from shiftcis.symbolcurve import build_symbol_curve, curve_index, curve_min_modulus, numeric_winding

DATA = Path(__file__).parent / "data"


def show_region(name):
    text = (DATA / f"{name}.json").read_text()
    cd = congruence_decompose(transversal_from_json(text))
    region = admissible_region(cd)
    pieces = " u ".join(
        f"({format_rational(iv.lo)}, {format_rational(iv.hi)})" for iv in region.admissible_intervals()
    )
    print(f"{name}: L = {cd.L}, nu = {cd.nu}")
    print(f"  cell values A = {list(region.A)}")
    print(f"  admissible shifts: {pieces}")
    return cd


def probe(cd, alpha):
    alpha = Fraction(alpha)
    if cd.in_G(alpha):
        curve = build_symbol_curve(cd, alpha)
        print(f"  alpha = {alpha}: the symbol passes through 0 (distance {curve_min_modulus(curve)})")
        return
    curve = build_symbol_curve(cd, alpha)
    triple = index_formula(cd, alpha), curve_index(curve), numeric_winding(curve)
    print(
        f"  alpha = {str(alpha):>6}: floor sum {triple[0]:+d}, piece sum {triple[1]:+d}, "
        f"sampled winding {triple[2]:+d}, distance to 0 {curve_min_modulus(curve):.4f}"
    )


if __name__ == "__main__":
    for name in ("unit_interval", "littlewood_paley", "journe", "nonsymmetric"):
        show_region(name)
        print()

    # Around 1/4 the Journe index jumps from +1 to -1: the symbol sweeps through 0 there.
    cd = congruence_decompose(transversal_from_json((DATA / "journe.json").read_text()))
    print("journe, shifts near 1/4:")
    for alpha in ("3/16", "1/4", "5/16", "1/16"):
        probe(cd, alpha)
