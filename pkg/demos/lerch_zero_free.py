"""The doubly infinite Lerch sum H(lambda, x, m) stays away from zero.

We compare the three evaluation routes at a few points, then scan |H| over a
grid of (lambda, x) and report its smallest value. At lambda = 1/2 the sum
for m = 2 does vanish, at x = 1/2, which the last line shows.

    python3 demos/lerch_zero_free.py [heatmap.csv]
"""

import sys

from shiftcis.lerch import LerchQuery, h_closed, h_from_gm, h_series, heatmap_csv, line_scan, zero_free_scan


def routes():
    print("three routes at sample points:")
    for lam, x, m in ((0.3, 0.45, 4), (0.1, -1.7, 2), (0.85, 2.2, 6)):
        q = LerchQuery(lam, x, m)
        s, c, g = h_series(q), h_closed(q), h_from_gm(q)
        print(f"  H({lam}, {x}, {m}) = {g:.10f}   |series - closed| = {abs(s - c):.1e}, tail <= {q.tail_bound:.1e}")


def scans():
    print("\nsmallest |H| on a 64 x 64 grid (lambda = 1/2 excluded):")
    for m in range(2, 7):
        rep = zero_free_scan(m)
        print(f"  m = {m}: {rep.min_abs:.4f} at lambda = {rep.argmin_lambda:.4f}, x = {rep.argmin_x:.4f}")
    xs, mag = line_scan(2, 0.5, 255)
    i = mag.argmin()
    print(f"\nlambda = 1/2, m = 2: |H| = {mag[i]:.1e} at x = {xs[i]:.4f}")


if __name__ == "__main__":
    routes()
    scans()
    if len(sys.argv) > 1:
        with open(sys.argv[1], "w", newline="\n") as fh:
            fh.write(heatmap_csv(3))
        print(f"heatmap for m = 3 written to {sys.argv[1]}")
