"""Extreme singular values of the weighted strip operator along two rays.

Along arg = pi/2 both curves stay flat as |lambda| grows.  Along arg = 0 the
smallest singular value collapses, the numerical signature of a missing
uniform estimate.  The scan is also written as CSV and SVG next to this file.
"""
import math
from pathlib import Path

from paraell.problems import helmholtz_dirichlet
from paraell.rofunc import Power, PowerLog
from paraell.strip import StripGeometry, estimate_scan, write_scan_csv, write_scan_svg
from paraell.symbols import Angle

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)
g = StripGeometry(16, 48)
for phi in (Power(0), PowerLog(0, 1)):
    for arg in (math.pi / 2, 0.0):
        r = estimate_scan(helmholtz_dirichlet(), phi, Angle.ray(arg), [4, 8, 16, 32, 64], g)
        print(phi.label, f"arg={arg:.3f}")
        for lam, lo, hi in r.rows:
            print(f"  |lambda|={lam:5.0f} sigma_min={lo:.4g} sigma_max={hi:.4g}")
        if arg and isinstance(phi, Power):
            write_scan_csv(r, out / "plateau.csv")
            write_scan_svg(r, out / "plateau.svg")
