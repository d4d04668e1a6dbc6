"""Constructing a resonance and watching kernel and cokernel appear together."""
import math

from paraell.problems import helmholtz_dirichlet
from paraell.strip import StripGeometry, find_resonance, fredholm_probe

p = helmholtz_dirichlet()
g = StripGeometry(8, 32)
lam = find_resonance(p, 1, g, math.sqrt(1 + math.pi**2))
print("discrete resonance for modes k=+-1:", lam, "continuous value:", math.sqrt(1 + math.pi**2))
for probe in (2j, lam, math.pi):
    d = fredholm_probe(p, probe, g)
    print(f"lambda={probe}: dimKer={d['dimKer']} dimCoker={d['dimCoker']} modes={d['modes']}")
