"""Smoothness parameters: how the index estimators see three families.

A pure power has a single exponent.  A logarithmic factor and a bounded
oscillation both spread the exponent ratios into a band; the sub/super
multiplicative ("fekete") reading tightens the oscillating case back to s.
"""
from paraell.rofunc import IndexConfig, Oscillating, Power, PowerLog, matuszewska, ro_bound, subadd_constant

for phi in (Power(1.5), PowerLog(2, 1), Oscillating(1, 0.3)):
    ext = matuszewska(phi)
    fek = matuszewska(phi, IndexConfig(method="fekete"))
    print(f"{phi.label:40s} extremes=({ext.sigma0:.4f}, {ext.sigma1:.4f}) fekete=({fek.sigma0:.4f}, {fek.sigma1:.4f})")

print("ro_bound(Oscillating(0, 0.3), a=e) =", round(ro_bound(Oscillating(0, 0.3), 2.718281828), 4))
for s in (0.5, 1.0, 2.0):
    print(f"subadditivity constant of t^{s}:", round(subadd_constant(Power(s)), 5))
