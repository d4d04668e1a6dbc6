"""Helmholtz with a Robin condition: elliptic on the imaginary axis, not on the real one.

On the positive real axis the Lopatinskii determinant vanishes where the
plus-root of the boundary polynomial equals i*lambda, so the verdict flips.
"""
import math

from paraell.problems import helmholtz_dirichlet, helmholtz_robin
from paraell.symbols import Angle, check_parameter_ellipticity, lopatinskii_matrix

for name, p in (("robin", helmholtz_robin()), ("dirichlet", helmholtz_dirichlet())):
    for label, K in (("arg pi/2", Angle.ray(math.pi / 2)), ("arg 0", Angle.ray(0.0))):
        rep = check_parameter_ellipticity(p, K)
        print(f"{name:9s} {label:8s} verdict={rep.verdict} |A0|min={rep.min_symbol_modulus:.3g} "
              f"sigma_min={rep.min_lopatinskii_sigma:.3g}")

# the degenerate point itself: xi_t = sqrt(2), lambda = 1
res = lopatinskii_matrix(helmholtz_robin(), (0.0, 0.0), (math.sqrt(2), 0.0), (0.0, 1.0), 1.0, "bottom")
print("Robin at xi_t=sqrt2, lambda=1: tau+ =", res.split.tau_plus, "sigma =", f"{res.sigma_min:.1e}")
