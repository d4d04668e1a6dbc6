"""Interpolating between two Sobolev orders reproduces the Hormander norm exactly.

We draw a random spectrum on a 32x32 torus and compare the interpolation
norm built from the generating operator with the direct weighted norm.
"""
import numpy as np

from paraell.interpolation import param_scale_identity, sobolev_scale_identity
from paraell.rofunc import Oscillating, PowerLog
from paraell.spaces import Spectrum, TorusGrid

rng = np.random.default_rng(0)
grid = TorusGrid.square(32)
u = Spectrum.random(grid, rng)

for alpha, s0, s1 in ((PowerLog(2, 1), 1, 3), (Oscillating(2, 0.3), 1, 3)):
    r = sobolev_scale_identity(u, alpha, s0, s1)
    print(f"{alpha.label}: interp={r['lhs']:.12g} direct={r['rhs']:.12g} relerr={r['relerr']:.1e}")
    for p in (1, 100):
        r = param_scale_identity(u, alpha, s0, s1, p)
        print(f"   with parameter p={p}: relerr={r['relerr']:.1e}")
