"""Constant-coefficient problems on the periodic strip ``T^1 x (0, 1)``.

Each tangential Fourier mode ``exp(-i k x1)`` decouples the problem into an
ODE in ``x2``, on which ``D1`` acts as multiplication by ``k``.  The normal
direction is discretised by rectangular spectral collocation:

* unknowns are values at ``N + 2q`` Gauss-Legendre nodes on ``(0, 1)``,
  i.e. a polynomial of degree ``N + 2q - 1``;
* the interior equation is imposed at the ``N`` nodes of the ``N``-point
  Gauss-Legendre rule, and each boundary operator at ``x2 = 0`` and ``x2 = 1``.

This gives square ``(N + 2q) x (N + 2q)`` mode systems.  Polynomials are
handled in the ``L2(0, 1)``-orthonormal Legendre basis
``p_j(x) = sqrt(2j + 1) P_j(2x - 1)``; nodal values and coefficients are
related exactly by Gauss quadrature.

The weighted operator measures the unknown in the parameter-dependent norm
built from ``alpha = phi rho^(2q)``, the interior right-hand side with
``alpha = phi`` and each boundary datum with ``phi rho^(2q - m_j - 1/2)`` on
the boundary circle, where ``rho(t) = t``.  In the normal direction the role
of ``<xi>`` is played by the spectrum of a high-order Sobolev Gram matrix
(:func:`normal_spectrum_basis`).
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
from numpy.polynomial import legendre as L
from scipy import linalg

from .rofunc import Power, ROFunction, matuszewska
from .symbols import Angle, BVProblem, smoothness_threshold

__all__ = [
    "StripGeometry",
    "ModeOperator",
    "NormWeighting",
    "ScanResult",
    "SingularModeError",
    "mode_frequencies",
    "nodes",
    "assemble_mode",
    "normal_spectrum_basis",
    "norm_weighting",
    "weighted_operator",
    "weighted_mode",
    "estimate_scan",
    "fredholm_probe",
    "find_resonance",
    "solve",
    "sample_modes",
    "modes_to_physical",
    "dense_physical_operator",
    "write_scan_csv",
    "write_scan_json",
    "write_scan_svg",
]

RANK_TOL = 1e-8


class SingularModeError(np.linalg.LinAlgError):
    pass


@dataclass(frozen=True)
class StripGeometry:
    """Tangential modes ``k = -Kmax+1 .. Kmax`` and ``N`` interior collocation nodes."""

    Kmax: int
    N: int

    def __post_init__(self):
        if self.Kmax < 1:
            raise ValueError("Kmax must be positive")
        if self.N < 4:
            raise ValueError("N must be at least 4")

    def check(self, q: int, strict: bool = True):
        if strict and (self.N < 4 * q + 4 or self.Kmax < 4):
            raise ValueError(f"need N >= {4 * q + 4} and Kmax >= 4 for order 2q = {2 * q}")

    @property
    def n_modes(self) -> int:
        return 2 * self.Kmax

    def n_unknowns(self, q: int) -> int:
        return self.N + 2 * q

    @property
    def label(self) -> str:
        return f"{self.Kmax}x{self.N}"


def mode_frequencies(Kmax: int) -> np.ndarray:
    """Frequencies in FFT storage order, index ``Kmax`` holding ``+Kmax``."""
    M = 2 * Kmax
    k = np.fft.fftfreq(M, 1.0 / M).astype(int)
    k[Kmax] = Kmax
    return k


# ---------------------------------------------------------------------------
# Legendre machinery on (0, 1)


@lru_cache(maxsize=None)
def nodes(n: int):
    """Gauss-Legendre nodes and weights on ``(0, 1)`` (weights sum to 1)."""
    y, w = L.leggauss(n)
    return (y + 1) / 2, w / 2


def _vander(x, n):
    """``V[i, j] = p_j(x_i)`` for the orthonormal basis up to degree ``n - 1``."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return L.legvander(2 * x - 1, n - 1) * np.sqrt(2 * np.arange(n) + 1)


@lru_cache(maxsize=None)
def _diff(n):
    """Coefficient-space matrix of ``d/dx`` on polynomials of degree < n."""
    scale = np.sqrt(2 * np.arange(n) + 1)
    D = np.zeros((n, n))
    for j in range(1, n):
        c = np.zeros(n)
        c[j] = scale[j]
        d = L.legder(c) * 2
        D[: d.size, j] = d / scale[: d.size]
    return D


@lru_cache(maxsize=None)
def _nodal(n):
    """Matrices ``(V, S)`` with ``u = V a`` and ``a = S u`` at ``n`` Gauss nodes."""
    x, w = nodes(n)
    V = _vander(x, n)
    return V, V.T * w


# ---------------------------------------------------------------------------
# assembly


def _require_constant(p: BVProblem):
    if not p.constant:
        raise ValueError("strip solvers need constant coefficients")
    if p.dim != 2:
        raise ValueError("strip problems are two-dimensional")
    names = {c.name for c in p.boundary}
    if names != {"bottom", "top"}:
        raise ValueError("strip problems need 'bottom' and 'top' boundary components")


def _expr_coeff_matrices(expr, k, n):
    """Coefficient-space matrices ``C_d`` with ``expr(lam) = sum_d lam^d C_d`` on mode ``k``."""
    D = _diff(n).astype(complex)
    out = {}
    for t in expr.terms:
        mu1, mu2 = t.mu.components
        d = expr.order - t.r
        mat = t.coeff * float(k) ** mu1 * np.linalg.matrix_power(1j * D, mu2)
        out[d] = out.get(d, 0) + mat
    return out


@dataclass(frozen=True)
class ModeOperator:
    """Mode-``k`` system as a polynomial ``M(lam) = sum_d lam^d coeffs[d]``.

    Rows: ``N`` interior collocation rows, then the ``q`` bottom operators,
    then the ``q`` top operators.  Columns: nodal values at the
    ``N + 2q`` Gauss-Legendre nodes.
    """

    k: int
    lam: complex
    coeffs: tuple
    n_interior: int
    q: int

    @property
    def M(self) -> np.ndarray:
        return self.at(self.lam)

    def at(self, lam) -> np.ndarray:
        out = np.zeros_like(self.coeffs[0])
        for d in range(len(self.coeffs) - 1, -1, -1):
            out = out * lam + self.coeffs[d]
        return out

    @property
    def shape(self):
        return self.coeffs[0].shape


def assemble_mode(p: BVProblem, lam, k: int, geometry: StripGeometry) -> ModeOperator:
    _require_constant(p)
    q, N = p.q, geometry.N
    n = geometry.n_unknowns(q)
    _, S = _nodal(n)
    E_int = _vander(nodes(N)[0], n)
    rows_bd = {"bottom": _vander([0.0], n), "top": _vander([1.0], n)}
    degree = 2 * q
    coeffs = [np.zeros((n, n), dtype=complex) for _ in range(degree + 1)]
    for d, C in _expr_coeff_matrices(p.interior, k, n).items():
        coeffs[d][:N] += E_int @ C @ S
    row = N
    for name in ("bottom", "top"):
        comp = p.component(name)
        for op in comp.ops:
            for d, C in _expr_coeff_matrices(op.expr, k, n).items():
                coeffs[d][row] += (rows_bd[name] @ C @ S)[0]
            row += 1
    while len(coeffs) > 1 and not np.any(coeffs[-1]):
        coeffs.pop()
    return ModeOperator(int(k), complex(lam), tuple(coeffs), N, q)


# ---------------------------------------------------------------------------
# norms


def _default_order(q, phi):
    if phi is None:
        return 2 * q + 1
    return 2 * q + max(1, math.ceil(matuszewska(phi).sigma1 - 1e-9))


@lru_cache(maxsize=None)
def normal_spectrum_basis(n: int, s: int = 3):
    """Normal-direction frequency proxy on polynomials of degree ``< n``.

    Solves the generalised eigenproblem of the ``H^s(0, 1)`` Gram form
    ``sum_{j<=s} |d^j u|^2`` against the ``L2`` form, via the SVD of the
    stacked derivative matrices.  Eigenvalues ``nu`` are mapped to
    ``mu = nu^(1/s) - 1`` so that ``sqrt(1 + mu)`` behaves like ``<xi>``;
    ``mu[0] = 0`` belongs to the constants.  Returns ``(mu, U)`` with ``U``
    orthonormal in Legendre coefficients (hence in ``L2``).
    """
    if n < 4:
        raise ValueError("need n >= 4")
    if s < 1:
        raise ValueError("need s >= 1")
    D = _diff(n)
    blocks = [np.eye(n)]
    for _ in range(s):
        blocks.append(D @ blocks[-1])
    stacked = np.vstack(blocks)
    _, sv, Vh = np.linalg.svd(stacked, full_matrices=False)
    order = np.argsort(sv, kind="stable")
    nu = sv[order] ** 2
    U = Vh[order].T
    mu = np.maximum(nu, 1.0) ** (1.0 / s) - 1.0
    mu[0] = 0.0
    # constant mode exactly
    U[:, 0] = 0.0
    U[0, 0] = 1.0
    U, _ = np.linalg.qr(U)
    U = U * np.sign(np.where(np.diag(U) == 0, 1, np.diag(U)))
    mu = np.maximum.accumulate(mu)
    return mu, U


@dataclass(frozen=True)
class NormWeighting:
    lhs: np.ndarray
    rhs_interior: np.ndarray
    rhs_boundary: np.ndarray

    def __post_init__(self):
        for w in (self.lhs, self.rhs_interior, self.rhs_boundary):
            if not np.all(w > 0):
                raise ValueError("weights must be positive")


def _pweights(alpha: ROFunction, t, p):
    return np.sqrt(alpha(np.asarray(t, float)) ** 2 + alpha(p) ** 2)


def norm_weighting(p: BVProblem, phi: ROFunction, lam_abs: float, k: int, geometry: StripGeometry,
                   s: Optional[int] = None) -> NormWeighting:
    q, N = p.q, geometry.N
    s = _default_order(q, phi) if s is None else s
    n = geometry.n_unknowns(q)
    bk = math.sqrt(1.0 + k * k)
    mu_u, _ = normal_spectrum_basis(n, s)
    mu_f, _ = normal_spectrum_basis(N, s)
    alpha = phi.times_power(2 * q)
    lhs = _pweights(alpha, np.sqrt(bk**2 + mu_u), lam_abs)
    rhs = _pweights(phi, np.sqrt(bk**2 + mu_f), lam_abs)
    bd = []
    for name in ("bottom", "top"):
        for op in p.component(name).ops:
            beta = phi.times_power(2 * q - op.m - 0.5)
            bd.append(float(_pweights(beta, bk, lam_abs)))
    return NormWeighting(lhs, rhs, np.array(bd))


def _check_admissible(p, phi):
    l = smoothness_threshold(p)
    if matuszewska(phi).sigma0 < l - 1e-9:
        raise ValueError(f"smoothness parameter is not admissible: lower index below {l}")


def weighted_mode(p: BVProblem, lam, phi: ROFunction, k: int, geometry: StripGeometry,
                  s: Optional[int] = None, mode: Optional[ModeOperator] = None) -> np.ndarray:
    """``W_rhs^(1/2) T_k(lam) W_lhs^(-1/2)`` in norm-orthonormal coordinates."""
    q, N = p.q, geometry.N
    s = _default_order(q, phi) if s is None else s
    n = geometry.n_unknowns(q)
    lam_abs = max(1.0, abs(lam))
    w = norm_weighting(p, phi, lam_abs, k, geometry, s)
    mode = mode if mode is not None else assemble_mode(p, lam, k, geometry)
    T = mode.at(lam)
    _, Uu = normal_spectrum_basis(n, s)
    _, Uf = normal_spectrum_basis(N, s)
    Vu, _ = _nodal(n)
    _, Sf = _nodal(N)
    right = (Vu @ Uu) / w.lhs
    out = np.empty_like(T)
    out[:N] = (w.rhs_interior[:, None] * (Uf.T @ Sf)) @ (T[:N] @ right)
    out[N:] = w.rhs_boundary[:, None] * (T[N:] @ right)
    return out


def _threads():
    env = os.environ.get("PARAELL_THREADS")
    if env:
        return max(1, int(env))
    return max(1, min(8, os.cpu_count() or 1))


def _map(fn, items, threads=None):
    threads = _threads() if threads is None else threads
    if threads == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(threads) as ex:
        return list(ex.map(fn, items))


def weighted_operator(p: BVProblem, lam, phi: ROFunction, geometry: StripGeometry,
                      s: Optional[int] = None, threads=None) -> dict:
    """Per-mode weighted matrices keyed by ``k`` (the block-diagonal family)."""
    _require_constant(p)
    _check_admissible(p, phi)
    if abs(lam) < 1:
        raise ValueError("|lambda| must be at least 1")
    ks = mode_frequencies(geometry.Kmax)
    mats = _map(lambda k: weighted_mode(p, lam, phi, int(k), geometry, s), ks, threads)
    return {int(k): m for k, m in zip(ks, mats)}


# ---------------------------------------------------------------------------
# scans


@dataclass
class ScanResult:
    rows: list
    ray: Angle
    problem: str
    grid: str
    phi_id: str
    kmax: int = 0
    n_normal: int = 0

    def sigma_min(self):
        return np.array([r[1] for r in self.rows])

    def sigma_max(self):
        return np.array([r[2] for r in self.rows])

    def lambdas(self):
        return np.array([r[0] for r in self.rows])

    def to_dict(self):
        return {
            "problem": self.problem,
            "grid": self.grid,
            "phi": self.phi_id,
            "ray": self.ray.to_dict(),
            "kmax": self.kmax,
            "nNormal": self.n_normal,
            "rows": [{"lambdaAbs": a, "sigmaMin": b, "sigmaMax": c} for a, b, c in self.rows],
        }


def _mode_extremes(args):
    p, lam, phi, k, geometry, s = args
    sv = np.linalg.svd(weighted_mode(p, lam, phi, k, geometry, s), compute_uv=False)
    return sv[-1], sv[0]


def estimate_scan(p: BVProblem, phi: ROFunction, ray: Angle, lambdas: Sequence[float],
                  geometry: StripGeometry, s: Optional[int] = None, threads=None) -> ScanResult:
    """Extreme singular values of the weighted operator along a ray."""
    if not ray.is_ray:
        raise ValueError("estimate_scan needs a ray")
    lambdas = [float(v) for v in lambdas]
    if any(v < 1 for v in lambdas) or lambdas != sorted(lambdas):
        raise ValueError("|lambda| values must be ascending and >= 1")
    _require_constant(p)
    _check_admissible(p, phi)
    s = _default_order(p.q, phi) if s is None else s
    ks = [int(k) for k in mode_frequencies(geometry.Kmax)]
    rows = []
    for r in lambdas:
        lam = r * complex(math.cos(ray.arg_lo), math.sin(ray.arg_lo))
        try:
            ext = _map(_mode_extremes, [(p, lam, phi, k, geometry, s) for k in ks], threads)
        except Exception as exc:  # noqa: BLE001 - re-raised with context
            raise RuntimeError(f"scan failed at |lambda| = {r}: {exc}") from exc
        rows.append((r, float(min(e[0] for e in ext)), float(max(e[1] for e in ext))))
    label = phi.label if hasattr(phi, "to_dict") else repr(phi)
    return ScanResult(rows, ray, p.name, geometry.label, label, geometry.Kmax, geometry.N)


# ---------------------------------------------------------------------------
# Fredholm probe and solves


def fredholm_probe(p: BVProblem, lam, geometry: StripGeometry, phi: Optional[ROFunction] = None,
                   tol: float = RANK_TOL, threads=None) -> dict:
    """Kernel and cokernel dimensions of the discrete operator at ``lam``.

    Ranks are counted per mode on the weighted matrix (``phi`` defaults to
    the constant parameter), with singular values below ``tol * sigma_max``
    treated as zero.
    """
    _require_constant(p)
    phi = Power(0.0) if phi is None else phi
    ks = [int(k) for k in mode_frequencies(geometry.Kmax)]

    def one(k):
        M = weighted_mode(p, lam, phi, k, geometry)
        sv = np.linalg.svd(M, compute_uv=False)
        r = int(np.sum(sv > tol * sv[0]))
        return k, M.shape[1] - r, M.shape[0] - r

    res = _map(one, ks, threads)
    ker = sum(r[1] for r in res)
    coker = sum(r[2] for r in res)
    return {"dimKer": ker, "dimCoker": coker, "modes": {k: (a, b) for k, a, b in res if a or b}}


def find_resonance(p: BVProblem, k: int, geometry: StripGeometry, target: complex) -> complex:
    """Discrete eigenvalue ``lam`` of the mode-``k`` pencil closest to ``target``.

    The matrix polynomial is linearised to a companion pencil and solved with
    a generalised eigensolver.
    """
    mode = assemble_mode(p, 0.0, k, geometry)
    C = mode.coeffs
    d = len(C) - 1
    n = C[0].shape[0]
    if d == 0:
        raise ValueError("operator does not depend on lambda")
    A = np.zeros((d * n, d * n), dtype=complex)
    B = np.eye(d * n, dtype=complex)
    A[: (d - 1) * n, n:] = np.eye((d - 1) * n)
    for j in range(d):
        A[(d - 1) * n :, j * n : (j + 1) * n] = -C[j]
    B[(d - 1) * n :, (d - 1) * n :] = C[d]
    ev = linalg.eigvals(A, B)
    ev = ev[np.isfinite(ev)]
    return complex(ev[np.argmin(np.abs(ev - target))])


def sample_modes(func, geometry: StripGeometry, x2) -> np.ndarray:
    """Mode coefficients of ``func(x1, x2)`` at the given ``x2`` values.

    Row ``i`` of the result belongs to frequency ``mode_frequencies(Kmax)[i]``
    in the ``exp(-i k x1)`` convention.
    """
    M = geometry.n_modes
    x1 = 2 * np.pi * np.arange(M) / M
    X1, X2 = np.meshgrid(x1, np.atleast_1d(x2), indexing="ij")
    vals = np.asarray(func(X1, X2), dtype=complex) * np.ones(X1.shape)
    return np.fft.ifft(vals, axis=0)


def modes_to_physical(modes: np.ndarray) -> np.ndarray:
    return np.fft.fft(modes, axis=0)


@dataclass
class Solution:
    modes: np.ndarray
    residual: float
    x2: np.ndarray = field(default=None)

    def evaluate(self, x2) -> np.ndarray:
        """Mode coefficients at arbitrary ``x2`` (interpolating each mode polynomial)."""
        n = self.modes.shape[1]
        _, S = _nodal(n)
        return (self.modes @ S.T) @ _vander(x2, n).T


def solve(p: BVProblem, lam, f_modes: np.ndarray, g_modes: np.ndarray, geometry: StripGeometry,
          threads=None) -> Solution:
    """Solve mode by mode.

    ``f_modes`` has shape ``(2 Kmax, N)`` (values at the interior nodes),
    ``g_modes`` shape ``(2 Kmax, 2q)`` ordered bottom operators then top.
    The result holds nodal values at the ``N + 2q`` unknown nodes.
    """
    _require_constant(p)
    q, N = p.q, geometry.N
    ks = [int(k) for k in mode_frequencies(geometry.Kmax)]
    f_modes = np.asarray(f_modes, dtype=complex)
    g_modes = np.asarray(g_modes, dtype=complex)
    if f_modes.shape != (len(ks), N) or g_modes.shape != (len(ks), 2 * q):
        raise ValueError("right-hand side shapes do not match the geometry")

    def one(i):
        mode = assemble_mode(p, lam, ks[i], geometry)
        T = mode.at(lam)
        rhs = np.concatenate([f_modes[i], g_modes[i]])
        # the raw matrix is badly scaled; judge singularity in the weighted norms
        sv = np.linalg.svd(weighted_mode(p, lam, Power(0.0), ks[i], geometry, mode=mode), compute_uv=False)
        if sv[-1] <= RANK_TOL * sv[0]:
            raise SingularModeError(f"mode k = {ks[i]} is singular at lambda = {lam}")
        u = np.linalg.solve(T, rhs)
        return u, np.linalg.norm(T @ u - rhs), np.linalg.norm(rhs)

    res = _map(one, range(len(ks)), threads)
    U = np.array([r[0] for r in res])
    num = math.sqrt(sum(r[1] ** 2 for r in res))
    den = math.sqrt(sum(r[2] ** 2 for r in res))
    return Solution(U, num / den if den else num, nodes(geometry.n_unknowns(q))[0])


def dense_physical_operator(p: BVProblem, lam, geometry: StripGeometry) -> np.ndarray:
    """Unweighted operator on physical grid values, assembled with a Fourier
    differentiation matrix in ``x1``.  Rows and columns are ordered
    ``(x1 index, normal index)``.  Intended for small sizes only."""
    _require_constant(p)
    q, N = p.q, geometry.N
    n = geometry.n_unknowns(q)
    M = geometry.n_modes
    k = mode_frequencies(geometry.Kmax)
    F = np.fft.fft(np.eye(M), axis=0) / math.sqrt(M)  # modes -> values
    D1 = F @ np.diag(k.astype(complex)) @ F.conj().T
    Dn = _diff(n).astype(complex)
    _, S = _nodal(n)
    E_int = _vander(nodes(N)[0], n)
    rows_bd = {"bottom": _vander([0.0], n), "top": _vander([1.0], n)}
    rows = N + 2 * q
    T = np.zeros((M * rows, M * n), dtype=complex)

    def kron_block(expr, left):
        out = np.zeros((M * left.shape[0], M * n), dtype=complex)
        for t in expr.terms:
            mu1, mu2 = t.mu.components
            normal = left @ np.linalg.matrix_power(1j * Dn, mu2) @ S
            out += t.coeff * lam ** (expr.order - t.r) * np.kron(np.linalg.matrix_power(D1, mu1), normal)
        return out

    blocks = [kron_block(p.interior, E_int)]
    for name in ("bottom", "top"):
        for op in p.component(name).ops:
            blocks.append(kron_block(op.expr, rows_bd[name]))
    # interleave so each x1 index owns a contiguous row block
    sizes = [b.shape[0] // M for b in blocks]
    for i in range(M):
        r0 = i * rows
        for b, sz in zip(blocks, sizes):
            T[r0 : r0 + sz] = b[i * sz : (i + 1) * sz]
            r0 += sz
    return T


# ---------------------------------------------------------------------------
# writers


def _fmt(x: float) -> str:
    return repr(float(x))


def write_scan_csv(result: ScanResult, path) -> None:
    lines = ["lambda_abs,arg,sigma_min,sigma_max,kmax,n_normal,phi_id"]
    phi = '"' + result.phi_id.replace('"', '""') + '"'
    for lam, smin, smax in result.rows:
        lines.append(
            ",".join([_fmt(lam), _fmt(result.ray.arg_lo), _fmt(smin), _fmt(smax),
                      str(result.kmax), str(result.n_normal), phi])
        )
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_scan_json(result: ScanResult, path) -> None:
    with open(path, "w") as fh:
        json.dump(result.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_scan_svg(result: ScanResult, path, width: int = 480, height: int = 320) -> None:
    """Log-log polylines of sigma_min and sigma_max against |lambda|."""
    lam = np.log10(result.lambdas())
    smin = np.log10(result.sigma_min())
    smax = np.log10(result.sigma_max())
    pad = 40
    x0, x1 = lam.min(), lam.max()
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    y0 = math.floor(min(smin.min(), smax.min()))
    y1 = math.ceil(max(smin.max(), smax.max()))
    if y1 == y0:
        y1 = y0 + 1

    def xy(a, b):
        return (pad + (a - x0) / (x1 - x0) * (width - 2 * pad),
                height - pad - (b - y0) / (y1 - y0) * (height - 2 * pad))

    def poly(ys, color):
        pts = " ".join("%.2f,%.2f" % xy(a, b) for a, b in zip(lam, ys))
        return f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>'

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect x="{pad}" y="{pad}" width="{width - 2 * pad}" height="{height - 2 * pad}" '
        'fill="none" stroke="black"/>',
        poly(smin, "#1f77b4"),
        poly(smax, "#d62728"),
        f'<text x="{pad}" y="{height - 8}" font-size="11">log10 |lambda| [{x0:.2f}, {x1:.2f}]</text>',
        f'<text x="4" y="{pad - 8}" font-size="11">log10 sigma [{y0}, {y1}]; blue min, red max</text>',
        "</svg>",
    ]
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")
