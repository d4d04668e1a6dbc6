"""Parameter-dependent boundary-value problems and their ellipticity check.

A problem of order ``2q`` is

    A(lam) u = sum_{r=0}^{2q} lam^(2q-r) A_r u = f   in the domain,
    B_j(lam) u = sum_{r=0}^{m_j} lam^(m_j-r) B_{j,r} u = g_j   on each boundary component,

with ``A_r = sum_{|mu|<=r} a_{r,mu}(x) D^mu`` and ``D_k = i d/dx_k``.  The
principal symbols keep only the terms with ``|mu| = r``.  Condition i asks the
interior symbol to stay away from zero for ``lam`` in a closed angle; Condition
ii asks the boundary symbols to be independent modulo the factor built from
the ``tau``-roots with positive imaginary part.  Both are checked on finite
samples of the unit sphere in ``(xi, lam)``, which suffices by homogeneity.

Boundary components are the two edges of the periodic strip
``T^1 x (0, 1)``: ``bottom`` (``x2 = 0``, inner normal ``+e2``) and ``top``
(``x2 = 1``, inner normal ``-e2``).  For one-dimensional problems they are the
end points of ``(0, 1)`` with normals ``+1`` and ``-1``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np
from numpy.polynomial import polynomial as P

from .rofunc import ROFunction, matuszewska

__all__ = [
    "MultiIndex",
    "Term",
    "DiffExpression",
    "BoundaryOperator",
    "BoundaryComponent",
    "BVProblem",
    "Angle",
    "RootSplit",
    "LopatinskiiResult",
    "EllipticityConfig",
    "EllipticityReport",
    "SymbolError",
    "DegenerateSplitError",
    "symbol_A0",
    "symbol_B0",
    "tau_polynomial_A",
    "tau_polynomial_B",
    "root_split",
    "lopatinskii_matrix",
    "condition_i_scan",
    "condition_ii_scan",
    "check_parameter_ellipticity",
    "smoothness_threshold",
    "admissible_phi",
    "problem_from_json",
    "problem_to_json",
]

TOL_LEAD = 1e-10
TOL_IMAG = 1e-7
CLUSTER_RADIUS = 1e-6

Coeff = Union[complex, Callable]


class SymbolError(ValueError):
    pass


class DegenerateSplitError(SymbolError):
    """A tau-root lies on (or numerically near) the real axis, or the split is uneven."""


@dataclass(frozen=True)
class MultiIndex:
    components: tuple

    def __post_init__(self):
        comps = tuple(int(c) for c in self.components)
        if len(comps) not in (1, 2) or any(c < 0 for c in comps):
            raise ValueError("multi-index must have 1 or 2 nonnegative components")
        object.__setattr__(self, "components", comps)

    @property
    def order(self) -> int:
        return sum(self.components)

    @property
    def dim(self) -> int:
        return len(self.components)

    def monomial(self, xi) -> complex:
        """``xi^mu``; ``xi`` may carry leading batch axes."""
        xi = np.asarray(xi)
        out = np.ones(xi.shape[:-1], dtype=complex)
        for k, c in enumerate(self.components):
            if c:
                out = out * xi[..., k] ** c
        return out


@dataclass(frozen=True)
class Term:
    r: int
    mu: MultiIndex
    coeff: Coeff

    def __post_init__(self):
        if not isinstance(self.mu, MultiIndex):
            object.__setattr__(self, "mu", MultiIndex(tuple(self.mu)))
        if self.mu.order > self.r:
            raise ValueError(f"|mu| = {self.mu.order} exceeds tier r = {self.r}")
        if not callable(self.coeff):
            object.__setattr__(self, "coeff", complex(self.coeff))

    @property
    def principal(self) -> bool:
        return self.mu.order == self.r

    @property
    def constant(self) -> bool:
        return not callable(self.coeff)

    def value(self, x) -> complex:
        return complex(self.coeff(np.asarray(x, dtype=float))) if callable(self.coeff) else self.coeff


@dataclass(frozen=True)
class DiffExpression:
    """``sum over terms of lam^(order - r) * coeff * D^mu``."""

    order: int
    terms: tuple

    def __post_init__(self):
        terms = tuple(t if isinstance(t, Term) else Term(*t) for t in self.terms)
        for t in terms:
            if not 0 <= t.r <= self.order:
                raise ValueError(f"tier r = {t.r} outside 0..{self.order}")
        dims = {t.mu.dim for t in terms}
        if len(dims) > 1:
            raise ValueError("mixed multi-index dimensions")
        object.__setattr__(self, "terms", terms)

    @property
    def constant(self) -> bool:
        return all(t.constant for t in self.terms)

    def principal_terms(self):
        return [t for t in self.terms if t.principal]

    def symbol(self, x, xi, lam) -> complex:
        """Principal symbol at ``(x, xi, lam)``; ``xi``/``lam`` may be batched."""
        xi = np.asarray(xi, dtype=complex)
        lam = np.asarray(lam, dtype=complex)
        out = np.zeros(np.broadcast_shapes(xi.shape[:-1], lam.shape), dtype=complex)
        for t in self.principal_terms():
            out = out + t.value(x) * lam ** (self.order - t.r) * t.mu.monomial(xi)
        return out

    def tau_polynomial(self, x, xi_t, nu, lam) -> np.ndarray:
        """Ascending coefficients of ``tau -> symbol(x, xi_t + tau nu, lam)``."""
        xi_t = np.asarray(xi_t, dtype=complex)
        nu = np.asarray(nu, dtype=float)
        out = np.zeros(self.order + 1, dtype=complex)
        for t in self.principal_terms():
            poly = np.array([t.value(x) * complex(lam) ** (self.order - t.r)], dtype=complex)
            for k, c in enumerate(t.mu.components):
                if c:
                    poly = P.polymul(poly, P.polypow(np.array([xi_t[k], nu[k]]), c))
            out[: poly.size] += poly
        return out

    def _tau_batch(self, x, xi_t, nu, lam) -> np.ndarray:
        """Batched :meth:`tau_polynomial`: ``xi_t`` is ``(B, n)``, ``lam`` is ``(B,)``."""
        B = lam.shape[0]
        out = np.zeros((B, self.order + 1), dtype=complex)
        for t in self.principal_terms():
            poly = (t.value(x) * lam ** (self.order - t.r))[:, None]
            for k, c in enumerate(t.mu.components):
                for _ in range(c):
                    lin = np.stack([xi_t[:, k], np.full(B, nu[k], dtype=complex)], axis=1)
                    poly = _batch_polymul(poly, lin)
            out[:, : poly.shape[1]] += poly
        return out


def _batch_polymul(a, b):
    out = np.zeros((a.shape[0], a.shape[1] + b.shape[1] - 1), dtype=complex)
    for i in range(a.shape[1]):
        out[:, i : i + b.shape[1]] += a[:, i : i + 1] * b
    return out


@dataclass(frozen=True)
class BoundaryOperator:
    m: int
    expr: DiffExpression

    def __post_init__(self):
        if self.m < 0 or self.expr.order != self.m:
            raise ValueError("boundary operator order must match its expression")


_DEFAULT_NORMALS = {"bottom": (0.0, 1.0), "top": (0.0, -1.0), "left": (1.0,), "right": (-1.0,)}


@dataclass(frozen=True)
class BoundaryComponent:
    name: str
    ops: tuple
    normal: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        nu = self.normal if self.normal is not None else _DEFAULT_NORMALS.get(self.name)
        if nu is None:
            raise ValueError(f"component {self.name!r} needs an explicit normal")
        nu = tuple(float(v) for v in nu)
        if abs(math.hypot(*nu) - 1) > 1e-12:
            raise ValueError("normals must be unit vectors")
        object.__setattr__(self, "normal", nu)

    @property
    def coordinate(self) -> float:
        """Position of the component along the normal axis (0 or 1)."""
        return 0.0 if self.normal[-1] > 0 else 1.0


@dataclass(frozen=True)
class BVProblem:
    q: int
    interior: DiffExpression
    boundary: tuple
    name: str = "problem"

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be positive")
        if self.interior.order != 2 * self.q:
            raise ValueError("interior expression must have order 2q")
        object.__setattr__(self, "boundary", tuple(self.boundary))
        if not self.boundary:
            raise ValueError("at least one boundary component is required")
        for comp in self.boundary:
            if len(comp.ops) != self.q:
                raise ValueError(f"component {comp.name!r} needs exactly q = {self.q} operators")
            if len(comp.normal) != self.dim:
                raise ValueError("normal dimension does not match the problem")

    @property
    def dim(self) -> int:
        ts = self.interior.terms
        return ts[0].mu.dim if ts else 2

    @property
    def constant(self) -> bool:
        return self.interior.constant and all(op.expr.constant for c in self.boundary for op in c.ops)

    def component(self, name: Optional[str] = None) -> BoundaryComponent:
        if name is None:
            return self.boundary[0]
        for c in self.boundary:
            if c.name == name:
                return c
        raise KeyError(name)

    def orders(self, name: Optional[str] = None) -> list:
        return [op.m for op in self.component(name).ops]

    @property
    def all_orders(self) -> list:
        return [op.m for c in self.boundary for op in c.ops]


@dataclass(frozen=True)
class Angle:
    """Closed angle ``{arg lam in [arg_lo, arg_hi]}``; a ray when the ends coincide."""

    arg_lo: float
    arg_hi: float

    def __post_init__(self):
        if not self.arg_lo <= self.arg_hi <= self.arg_lo + 2 * math.pi + 1e-12:
            raise ValueError("need arg_lo <= arg_hi <= arg_lo + 2 pi")

    @classmethod
    def ray(cls, arg: float) -> "Angle":
        return cls(arg, arg)

    @classmethod
    def degrees(cls, lo: float, hi: Optional[float] = None) -> "Angle":
        hi = lo if hi is None else hi
        return cls(math.radians(lo), math.radians(hi))

    @property
    def is_ray(self) -> bool:
        return self.arg_lo == self.arg_hi

    def directions(self, step_deg: float = 1.0) -> np.ndarray:
        """Every whole multiple of ``step_deg`` inside the angle, plus both ends."""
        if self.is_ray:
            return np.array([self.arg_lo])
        step = math.radians(step_deg)
        j0 = math.ceil(self.arg_lo / step - 1e-9)
        j1 = math.floor(self.arg_hi / step + 1e-9)
        inner = np.arange(j0, j1 + 1) * step
        return np.unique(np.concatenate([[self.arg_lo], inner, [self.arg_hi]]))

    def to_dict(self) -> dict:
        return {"argLo": self.arg_lo, "argHi": self.arg_hi}

    @classmethod
    def from_dict(cls, d: dict) -> "Angle":
        return cls(float(d["argLo"]), float(d["argHi"]))


# ---------------------------------------------------------------------------
# symbols


def symbol_A0(p: BVProblem, x, xi, lam) -> complex:
    out = p.interior.symbol(x, xi, lam)
    return complex(out) if np.ndim(out) == 0 else out


def symbol_B0(p: BVProblem, j: int, x, xi, lam, component: Optional[str] = None) -> complex:
    """Principal symbol of the ``j``-th boundary operator (0-based)."""
    out = p.component(component).ops[j].expr.symbol(x, xi, lam)
    return complex(out) if np.ndim(out) == 0 else out


def _check_frame(xi_t, nu):
    xi_t = np.asarray(xi_t, dtype=float)
    nu = np.asarray(nu, dtype=float)
    if abs(np.linalg.norm(nu) - 1) > 1e-12:
        raise ValueError("nu must be a unit vector")
    if abs(xi_t @ nu) > 1e-12 * max(1.0, np.linalg.norm(xi_t)):
        raise ValueError("xi_t must be tangent (orthogonal to nu)")
    return xi_t, nu


def tau_polynomial_A(p: BVProblem, x, xi_t, nu, lam, tol_lead: float = TOL_LEAD) -> np.ndarray:
    """Ascending coefficients of ``A0(x, xi_t + tau nu, lam)``, degree ``2q``."""
    xi_t, nu = _check_frame(xi_t, nu)
    poly = p.interior.tau_polynomial(x, xi_t, nu, lam)
    if abs(poly[-1]) < tol_lead:
        raise SymbolError("leading tau-coefficient vanishes: the normal direction is characteristic")
    return poly


def tau_polynomial_B(p: BVProblem, j: int, x, xi_t, nu, lam, component: Optional[str] = None) -> np.ndarray:
    xi_t, nu = _check_frame(xi_t, nu)
    return p.component(component).ops[j].expr.tau_polynomial(x, xi_t, nu, lam)


def _root_scale(poly) -> float:
    c = np.asarray(poly, dtype=complex)
    d = c.size - 1
    ratios = [abs(c[i] / c[d]) ** (1.0 / (d - i)) for i in range(d) if c[i] != 0]
    return max([1.0] + ratios)


def _cluster(roots, radius):
    roots = list(roots)
    out = np.empty(len(roots), dtype=complex)
    used = [False] * len(roots)
    for i, r in enumerate(roots):
        if used[i]:
            continue
        members = [k for k in range(len(roots)) if not used[k] and abs(roots[k] - r) <= radius]
        centre = np.mean([roots[k] for k in members])
        for k in members:
            used[k] = True
            out[k] = centre
    return out


@dataclass(frozen=True)
class RootSplit:
    tau_plus: np.ndarray
    tau_minus: np.ndarray
    residual: float

    @property
    def q(self) -> int:
        return self.tau_plus.size


def root_split(poly, tol_imag: Optional[float] = None, tol_lead: float = TOL_LEAD) -> RootSplit:
    """Split the roots of ``poly`` (ascending coefficients) by the sign of Im.

    Roots come from the companion matrix, are polished by Newton steps and
    grouped into clusters of radius ``1e-6`` times the root scale, each
    cluster member being replaced by the cluster mean.  Raises
    :class:`DegenerateSplitError` when a root has ``|Im| <= tol_imag`` or the
    two halves differ in size.
    """
    c = np.asarray(poly, dtype=complex)
    d = c.size - 1
    if d < 1 or d % 2:
        raise SymbolError("root split needs a polynomial of even positive degree")
    if abs(c[-1]) < tol_lead:
        raise SymbolError("leading coefficient below tolerance")
    scale = _root_scale(c)
    tol = TOL_IMAG * scale if tol_imag is None else tol_imag
    roots = P.polyroots(c)
    dc = P.polyder(c)
    for _ in range(2):
        f = P.polyval(roots, c)
        fp = P.polyval(roots, dc)
        step = np.where(np.abs(fp) > 0, f / np.where(fp == 0, 1, fp), 0)
        cand = roots - step
        better = np.abs(P.polyval(cand, c)) < np.abs(f)
        roots = np.where(better, cand, roots)
    roots = _cluster(roots, CLUSTER_RADIUS * scale)
    residual = float(np.max(np.abs(P.polyval(roots, c))))
    if np.any(np.abs(roots.imag) <= tol):
        raise DegenerateSplitError("a tau-root lies on the real axis")
    plus = np.sort_complex(roots[roots.imag > 0])
    minus = np.sort_complex(roots[roots.imag < 0])
    if plus.size != minus.size:
        raise DegenerateSplitError(f"uneven split {plus.size}/{minus.size}")
    return RootSplit(plus, minus, residual)


@dataclass(frozen=True)
class LopatinskiiResult:
    C: np.ndarray
    sigma_min: float
    split: RootSplit

    @property
    def det(self) -> complex:
        return complex(np.linalg.det(self.C))


def lopatinskii_matrix(p: BVProblem, x, xi_t, nu, lam, component: Optional[str] = None) -> LopatinskiiResult:
    """Remainders of the boundary symbols modulo ``prod (tau - tau_j^+)``.

    Row ``j`` holds the coefficients of ``tau^0 .. tau^(q-1)`` of the
    remainder of ``B0_j(x, xi_t + tau nu, lam)``.
    """
    comp = p.component(component)
    split = root_split(tau_polynomial_A(p, x, xi_t, nu, lam))
    mplus = P.polyfromroots(split.tau_plus)
    q = p.q
    C = np.zeros((q, q), dtype=complex)
    for j, op in enumerate(comp.ops):
        b = op.expr.tau_polynomial(x, np.asarray(xi_t, float), np.asarray(nu, float), lam)
        _, rem = P.polydiv(b, mplus) if b.size >= mplus.size else (None, b)
        rem = np.asarray(rem, dtype=complex)[:q]
        C[j, : rem.size] = rem
    sigma = float(np.linalg.svd(C, compute_uv=False)[-1])
    return LopatinskiiResult(C, sigma, split)


# ---------------------------------------------------------------------------
# scans


def _tangent(nu) -> np.ndarray:
    nu = np.asarray(nu, dtype=float)
    if nu.size == 1:
        return np.zeros((0, 1))
    return np.array([[nu[1], -nu[0]]])


def _sphere_interior(dim: int, n_samples: int):
    """Points ``(xi, |lam|)`` on the unit sphere ``|xi|^2 + |lam|^2 = 1``, |lam| >= 0."""
    if dim == 1:
        n_a = max(3, (n_samples // 2) | 1)
        a = np.linspace(0, np.pi / 2, n_a)
        xi = np.concatenate([np.cos(a), -np.cos(a)])[:, None]
        r = np.concatenate([np.sin(a), np.sin(a)])
        return xi, r
    n_b = 32
    n_a = max(3, (n_samples // n_b) | 1)
    a = np.linspace(0, np.pi / 2, n_a)
    b = 2 * np.pi * np.arange(n_b) / n_b
    A, Bg = np.meshgrid(a, b, indexing="ij")
    xi = np.stack([np.cos(A) * np.cos(Bg), np.cos(A) * np.sin(Bg)], axis=-1).reshape(-1, 2)
    return xi, np.sin(A).ravel()


def _strip_interior_points(n: int, dim: int):
    if dim == 1:
        return [np.array([v]) for v in (np.arange(n) + 0.5) / n]
    side = max(1, int(round(math.sqrt(n))))
    x1 = 2 * np.pi * np.arange(side) / side
    x2 = (np.arange(side) + 0.5) / side
    return [np.array([a, b]) for a in x1 for b in x2]


def _strip_boundary_points(comp: BoundaryComponent, n: int, dim: int):
    if dim == 1:
        return [np.array([comp.coordinate])]
    return [np.array([a, comp.coordinate]) for a in 2 * np.pi * np.arange(n) / n]


@dataclass(frozen=True)
class EllipticityConfig:
    """Sampling and tolerances for the ellipticity check.

    Constant-coefficient problems are evaluated at a single point per
    component regardless of the sample counts.
    """

    x_samples: int = 64
    sphere_samples: int = 512
    angle_step_deg: float = 1.0
    tol_a: float = 1e-6
    tol_b: float = 1e-6
    interior_points: Optional[tuple] = None
    boundary_points: Optional[dict] = None
    max_witnesses: int = 8


def _interior_points(p, cfg):
    if cfg.interior_points is not None:
        return [np.asarray(x, float) for x in cfg.interior_points]
    if p.interior.constant:
        return _strip_interior_points(1, p.dim)
    return _strip_interior_points(cfg.x_samples, p.dim)


def _boundary_points(p, comp, cfg):
    if cfg.boundary_points is not None and comp.name in cfg.boundary_points:
        return [np.asarray(x, float) for x in cfg.boundary_points[comp.name]]
    const = p.interior.constant and all(op.expr.constant for op in comp.ops)
    return _strip_boundary_points(comp, 1 if const else cfg.x_samples, p.dim)


def _scan_i(p, K, cfg):
    xi, r = _sphere_interior(p.dim, cfg.sphere_samples)
    dirs = K.directions(cfg.angle_step_deg)
    lam = (r[:, None] * np.exp(1j * dirs)[None, :]).ravel()
    xi_b = np.repeat(xi, dirs.size, axis=0)
    best, worst, count = np.inf, None, 0
    for x in _interior_points(p, cfg):
        vals = np.abs(p.interior.symbol(x, xi_b, lam))
        count += vals.size
        i = int(np.argmin(vals))
        if vals[i] < best:
            best = float(vals[i])
            worst = {"x": x.tolist(), "xi": xi_b[i].tolist(), "lam": [lam[i].real, lam[i].imag], "value": best}
    return best, worst, count


def condition_i_scan(p: BVProblem, K: Angle, config: Optional[EllipticityConfig] = None) -> float:
    """Minimum of ``|A0|`` over sampled ``x`` and the unit sphere with ``arg lam`` in ``K``."""
    return _scan_i(p, K, config or EllipticityConfig())[0]


def _batch_roots(coeffs):
    """Roots of each row of ascending coefficients via batched companion matrices."""
    B, d1 = coeffs.shape
    d = d1 - 1
    a = coeffs[:, :-1] / coeffs[:, -1:]
    comp = np.zeros((B, d, d), dtype=complex)
    comp[:, 1:, :-1] = np.eye(d - 1)
    comp[:, :, -1] = -a
    roots = np.linalg.eigvals(comp)
    dc = coeffs[:, 1:] * np.arange(1, d1)
    for _ in range(2):
        f = _batch_polyval(coeffs, roots)
        fp = _batch_polyval(dc, roots)
        safe = np.where(fp == 0, 1, fp)
        cand = roots - np.where(fp == 0, 0, f / safe)
        roots = np.where(np.abs(_batch_polyval(coeffs, cand)) < np.abs(f), cand, roots)
    return roots


def _batch_polyval(coeffs, z):
    out = np.zeros(z.shape, dtype=complex)
    for k in range(coeffs.shape[1] - 1, -1, -1):
        out = out * z + coeffs[:, k : k + 1]
    return out


def _batch_split(coeffs, q):
    """Plus-roots per row and a mask of rows whose split is degenerate."""
    roots = _batch_roots(coeffs)
    scale = np.maximum(1.0, np.max(np.abs(roots), axis=1))
    tol = TOL_IMAG * scale
    bad = np.any(np.abs(roots.imag) <= tol[:, None], axis=1)
    bad |= np.sum(roots.imag > 0, axis=1) != q
    order = np.argsort(-roots.imag, axis=1)
    plus = np.take_along_axis(roots, order[:, :q], axis=1)
    # cluster near-coincident plus roots to their mean
    dist = np.abs(plus[:, :, None] - plus[:, None, :]) <= CLUSTER_RADIUS * scale[:, None, None]
    plus = np.sum(dist * plus[:, None, :], axis=2) / np.sum(dist, axis=2)
    return plus, bad


def _batch_remainder(b, mplus, q):
    """Remainder of each row of ``b`` modulo the monic rows of ``mplus`` (degree q)."""
    rem = b.copy()
    for k in range(rem.shape[1] - 1, q - 1, -1):
        lead = rem[:, k : k + 1]
        rem[:, k - q : k + 1] -= lead * mplus
    out = np.zeros((b.shape[0], q), dtype=complex)
    w = min(q, rem.shape[1])
    out[:, :w] = rem[:, :w]
    return out


def _batch_mplus(plus):
    B, q = plus.shape
    poly = np.ones((B, 1), dtype=complex)
    for j in range(q):
        poly = _batch_polymul(poly, np.stack([-plus[:, j], np.ones(B, complex)], axis=1))
    return poly


def _scan_ii(p, K, cfg):
    dirs = K.directions(cfg.angle_step_deg)
    q = p.q
    best, worst, count = np.inf, None, 0
    witnesses = []
    for comp in p.boundary:
        nu = np.asarray(comp.normal)
        tang = _tangent(nu)
        if tang.shape[0]:
            n_a = max(3, (cfg.sphere_samples // 2) | 1)
            a = np.linspace(0, np.pi / 2, n_a)
            signs = np.array([1.0, -1.0])
            A, S = np.meshgrid(a, signs, indexing="ij")
            xi_t = (np.cos(A) * S).ravel()[:, None] * tang[0][None, :]
            r = np.sin(A).ravel()
        else:
            xi_t = np.zeros((1, nu.size))
            r = np.ones(1)
        lam = (r[:, None] * np.exp(1j * dirs)[None, :]).ravel()
        xi_b = np.repeat(xi_t, dirs.size, axis=0).astype(complex)
        for x in _boundary_points(p, comp, cfg):
            coeffs = p.interior._tau_batch(x, xi_b, nu, lam)
            lead = np.abs(coeffs[:, -1])
            if np.any(lead < TOL_LEAD):
                raise SymbolError("normal direction is characteristic")
            plus, bad = _batch_split(coeffs, q)
            mplus = _batch_mplus(plus)
            C = np.stack(
                [_batch_remainder(op.expr._tau_batch(x, xi_b, nu, lam), mplus, q) for op in comp.ops], axis=1
            )
            sig = np.linalg.svd(C, compute_uv=False)[:, -1]
            sig = np.where(bad, 0.0, sig)
            count += sig.size
            for i in np.flatnonzero(bad)[: max(0, cfg.max_witnesses - len(witnesses))]:
                witnesses.append(
                    {
                        "component": comp.name,
                        "x": x.tolist(),
                        "xi": xi_b[i].real.tolist(),
                        "lam": [lam[i].real, lam[i].imag],
                        "reason": "degenerate root split",
                    }
                )
            i = int(np.argmin(sig))
            if sig[i] < best:
                best = float(sig[i])
                worst = {
                    "component": comp.name,
                    "x": x.tolist(),
                    "xi": xi_b[i].real.tolist(),
                    "lam": [lam[i].real, lam[i].imag],
                    "value": best,
                }
    return best, worst, count, witnesses


def condition_ii_scan(p: BVProblem, K: Angle, config: Optional[EllipticityConfig] = None) -> float:
    """Minimum smallest singular value of the Lopatinskii matrix over boundary samples.

    Points where the root split is degenerate count as zero.
    """
    return _scan_ii(p, K, config or EllipticityConfig())[0]


@dataclass
class EllipticityReport:
    verdict: bool
    min_symbol_modulus: float
    min_lopatinskii_sigma: float
    worst_points: list
    samples_used: dict
    witnesses: list = field(default_factory=list)
    angle: Optional[Angle] = None
    problem: str = ""

    def to_dict(self) -> dict:
        return {
            "problem": self.problem,
            "angle": self.angle.to_dict() if self.angle else None,
            "verdict": self.verdict,
            "minSymbolModulus": self.min_symbol_modulus,
            "minLopatinskiiSigma": self.min_lopatinskii_sigma,
            "worstPoints": self.worst_points,
            "witnesses": self.witnesses,
            "samplesUsed": self.samples_used,
        }


def check_parameter_ellipticity(
    p: BVProblem, K: Angle, config: Optional[EllipticityConfig] = None
) -> EllipticityReport:
    cfg = config or EllipticityConfig()
    a_min, a_worst, a_count = _scan_i(p, K, cfg)
    b_min, b_worst, b_count, witnesses = _scan_ii(p, K, cfg)
    worst = []
    if a_worst is not None:
        worst.append({"condition": "i", **a_worst})
    if b_worst is not None:
        worst.append({"condition": "ii", **b_worst})
    verdict = bool(a_min > cfg.tol_a and b_min > cfg.tol_b)
    return EllipticityReport(
        verdict=verdict,
        min_symbol_modulus=a_min,
        min_lopatinskii_sigma=b_min,
        worst_points=worst,
        samples_used={"conditionI": a_count, "conditionII": b_count},
        witnesses=witnesses,
        angle=K,
        problem=p.name,
    )


# ---------------------------------------------------------------------------
# smoothness threshold


def smoothness_threshold(p: BVProblem) -> float:
    """``max(0, m_j - 2q + 1/2)`` over all boundary operators."""
    return max([0.0] + [m - 2 * p.q + 0.5 for m in p.all_orders])


def admissible_phi(p: BVProblem, phi: ROFunction) -> bool:
    return matuszewska(phi).sigma0 > smoothness_threshold(p)


# ---------------------------------------------------------------------------
# JSON


def _coeff_json(c):
    if callable(c):
        raise TypeError("sampled (callable) coefficients cannot be serialised")
    return [c.real, c.imag]


def _coeff_parse(v):
    if isinstance(v, (list, tuple)):
        re, im = v
        return complex(re, im)
    return complex(v)


def _terms_json(expr: DiffExpression):
    return [{"r": t.r, "mu": list(t.mu.components), "coeff": _coeff_json(t.coeff)} for t in expr.terms]


def _terms_parse(items):
    return tuple(Term(int(d["r"]), MultiIndex(tuple(d["mu"])), _coeff_parse(d["coeff"])) for d in items)


def problem_to_json(p: BVProblem) -> str:
    d = {
        "name": p.name,
        "q": p.q,
        "interior": _terms_json(p.interior),
        "boundary": [
            {
                "component": c.name,
                "normal": list(c.normal),
                "ops": [{"m": op.m, "terms": _terms_json(op.expr)} for op in c.ops],
            }
            for c in p.boundary
        ],
    }
    return json.dumps(d, indent=2)


def problem_from_dict(d: dict) -> BVProblem:
    q = int(d["q"])
    interior = DiffExpression(2 * q, _terms_parse(d["interior"]))
    comps = []
    for c in d["boundary"]:
        ops = [BoundaryOperator(int(o["m"]), DiffExpression(int(o["m"]), _terms_parse(o["terms"]))) for o in c["ops"]]
        comps.append(BoundaryComponent(c["component"], tuple(ops), tuple(c["normal"]) if "normal" in c else None))
    return BVProblem(q, interior, tuple(comps), name=d.get("name", "problem"))


def problem_from_json(text: str) -> BVProblem:
    return problem_from_dict(json.loads(text))
