"""RO-varying smoothness parameters.

A smoothness parameter is a positive function on ``[1, inf)`` whose growth
ratios ``phi(lam*t)/phi(t)`` stay bounded above and below for ``lam`` in a
compact subset of ``[1, inf)``.  This module provides a handful of closed-form
families, grid-based estimates of the RO constant and of the Matuszewska
indices, the sub-additivity constant used by the parameter-dependent norms,
and the interpolation parameter built from a smoothness parameter and a pair
of Sobolev orders.

All objects are immutable; every function is pure.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np
from scipy import integrate

__all__ = [
    "ROFunction",
    "Power",
    "PowerLog",
    "Oscillating",
    "Represented",
    "Tabulated",
    "PowerTimes",
    "MatuszewskaIndices",
    "IndexConfig",
    "InterpParameter",
    "ProbeResult",
    "ro_bound",
    "matuszewska",
    "subadd_constant",
    "make_interp_param",
    "pseudoconcavity_probe",
    "rho",
    "parse_phi",
]


def _as_array(t):
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("arguments must be finite")
    return arr


class ROFunction:
    """Base class for smoothness parameters defined on ``[1, inf)``.

    Subclasses implement :meth:`_log`, the natural logarithm of the function,
    vectorised over numpy arrays.  Evaluation goes through the logarithm so
    that large arguments do not overflow before the ratio is formed.
    """

    def _log(self, t: np.ndarray) -> np.ndarray:  # pragma: no cover - abstract
        raise NotImplementedError

    def log(self, t):
        """Natural log of the function at ``t >= 1`` (scalar or array)."""
        arr = _as_array(t)
        if np.any(arr < 1.0):
            raise ValueError("smoothness parameters are defined on t >= 1")
        out = self._log(arr)
        return float(out) if np.ndim(out) == 0 else out

    def __call__(self, t):
        return np.exp(self.log(t))

    def eval(self, t):
        return self(t)

    def times_power(self, s: float) -> "ROFunction":
        """Return ``t -> t**s * self(t)``."""
        if s == 0:
            return self
        return PowerTimes(float(s), self)

    def to_dict(self) -> dict:
        raise TypeError(f"{type(self).__name__} is not serialisable")

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @property
    def label(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"), sort_keys=True)

    @staticmethod
    def from_dict(d: dict) -> "ROFunction":
        fam = d.get("family")
        if fam == "power":
            return Power(float(d["s"]))
        if fam == "powerlog":
            return PowerLog(float(d["s"]), float(d["r"]))
        if fam == "oscillating":
            return Oscillating(float(d["s"]), float(d["eps"]))
        if fam == "tabulated":
            return Tabulated(tuple(d["knots"]), tuple(d["values"]))
        if fam == "product":
            return PowerTimes(float(d["s"]), ROFunction.from_dict(d["base"]))
        raise ValueError(f"unknown smoothness family {fam!r}")

    @staticmethod
    def from_json(text: str) -> "ROFunction":
        return ROFunction.from_dict(json.loads(text))


@dataclass(frozen=True)
class Power(ROFunction):
    """``t**s``."""

    s: float

    def _log(self, t):
        return self.s * np.log(t)

    def to_dict(self):
        return {"family": "power", "s": self.s}


@dataclass(frozen=True)
class PowerLog(ROFunction):
    """``t**s * (1 + ln t)**r``."""

    s: float
    r: float

    def _log(self, t):
        lt = np.log(t)
        return self.s * lt + self.r * np.log1p(lt)

    def to_dict(self):
        return {"family": "powerlog", "s": self.s, "r": self.r}


@dataclass(frozen=True)
class Oscillating(ROFunction):
    """``t**s * exp(eps * sin(ln t))``, eps >= 0."""

    s: float
    eps: float

    def __post_init__(self):
        if self.eps < 0:
            raise ValueError("eps must be nonnegative")

    def _log(self, t):
        lt = np.log(t)
        return self.s * lt + self.eps * np.sin(lt)

    def to_dict(self):
        return {"family": "oscillating", "s": self.s, "eps": self.eps}


@dataclass(frozen=True)
class Represented(ROFunction):
    """``exp(beta(t) + int_1^t gamma(u)/u du)`` with bounded beta, gamma.

    The integral is evaluated in the variable ``ln u`` by adaptive quadrature,
    one point at a time.
    """

    beta: Callable[[float], float]
    gamma: Callable[[float], float]

    def _log(self, t):
        flat = np.atleast_1d(t).ravel()
        out = np.empty_like(flat)
        for i, ti in enumerate(flat):
            integral, _ = integrate.quad(lambda v: self.gamma(math.exp(v)), 0.0, math.log(ti), limit=200)
            out[i] = self.beta(ti) + integral
        return out.reshape(np.shape(t))


@dataclass(frozen=True)
class Tabulated(ROFunction):
    """Log-log linear interpolation through ``(knots, values)``.

    Beyond the first and last knot the end segments are continued with their
    log-log slopes, so the function keeps power-like behaviour at infinity.
    """

    knots: tuple
    values: tuple
    _lk: np.ndarray = field(init=False, repr=False, compare=False)
    _lv: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        k = np.asarray(self.knots, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if k.ndim != 1 or k.shape != v.shape or k.size < 2:
            raise ValueError("need at least two knots with matching values")
        if np.any(k <= 0) or np.any(np.diff(k) <= 0):
            raise ValueError("knots must be positive and strictly increasing")
        if np.any(v <= 0):
            raise ValueError("values must be positive")
        object.__setattr__(self, "knots", tuple(k.tolist()))
        object.__setattr__(self, "values", tuple(v.tolist()))
        object.__setattr__(self, "_lk", np.log(k))
        object.__setattr__(self, "_lv", np.log(v))

    def __hash__(self):
        return hash((self.knots, self.values))

    def _log(self, t):
        lt = np.log(t)
        lk, lv = self._lk, self._lv
        out = np.interp(lt, lk, lv)
        lo_slope = (lv[1] - lv[0]) / (lk[1] - lk[0])
        hi_slope = (lv[-1] - lv[-2]) / (lk[-1] - lk[-2])
        out = np.where(lt < lk[0], lv[0] + lo_slope * (lt - lk[0]), out)
        out = np.where(lt > lk[-1], lv[-1] + hi_slope * (lt - lk[-1]), out)
        return out

    def to_dict(self):
        return {"family": "tabulated", "knots": list(self.knots), "values": list(self.values)}


@dataclass(frozen=True)
class PowerTimes(ROFunction):
    """``t**s * base(t)``; the Matuszewska indices shift by ``s``."""

    s: float
    base: ROFunction

    def _log(self, t):
        return self.s * np.log(t) + self.base._log(t)

    def times_power(self, s):
        total = self.s + float(s)
        return self.base if total == 0 else PowerTimes(total, self.base)

    def to_dict(self):
        return {"family": "product", "s": self.s, "base": self.base.to_dict()}


def rho(s: float = 1.0) -> Power:
    """The identity parameter ``t -> t`` raised to ``s``."""
    return Power(float(s))


def parse_phi(spec: str) -> ROFunction:
    """Parse ``family:params`` shorthand, e.g. ``powerlog:2,1`` or ``power:1.5``.

    A string starting with ``{`` is read as the JSON form.
    """
    spec = spec.strip()
    if spec.startswith("{"):
        return ROFunction.from_json(spec)
    fam, _, rest = spec.partition(":")
    fam = fam.strip().lower()
    params = [float(x) for x in rest.split(",") if x.strip()]
    try:
        if fam == "power":
            (s,) = params
            return Power(s)
        if fam == "powerlog":
            s, r = params
            return PowerLog(s, r)
        if fam == "oscillating":
            s, eps = params
            return Oscillating(s, eps)
    except ValueError:
        raise ValueError(f"wrong number of parameters in {spec!r}") from None
    raise ValueError(f"unknown smoothness family in {spec!r}")


def _logf(phi) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(phi, (ROFunction, InterpParameter)):
        return phi.log
    return lambda t: np.log(np.asarray(phi(t), dtype=float))


# ---------------------------------------------------------------------------
# RO constant and Matuszewska indices


def ro_bound(phi, a: float, t_grid=None, lam_grid=None) -> float:
    """Grid estimate of the RO constant ``c`` for ``lam`` in ``[1, a]``.

    Returns ``max(ratio, 1/ratio)`` over the grids, a lower bound on the true
    constant.  Default grids are 256 log-spaced ``t`` in ``[1, 1e8]`` and 65
    uniform ``lam`` in ``[1, a]``.
    """
    if a <= 1:
        raise ValueError("a must exceed 1")
    t = np.logspace(0, 8, 256) if t_grid is None else np.asarray(t_grid, dtype=float).ravel()
    lam = np.linspace(1.0, a, 65) if lam_grid is None else np.asarray(lam_grid, dtype=float).ravel()
    if t.size == 0 or lam.size == 0:
        raise ValueError("grids must be nonempty")
    if np.any(lam < 1) or np.any(lam > a * (1 + 1e-12)):
        raise ValueError("lam_grid must lie in [1, a]")
    if np.any(t < 1):
        raise ValueError("t_grid must lie in [1, inf)")
    lf = _logf(phi)
    T, L = np.meshgrid(t, lam)
    logratio = lf(L * T) - lf(T)
    return float(np.exp(np.max(np.abs(logratio))))


@dataclass(frozen=True)
class MatuszewskaIndices:
    sigma0: float
    sigma1: float

    def __iter__(self):
        yield self.sigma0
        yield self.sigma1


@dataclass(frozen=True)
class IndexConfig:
    """Sampling used by :func:`matuszewska`.

    ``lam_min`` defaults to 2; see :func:`matuszewska` for why.
    """

    lam_min: float = 2.0
    lam_max: float = 1e4
    t_max: float = 1e8
    n_t: int = 64
    n_lam: int = 32
    method: str = "extremes"


def matuszewska(phi, config: Optional[IndexConfig] = None) -> MatuszewskaIndices:
    """Estimate the lower and upper Matuszewska indices of ``phi``.

    With ``method="extremes"`` (default) the estimate is the extreme value of
    the exponent ``log(phi(lam t)/phi(t)) / log(lam)`` over a log-spaced grid
    of ``t`` in ``[1, t_max]`` and ``lam`` in ``[lam_min, lam_max]``.  This is
    exact for pure powers.  For other families it is a band whose width shrinks
    only like ``1/log(lam_min)``: bounded oscillations such as
    ``t**s exp(eps sin ln t)`` show up as ``s -+ eps`` at small ``lam_min``
    although the asymptotic indices are both ``s``, and slowly varying factors
    like ``(1 + ln t)**r`` bias the upper end by roughly
    ``r log(1 + log lam_min) / log lam_min``.

    ``method="fekete"`` instead uses the sub/super-multiplicativity of the
    extreme ratios: ``sigma1 <= log(sup_t ratio(lam)) / log(lam)`` for every
    ``lam`` and similarly for ``sigma0``, so the minimum (maximum) over the
    ``lam`` grid approaches the asymptotic indices from outside.
    """
    cfg = config or IndexConfig()
    if cfg.lam_min <= 1:
        raise ValueError("lam_min must exceed 1")
    if cfg.lam_max < cfg.lam_min or cfg.t_max < 1 or cfg.n_t < 1 or cfg.n_lam < 1:
        raise ValueError("invalid index grid")
    t = np.logspace(0, math.log10(cfg.t_max), cfg.n_t)
    lam = np.logspace(math.log10(cfg.lam_min), math.log10(cfg.lam_max), cfg.n_lam)
    lf = _logf(phi)
    T, L = np.meshgrid(t, lam)
    expo = (lf(L * T) - lf(T)) / np.log(L)
    if cfg.method == "extremes":
        s0, s1 = float(expo.min()), float(expo.max())
    elif cfg.method == "fekete":
        s0, s1 = float(expo.min(axis=1).max()), float(expo.max(axis=1).min())
    else:
        raise ValueError(f"unknown method {cfg.method!r}")
    if s0 > s1:  # only possible through rounding for pure powers
        s0 = s1 = 0.5 * (s0 + s1)
    return MatuszewskaIndices(s0, s1)


def subadd_constant(alpha, grid=None, check: bool = True) -> float:
    """Smallest ``c`` with ``alpha(t1+t2)/c <= alpha(t1)+alpha(t2) <= c alpha(t1+t2)``.

    ``grid`` is a 1-D array of points ``>= 1``; the constant is taken over all
    ordered pairs from it.  The two-sided bound is only available when the
    lower index of ``alpha`` is positive, which is checked unless
    ``check=False``.
    """
    if check and matuszewska(alpha).sigma0 <= 0:
        raise ValueError("sub-additivity bound needs a positive lower index")
    g = np.logspace(0, 4, 200) if grid is None else np.unique(np.asarray(grid, dtype=float).ravel())
    if g.size == 0 or np.any(g < 1):
        raise ValueError("grid must be a nonempty set of points >= 1")
    lf = _logf(alpha)
    la = lf(g)
    T1, T2 = np.meshgrid(g, g, indexing="ij")
    lsum = np.logaddexp(la[:, None], la[None, :])
    lpair = lf(T1 + T2)
    return float(np.exp(max(0.0, np.max(np.abs(lsum - lpair)))))


# ---------------------------------------------------------------------------
# interpolation parameter


@dataclass(frozen=True)
class InterpParameter:
    """``psi(t) = t**(-s0/(s1-s0)) * base(t**(1/(s1-s0)))`` for t >= 1, ``base(1)`` below."""

    base: ROFunction
    s0: float
    s1: float

    def __post_init__(self):
        if not self.s0 < self.s1:
            raise ValueError("need s0 < s1")

    def log(self, t):
        arr = np.asarray(t, dtype=float)
        if np.any(arr <= 0) or not np.all(np.isfinite(arr)):
            raise ValueError("psi is defined on (0, inf)")
        d = self.s1 - self.s0
        hi = np.maximum(arr, 1.0)
        out = -self.s0 / d * np.log(hi) + self.base.log(hi ** (1.0 / d))
        out = np.where(arr < 1.0, self.base.log(1.0), out)
        return float(out) if np.ndim(out) == 0 else out

    def __call__(self, t):
        return np.exp(self.log(t))


def make_interp_param(alpha: ROFunction, s0: float, s1: float, check: bool = True) -> InterpParameter:
    """Build the interpolation parameter for ``alpha`` between orders ``s0 < s1``.

    When ``check`` is set, the estimated indices of ``alpha`` are compared
    against ``(s0, s1)`` and a warning is issued if they are not strictly
    inside.
    """
    if not s0 < s1:
        raise ValueError("need s0 < s1")
    if check:
        idx = matuszewska(alpha)
        if not (s0 < idx.sigma0 and idx.sigma1 < s1):
            warnings.warn(
                f"estimated indices ({idx.sigma0:.3g}, {idx.sigma1:.3g}) are not inside ({s0}, {s1})",
                stacklevel=2,
            )
    return InterpParameter(alpha, float(s0), float(s1))


PROBE_TOL = 1e-9


@dataclass(frozen=True)
class ProbeResult:
    sigma0: float
    sigma1: float
    margin: float
    passed: bool


def pseudoconcavity_probe(psi, config: Optional[IndexConfig] = None) -> ProbeResult:
    """Sufficient check that ``psi`` is pseudoconcave near infinity.

    Passes when the estimated indices lie in ``(0, 1)``; the margin is the
    distance to the nearer end.  A failure does not prove that ``psi`` is not
    an interpolation parameter.
    """
    idx = matuszewska(psi, config)
    margin = min(idx.sigma0, 1.0 - idx.sigma1)
    # indices of exact powers carry rounding noise; the boundary case must fail
    return ProbeResult(idx.sigma0, idx.sigma1, margin, margin > PROBE_TOL)
