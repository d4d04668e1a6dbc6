"""Interpolation with a function parameter for finite-dimensional Hilbert couples.

A couple ``[X0, X1]`` is given either by diagonal weights (``|u|_Xj^2 =
sum_k w_jk |u_k|^2``) or by Hermitian positive-definite Gram matrices.  The
generating operator ``J`` is the X0-self-adjoint positive operator with
``|J u|_X0 = |u|_X1``; the interpolation norm is ``|psi(J) u|_X0``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np
from scipy import linalg

from .rofunc import InterpParameter, ROFunction, make_interp_param
from .spaces import Spectrum, bracket, hnorm, pnorm_prime

__all__ = [
    "DiagonalCouple",
    "GramCouple",
    "GeneratingOperator",
    "generating_operator",
    "interp_norm",
    "interp_gram",
    "operator_norm",
    "direct_sum",
    "sobolev_scale_identity",
    "param_scale_identity",
    "heinz_bound_check",
    "direct_sum_interp",
    "interpolation_constant_survey",
    "random_normal_couple",
    "couple_to_json",
    "couple_from_json",
]

CLUSTER_TOL = 1e-9


@dataclass(frozen=True)
class DiagonalCouple:
    weights0: np.ndarray
    weights1: np.ndarray

    def __post_init__(self):
        w0 = np.asarray(self.weights0, dtype=float).ravel()
        w1 = np.asarray(self.weights1, dtype=float).ravel()
        if w0.shape != w1.shape:
            raise ValueError("weight arrays differ in length")
        if np.any(w0 <= 0) or np.any(w1 <= 0):
            raise ValueError("weights must be positive")
        object.__setattr__(self, "weights0", w0)
        object.__setattr__(self, "weights1", w1)

    @property
    def size(self) -> int:
        return self.weights0.size

    @property
    def is_normal(self) -> bool:
        return bool(np.all(self.weights0 <= self.weights1))

    @property
    def G0(self) -> np.ndarray:
        return np.diag(self.weights0).astype(complex)

    @property
    def G1(self) -> np.ndarray:
        return np.diag(self.weights1).astype(complex)


@dataclass(frozen=True)
class GramCouple:
    G0: np.ndarray
    G1: np.ndarray

    def __post_init__(self):
        g0 = np.asarray(self.G0, dtype=complex)
        g1 = np.asarray(self.G1, dtype=complex)
        if g0.ndim != 2 or g0.shape[0] != g0.shape[1] or g0.shape != g1.shape:
            raise ValueError("Gram matrices must be square and of equal size")
        for g in (g0, g1):
            scale = max(1.0, float(np.max(np.abs(g)))) if g.size else 1.0
            if np.max(np.abs(g - g.conj().T), initial=0.0) > 1e-12 * scale:
                raise ValueError("Gram matrices must be Hermitian")
            if g.size and np.min(linalg.eigvalsh(g)) <= 0:
                raise ValueError("Gram matrices must be positive definite")
        object.__setattr__(self, "G0", 0.5 * (g0 + g0.conj().T))
        object.__setattr__(self, "G1", 0.5 * (g1 + g1.conj().T))

    @property
    def size(self) -> int:
        return self.G0.shape[0]

    @property
    def is_normal(self) -> bool:
        if not self.size:
            return True
        return bool(np.min(linalg.eigvalsh(self.G1 - self.G0)) >= -1e-12)


Couple = Union[DiagonalCouple, GramCouple]


@dataclass(frozen=True)
class GeneratingOperator:
    """``J = V diag(eigenvalues) V^{-1}`` with X0-orthonormal columns ``V``.

    For a Gram couple ``V^{-1} = V^H G0``.
    """

    eigenvalues: np.ndarray
    eigenbasis: np.ndarray
    G0: np.ndarray

    def coordinates(self, u) -> np.ndarray:
        """Coefficients of ``u`` in the X0-orthonormal eigenbasis."""
        return self.eigenbasis.conj().T @ (self.G0 @ np.asarray(u, dtype=complex))

    def apply(self, u, func: Callable = None) -> np.ndarray:
        """``func(J) u``; ``J u`` when ``func`` is omitted."""
        lam = self.eigenvalues if func is None else np.asarray(func(self.eigenvalues), dtype=complex)
        return self.eigenbasis @ (lam * self.coordinates(u))

    def matrix(self, func: Callable = None) -> np.ndarray:
        lam = self.eigenvalues if func is None else np.asarray(func(self.eigenvalues), dtype=complex)
        return self.eigenbasis @ (lam[:, None] * (self.eigenbasis.conj().T @ self.G0))


def _orthonormalize_clusters(V, G0, ev):
    # eigh already returns G0-orthonormal vectors; re-orthonormalise within
    # clusters of (numerically) repeated eigenvalues.
    n = ev.size
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and ev[stop] - ev[stop - 1] <= CLUSTER_TOL * max(1.0, abs(ev[stop])):
            stop += 1
        block = V[:, start:stop]
        S = block.conj().T @ G0 @ block
        L = linalg.cholesky(0.5 * (S + S.conj().T), lower=True)
        V[:, start:stop] = linalg.solve_triangular(L, block.conj().T, lower=True).conj().T
        start = stop
    return V


def generating_operator(couple: Couple) -> GeneratingOperator:
    if isinstance(couple, DiagonalCouple):
        w0, w1 = couple.weights0, couple.weights1
        V = np.diag(1.0 / np.sqrt(w0)).astype(complex)
        return GeneratingOperator(np.sqrt(w1 / w0), V, couple.G0)
    n = couple.size
    if n == 0:
        return GeneratingOperator(np.zeros(0), np.zeros((0, 0), complex), couple.G0)
    mu, V = linalg.eigh(couple.G1, couple.G0)
    if np.any(mu <= 0):
        raise ValueError("generalized eigenvalues must be positive")
    V = _orthonormalize_clusters(np.array(V, dtype=complex), couple.G0, mu)
    return GeneratingOperator(np.sqrt(mu), V, couple.G0)


def _psi_values(psi, lam):
    vals = np.asarray(psi(lam), dtype=float)
    if vals.shape != np.shape(lam):
        vals = np.broadcast_to(vals, np.shape(lam)).astype(float)
    if not np.all(np.isfinite(vals)) or np.any(vals <= 0):
        raise ValueError("psi must be finite and positive on the spectrum of J")
    return vals


def interp_norm(u, couple: Couple, psi) -> float:
    """``|psi(J) u|_X0``."""
    u = np.asarray(u, dtype=complex).ravel()
    if u.size != couple.size:
        raise ValueError("vector length does not match the couple")
    if isinstance(couple, DiagonalCouple):
        lam = np.sqrt(couple.weights1 / couple.weights0)
        vals = _psi_values(psi, lam)
        return float(np.sqrt(np.sum(couple.weights0 * vals**2 * np.abs(u) ** 2)))
    J = generating_operator(couple)
    vals = _psi_values(psi, J.eigenvalues)
    return float(np.linalg.norm(vals * J.coordinates(u)))


def interp_gram(couple: Couple, psi) -> np.ndarray:
    """Gram matrix of the interpolation norm: ``G0 V diag(psi^2) V^H G0``."""
    J = generating_operator(couple)
    vals = _psi_values(psi, J.eigenvalues)
    W = J.G0 @ J.eigenbasis
    G = (W * vals**2) @ W.conj().T
    return 0.5 * (G + G.conj().T)


def operator_norm(T, GX, GY) -> float:
    """Norm of ``T`` from ``(C^n, GX)`` to ``(C^m, GY)`` via a Cholesky change of metric."""
    T = np.asarray(T, dtype=complex)
    LX = linalg.cholesky(GX, lower=True)
    LY = linalg.cholesky(GY, lower=True)
    # |LY^H T LX^{-H} v| / |v|
    B = LY.conj().T @ linalg.solve_triangular(LX, T.conj().T, lower=True).conj().T
    return float(linalg.svdvals(B)[0])


def direct_sum(couples: Sequence[Couple]) -> Couple:
    if all(isinstance(c, DiagonalCouple) for c in couples):
        w0 = np.concatenate([c.weights0 for c in couples]) if couples else np.zeros(0)
        w1 = np.concatenate([c.weights1 for c in couples]) if couples else np.zeros(0)
        return DiagonalCouple(w0, w1)
    return GramCouple(linalg.block_diag(*[c.G0 for c in couples]), linalg.block_diag(*[c.G1 for c in couples]))


def _relerr(lhs, rhs):
    return abs(lhs - rhs) / max(abs(rhs), np.finfo(float).tiny)


def _as_psi(alpha: ROFunction, s0: float, s1: float) -> InterpParameter:
    return make_interp_param(alpha, s0, s1, check=False)


def sobolev_scale_identity(u: Spectrum, alpha: ROFunction, s0: float, s1: float) -> dict:
    """Interpolated Sobolev norm versus the Hörmander norm of ``alpha``.

    The couple has weights ``<k>^(2 s0)`` and ``<k>^(2 s1)``; on the torus the
    two sides agree exactly for every spectrum.
    """
    if not s0 < s1:
        raise ValueError("need s0 < s1")
    b = bracket(u.grid).ravel()
    couple = DiagonalCouple(b ** (2 * s0), b ** (2 * s1))
    lhs = interp_norm(u.coeffs.ravel(), couple, _as_psi(alpha, s0, s1))
    rhs = hnorm(u, alpha)
    return {"lhs": lhs, "rhs": rhs, "relerr": _relerr(lhs, rhs)}


def param_scale_identity(u: Spectrum, alpha: ROFunction, s0: float, s1: float, p: float) -> dict:
    """Interpolated ``(<k>+p)``-weighted Sobolev norms versus ``pnorm_prime``."""
    if not 0 < s0 < s1:
        raise ValueError("need 0 < s0 < s1")
    if p < 1:
        raise ValueError("p must be >= 1")
    b = bracket(u.grid).ravel() + p
    couple = DiagonalCouple(b ** (2 * s0), b ** (2 * s1))
    lhs = interp_norm(u.coeffs.ravel(), couple, _as_psi(alpha, s0, s1))
    rhs = pnorm_prime(u, alpha, p, check=False)
    return {"lhs": lhs, "rhs": rhs, "relerr": _relerr(lhs, rhs)}


def heinz_bound_check(T, coupleX: Couple, coupleY: Couple, theta: float) -> dict:
    """Check ``|T|_psi <= |T|_0^(1-theta) |T|_1^theta`` for ``psi(t) = t^theta``."""
    if not 0 < theta < 1:
        raise ValueError("theta must lie in (0, 1)")
    T = np.asarray(T, dtype=complex)
    psi = lambda t: np.asarray(t, dtype=float) ** theta
    n0 = operator_norm(T, coupleX.G0, coupleY.G0)
    n1 = operator_norm(T, coupleX.G1, coupleY.G1)
    lhs = operator_norm(T, interp_gram(coupleX, psi), interp_gram(coupleY, psi))
    bound = n0 ** (1 - theta) * n1**theta
    return {"lhsNorm": lhs, "bound": bound, "pass": lhs <= bound * (1 + 1e-9)}


def direct_sum_interp(u_parts: Sequence, couples: Sequence[Couple], psi) -> dict:
    """Interpolation norm of a direct sum versus the l2 sum of the parts."""
    if len(u_parts) != len(couples):
        raise ValueError("need one vector per couple")
    parts = [np.asarray(u, dtype=complex).ravel() for u in u_parts]
    whole = np.concatenate(parts) if parts else np.zeros(0, complex)
    lhs = interp_norm(whole, direct_sum(list(couples)), psi)
    rhs = float(np.sqrt(sum(interp_norm(u, c, psi) ** 2 for u, c in zip(parts, couples))))
    return {"lhs": lhs, "rhs": rhs, "relerr": _relerr(lhs, rhs)}


def random_normal_couple(n: int, rng: np.random.Generator, spread: float = 10.0) -> GramCouple:
    """Random complex Gram couple with ``G0 <= G1``."""
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    G0 = A @ A.conj().T / n + 0.1 * np.eye(n)
    B = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    G1 = G0 + spread * (B @ B.conj().T) / n
    return GramCouple(G0, G1)


def interpolation_constant_survey(psi, n: int = 6, trials: int = 50, seed: int = 0) -> dict:
    """Measured ``|T|_psi / max(|T|_0, |T|_1)`` over random normal couples.

    The existence of a bound depending only on ``psi`` is a theorem; no value
    for it is asserted here, only the measured maximum.
    """
    rng = np.random.default_rng(seed)
    ratios = []
    for _ in range(trials):
        X = random_normal_couple(n, rng)
        Y = random_normal_couple(n, rng)
        T = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        num = operator_norm(T, interp_gram(X, psi), interp_gram(Y, psi))
        den = max(operator_norm(T, X.G0, Y.G0), operator_norm(T, X.G1, Y.G1))
        ratios.append(num / den)
    ratios = np.asarray(ratios)
    return {"max": float(ratios.max()), "mean": float(ratios.mean()), "trials": trials}


# ---------------------------------------------------------------------------
# JSON


def _cmat(m):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]


def _from_cmat(rows):
    a = np.asarray(rows, dtype=float)
    if a.ndim == 3 and a.shape[-1] == 2:
        return a[..., 0] + 1j * a[..., 1]
    if a.ndim == 2:
        return a.astype(complex)
    raise ValueError("Gram matrices must be real or [re, im] nested lists")


def couple_to_json(couple: Couple) -> str:
    if isinstance(couple, DiagonalCouple):
        return json.dumps({"kind": "diagonal", "w0": couple.weights0.tolist(), "w1": couple.weights1.tolist()})
    return json.dumps({"kind": "gram", "g0": _cmat(couple.G0), "g1": _cmat(couple.G1)})


def couple_from_json(text: str) -> Couple:
    d = json.loads(text)
    kind = d.get("kind")
    if kind == "diagonal":
        return DiagonalCouple(d["w0"], d["w1"])
    if kind == "gram":
        return GramCouple(_from_cmat(d["g0"]), _from_cmat(d["g1"]))
    raise ValueError(f"unknown couple kind {kind!r}")
