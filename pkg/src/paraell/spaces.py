"""Discrete Hörmander norms on 1-D and 2-D tori.

Fields live on the uniform grid ``x_j = 2 pi j / N`` of each axis.  The
transform uses the kernel ``exp(+i k x)`` with unitary normalisation, so the
plane wave ``exp(-i k x)`` (the eigenfunction of ``D = i d/dx`` with
eigenvalue ``k``) has a single nonzero coefficient at ``k`` and Parseval holds
with the Euclidean norm of the grid values.

Frequencies per axis are ``-N/2+1, ..., N/2``; coefficients are stored in
numpy FFT order and :meth:`TorusGrid.frequencies` gives the matching integer
frequencies.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .rofunc import Power, ROFunction, matuszewska, subadd_constant

__all__ = [
    "TorusGrid",
    "Field",
    "Spectrum",
    "transform",
    "inverse_transform",
    "bracket",
    "hnorm",
    "pnorm",
    "pnorm_prime",
    "pnorm_weights",
    "equivalence_ratio",
    "equivalence_band",
    "embedding_constants",
    "write_field",
    "read_field",
    "field_to_json",
    "field_from_json",
]


@dataclass(frozen=True)
class TorusGrid:
    sizes: tuple

    def __post_init__(self):
        sizes = tuple(int(n) for n in self.sizes)
        if len(sizes) not in (1, 2):
            raise ValueError("only 1-D and 2-D tori are supported")
        for n in sizes:
            if n < 4 or n % 2:
                raise ValueError("axis sizes must be even and at least 4")
        object.__setattr__(self, "sizes", sizes)

    @classmethod
    def square(cls, n: int, dim: int = 2) -> "TorusGrid":
        return cls((n,) * dim)

    @property
    def dim(self) -> int:
        return len(self.sizes)

    @property
    def shape(self) -> tuple:
        return self.sizes

    def axis_frequencies(self, n: int) -> np.ndarray:
        k = np.fft.fftfreq(n, 1.0 / n).astype(int)
        k[n // 2] = n // 2
        return k

    def frequencies(self) -> tuple:
        """Integer frequency arrays (one per axis), broadcast to the grid shape."""
        axes = [self.axis_frequencies(n) for n in self.sizes]
        return tuple(np.meshgrid(*axes, indexing="ij"))

    def points(self) -> tuple:
        axes = [2 * np.pi * np.arange(n) / n for n in self.sizes]
        return tuple(np.meshgrid(*axes, indexing="ij"))

    def kabs2(self) -> np.ndarray:
        return sum(k.astype(float) ** 2 for k in self.frequencies())

    def index_of(self, k: Sequence[int]) -> tuple:
        if len(k) != self.dim:
            raise ValueError("frequency has wrong dimension")
        idx = []
        for kj, n in zip(k, self.sizes):
            if not -n // 2 < kj <= n // 2:
                raise ValueError(f"frequency {kj} outside the grid")
            idx.append(int(kj) % n)
        return tuple(idx)


def bracket(grid: TorusGrid) -> np.ndarray:
    """Smoothed modulus ``<k> = sqrt(1 + |k|^2)`` on the grid."""
    return np.sqrt(1.0 + grid.kabs2())


@dataclass(frozen=True)
class Field:
    grid: TorusGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != self.grid.shape:
            raise ValueError(f"values have shape {v.shape}, grid is {self.grid.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("field values must be finite")
        object.__setattr__(self, "values", v)

    @classmethod
    def plane_wave(cls, grid: TorusGrid, k: Sequence[int]) -> "Field":
        """``exp(-i k.x)``."""
        x = grid.points()
        phase = sum(kj * xj for kj, xj in zip(k, x))
        return cls(grid, np.exp(-1j * phase))


@dataclass(frozen=True)
class Spectrum:
    grid: TorusGrid
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != self.grid.shape:
            raise ValueError(f"coefficients have shape {c.shape}, grid is {self.grid.shape}")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zeros(cls, grid: TorusGrid) -> "Spectrum":
        return cls(grid, np.zeros(grid.shape, dtype=complex))

    @classmethod
    def unit_mode(cls, grid: TorusGrid, k: Sequence[int], amplitude: complex = 1.0) -> "Spectrum":
        c = np.zeros(grid.shape, dtype=complex)
        c[grid.index_of(k)] = amplitude
        return cls(grid, c)

    @classmethod
    def random(cls, grid: TorusGrid, rng: np.random.Generator, decay: float = 0.0) -> "Spectrum":
        """Complex Gaussian coefficients, optionally damped by ``<k>**-decay``."""
        c = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
        if decay:
            c = c * bracket(grid) ** (-decay)
        return cls(grid, c)

    def coefficient(self, k: Sequence[int]) -> complex:
        return complex(self.coeffs[self.grid.index_of(k)])


def transform(f: Field) -> Spectrum:
    """Unitary discrete transform with kernel ``exp(+i k x)``."""
    return Spectrum(f.grid, np.fft.ifftn(f.values, norm="ortho"))


def inverse_transform(s: Spectrum) -> Field:
    return Field(s.grid, np.fft.fftn(s.coeffs, norm="ortho"))


# ---------------------------------------------------------------------------
# norms


def _check_alpha(alpha: ROFunction):
    if matuszewska(alpha).sigma0 <= 0:
        raise ValueError("parameter-dependent norms need a positive lower index")


def hnorm(u: Spectrum, phi: ROFunction) -> float:
    """``(sum_k phi(<k>)^2 |u_k|^2)^(1/2)``."""
    w = phi(bracket(u.grid))
    return float(np.sqrt(np.sum(w**2 * np.abs(u.coeffs) ** 2)))


def pnorm_weights(alpha: ROFunction, t, p: float) -> np.ndarray:
    """Per-frequency weights ``sqrt(alpha(t)^2 + alpha(p)^2)`` of the parameter norm."""
    t = np.asarray(t, dtype=float)
    return np.sqrt(alpha(t) ** 2 + alpha(p) ** 2)


def pnorm(u: Spectrum, alpha: ROFunction, p: float, check: bool = True) -> float:
    """``sqrt(|u|_alpha^2 + alpha(p)^2 |u|_L2^2)``."""
    if p < 1:
        raise ValueError("p must be >= 1")
    if check:
        _check_alpha(alpha)
    w = pnorm_weights(alpha, bracket(u.grid), p)
    return float(np.sqrt(np.sum(w**2 * np.abs(u.coeffs) ** 2)))


def pnorm_prime(u: Spectrum, alpha: ROFunction, p: float, check: bool = True) -> float:
    """``(sum_k alpha(<k> + p)^2 |u_k|^2)^(1/2)``."""
    if p < 1:
        raise ValueError("p must be >= 1")
    if check:
        _check_alpha(alpha)
    w = alpha(bracket(u.grid) + p)
    return float(np.sqrt(np.sum(w**2 * np.abs(u.coeffs) ** 2)))


def equivalence_ratio(u: Spectrum, alpha: ROFunction, p: float) -> float:
    """``pnorm / pnorm_prime``."""
    if not np.any(u.coeffs):
        raise ValueError("ratio undefined for the zero spectrum")
    _check_alpha(alpha)
    return pnorm(u, alpha, p, check=False) / pnorm_prime(u, alpha, p, check=False)


def equivalence_band(alpha: ROFunction, grid: TorusGrid, ps: Sequence[float]) -> tuple:
    """Band ``[1/(sqrt2 c2), sqrt2 c2]`` certified on the grid's frequencies and ``ps``.

    ``c2`` is the sub-additivity constant over every pair drawn from the
    distinct values of ``<k>``, the given ``p`` values and a log-spaced
    cover of ``[1, 2 max]``.
    """
    pts = np.unique(np.concatenate([np.unique(bracket(grid)), np.asarray(ps, dtype=float)]))
    cover = np.logspace(0, np.log10(2 * pts.max()), 64)
    c2 = subadd_constant(alpha, np.concatenate([pts, cover]))
    s = np.sqrt(2.0) * c2
    return 1.0 / s, s


def embedding_constants(phi: ROFunction, grid: TorusGrid, s0: float, s1: float) -> tuple:
    """Constants ``c, C`` with ``c <k>^s0 <= phi(<k>) <= C <k>^s1`` on the grid."""
    b = np.unique(bracket(grid))
    v = phi(b)
    return float(np.min(v / b**s0)), float(np.max(v / b**s1))


# ---------------------------------------------------------------------------
# field I/O

_MAGIC = b"PELF"


def write_field(path, f: Field) -> None:
    """Binary little-endian layout: 16-byte header then interleaved (re, im) doubles.

    Header: magic ``PELF``, dim as u8, 3 pad bytes, two u32 axis sizes
    (second is 0 for 1-D fields).
    """
    sizes = list(f.grid.sizes) + [0] * (2 - f.grid.dim)
    header = struct.pack("<4sB3xII", _MAGIC, f.grid.dim, *sizes)
    body = np.empty(f.values.size * 2, dtype="<f8")
    flat = f.values.ravel()
    body[0::2] = flat.real
    body[1::2] = flat.imag
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(body.tobytes())


def read_field(path) -> Field:
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 16:
        raise ValueError("truncated field header")
    magic, dim, n0, n1 = struct.unpack("<4sB3xII", data[:16])
    if magic != _MAGIC:
        raise ValueError("not a PELF field file")
    sizes = (n0,) if dim == 1 else (n0, n1)
    grid = TorusGrid(sizes)
    body = np.frombuffer(data[16:], dtype="<f8")
    if body.size != 2 * int(np.prod(sizes)):
        raise ValueError("field size does not match header")
    vals = (body[0::2] + 1j * body[1::2]).reshape(sizes)
    return Field(grid, vals)


def field_to_json(f: Field) -> str:
    vals = [[float(z.real), float(z.imag)] for z in f.values.ravel()]
    return json.dumps({"dim": f.grid.dim, "sizes": list(f.grid.sizes), "values": vals})


def field_from_json(text: str) -> Field:
    d = json.loads(text)
    grid = TorusGrid(tuple(d["sizes"]))
    if int(d.get("dim", grid.dim)) != grid.dim:
        raise ValueError("dim does not match sizes")
    v = np.asarray(d["values"], dtype=float)
    if v.ndim != 2 or v.shape[1] != 2:
        raise ValueError("values must be a list of [re, im] pairs")
    return Field(grid, (v[:, 0] + 1j * v[:, 1]).reshape(grid.sizes))
