"""Christoffel-Darboux kernels and the sine-kernel error functional."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _backend
from ._parallel import chunked
from ._pycore import _cexpm1
from .coeffs import VerblunskySequence
from .errors import ValidationError

TWO_PI = 2.0 * math.pi
_SERIES_CUTOFF = 1e-8


@dataclass(frozen=True)
class RescaledPair:
    theta: float
    a: complex
    b: complex
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("rescaled pair needs n >= 1")
        if not (abs(complex(self.a).imag) < 0.5 and abs(complex(self.b).imag) < 0.5):
            raise ValidationError("a and b must lie in the strip |Im| < 1/2")

    @property
    def z(self) -> complex:
        return complex(np.exp(1j * (self.theta + TWO_PI * complex(self.a) / self.n)))

    @property
    def w(self) -> complex:
        return complex(np.exp(1j * (self.theta + TWO_PI * complex(self.b) / self.n)))

    @property
    def log_zw(self) -> complex:
        """``log(z * conj(w))``, exact in terms of ``a`` and ``b``."""
        return 2j * math.pi * (complex(self.a) - complex(self.b).conjugate()) / self.n


@dataclass(frozen=True)
class KernelValue:
    n: int
    z: complex
    w: complex
    value: complex


@dataclass(frozen=True)
class Grid:
    """Finite probe set: angles times ``(a, b)`` pairs."""

    thetas: tuple
    pairs: tuple

    def __post_init__(self):
        if not self.thetas or not self.pairs:
            raise ValidationError("grid must have at least one angle and one pair")
        for a, b in self.pairs:
            if not (abs(complex(a).imag) < 0.5 and abs(complex(b).imag) < 0.5):
                raise ValidationError(f"pair {(a, b)} leaves the strip |Im| < 1/2")

    @property
    def a(self) -> np.ndarray:
        return np.array([p[0] for p in self.pairs], dtype=np.complex128)

    @property
    def b(self) -> np.ndarray:
        return np.array([p[1] for p in self.pairs], dtype=np.complex128)

    def to_dict(self) -> dict:
        return {
            "thetas": [float(t) for t in self.thetas],
            "pairs": [[complex(a).real, complex(a).imag, complex(b).real, complex(b).imag]
                      for a, b in self.pairs],
        }

    @classmethod
    def from_dict(cls, d) -> "Grid":
        try:
            pairs = tuple((complex(p[0], p[1]), complex(p[2], p[3])) for p in d["pairs"])
            return cls(tuple(float(t) for t in d["thetas"]), pairs)
        except (KeyError, IndexError, TypeError) as exc:
            raise ValidationError(f"malformed grid: {exc}") from None

    @classmethod
    def load(cls, path) -> "Grid":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def default_grid() -> Grid:
    """64 angles; 5x5 real pairs on [-2, 2]^2 plus four pairs off the axis."""
    thetas = tuple(TWO_PI * i / 64 for i in range(64))
    reals = np.linspace(-2.0, 2.0, 5)
    pairs = [(complex(a), complex(b)) for a in reals for b in reals]
    pairs += [(0.25j, 0.25j), (-0.25j, -0.25j), (1 + 0.25j, -0.25j), (-1 - 0.25j, 0.25j)]
    return Grid(thetas, tuple(pairs))


def cd_kernel(seq: VerblunskySequence, n: int, z, w) -> KernelValue:
    """``K_n(z, w) = sum_{k<n} phi_k(z) conj(phi_k(w))``."""
    if n < 1:
        raise ValidationError("kernel needs n >= 1")
    pos, val = seq.compressed(n - 1)
    v = _backend.kernel_sum(pos, val, n, np.array([complex(z)]), np.array([complex(w)]))
    return KernelValue(n, complex(z), complex(w), complex(v[0]))


def cd_kernel_many(seq, n, z, w, logq=None) -> np.ndarray:
    pos, val = seq.compressed(n - 1)
    z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    w = np.atleast_1d(np.asarray(w, dtype=np.complex128))
    if logq is None:
        return chunked(lambda zz, ww: _backend.kernel_sum(pos, val, n, zz, ww), z, w)
    lq = np.broadcast_to(np.asarray(logq, dtype=np.complex128), z.shape).copy()
    return chunked(lambda zz, ww, qq: _backend.kernel_sum(pos, val, n, zz, ww, qq), z, w, lq)


def lebesgue_ratio(n, a, b):
    """``(1/n) (1 - e^{2 pi i d}) / (1 - e^{2 pi i d / n})`` with
    ``d = a - conj(b)``; removable points are handled by a series branch."""
    scalar = np.ndim(a) == 0 and np.ndim(b) == 0
    d = np.atleast_1d(np.asarray(a, dtype=np.complex128) - np.conj(np.asarray(b, dtype=np.complex128)))
    m = np.round(d.real / n)
    resid = d - n * m
    near = np.abs(resid) < _SERIES_CUTOFF
    out = np.empty(d.shape, dtype=np.complex128)
    t = 2j * np.pi * resid[near] / n
    out[near] = 1.0 + 0.5 * (n - 1) * t + (n - 1) * (2 * n - 1) / 12.0 * t * t
    # both exponentials are 2*pi*i-periodic: reduce before expm1
    dd = d[~near]
    top = _cexpm1(2j * np.pi * (dd - np.round(dd.real)))
    bottom = _cexpm1(2j * np.pi * resid[~near] / n)
    out[~near] = top / (n * bottom)
    return complex(out[0]) if scalar else out


def sine_kernel(a, b):
    """``e^{i pi d} sin(pi d) / (pi d)`` with ``d = a - conj(b)``; 1 at d = 0."""
    scalar = np.ndim(a) == 0 and np.ndim(b) == 0
    d = np.atleast_1d(np.asarray(a, dtype=np.complex128) - np.conj(np.asarray(b, dtype=np.complex128)))
    x = np.pi * d
    out = np.empty(d.shape, dtype=np.complex128)
    near = np.abs(d) < _SERIES_CUTOFF
    out[near] = 1.0 - x[near] ** 2 / 6.0
    out[~near] = np.sin(x[~near]) / x[~near]
    out *= np.exp(1j * x)
    return complex(out[0]) if scalar else out


def kernel_ratio_parts(seq, n, thetas, a, b):
    """Numerators ``K_n(z_n, w_n)`` of shape ``(len(thetas), len(a))`` and
    the diagonal denominators ``K_n(e^{i theta}, e^{i theta})`` per angle.

    The two are returned separately so one diagonal sum serves every pair.
    """
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    a = np.atleast_1d(np.asarray(a, dtype=np.complex128))
    b = np.atleast_1d(np.asarray(b, dtype=np.complex128))
    th = np.repeat(thetas, len(a))
    aa = np.tile(a, len(thetas))
    bb = np.tile(b, len(thetas))
    z = np.exp(1j * (th + TWO_PI * aa / n))
    w = np.exp(1j * (th + TWO_PI * bb / n))
    lq = 2j * np.pi * (aa - np.conj(bb)) / n
    num = cd_kernel_many(seq, n, z, w, lq).reshape(len(thetas), len(a))
    e = np.exp(1j * thetas)
    den = cd_kernel_many(seq, n, e, e, np.zeros(len(thetas))).real
    return num, den


def kernel_ratio(seq, n, pair: RescaledPair) -> complex:
    num, den = kernel_ratio_parts(seq, n, [pair.theta], [pair.a], [pair.b])
    return complex(num[0, 0] / den[0])


def sine_error(seq: VerblunskySequence, n: int, pair: RescaledPair) -> float:
    """``|K_n(z_n, w_n) / K_n(e^{i theta}, e^{i theta}) - sine_kernel(a, b)|``."""
    return abs(kernel_ratio(seq, n, pair) - sine_kernel(pair.a, pair.b))


def sine_error_grid(seq: VerblunskySequence, n: int, grid: Grid) -> np.ndarray:
    """Errors of shape ``(len(grid.thetas), len(grid.pairs))``."""
    num, den = kernel_ratio_parts(seq, n, grid.thetas, grid.a, grid.b)
    return np.abs(num / den[:, None] - sine_kernel(grid.a, grid.b)[None, :])


def sup_sine_error(seq: VerblunskySequence, n: int, grid: Grid) -> float:
    if grid is None:
        raise ValidationError("empty grid")
    return float(sine_error_grid(seq, n, grid).max())


def finite_perturbation_gap(seq: VerblunskySequence, last_position: int, n: int,
                            grid: Grid) -> np.ndarray:
    """``|K_n(z_n, w_n) / (n |phi_{N+1}(e^{i theta})|^2) - lebesgue_ratio|``
    over the grid, where ``N = last_position`` is the final perturbed index."""
    num, _ = kernel_ratio_parts(seq, n, grid.thetas, grid.a, grid.b)
    e = np.exp(1j * np.asarray(grid.thetas))
    pos, val = seq.compressed(last_position + 1)
    phi = _backend.final_state(pos, val, last_position + 1, e)[0]
    scale = n * np.abs(phi) ** 2
    return np.abs(num / scale[:, None] - lebesgue_ratio(n, grid.a, grid.b)[None, :])
