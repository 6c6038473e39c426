"""Pointwise identities and inequalities of the Szegő recursion, as checks.

Each check returns an :class:`IdentityCheck` holding the worst observed
excess over its tolerance budget, so a suite can report every failure
rather than stopping at the first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .coeffs import VerblunskySequence
from .recurrence import transfer

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    worst: float      # largest measured defect
    tolerance: float  # what the defect is compared against
    samples: int
    strict: bool = False

    @property
    def passed(self) -> bool:
        if self.strict:
            return self.worst < self.tolerance
        return self.worst <= self.tolerance


def check_determinant(seq: VerblunskySequence, n: int, thetas) -> IdentityCheck:
    """``|det T_n(z) - z^n| <= 1e-10 n`` on the circle."""
    worst = 0.0
    for t in np.atleast_1d(thetas):
        z = complex(math.cos(t), math.sin(t))
        worst = max(worst, abs(transfer(seq, n, z).det() - z ** n))
    return IdentityCheck("det", worst, 1e-10 * max(n, 1), len(np.atleast_1d(thetas)))


def check_modulus(seq: VerblunskySequence, n: int, thetas) -> IdentityCheck:
    """``| |phi_k| - |phi_k^dag| | <= 1e-10 (1 + |phi_k|)`` for ``k <= n``.

    The defect is reported already divided by ``1 + |phi_k|``.
    """
    pos, val = seq.compressed(n)
    worst = 0.0
    thetas = np.atleast_1d(thetas)
    for t in thetas:
        tr = _backend.trajectory(pos, val, n, complex(math.cos(t), math.sin(t)))
        a, b = np.abs(tr[0]), np.abs(tr[1])
        worst = max(worst, float((np.abs(a - b) / (1.0 + a)).max()))
    return IdentityCheck("modulus", worst, 1e-10, len(thetas))


def check_norm_inequality(seq: VerblunskySequence, n: int, thetas) -> IdentityCheck:
    """``|phi_k| <= sqrt((1 + |a_k|) / (1 - |a_k|)) |phi_{k+1}|`` for ``k < n``.

    The defect is the excess of the left side over the right, relative to
    the right side.
    """
    pos, val = seq.compressed(n)
    alpha = np.abs(seq.prefix(n))
    factor = np.sqrt((1.0 + alpha) / (1.0 - alpha))
    worst = -math.inf
    thetas = np.atleast_1d(thetas)
    for t in thetas:
        mod = np.abs(_backend.trajectory(pos, val, n, complex(math.cos(t), math.sin(t)))[0])
        rhs = factor * mod[1:]
        worst = max(worst, float(((mod[:-1] - rhs) / rhs).max()))
    return IdentityCheck("normineq", max(worst, 0.0), 1e-10, len(thetas))


def check_power_bound(n: int, theta: float, a, m) -> IdentityCheck:
    """``|z_n^m| < e^pi`` for ``z_n = e^{i(theta + 2 pi a / n)}``, ``|Im a| < 1/2``,
    ``0 <= m < n``; powers are taken of the computed point."""
    a = np.atleast_1d(np.asarray(a, dtype=np.complex128))
    m = np.atleast_1d(np.asarray(m))
    z = np.exp(1j * (theta + TWO_PI * a / n))
    mod = np.abs(z[:, None] ** m[None, :])
    return IdentityCheck("power-bound", float(mod.max()), math.exp(math.pi), mod.size, True)


def identity_suite(seq: VerblunskySequence, n: int, rng: np.random.Generator,
                   points=8) -> list:
    """All four checks at ``points`` random angles and sampled ``(a, m)``."""
    thetas = rng.uniform(0.0, TWO_PI, points)
    a = rng.uniform(-3.0, 3.0, points) + 1j * rng.uniform(-0.5, 0.5, points)
    m = rng.integers(0, max(n, 1), points)
    return [
        check_determinant(seq, n, thetas),
        check_modulus(seq, n, thetas),
        check_norm_inequality(seq, n, thetas),
        check_power_bound(max(n, 1), float(thetas[0]), a, m),
    ]
