"""First- and second-kind OPUC, transfer matrices and related sums.

All evaluation is pointwise and streams in ``n``.  The dagger convention is
used throughout: ``phi_dagger`` is the reversed polynomial ``phi^*`` and
``psi_dagger = -psi^*``; both names are available on :class:`PolyState`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from ._pycore import spectral_norm_sq
from .coeffs import VerblunskySequence
from .errors import ValidationError


@dataclass(frozen=True)
class PolyState:
    n: int
    z: complex
    phi: complex
    phi_dagger: complex
    psi: complex
    psi_dagger: complex

    @property
    def phi_star(self) -> complex:
        return self.phi_dagger

    @property
    def psi_star(self) -> complex:
        # reversed polynomial; the dagger solution carries the opposite sign
        return -self.psi_dagger

    @classmethod
    def boundary(cls, z) -> "PolyState":
        return cls(0, complex(z), 1 + 0j, 1 + 0j, 1 + 0j, -1 + 0j)


@dataclass(frozen=True)
class TransferMatrix:
    n: int
    z: complex
    entries: np.ndarray

    def det(self) -> complex:
        e = self.entries
        return complex(e[0, 0] * e[1, 1] - e[0, 1] * e[1, 0])


def rho(alpha) -> float:
    r = abs(alpha)
    return math.sqrt((1.0 - r) * (1.0 + r))


def szego_step(state: PolyState, alpha: complex) -> PolyState:
    """Advance both solutions of the Szegő system by one step."""
    if not abs(alpha) < 1.0:
        raise ValidationError(f"|alpha| must be < 1, got {alpha!r}")
    z = state.z
    r = rho(alpha)
    ac = complex(alpha).conjugate()
    return PolyState(
        state.n + 1, z,
        (z * state.phi - ac * state.phi_dagger) / r,
        (-z * alpha * state.phi + state.phi_dagger) / r,
        (z * state.psi - ac * state.psi_dagger) / r,
        (-z * alpha * state.psi + state.psi_dagger) / r,
    )


def evaluate(seq: VerblunskySequence, n: int, z) -> PolyState:
    """``(phi_n, phi_n^dagger, psi_n, psi_n^dagger)`` at the point ``z``."""
    if n < 0:
        raise ValidationError(f"n must be nonnegative, got {n}")
    pos, val = seq.compressed(n)
    out = _backend.final_state(pos, val, n, np.array([complex(z)]))
    return PolyState(n, complex(z), *(complex(v) for v in out[:, 0]))


def evaluate_many(seq: VerblunskySequence, n: int, z, deriv=False) -> np.ndarray:
    """Vectorized :func:`evaluate`; rows as in ``final_state``."""
    pos, val = seq.compressed(n)
    z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    return _backend.final_state(pos, val, n, z, deriv)


def values(seq: VerblunskySequence, n: int, z) -> np.ndarray:
    """Dense ``(4, n + 1)`` array of the four solutions for ``k = 0..n``."""
    pos, val = seq.compressed(n)
    return _backend.trajectory(pos, val, n, complex(z))


def _step_matrix(alpha, z):
    r = rho(alpha)
    return np.array([[z, -np.conj(alpha)], [-z * alpha, 1.0]], dtype=complex) / r


def transfer(seq: VerblunskySequence, n: int, z) -> TransferMatrix:
    """The product ``S_n ... S_1``, built directly from the step matrices."""
    z = complex(z)
    pos, val = seq.compressed(n)
    t = np.eye(2, dtype=complex)
    s = 0
    for p, a in zip(pos, val):
        m = int(p) - s
        if m > 0:
            t = np.diag([z ** m, 1.0]) @ t
        t = _step_matrix(a, z) @ t
        s = int(p) + 1
    if n - s > 0:
        t = np.diag([z ** (n - s), 1.0]) @ t
    return TransferMatrix(n, z, t)


def transfer_from_values(state: PolyState) -> TransferMatrix:
    """Transfer matrix reassembled from the two boundary-value solutions."""
    e = 0.5 * np.array([
        [state.phi + state.psi, state.phi - state.psi],
        [state.phi_dagger + state.psi_dagger, state.phi_dagger - state.psi_dagger],
    ])
    return TransferMatrix(state.n, state.z, e)


def spectral_norm(t) -> float:
    """Largest singular value of a 2x2 matrix (closed form)."""
    e = t.entries if isinstance(t, TransferMatrix) else np.asarray(t)
    return math.sqrt(float(spectral_norm_sq(e[0, 0], e[0, 1], e[1, 0], e[1, 1])))


def norm_profiles(seq: VerblunskySequence, n: int, z, compensated=False,
                  frobenius=False):
    """Return ``(||phi_.(z)||_n, ||psi_.(z)||_n, sum_{k<n} ||T_k(z)||^2)``."""
    if n < 1:
        raise ValidationError("norm profiles need n >= 1")
    pos, val = seq.compressed(n)
    s = _backend.norm_sums(pos, val, n, np.array([complex(z)]),
                           frobenius, compensated)[:, 0]
    return math.sqrt(s[0]), math.sqrt(s[1]), float(s[2])


def transfer_norm_sum(seq: VerblunskySequence, n: int, z, compensated=False,
                      frobenius=False) -> np.ndarray:
    """``sum_{k<n} ||T_k(z)||^2`` for an array of points."""
    pos, val = seq.compressed(n)
    z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    return _backend.norm_sums(pos, val, n, z, frobenius, compensated)[2]


@dataclass(frozen=True)
class VariationResult:
    predicted: np.ndarray
    predicted_dagger: np.ndarray
    actual: np.ndarray
    actual_dagger: np.ndarray

    def residual(self) -> float:
        """Largest relative deviation of either branch."""
        r1 = np.abs(self.predicted - self.actual) / np.maximum(1.0, np.abs(self.actual))
        r2 = (np.abs(self.predicted_dagger - self.actual_dagger)
              / np.maximum(1.0, np.abs(self.actual_dagger)))
        return float(max(r1.max(), r2.max()))


def variation_of_parameters(seq: VerblunskySequence, n: int, z, z2) -> VariationResult:
    """Predict the ``phi``-solution at ``z2`` from the solutions at ``z``.

    For each ``k <= n`` the prediction is ``w_k + (z2 - z) * sum_{m<k}
    (phi_m^dag psi_k - phi_k psi_m^dag) / (2 z^{m+1}) * w'_m`` with the true
    values ``w'_m = phi_m(z2)`` inside the sum; the dagger branch uses
    ``psi_k^dag`` and ``phi_k^dag`` in place of ``psi_k`` and ``phi_k``.
    """
    if n < 1:
        raise ValidationError("variation of parameters needs n >= 1")
    z, z2 = complex(z), complex(z2)
    here = values(seq, n, z)
    there = values(seq, n, z2)
    phi, phid, psi, psid = here
    m = np.arange(n + 1)
    c = there[0] / (2.0 * z ** (m + 1))
    # prefix sums over m < k
    s1 = np.concatenate([[0], np.cumsum(phid[:-1] * c[:-1])])
    s2 = np.concatenate([[0], np.cumsum(psid[:-1] * c[:-1])])
    dz = z2 - z
    pred = phi + dz * (psi * s1 - phi * s2)
    pred_d = phid + dz * (psid * s1 - phid * s2)
    return VariationResult(pred, pred_d, there[0], there[1])
