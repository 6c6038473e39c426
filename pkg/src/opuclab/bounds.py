"""Spacing lower bound, the A_n operator, and exponent diagnostics."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _backend
from .coeffs import VerblunskySequence
from .errors import ValidationError
from .popuc import TWO_PI, BetaRule, ParaPolySpec, local_zeros


def transfer_sum(seq: VerblunskySequence, n: int, Theta: float, frobenius=False,
                 compensated=False) -> float:
    """``sum_{k<n} ||T_k(e^{i Theta})||^2``."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    pos, val = seq.compressed(n)
    z = np.array([complex(math.cos(Theta), math.sin(Theta))])
    return float(_backend.norm_sums(pos, val, n, z, frobenius, compensated)[2, 0])


def spacing_lower_bound(seq: VerblunskySequence, n: int, Theta: float,
                        frobenius=False, compensated=False) -> float:
    """Lower bound ``1 / sum_{k<n} ||T_k||^2`` on ``theta_0 - theta_{-1}``."""
    return 1.0 / transfer_sum(seq, n, Theta, frobenius, compensated)


def an_matrix_at(seq: VerblunskySequence, n: int, z) -> np.ndarray:
    """Strictly lower-triangular ``A_n(z)``; entry ``(k, m)``, ``m < k``, is
    ``(phi_m^dag psi_k - phi_k psi_m^dag) / (2 z^{m+1})``."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    z = complex(z)
    pos, val = seq.compressed(n)
    phi, phid, psi, psid = _backend.trajectory(pos, val, n - 1, z)
    m = np.arange(n)
    scale = 1.0 / (2.0 * z ** (m + 1))
    a = (np.outer(psi, phid * scale) - np.outer(phi, psid * scale))
    return np.tril(a, -1)


def an_matrix(seq: VerblunskySequence, n: int, Theta: float) -> np.ndarray:
    return an_matrix_at(seq, n, complex(math.cos(Theta), math.sin(Theta)))


def hs_norm(a: np.ndarray) -> float:
    return float(np.sqrt(np.sum(np.abs(a) ** 2)))


def operator_norm(a: np.ndarray, maxiter=200, tol=1e-10) -> float:
    """Largest singular value by power iteration on ``A^H A``."""
    if a.size == 0:
        return 0.0
    rng = np.random.default_rng(0)
    v = rng.standard_normal(a.shape[1]) + 1j * rng.standard_normal(a.shape[1])
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(maxiter):
        w = a.conj().T @ (a @ v)
        new = float(np.linalg.norm(w))
        if new == 0.0:
            return 0.0
        v = w / new
        if abs(new - lam) <= tol * new:
            lam = new
            break
        lam = new
    return math.sqrt(lam)


def nearest_gap(spec: ParaPolySpec, Theta: float) -> float:
    """``theta_0(Theta) - theta_{-1}(Theta)``."""
    if spec.n == 1:
        return TWO_PI
    th = local_zeros(spec, Theta, -1, 0)
    return th[0] - th[-1]


@dataclass(frozen=True)
class BoundCertificate:
    n: int
    Theta: float
    beta: complex
    bound: float
    gap: float
    slack: float
    sum_tk2: float
    hs_norm: float | None
    op_norm: float | None

    @property
    def chain_ok(self) -> bool:
        if self.hs_norm is None:
            return True
        tol = 1e-9 * self.sum_tk2
        return self.op_norm <= self.hs_norm * (1 + 1e-9) and self.hs_norm <= self.sum_tk2 + tol

    @property
    def valid(self) -> bool:
        return self.slack >= -1e-10 and self.chain_ok


def bound_certificate(seq: VerblunskySequence, n: int, beta, Theta: float,
                      matrix_cap=2048, frobenius=False) -> BoundCertificate:
    """Bound versus measured gap at ``Theta``; the ``A_n`` norms are included
    when ``n <= matrix_cap``."""
    spec = ParaPolySpec(seq, n, beta)
    s = transfer_sum(seq, n, Theta, frobenius)
    gap = nearest_gap(spec, Theta)
    hs = op = None
    if n <= matrix_cap:
        a = an_matrix(seq, n, Theta)
        hs, op = hs_norm(a), operator_norm(a)
    return BoundCertificate(n, float(Theta), spec.beta, 1.0 / s, gap, gap - 1.0 / s, s, hs, op)


@dataclass(frozen=True)
class ExponentDiagnostic:
    """Finite-horizon proxies for the two sequences entering the
    dimension argument; ``horizon`` is the largest ``n`` used."""

    Theta: float
    gamma: float
    n: tuple
    scaled_gap: tuple   # n^gamma (theta_0 - theta_{-1})
    scaled_sum: tuple   # n^{-gamma} sum_{k<n} ||T_k||^2
    liminf_gap: float   # running minimum of scaled_gap over the range
    limsup_sum: float   # running maximum of scaled_sum over the range

    @property
    def horizon(self) -> int:
        return max(self.n)


def _check_schedule(n_list):
    ns = [int(n) for n in n_list]
    if not ns or any(n < 1 for n in ns):
        raise ValidationError("n schedule must be nonempty with every n >= 1")
    return ns


def exponent_diagnostic(seq: VerblunskySequence, beta_rule: BetaRule, Theta: float,
                        gamma: float, n_list: Sequence[int]) -> ExponentDiagnostic:
    if not gamma > 1.0:
        raise ValidationError("gamma must exceed 1")
    ns = _check_schedule(n_list)
    gaps, sums = [], []
    for n in ns:
        g = nearest_gap(ParaPolySpec(seq, n, beta_rule(n)), Theta)
        gaps.append(n ** gamma * g)
        sums.append(n ** (-gamma) * transfer_sum(seq, n, Theta))
    return ExponentDiagnostic(float(Theta), float(gamma), tuple(ns), tuple(gaps), tuple(sums),
                              min(gaps), max(sums))


def ac_limsup_probe(seq: VerblunskySequence, beta_rule: BetaRule, Theta: float,
                    n_list: Sequence[int]) -> np.ndarray:
    """Normalized nearest gaps ``n (theta_0 - theta_{-1})``."""
    ns = _check_schedule(n_list)
    return np.array([n * nearest_gap(ParaPolySpec(seq, n, beta_rule(n)), Theta) for n in ns])
