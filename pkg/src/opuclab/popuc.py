"""Paraorthogonal polynomials: evaluation, zeros, labeling, clock statistics.

Zeros of ``H_n = z phi_{n-1} - conj(beta) phi*_{n-1}`` are found by phase
tracking.  On the circle ``b(theta) = e^{i theta} phi_{n-1} / phi*_{n-1}``
is a finite Blaschke product of degree ``n``, so its continuous argument
increases strictly, by ``2 pi n`` per revolution, and the zeros are the
points where that argument meets ``arg conj(beta)`` modulo ``2 pi``.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _backend
from .coeffs import VerblunskySequence, normalize_angle
from .errors import (BracketingError, OracleUnavailable, ValidationError,
                     VerificationError)

TWO_PI = 2.0 * math.pi
_BETA_TOL = 1e-8
_TIE_TOL = 1e-13  # relative phase tolerance for Theta sitting on a zero


def _unit(beta) -> complex:
    beta = complex(beta)
    r = abs(beta)
    if abs(r - 1.0) > _BETA_TOL:
        raise ValidationError(f"beta must lie on the unit circle, got |beta| = {r!r}")
    return beta / r


@dataclass(frozen=True)
class ParaPolySpec:
    seq: VerblunskySequence
    n: int
    beta: complex = 1 + 0j

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("paraorthogonal degree must be >= 1")
        object.__setattr__(self, "beta", _unit(self.beta))

    @property
    def target_phase(self) -> float:
        """``arg conj(beta)``."""
        return -math.atan2(self.beta.imag, self.beta.real)


class BetaRule:
    """Boundary parameter ``beta_{n-1}`` as a function of the degree ``n``.

    ``BetaRule.constant(1)``, ``BetaRule.per_n({4: 1j, 5: -1})`` and
    ``BetaRule.random(seed)`` are the constructors.
    """

    def __init__(self, kind, value=1 + 0j, table=None, seed=0):
        self.kind = kind
        self.value = _unit(value) if kind == "constant" else None
        self.table = {int(k): _unit(v) for k, v in (table or {}).items()}
        self.seed = int(seed)

    @classmethod
    def constant(cls, beta=1 + 0j):
        return cls("constant", value=beta)

    @classmethod
    def per_n(cls, table):
        return cls("per_n", table=table)

    @classmethod
    def random(cls, seed):
        return cls("random", seed=seed)

    def __call__(self, n: int) -> complex:
        if self.kind == "constant":
            return self.value
        if self.kind == "per_n":
            try:
                return self.table[n]
            except KeyError:
                raise ValidationError(f"beta rule has no entry for n = {n}") from None
        rng = np.random.default_rng([self.seed, n])
        return complex(np.exp(2j * np.pi * rng.random()))

    def describe(self) -> str:
        if self.kind == "constant":
            return f"constant({self.value.real!r},{self.value.imag!r})"
        if self.kind == "random":
            return f"random(seed={self.seed})"
        return "per_n"


def para_eval(spec: ParaPolySpec, z):
    """``H_n(z) = z phi_{n-1}(z) - conj(beta) phi*_{n-1}(z)``."""
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    pos, val = spec.seq.compressed(spec.n - 1)
    st = _backend.final_state(pos, val, spec.n - 1, z)
    h = z * st[0] - np.conj(spec.beta) * st[1]
    return complex(h[0]) if scalar else h


# -- phase tracking -----------------------------------------------------------

class _Phase:
    """Lifted phase of ``b(theta)`` and its derivative for one spec.

    The lift is exact (no unwrapping of sampled values), so the phase is
    monotone even across resonances far narrower than any sampling grid.
    """

    def __init__(self, spec: ParaPolySpec):
        self.n = spec.n
        self.pos, self.val = spec.seq.compressed(spec.n - 1)
        self.evaluations = 0

    def __call__(self, theta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        self.evaluations += theta.size
        return _backend.lifted_phase(self.pos, self.val, self.n - 1, theta)


def _refine(phase, lo, hi, targets, maxiter=200):
    """Solve ``Phi(theta) = target`` in each bracket ``[lo, hi]``.

    Safeguarded Newton: a step leaving the current bracket is replaced by
    bisection, so convergence never depends on the initial guess.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    targets = np.asarray(targets, dtype=float)
    x = 0.5 * (lo + hi)
    active = np.ones(len(x), dtype=bool)
    for _ in range(maxiter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        p, dp = phase(x[idx])
        r = p - targets[idx]
        hit = r == 0.0
        below = r < 0.0
        lo[idx[below]] = x[idx[below]]
        hi[idx[~below]] = x[idx[~below]]
        step = r / dp
        nx = x[idx] - step
        bad = ~((nx > lo[idx]) & (nx < hi[idx])) | ~np.isfinite(nx)
        nx[bad] = 0.5 * (lo[idx[bad]] + hi[idx[bad]])
        tol = 4e-16 * np.maximum(1.0, np.abs(x[idx]))
        done = hit | ((np.abs(step) <= tol) & ~bad) | (hi[idx] - lo[idx] <= tol)
        x[idx[~hit]] = nx[~hit]
        active[idx[done]] = False
    return x


def find_zeros(spec: ParaPolySpec, density=8, verify=True) -> np.ndarray:
    """All ``n`` zeros of ``H_n`` as sorted angles in ``[0, 2 pi)``.

    The lifted phase is sampled on ``density * n`` points to bracket each
    crossing of ``arg conj(beta) + 2 pi k``; each bracket is then refined.
    """
    n = spec.n
    phase = _Phase(spec)
    thetas = np.linspace(0.0, TWO_PI, max(16, density * n) + 1)
    lifted, dp = phase(thetas)
    if abs(lifted[-1] - lifted[0] - TWO_PI * n) > 1e-6 * n or not np.all(dp > 0.0):
        raise BracketingError(
            f"lifted phase winds {(lifted[-1] - lifted[0]) / TWO_PI:.9g} times, expected {n}",
            interval=(0.0, TWO_PI))
    mono = np.maximum.accumulate(lifted)
    t0 = spec.target_phase
    # targets in [Phi(0), Phi(0) + 2 pi n): one per zero in [0, 2 pi)
    first = t0 + TWO_PI * math.ceil((lifted[0] - t0) / TWO_PI)
    targets = first + TWO_PI * np.arange(n)
    k = np.clip(np.searchsorted(mono, targets, side="left"), 1, len(thetas) - 1)
    roots = _refine(phase, thetas[k - 1], thetas[k], targets)
    roots[targets == lifted[0]] = 0.0
    if verify:
        _verify(spec, phase, roots, targets)
    roots = np.mod(roots, TWO_PI)
    roots[roots >= TWO_PI] -= TWO_PI
    roots.sort()
    return roots


def _verify(spec, phase, roots, targets, delta=1e-11, tol=1e-8):
    """Certify each root: the phase meets its target at the root, or
    crosses it within ``delta``; the roots are ``n`` distinct angles."""
    n = spec.n
    if len(roots) != n:
        raise VerificationError(f"expected {n} zeros, found {len(roots)}")
    p, _ = phase(roots)
    pl, _ = phase(roots - delta)
    ph, _ = phase(roots + delta)
    ok = (np.abs(p - targets) <= tol) | ((pl - targets <= tol) & (ph - targets >= -tol))
    if not ok.all():
        i = int(np.argmin(ok))
        raise VerificationError(f"zero near {roots[i]!r} not certified by its phase bracket")
    if n > 1:
        z = np.sort(np.mod(roots, TWO_PI))
        gaps = np.diff(np.concatenate([z, [z[0] + TWO_PI]]))
        if gaps.min() <= 0.0:
            raise VerificationError("zeros are not simple (nonpositive gap)")


def local_zeros(spec: ParaPolySpec, Theta: float, j_min: int, j_max: int) -> dict:
    """Labeled zeros ``theta_j(Theta)`` for ``j_min <= j <= j_max`` only.

    Cost is independent of ``n`` for sparse sequences: the lifted phase at
    ``Theta`` fixes every label, and each zero is bracketed within one turn.
    Angles are returned in the lift around ``Theta``.
    """
    n = spec.n
    if j_min > 0 or j_max < -1:
        raise ValidationError("label range must straddle Theta (include j = -1 or 0)")
    phase = _Phase(spec)
    p0, _ = phase([Theta])
    p0 = float(p0[0])
    t0 = spec.target_phase
    tau0 = t0 + TWO_PI * math.ceil((p0 - t0) / TWO_PI)  # smallest target >= Phi(Theta)
    on_zero = p0 - (tau0 - TWO_PI) <= _TIE_TOL * max(1.0, abs(p0)) or tau0 == p0
    if on_zero and tau0 != p0:
        tau0 -= TWO_PI  # Theta is a zero up to rounding: it carries label 0
    js = np.arange(j_min, j_max + 1)
    targets = tau0 + TWO_PI * js
    # theta_j lies in the turn [Theta, Theta + 2 pi) shifted by j // n turns
    lo = Theta + TWO_PI * np.floor_divide(js, n)
    hi = lo + TWO_PI
    roots = _refine(phase, lo, hi, targets)
    if on_zero:
        roots[js == 0] = Theta
    if -1 in js and roots[js == -1][0] >= Theta:
        raise VerificationError("labeling violated: theta_-1 >= Theta")
    return {int(j): float(r) for j, r in zip(js, roots)}


# -- labeling -------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroLabeling:
    """Zeros labeled around ``Theta``: ``theta(-1) < Theta <= theta(0)``.

    ``zeros`` are the sorted angles in ``[0, 2 pi)``; ``theta(j)`` returns
    the lifted angle, with ``theta(j + n) = theta(j) + 2 pi``.
    """

    Theta: float
    zeros: np.ndarray
    first: int
    shift: float

    @property
    def n(self) -> int:
        return len(self.zeros)

    def theta(self, j: int) -> float:
        q, r = divmod(self.first + j, self.n)
        return float(self.zeros[r] + TWO_PI * q + self.shift)

    __getitem__ = theta

    def gap(self, j: int) -> float:
        return self.theta(j + 1) - self.theta(j)


def label_zeros(zeros: Sequence[float], Theta: float) -> ZeroLabeling:
    zs = np.sort(np.mod(np.asarray(zeros, dtype=float), TWO_PI))
    zs[zs >= TWO_PI] -= TWO_PI
    if zs.size == 0:
        raise ValidationError("cannot label an empty zero set")
    base = normalize_angle(Theta)
    shift = Theta - base
    first = bisect.bisect_left(zs.tolist(), base)
    return ZeroLabeling(float(Theta), zs, first, shift)


# -- certification helpers ----------------------------------------------------

def _probe_angles(spec, count):
    """Angles where ``b(theta) = conj(beta) e^{i s}`` with ``s`` in
    ``[pi/2, 3 pi/2)``, so ``|H_n| >= sqrt(2) |phi_{n-1}|``.

    The offsets ``s`` differ from probe to probe: at a common offset the
    ratio of two paraorthogonal polynomials is the same at every probe, and
    the spread could not tell a true zero from a false one.
    """
    n = spec.n
    phase = _Phase(spec)
    p0, _ = phase([0.0])
    ks = np.unique(np.linspace(0, n - 1, min(count, n)).astype(int))
    offsets = math.pi * (0.5 + np.mod(0.6180339887498949 * np.arange(len(ks)), 1.0))
    p0 = float(p0[0])
    targets = spec.target_phase + TWO_PI * ks + offsets
    # one turn of theta advances the phase by 2 pi n
    targets = p0 + np.mod(targets - p0, TWO_PI * n)
    return _refine(phase, np.zeros(len(ks)), np.full(len(ks), TWO_PI), targets)


def crosscheck_factorization(spec: ParaPolySpec, zeros, probes=16) -> float:
    """Largest relative spread of ``H_n(z) / ((z - z0) K_n(z, z0))`` over
    probe points, taken over every zero ``z0``.
    """
    zeros = np.sort(np.asarray(zeros, dtype=float))
    n = spec.n
    probe = np.exp(1j * _probe_angles(spec, probes))
    z0 = np.exp(1j * zeros)
    zz = np.tile(probe, len(z0))
    ww = np.repeat(z0, len(probe))
    pos, val = spec.seq.compressed(n - 1)
    k = _backend.kernel_sum(pos, val, n, zz, ww)
    h = np.tile(para_eval(spec, probe), len(z0))
    den = (zz - ww) * k
    # a probe can coincide with a zero inside a very narrow resonance
    usable = np.abs(zz - ww) > 1e-12
    ratio = np.full(den.shape, np.nan, dtype=np.complex128)
    ratio[usable] = h[usable] / den[usable]
    ratio = ratio.reshape(len(z0), len(probe))
    mean = np.nanmean(ratio, axis=1)
    spread = np.nanmax(np.abs(ratio - mean[:, None]), axis=1) / np.abs(mean)
    return float(spread.max())


def zero_vectors(spec: ParaPolySpec, zeros) -> np.ndarray:
    """Rows ``(phi_0(z'), ..., phi_{n-1}(z'))`` for each zero ``z'``."""
    pos, val = spec.seq.compressed(spec.n - 1)
    return np.array([_backend.trajectory(pos, val, spec.n - 1, complex(np.exp(1j * t)))[0]
                     for t in zeros])


def orthogonality_defect(spec: ParaPolySpec, zeros) -> float:
    """Largest normalized inner product between distinct zero vectors."""
    v = zero_vectors(spec, zeros)
    gram = v @ v.conj().T
    norms = np.sqrt(np.abs(np.diag(gram)))
    g = np.abs(gram) / np.outer(norms, norms)
    np.fill_diagonal(g, 0.0)
    return float(g.max()) if len(zeros) > 1 else 0.0


def cmv_matrix(spec: ParaPolySpec) -> np.ndarray:
    """Matrix of the truncated multiplication operator in the basis
    ``phi_0 .. phi_{n-1}``: column ``l`` holds the coordinates of
    ``z phi_l`` for ``l < n - 1`` and of ``conj(beta) phi*_{n-1}`` last.
    """
    n = spec.n
    a = np.empty(n, dtype=np.complex128)
    a[: n - 1] = spec.seq.prefix(n - 1)
    a[n - 1] = spec.beta
    rho = np.sqrt((1.0 - np.abs(a[: n - 1])) * (1.0 + np.abs(a[: n - 1])))
    logp = np.concatenate([[0.0], np.cumsum(np.log(rho))])  # logp[i] = sum_{j<i} log rho_j
    a_prev = np.concatenate([[-1.0 + 0j], a[: n - 1]])       # alpha_{k-1}, alpha_{-1} = -1
    k = np.arange(n)[:, None]
    l = np.arange(n)[None, :]
    upper = k <= l
    prod = np.exp(np.where(upper, logp[np.minimum(l, n - 1)] - logp[np.minimum(k, n - 1)], -np.inf))
    g = np.where(upper, -np.conj(a)[None, :] * a_prev[:, None] * prod, 0.0)
    sub = np.arange(n - 1)
    g[sub + 1, sub] = rho
    return g


def cmv_eigenvalues(spec: ParaPolySpec, cap=512) -> np.ndarray:
    if spec.n > cap:
        raise OracleUnavailable(f"oracle capped at n = {cap}")
    try:
        return np.linalg.eigvals(cmv_matrix(spec))
    except np.linalg.LinAlgError as exc:
        raise OracleUnavailable(str(exc)) from None


def cmv_zero_oracle(spec: ParaPolySpec, cap=512) -> np.ndarray:
    """Independent zero angles from the eigenvalues of the truncation."""
    ang = np.mod(np.angle(cmv_eigenvalues(spec, cap)), TWO_PI)
    ang[ang >= TWO_PI] -= TWO_PI
    return np.sort(ang)


def _wrap(x):
    """Map to ``(-pi, pi]``."""
    return np.pi - np.mod(np.pi - x, TWO_PI)


def circular_distance(x, y) -> float:
    """Max distance between two sorted angle sets, robust to the 0/2pi seam."""
    x = np.sort(np.mod(x, TWO_PI))
    y = np.sort(np.mod(y, TWO_PI))
    if len(x) != len(y):
        return math.inf
    best = math.inf
    for shift in (-1, 0, 1):
        yy = np.roll(y, shift)
        d = np.abs(_wrap(x - yy)).max()
        best = min(best, d)
    return float(best)


# -- clock ----------------------------------------------------------------------

@dataclass(frozen=True)
class SpacingReport:
    n: int
    Theta: float
    j: int
    gap: float
    normalized_gap: float
    lower_bound: float | None
    deviation: float


def clock_statistic(seq: VerblunskySequence, beta_rule: BetaRule, Theta: float, j: int,
                    n_list: Sequence[int]) -> list:
    """Normalized gaps ``n (theta_{j+1} - theta_j)`` labeled at ``Theta``."""
    out = []
    for n in n_list:
        spec = ParaPolySpec(seq, int(n), beta_rule(int(n)))
        th = local_zeros(spec, Theta, min(j, -1), max(j + 1, 0))
        gap = th[j + 1] - th[j]
        out.append(SpacingReport(int(n), Theta, j, gap, n * gap, None, abs(n * gap - TWO_PI)))
    return out
