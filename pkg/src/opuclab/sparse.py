"""Constructive sparse sequences with certified sine-kernel levels.

Level ``l`` places ``v_l`` at position ``N_l``.  For the sequence truncated
after that position a scan over ``n`` finds the first ``N_hat_l`` at which
both conditions hold on the grid, at ``n`` and again at ``2 n``:

1. the sine-kernel error of the rescaled kernel ratio is at most ``tol(l)``;
2. the four ratios of ``|phi_{N_l + 1}|`` and ``|phi*_{N_l + 1}|`` at the
   rescaled points ``z_n, w_n`` to ``|phi_{N_l + 1}(e^{i theta})|`` are
   below ``cond2_bound``.

The next position is ``N_{l+1} = ceil(margin * N_hat_l)``.  Checking two
values of ``n`` stands in for "every ``n >= N_hat_l``"; certificates say so.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import _backend
from .coeffs import VerblunskySequence
from .errors import SparseBuildError, ValidationError
from .kernel import TWO_PI, Grid, default_grid, sup_sine_error

LIMITATION = "conditions checked at n and 2n only, not for every n >= N_hat"


@dataclass(frozen=True)
class SparseBuildConfig:
    values: tuple
    first_position: int = 10
    grid: Grid = field(default_factory=default_grid)
    tolerance_scale: float = 1.0   # condition 1 tolerance is scale / l, scale at l = 0
    cond2_bound: float = 2.0
    stride: float = 1.05           # geometric scan factor for candidate n
    cap: int = 1_000_000_000
    margin: float = 2.0

    def __post_init__(self):
        vals = tuple(complex(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise ValidationError("at least one level value is required")
        mags = [abs(v) for v in vals]
        if any(not 0.0 < m < 1.0 for m in mags):
            raise ValidationError("level values must satisfy 0 < |v| < 1")
        if any(b > a for a, b in zip(mags, mags[1:])):
            raise ValidationError("level values must be nonincreasing in modulus")
        if self.first_position < 0:
            raise ValidationError("first position must be nonnegative")
        if not self.tolerance_scale > 0.0 or not self.cond2_bound > 1.0:
            raise ValidationError("tolerances must be positive and cond2_bound > 1")
        if not self.stride > 1.0 or not self.margin >= 1.0:
            raise ValidationError("stride must exceed 1 and margin must be >= 1")

    def tolerance(self, level: int) -> float:
        return self.tolerance_scale / level if level >= 1 else self.tolerance_scale


@dataclass(frozen=True)
class SparseCertificate:
    level: int
    position: int        # N_l
    value: complex       # v_l
    n_hat: int           # certified N_hat_l
    next_position: int   # N_{l+1}
    probes: tuple        # (n, 2n)
    cond1: tuple         # max sine error per probe
    cond2: tuple         # max continuity ratio per probe
    tolerance: float
    cond2_bound: float
    grid: dict
    candidates: int = 0
    evaluations: int = 0
    seconds: float = 0.0

    @property
    def cond1_max(self) -> float:
        return max(self.cond1)

    @property
    def cond2_max(self) -> float:
        return max(self.cond2)

    @property
    def passed(self) -> bool:
        return (self.cond1_max <= self.tolerance and self.cond2_max < self.cond2_bound
                and self.next_position > self.n_hat > self.position)

    def to_dict(self, timing=True) -> dict:
        d = {
            "level": self.level,
            "position": self.position,
            "value": [self.value.real, self.value.imag],
            "n_hat": self.n_hat,
            "next_position": self.next_position,
            "probes": list(self.probes),
            "cond1": list(self.cond1),
            "cond2": list(self.cond2),
            "tolerance": self.tolerance,
            "cond2_bound": self.cond2_bound,
            "passed": self.passed,
            "limitation": LIMITATION,
            "grid": self.grid,
            "candidates": self.candidates,
            "evaluations": self.evaluations,
        }
        if timing:
            d["seconds"] = self.seconds
        return d

    @classmethod
    def from_dict(cls, d) -> "SparseCertificate":
        try:
            return cls(int(d["level"]), int(d["position"]), complex(*d["value"]),
                       int(d["n_hat"]), int(d["next_position"]), tuple(d["probes"]),
                       tuple(d["cond1"]), tuple(d["cond2"]), float(d["tolerance"]),
                       float(d["cond2_bound"]), d["grid"], int(d.get("candidates", 0)),
                       int(d.get("evaluations", 0)), float(d.get("seconds", 0.0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed certificate: {exc}") from None

    def dumps(self, timing=True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"

    def save(self, path, timing=True) -> None:
        Path(path).write_text(self.dumps(timing), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "SparseCertificate":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def _rescaled(grid: Grid, n: int):
    th = np.repeat(np.asarray(grid.thetas, dtype=float), len(grid.pairs))
    a = np.tile(grid.a, len(grid.thetas))
    b = np.tile(grid.b, len(grid.thetas))
    return th, np.exp(1j * (th + TWO_PI * a / n)), np.exp(1j * (th + TWO_PI * b / n))


def continuity_ratio(prefix: VerblunskySequence, position: int, n: int, grid: Grid) -> float:
    """Largest of the four condition-2 ratios over the grid."""
    m = position + 1
    pos, val = prefix.compressed(m)
    th, z, w = _rescaled(grid, n)
    fz = _backend.final_state(pos, val, m, z)
    fw = _backend.final_state(pos, val, m, w)
    e = np.exp(1j * np.asarray(grid.thetas, dtype=float))
    base = np.repeat(np.abs(_backend.final_state(pos, val, m, e)[0]), len(grid.pairs))
    return float(max((np.abs(f) / base).max() for f in (fz[0], fw[0], fz[1], fw[1])))


def certify_level(prefix: VerblunskySequence, position: int, n: int, grid: Grid):
    """``(cond1_max, cond2_max)`` for the sequence truncated after ``position``."""
    if n <= position + 1:
        raise ValidationError(f"candidate n = {n} must exceed N_l + 1 = {position + 1}")
    return sup_sine_error(prefix, n, grid), continuity_ratio(prefix, position, n, grid)


def _prefix(config: SparseBuildConfig, positions) -> VerblunskySequence:
    return VerblunskySequence.sparse(config.values[: len(positions)], positions)


def choose_next_position(config: SparseBuildConfig, positions) -> SparseCertificate:
    """Certify the level whose last position is ``positions[-1]``."""
    level = len(positions) - 1
    position = int(positions[-1])
    prefix = _prefix(config, positions)
    tol = config.tolerance(level)
    grid = config.grid
    per_eval = len(grid.thetas) * (len(grid.pairs) + 1)
    start = time.perf_counter()
    n = position + 2
    best = (math.inf, math.inf)
    count = 0
    while n <= config.cap:
        count += 1
        probes = (n, 2 * n)
        c = [certify_level(prefix, position, p, grid) for p in probes]
        c1 = tuple(x[0] for x in c)
        c2 = tuple(x[1] for x in c)
        best = min(best, (max(c1), max(c2)))
        if max(c1) <= tol and max(c2) < config.cond2_bound:
            nxt = max(math.ceil(config.margin * n), n + 1)
            return SparseCertificate(level, position, config.values[level], n, nxt, probes,
                                     c1, c2, tol, config.cond2_bound, grid.to_dict(), count,
                                     count * 2 * per_eval, time.perf_counter() - start)
        n = max(n + 1, math.ceil(n * config.stride))
    raise SparseBuildError(
        f"level {level}: no certified n up to cap {config.cap} "
        f"(best cond1 {best[0]:.4g}, cond2 {best[1]:.4g})", best=best)


def build_sparse_example(config: SparseBuildConfig, levels: int):
    """Sequence with ``levels`` certified levels and the certificate chain.

    Level ``l`` carries ``v_l`` at ``N_l``; the last certificate records the
    position ``N_levels`` the next level would use.
    """
    if levels < 1:
        raise ValidationError("levels must be >= 1")
    if levels > len(config.values):
        raise ValidationError(f"{levels} levels requested but only {len(config.values)} values")
    positions = [config.first_position]
    certs = []
    for _ in range(levels):
        cert = choose_next_position(config, positions)
        certs.append(cert)
        positions.append(cert.next_position)
    seq = _prefix(config, positions[:levels])
    return seq, certs


def replay_certificate(seq: VerblunskySequence, cert: SparseCertificate) -> bool:
    """Recompute a certificate's maxima from scratch; True when they are
    reproduced bit for bit and still pass."""
    grid = Grid.from_dict(cert.grid)
    prefix = seq.truncated(cert.level + 1)
    again = [certify_level(prefix, cert.position, p, grid) for p in cert.probes]
    same = (tuple(x[0] for x in again) == tuple(cert.cond1)
            and tuple(x[1] for x in again) == tuple(cert.cond2))
    return same and cert.passed


def config_with(config: SparseBuildConfig, **changes) -> SparseBuildConfig:
    return replace(config, **changes)
