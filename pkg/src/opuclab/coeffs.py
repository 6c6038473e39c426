"""Verblunsky coefficient sequences and their text file format.

A sequence is immutable and evaluated lazily: consumers always pass an
explicit horizon ``n`` and receive the nonzero coefficients below it in the
compressed ``(positions, values)`` form the recurrence kernels expect.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import ValidationError

KINDS = ("zero", "explicit", "sparse", "random")
_BLOCK = 1024
TWO_PI = 2.0 * math.pi


def normalize_angle(theta):
    """Map an angle to the half-open interval ``[0, 2*pi)``."""
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    if t >= TWO_PI:
        t -= TWO_PI
    return t


@dataclass(frozen=True, order=True)
class CirclePoint:
    angle: float

    def __post_init__(self):
        object.__setattr__(self, "angle", normalize_angle(float(self.angle)))

    @property
    def value(self) -> complex:
        return complex(math.cos(self.angle), math.sin(self.angle))


def _check_disk(values, offset=0):
    mags = np.abs(values)
    bad = np.flatnonzero(~(mags < 1.0))
    if bad.size:
        i = int(bad[0])
        raise ValidationError(
            f"coefficient {offset + i} = {values[i]!r} is not inside the unit disk",
            index=offset + i)


@lru_cache(maxsize=256)
def _random_block(seed, radius, block):
    rng = np.random.default_rng([seed, block])
    r = radius * np.sqrt(rng.random(_BLOCK))
    return r * np.exp(2j * np.pi * rng.random(_BLOCK))


@dataclass(frozen=True, eq=False)
class VerblunskySequence:
    """Source of coefficients ``alpha_n`` in the open unit disk.

    Build instances through the ``zero``, ``explicit``, ``sparse`` and
    ``random`` constructors.  ``length`` is ``None`` for infinite kinds.
    """

    kind: str
    values: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))
    positions: np.ndarray = field(default_factory=lambda: np.zeros(0, np.int64))
    length: int | None = None
    seed: int = 0
    radius: float = 0.0

    @classmethod
    def zero(cls, length=None):
        return cls("zero", length=length)

    @classmethod
    def explicit(cls, values):
        vals = np.array(values, dtype=np.complex128).ravel()
        _check_disk(vals)
        vals.setflags(write=False)
        return cls("explicit", values=vals, length=len(vals))

    @classmethod
    def sparse(cls, values, positions):
        vals = np.array(values, dtype=np.complex128).ravel()
        pos = np.array(positions, dtype=np.int64).ravel()
        if len(vals) != len(pos):
            raise ValidationError("sparse values and positions differ in length")
        if pos.size and (pos[0] < 0 or np.any(np.diff(pos) <= 0)):
            raise ValidationError("sparse positions must be nonnegative and strictly increasing")
        for i, v in zip(pos, vals):
            if not abs(v) < 1.0:
                raise ValidationError(
                    f"coefficient {int(i)} = {v!r} is not inside the unit disk",
                    index=int(i))
        vals.setflags(write=False)
        pos.setflags(write=False)
        return cls("sparse", values=vals, positions=pos)

    @classmethod
    def random(cls, seed, radius=0.9, length=None):
        if not 0.0 <= radius < 1.0:
            raise ValidationError(f"random radius must lie in [0, 1), got {radius}")
        return cls("random", seed=int(seed), radius=float(radius), length=length)

    def _check_horizon(self, n):
        if n < 0:
            raise ValidationError(f"index must be nonnegative, got {n}")
        if self.length is not None and n > self.length:
            raise ValidationError(
                f"horizon {n} exceeds sequence length {self.length}", index=n)

    def coefficient(self, n: int) -> complex:
        """Return ``alpha_n``."""
        if n < 0:
            raise ValidationError(f"index must be nonnegative, got {n}")
        if self.length is not None and n >= self.length:
            raise ValidationError(
                f"index {n} out of range for sequence of length {self.length}", index=n)
        if self.kind == "zero":
            return 0j
        if self.kind == "explicit":
            return complex(self.values[n])
        if self.kind == "sparse":
            i = np.searchsorted(self.positions, n)
            if i < len(self.positions) and self.positions[i] == n:
                return complex(self.values[i])
            return 0j
        return complex(_random_block(self.seed, self.radius, n // _BLOCK)[n % _BLOCK])

    def prefix(self, n: int) -> np.ndarray:
        """Dense array ``alpha_0 .. alpha_{n-1}``."""
        self._check_horizon(n)
        out = np.zeros(n, dtype=np.complex128)
        pos, val = self.compressed(n)
        out[pos] = val
        return out

    def compressed(self, n: int):
        """Nonzero coefficients below ``n`` as ``(positions, values)``."""
        self._check_horizon(n)
        if self.kind == "zero":
            return np.zeros(0, np.int64), np.zeros(0, np.complex128)
        if self.kind == "explicit":
            nz = np.flatnonzero(self.values[:n])
            return nz.astype(np.int64), self.values[nz]
        if self.kind == "sparse":
            k = np.searchsorted(self.positions, n)
            return self.positions[:k], self.values[:k]
        nblocks = -(-n // _BLOCK)
        vals = np.concatenate(
            [_random_block(self.seed, self.radius, b) for b in range(nblocks)]
        )[:n] if n else np.zeros(0, np.complex128)
        return np.arange(n, dtype=np.int64), vals

    def truncated(self, count: int) -> "VerblunskySequence":
        """Sparse sequence keeping only the first ``count`` support points."""
        if self.kind != "sparse":
            raise ValidationError("truncation by support count needs a sparse sequence")
        return VerblunskySequence.sparse(self.values[:count], self.positions[:count])

    def __eq__(self, other):
        if not isinstance(other, VerblunskySequence):
            return NotImplemented
        return (self.kind == other.kind and self.length == other.length
                and self.seed == other.seed and self.radius == other.radius
                and np.array_equal(self.values, other.values)
                and np.array_equal(self.positions, other.positions))

    def __hash__(self):
        return hash((self.kind, self.length, self.seed, self.radius,
                     self.values.tobytes(), self.positions.tobytes()))


def coefficient(seq: VerblunskySequence, n: int) -> complex:
    return seq.coefficient(n)


# -- file format -------------------------------------------------------------
#
# One entry per line, "index re im" with decimal literals; "#" starts a
# comment.  A "# kind: ..." comment is a directive recording the kind of
# sequence; files without one hold a sparse sequence (zero off the listed
# indices), and an empty file is the explicit sequence of length 0.


def _parse_directive(text):
    body = text[len("kind:"):].split()
    if not body:
        raise ValidationError("empty kind directive")
    kind, opts = body[0], {}
    for tok in body[1:]:
        key, _, value = tok.partition("=")
        opts[key] = value
    return kind, opts


def _parse_value(tokens, lineno):
    try:
        if len(tokens) == 3:
            return complex(float(tokens[1]), float(tokens[2]))
        if len(tokens) == 2:
            return complex(tokens[1].replace("i", "j"))
    except ValueError:
        pass
    raise ValidationError(f"line {lineno}: malformed entry {' '.join(tokens)!r}")


def parse_sequence(text: str) -> VerblunskySequence:
    kind, opts = None, {}
    indices, values = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("kind:"):
                kind, opts = _parse_directive(body)
            continue
        tokens = line.split()
        try:
            idx = int(tokens[0])
        except ValueError:
            raise ValidationError(f"line {lineno}: bad index {tokens[0]!r}") from None
        if idx < 0:
            raise ValidationError(f"line {lineno}: negative index {idx}")
        value = _parse_value(tokens, lineno)
        if not abs(value) < 1.0:
            raise ValidationError(
                f"coefficient {idx} = {value!r} is not inside the unit disk", index=idx)
        indices.append(idx)
        values.append(value)

    if kind is None:
        if not indices:
            return VerblunskySequence.explicit([])
        kind = "sparse"
    if kind == "zero":
        length = opts.get("length")
        return VerblunskySequence.zero(None if length is None else int(length))
    if kind == "random":
        length = opts.get("length")
        return VerblunskySequence.random(int(opts.get("seed", 0)),
                                         float(opts.get("radius", 0.9)),
                                         None if length is None else int(length))
    if kind == "sparse":
        order = np.argsort(indices, kind="stable")
        idx = np.asarray(indices, dtype=np.int64)[order]
        if idx.size and np.any(np.diff(idx) == 0):
            raise ValidationError("duplicate index in sparse sequence file")
        return VerblunskySequence.sparse(np.asarray(values)[order], idx)
    if kind == "explicit":
        length = int(opts.get("length", len(indices)))
        vals = np.zeros(length, dtype=np.complex128)
        seen = np.zeros(length, dtype=bool)
        for i, v in zip(indices, values):
            if i >= length:
                raise ValidationError(f"index {i} beyond declared length {length}", index=i)
            vals[i] = v
            seen[i] = True
        return VerblunskySequence.explicit(vals)
    raise ValidationError(f"unknown sequence kind {kind!r}")


def _num(x) -> str:
    return repr(float(x))


def format_sequence(seq: VerblunskySequence) -> str:
    lines = ["# opuclab Verblunsky coefficients: index re im"]
    if seq.kind == "zero":
        opt = "" if seq.length is None else f" length={seq.length}"
        lines.append(f"# kind: zero{opt}")
    elif seq.kind == "random":
        opt = "" if seq.length is None else f" length={seq.length}"
        lines.append(f"# kind: random seed={seq.seed} radius={seq.radius!r}{opt}")
    elif seq.kind == "explicit":
        lines.append(f"# kind: explicit length={seq.length}")
        for i, v in enumerate(seq.values):
            lines.append(f"{i} {_num(v.real)} {_num(v.imag)}")
    else:
        lines.append("# kind: sparse")
        for i, v in zip(seq.positions, seq.values):
            lines.append(f"{int(i)} {_num(v.real)} {_num(v.imag)}")
    return "\n".join(lines) + "\n"


def load_sequence(path, format: str = "text") -> VerblunskySequence:
    if format != "text":
        raise ValidationError(f"unsupported coefficient file format {format!r}")
    return parse_sequence(Path(path).read_text(encoding="utf-8"))


def save_sequence(seq: VerblunskySequence, path) -> None:
    Path(path).write_text(format_sequence(seq), encoding="utf-8", newline="\n")
