"""Experiment configuration, orchestration and deterministic artifacts.

A run reads one TOML or JSON config, executes the named pipeline and
writes CSV (plus SVG when asked) into an output directory together with
``manifest.json``.  Output bytes depend only on the config, so digests are
stable across reruns, thread counts and resumptions.

CSV schemas, one per experiment kind::

    clock-convergence        theta,j,n,gap,normalized_gap,deviation
    bound-vs-gap             trial,n,theta,beta_re,beta_im,bound,gap,slack,violation
    sine-error-decay         n,sup_error,theta,re_a,im_a,re_b,im_b
    sparse-build-and-verify  level,position,value_re,value_im,n_hat,next_position,
                             cond1_n,cond1_2n,cond2_n,cond2_2n,tolerance,passed,replayed
      (clock file)           beta_rule,theta,j,n,gap,normalized_gap,deviation
    identity-suite           trial,n,check,worst,tolerance,passed
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import bound_certificate
from .coeffs import VerblunskySequence, load_sequence, save_sequence
from .errors import OpucError, ValidationError
from .identities import identity_suite
from .kernel import Grid, default_grid, sine_error_grid
from .popuc import BetaRule, clock_statistic
from .sparse import SparseBuildConfig, build_sparse_example, replay_certificate

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

KINDS = ("clock-convergence", "bound-vs-gap", "sine-error-decay",
         "sparse-build-and-verify", "identity-suite")

SCHEMAS = {
    "clock-convergence": ("theta", "j", "n", "gap", "normalized_gap", "deviation"),
    "bound-vs-gap": ("trial", "n", "theta", "beta_re", "beta_im", "bound", "gap", "slack",
                     "violation"),
    "sine-error-decay": ("n", "sup_error", "theta", "re_a", "im_a", "re_b", "im_b"),
    "sparse-build-and-verify": ("level", "position", "value_re", "value_im", "n_hat",
                                "next_position", "cond1_n", "cond1_2n", "cond2_n", "cond2_2n",
                                "tolerance", "passed", "replayed"),
    "identity-suite": ("trial", "n", "check", "worst", "tolerance", "passed"),
}
CLOCK_FILE_SCHEMA = ("beta_rule", "theta", "j", "n", "gap", "normalized_gap", "deviation")

_TOP_KEYS = {"kind", "seed", "sequence", "beta", "thetas", "n", "j", "grid", "trials",
             "levels", "values", "first_position", "tolerance_scale", "margin", "output"}
_SEQ_KEYS = {"kind", "seed", "radius", "values", "positions", "path", "length"}
_BETA_KEYS = {"rule", "value", "seed", "table"}
_OUT_KEYS = {"csv", "svg", "certificates"}


# -- config --------------------------------------------------------------------

def _reject_unknown(section, allowed, where):
    extra = sorted(set(section) - allowed)
    if extra:
        raise ValidationError(f"unknown key(s) in {where}: {', '.join(extra)}")


def _pair(v, where) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise ValidationError(f"{where}: expected a number or [re, im]")


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    seed: int = 0
    sequence: dict = field(default_factory=lambda: {"kind": "zero"})
    beta: dict = field(default_factory=lambda: {"rule": "constant", "value": [1.0, 0.0]})
    thetas: tuple = (0.0,)
    n: tuple = ()
    j: tuple = (0,)
    grid: str = "default"
    trials: int = 1
    levels: int = 3
    values: tuple = (0.5, 0.4, 0.3)
    first_position: int = 10
    tolerance_scale: float = 1.0
    margin: float = 2.0
    output: dict = field(default_factory=dict)
    base_dir: str = "."

    @classmethod
    def from_dict(cls, d: dict, base_dir=".") -> "ExperimentConfig":
        if not isinstance(d, dict):
            raise ValidationError("config must be a table/object")
        _reject_unknown(d, _TOP_KEYS, "config")
        if "kind" not in d:
            raise ValidationError("config needs a 'kind'")
        seq = dict(d.get("sequence", {"kind": "zero"}))
        _reject_unknown(seq, _SEQ_KEYS, "[sequence]")
        beta = dict(d.get("beta", {"rule": "constant", "value": [1.0, 0.0]}))
        _reject_unknown(beta, _BETA_KEYS, "[beta]")
        out = dict(d.get("output", {}))
        _reject_unknown(out, _OUT_KEYS, "[output]")
        try:
            cfg = cls(
                kind=str(d["kind"]),
                seed=int(d.get("seed", 0)),
                sequence=seq,
                beta=beta,
                thetas=tuple(float(t) for t in d.get("thetas", [0.0])),
                n=tuple(int(n) for n in d.get("n", [])),
                j=tuple(int(j) for j in d.get("j", [0])),
                grid=str(d.get("grid", "default")),
                trials=int(d.get("trials", 1)),
                levels=int(d.get("levels", 3)),
                values=tuple(_pair(v, "values") for v in d.get("values", [0.5, 0.4, 0.3])),
                first_position=int(d.get("first_position", 10)),
                tolerance_scale=float(d.get("tolerance_scale", 1.0)),
                margin=float(d.get("margin", 2.0)),
                output=out,
                base_dir=str(base_dir),
            )
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ValidationError(f"bad config value: {exc}") from None
        cfg.validate()
        return cfg

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        path = Path(path)
        raw = path.read_bytes()
        try:
            if path.suffix.lower() == ".json":
                d = json.loads(raw.decode("utf-8"))
            else:
                d = tomllib.loads(raw.decode("utf-8"))
        except (ValueError, tomllib.TOMLDecodeError) as exc:
            raise ValidationError(f"cannot parse {path}: {exc}") from None
        return cls.from_dict(d, base_dir=str(path.parent))

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ValidationError(f"unknown experiment kind {self.kind!r}; choose from {KINDS}")
        if any(b <= a for a, b in zip(self.n, self.n[1:])):
            raise ValidationError("n schedule must be strictly increasing")
        if any(n < 1 for n in self.n):
            raise ValidationError("n schedule entries must be >= 1")
        needs_n = self.kind in ("clock-convergence", "bound-vs-gap", "sine-error-decay",
                                "identity-suite")
        if needs_n and not self.n:
            raise ValidationError(f"{self.kind} needs a nonempty n schedule")
        if self.trials < 1:
            raise ValidationError("trials must be >= 1")
        for p in self.referenced_files():
            if not p.is_file():
                raise ValidationError(f"referenced file does not exist: {p}")

    def referenced_files(self) -> list:
        out = []
        if self.sequence.get("kind") == "file":
            out.append(self.resolve(self.sequence.get("path", "")))
        if self.grid != "default":
            out.append(self.resolve(self.grid))
        return out

    def resolve(self, p) -> Path:
        p = Path(p)
        return p if p.is_absolute() else Path(self.base_dir) / p

    def canonical(self) -> dict:
        d = asdict(self)
        d.pop("base_dir")
        d["values"] = [[v.real, v.imag] for v in self.values]
        return d

    def digest(self) -> str:
        blob = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    # builders

    def build_sequence(self, trial=None) -> VerblunskySequence:
        s = self.sequence
        kind = s.get("kind", "zero")
        if kind == "zero":
            return VerblunskySequence.zero()
        if kind == "random":
            seed = int(s.get("seed", self.seed)) + (trial or 0)
            return VerblunskySequence.random(seed, float(s.get("radius", 0.9)), s.get("length"))
        if kind == "sparse":
            return VerblunskySequence.sparse([_pair(v, "sequence.values") for v in s.get("values", [])],
                                             s.get("positions", []))
        if kind == "explicit":
            return VerblunskySequence.explicit([_pair(v, "sequence.values")
                                                for v in s.get("values", [])])
        if kind == "file":
            return load_sequence(self.resolve(s["path"]))
        raise ValidationError(f"unknown sequence kind {kind!r}")

    def build_beta(self) -> BetaRule:
        b = self.beta
        rule = b.get("rule", "constant")
        if rule == "constant":
            return BetaRule.constant(_pair(b.get("value", [1.0, 0.0]), "beta.value"))
        if rule == "random":
            return BetaRule.random(int(b.get("seed", self.seed)))
        if rule == "per_n":
            return BetaRule.per_n({int(k): _pair(v, "beta.table") for k, v in
                                   dict(b.get("table", {})).items()})
        raise ValidationError(f"unknown beta rule {rule!r}")

    def build_grid(self) -> Grid:
        return default_grid() if self.grid == "default" else Grid.load(self.resolve(self.grid))


# -- emission ------------------------------------------------------------------

def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17g" % float(v)
    if isinstance(v, complex):
        raise ValidationError("complex values must be split into real columns")
    return str(v)


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def render_csv(rows, schema) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(schema)
    for row in rows:
        if isinstance(row, dict):
            missing = [k for k in schema if k not in row]
            if missing or len(row) != len(schema):
                raise ValidationError(f"row does not match schema: {sorted(row)}")
            row = [row[k] for k in schema]
        elif len(row) != len(schema):
            raise ValidationError(f"row has {len(row)} cells, schema has {len(schema)}")
        w.writerow([_cell(v) for v in row])
    return buf.getvalue().encode("utf-8")


def emit_csv(rows, schema, path) -> str:
    """Write rows under a header, 17 significant digits, LF endings.
    Returns the SHA-256 of the bytes written."""
    data = render_csv(rows, schema)
    Path(path).write_bytes(data)
    return _digest(data)


_W, _H = 640, 400
_ML, _MR, _MT, _MB = 70, 20, 30, 50
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def _fmt(x: float) -> str:
    return "%.3f" % x


def _tick(v: float) -> str:
    return "%.4g" % v


def render_svg(series, axes) -> bytes:
    """Static line plot.  ``series`` is a list of ``(label, xs, ys)``;
    ``axes`` may hold ``xlabel``, ``ylabel``, ``title``, ``reference``
    (a horizontal line) and ``logx``."""
    series = [(str(l), [float(x) for x in xs], [float(y) for y in ys]) for l, xs, ys in series]
    if not series or not any(xs for _, xs, _ in series):
        raise ValidationError("plot needs at least one nonempty series")
    logx = bool(axes.get("logx", False))
    ref = axes.get("reference")
    tx = (lambda x: math.log10(x)) if logx else (lambda x: x)
    allx = [tx(x) for _, xs, _ in series for x in xs]
    ally = [y for _, _, ys in series for y in ys] + ([float(ref)] if ref is not None else [])
    x0, x1 = min(allx), max(allx)
    y0, y1 = min(ally), max(ally)
    if x1 == x0:
        x0, x1 = x0 - 1.0, x1 + 1.0
    if y1 == y0:
        pad = abs(y0) * 0.05 or 1.0
        y0, y1 = y0 - pad, y1 + pad
    else:
        pad = 0.05 * (y1 - y0)
        y0, y1 = y0 - pad, y1 + pad
    pw, ph = _W - _ML - _MR, _H - _MT - _MB

    def px(x):
        return _ML + (tx(x) - x0) / (x1 - x0) * pw

    def py(y):
        return _MT + (y1 - y) / (y1 - y0) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
           f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="11">',
           f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
           f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" fill="none" stroke="black"/>']
    for i in range(5):
        fx = x0 + (x1 - x0) * i / 4
        fy = y0 + (y1 - y0) * i / 4
        gx = _ML + pw * i / 4
        gy = _MT + ph * (1 - i / 4)
        label = _tick(10 ** fx if logx else fx)
        out.append(f'<text x="{_fmt(gx)}" y="{_H - _MB + 16}" text-anchor="middle">{label}</text>')
        out.append(f'<text x="{_ML - 6}" y="{_fmt(gy + 4)}" text-anchor="end">{_tick(fy)}</text>')
    if "title" in axes:
        out.append(f'<text x="{_W / 2}" y="18" text-anchor="middle">{_esc(axes["title"])}</text>')
    out.append(f'<text x="{_ML + pw / 2}" y="{_H - 10}" text-anchor="middle">'
               f'{_esc(axes.get("xlabel", "x"))}</text>')
    out.append(f'<text x="14" y="{_MT + ph / 2}" text-anchor="middle" '
               f'transform="rotate(-90 14 {_MT + ph / 2})">{_esc(axes.get("ylabel", "y"))}</text>')
    if ref is not None:
        ry = _fmt(py(float(ref)))
        out.append(f'<line x1="{_ML}" y1="{ry}" x2="{_ML + pw}" y2="{ry}" stroke="gray" '
                   f'stroke-dasharray="4 3"/>')
    for k, (label, xs, ys) in enumerate(series):
        color = _COLORS[k % len(_COLORS)]
        pts = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in zip(xs, ys))
        if len(xs) > 1:
            out.append(f'<polyline points="{pts}" fill="none" stroke="{color}"/>')
        for x, y in zip(xs, ys):
            out.append(f'<circle cx="{_fmt(px(x))}" cy="{_fmt(py(y))}" r="3" fill="{color}"/>')
        out.append(f'<text x="{_ML + 8}" y="{_MT + 14 + 14 * k}" fill="{color}">{_esc(label)}</text>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def _esc(s) -> str:
    return str(s).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def emit_svg_plot(series, axes, path) -> str:
    data = render_svg(series, axes)
    Path(path).write_bytes(data)
    return _digest(data)


# -- manifest --------------------------------------------------------------------

@dataclass
class RunManifest:
    config_hash: str
    kind: str
    tool_version: str = __version__
    started: float = 0.0
    finished: float = 0.0
    steps: list = field(default_factory=list)
    outputs: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(s["status"] == "ok" for s in self.steps)

    def step(self, name, status="ok", **detail):
        self.steps.append({"name": name, "status": status, **detail})

    def to_dict(self) -> dict:
        return asdict(self)

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n",
                              encoding="utf-8")

    @classmethod
    def load(cls, path) -> "RunManifest":
        return cls(**json.loads(Path(path).read_text(encoding="utf-8")))

    def verify(self, out_dir) -> bool:
        """True when every recorded output still has its recorded digest."""
        for name, digest in self.outputs.items():
            p = Path(out_dir) / name
            if not p.is_file() or _digest(p.read_bytes()) != digest:
                return False
        return True


class _Checkpoint:
    """Per-n rows cached on disk so an interrupted run can resume."""

    def __init__(self, path: Path, config_hash: str, enabled: bool):
        self.path = path
        self.hash = config_hash
        self.done = {}
        if enabled and path.is_file():
            for line in path.read_text(encoding="utf-8").splitlines():
                rec = json.loads(line)
                if rec.get("config") == self.hash:
                    self.done[rec["key"]] = rec["rows"]
        elif path.exists():
            path.unlink()

    def get(self, key):
        return self.done.get(key)

    def put(self, key, rows):
        self.done[key] = rows
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps({"config": self.hash, "key": key, "rows": rows}) + "\n")

    def clear(self):
        if self.path.exists():
            self.path.unlink()


# -- pipelines -------------------------------------------------------------------

def _clock_rows(cfg, ckpt):
    seq = cfg.build_sequence()
    rule = cfg.build_beta()
    rows = []
    for theta in cfg.thetas:
        for j in cfg.j:
            for n in cfg.n:
                key = f"{theta!r}/{j}/{n}"
                cached = ckpt.get(key)
                if cached is None:
                    r = clock_statistic(seq, rule, theta, j, [n])[0]
                    cached = [[theta, j, n, r.gap, r.normalized_gap, r.deviation]]
                    ckpt.put(key, cached)
                rows.extend(cached)
    return rows


def _bound_rows(cfg, ckpt):
    rule = cfg.build_beta()
    rows = []
    for t in range(cfg.trials):
        key = f"trial/{t}"
        cached = ckpt.get(key)
        if cached is None:
            rng = np.random.default_rng([cfg.seed, t])
            n = int(cfg.n[int(rng.integers(len(cfg.n)))])
            theta = float(rng.uniform(0.0, 2.0 * math.pi))
            seq = cfg.build_sequence(trial=t)
            beta = rule(n)
            c = bound_certificate(seq, n, beta, theta, matrix_cap=0)
            cached = [[t, n, theta, beta.real, beta.imag, c.bound, c.gap, c.slack,
                       int(c.slack < -1e-10)]]
            ckpt.put(key, cached)
        rows.extend(cached)
    return rows


def _sine_rows(cfg, ckpt):
    seq = cfg.build_sequence()
    grid = cfg.build_grid()
    rows = []
    for n in cfg.n:
        key = f"n/{n}"
        cached = ckpt.get(key)
        if cached is None:
            err = sine_error_grid(seq, n, grid)
            i, k = np.unravel_index(int(np.argmax(err)), err.shape)
            a, b = grid.pairs[k]
            cached = [[n, float(err[i, k]), float(grid.thetas[i]), complex(a).real,
                       complex(a).imag, complex(b).real, complex(b).imag]]
            ckpt.put(key, cached)
        rows.extend(cached)
    return rows


def _identity_rows(cfg, ckpt):
    rows = []
    for t in range(cfg.trials):
        seq = cfg.build_sequence(trial=t)
        for n in cfg.n:
            rng = np.random.default_rng([cfg.seed, t, n])
            for c in identity_suite(seq, n, rng):
                rows.append([t, n, c.name, c.worst, c.tolerance, c.passed])
    return rows


def _sparse_build(cfg, out_dir, manifest):
    config = SparseBuildConfig(cfg.values[: cfg.levels], cfg.first_position,
                               cfg.build_grid(), cfg.tolerance_scale, margin=cfg.margin)
    seq, certs = build_sparse_example(config, cfg.levels)
    manifest.step("build", levels=len(certs))
    rows = []
    for c in certs:
        rows.append([c.level, c.position, c.value.real, c.value.imag, c.n_hat,
                     c.next_position, c.cond1[0], c.cond1[1], c.cond2[0], c.cond2[1],
                     c.tolerance, c.passed, replay_certificate(seq, c)])
    manifest.step("replay", status="ok" if all(r[-1] for r in rows) else "failed")
    n_hat = certs[-1].n_hat
    rule = cfg.build_beta()
    clock = []
    for theta in cfg.thetas:
        for j in cfg.j:
            r = clock_statistic(seq, rule, theta, j, [n_hat])[0]
            clock.append([rule.describe(), theta, j, n_hat, r.gap, r.normalized_gap,
                          r.deviation])
    extra = {}
    stem = cfg.output.get("csv", "sparse.csv").rsplit(".", 1)[0]
    seq_name = stem + "_sequence.txt"
    save_sequence(seq, out_dir / seq_name)
    extra[seq_name] = _digest((out_dir / seq_name).read_bytes())
    cdir = cfg.output.get("certificates")
    if cdir:
        (out_dir / cdir).mkdir(parents=True, exist_ok=True)
        for c in certs:
            name = f"{cdir}/level{c.level}.json"
            c.save(out_dir / name, timing=False)
            extra[name] = _digest((out_dir / name).read_bytes())
    clock_name = stem + "_clock.csv"
    extra[clock_name] = emit_csv(clock, CLOCK_FILE_SCHEMA, out_dir / clock_name)
    return rows, extra


def run_experiment(config: ExperimentConfig, out_dir=None, resume=False) -> RunManifest:
    """Execute ``config`` and write its artifacts plus ``manifest.json``.

    On a step error, files written by this run are removed and the error
    is re-raised with the step name attached.
    """
    out_dir = Path(out_dir if out_dir is not None else config.base_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest(config.digest(), config.kind, started=time.time())
    kind = config.kind
    csv_name = config.output.get("csv", kind.replace("-", "_") + ".csv")
    written = []
    ckpt = _Checkpoint(out_dir / (csv_name + ".partial"), manifest.config_hash, resume)
    step = "compute"
    try:
        extra = {}
        if kind == "clock-convergence":
            rows = _clock_rows(config, ckpt)
        elif kind == "bound-vs-gap":
            rows = _bound_rows(config, ckpt)
            manifest.step("violations", status="ok" if not any(r[-1] for r in rows)
                          else "failed", count=sum(r[-1] for r in rows))
        elif kind == "sine-error-decay":
            rows = _sine_rows(config, ckpt)
        elif kind == "identity-suite":
            rows = _identity_rows(config, ckpt)
            manifest.step("identities", status="ok" if all(r[-1] for r in rows) else "failed")
        else:
            rows, extra = _sparse_build(config, out_dir, manifest)
            written.extend(out_dir / k for k in extra)
        manifest.step("compute", rows=len(rows))
        step = "emit"
        manifest.outputs[csv_name] = emit_csv(rows, SCHEMAS[kind], out_dir / csv_name)
        written.append(out_dir / csv_name)
        manifest.outputs.update(extra)
        svg = config.output.get("svg")
        if svg:
            series, axes = _plot_for(config, rows)
            manifest.outputs[svg] = emit_svg_plot(series, axes, out_dir / svg)
            written.append(out_dir / svg)
        manifest.step("emit", files=len(manifest.outputs))
    except (OpucError, OSError) as exc:
        for p in written:
            if p.is_file():
                p.unlink()
        manifest.step(step, status="error", error=str(exc))
        manifest.finished = time.time()
        manifest.save(out_dir / "manifest.json")
        if isinstance(exc, OpucError):
            raise type(exc)(f"step '{step}' failed: {exc}") from exc
        raise
    ckpt.clear()
    manifest.finished = time.time()
    manifest.save(out_dir / "manifest.json")
    return manifest


def _plot_for(cfg, rows):
    kind = cfg.kind
    if kind == "clock-convergence":
        series = []
        for theta in cfg.thetas:
            for j in cfg.j:
                sel = [r for r in rows if r[0] == theta and r[1] == j]
                series.append((f"theta={theta:g} j={j}", [r[2] for r in sel], [r[4] for r in sel]))
        return series, {"xlabel": "n", "ylabel": "n * gap", "reference": 2 * math.pi,
                        "logx": True, "title": "normalized zero spacing"}
    if kind == "sine-error-decay":
        return ([("sup error", [r[0] for r in rows], [r[1] for r in rows])],
                {"xlabel": "n", "ylabel": "sup error", "logx": True, "reference": 0.0})
    if kind == "bound-vs-gap":
        return ([("slack", [r[0] for r in rows], [r[7] for r in rows])],
                {"xlabel": "trial", "ylabel": "gap - bound", "reference": 0.0})
    if kind == "identity-suite":
        return ([("worst / tolerance", list(range(len(rows))),
                  [r[3] / r[4] for r in rows])],
                {"xlabel": "check", "ylabel": "defect ratio", "reference": 1.0})
    return ([("cond1", [r[0] for r in rows], [max(r[6], r[7]) for r in rows]),
             ("tolerance", [r[0] for r in rows], [r[10] for r in rows])],
            {"xlabel": "level", "ylabel": "sine error"})
