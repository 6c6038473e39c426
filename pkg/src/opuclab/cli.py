"""Command line interface.

Exit codes: 0 success, 1 invalid input, 2 a numeric self-check failed,
3 file system error.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import __version__
from ._parallel import set_threads
from .bounds import bound_certificate, exponent_diagnostic
from .coeffs import VerblunskySequence, load_sequence, save_sequence
from .errors import CertificationError, OpucError, ValidationError
from .harness import CLOCK_FILE_SCHEMA, SCHEMAS, ExperimentConfig, render_csv, run_experiment, emit_svg_plot
from .kernel import Grid, default_grid, sine_error_grid
from .popuc import (BetaRule, ParaPolySpec, circular_distance, clock_statistic,
                    cmv_zero_oracle, find_zeros)
from .recurrence import evaluate

EXIT_OK, EXIT_VALIDATION, EXIT_CERT, EXIT_IO = 0, 1, 2, 3

RUN_HELP = "CSV schemas written by 'run':\n" + "\n".join(
    f"  {k:<24} {','.join(v)}" for k, v in SCHEMAS.items()) + \
    f"\n  {'(sparse clock file)':<24} {','.join(CLOCK_FILE_SCHEMA)}"


def _complex(text: str) -> complex:
    """``re,im`` or a Python complex literal such as ``0.5+0.1j``."""
    try:
        if "," in text:
            re_, im = text.split(",")
            return complex(float(re_), float(im))
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None


def _complex_list(text: str) -> list:
    try:
        return [complex(x.strip()) for x in text.split(",")]
    except ValueError:
        raise ValidationError(f"not a list of complex numbers: {text!r}") from None


def _read_values(path) -> list:
    vals = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            vals.append(complex(float(tok[0]), float(tok[1])) if len(tok) == 2
                        else complex(tok[0]))
        except (ValueError, IndexError):
            raise ValidationError(f"{path}:{lineno}: cannot parse value {line!r}") from None
    return vals


class _Out:
    """Resolve output paths against ``--out-dir``; ``None`` means stdout."""

    def __init__(self, out_dir):
        self.dir = Path(out_dir) if out_dir else None

    def path(self, p):
        if p is None:
            return None
        p = Path(p)
        if self.dir is not None and not p.is_absolute():
            self.dir.mkdir(parents=True, exist_ok=True)
            p = self.dir / p
        return p

    def write(self, data: bytes, p):
        target = self.path(p)
        if target is None:
            sys.stdout.write(data.decode("utf-8"))
        else:
            target.write_bytes(data)


# -- verbs -----------------------------------------------------------------------

def cmd_coeffs(args, out):
    if args.action == "validate":
        seq = load_sequence(args.file)
        count = len(seq.positions) if seq.kind == "sparse" else (seq.length or 0)
        print(f"ok: kind={seq.kind} entries={count}")
        return EXIT_OK
    kind = args.kind
    if kind == "zero":
        seq = VerblunskySequence.zero(args.length)
    elif kind == "random":
        seed = args.seed if args.seed is not None else args.global_seed or 0
        seq = VerblunskySequence.random(seed, args.radius, args.length)
    elif kind == "sparse":
        if args.values is None or args.positions is None:
            raise ValidationError("sparse generation needs --values and --positions")
        seq = VerblunskySequence.sparse(_complex_list(args.values), _int_list(args.positions))
    else:
        if args.values is None:
            raise ValidationError("explicit generation needs --values")
        seq = VerblunskySequence.explicit(_complex_list(args.values))
    target = out.path(args.output)
    if target is None:
        from .coeffs import format_sequence
        sys.stdout.write(format_sequence(seq))
    else:
        save_sequence(seq, target)
    return EXIT_OK


def cmd_opuc(args, out):
    z = complex(math.cos(args.theta), math.sin(args.theta))
    st = evaluate(load_sequence(args.seq), args.n, z)
    schema = ["n", "theta", "re_phi", "im_phi", "re_phistar", "im_phistar"]
    row = [args.n, args.theta, st.phi.real, st.phi.imag, st.phi_star.real, st.phi_star.imag]
    if args.second_kind:
        schema += ["re_psi", "im_psi", "re_psidagger", "im_psidagger"]
        row += [st.psi.real, st.psi.imag, st.psi_dagger.real, st.psi_dagger.imag]
    out.write(render_csv([row], schema), args.output)
    return EXIT_OK


def cmd_kernel(args, out):
    seq = load_sequence(args.seq)
    grid = default_grid() if args.grid == "default" else Grid.load(args.grid)
    err = sine_error_grid(seq, args.n, grid)
    rows = []
    for i, th in enumerate(grid.thetas):
        for k, (a, b) in enumerate(grid.pairs):
            a, b = complex(a), complex(b)
            rows.append([args.n, th, a.real, a.imag, b.real, b.imag, float(err[i, k])])
    out.write(render_csv(rows, ["n", "theta", "re_a", "im_a", "re_b", "im_b", "error"]),
              args.output)
    return EXIT_OK


def _beta_rule(args) -> BetaRule:
    if getattr(args, "beta_random", None) is not None:
        return BetaRule.random(args.beta_random)
    return BetaRule.constant(args.beta)


def cmd_popuc(args, out):
    seq = load_sequence(args.seq)
    if args.action == "zeros":
        spec = ParaPolySpec(seq, args.n, args.beta)
        zeros = find_zeros(spec)
        schema = ["index", "theta"]
        rows = [[i, t] for i, t in enumerate(zeros)]
        status = EXIT_OK
        if args.oracle:
            oracle = cmv_zero_oracle(spec)
            schema.append("oracle_theta")
            rows = [r + [float(o)] for r, o in zip(rows, oracle)]
            dist = circular_distance(zeros, oracle)
            print(f"max distance to oracle: {dist:.3e}", file=sys.stderr)
            if dist > 1e-8:
                status = EXIT_CERT
        out.write(render_csv(rows, schema), args.output)
        return status
    reports = clock_statistic(seq, _beta_rule(args), args.theta, args.j, args.n_list)
    rows = [[r.n, r.gap, r.normalized_gap, r.deviation] for r in reports]
    out.write(render_csv(rows, ["n", "gap", "normalized_gap", "deviation"]), args.output)
    if args.svg:
        emit_svg_plot([(f"j={args.j}", [r.n for r in reports],
                        [r.normalized_gap for r in reports])],
                      {"xlabel": "n", "ylabel": "n * gap", "reference": 2 * math.pi,
                       "logx": len(reports) > 1 and min(r.n for r in reports) > 0},
                      out.path(args.svg))
    return EXIT_OK


def cmd_bounds(args, out):
    seq = load_sequence(args.seq)
    if args.action == "check":
        c = bound_certificate(seq, args.n, args.beta, args.theta)
        row = [c.n, c.Theta, c.bound, c.gap, c.slack,
               c.hs_norm if c.hs_norm is not None else float("nan"), c.sum_tk2]
        out.write(render_csv([row], ["n", "theta", "bound", "gap", "slack", "hs_norm",
                                     "sum_Tk2"]), args.output)
        return EXIT_OK if c.valid else EXIT_CERT
    d = exponent_diagnostic(seq, _beta_rule(args), args.theta, args.gamma, args.n_list)
    rows = [[n, g, s] for n, g, s in zip(d.n, d.scaled_gap, d.scaled_sum)]
    out.write(render_csv(rows, ["n", "scaled_gap", "scaled_sum"]), args.output)
    print(f"horizon n={d.horizon}: running min of n^gamma*gap {d.liminf_gap:.6g}, "
          f"running max of n^-gamma*sum {d.limsup_sum:.6g}", file=sys.stderr)
    return EXIT_OK


def cmd_sparse(args, out):
    from .sparse import SparseBuildConfig, build_sparse_example

    values = _read_values(args.values)
    config = SparseBuildConfig(tuple(values), first_position=args.first_position,
                               tolerance_scale=args.tolerance_scale, margin=args.margin)
    seq, certs = build_sparse_example(config, args.levels)
    save_sequence(seq, out.path(args.output))
    if args.cert:
        cdir = out.path(args.cert)
        cdir.mkdir(parents=True, exist_ok=True)
        for c in certs:
            c.save(cdir / f"level{c.level}.json")
    for c in certs:
        print(f"level {c.level}: N={c.position} N_hat={c.n_hat} next={c.next_position} "
              f"cond1={c.cond1_max:.4g}<= {c.tolerance:.4g} cond2={c.cond2_max:.4g}",
              file=sys.stderr)
    return EXIT_OK if all(c.passed for c in certs) else EXIT_CERT


def cmd_run(args, out):
    config = ExperimentConfig.load(args.config)
    if args.global_seed is not None:
        from dataclasses import replace
        config = replace(config, seed=args.global_seed)
    out_dir = args.out_dir if args.out_dir else config.base_dir
    manifest = run_experiment(config, out_dir, resume=args.resume)
    for name, digest in sorted(manifest.outputs.items()):
        print(f"{digest}  {name}")
    return EXIT_OK if manifest.ok else EXIT_CERT


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="opuclab", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--threads", type=int, default=1, help="worker threads for grid sweeps")
    p.add_argument("--seed", dest="global_seed", type=int, default=None,
                   help="seed for random generation; overrides a run config's seed")
    p.add_argument("--out-dir", default=None, help="directory for relative output paths")
    verbs = p.add_subparsers(dest="verb", required=True)

    c = verbs.add_parser("coeffs", help="validate or generate coefficient files")
    ca = c.add_subparsers(dest="action", required=True)
    v = ca.add_parser("validate")
    v.add_argument("file")
    g = ca.add_parser("gen")
    g.add_argument("--kind", choices=("zero", "sparse", "random", "explicit"), required=True)
    g.add_argument("--values", help="comma-separated values, e.g. 0.5,0.3+0.1j")
    g.add_argument("--positions", help="comma-separated strictly increasing indices")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--radius", type=float, default=0.9)
    g.add_argument("--length", type=int, default=None)
    g.add_argument("-o", "--output")

    o = verbs.add_parser("opuc", help="evaluate orthogonal polynomials")
    oa = o.add_subparsers(dest="action", required=True)
    e = oa.add_parser("eval", help="CSV row n,theta,re_phi,im_phi,re_phistar,im_phistar"
                        "[,re_psi,im_psi,re_psidagger,im_psidagger]")
    e.add_argument("--seq", required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--theta", type=float, required=True)
    e.add_argument("--second-kind", action="store_true")
    e.add_argument("-o", "--output")

    k = verbs.add_parser("kernel", help="sine-kernel error on a grid")
    ka = k.add_subparsers(dest="action", required=True)
    s = ka.add_parser("sine-error", help="CSV n,theta,re_a,im_a,re_b,im_b,error")
    s.add_argument("--seq", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--grid", default="default")
    s.add_argument("-o", "--output")

    z = verbs.add_parser("popuc", help="paraorthogonal zeros and clock statistics")
    za = z.add_subparsers(dest="action", required=True)
    zz = za.add_parser("zeros", help="CSV index,theta[,oracle_theta]")
    zz.add_argument("--seq", required=True)
    zz.add_argument("--n", type=int, required=True)
    zz.add_argument("--beta", type=_complex, default=1 + 0j, help="re,im on the unit circle")
    zz.add_argument("--oracle", action="store_true", help="cross-check with the matrix oracle")
    zz.add_argument("-o", "--output")
    zc = za.add_parser("clock", help="CSV n,gap,normalized_gap,deviation")
    zc.add_argument("--seq", required=True)
    zc.add_argument("--theta", type=float, default=0.0)
    zc.add_argument("--j", type=int, default=0)
    zc.add_argument("--n-list", type=_int_list, required=True)
    zc.add_argument("--beta", type=_complex, default=1 + 0j)
    zc.add_argument("--beta-random", type=int, default=None, metavar="SEED",
                    help="draw beta per n from this seed instead of --beta")
    zc.add_argument("--svg")
    zc.add_argument("-o", "--output")

    b = verbs.add_parser("bounds", help="spacing lower bound and exponent diagnostics")
    ba = b.add_subparsers(dest="action", required=True)
    bc = ba.add_parser("check", help="CSV n,theta,bound,gap,slack,hs_norm,sum_Tk2")
    bc.add_argument("--seq", required=True)
    bc.add_argument("--n", type=int, required=True)
    bc.add_argument("--beta", type=_complex, default=1 + 0j)
    bc.add_argument("--theta", type=float, default=0.0)
    bc.add_argument("-o", "--output")
    bx = ba.add_parser("exponent", help="CSV n,scaled_gap,scaled_sum")
    bx.add_argument("--seq", required=True)
    bx.add_argument("--gamma", type=float, required=True)
    bx.add_argument("--theta", type=float, default=0.0)
    bx.add_argument("--n-list", type=_int_list, required=True)
    bx.add_argument("--beta", type=_complex, default=1 + 0j)
    bx.add_argument("--beta-random", type=int, default=None, metavar="SEED")
    bx.add_argument("-o", "--output")

    sp = verbs.add_parser("sparse", help="certified sparse construction")
    spa = sp.add_subparsers(dest="action", required=True)
    sb = spa.add_parser("build")
    sb.add_argument("--values", required=True, help="file with one level value per line")
    sb.add_argument("--levels", type=int, required=True)
    sb.add_argument("--margin", type=float, default=2.0)
    sb.add_argument("--first-position", type=int, default=10)
    sb.add_argument("--tolerance-scale", type=float, default=1.0,
                    help="condition-1 tolerance is SCALE/l (SCALE at l = 0)")
    sb.add_argument("-o", "--output", required=True)
    sb.add_argument("--cert", help="directory for JSON certificates")

    r = verbs.add_parser("run", help="run an experiment config", epilog=RUN_HELP,
                         formatter_class=argparse.RawDescriptionHelpFormatter)
    r.add_argument("config")
    r.add_argument("--resume", action="store_true", help="reuse per-n results of an interrupted run")
    return p


HANDLERS = {"coeffs": cmd_coeffs, "opuc": cmd_opuc, "kernel": cmd_kernel, "popuc": cmd_popuc,
            "bounds": cmd_bounds, "sparse": cmd_sparse, "run": cmd_run}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    set_threads(args.threads)
    out = _Out(args.out_dir)
    try:
        return HANDLERS[args.verb](args, out)
    except CertificationError as exc:
        print(f"certification failure: {exc}", file=sys.stderr)
        return EXIT_CERT
    except OpucError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
