"""Command-line interface.

Exit codes: 0 success / battery pass, 1 battery fail, 2 usage or input
error, 3 runtime failure (orbit divergence).  The effective configuration
of every run is printed to stderr as ``# key = value`` lines before any
results, so stdout and output files stay machine-readable.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import _kernels, bitfile
from .bitgen import GeneratorConfig, generate
from .corr import correlation
from .errors import BitFileError, DivergenceError, HenonSeqError
from .experiments import (
    autocorr_trace,
    corr_experiment,
    dump_json,
    fips_experiment,
    lc_experiment,
    profile_experiment,
    trace_of,
)
from .henon import MapParameters, orbit
from .keyspace import EPS64, KeyspaceSpec, contributions, keyspace_bits
from .lincomp import berlekamp_massey, lc_profile
from .presets import NAMES as PRESETS
from .presets import preset
from .stattests import fips140_1, menezes_battery


class UsageError(Exception):
    pass


def _add_generator_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("generator")
    g.add_argument("--preset", choices=PRESETS, type=str.upper, help="named parameter set (default U1)")
    g.add_argument("--alpha", type=float)
    g.add_argument("--beta", type=float)
    g.add_argument("--x0", type=float)
    g.add_argument("--y0", type=float)
    g.add_argument("--P", "-P", dest="P", type=int, help="decimation factor")
    g.add_argument("--T", "-T", dest="T", type=int, help="calibration window length")
    g.add_argument("--discard", type=int, help="transient iterations before calibration")
    g.add_argument("--seed2", type=int, help="history bit By(-2)")
    g.add_argument("--seed1", type=int, help="history bit By(-1)")
    g.add_argument("--bound", type=float, help="divergence bound")


def _config(args) -> GeneratorConfig:
    base = preset(args.preset or "U1")
    values = base.to_dict()
    for key in ("alpha", "beta", "x0", "y0", "P", "T", "discard", "seed2", "seed1", "bound"):
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    try:
        return GeneratorConfig.from_values(**values)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _print_config(args, **extra) -> None:
    items = {"command": args.command}
    if getattr(args, "_cfg", None) is not None:
        items.update(args._cfg.to_dict())
    items.update(extra)
    items["backend"] = _kernels.BACKEND
    for k, v in items.items():
        print(f"# {k} = {v!r}", file=sys.stderr)


def _emit(text: str | bytes, out: str | None) -> None:
    data = text.encode() if isinstance(text, str) else text
    if out and out != "-":
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _read_bits(path: str, fmt: str | None):
    if path == "-":
        return bitfile.loads(sys.stdin.buffer.read(), fmt)
    try:
        return bitfile.read(path, fmt)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_generate(args) -> int:
    cfg = args._cfg = _config(args)
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    _print_config(args, count=args.count, format=args.format)
    seq = generate(cfg, args.count)
    _emit(bitfile.dumps(seq, args.format), args.out)
    return 0


def cmd_orbit(args) -> int:
    cfg = args._cfg = _config(args)
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    _print_config(args, count=args.count)
    p = cfg.params
    rows = [(s.k, repr(s.x), repr(s.y)) for s in orbit(MapParameters(p.alpha, p.beta, p.x0, p.y0), args.count, cfg.bound)]
    _emit(_csv(rows, ["k", "x", "y"]), args.out)
    return 0


def cmd_analyze(args) -> int:
    _print_config(args, analysis=args.analysis, inputs=args.inputs)
    if args.analysis == "corr":
        if len(args.inputs) != 2:
            raise UsageError("corr needs exactly two input files")
        u, v = (_read_bits(p, args.input_format) for p in args.inputs)
        if args.bits:
            u, v = u.slice(0, args.bits), v.slice(0, args.bits)
        theta = correlation(u, v)
        _emit(json.dumps({"bits": len(u), "theta": theta}) + "\n", args.out)
        return 0
    if len(args.inputs) != 1:
        raise UsageError(f"{args.analysis} takes one input file")
    w = _read_bits(args.inputs[0], args.input_format)
    if args.bits:
        if args.bits > len(w):
            raise UsageError(f"--bits {args.bits} exceeds the {len(w)} bits available")
        w = w.slice(0, args.bits)
    if args.analysis == "lc":
        res = berlekamp_massey(w)
        text = json.dumps(
            {"bits": len(w), "linear_complexity": res.complexity, "connection_polynomial": hex(res.connection)}
        ) + "\n"
    elif args.analysis == "lc-profile":
        if len(w) == 0:
            raise UsageError("lc-profile needs at least one bit")
        prof = lc_profile(w)
        text = _csv(((i, c) for i, c in enumerate(prof.values, start=1)), ["i", "C_i"])
    else:
        if len(w) < 1:
            raise UsageError("autocorr needs at least one bit")
        text = _csv(((j, repr(r)) for j, r in trace_of(w)), ["shift", "R"])
    _emit(text, args.out)
    return 0


def cmd_test(args) -> int:
    _print_config(args, battery=args.battery, input=args.input)
    w = _read_bits(args.input, args.input_format)
    report = fips140_1(w) if args.battery == "fips" else menezes_battery(w)
    text = report.to_json() + "\n" if args.report == "json" else report.to_csv()
    _emit(text, args.out)
    return 0 if report.passed else 1


def cmd_experiment(args) -> int:
    cfg = args._cfg = _config(args)
    name = args.name
    out_dir = Path(args.out_dir) if args.out_dir else None
    files: dict[str, str] = {}
    if name == "lc":
        N, trials = args.N or 64, args.trials or 2000
        _print_config(args, N=N, trials=trials, mode=args.mode, jobs=args.jobs)
        res = lc_experiment(cfg, N, trials, args.mode, args.jobs)
        fig = "fig2" if N % 2 == 0 else "fig3"
        h = res.histogram
        files[f"{fig}a.csv"] = h.to_csv()
        files[f"{fig}b.csv"] = _csv(((c, repr(q)) for c, q in zip(h.labels, res.conjectured)), ["bin", "value"])
        summary = res.to_dict()
        files[f"{fig}.json"] = dump_json(summary) + "\n"
    elif name == "corr":
        N, pairs = args.N or 127, args.pairs or 10000
        _print_config(args, N=N, pairs=pairs, mode=args.mode, jobs=args.jobs)
        res = corr_experiment(cfg, N, pairs, args.mode, args.jobs)
        files["fig5.csv"] = res.histogram.to_csv(res.reference)
        summary = res.to_dict()
        files["fig5.json"] = dump_json(summary) + "\n"
    elif name == "autocorr":
        N = args.N or 2000
        _print_config(args, N=N)
        trace = autocorr_trace(cfg, N)
        files["fig6.csv"] = _csv(((j, repr(r)) for j, r in trace), ["shift", "R"])
        summary = {"N": N, "max_abs_offpeak": max(abs(r) for j, r in trace if j % N)}
    elif name == "profile":
        N = args.N or 553
        _print_config(args, N=N)
        prof = profile_experiment(cfg, N)
        files["fig4.csv"] = _csv(((i, c) for i, c in enumerate(prof.values, start=1)), ["i", "C_i"])
        summary = {"N": N, "max_deviation": prof.max_deviation(), "jump_law_holds": prof.jumps_ok(),
                   "final_complexity": prof.values[-1]}
    else:
        count = args.trials or 1000
        _print_config(args, trials=count, jobs=args.jobs)
        summary = fips_experiment(cfg, count, args.jobs).to_dict()
        files["fips.json"] = dump_json(summary) + "\n"
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        for fname, text in files.items():
            (out_dir / fname).write_text(text)
    _emit(dump_json(summary) + "\n", None)
    return 0


def cmd_keyspace(args) -> int:
    try:
        spec = KeyspaceSpec(
            alpha_width=args.alpha_width, beta_width=args.beta_width, x0_width=args.x0_width,
            y0_width=args.y0_width, p_count=args.p_count, epsilon=args.epsilon,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _print_config(args, **{k: getattr(spec, k) for k in spec.__dataclass_fields__})
    bits = keyspace_bits(spec)
    print(json.dumps({"log2_K": bits, "rounded": round(bits), "contributions": contributions(spec)}))
    print(round(bits))
    return 0


def cmd_cipher(args) -> int:
    from .cipher import vernam_stream

    cfg = args._cfg = _config(args)
    _print_config(args, mode=args.mode)
    src = sys.stdin.buffer if args.input in (None, "-") else open(args.input, "rb")
    dst = sys.stdout.buffer if args.out in (None, "-") else open(args.out, "wb")
    try:
        vernam_stream(src, dst, cfg)
    finally:
        if src is not sys.stdin.buffer:
            src.close()
        if dst is not sys.stdout.buffer:
            dst.close()
        else:
            dst.flush()
    return 0


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("HENONSEQ_JOBS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="henonseq", description="Henon map pseudorandom bit sequences")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write generated bits to a file")
    _add_generator_flags(p)
    p.add_argument("--count", "-n", type=int, required=True)
    p.add_argument("--format", choices=bitfile.FORMATS, default="binary")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("orbit", help="write (k, x, y) orbit points as CSV")
    _add_generator_flags(p)
    p.add_argument("--count", "-n", type=int, required=True)
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("analyze", help="linear complexity and correlation of bit files")
    p.add_argument("analysis", choices=["lc", "lc-profile", "corr", "autocorr"])
    p.add_argument("inputs", nargs="+")
    p.add_argument("--bits", type=int, help="use only the first N bits")
    p.add_argument("--input-format", choices=bitfile.FORMATS)
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("test", help="run a randomness test battery")
    p.add_argument("battery", choices=["fips", "menezes"])
    p.add_argument("input")
    p.add_argument("--input-format", choices=bitfile.FORMATS)
    p.add_argument("--report", choices=["json", "csv"], default="json")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("experiment", help="reproduce a figure or table as CSV/JSON")
    p.add_argument("name", choices=["lc", "corr", "autocorr", "profile", "fips"])
    _add_generator_flags(p)
    p.add_argument("--N", dest="N", type=int, help="bits per sequence")
    p.add_argument("--trials", type=int)
    p.add_argument("--pairs", type=int)
    p.add_argument("--mode", choices=["windows", "perturb"], default="windows")
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("keyspace", help="estimate log2 of the keyspace size")
    d = KeyspaceSpec()
    p.add_argument("--epsilon", type=float, default=EPS64)
    p.add_argument("--alpha-width", type=float, default=d.alpha_width)
    p.add_argument("--beta-width", type=float, default=d.beta_width)
    p.add_argument("--x0-width", type=float, default=d.x0_width)
    p.add_argument("--y0-width", type=float, default=d.y0_width)
    p.add_argument("--p-count", type=int, default=d.p_count)
    p.set_defaults(func=cmd_keyspace)

    p = sub.add_parser("cipher", help="Vernam encryption with a generated keystream (no authentication)")
    p.add_argument("mode", choices=["encrypt", "decrypt"])
    _add_generator_flags(p)
    p.add_argument("--in", dest="input")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_cipher)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, BitFileError) as exc:
        print(f"henonseq {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except DivergenceError as exc:
        cfg = getattr(args, "_cfg", None)
        where = f" with {cfg.params}" if cfg is not None else ""
        print(f"henonseq {args.command}: error: {exc}{where}", file=sys.stderr)
        return 3
    except HenonSeqError as exc:
        # WrongLength, SequenceTooShort, LengthMismatch, EmptySequence: bad input
        print(f"henonseq {args.command}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
