"""Command-line interface: ``bentpack <command> [options]``.

Exit codes: 0 on success, 1 on a domain error (not bent, not plateaued,
malformed stream, failed roundtrip), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
from collections import Counter

import numpy as np

from . import codec
from .boolfn import anf, classify_plateau, walsh_transform
from .bounds import bounds_table
from .errors import DomainError
from .io import format_corpus, format_tt, read_corpus, read_tt, spectrum_to_json, write_tt
from .search import enumerate_plateaued, maiorana_mcfarland_corpus
from .stats import census_report, odd_parity_formula

SCHEMA = 1
CENSUS_MAX_N = 10


class UsageError(Exception):
    pass


def _emit(args, text: str) -> None:
    if getattr(args, "output", None) and args.command not in ("encode", "decode", "enumerate"):
        with open(args.output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _dump(obj) -> str:
    return json.dumps({"schema": SCHEMA, **obj}, indent=2)


def _require(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required for {args.command}")
    return value


def cmd_analyze(args) -> int:
    f = read_tt(_require(args, "input"))
    W = walsh_transform(f)
    cls = classify_plateau(f)
    poly = anf(f)
    spectrum = Counter(int(v) for v in W.values)
    out = {
        "n": f.n,
        "weight": f.weight(),
        "degree": poly.degree,
        "class": str(cls),
        "s": cls.s,
        "spectrum": {str(k): v for k, v in sorted(spectrum.items())},
        "anf": str(poly) if f.n <= 6 else None,
    }
    if cls.plateaued and 2 <= f.n <= CENSUS_MAX_N:
        census = census_report(f, args.point)
        census["formula"] = str(odd_parity_formula(f.n, cls.s))
        census["point"] = args.point
        out["census"] = census
    if args.spectrum:
        with open(args.spectrum, "w") as fh:
            json.dump(spectrum_to_json(W), fh)
    if args.json:
        _emit(args, _dump(out))
    else:
        lines = [
            f"n={f.n} weight={out['weight']}",
            f"{cls}, degree {out['degree']}",
            "spectrum: " + ", ".join(f"{k} x{v}" for k, v in out["spectrum"].items()),
        ]
        if out["anf"] is not None:
            lines.append(f"anf: {out['anf']}")
        if "census" in out:
            c = out["census"]
            lines.append(f"S(x)/V at x={args.point}: {c['S']}/{c['V']} = {c['fraction']} (closed form {c['formula']})")
        _emit(args, "\n".join(lines))
    return 0


def cmd_encode(args) -> int:
    f = read_tt(_require(args, "input"))
    stream = codec.encode(f, args.mode, args.seed)
    data = stream.to_bytes()
    with open(_require(args, "output"), "wb") as fh:
        fh.write(data)
    report = codec.bitstream_length_report(data)
    if args.json:
        print(_dump(report))
    else:
        print(" ".join(f"{k}={v}" for k, v in report.items()))
    return 0


def cmd_decode(args) -> int:
    with open(_require(args, "input"), "rb") as fh:
        data = fh.read()
    f = codec.decode(data)
    if args.output:
        write_tt(args.output, f)
    else:
        sys.stdout.write(format_tt(f))
    return 0


def cmd_enumerate(args) -> int:
    corpus = enumerate_plateaued(args.n, args.s)
    text = format_corpus(corpus)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        msg = {"n": corpus.n, "s": corpus.s, "count": len(corpus)}
        print(_dump(msg) if args.json else f"{len(corpus)} functions (n={corpus.n}, s={corpus.s}) -> {args.output}")
    else:
        sys.stdout.write(text)
    return 0


def _measured_means(n_max: int, sample: int, seed: int) -> dict[int, float]:
    means = {}
    for n in range(2, min(n_max, 8) + 1, 2):
        if n <= 4:
            funcs = list(enumerate_plateaued(n, 0))[:sample] if sample else list(enumerate_plateaued(n, 0))
        else:
            funcs = list(maiorana_mcfarland_corpus(n // 2, sample or 16, seed))
        mode = "plateaued" if n < 4 else "bent-dual"
        means[n] = float(np.mean([codec.encode(f, mode, seed).total_bits for f in funcs]))
    return means


def cmd_bounds(args) -> int:
    reports = bounds_table(args.n_min, args.n_max)
    if args.measure:
        means = _measured_means(args.n_max, args.sample, args.seed)
        for r in reports:
            if r.kind == "bent" and r.n in means:
                r.measured_mean_bits = means[r.n]
    if args.plot:
        from .plots import plot_bounds

        plot_bounds(reports, args.plot)
    if args.json:
        _emit(args, _dump({"precision_bits": 80, "reports": [r.to_dict() for r in reports]}))
    elif args.csv:
        buf = _io.StringIO()
        w = csv.writer(buf)
        w.writerow(["kind", "n", "s", "leading_term_bits", "components", "known_log2_count", "measured_mean_bits"])
        for r in reports:
            d = r.to_dict()
            comps = ";".join(f"{k}={v:.6f}" for k, v in d["components"].items())
            w.writerow([d["kind"], d["n"], d["s"], f"{d['leading_term_bits']:.6f}", comps,
                        d["known_log2_count"], d["measured_mean_bits"]])
        _emit(args, buf.getvalue().rstrip("\n"))
    else:
        lines = [f"{'kind':<22}{'n':>3}{'s':>3}{'leading':>12}  components"]
        for r in reports:
            comps = ", ".join(f"{k}={float(v):.3f}" for k, v in r.components.items())
            line = f"{r.kind:<22}{r.n:>3}{r.s:>3}{float(r.leading_term_bits):>12.3f}  {comps}"
            if r.known_log2_count is not None:
                line += f"  known~{float(r.known_log2_count):.1f}"
            if r.measured_mean_bits is not None:
                line += f"  measured={r.measured_mean_bits:.1f}"
            lines.append(line)
            lines.extend(f"    ! {flag}" for flag in r.flags)
        lines.append("(leading term: every (1+o(1)) factor evaluated as 1)")
        _emit(args, "\n".join(lines))
    return 0


def cmd_stats(args) -> int:
    f = read_tt(_require(args, "input"))
    if f.n > CENSUS_MAX_N or f.n < 2:
        raise UsageError(f"census is limited to 2 <= n <= {CENSUS_MAX_N}")
    face = tuple(int(c) for c in args.face.split(","))
    region = "all" if args.radius is None else args.radius
    report = census_report(f, args.point, face, region)
    cls = classify_plateau(f)
    report["class"] = str(cls)
    if cls.plateaued:
        report["formula"] = str(odd_parity_formula(f.n, cls.s))
    if args.json:
        _emit(args, _dump(report))
    else:
        lines = [f"{report['class']}: S={report['S']} V={report['V']} S/V={report['fraction']}"]
        if "formula" in report:
            lines.append(f"closed form: {report['formula']}")
        lines.append(f"face {args.face} zero counts over {report['region']}: {report['histogram']}")
        _emit(args, "\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    corpus = read_corpus(_require(args, "input"))
    ok = 0
    records = []
    failures = []
    for idx, f in enumerate(corpus):
        try:
            stream = codec.encode(f, args.mode, args.seed)
            data = stream.to_bytes()
            good = codec.decode(data) == f
        except DomainError as exc:
            failures.append((idx, str(exc)))
            continue
        if good:
            ok += 1
            records.append(codec.bitstream_length_report(data))
        else:
            failures.append((idx, "decoded function differs"))
    total = len(corpus)
    summary = {"roundtrips_ok": ok, "count": total, "mode": args.mode}
    if records:
        for name in ("header", "transform", "spectrum", "faces", "pairs", "payload", "total"):
            vals = [r[name] for r in records]
            summary[f"mean_{name}"] = float(np.mean(vals))
        summary["min_total"] = min(r["total"] for r in records)
        summary["max_total"] = max(r["total"] for r in records)
        summary["raw_bits"] = 1 << corpus.n
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(records[0].keys()) if records else ["total"])
            w.writeheader()
            w.writerows(records)
    if args.plot and records:
        from .plots import plot_lengths

        plot_lengths(records, args.plot, f"{args.mode}: n={corpus.n}, s={corpus.s}, {total} functions")
    if args.json:
        summary["failures"] = failures
        _emit(args, _dump(summary))
    else:
        lines = [f"{ok}/{total} roundtrips OK"]
        if records:
            lines.append(
                f"total bits: mean {summary['mean_total']:.1f}, min {summary['min_total']}, "
                f"max {summary['max_total']} (raw {summary['raw_bits']})"
            )
            lines.append("mean section bits: " + ", ".join(
                f"{name}={summary['mean_' + name]:.1f}" for name in ("header", "transform", "spectrum", "faces", "pairs")))
        lines.extend(f"  #{i}: {msg}" for i, msg in failures[:10])
        _emit(args, "\n".join(lines))
    return 0 if ok == total else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bentpack", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", "-i")
        p.add_argument("--output", "-o")
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--json", action="store_true")
        return p

    p = common(sub.add_parser("analyze", help="degree, plateau class, spectrum and flat census"))
    p.add_argument("--point", type=int, default=0)
    p.add_argument("--spectrum", help="also write the spectrum as JSON here")

    p = common(sub.add_parser("encode", help="tt -> BPC1 stream"))
    p.add_argument("--mode", choices=["plateaued", "bent-dual"], default="plateaued")
    common(sub.add_parser("decode", help="BPC1 stream -> tt"))

    p = common(sub.add_parser("enumerate", help="exhaustive s-plateaued corpus for n <= 4"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=0)

    p = common(sub.add_parser("bounds", help="bound formulas over a range of n"))
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--csv", action="store_true", help="comma-delimited table")
    p.add_argument("--plot", help="write a figure to this path")
    p.add_argument("--measure", action="store_true", help="attach measured mean codec lengths (even n <= 8)")
    p.add_argument("--sample", type=int, default=16, help="functions per n when measuring (0 = all at n <= 4)")

    p = common(sub.add_parser("stats", help="S(x)/V census and face histogram"))
    p.add_argument("--point", type=int, default=0)
    p.add_argument("--face", default="1,2")
    p.add_argument("--radius", type=int)

    p = common(sub.add_parser("verify", help="decode(encode(f)) == f over a corpus"))
    p.add_argument("--mode", choices=["plateaued", "bent-dual"], default="plateaued")
    p.add_argument("--csv", help="write per-function section lengths here")
    p.add_argument("--plot", help="write a figure to this path")
    return parser


COMMANDS = {
    "analyze": cmd_analyze,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "enumerate": cmd_enumerate,
    "bounds": cmd_bounds,
    "stats": cmd_stats,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"bentpack: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"bentpack: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"bentpack: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
